#pragma once

#include "symqm/repr.hpp"

#include <json.hpp>

#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace symqm {

struct GalleryEntry {
    std::string name;
    GroupRep rep;
    bool expect_irreducible = true;
};

/// Built-in gallery: the Z8 characters, the dihedral translation/reflection
/// irrep they embed into, and a reducible diagonal counterexample.
inline std::vector<GalleryEntry> default_gallery(int n = 8) {
    std::vector<GalleryEntry> out;
    out.push_back({"trivial_group_trivial_rep", trivial_rep(FiniteGroup::trivial()), true});
    for (int m : {0, 1, 3}) {
        out.push_back({"cyclic" + std::to_string(n) + "_character_m" + std::to_string(m),
                       cyclic_phase_rep(n, m), true});
    }
    out.push_back({"dihedral" + std::to_string(n) + "_translation_reflection_2d",
                   dihedral_translation_reflection_rep(n), true});
    out.push_back({"dihedral3_translation_reflection_2d",
                   dihedral_translation_reflection_rep(3), true});
    out.push_back({"cyclic" + std::to_string(n) + "_diag_pair_reducible",
                   cyclic_diag_pair_rep(n, -1, 1), false});
    return out;
}

inline GalleryEntry gallery_entry_from_json(const nlohmann::json& j) {
    GalleryEntry entry;
    entry.name = j.at("name").get<std::string>();
    entry.expect_irreducible = j.at("expect_irreducible").get<bool>();
    const auto& rep = j.at("rep");
    const std::string kind = rep.at("kind").get<std::string>();
    if (kind == "trivial_on_trivial") {
        entry.rep = trivial_rep(FiniteGroup::trivial());
    } else if (kind == "trivial_on_cyclic") {
        entry.rep = trivial_rep(FiniteGroup::cyclic(rep.at("N").get<int>()));
    } else if (kind == "cyclic_phase") {
        entry.rep = cyclic_phase_rep(rep.at("N").get<int>(), rep.at("m").get<int>());
    } else if (kind == "cyclic_diag_pair") {
        entry.rep = cyclic_diag_pair_rep(rep.at("N").get<int>(), rep.at("m1").get<int>(),
                                         rep.at("m2").get<int>());
    } else if (kind == "dihedral_2d") {
        double k = rep.contains("k") ? rep.at("k").get<double>() : 1.0;
        entry.rep = dihedral_translation_reflection_rep(rep.at("N").get<int>(), k);
    } else {
        throw std::invalid_argument("gallery: unknown rep kind '" + kind + "'");
    }
    return entry;
}

inline std::vector<GalleryEntry> load_gallery(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("gallery: cannot open " + path);
    nlohmann::json doc = nlohmann::json::parse(in);
    std::vector<GalleryEntry> out;
    for (const auto& j : doc.at("entries")) out.push_back(gallery_entry_from_json(j));
    return out;
}

} // namespace symqm
