#pragma once

#include <charconv>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

namespace symqm {

/// FNV-1a, used to stamp output files with a hash of the run configuration.
inline std::uint64_t fnv1a64(std::string_view s) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

inline std::string hex64(std::uint64_t v) {
    static const char* digits = "0123456789abcdef";
    std::string out(16, '0');
    for (int i = 15; i >= 0; --i, v >>= 4) out[i] = digits[v & 0xf];
    return out;
}

/// Shortest round-trip decimal form; locale-free, so reruns are byte-stable.
inline std::string format_double(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    if (res.ec != std::errc())
        throw std::runtime_error("format_double: conversion failed");
    return std::string(buf, res.ptr);
}

inline std::string format_u64(std::uint64_t v) {
    char buf[32];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

/// Minimal CSV quoting: fields with separators or quotes get wrapped.
inline std::string csv_field(std::string_view field) {
    if (field.find_first_of(",\"\n") == std::string_view::npos) return std::string(field);
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

/// CSV table with the provenance comment line every emitted file carries:
/// `# seed=<seed> config=<fnv1a of the canonical config string>`.
class CsvTable {
public:
    CsvTable(std::uint64_t seed, std::string_view config, std::vector<std::string> header)
        : seed_(seed), config_hash_(fnv1a64(config)), header_(std::move(header)) {}

    void add_row(std::vector<std::string> row) {
        if (row.size() != header_.size())
            throw std::invalid_argument("CsvTable: row width does not match header");
        rows_.push_back(std::move(row));
    }

    std::string render() const {
        std::string out = "# seed=" + format_u64(seed_) + " config=" + hex64(config_hash_) + "\n";
        auto append_line = [&out](const std::vector<std::string>& cells) {
            for (std::size_t i = 0; i < cells.size(); ++i) {
                if (i) out += ',';
                out += csv_field(cells[i]);
            }
            out += '\n';
        };
        append_line(header_);
        for (const auto& row : rows_) append_line(row);
        return out;
    }

private:
    std::uint64_t seed_;
    std::uint64_t config_hash_;
    std::vector<std::string> header_;
    std::vector<std::vector<std::string>> rows_;
};

/// Whole-file text write; binary mode keeps newlines byte-exact.
inline void write_text_file(const std::filesystem::path& path, std::string_view content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("write_text_file: cannot open " + path.string());
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw std::runtime_error("write_text_file: write failed for " + path.string());
}

} // namespace symqm
