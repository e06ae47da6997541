#pragma once

#include <Eigen/Dense>

#include <complex>
#include <stdexcept>

namespace symqm {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

inline constexpr Complex kI{0.0, 1.0};

/// Matrix product with explicit shape validation (Eigen would assert/abort).
inline CMatrix matmul(const CMatrix& a, const CMatrix& b) {
    if (a.cols() != b.rows())
        throw std::invalid_argument("matmul: inner dimensions disagree");
    return a * b;
}

/// Kronecker product, row-major block convention: (A tensor B)(i*p+k, j*q+l) = A(i,j)B(k,l).
inline CMatrix tensor(const CMatrix& a, const CMatrix& b) {
    CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

inline CVector tensor(const CVector& a, const CVector& b) {
    CVector out(a.size() * b.size());
    for (Eigen::Index i = 0; i < a.size(); ++i)
        out.segment(i * b.size(), b.size()) = a(i) * b;
    return out;
}

inline CMatrix commutator(const CMatrix& a, const CMatrix& b) {
    if (a.rows() != a.cols() || b.rows() != b.cols() || a.rows() != b.rows())
        throw std::invalid_argument("commutator: operands must be square and same size");
    return a * b - b * a;
}

inline double unitarity_deviation(const CMatrix& u) {
    if (u.rows() != u.cols())
        throw std::invalid_argument("unitarity_deviation: matrix must be square");
    return (u.adjoint() * u - CMatrix::Identity(u.rows(), u.cols())).cwiseAbs().maxCoeff();
}

inline bool is_unitary(const CMatrix& u, double tol = 1e-12) {
    return unitarity_deviation(u) <= tol;
}

inline double hermiticity_deviation(const CMatrix& h) {
    if (h.rows() != h.cols())
        throw std::invalid_argument("hermiticity_deviation: matrix must be square");
    return (h - h.adjoint().eval()).cwiseAbs().maxCoeff();
}

inline bool is_hermitian(const CMatrix& h, double tol = 1e-12) {
    return hermiticity_deviation(h) <= tol;
}

/// Trace over the second factor of a (da*db) x (da*db) operator.
inline CMatrix partial_trace_second(const CMatrix& rho, Eigen::Index da, Eigen::Index db) {
    if (rho.rows() != da * db || rho.cols() != da * db)
        throw std::invalid_argument("partial_trace_second: dimension mismatch");
    CMatrix out = CMatrix::Zero(da, da);
    for (Eigen::Index i = 0; i < da; ++i)
        for (Eigen::Index j = 0; j < da; ++j)
            for (Eigen::Index k = 0; k < db; ++k)
                out(i, j) += rho(i * db + k, j * db + k);
    return out;
}

/// Trace over the first factor.
inline CMatrix partial_trace_first(const CMatrix& rho, Eigen::Index da, Eigen::Index db) {
    if (rho.rows() != da * db || rho.cols() != da * db)
        throw std::invalid_argument("partial_trace_first: dimension mismatch");
    CMatrix out = CMatrix::Zero(db, db);
    for (Eigen::Index k = 0; k < db; ++k)
        for (Eigen::Index l = 0; l < db; ++l)
            for (Eigen::Index i = 0; i < da; ++i)
                out(k, l) += rho(i * db + k, i * db + l);
    return out;
}

} // namespace symqm
