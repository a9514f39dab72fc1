#include "unireduce/numerics.hpp"

#include <Eigen/Dense>
#include <Eigen/SVD>

#include <cmath>
#include <utility>

#include "eigen_util.hpp"

namespace unireduce {

using detail::from_eigen;
using detail::to_eigen;

namespace {

void check_finite(const std::vector<cplx>& entries) {
    for (const cplx& z : entries)
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
            raise(errc::invalid_argument, "non-finite matrix entry");
}

}  // namespace

void Tolerance::validate() const {
    if (!(eq_tol > 0.0) || !(unitarity_tol > 0.0) || !(residual_tol > 0.0))
        raise(errc::invalid_argument, "tolerances must be strictly positive");
    if (eq_tol < unitarity_tol)
        raise(errc::invalid_argument, "eq_tol must be >= unitarity_tol", eq_tol, unitarity_tol);
}

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), entries_(rows * cols, cplx(0.0, 0.0)) {}

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<cplx> entries)
    : rows_(rows), cols_(cols), entries_(std::move(entries)) {
    if (entries_.size() != rows_ * cols_)
        raise(errc::invalid_argument, "entry count does not match dimensions");
    check_finite(entries_);
}

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
    ComplexMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

cplx ComplexMatrix::trace() const {
    cplx t = 0.0;
    for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) t += (*this)(i, i);
    return t;
}

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.cols() != b.rows()) raise(errc::dimension_mismatch, "matrix product shape mismatch");
    ComplexMatrix c(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const cplx aik = a(i, k);
            if (aik == cplx(0.0, 0.0)) continue;
            for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += aik * b(k, j);
        }
    }
    return c;
}

ComplexMatrix operator+(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        raise(errc::dimension_mismatch, "matrix sum shape mismatch");
    ComplexMatrix c(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.entries().size(); ++i)
        c(i / a.cols(), i % a.cols()) = a.entries()[i] + b.entries()[i];
    return c;
}

ComplexMatrix operator-(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        raise(errc::dimension_mismatch, "matrix difference shape mismatch");
    ComplexMatrix c(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.entries().size(); ++i)
        c(i / a.cols(), i % a.cols()) = a.entries()[i] - b.entries()[i];
    return c;
}

ComplexMatrix operator*(cplx scalar, const ComplexMatrix& a) {
    ComplexMatrix c(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = scalar * a(i, j);
    return c;
}

ComplexMatrix adjoint(const ComplexMatrix& a) {
    ComplexMatrix c(a.cols(), a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) c(j, i) = std::conj(a(i, j));
    return c;
}

double frobenius_norm(const ComplexMatrix& a) {
    double s = 0.0;
    for (const cplx& z : a.entries()) s += std::norm(z);
    return std::sqrt(s);
}

double frobenius_distance(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        raise(errc::dimension_mismatch, "frobenius distance shape mismatch");
    double s = 0.0;
    for (std::size_t i = 0; i < a.entries().size(); ++i)
        s += std::norm(a.entries()[i] - b.entries()[i]);
    return std::sqrt(s);
}

bool within_frobenius(const ComplexMatrix& a, const ComplexMatrix& b, double tol) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
    const double cap = tol * tol;
    double s = 0.0;
    for (std::size_t i = 0; i < a.entries().size(); ++i) {
        s += std::norm(a.entries()[i] - b.entries()[i]);
        if (s > cap) return false;
    }
    return true;
}

double unitary_defect(const ComplexMatrix& a) {
    if (!a.is_square()) raise(errc::not_square, "unitarity defect needs a square matrix");
    const std::size_t n = a.rows();
    // ||A*A - I||_F without forming the adjoint explicitly.
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            cplx dot = 0.0;
            for (std::size_t k = 0; k < n; ++k) dot += std::conj(a(k, i)) * a(k, j);
            if (i == j) dot -= 1.0;
            s += std::norm(dot);
        }
    }
    return std::sqrt(s);
}

std::vector<cplx> operator*(const ComplexMatrix& a, std::span<const cplx> x) {
    if (a.cols() != x.size()) raise(errc::dimension_mismatch, "matrix-vector shape mismatch");
    std::vector<cplx> y(a.rows(), cplx(0.0, 0.0));
    for (std::size_t i = 0; i < a.rows(); ++i) {
        cplx s = 0.0;
        for (std::size_t j = 0; j < a.cols(); ++j) s += a(i, j) * x[j];
        y[i] = s;
    }
    return y;
}

cplx inner(std::span<const cplx> x, std::span<const cplx> y) {
    if (x.size() != y.size()) raise(errc::dimension_mismatch, "inner product length mismatch");
    cplx s = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * std::conj(y[i]);
    return s;
}

double norm2(std::span<const cplx> x) {
    double s = 0.0;
    for (const cplx& z : x) s += std::norm(z);
    return std::sqrt(s);
}

double distance2(std::span<const cplx> x, std::span<const cplx> y) {
    if (x.size() != y.size()) raise(errc::dimension_mismatch, "distance length mismatch");
    double s = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) s += std::norm(x[i] - y[i]);
    return std::sqrt(s);
}

UnitaryMatrix UnitaryMatrix::adjoint_unitary() const {
    // A*A - I and AA* - I share singular values, so the certificate carries over.
    return UnitaryMatrix(adjoint(mat_), certified_tol_);
}

UnitaryMatrix certify_unitary(const ComplexMatrix& m, const Tolerance& tol) {
    tol.validate();
    if (!m.is_square()) raise(errc::not_square, "certify_unitary needs a square matrix");
    const double defect = unitary_defect(m);
    if (defect > tol.unitarity_tol)
        raise(errc::not_unitary, "unitarity defect exceeds tolerance", defect, tol.unitarity_tol);
    return UnitaryMatrix(m, tol.unitarity_tol);
}

UnitaryMatrix polar_project(const ComplexMatrix& m) {
    if (!m.is_square()) raise(errc::not_square, "polar_project needs a square matrix");
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(to_eigen(m), Eigen::ComputeFullU | Eigen::ComputeFullV);
    const double smallest = svd.singularValues()(svd.singularValues().size() - 1);
    if (!(smallest > 1e-8))
        raise(errc::near_singular, "polar factor undefined near singularity", smallest, 1e-8);
    ComplexMatrix q = from_eigen(svd.matrixU() * svd.matrixV().adjoint());
    const double defect = std::max(unitary_defect(q), 1e-15);
    return UnitaryMatrix(std::move(q), defect);
}

UnitVector::UnitVector(std::vector<cplx> entries) : entries_(std::move(entries)) {
    check_finite(entries_);
    const double n = norm2(entries_);
    if (!(n > 1e-14)) raise(errc::invalid_argument, "cannot normalize a (near) zero vector", n);
    for (cplx& z : entries_) z /= n;
}

std::vector<std::vector<cplx>> gram_schmidt(const std::vector<std::vector<cplx>>& basis) {
    if (basis.empty()) return {};
    const std::size_t dim = basis.front().size();
    for (const auto& v : basis)
        if (v.size() != dim) raise(errc::dimension_mismatch, "gram_schmidt length mismatch");

    // Gram determinant as the independence gate; it is real for a Hermitian
    // Gram matrix and nonnegative up to rounding.
    const std::size_t k = basis.size();
    Eigen::MatrixXcd gram(k, k);
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j)
            gram(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = inner(basis[i], basis[j]);
    const double det = gram.determinant().real();
    if (!(det > 1e-10))
        raise(errc::dependent_input, "Gram determinant at or below threshold", det, 1e-10);

    std::vector<std::vector<cplx>> out;
    out.reserve(k);
    for (const auto& v : basis) {
        std::vector<cplx> w = v;
        for (int pass = 0; pass < 2; ++pass) {  // re-orthogonalization pass tightens to ~1e-16
            for (const auto& q : out) {
                const cplx c = inner(w, q);
                for (std::size_t i = 0; i < dim; ++i) w[i] -= c * q[i];
            }
        }
        const double n = norm2(w);
        if (!(n > 1e-10)) raise(errc::dependent_input, "vanishing residual in orthogonalization", n);
        for (cplx& z : w) z /= n;
        out.push_back(std::move(w));
    }
    return out;
}

}  // namespace unireduce
