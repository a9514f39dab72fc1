#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "unireduce/errors.hpp"

namespace unireduce {

using cplx = std::complex<double>;

/// Absolute resolution of a measured weak defect: moduli near 1 quantize at
/// ~2.2e-16 per inner product. Bounds of the form C sqrt(eps) certify
/// against eps + this floor, since the true defect may sit anywhere below
/// measurement resolution while sqrt-scale quantities remain visible.
inline constexpr double kDefectNoise = 2e-15;

/// Numerical thresholds shared by every construction.
///   eq_tol        matrix-equality dedup threshold (Frobenius metric)
///   unitarity_tol bound on ||U*U - I||_F accepted as "unitary"
///   residual_tol  eigen-residual acceptance
struct Tolerance {
    double eq_tol = 1e-8;
    double unitarity_tol = 1e-10;
    double residual_tol = 1e-8;

    /// Throws invalid_argument unless all three are positive and
    /// eq_tol >= unitarity_tol (dedup must absorb unitarity drift).
    void validate() const;
};

/// Dense complex matrix, row-major, immutable by convention: operations
/// return fresh values. Entries are checked finite at construction.
class ComplexMatrix {
public:
    ComplexMatrix() = default;
    ComplexMatrix(std::size_t rows, std::size_t cols);
    ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<cplx> entries);

    static ComplexMatrix identity(std::size_t n);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    bool is_square() const noexcept { return rows_ == cols_; }

    const cplx& operator()(std::size_t i, std::size_t j) const { return entries_[i * cols_ + j]; }
    cplx& operator()(std::size_t i, std::size_t j) { return entries_[i * cols_ + j]; }

    const std::vector<cplx>& entries() const noexcept { return entries_; }

    cplx trace() const;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<cplx> entries_;
};

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix operator+(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix operator-(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix operator*(cplx scalar, const ComplexMatrix& a);

ComplexMatrix adjoint(const ComplexMatrix& a);
double frobenius_norm(const ComplexMatrix& a);
double frobenius_distance(const ComplexMatrix& a, const ComplexMatrix& b);

/// frobenius_distance(a, b) <= tol, bailing out as soon as the partial sum
/// rules it out; the fast path of every dedup scan.
bool within_frobenius(const ComplexMatrix& a, const ComplexMatrix& b, double tol);

/// ||A*A - I||_F; requires square input.
double unitary_defect(const ComplexMatrix& a);

/// Matrix-vector product.
std::vector<cplx> operator*(const ComplexMatrix& a, std::span<const cplx> x);

/// Hermitian inner product, linear in the first argument: sum_i x_i conj(y_i).
cplx inner(std::span<const cplx> x, std::span<const cplx> y);
double norm2(std::span<const cplx> x);
double distance2(std::span<const cplx> x, std::span<const cplx> y);

/// A square matrix whose unitarity defect has been measured; carries the
/// bound it was certified against.
class UnitaryMatrix {
public:
    const ComplexMatrix& mat() const noexcept { return mat_; }
    double certified_tol() const noexcept { return certified_tol_; }
    std::size_t dim() const noexcept { return mat_.rows(); }

    UnitaryMatrix adjoint_unitary() const;

    friend UnitaryMatrix certify_unitary(const ComplexMatrix& m, const Tolerance& tol);
    friend UnitaryMatrix polar_project(const ComplexMatrix& m);

private:
    UnitaryMatrix(ComplexMatrix m, double tol) : mat_(std::move(m)), certified_tol_(tol) {}

    ComplexMatrix mat_;
    double certified_tol_ = 0.0;
};

/// Accepts m iff ||m*m - I||_F <= tol.unitarity_tol.
/// Errors: not_square; not_unitary (carries the measured defect).
UnitaryMatrix certify_unitary(const ComplexMatrix& m, const Tolerance& tol);

/// Unitary factor of the polar decomposition: the nearest unitary in
/// Frobenius distance. Errors: not_square; near_singular when the smallest
/// singular value is <= 1e-8.
UnitaryMatrix polar_project(const ComplexMatrix& m);

/// Norm-1 complex vector; construction normalizes.
class UnitVector {
public:
    explicit UnitVector(std::vector<cplx> entries);

    std::size_t dim() const noexcept { return entries_.size(); }
    const std::vector<cplx>& entries() const noexcept { return entries_; }
    const cplx& operator[](std::size_t i) const { return entries_[i]; }

    operator std::span<const cplx>() const noexcept { return entries_; }

private:
    std::vector<cplx> entries_;
};

/// Gram-Schmidt orthonormalization preserving the flag of nested spans.
/// Errors: dependent_input when the Gram determinant is <= 1e-10.
std::vector<std::vector<cplx>> gram_schmidt(const std::vector<std::vector<cplx>>& basis);

}  // namespace unireduce
