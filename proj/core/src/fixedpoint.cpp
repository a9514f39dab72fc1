#include "unireduce/fixedpoint.hpp"

#include <cmath>

#include "certify_util.hpp"
#include "unireduce/phase.hpp"

namespace unireduce {

DefectReport defect(const FiniteUnitaryGroup& g, const UnitVector& xi) {
    if (xi.dim() != g.dim()) raise(errc::dimension_mismatch, "vector/group dimension mismatch");
    DefectReport report;
    report.moduli.reserve(g.order());
    double min_modulus = 2.0;
    double max_deviation_sq = 0.0;
    for (std::size_t i = 0; i < g.order(); ++i) {
        const std::vector<cplx> image = g.element(i).mat() * xi;
        const double modulus = std::abs(inner(image, xi));
        report.moduli.push_back(modulus);
        if (modulus < min_modulus) {
            min_modulus = modulus;
            report.argmin_element = i;
        }
        double dev = 0.0;
        for (std::size_t k = 0; k < image.size(); ++k) dev += std::norm(image[k] - xi[k]);
        max_deviation_sq = std::max(max_deviation_sq, dev);
    }
    report.weak_defect = std::max(0.0, 1.0 - min_modulus);
    report.strong_defect = std::sqrt(max_deviation_sq);
    return report;
}

LambdaMap lambda_map(const FiniteUnitaryGroup& g, const UnitVector& xi) {
    if (xi.dim() != g.dim()) raise(errc::dimension_mismatch, "vector/group dimension mismatch");
    LambdaMap map;
    map.lambda.reserve(g.order());
    for (std::size_t i = 0; i < g.order(); ++i) {
        const std::vector<cplx> image = g.element(i).mat() * xi;
        const cplx ip = inner(image, xi);
        const double modulus = std::abs(ip);
        if (modulus <= 1e-12)
            raise(errc::vanishing_inner_product, "lambda undefined for vanishing inner product",
                  modulus, 1e-12);
        const cplx lambda = ip / modulus;

        // ||G xi - lambda xi||^2 = 2 - 2 |<G xi, xi>|, an exact identity.
        double residual_sq = 0.0;
        for (std::size_t k = 0; k < image.size(); ++k)
            residual_sq += std::norm(image[k] - lambda * xi[k]);
        if (std::abs(residual_sq - (2.0 - 2.0 * modulus)) > 1e-10)
            raise(errc::bound_violation, "eigen-residual identity failed", residual_sq,
                  2.0 - 2.0 * modulus);
        map.lambda.push_back(lambda);
    }
    return map;
}

AverageFixedPoint average_fixed_point(const FiniteUnitaryGroup& g, const UnitVector& xi) {
    if (xi.dim() != g.dim()) raise(errc::dimension_mismatch, "vector/group dimension mismatch");
    std::vector<cplx> eta(g.dim(), cplx(0.0, 0.0));
    double max_deviation_sq = 0.0;
    for (std::size_t i = 0; i < g.order(); ++i) {
        const std::vector<cplx> image = g.element(i).mat() * xi;
        double dev = 0.0;
        for (std::size_t k = 0; k < g.dim(); ++k) {
            eta[k] += image[k];
            dev += std::norm(image[k] - xi[k]);
        }
        max_deviation_sq = std::max(max_deviation_sq, dev);
    }
    for (cplx& z : eta) z /= static_cast<double>(g.order());
    const double strong_defect = std::sqrt(max_deviation_sq);

    if (norm2(eta) <= 1e-10)
        raise(errc::zero_average, "group average annihilated the vector", norm2(eta), 1e-10);

    AverageFixedPoint out;
    out.distance = distance2(eta, xi);
    if (out.distance > strong_defect + 1e-10)
        raise(errc::bound_violation, "average drifted past the strong defect", out.distance,
              strong_defect);
    for (std::size_t i = 0; i < g.order(); ++i) {
        const std::vector<cplx> image = g.element(i).mat() * eta;
        out.max_residual = std::max(out.max_residual, distance2(image, eta));
    }
    if (out.max_residual > g.tol().residual_tol)
        raise(errc::bound_violation, "average is not a fixed point", out.max_residual,
              g.tol().residual_tol);
    out.eta = std::move(eta);
    return out;
}

CommutatorDefectReport commutator_defect_check(const FiniteUnitaryGroup& g, const UnitVector& xi) {
    const DefectReport report = defect(g, xi);
    CommutatorDefectReport out;
    out.eps = report.weak_defect;
    // The deviation scales as sqrt(eps), so certify against the measured
    // defect plus its resolution floor.
    out.bound = 4.0 * std::sqrt(2.0 * (out.eps + kDefectNoise));
    out.commutator_indices = derived_elements(g).indices;

    const double denom = std::sqrt(2.0 * out.eps);
    for (std::size_t idx : out.commutator_indices) {
        const std::vector<cplx> image = g.element(idx).mat() * xi;
        const double dev = distance2(image, xi);
        out.max_deviation = std::max(out.max_deviation, dev);
        if (denom > 1e-12) out.worst_ratio = std::max(out.worst_ratio, dev / denom);
        if (dev > out.bound + 1e-9)
            raise(errc::bound_violation, "commutator deviation exceeded 4 sqrt(2 eps)", dev,
                  out.bound);
    }
    return out;
}

EigenvectorCertificate average_eigenvector(const FiniteUnitaryGroup& g, const UnitVector& xi) {
    const DefectReport report = defect(g, xi);
    AverageFixedPoint averaged = average_fixed_point(g, xi);
    return detail::finalize_certificate(g, xi, EigenMethod::average, std::move(averaged.eta),
                                        report.weak_defect,
                                        report.strong_defect * report.strong_defect,
                                        /*enforce_bound=*/false);
}

EigenvectorCertificate rho_eigenvector(const FiniteUnitaryGroup& g, const UnitVector& xi) {
    const std::size_t n = g.dim();
    if (n < 2) raise(errc::hypothesis_violated, "needs dimension >= 2");
    if (xi.dim() != n) raise(errc::dimension_mismatch, "vector/group dimension mismatch");

    // Structural hypothesis first: every element must decompose as
    // scalar * commutator. A missing witness is reported as such even when
    // the quantitative hypothesis would already fail.
    std::vector<CommutatorWitness> witnesses;
    witnesses.reserve(g.order());
    for (std::size_t i = 0; i < g.order(); ++i) witnesses.push_back(find_scalar_commutator(g, i));

    const double eps = defect(g, xi).weak_defect;
    const double eps_cap = 1.0 / (32.0 * static_cast<double>(n) * static_cast<double>(n));
    if (!(eps < eps_cap))
        raise(errc::hypothesis_violated, "weak defect at or above 1/(32 n^2)", eps, eps_cap);

    // Round each witness scalar to the n-th root of unity it must sit next
    // to; the window 4 sqrt(2 eps) < d_n / 2 makes the root unique.
    const double window = 4.0 * std::sqrt(2.0 * (eps + kDefectNoise)) + 1e-9;
    std::vector<cplx> rho(g.order());
    for (std::size_t i = 0; i < g.order(); ++i) {
        const PhaseApproximation rounded = nearest_root(witnesses[i].scalar, n);
        if (rounded.l2_distance > window)
            raise(errc::homomorphism_failure, "witness scalar is not near a root of unity",
                  rounded.l2_distance, window);
        rho[i] = rounded.alpha.value();
    }
    for (std::size_t i = 0; i < g.order(); ++i)
        for (std::size_t j = 0; j < g.order(); ++j)
            if (std::abs(rho[g.product_index(i, j)] - rho[i] * rho[j]) > 1e-8)
                raise(errc::homomorphism_failure, "rho is not multiplicative",
                      std::abs(rho[g.product_index(i, j)] - rho[i] * rho[j]), 1e-8);

    std::vector<cplx> eta(n, cplx(0.0, 0.0));
    for (std::size_t i = 0; i < g.order(); ++i) {
        const std::vector<cplx> image = g.element(i).mat() * xi;
        const cplx twist = std::conj(rho[i]);
        for (std::size_t k = 0; k < n; ++k) eta[k] += twist * image[k];
    }
    for (cplx& z : eta) z /= static_cast<double>(g.order());

    const double distance = distance2(eta, xi);
    const double distance_bound = 4.0 * std::sqrt(2.0 * (eps + kDefectNoise));
    if (distance > distance_bound + 1e-9)
        raise(errc::bound_violation, "twisted average drifted past 4 sqrt(2 eps)", distance,
              distance_bound);
    return detail::finalize_certificate(g, xi, EigenMethod::rho, std::move(eta), eps,
                                        32.0 * eps, /*enforce_bound=*/false);
}

}  // namespace unireduce
