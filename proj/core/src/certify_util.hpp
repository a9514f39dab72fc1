#pragma once

// Shared (internal) construction of EigenvectorCertificate: measures the
// per-element eigen residuals of the candidate, fills the per-generator
// characters, and enforces the method's distance bound.

#include <cmath>
#include <vector>

#include "unireduce/certificate.hpp"
#include "unireduce/group.hpp"

namespace unireduce::detail {

inline EigenvectorCertificate finalize_certificate(const FiniteUnitaryGroup& g,
                                                   const UnitVector& xi, EigenMethod method,
                                                   std::vector<cplx> eta_raw, double eps,
                                                   double bound_value, bool enforce_bound) {
    const double eta_norm = norm2(eta_raw);
    if (!(eta_norm > 1e-10))
        raise(errc::zero_average, "candidate eigenvector vanished", eta_norm, 1e-10);
    std::vector<cplx> unit = eta_raw;
    for (cplx& z : unit) z /= eta_norm;
    UnitVector eta_unit(std::move(unit));

    double max_residual = 0.0;
    std::vector<cplx> per_element_chi(g.order());
    for (std::size_t i = 0; i < g.order(); ++i) {
        const std::vector<cplx> image = g.element(i).mat() * eta_unit;
        cplx chi = inner(image, eta_unit);
        if (std::abs(chi) > 1e-12) chi /= std::abs(chi);
        per_element_chi[i] = chi;
        double res = 0.0;
        for (std::size_t k = 0; k < image.size(); ++k)
            res += std::norm(image[k] - chi * eta_unit[k]);
        max_residual = std::max(max_residual, std::sqrt(res));
    }
    if (max_residual > g.tol().residual_tol)
        raise(errc::bound_violation, "candidate is not a common eigenvector", max_residual,
              g.tol().residual_tol);

    std::vector<cplx> characters;
    characters.reserve(g.generator_indices().size());
    for (std::size_t gi : g.generator_indices()) characters.push_back(per_element_chi[gi]);

    double distance_sq = 0.0;
    for (std::size_t k = 0; k < eta_raw.size(); ++k)
        distance_sq += std::norm(xi[k] - eta_raw[k]);

    const bool bound_holds = distance_sq < bound_value + 1e-12;
    if (enforce_bound && !bound_holds)
        raise(errc::bound_violation, "distance bound failed", distance_sq, bound_value);

    return EigenvectorCertificate{method,       std::move(eta_raw), std::move(eta_unit),
                                  std::move(characters), max_residual, distance_sq,
                                  bound_value,  bound_holds,        eps};
}

}  // namespace unireduce::detail
