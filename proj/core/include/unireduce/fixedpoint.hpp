#pragma once

#include <cstddef>
#include <vector>

#include "unireduce/certificate.hpp"
#include "unireduce/group.hpp"
#include "unireduce/numerics.hpp"

namespace unireduce {

/// Defect of a (group, vector) pair:
///   weak_defect   1 - min_G |<G xi, xi>|   (weak approximate fixed point)
///   strong_defect max_G ||G xi - xi||      (approximate fixed point)
struct DefectReport {
    double weak_defect = 0.0;
    double strong_defect = 0.0;
    std::size_t argmin_element = 0;  // first minimizer in canonical order
    std::vector<double> moduli;      // |<G xi, xi>| per element
};

/// Per-element unit scalars lambda_G = <G xi, xi> / |<G xi, xi>|, which make
/// xi an approximate eigenvector: ||G xi - lambda_G xi||^2 = 2 - 2|<G xi, xi>|.
struct LambdaMap {
    std::vector<cplx> lambda;
};

struct AverageFixedPoint {
    std::vector<cplx> eta;      // (1/|G|) sum_G G xi, a fixed point, nonzero
    double distance = 0.0;      // ||eta - xi||
    double max_residual = 0.0;  // max_G ||G eta - eta||
};

struct CommutatorDefectReport {
    double eps = 0.0;    // weak defect of the pair
    double bound = 0.0;  // 4 sqrt(2 eps)
    std::vector<std::size_t> commutator_indices;
    double max_deviation = 0.0;  // max ||C xi - xi|| over commutator elements
    double worst_ratio = 0.0;    // max ||C xi - xi|| / sqrt(2 eps), 0/0 -> 0
};

/// Errors: dimension_mismatch.
DefectReport defect(const FiniteUnitaryGroup& g, const UnitVector& xi);

/// Errors: vanishing_inner_product when some |<G xi, xi>| <= 1e-12;
/// bound_violation if the exact identity above fails beyond 1e-10.
LambdaMap lambda_map(const FiniteUnitaryGroup& g, const UnitVector& xi);

/// Uniform average over the group; certifies invariance within residual_tol
/// and ||eta - xi|| <= strong_defect. Errors: zero_average when the average
/// annihilates xi (e.g. {I, -I}); dimension_mismatch.
AverageFixedPoint average_fixed_point(const FiniteUnitaryGroup& g, const UnitVector& xi);

/// Certifies ||C xi - xi|| <= 4 sqrt(2 eps) + 1e-9 for every element known
/// to be a commutator.
CommutatorDefectReport commutator_defect_check(const FiniteUnitaryGroup& g, const UnitVector& xi);

/// average_fixed_point wrapped as a certificate (characters all 1, distance
/// bound strong_defect^2). Same errors as average_fixed_point.
EigenvectorCertificate average_eigenvector(const FiniteUnitaryGroup& g, const UnitVector& xi);

/// Common eigenvector for groups whose every element is scalar * commutator:
/// rounds each witness scalar to the nearest n-th root of unity, validates
/// the resulting map as a homomorphism rho, and averages conj(rho(G)) G xi.
/// The result satisfies G eta = rho(G) eta within residual_tol and
/// ||eta - xi|| <= 4 sqrt(2 eps) + 1e-9.
/// Errors: no_witness; hypothesis_violated (n < 2 or eps >= 1/(32 n^2));
/// homomorphism_failure.
EigenvectorCertificate rho_eigenvector(const FiniteUnitaryGroup& g, const UnitVector& xi);

}  // namespace unireduce
