#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "unireduce/certificate.hpp"
#include "unireduce/fixedpoint.hpp"
#include "unireduce/group.hpp"
#include "unireduce/numerics.hpp"

namespace unireduce {

/// Orthogonal block-diagonalization of a group: Q* G Q is block diagonal
/// with the stated sizes for every element; each restricted group is
/// irreducible (commutant dimension 1). Blocks are ordered by size.
struct BlockDecomposition {
    std::uint64_t seed = 0;
    ComplexMatrix basis_change;  // unitary Q, columns grouped per block
    std::vector<std::size_t> block_sizes;
    std::vector<FiniteUnitaryGroup> restricted_groups;
};

/// Component of xi chosen so that its mass is at least n_i/n; the scaled
/// defect is the sharper of eps/a_i and (n/n_i) eps.
struct ComponentSelection {
    std::size_t index = 0;
    double component_norm_sq = 0.0;  // a_i
    double scaled_eps = 0.0;
    UnitVector normalized_component;
};

struct CommonEigenvector {
    UnitVector vec;
    std::vector<cplx> characters;  // per generator
};

/// Frobenius-orthonormal basis of {X : A X = X A for all generators A}.
/// Dimension 1 iff the group is irreducible.
std::vector<ComplexMatrix> commutant_basis(const FiniteUnitaryGroup& g);

/// Splits along eigenspaces of seeded random Hermitian commutant elements,
/// recursing until every block is irreducible. Deterministic given the seed,
/// which is recorded in the output. Errors: degenerate_split after 8 retries.
BlockDecomposition reduce_blocks(const FiniteUnitaryGroup& g, std::uint64_t seed = 0);

/// Picks the block maximizing ||xi_i||^2 / n_i (ties to the smallest index)
/// and re-measures the restricted pair against the scaled defect.
/// Errors: all_components_zero; bound_violation if the re-measured defect
/// exceeds scaled_eps.
ComponentSelection select_component(const BlockDecomposition& bd, const UnitVector& xi,
                                    double eps);

struct MonomialFlattening {
    FiniteUnitaryGroup group;            // W g W*
    std::vector<double> xi_sorted;       // W xi: real, nonnegative, descending
    ComplexMatrix conjugator;            // W = permutation . diagonal phases
};

/// Conjugates the pair so the vector is real, nonnegative and sorted
/// descending (diagonal phase similarity followed by a permutation).
MonomialFlattening monomial_flatten(const FiniteUnitaryGroup& g, const MonomialStructure& ms,
                                    const UnitVector& xi);

/// max gap xi_1 - xi_n of a flattened vector, certified <= (n-1) sqrt(eps)
/// + 1e-9 (requires a transitive group upstream).
/// Errors: spread_violation.
double monomial_spread_check(std::span<const double> xi_sorted, double eps);

/// Full monomial pipeline: orbit split for decomposable groups, flattening,
/// spread certification, uniform-vector surrogate, weight-kernel restriction,
/// root-of-unity homomorphism, kernel averaging, un-flattening. Certifies the
/// result as a common eigenvector and ||xi - zeta|| < 1/n whenever
/// eps < 1/(3600 n^11).
/// Errors: invalid_argument (not monomial / n < 2); hypothesis_violated
/// (n sqrt(n eps) >= 1/3); homomorphism_failure; zero_average;
/// spread_violation; bound_violation.
EigenvectorCertificate monomial_eigenvector(const FiniteUnitaryGroup& g, const UnitVector& xi);

/// Brute-force ground truth: intersects generator eigenspaces (principal
/// angles, threshold 1e-8) and returns a maximal orthonormal set of common
/// eigenvectors with their per-generator eigenvalues.
std::vector<CommonEigenvector> eigenspace_intersection_oracle(const FiniteUnitaryGroup& g);

/// Projects xi onto the character blocks of the common-eigenvector frame,
/// drops blocks with mass below the measured weak defect, and returns the
/// (unnormalized) remainder, certified as a common eigenvector with
/// ||xi - eta||^2 < 3600 n^11 eps whenever eps < 1/(3600 n^11).
/// Errors: no_common_eigenvector (carries measured eps as a lower-bound
/// witness); all_components_below_eps; bound_violation.
EigenvectorCertificate truncate_eigenvector(const FiniteUnitaryGroup& g, const UnitVector& xi);

}  // namespace unireduce
