#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "unireduce/group.hpp"
#include "unireduce/numerics.hpp"

// Seeded test-group families spanning the monomial / irreducible /
// decomposable regimes while keeping every closure finite: permutation
// groups, signed and weighted shifts, diagonal root-of-unity groups,
// clock-and-shift groups, and conjugates by seeded random unitaries.

namespace unireduce::families {

UnitaryMatrix permutation_matrix(const std::vector<std::size_t>& perm, const Tolerance& tol);
UnitaryMatrix monomial_matrix(const std::vector<std::size_t>& perm,
                              const std::vector<cplx>& weights, const Tolerance& tol);

/// Cyclic shift on C^n, order n.
FiniteUnitaryGroup cyclic_group(std::size_t n, const Tolerance& tol);

/// S_n as permutation matrices (n-cycle and a transposition), order n!.
FiniteUnitaryGroup symmetric_group(std::size_t n, const Tolerance& tol);

/// A_n as permutation matrices for n in {4, 5}. In A_5 every element is a
/// commutator; in A_4 the commutator set is the Klein four-subgroup.
FiniteUnitaryGroup alternating_group(std::size_t n, const Tolerance& tol);

/// Shift plus reversal, order 2n.
FiniteUnitaryGroup dihedral_group(std::size_t n, const Tolerance& tol);

/// Cyclic shift with an even number of -1 weights: transitive monomial
/// with every weight product equal to 1.
FiniteUnitaryGroup signed_shift_group(std::size_t n, const Tolerance& tol);

/// Diagonal group generated by diag(omega_m^{e_1}, ..., omega_m^{e_n});
/// monomial and decomposable (identity permutations).
FiniteUnitaryGroup diagonal_group(std::size_t m, const std::vector<std::size_t>& exponents,
                                  const Tolerance& tol);

/// {omega^k I : omega = e^{2 pi i / m}} on C^n.
FiniteUnitaryGroup scalar_group(std::size_t n, std::size_t m, const Tolerance& tol);

/// Closure of Pauli X and Z on C^2, order 8, irreducible.
FiniteUnitaryGroup pauli_group(const Tolerance& tol);

/// Clock-and-shift group on C^d, order d^3, irreducible.
FiniteUnitaryGroup clock_shift_group(std::size_t d, const Tolerance& tol);

/// Direct sum placing `block` in the lower-right corner of C^{extra+d},
/// acting as the identity on the first `extra` coordinates (reducible with
/// common eigenvectors e_1..e_extra).
FiniteUnitaryGroup padded_group(const FiniteUnitaryGroup& block, std::size_t extra);

/// W g W* for a unitary W; preserves every defect and spectrum.
FiniteUnitaryGroup conjugated_group(const FiniteUnitaryGroup& g, const UnitaryMatrix& w);

UnitVector random_unit_vector(std::mt19937_64& rng, std::size_t n);
UnitaryMatrix random_unitary(std::mt19937_64& rng, std::size_t n);

/// Unit diagonal phases; conjugation by it keeps a group monomial.
UnitaryMatrix random_diagonal_phases(std::mt19937_64& rng, std::size_t n);

/// normalize(base + delta * w) with a fresh random direction w.
UnitVector perturbed_vector(std::mt19937_64& rng, const UnitVector& base, double delta);

struct CorpusEntry {
    std::string name;
    FiniteUnitaryGroup group;
    bool monomial = false;
    bool transitive_monomial = false;
    bool irreducible = false;
};

/// Deterministic mixed corpus draw (orders <= 200, n <= 6).
CorpusEntry sample_corpus_group(std::mt19937_64& rng, const Tolerance& tol);

/// Transitive monomial family with weight products 1 on n in {2,3,4};
/// the exact pipeline regime.
FiniteUnitaryGroup sample_transitive_monomial(std::mt19937_64& rng, std::size_t n,
                                              const Tolerance& tol);

/// Reducible group with at least one 1-dimensional invariant block.
FiniteUnitaryGroup sample_reducible_group(std::mt19937_64& rng, const Tolerance& tol);

/// Irreducible corpus members (for commutant and defect-floor checks).
std::vector<CorpusEntry> irreducible_corpus(const Tolerance& tol);

/// Deterministic per-trial RNG stream.
std::mt19937_64 trial_rng(std::uint64_t seed, std::uint64_t trial);

}  // namespace unireduce::families
