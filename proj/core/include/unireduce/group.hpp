#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "unireduce/numerics.hpp"

namespace unireduce {

/// A closed finite set of unitary matrices with identity, inverses, and
/// generator provenance. Elements are kept in a canonical order (real part
/// of trace, then lexicographic entries), so equal groups list equal
/// elements regardless of how the closure was traversed. Immutable after
/// construction.
class FiniteUnitaryGroup {
public:
    /// Breadth-first product closure of the generators, deduplicating at
    /// eq_tol and polar-projecting every product before insertion.
    /// Errors: cap_exceeded when the closure grows past `cap`;
    /// dimension_mismatch; not_unitary via certification.
    static FiniteUnitaryGroup close(const std::vector<UnitaryMatrix>& generators,
                                    const Tolerance& tol, std::size_t cap = 10000);

    /// Wraps an already-closed element set (validates identity membership,
    /// pairwise separation, and closure under product and adjoint).
    static FiniteUnitaryGroup from_closed_elements(std::vector<UnitaryMatrix> elements,
                                                   std::vector<std::size_t> generator_indices,
                                                   const Tolerance& tol);

    std::size_t dim() const noexcept { return dim_; }
    std::size_t order() const noexcept { return elements_.size(); }
    const std::vector<UnitaryMatrix>& elements() const noexcept { return elements_; }
    const UnitaryMatrix& element(std::size_t i) const { return elements_[i]; }
    const std::vector<std::size_t>& generator_indices() const noexcept { return generator_indices_; }
    const Tolerance& tol() const noexcept { return tol_; }

    /// Index of the element within eq_tol of m, if any.
    std::optional<std::size_t> find(const ComplexMatrix& m) const;

    std::size_t identity_index() const noexcept { return identity_index_; }
    std::size_t product_index(std::size_t i, std::size_t j) const;
    std::size_t inverse_index(std::size_t i) const;

private:
    FiniteUnitaryGroup() = default;
    void build_index();
    void build_tables();

    std::size_t dim_ = 0;
    std::vector<UnitaryMatrix> elements_;
    std::vector<std::size_t> generator_indices_;
    Tolerance tol_;

    std::size_t identity_index_ = 0;
    std::vector<std::pair<double, std::size_t>> trace_index_;  // sorted by Re(trace)
    std::vector<std::size_t> mult_table_;                      // order^2, if small enough
    std::vector<std::size_t> inverse_table_;
};

/// Permutation/weight form of a monomial group: (Gx)_i = gamma_i x_{perm[i]}.
struct MonomialElement {
    std::vector<std::size_t> perm;
    std::vector<cplx> weights;
};

struct MonomialStructure {
    std::size_t dim = 0;
    std::vector<MonomialElement> per_element;  // parallel to group elements
};

/// G = scalar * [A, B] with A = elements[a_index], B = elements[b_index].
struct CommutatorWitness {
    std::size_t a_index;
    std::size_t b_index;
    cplx scalar;
};

struct DerivedElements {
    std::vector<std::size_t> indices;  // elements expressible as one commutator
    bool equals_group = false;
};

/// [A,B] = A B A* B*. Errors: dimension_mismatch.
UnitaryMatrix commutator(const UnitaryMatrix& a, const UnitaryMatrix& b);

/// Exhaustive ordered-pair scan for G = scalar * [A,B]; returns the first
/// witness in canonical order. With require_scalar_element set, the scalar
/// matrix itself must be a group element. Errors: no_witness.
CommutatorWitness find_scalar_commutator(const FiniteUnitaryGroup& g, std::size_t element_index,
                                         bool require_scalar_element = false);

/// Extracts permutation and weights per element, or nullopt when some row
/// carries more than one entry above eq_tol.
std::optional<MonomialStructure> monomial_structure(const FiniteUnitaryGroup& g);

/// Whether the permutation action reaches every coordinate from the first.
bool is_transitive(const MonomialStructure& ms);

/// Orbits of the permutation action, each sorted, ordered by smallest member.
std::vector<std::vector<std::size_t>> permutation_orbits(const MonomialStructure& ms);

/// gamma_1 ... gamma_n = det(G) sign(perm).
cplx weight_product_hom(const FiniteUnitaryGroup& g, const MonomialStructure& ms,
                        std::size_t element_index);

/// Indices of the kernel subgroup {G : weight product = 1}.
std::vector<std::size_t> weight_hom_kernel(const FiniteUnitaryGroup& g,
                                           const MonomialStructure& ms);

/// Elements expressible as a single commutator (exhaustive pair scan).
DerivedElements derived_elements(const FiniteUnitaryGroup& g);

}  // namespace unireduce
