#include "unireduce/group.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <map>
#include <utility>

namespace unireduce {

namespace {

// Groups up to this order carry precomputed multiplication/inverse tables.
constexpr std::size_t kTableCap = 1024;

// Products whose drift is already at rounding level are kept bit-exact;
// polar projection only fires on genuine drift. Exact-arithmetic groups
// (signed permutations, fourth roots) therefore reproduce identical bytes
// when a closure is serialized and re-closed.
UnitaryMatrix clean_product(const ComplexMatrix& m, const Tolerance& tol) {
    if (unitary_defect(m) <= 1e-13) return certify_unitary(m, tol);
    return polar_project(m);
}

bool canonical_less(const ComplexMatrix& a, const ComplexMatrix& b) {
    const double ta = a.trace().real();
    const double tb = b.trace().real();
    if (ta != tb) return ta < tb;
    const auto& ea = a.entries();
    const auto& eb = b.entries();
    for (std::size_t i = 0; i < ea.size(); ++i) {
        if (ea[i].real() != eb[i].real()) return ea[i].real() < eb[i].real();
        if (ea[i].imag() != eb[i].imag()) return ea[i].imag() < eb[i].imag();
    }
    return false;
}

// Mutable dedup index over a growing element list, keyed by Re(trace).
// Matrices within eq_tol in Frobenius have traces within sqrt(n) eq_tol.
class DedupIndex {
public:
    DedupIndex(std::size_t dim, double eq_tol)
        : window_(std::sqrt(static_cast<double>(dim)) * eq_tol + 1e-12), eq_tol_(eq_tol) {}

    std::optional<std::size_t> find(const ComplexMatrix& m,
                                    const std::vector<UnitaryMatrix>& elements) const {
        const double key = m.trace().real();
        auto lo = by_trace_.lower_bound(key - window_);
        auto hi = by_trace_.upper_bound(key + window_);
        for (auto it = lo; it != hi; ++it) {
            if (within_frobenius(m, elements[it->second].mat(), eq_tol_)) return it->second;
        }
        return std::nullopt;
    }

    void insert(const ComplexMatrix& m, std::size_t index) {
        by_trace_.emplace(m.trace().real(), index);
    }

private:
    std::multimap<double, std::size_t> by_trace_;
    double window_;
    double eq_tol_;
};

}  // namespace

void FiniteUnitaryGroup::build_index() {
    trace_index_.clear();
    trace_index_.reserve(elements_.size());
    for (std::size_t i = 0; i < elements_.size(); ++i)
        trace_index_.emplace_back(elements_[i].mat().trace().real(), i);
    std::sort(trace_index_.begin(), trace_index_.end());

    auto id = find(ComplexMatrix::identity(dim_));
    if (!id) raise(errc::invalid_argument, "group does not contain the identity");
    identity_index_ = *id;
}

void FiniteUnitaryGroup::build_tables() {
    const std::size_t n = elements_.size();
    inverse_table_.assign(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
        auto inv = find(adjoint(elements_[i].mat()));
        if (!inv) raise(errc::invalid_argument, "element set is not closed under adjoint");
        inverse_table_[i] = *inv;
    }
    if (n <= kTableCap) {
        mult_table_.assign(n * n, 0);
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                auto k = find(elements_[i].mat() * elements_[j].mat());
                if (!k) raise(errc::invalid_argument, "element set is not closed under product");
                mult_table_[i * n + j] = *k;
            }
        }
    }
}

std::optional<std::size_t> FiniteUnitaryGroup::find(const ComplexMatrix& m) const {
    if (m.rows() != dim_ || m.cols() != dim_) return std::nullopt;
    const double window = std::sqrt(static_cast<double>(dim_)) * tol_.eq_tol + 1e-12;
    const double key = m.trace().real();
    auto lo = std::lower_bound(trace_index_.begin(), trace_index_.end(),
                               std::make_pair(key - window, std::size_t{0}));
    for (auto it = lo; it != trace_index_.end() && it->first <= key + window; ++it) {
        if (within_frobenius(m, elements_[it->second].mat(), tol_.eq_tol)) return it->second;
    }
    return std::nullopt;
}

std::size_t FiniteUnitaryGroup::product_index(std::size_t i, std::size_t j) const {
    const std::size_t n = elements_.size();
    if (!mult_table_.empty()) return mult_table_[i * n + j];
    auto k = find(elements_[i].mat() * elements_[j].mat());
    if (!k) raise(errc::invalid_argument, "product left the element set");
    return *k;
}

std::size_t FiniteUnitaryGroup::inverse_index(std::size_t i) const { return inverse_table_[i]; }

FiniteUnitaryGroup FiniteUnitaryGroup::close(const std::vector<UnitaryMatrix>& generators,
                                             const Tolerance& tol, std::size_t cap) {
    tol.validate();
    if (generators.empty()) raise(errc::invalid_argument, "need at least one generator");
    const std::size_t dim = generators.front().dim();
    for (const auto& g : generators)
        if (g.dim() != dim) raise(errc::dimension_mismatch, "generators differ in dimension");

    // Multiplier set: cleaned generators plus adjoints. The closure of a
    // finite group does not need the adjoints, but adding them keeps partial
    // frontiers inverse-closed while the search runs.
    std::vector<UnitaryMatrix> multipliers;
    for (const auto& g : generators) {
        multipliers.push_back(clean_product(g.mat(), tol));
        multipliers.push_back(multipliers.back().adjoint_unitary());
    }

    std::vector<UnitaryMatrix> elements;
    DedupIndex dedup(dim, tol.eq_tol);
    auto insert_if_new = [&](UnitaryMatrix u) -> std::optional<std::size_t> {
        if (dedup.find(u.mat(), elements)) return std::nullopt;
        elements.push_back(std::move(u));
        dedup.insert(elements.back().mat(), elements.size() - 1);
        return elements.size() - 1;
    };

    std::deque<std::size_t> frontier;
    auto seed = certify_unitary(ComplexMatrix::identity(dim), tol);
    insert_if_new(seed);
    frontier.push_back(0);

    while (!frontier.empty()) {
        const std::size_t current = frontier.front();
        frontier.pop_front();
        for (const auto& m : multipliers) {
            auto fresh = insert_if_new(clean_product(elements[current].mat() * m.mat(), tol));
            if (fresh) {
                if (elements.size() > cap)
                    raise(errc::cap_exceeded, "closure grew past the cap",
                          static_cast<double>(elements.size()), static_cast<double>(cap));
                frontier.push_back(*fresh);
            }
        }
    }

    // Canonical order, independent of traversal.
    std::vector<std::size_t> perm(elements.size());
    for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = i;
    std::sort(perm.begin(), perm.end(), [&](std::size_t a, std::size_t b) {
        return canonical_less(elements[a].mat(), elements[b].mat());
    });
    std::vector<UnitaryMatrix> sorted;
    sorted.reserve(elements.size());
    for (std::size_t i : perm) sorted.push_back(std::move(elements[i]));

    FiniteUnitaryGroup g;
    g.dim_ = dim;
    g.tol_ = tol;
    g.elements_ = std::move(sorted);
    g.build_index();

    for (const auto& gen : generators) {
        auto idx = g.find(gen.mat());
        if (!idx) raise(errc::invalid_argument, "generator lost during closure");
        if (std::find(g.generator_indices_.begin(), g.generator_indices_.end(), *idx) ==
            g.generator_indices_.end())
            g.generator_indices_.push_back(*idx);
    }
    g.build_tables();
    return g;
}

FiniteUnitaryGroup FiniteUnitaryGroup::from_closed_elements(
    std::vector<UnitaryMatrix> elements, std::vector<std::size_t> generator_indices,
    const Tolerance& tol) {
    tol.validate();
    if (elements.empty()) raise(errc::invalid_argument, "empty element set");
    const std::size_t dim = elements.front().dim();
    for (const auto& e : elements)
        if (e.dim() != dim) raise(errc::dimension_mismatch, "elements differ in dimension");

    for (std::size_t i = 0; i < elements.size(); ++i)
        for (std::size_t j = i + 1; j < elements.size(); ++j)
            if (frobenius_distance(elements[i].mat(), elements[j].mat()) <= tol.eq_tol)
                raise(errc::invalid_argument, "duplicate elements within eq_tol");

    std::vector<std::size_t> perm(elements.size());
    for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = i;
    std::sort(perm.begin(), perm.end(), [&](std::size_t a, std::size_t b) {
        return canonical_less(elements[a].mat(), elements[b].mat());
    });
    std::vector<std::size_t> where(elements.size());
    for (std::size_t pos = 0; pos < perm.size(); ++pos) where[perm[pos]] = pos;

    FiniteUnitaryGroup g;
    g.dim_ = dim;
    g.tol_ = tol;
    g.elements_.reserve(elements.size());
    for (std::size_t i : perm) g.elements_.push_back(std::move(elements[i]));
    g.build_index();

    for (std::size_t gi : generator_indices) {
        if (gi >= where.size()) raise(errc::invalid_argument, "generator index out of range");
        const std::size_t mapped = where[gi];
        if (std::find(g.generator_indices_.begin(), g.generator_indices_.end(), mapped) ==
            g.generator_indices_.end())
            g.generator_indices_.push_back(mapped);
    }
    if (g.generator_indices_.empty()) g.generator_indices_.push_back(g.identity_index_);
    g.build_tables();  // also validates closure under product and adjoint
    if (g.elements_.size() > kTableCap) {
        // Tables were skipped; spot-check closure on generator columns.
        for (std::size_t i = 0; i < g.elements_.size(); ++i)
            for (std::size_t gi : g.generator_indices_) (void)g.product_index(i, gi);
    }
    return g;
}

UnitaryMatrix commutator(const UnitaryMatrix& a, const UnitaryMatrix& b) {
    if (a.dim() != b.dim()) raise(errc::dimension_mismatch, "commutator dimension mismatch");
    ComplexMatrix c = a.mat() * b.mat() * adjoint(a.mat()) * adjoint(b.mat());
    const double defect = std::max(unitary_defect(c), 1e-15);
    Tolerance loose{std::max(defect * 10.0, 1e-10), std::max(defect * 2.0, 1e-12), 1e-8};
    return certify_unitary(c, loose);
}

CommutatorWitness find_scalar_commutator(const FiniteUnitaryGroup& g, std::size_t element_index,
                                         bool require_scalar_element) {
    if (element_index >= g.order()) raise(errc::invalid_argument, "element index out of range");
    const ComplexMatrix& target = g.element(element_index).mat();
    const std::size_t n = g.dim();
    const double eq = g.tol().eq_tol;

    auto commutator_index = [&](std::size_t a, std::size_t b) {
        const std::size_t ab = g.product_index(a, b);
        return g.product_index(ab, g.product_index(g.inverse_index(a), g.inverse_index(b)));
    };

    // Exact commutator witnesses (scalar 1) take precedence; otherwise the
    // trivial pair (e_0, e_0) would shadow every genuine decomposition.
    for (std::size_t a = 0; a < g.order(); ++a)
        for (std::size_t b = 0; b < g.order(); ++b)
            if (commutator_index(a, b) == element_index) return CommutatorWitness{a, b, 1.0};

    for (std::size_t a = 0; a < g.order(); ++a) {
        for (std::size_t b = 0; b < g.order(); ++b) {
            const ComplexMatrix& c = g.element(commutator_index(a, b)).mat();

            // Scalar candidate from the largest entry of the commutator; a
            // unitary matrix always has one of modulus >= 1/sqrt(n).
            std::size_t ri = 0, ci = 0;
            double best = -1.0;
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j)
                    if (std::abs(c(i, j)) > best) best = std::abs(c(i, j)), ri = i, ci = j;
            cplx scalar = target(ri, ci) / c(ri, ci);
            if (std::abs(std::abs(scalar) - 1.0) > eq) continue;
            scalar /= std::abs(scalar);
            if (!within_frobenius(target, scalar * c, eq)) continue;
            if (require_scalar_element &&
                !g.find(scalar * ComplexMatrix::identity(n)).has_value())
                continue;
            return CommutatorWitness{a, b, scalar};
        }
    }
    raise(errc::no_witness, "element is not a scalar multiple of a commutator");
}

std::optional<MonomialStructure> monomial_structure(const FiniteUnitaryGroup& g) {
    MonomialStructure ms;
    ms.dim = g.dim();
    ms.per_element.reserve(g.order());
    const double eq = g.tol().eq_tol;

    for (const auto& u : g.elements()) {
        MonomialElement elem;
        elem.perm.assign(g.dim(), 0);
        elem.weights.assign(g.dim(), cplx(0.0, 0.0));
        std::vector<bool> column_used(g.dim(), false);
        for (std::size_t i = 0; i < g.dim(); ++i) {
            std::size_t hits = 0;
            std::size_t col = 0;
            for (std::size_t j = 0; j < g.dim(); ++j) {
                if (std::abs(u.mat()(i, j)) > eq) {
                    ++hits;
                    col = j;
                }
            }
            if (hits != 1) return std::nullopt;
            if (std::abs(u.mat()(i, col)) < 1.0 - eq) return std::nullopt;
            if (column_used[col]) return std::nullopt;
            column_used[col] = true;
            elem.perm[i] = col;
            elem.weights[i] = u.mat()(i, col);
        }
        ms.per_element.push_back(std::move(elem));
    }
    return ms;
}

bool is_transitive(const MonomialStructure& ms) {
    return permutation_orbits(ms).size() == 1;
}

std::vector<std::vector<std::size_t>> permutation_orbits(const MonomialStructure& ms) {
    const std::size_t n = ms.dim;
    std::vector<std::size_t> parent(n);
    for (std::size_t i = 0; i < n; ++i) parent[i] = i;
    auto root = [&](std::size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (const auto& elem : ms.per_element)
        for (std::size_t i = 0; i < n; ++i) {
            const std::size_t a = root(i), b = root(elem.perm[i]);
            if (a != b) parent[a] = b;
        }
    std::vector<std::vector<std::size_t>> orbits;
    std::vector<long> slot(n, -1);
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t r = root(i);
        if (slot[r] < 0) {
            slot[r] = static_cast<long>(orbits.size());
            orbits.emplace_back();
        }
        orbits[static_cast<std::size_t>(slot[r])].push_back(i);
    }
    return orbits;
}

cplx weight_product_hom(const FiniteUnitaryGroup& g, const MonomialStructure& ms,
                        std::size_t element_index) {
    if (element_index >= ms.per_element.size())
        raise(errc::invalid_argument, "element index out of range");
    (void)g;
    cplx product = 1.0;
    for (const cplx& w : ms.per_element[element_index].weights) product *= w;
    return product;
}

std::vector<std::size_t> weight_hom_kernel(const FiniteUnitaryGroup& g,
                                           const MonomialStructure& ms) {
    std::vector<std::size_t> kernel;
    for (std::size_t i = 0; i < g.order(); ++i)
        if (std::abs(weight_product_hom(g, ms, i) - 1.0) <= 1e-8) kernel.push_back(i);
    return kernel;
}

DerivedElements derived_elements(const FiniteUnitaryGroup& g) {
    std::vector<bool> hit(g.order(), false);
    for (std::size_t a = 0; a < g.order(); ++a) {
        for (std::size_t b = 0; b < g.order(); ++b) {
            const std::size_t ab = g.product_index(a, b);
            hit[g.product_index(ab, g.product_index(g.inverse_index(a), g.inverse_index(b)))] =
                true;
        }
    }
    DerivedElements out;
    for (std::size_t i = 0; i < g.order(); ++i)
        if (hit[i]) out.indices.push_back(i);
    out.equals_group = out.indices.size() == g.order();
    return out;
}

}  // namespace unireduce
