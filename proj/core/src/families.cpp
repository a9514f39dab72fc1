#include "unireduce/families.hpp"

#include <cmath>
#include <numbers>

namespace unireduce::families {

namespace {

constexpr double kTau = 2.0 * std::numbers::pi;

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

cplx root_of_unity(std::size_t m, std::size_t k) {
    const double angle = kTau * static_cast<double>(k % m) / static_cast<double>(m);
    return {std::cos(angle), std::sin(angle)};
}

std::vector<std::size_t> shift_perm(std::size_t n) {
    // (Px)_i = x_{i+1 mod n}
    std::vector<std::size_t> perm(n);
    for (std::size_t i = 0; i < n; ++i) perm[i] = (i + 1) % n;
    return perm;
}

}  // namespace

UnitaryMatrix permutation_matrix(const std::vector<std::size_t>& perm, const Tolerance& tol) {
    return monomial_matrix(perm, std::vector<cplx>(perm.size(), cplx(1.0, 0.0)), tol);
}

UnitaryMatrix monomial_matrix(const std::vector<std::size_t>& perm,
                              const std::vector<cplx>& weights, const Tolerance& tol) {
    const std::size_t n = perm.size();
    if (weights.size() != n) raise(errc::length_mismatch, "permutation/weights length mismatch");
    ComplexMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, perm[i]) = weights[i];
    return certify_unitary(m, tol);
}

FiniteUnitaryGroup cyclic_group(std::size_t n, const Tolerance& tol) {
    return FiniteUnitaryGroup::close({permutation_matrix(shift_perm(n), tol)}, tol);
}

FiniteUnitaryGroup symmetric_group(std::size_t n, const Tolerance& tol) {
    std::vector<UnitaryMatrix> gens{permutation_matrix(shift_perm(n), tol)};
    if (n >= 2) {
        std::vector<std::size_t> swap01(n);
        for (std::size_t i = 0; i < n; ++i) swap01[i] = i;
        std::swap(swap01[0], swap01[1]);
        gens.push_back(permutation_matrix(swap01, tol));
    }
    return FiniteUnitaryGroup::close(gens, tol);
}

FiniteUnitaryGroup alternating_group(std::size_t n, const Tolerance& tol) {
    if (n == 4)
        return FiniteUnitaryGroup::close(
            {permutation_matrix({1, 2, 0, 3}, tol), permutation_matrix({1, 0, 3, 2}, tol)}, tol);
    if (n == 5)
        return FiniteUnitaryGroup::close(
            {permutation_matrix({1, 2, 0, 3, 4}, tol), permutation_matrix({1, 2, 3, 4, 0}, tol)},
            tol);
    raise(errc::invalid_argument, "alternating groups are provided for n in {4, 5}");
}

FiniteUnitaryGroup dihedral_group(std::size_t n, const Tolerance& tol) {
    std::vector<std::size_t> reversal(n);
    for (std::size_t i = 0; i < n; ++i) reversal[i] = n - 1 - i;
    return FiniteUnitaryGroup::close(
        {permutation_matrix(shift_perm(n), tol), permutation_matrix(reversal, tol)}, tol);
}

FiniteUnitaryGroup signed_shift_group(std::size_t n, const Tolerance& tol) {
    std::vector<cplx> weights(n, cplx(1.0, 0.0));
    if (n >= 2) {
        weights[0] = -1.0;
        weights[1] = -1.0;
    }
    return FiniteUnitaryGroup::close({monomial_matrix(shift_perm(n), weights, tol)}, tol);
}

FiniteUnitaryGroup diagonal_group(std::size_t m, const std::vector<std::size_t>& exponents,
                                  const Tolerance& tol) {
    const std::size_t n = exponents.size();
    std::vector<std::size_t> id(n);
    for (std::size_t i = 0; i < n; ++i) id[i] = i;
    std::vector<cplx> weights(n);
    for (std::size_t i = 0; i < n; ++i) weights[i] = root_of_unity(m, exponents[i]);
    return FiniteUnitaryGroup::close({monomial_matrix(id, weights, tol)}, tol);
}

FiniteUnitaryGroup scalar_group(std::size_t n, std::size_t m, const Tolerance& tol) {
    std::vector<std::size_t> exponents(n, 1);
    return diagonal_group(m, exponents, tol);
}

FiniteUnitaryGroup pauli_group(const Tolerance& tol) {
    const UnitaryMatrix x = permutation_matrix({1, 0}, tol);
    const UnitaryMatrix z = monomial_matrix({0, 1}, {cplx(1.0, 0.0), cplx(-1.0, 0.0)}, tol);
    return FiniteUnitaryGroup::close({x, z}, tol);
}

FiniteUnitaryGroup clock_shift_group(std::size_t d, const Tolerance& tol) {
    std::vector<cplx> clock(d);
    for (std::size_t i = 0; i < d; ++i) clock[i] = root_of_unity(d, i);
    std::vector<std::size_t> id(d);
    for (std::size_t i = 0; i < d; ++i) id[i] = i;
    return FiniteUnitaryGroup::close(
        {permutation_matrix(shift_perm(d), tol), monomial_matrix(id, clock, tol)}, tol);
}

FiniteUnitaryGroup padded_group(const FiniteUnitaryGroup& block, std::size_t extra) {
    const std::size_t n = block.dim() + extra;
    std::vector<UnitaryMatrix> gens;
    for (std::size_t gi : block.generator_indices()) {
        ComplexMatrix m = ComplexMatrix::identity(n);
        for (std::size_t i = 0; i < block.dim(); ++i)
            for (std::size_t j = 0; j < block.dim(); ++j)
                m(extra + i, extra + j) = block.element(gi).mat()(i, j);
        gens.push_back(certify_unitary(m, block.tol()));
    }
    return FiniteUnitaryGroup::close(gens, block.tol());
}

FiniteUnitaryGroup conjugated_group(const FiniteUnitaryGroup& g, const UnitaryMatrix& w) {
    if (w.dim() != g.dim()) raise(errc::dimension_mismatch, "conjugator dimension mismatch");
    const ComplexMatrix w_adj = adjoint(w.mat());
    std::vector<UnitaryMatrix> elements;
    elements.reserve(g.order());
    for (const auto& u : g.elements())
        elements.push_back(certify_unitary(w.mat() * u.mat() * w_adj, g.tol()));
    return FiniteUnitaryGroup::from_closed_elements(std::move(elements), g.generator_indices(),
                                                    g.tol());
}

UnitVector random_unit_vector(std::mt19937_64& rng, std::size_t n) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::vector<cplx> v(n);
    for (cplx& z : v) z = {gauss(rng), gauss(rng)};
    return UnitVector(std::move(v));
}

UnitaryMatrix random_unitary(std::mt19937_64& rng, std::size_t n) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    ComplexMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) m(i, j) = {gauss(rng), gauss(rng)};
    return polar_project(m);
}

UnitaryMatrix random_diagonal_phases(std::mt19937_64& rng, std::size_t n) {
    std::uniform_real_distribution<double> angle(0.0, kTau);
    ComplexMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        const double a = angle(rng);
        m(i, i) = {std::cos(a), std::sin(a)};
    }
    Tolerance tol;
    return certify_unitary(m, tol);
}

UnitVector perturbed_vector(std::mt19937_64& rng, const UnitVector& base, double delta) {
    const UnitVector direction = random_unit_vector(rng, base.dim());
    std::vector<cplx> v(base.dim());
    for (std::size_t i = 0; i < base.dim(); ++i) v[i] = base[i] + delta * direction[i];
    return UnitVector(std::move(v));
}

CorpusEntry sample_corpus_group(std::mt19937_64& rng, const Tolerance& tol) {
    std::uniform_int_distribution<int> pick(0, 10);
    std::uniform_int_distribution<std::size_t> small_n(2, 5);
    std::uniform_int_distribution<std::size_t> tiny_n(2, 4);
    switch (pick(rng)) {
        case 0: {
            const std::size_t n = small_n(rng);
            return {"cyclic", cyclic_group(n, tol), true, true, false};
        }
        case 1: {
            const std::size_t n = std::uniform_int_distribution<std::size_t>(2, 5)(rng);
            return {"symmetric", symmetric_group(n, tol), true, true, false};
        }
        case 2: {
            const std::size_t n = std::uniform_int_distribution<std::size_t>(3, 6)(rng);
            return {"dihedral", dihedral_group(n, tol), true, true, false};
        }
        case 3: {
            const std::size_t n = small_n(rng);
            return {"signed_shift", signed_shift_group(n, tol), true, true, false};
        }
        case 4: {
            const std::size_t n = small_n(rng);
            std::uniform_int_distribution<std::size_t> expo(0, 5);
            std::vector<std::size_t> exponents(n);
            for (auto& e : exponents) e = expo(rng);
            return {"diagonal", diagonal_group(6, exponents, tol), true, false, false};
        }
        case 5: return {"pauli", pauli_group(tol), true, true, true};
        case 6: {
            const std::size_t d = std::uniform_int_distribution<std::size_t>(2, 4)(rng);
            return {"clock_shift", clock_shift_group(d, tol), true, true, true};
        }
        case 7: {
            const std::size_t n = tiny_n(rng);
            FiniteUnitaryGroup base = symmetric_group(n, tol);
            return {"conjugated_symmetric",
                    conjugated_group(base, random_unitary(rng, n)), false, false, false};
        }
        case 8: {
            const std::size_t n = tiny_n(rng);
            return {"padded_clock_shift", padded_group(clock_shift_group(n, tol), 1), true,
                    false, false};
        }
        case 9: {
            const std::size_t n = std::uniform_int_distribution<std::size_t>(4, 5)(rng);
            return {"alternating", alternating_group(n, tol), true, true, false};
        }
        default: {
            const std::size_t n = tiny_n(rng);
            FiniteUnitaryGroup base = cyclic_group(n, tol);
            return {"phase_conjugated_cyclic",
                    conjugated_group(base, random_diagonal_phases(rng, n)), true, true, false};
        }
    }
}

FiniteUnitaryGroup sample_transitive_monomial(std::mt19937_64& rng, std::size_t n,
                                              const Tolerance& tol) {
    std::uniform_int_distribution<int> pick(0, 4);
    FiniteUnitaryGroup base = [&] {
        switch (pick(rng)) {
            case 0: return cyclic_group(n, tol);
            case 1: return symmetric_group(n, tol);
            case 2: return n >= 3 ? dihedral_group(n, tol) : symmetric_group(n, tol);
            case 3: return signed_shift_group(n, tol);
            default: return cyclic_group(n, tol);
        }
    }();
    // A diagonal phase conjugation keeps the family monomial and transitive
    // and leaves every weight product at 1.
    if (std::uniform_int_distribution<int>(0, 1)(rng) == 1)
        return conjugated_group(base, random_diagonal_phases(rng, n));
    return base;
}

FiniteUnitaryGroup sample_reducible_group(std::mt19937_64& rng, const Tolerance& tol) {
    std::uniform_int_distribution<int> pick(0, 3);
    switch (pick(rng)) {
        case 0: {
            std::uniform_int_distribution<std::size_t> expo(0, 3);
            const std::size_t n = std::uniform_int_distribution<std::size_t>(2, 4)(rng);
            std::vector<std::size_t> exponents(n);
            for (auto& e : exponents) e = expo(rng);
            exponents[0] = 0;  // guarantees the first axis is fixed
            exponents[1] = 1 + exponents[1] % 3;  // and that the group is nontrivial
            return diagonal_group(4, exponents, tol);
        }
        case 1: return padded_group(pauli_group(tol), 1);
        case 2: {
            const std::size_t d = std::uniform_int_distribution<std::size_t>(2, 3)(rng);
            return padded_group(clock_shift_group(d, tol),
                                std::uniform_int_distribution<std::size_t>(1, 2)(rng));
        }
        default: {
            FiniteUnitaryGroup base = padded_group(pauli_group(tol), 1);
            return conjugated_group(base, random_unitary(rng, base.dim()));
        }
    }
}

std::vector<CorpusEntry> irreducible_corpus(const Tolerance& tol) {
    std::vector<CorpusEntry> out;
    out.push_back({"pauli", pauli_group(tol), true, true, true});
    out.push_back({"clock_shift_3", clock_shift_group(3, tol), true, true, true});
    out.push_back({"clock_shift_4", clock_shift_group(4, tol), true, true, true});
    out.push_back({"clock_shift_5", clock_shift_group(5, tol), true, true, true});
    out.push_back({"clock_shift_6", clock_shift_group(6, tol), true, true, true});
    return out;
}

std::mt19937_64 trial_rng(std::uint64_t seed, std::uint64_t trial) {
    return std::mt19937_64(splitmix64(seed ^ splitmix64(trial + 0x51ed2701ULL)));
}

}  // namespace unireduce::families
