#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "unireduce/decompose.hpp"
#include "unireduce/families.hpp"

using namespace unireduce;

namespace {
const Tolerance kTol;

double reducibility_threshold(std::size_t n) {
    return 1.0 / (3600.0 * std::pow(static_cast<double>(n), 11.0));
}

UnitVector basis_vector(std::size_t n, std::size_t k) {
    std::vector<cplx> v(n, cplx(0.0, 0.0));
    v[k] = 1.0;
    return UnitVector(std::move(v));
}

// Phase-insensitive alignment |<a, b>| of two unit vectors.
double alignment(const UnitVector& a, const UnitVector& b) {
    return std::abs(inner(a, b));
}
}  // namespace

TEST_CASE("commutant dimensions of the canonical groups") {
    CHECK(commutant_basis(families::pauli_group(kTol)).size() == 1);

    const FiniteUnitaryGroup trivial =
        FiniteUnitaryGroup::close({certify_unitary(ComplexMatrix::identity(2), kTol)}, kTol);
    CHECK(commutant_basis(trivial).size() == 4);

    CHECK(commutant_basis(families::diagonal_group(2, {0, 1}, kTol)).size() == 2);

    // The identity always sits inside the commutant span.
    const auto basis = commutant_basis(families::symmetric_group(3, kTol));
    const ComplexMatrix eye = ComplexMatrix::identity(3);
    double projected = 0.0;
    for (const ComplexMatrix& b : basis) {
        cplx coeff = 0.0;
        for (std::size_t i = 0; i < 9; ++i)
            coeff += eye.entries()[i] * std::conj(b.entries()[i]);
        projected += std::norm(coeff);
    }
    CHECK(projected == doctest::Approx(3.0).epsilon(1e-9));  // ||I||_F^2 = n
}

TEST_CASE("reduce_blocks splits the canonical groups") {
    const BlockDecomposition pauli = reduce_blocks(families::pauli_group(kTol), 1);
    CHECK(pauli.block_sizes == std::vector<std::size_t>{2});

    const BlockDecomposition s3 = reduce_blocks(families::symmetric_group(3, kTol), 1);
    CHECK(s3.block_sizes == std::vector<std::size_t>{1, 2});
    CHECK(s3.restricted_groups.size() == 2);
    CHECK(s3.restricted_groups[0].dim() == 1);
    CHECK(s3.restricted_groups[1].dim() == 2);

    const FiniteUnitaryGroup trivial =
        FiniteUnitaryGroup::close({certify_unitary(ComplexMatrix::identity(3), kTol)}, kTol);
    const BlockDecomposition lines = reduce_blocks(trivial, 1);
    CHECK(lines.block_sizes == std::vector<std::size_t>({1, 1, 1}));

    // Every element is block diagonal in the reported basis.
    const FiniteUnitaryGroup padded = families::padded_group(families::pauli_group(kTol), 1);
    const BlockDecomposition bd = reduce_blocks(padded, 3);
    const ComplexMatrix q_adj = adjoint(bd.basis_change);
    for (const auto& u : padded.elements()) {
        const ComplexMatrix compressed = q_adj * u.mat() * bd.basis_change;
        double off = 0.0;
        std::size_t start = 0;
        for (std::size_t b = 0; b < bd.block_sizes.size(); ++b) {
            for (std::size_t i = start; i < start + bd.block_sizes[b]; ++i)
                for (std::size_t j = 0; j < compressed.cols(); ++j)
                    if (j < start || j >= start + bd.block_sizes[b])
                        off += std::norm(compressed(i, j));
            start += bd.block_sizes[b];
        }
        CHECK(std::sqrt(off) <= kTol.eq_tol * static_cast<double>(padded.dim()));
    }
}

TEST_CASE("select_component follows the mass-per-dimension rule") {
    std::mt19937_64 rng(9);

    // Single block: everything stays put.
    const BlockDecomposition pauli = reduce_blocks(families::pauli_group(kTol), 1);
    const UnitVector xi2 = families::random_unit_vector(rng, 2);
    const ComponentSelection whole = select_component(pauli, xi2, defect(
        families::pauli_group(kTol), xi2).weak_defect);
    CHECK(whole.index == 0);
    CHECK(whole.component_norm_sq == doctest::Approx(1.0).epsilon(1e-12));

    // Two lines with masses 0.9 / 0.1.
    const FiniteUnitaryGroup pair = families::diagonal_group(2, {0, 1}, kTol);
    const BlockDecomposition lines = reduce_blocks(pair, 1);
    UnitVector tilted(std::vector<cplx>{std::sqrt(0.9), std::sqrt(0.1)});
    const ComponentSelection heavy =
        select_component(lines, tilted, defect(pair, tilted).weak_defect);
    CHECK(heavy.component_norm_sq == doctest::Approx(0.9).epsilon(1e-9));

    // Blocks (1,2) with masses (0.2, 0.8): 0.8/2 beats 0.2/1.
    const FiniteUnitaryGroup s3 = families::symmetric_group(3, kTol);
    const BlockDecomposition bd = reduce_blocks(s3, 1);
    REQUIRE(bd.block_sizes == std::vector<std::size_t>({1, 2}));
    const ComplexMatrix q = bd.basis_change;
    std::vector<cplx> mixed(3, cplx(0.0, 0.0));
    for (std::size_t i = 0; i < 3; ++i)
        mixed[i] = std::sqrt(0.2) * q(i, 0) + std::sqrt(0.4) * q(i, 1) + std::sqrt(0.4) * q(i, 2);
    UnitVector xi3(std::move(mixed));
    const ComponentSelection wide = select_component(bd, xi3, defect(s3, xi3).weak_defect);
    CHECK(wide.index == 1);
    CHECK(wide.component_norm_sq == doctest::Approx(0.8).epsilon(1e-9));
}

TEST_CASE("select_component keeps the pigeonhole guarantee") {
    std::mt19937_64 rng(10);
    for (int trial = 0; trial < 100; ++trial) {
        const FiniteUnitaryGroup g = families::sample_reducible_group(rng, kTol);
        const UnitVector xi = families::random_unit_vector(rng, g.dim());
        const BlockDecomposition bd = reduce_blocks(g, trial);
        const ComponentSelection sel = select_component(bd, xi, defect(g, xi).weak_defect);
        CHECK(sel.component_norm_sq + 1e-12 >=
              static_cast<double>(bd.block_sizes[sel.index]) / static_cast<double>(g.dim()));
    }
}

TEST_CASE("monomial_flatten straightens phases and order") {
    const FiniteUnitaryGroup s3 = families::symmetric_group(3, kTol);
    const auto ms = monomial_structure(s3);

    // Already sorted and nonnegative: the conjugator is the identity.
    UnitVector sorted(std::vector<cplx>{0.8, 0.5, std::sqrt(1.0 - 0.89)});
    const MonomialFlattening noop = monomial_flatten(s3, *ms, sorted);
    CHECK(frobenius_distance(noop.conjugator, ComplexMatrix::identity(3)) <= 1e-12);

    // Phases are stripped and the entries sorted.
    const FiniteUnitaryGroup swap2 = families::symmetric_group(2, kTol);
    const auto swap_ms = monomial_structure(swap2);
    UnitVector skew(std::vector<cplx>{cplx(0.0, 1.0 / std::sqrt(2.0)),
                                      cplx(1.0 / std::sqrt(2.0), 0.0)});
    const MonomialFlattening flat = monomial_flatten(swap2, *swap_ms, skew);
    CHECK(flat.xi_sorted[0] == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-12));
    CHECK(flat.xi_sorted[1] == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-12));
    const std::vector<cplx> mapped = flat.conjugator * skew;
    for (std::size_t i = 0; i < 2; ++i)
        CHECK(std::abs(mapped[i] - cplx(flat.xi_sorted[i], 0.0)) <= 1e-12);

    // e2 flattens to e1 by the sorting permutation.
    const MonomialFlattening moved = monomial_flatten(swap2, *swap_ms, basis_vector(2, 1));
    CHECK(moved.xi_sorted[0] == doctest::Approx(1.0));
    CHECK(moved.xi_sorted[1] == doctest::Approx(0.0));

    // Conjugation round-trips each element within eq_tol.
    const ComplexMatrix w = flat.conjugator;
    const ComplexMatrix w_adj = adjoint(w);
    for (std::size_t e = 0; e < swap2.order(); ++e) {
        const ComplexMatrix back = w_adj * flat.group.element(e).mat() * w;
        CHECK(swap2.find(back).has_value());
    }
}

TEST_CASE("monomial_spread_check accepts theorem-consistent gaps") {
    CHECK(monomial_spread_check(std::vector<double>{0.5, 0.5, 0.5, 0.5}, 1e-8) <= 1e-15);

    // Equality case: (sqrt(.9)-sqrt(.1))^2 = 0.4 exactly.
    const std::vector<double> tilted{std::sqrt(0.9), std::sqrt(0.1)};
    CHECK(monomial_spread_check(tilted, 0.4) ==
          doctest::Approx(std::sqrt(0.9) - std::sqrt(0.1)));

    const std::vector<double> nudged{0.5 + 1e-6, 0.5, 0.5, 0.5 - 1e-6};
    CHECK(monomial_spread_check(nudged, 4e-12) == doctest::Approx(2e-6));

    CHECK_THROWS_AS(monomial_spread_check(tilted, 1e-12), Error);
}

TEST_CASE("monomial_eigenvector on exact fixed points") {
    const FiniteUnitaryGroup s3 = families::symmetric_group(3, kTol);
    const UnitVector uniform(std::vector<cplx>(3, cplx(1.0, 0.0)));
    const EigenvectorCertificate cert = monomial_eigenvector(s3, uniform);
    CHECK(cert.method == EigenMethod::monomial);
    CHECK(cert.distance_sq <= 1e-18);
    CHECK(cert.max_residual <= 1e-12);
    for (const cplx& chi : cert.characters) CHECK(std::abs(chi - cplx(1.0, 0.0)) <= 1e-12);
}

TEST_CASE("monomial_eigenvector recovers perturbed eigenvectors on C4") {
    const FiniteUnitaryGroup c4 = families::cyclic_group(4, kTol);
    std::vector<cplx> base(4, cplx(0.5, 0.0));
    base[0] += 1e-7;
    base[1] -= 1e-7;
    UnitVector xi(std::move(base));
    const double eps = defect(c4, xi).weak_defect;
    REQUIRE(eps < reducibility_threshold(4));

    const EigenvectorCertificate cert = monomial_eigenvector(c4, xi);
    CHECK(cert.max_residual <= 1e-8);
    CHECK(cert.bound_holds);
    CHECK(std::sqrt(cert.distance_sq) < 0.25);

    // The certified vector matches the oracle's uniform eigendirection.
    const auto frame = eigenspace_intersection_oracle(c4);
    double best = 0.0;
    for (const auto& dir : frame) best = std::max(best, alignment(cert.eta_unit, dir.vec));
    CHECK(best >= 1.0 - 1e-9);
}

TEST_CASE("monomial_eigenvector splits decomposable groups along orbits") {
    const FiniteUnitaryGroup pair = families::diagonal_group(2, {0, 1}, kTol);
    UnitVector tilted(std::vector<cplx>{std::sqrt(0.9), std::sqrt(0.1)});
    const EigenvectorCertificate cert = monomial_eigenvector(pair, tilted);
    CHECK(alignment(cert.eta_unit, basis_vector(2, 0)) >= 1.0 - 1e-12);
    for (const cplx& chi : cert.characters) CHECK(std::abs(chi - cplx(1.0, 0.0)) <= 1e-12);
}

TEST_CASE("eigenspace_intersection_oracle ground truths") {
    const FiniteUnitaryGroup trivial =
        FiniteUnitaryGroup::close({certify_unitary(ComplexMatrix::identity(3), kTol)}, kTol);
    const auto everything = eigenspace_intersection_oracle(trivial);
    CHECK(everything.size() == 3);
    for (const auto& dir : everything)
        for (const cplx& chi : dir.characters) CHECK(std::abs(chi - cplx(1.0, 0.0)) <= 1e-9);

    CHECK(eigenspace_intersection_oracle(families::pauli_group(kTol)).empty());

    const auto s3_frame = eigenspace_intersection_oracle(families::symmetric_group(3, kTol));
    REQUIRE(s3_frame.size() == 1);
    const UnitVector uniform(std::vector<cplx>(3, cplx(1.0, 0.0)));
    CHECK(alignment(s3_frame.front().vec, uniform) >= 1.0 - 1e-8);
}

TEST_CASE("truncate_eigenvector reproduces the tilted two-line example") {
    const double delta = 1e-3;
    const FiniteUnitaryGroup pair = families::diagonal_group(2, {0, 1}, kTol);
    UnitVector xi(std::vector<cplx>{std::sqrt(1.0 - delta * delta), delta});
    const EigenvectorCertificate cert = truncate_eigenvector(pair, xi);

    CHECK(cert.eps == doctest::Approx(2.0 * delta * delta).epsilon(1e-9));
    CHECK(std::abs(cert.distance_sq - delta * delta) <= 1e-12);
    CHECK(std::abs(cert.distance_sq - cert.eps / 2.0) <= 1e-12);
    CHECK(cert.bound_holds);
    CHECK(alignment(cert.eta_unit, basis_vector(2, 0)) >= 1.0 - 1e-12);
}

TEST_CASE("truncate_eigenvector keeps exact common eigenvectors") {
    std::mt19937_64 rng(11);
    const FiniteUnitaryGroup padded = families::padded_group(families::pauli_group(kTol), 1);
    const auto frame = eigenspace_intersection_oracle(padded);
    REQUIRE(!frame.empty());
    const EigenvectorCertificate cert = truncate_eigenvector(padded, frame.front().vec);
    CHECK(cert.distance_sq <= 1e-18);
    CHECK(cert.max_residual <= 1e-10);
    (void)rng;
}

TEST_CASE("truncate_eigenvector rejects inputs with no dominant block") {
    // Equal mass on two opposite characters drives eps to 1.
    const FiniteUnitaryGroup pair = families::diagonal_group(2, {0, 1}, kTol);
    const double s = 1.0 / std::sqrt(2.0);
    UnitVector balanced(std::vector<cplx>{s, s});
    try {
        truncate_eigenvector(pair, balanced);
        FAIL("expected AllComponentsBelowEps");
    } catch (const Error& e) {
        CHECK(e.code() == errc::all_components_below_eps);
    }
}

TEST_CASE("truncate_eigenvector certifies the defect floor when no frame exists") {
    const FiniteUnitaryGroup pauli = families::pauli_group(kTol);
    std::mt19937_64 rng(12);
    const UnitVector xi = families::random_unit_vector(rng, 2);
    try {
        truncate_eigenvector(pauli, xi);
        FAIL("expected NoCommonEigenvector");
    } catch (const Error& e) {
        CHECK(e.code() == errc::no_common_eigenvector);
        CHECK(e.measured() >= e.bound());  // measured eps >= 1/(3600 n^11)
        CHECK(e.bound() == doctest::Approx(reducibility_threshold(2)));
    }
}

TEST_CASE("oracle, commutant, and block structure agree across the corpus") {
    std::mt19937_64 rng(13);
    for (int trial = 0; trial < 30; ++trial) {
        const families::CorpusEntry entry = families::sample_corpus_group(rng, kTol);
        if (entry.group.order() > 48 || entry.group.dim() > 6) continue;
        const std::size_t commutant_dim = commutant_basis(entry.group).size();
        const BlockDecomposition bd = reduce_blocks(entry.group, trial);
        const auto frame = eigenspace_intersection_oracle(entry.group);

        CHECK((commutant_dim == 1) == (bd.block_sizes.size() == 1));
        const bool has_line = std::any_of(bd.block_sizes.begin(), bd.block_sizes.end(),
                                          [](std::size_t s) { return s == 1; });
        CHECK(frame.empty() != has_line);
    }
}

TEST_CASE("un-flattened uniform surrogate is a weak fixed point of the original group") {
    // The phase-twisted uniform vector W* (1/sqrt(n)) 1 has uniform moduli
    // and inherits the 3 n sqrt(n eps) weak defect on the original pair.
    std::mt19937_64 rng(15);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int trial = 0; trial < 60; ++trial) {
        const std::size_t n = 2 + static_cast<std::size_t>(trial % 3);
        const FiniteUnitaryGroup g = families::sample_transitive_monomial(rng, n, kTol);
        const auto ms = monomial_structure(g);
        const auto frame = eigenspace_intersection_oracle(g);
        REQUIRE(!frame.empty());
        const UnitVector xi = families::perturbed_vector(
            rng, frame[trial % frame.size()].vec, std::pow(10.0, -5.0 + 3.0 * unit(rng)));
        const double eps = defect(g, xi).weak_defect;

        const MonomialFlattening flat = monomial_flatten(g, *ms, xi);
        const double nd = static_cast<double>(n);
        std::vector<cplx> uniform(n, cplx(1.0 / std::sqrt(nd), 0.0));
        UnitVector twisted(adjoint(flat.conjugator) * uniform);

        for (std::size_t i = 0; i < n; ++i)
            CHECK(std::abs(twisted[i]) == doctest::Approx(1.0 / std::sqrt(nd)).epsilon(1e-12));
        const double eps1 = nd * std::sqrt(nd * (eps + kDefectNoise));
        if (eps1 < 1.0 / 3.0)
            CHECK(defect(g, twisted).weak_defect <= 3.0 * eps1 + 1e-9);
    }
}

TEST_CASE("uniform surrogate drift obeys the n sqrt(n eps) estimate") {
    std::mt19937_64 rng(14);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t n = 2 + static_cast<std::size_t>(trial % 3);
        const FiniteUnitaryGroup g = families::sample_transitive_monomial(rng, n, kTol);
        const auto ms = monomial_structure(g);
        REQUIRE(ms.has_value());
        const auto frame = eigenspace_intersection_oracle(g);
        REQUIRE(!frame.empty());
        const UnitVector xi = families::perturbed_vector(
            rng, frame[trial % frame.size()].vec, std::pow(10.0, -6.0 + 4.0 * unit(rng)));
        const double eps = defect(g, xi).weak_defect;
        const MonomialFlattening flat = monomial_flatten(g, *ms, xi);
        double drift_sq = 0.0;
        for (double entry : flat.xi_sorted) {
            const double diff = entry - 1.0 / std::sqrt(static_cast<double>(n));
            drift_sq += diff * diff;
        }
        const double nd = static_cast<double>(n);
        CHECK(std::sqrt(drift_sq) <= nd * std::sqrt(nd * eps) + 1e-9);
    }
}
