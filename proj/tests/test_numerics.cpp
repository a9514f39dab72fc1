#include <doctest.h>

#include <cmath>
#include <random>

#include "unireduce/families.hpp"
#include "unireduce/numerics.hpp"

using namespace unireduce;

namespace {

ComplexMatrix mat2(cplx a, cplx b, cplx c, cplx d) { return ComplexMatrix(2, 2, {a, b, c, d}); }

}  // namespace

TEST_CASE("tolerance validation") {
    Tolerance tol;
    CHECK_NOTHROW(tol.validate());

    Tolerance negative{-1.0, 1e-10, 1e-8};
    CHECK_THROWS_AS(negative.validate(), Error);

    Tolerance inverted{1e-12, 1e-10, 1e-8};  // eq_tol below unitarity_tol
    CHECK_THROWS_AS(inverted.validate(), Error);
}

TEST_CASE("certify_unitary accepts unitaries and reports defects") {
    Tolerance tol;
    CHECK_NOTHROW(certify_unitary(ComplexMatrix::identity(3), tol));
    CHECK_NOTHROW(certify_unitary(mat2(1.0, 0.0, 0.0, -1.0), tol));

    // Shear [[1,1],[0,1]]: M*M - I evaluates to [[0,1],[1,1]], defect sqrt(3).
    try {
        certify_unitary(mat2(1.0, 1.0, 0.0, 1.0), tol);
        FAIL("expected NotUnitary");
    } catch (const Error& e) {
        CHECK(e.code() == errc::not_unitary);
        CHECK(e.measured() == doctest::Approx(std::sqrt(3.0)).epsilon(1e-12));
    }

    ComplexMatrix rect(2, 3);
    CHECK_THROWS_AS(certify_unitary(rect, tol), Error);
}

TEST_CASE("polar_project fixes unitaries and strips positive scalars") {
    const double s = 1.0 / std::sqrt(2.0);
    const ComplexMatrix hadamard = mat2(s, s, s, -s);
    CHECK(frobenius_distance(polar_project(hadamard).mat(), hadamard) <= 1e-12);

    const ComplexMatrix doubled = cplx(2.0, 0.0) * ComplexMatrix::identity(2);
    CHECK(frobenius_distance(polar_project(doubled).mat(), ComplexMatrix::identity(2)) <= 1e-12);

    CHECK_THROWS_AS(polar_project(ComplexMatrix(2, 2)), Error);  // singular
}

TEST_CASE("polar_project absorbs first-order Hermitian perturbations") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 20; ++trial) {
        const UnitaryMatrix u = families::random_unitary(rng, 3);
        std::normal_distribution<double> gauss(0.0, 1.0);
        ComplexMatrix r(3, 3);
        for (std::size_t i = 0; i < 3; ++i)
            for (std::size_t j = 0; j < 3; ++j) r(i, j) = {gauss(rng), gauss(rng)};
        ComplexMatrix h = r + adjoint(r);
        h = cplx(1.0 / frobenius_norm(h), 0.0) * h;  // ||H|| <= 1

        const ComplexMatrix perturbed =
            u.mat() * (ComplexMatrix::identity(3) + cplx(1e-6, 0.0) * h);
        CHECK(frobenius_distance(polar_project(perturbed).mat(), u.mat()) <= 2e-6);
    }
}

TEST_CASE("polar_project is idempotent and certifiable") {
    std::mt19937_64 rng(7);
    std::normal_distribution<double> gauss(0.0, 1.0);
    Tolerance tol;
    for (int trial = 0; trial < 50; ++trial) {
        const std::size_t n = 2 + trial % 5;
        ComplexMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) m(i, j) = {gauss(rng), gauss(rng)};
        m = m + cplx(3.0, 0.0) * ComplexMatrix::identity(n);  // keep it nonsingular

        const UnitaryMatrix once = polar_project(m);
        const UnitaryMatrix twice = polar_project(once.mat());
        CHECK(frobenius_distance(once.mat(), twice.mat()) <= 1e-12);
        CHECK_NOTHROW(certify_unitary(once.mat(), tol));
    }
}

TEST_CASE("gram_schmidt examples") {
    const std::vector<std::vector<cplx>> standard{{1.0, 0.0, 0.0}, {0.0, 1.0, 0.0},
                                                  {0.0, 0.0, 1.0}};
    const auto q = gram_schmidt(standard);
    for (std::size_t i = 0; i < 3; ++i)
        CHECK(distance2(q[i], standard[i]) <= 1e-12);

    const auto swapped = gram_schmidt({{1.0, 0.0}, {1.0, 1.0}});
    CHECK(distance2(swapped[0], std::vector<cplx>{1.0, 0.0}) <= 1e-12);
    CHECK(distance2(swapped[1], std::vector<cplx>{0.0, 1.0}) <= 1e-12);

    const double s = 1.0 / std::sqrt(2.0);
    const std::vector<std::vector<cplx>> rotated{{s, s}, {s, -s}};
    const auto kept = gram_schmidt(rotated);
    CHECK(distance2(kept[0], rotated[0]) <= 1e-12);
    CHECK(distance2(kept[1], rotated[1]) <= 1e-12);

    CHECK_THROWS_AS(gram_schmidt({{1.0, 0.0}, {1.0, 1e-9}}), Error);
}

TEST_CASE("gram_schmidt output is orthonormal as a matrix") {
    std::mt19937_64 rng(23);
    std::normal_distribution<double> gauss(0.0, 1.0);
    for (int trial = 0; trial < 25; ++trial) {
        const std::size_t n = 2 + trial % 6;
        std::vector<std::vector<cplx>> basis(n, std::vector<cplx>(n));
        for (auto& v : basis)
            for (cplx& z : v) z = {gauss(rng), gauss(rng)};
        const auto q = gram_schmidt(basis);

        ComplexMatrix qm(n, n);
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t i = 0; i < n; ++i) qm(i, j) = q[j][i];
        CHECK(unitary_defect(qm) <= 1e-10);
    }
}

TEST_CASE("unit vectors normalize at construction") {
    UnitVector v(std::vector<cplx>{3.0, 4.0});
    CHECK(std::abs(norm2(v) - 1.0) <= 1e-12);
    CHECK(v[0].real() == doctest::Approx(0.6));

    CHECK_THROWS_AS(UnitVector(std::vector<cplx>{0.0, 0.0}), Error);
}
