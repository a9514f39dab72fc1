#include "unireduce/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numbers>
#include <optional>
#include <thread>

#include "unireduce/decompose.hpp"
#include "unireduce/families.hpp"
#include "unireduce/fixedpoint.hpp"
#include "unireduce/group.hpp"
#include "unireduce/phase.hpp"

namespace unireduce {

namespace {

constexpr double kPi = std::numbers::pi;

struct CheckFailure {
    std::string check;
    std::string description;
    double measured;
    double bound;
};

void expect(bool ok, const std::string& check, const std::string& description, double measured,
            double bound) {
    if (!ok) throw CheckFailure{check, description, measured, bound};
}

double reducibility_threshold(std::size_t n) {
    return 1.0 / (3600.0 * std::pow(static_cast<double>(n), 11.0));
}

// ---------------------------------------------------------------------------
// lemmas: the phase-geometry inequalities on random inputs.

void lemmas_trial(std::mt19937_64& rng, std::uint64_t) {
    std::uniform_real_distribution<double> uphi(-kPi, kPi);
    std::uniform_real_distribution<double> unit(0.0, 1.0);

    {
        const double phi = uphi(rng);
        const auto [lower, chord, upper] = arc_chord_bounds(phi);
        expect(lower <= chord + 1e-14 && chord <= upper + 1e-14, "lemmas/arc_chord",
               "arc-chord ordering", chord, upper);
    }
    {
        const std::size_t order = std::uniform_int_distribution<std::size_t>(2, 64)(rng);
        const double dn = RootOfUnity::adjacent_distance(order);
        expect(dn >= 4.0 / static_cast<double>(order) - 1e-12, "lemmas/adjacent_distance",
               "d_n >= 4/n", dn, 4.0 / static_cast<double>(order));

        const std::size_t index = std::uniform_int_distribution<std::size_t>(0, order - 1)(rng);
        const PhaseApproximation round = nearest_root(RootOfUnity{order, index}.value(), order);
        expect(round.alpha.index == index && std::abs(round.residual_phase) <= 1e-12,
               "lemmas/nearest_root_roundtrip", "roots quantize to themselves",
               std::abs(round.residual_phase), 1e-12);
    }
    {
        const std::size_t k = std::uniform_int_distribution<std::size_t>(1, 16)(rng);
        const double scale = std::pow(10.0, -6.0 + 5.3 * unit(rng));
        std::vector<double> phis(k);
        cplx sum = 1.0;
        double abs_sum = 0.0;
        double sq_sum = 0.0;
        for (double& phi : phis) {
            phi = scale * (2.0 * unit(rng) - 1.0);
            sum += cplx{std::cos(phi), std::sin(phi)};
            abs_sum += std::abs(phi);
            sq_sum += phi * phi;
        }
        const double kd = static_cast<double>(k);
        const double eps_measured = std::max(0.0, 1.0 - std::abs(sum) / (kd + 1.0));
        const double eps = std::min(0.999, eps_measured * (1.0 + 1e-9) + 1e-15);
        const double bound = phase_sum_bound(phis, eps);
        expect(abs_sum < bound + 1e-12, "lemmas/phase_sum", "sum |phi| < pi sqrt(k)(k+1) sqrt(eps/2)",
               abs_sum, bound);
        expect((4.0 / (kPi * kPi)) * sq_sum <= (kd + 1.0) * (kd + 1.0) * 2.0 * eps + 1e-12,
               "lemmas/phase_sum_intermediate", "quadratic phase estimate", sq_sum, eps);
    }
    {
        const std::size_t n = std::uniform_int_distribution<std::size_t>(2, 8)(rng);
        const double nd = static_cast<double>(n);
        const RootOfUnity alpha{n, std::uniform_int_distribution<std::size_t>(0, n - 1)(rng)};
        // The closing phase aggregates the others; this scale keeps the
        // measured eps below 2/n^3.
        const double scale = unit(rng) * 1.5 / (nd * nd);
        std::vector<double> psis(n, 0.0);
        double head_sum = 0.0;
        for (std::size_t j = 0; j + 1 < n; ++j) {
            psis[j] = scale * (2.0 * unit(rng) - 1.0);
            head_sum += psis[j];
        }
        psis[n - 1] = -head_sum;
        std::vector<cplx> tuple(n);
        cplx sum = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            tuple[j] = alpha.value() * cplx{std::cos(psis[j]), std::sin(psis[j])};
            sum += tuple[j];
        }
        const double eps_measured = std::max(0.0, 1.0 - std::abs(sum) / nd);
        const double eps = std::max(eps_measured * (1.0 + 1e-9) + 1e-15, 1e-15);
        const PhaseApproximation approx = approx_scalar(tuple, eps);
        expect(approx.l2_distance <= approx.l1_distance + 1e-12 &&
                   approx.l1_distance <= std::sqrt(nd) * approx.l2_distance + 1e-12,
               "lemmas/norm_ordering", "l2 <= l1 <= sqrt(n) l2", approx.l1_distance,
               approx.l2_distance);
    }
    {
        const std::size_t len = std::uniform_int_distribution<std::size_t>(1, 8)(rng);
        std::vector<double> x(len), y(len);
        for (double& v : x) v = unit(rng);
        for (double& v : y) v = unit(rng);
        std::sort(x.rbegin(), x.rend());
        std::sort(y.rbegin(), y.rend());
        std::vector<std::size_t> perm(len);
        for (std::size_t i = 0; i < len; ++i) perm[i] = i;
        std::shuffle(perm.begin(), perm.end(), rng);
        const auto [permuted, sorted] = rearrangement_bound(x, y, perm);
        expect(permuted <= sorted + 1e-12, "lemmas/rearrangement", "permuted <= sorted", permuted,
               sorted);
    }
    {
        const double x = 0.1 + 2.9 * unit(rng);
        const double y = x * (0.01 + 0.98 * unit(rng));
        const double angle = 2.0 * kPi / 3.0 + (2.0 * kPi / 3.0) * unit(rng);
        const double value = obtuse_shrink(x, y, angle);
        expect(value <= x + 1e-12, "lemmas/obtuse_shrink", "|x + e^{ia} y| <= x", value, x);
    }
}

// ---------------------------------------------------------------------------
// bounds: lambda identity, commutator deviation, group averaging.

void bounds_trial(std::mt19937_64& rng, std::uint64_t) {
    const Tolerance tol;
    {
        const std::size_t n = std::uniform_int_distribution<std::size_t>(2, 8)(rng);
        const UnitaryMatrix u = families::random_unitary(rng, n);
        const UnitVector xi = families::random_unit_vector(rng, n);
        const std::vector<cplx> image = u.mat() * xi;
        const cplx ip = inner(image, xi);
        const double modulus = std::abs(ip);
        if (modulus > 1e-12) {
            const cplx lambda = ip / modulus;
            double residual_sq = 0.0;
            for (std::size_t i = 0; i < n; ++i) residual_sq += std::norm(image[i] - lambda * xi[i]);
            expect(std::abs(residual_sq - (2.0 - 2.0 * modulus)) <= 1e-12, "bounds/lambda_identity",
                   "||G xi - lambda xi||^2 = 2 - 2|<G xi, xi>|", residual_sq, 2.0 - 2.0 * modulus);

            const cplx ip_adj = inner(adjoint(u.mat()) * xi, xi);
            expect(std::abs(ip_adj - std::conj(ip)) <= 1e-12, "bounds/lambda_adjoint",
                   "lambda of the adjoint conjugates", std::abs(ip_adj - std::conj(ip)), 1e-12);
        }
    }

    const families::CorpusEntry entry = families::sample_corpus_group(rng, tol);
    const UnitVector xi = families::random_unit_vector(rng, entry.group.dim());
    const DefectReport report = defect(entry.group, xi);
    expect(report.weak_defect >= -1e-12 && report.weak_defect <= 1.0 + 1e-12,
           "bounds/weak_defect_range", "weak defect in [0,1] on " + entry.name,
           report.weak_defect, 1.0);
    expect(report.weak_defect <= report.strong_defect + 1e-12, "bounds/weak_le_strong",
           "weak <= strong on " + entry.name, report.weak_defect, report.strong_defect);

    const CommutatorDefectReport cdr = commutator_defect_check(entry.group, xi);
    expect(cdr.max_deviation <= cdr.bound + 1e-9, "bounds/commutator_deviation",
           "||C xi - xi|| <= 4 sqrt(2 eps) on " + entry.name, cdr.max_deviation, cdr.bound);

    try {
        const AverageFixedPoint avg = average_fixed_point(entry.group, xi);
        expect(avg.max_residual <= 1e-9, "bounds/average_invariance",
               "G eta = eta after averaging on " + entry.name, avg.max_residual, 1e-9);
        expect(avg.distance <= report.strong_defect + 1e-10, "bounds/average_distance",
               "||eta - xi|| <= strong defect on " + entry.name, avg.distance,
               report.strong_defect);
    } catch (const Error& e) {
        if (e.code() != errc::zero_average) throw;
    }

    if (report.weak_defect < 1.0 - 1e-6) (void)lambda_map(entry.group, xi);
}

// ---------------------------------------------------------------------------
// pipeline: end-to-end eigenvector constructions.

void pipeline_trial(std::mt19937_64& rng, std::uint64_t) {
    const Tolerance tol;
    std::uniform_real_distribution<double> unit(0.0, 1.0);

    {
        const std::size_t n = std::uniform_int_distribution<std::size_t>(2, 4)(rng);
        const FiniteUnitaryGroup g = families::sample_transitive_monomial(rng, n, tol);
        const auto frame = eigenspace_intersection_oracle(g);
        expect(!frame.empty(), "pipeline/monomial_frame", "family carries a common eigenvector",
               static_cast<double>(frame.size()), 1.0);
        const UnitVector& zeta =
            frame[std::uniform_int_distribution<std::size_t>(0, frame.size() - 1)(rng)].vec;
        const double delta = std::pow(10.0, -8.0 + 6.0 * unit(rng));
        const UnitVector xi = families::perturbed_vector(rng, zeta, delta);
        const double eps = defect(g, xi).weak_defect;
        const EigenvectorCertificate cert = monomial_eigenvector(g, xi);
        if (eps < reducibility_threshold(n)) {
            expect(cert.max_residual <= 1e-8, "pipeline/monomial_residual",
                   "per-element eigen residual", cert.max_residual, 1e-8);
            expect(cert.bound_holds, "pipeline/monomial_distance", "||xi - zeta|| < 1/n",
                   cert.distance_sq, cert.bound_value);
        }
    }
    {
        const FiniteUnitaryGroup g = families::sample_reducible_group(rng, tol);
        const auto frame = eigenspace_intersection_oracle(g);
        expect(!frame.empty(), "pipeline/reducible_frame", "family carries a common eigenvector",
               static_cast<double>(frame.size()), 1.0);
        const UnitVector& zeta =
            frame[std::uniform_int_distribution<std::size_t>(0, frame.size() - 1)(rng)].vec;
        const double delta = std::pow(10.0, -8.0 + 6.0 * unit(rng));
        const UnitVector xi = families::perturbed_vector(rng, zeta, delta);
        const double eps = defect(g, xi).weak_defect;
        const EigenvectorCertificate cert = truncate_eigenvector(g, xi);
        expect(cert.max_residual <= 1e-8, "pipeline/truncate_residual",
               "per-element eigen residual", cert.max_residual, 1e-8);
        if (eps < reducibility_threshold(g.dim()))
            expect(cert.bound_holds, "pipeline/truncate_distance",
                   "||xi - eta||^2 < 3600 n^11 eps", cert.distance_sq, cert.bound_value);
    }
    {
        // Hand-checkable reducible pair: {I, diag(1,-1)} with xi tilted by delta.
        const double delta = std::pow(10.0, -4.0 + 3.0 * unit(rng));
        const FiniteUnitaryGroup g = families::diagonal_group(2, {0, 1}, tol);
        UnitVector xi(std::vector<cplx>{cplx(std::sqrt(1.0 - delta * delta), 0.0),
                                        cplx(delta, 0.0)});
        const EigenvectorCertificate cert = truncate_eigenvector(g, xi);
        expect(std::abs(cert.distance_sq - delta * delta) <= 1e-12, "pipeline/hand_distance",
               "||xi - eta||^2 = delta^2", cert.distance_sq, delta * delta);
        expect(std::abs(cert.eps - 2.0 * delta * delta) <= 1e-12, "pipeline/hand_eps",
               "eps = 2 delta^2", cert.eps, 2.0 * delta * delta);
    }
    {
        // Scalar groups: the twisted average returns xi itself.
        const std::size_t n = std::uniform_int_distribution<std::size_t>(2, 6)(rng);
        std::vector<std::size_t> divisors;
        for (std::size_t m = 1; m <= n; ++m)
            if (n % m == 0) divisors.push_back(m);
        const std::size_t m =
            divisors[std::uniform_int_distribution<std::size_t>(0, divisors.size() - 1)(rng)];
        const FiniteUnitaryGroup g = families::scalar_group(n, m, tol);
        const UnitVector xi = families::random_unit_vector(rng, n);
        const EigenvectorCertificate cert = rho_eigenvector(g, xi);
        expect(cert.distance_sq <= 1e-18, "pipeline/rho_scalar", "eta = xi on scalar groups",
               cert.distance_sq, 1e-18);
    }
}

// ---------------------------------------------------------------------------
// oracle: cross-oracle agreement and irreducibility floors.

void oracle_trial(std::mt19937_64& rng, std::uint64_t trial) {
    const Tolerance tol;

    {
        const families::CorpusEntry entry = families::sample_corpus_group(rng, tol);
        const auto commutant = commutant_basis(entry.group);
        const BlockDecomposition bd = reduce_blocks(entry.group, trial);
        const auto frame = eigenspace_intersection_oracle(entry.group);

        expect((commutant.size() == 1) == (bd.block_sizes.size() == 1),
               "oracle/commutant_vs_blocks", "dim 1 iff a single block on " + entry.name,
               static_cast<double>(commutant.size()),
               static_cast<double>(bd.block_sizes.size()));
        const bool has_line =
            std::any_of(bd.block_sizes.begin(), bd.block_sizes.end(),
                        [](std::size_t s) { return s == 1; });
        expect(frame.empty() != has_line, "oracle/frame_vs_blocks",
               "common eigenvector iff a 1-dim block on " + entry.name,
               static_cast<double>(frame.size()), has_line ? 1.0 : 0.0);
        if (entry.irreducible)
            expect(commutant.size() == 1, "oracle/known_irreducible",
                   "irreducible family has scalar commutant: " + entry.name,
                   static_cast<double>(commutant.size()), 1.0);
    }
    {
        const FiniteUnitaryGroup s3 = families::symmetric_group(3, tol);
        const BlockDecomposition bd = reduce_blocks(s3, trial);
        expect(bd.block_sizes == std::vector<std::size_t>({1, 2}), "oracle/s3_blocks",
               "S3 splits into blocks [1, 2]", static_cast<double>(bd.block_sizes.size()), 2.0);
        const auto frame = eigenspace_intersection_oracle(s3);
        expect(frame.size() == 1, "oracle/s3_frame", "S3 has one common eigendirection",
               static_cast<double>(frame.size()), 1.0);
        const UnitVector uniform(std::vector<cplx>(3, cplx(1.0, 0.0)));
        expect(std::abs(inner(frame.front().vec, uniform)) >= 1.0 - 1e-8, "oracle/s3_direction",
               "S3 eigendirection is the uniform vector up to phase",
               std::abs(inner(frame.front().vec, uniform)), 1.0);
    }
    {
        // Immutable after construction; shared across trial workers.
        static const std::vector<families::CorpusEntry> corpus =
            families::irreducible_corpus(Tolerance{});
        const families::CorpusEntry& entry = corpus[trial % corpus.size()];
        const double floor = reducibility_threshold(entry.group.dim());
        double min_defect = 1.0;
        for (int i = 0; i < 20; ++i) {
            const UnitVector xi = families::random_unit_vector(rng, entry.group.dim());
            min_defect = std::min(min_defect, defect(entry.group, xi).weak_defect);
        }
        expect(min_defect > floor, "oracle/irreducible_floor",
               "weak defects stay above 1/(3600 n^11) on " + entry.name, min_defect, floor);
    }
    {
        std::uniform_real_distribution<double> unit(0.0, 1.0);
        const FiniteUnitaryGroup g = families::sample_reducible_group(rng, tol);
        const auto frame = eigenspace_intersection_oracle(g);
        const UnitVector& zeta =
            frame[std::uniform_int_distribution<std::size_t>(0, frame.size() - 1)(rng)].vec;
        const UnitVector xi =
            families::perturbed_vector(rng, zeta, std::pow(10.0, -6.0 + 4.0 * unit(rng)));
        const EigenvectorCertificate cert = truncate_eigenvector(g, xi);
        double aligned = 0.0;
        for (const auto& dir : frame) aligned += std::norm(inner(cert.eta_unit, dir.vec));
        expect(aligned >= 1.0 - 1e-8, "oracle/certificate_alignment",
               "certified vector sits in the oracle frame", aligned, 1.0);

        // Constructive reducibility implication: a pair with a defect below
        // 1/(3600 n^11) can only live in a group with nontrivial commutant.
        const UnitVector near = families::perturbed_vector(rng, zeta, 1e-7);
        if (defect(g, near).weak_defect < reducibility_threshold(g.dim()))
            expect(commutant_basis(g).size() > 1, "oracle/reducibility_implication",
                   "tiny defect forces a nontrivial commutant",
                   static_cast<double>(commutant_basis(g).size()), 1.0);
    }
}

using TrialFn = void (*)(std::mt19937_64&, std::uint64_t);

TrialFn suite_fn(const std::string& suite) {
    if (suite == "lemmas") return lemmas_trial;
    if (suite == "bounds") return bounds_trial;
    if (suite == "pipeline") return pipeline_trial;
    if (suite == "oracle") return oracle_trial;
    raise(errc::invalid_argument, "unknown suite: " + suite);
}

}  // namespace

std::vector<std::string> suite_names() { return {"lemmas", "bounds", "pipeline", "oracle"}; }

SuiteReport run_suite(const std::string& suite, std::uint64_t seed, std::uint64_t trials,
                      unsigned threads) {
    const TrialFn fn = suite_fn(suite);
    if (trials == 0) raise(errc::invalid_argument, "trials must be >= 1");
    threads = std::clamp<unsigned>(threads, 1, 64);

    const auto start = std::chrono::steady_clock::now();
    std::vector<std::optional<SuiteFailure>> slots(trials);

    auto worker = [&](unsigned shard) {
        for (std::uint64_t t = shard; t < trials; t += threads) {
            std::mt19937_64 rng = families::trial_rng(seed, t);
            try {
                fn(rng, t);
            } catch (const CheckFailure& f) {
                slots[t] = SuiteFailure{seed, t, f.check, f.description, f.measured, f.bound};
            } catch (const Error& e) {
                slots[t] = SuiteFailure{seed, t, errc_name(e.code()), e.what(), e.measured(),
                                        e.bound()};
            } catch (const std::exception& e) {
                slots[t] = SuiteFailure{seed, t, "exception", e.what(), 0.0, 0.0};
            }
        }
    };

    if (threads == 1) {
        worker(0);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(threads);
        for (unsigned w = 0; w < threads; ++w) pool.emplace_back(worker, w);
        for (std::thread& th : pool) th.join();
    }

    SuiteReport report;
    report.suite = suite;
    report.seed = seed;
    report.trials = trials;
    for (auto& slot : slots)
        if (slot) report.failures.push_back(std::move(*slot));
    report.wall_time =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return report;
}

}  // namespace unireduce
