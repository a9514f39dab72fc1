#include "unireduce/phase.hpp"

#include <cmath>
#include <numbers>

namespace unireduce {

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kSlack = 1e-12;
}  // namespace

cplx RootOfUnity::value() const {
    const double angle = 2.0 * kPi * static_cast<double>(index) / static_cast<double>(order);
    return {std::cos(angle), std::sin(angle)};
}

double RootOfUnity::adjacent_distance(std::size_t order) {
    return 2.0 * std::sin(kPi / static_cast<double>(order));
}

double principal_arg(cplx z) {
    double a = std::atan2(z.imag(), z.real());
    if (a <= -kPi) a = kPi;  // fold the branch cut onto +pi
    return a;
}

PhaseApproximation nearest_root(cplx z, std::size_t order) {
    if (order == 0) raise(errc::invalid_argument, "root order must be positive");
    const double modulus_err = std::abs(std::abs(z) - 1.0);
    if (modulus_err > 1e-8)
        raise(errc::not_unit_modulus, "input is not unit modulus", std::abs(z), 1.0);

    const double n = static_cast<double>(order);
    const double theta = principal_arg(z);
    // k = ceil(t - 1/2) puts phi in (-pi/n, pi/n] with the boundary tie
    // going to the root below.
    const double t = theta * n / (2.0 * kPi);
    long k = static_cast<long>(std::ceil(t - 0.5));
    double phi = theta - 2.0 * kPi * static_cast<double>(k) / n;
    if (phi > kPi / n) {
        ++k;
        phi = theta - 2.0 * kPi * static_cast<double>(k) / n;
    } else if (phi <= -kPi / n) {
        --k;
        phi = theta - 2.0 * kPi * static_cast<double>(k) / n;
    }
    const long order_l = static_cast<long>(order);
    const std::size_t index = static_cast<std::size_t>(((k % order_l) + order_l) % order_l);

    RootOfUnity alpha{order, index};
    const double dist = std::abs(z - alpha.value());
    return PhaseApproximation{alpha, phi, dist, dist};
}

std::tuple<double, double, double> arc_chord_bounds(double phi) {
    if (!(std::abs(phi) <= kPi + 1e-15))
        raise(errc::out_of_range, "phase outside [-pi, pi]", std::abs(phi), kPi);
    const double lower = (2.0 / kPi) * std::abs(phi);
    const double chord = 2.0 * std::abs(std::sin(phi / 2.0));
    const double upper = std::abs(phi);
    if (lower > chord + 1e-14 || chord > upper + 1e-14)
        raise(errc::bound_violation, "arc-chord ordering failed", chord, upper);
    return {lower, chord, upper};
}

double phase_sum_bound(std::span<const double> phis, double eps) {
    if (phis.empty()) raise(errc::invalid_argument, "need at least one phase");
    if (!(eps > 0.0) || !(eps < 1.0))
        raise(errc::invalid_argument, "eps must lie in (0, 1)", eps);
    const std::size_t k = phis.size();

    cplx sum = 1.0;
    double abs_sum = 0.0;
    double sq_sum = 0.0;
    for (double phi : phis) {
        if (!(std::abs(phi) <= kPi + 1e-15))
            raise(errc::out_of_range, "phase outside [-pi, pi]", std::abs(phi), kPi);
        sum += cplx{std::cos(phi), std::sin(phi)};
        abs_sum += std::abs(phi);
        sq_sum += phi * phi;
    }

    const double hypothesis = static_cast<double>(k + 1) * (1.0 - eps);
    if (std::abs(sum) < hypothesis - kSlack)
        raise(errc::hypothesis_violated, "|1 + sum e^{i phi}| below (k+1)(1-eps)",
              std::abs(sum), hypothesis);

    const double kd = static_cast<double>(k);
    const double bound = kPi * std::sqrt(kd) * (kd + 1.0) * std::sqrt(eps / 2.0);
    const double intermediate_bound = (kd + 1.0) * (kd + 1.0) * 2.0 * eps;
    if ((4.0 / (kPi * kPi)) * sq_sum > intermediate_bound + kSlack)
        raise(errc::bound_violation, "quadratic phase estimate failed",
              (4.0 / (kPi * kPi)) * sq_sum, intermediate_bound);
    if (!(abs_sum < bound + kSlack))
        raise(errc::bound_violation, "phase sum bound failed", abs_sum, bound);
    return bound;
}

PhaseApproximation approx_scalar(std::span<const cplx> g, double eps) {
    const std::size_t n = g.size();
    if (n == 0) raise(errc::invalid_argument, "empty tuple");
    const double nd = static_cast<double>(n);
    if (!(eps > 0.0)) raise(errc::invalid_argument, "eps must be positive", eps);
    if (!(eps < 2.0 / (nd * nd * nd)))
        raise(errc::eps_too_large, "eps at or above 2/n^3", eps, 2.0 / (nd * nd * nd));

    cplx product = 1.0;
    cplx sum = 0.0;
    for (const cplx& z : g) {
        if (std::abs(std::abs(z) - 1.0) > 1e-8)
            raise(errc::not_unit_modulus, "tuple entry is not unit modulus", std::abs(z), 1.0);
        product *= z;
        sum += z;
    }
    if (std::abs(product - 1.0) > 1e-8)
        raise(errc::product_not_one, "tuple product is not 1", std::abs(product - 1.0), 1e-8);
    if (std::abs(sum) < nd * (1.0 - eps) - kSlack)
        raise(errc::sum_too_small, "|sum| below n(1-eps)", std::abs(sum), nd * (1.0 - eps));

    PhaseApproximation anchor = nearest_root(g[0], n);
    const cplx alpha = anchor.alpha.value();
    double l1 = 0.0;
    double l2_sq = 0.0;
    for (const cplx& z : g) {
        const double d = std::abs(z - alpha);
        l1 += d;
        l2_sq += d * d;
    }
    const double l2 = std::sqrt(l2_sq);

    const double l1_bound = kPi * nd * std::sqrt(2.0 * nd * eps);
    const double l2_bound = kPi * nd * std::sqrt(2.0 * eps);
    if (!(l1 < l1_bound + kSlack))
        raise(errc::bound_violation, "1-norm quantization bound failed", l1, l1_bound);
    if (!(l2 < l2_bound + kSlack))
        raise(errc::bound_violation, "2-norm quantization bound failed", l2, l2_bound);

    anchor.l1_distance = l1;
    anchor.l2_distance = l2;
    return anchor;
}

std::pair<double, double> rearrangement_bound(std::span<const double> x,
                                              std::span<const double> y,
                                              std::span<const std::size_t> pi) {
    const std::size_t n = x.size();
    if (y.size() != n || pi.size() != n)
        raise(errc::length_mismatch, "tuples and permutation must share a length");
    std::vector<bool> seen(n, false);
    for (std::size_t i : pi) {
        if (i >= n || seen[i]) raise(errc::invalid_argument, "not a permutation");
        seen[i] = true;
    }
    for (std::size_t i = 0; i < n; ++i) {
        if (x[i] < 0.0 || y[i] < 0.0) raise(errc::not_sorted, "entries must be nonnegative");
        if (i + 1 < n && (x[i] < x[i + 1] - 1e-15 || y[i] < y[i + 1] - 1e-15))
            raise(errc::not_sorted, "tuples must be sorted descending");
    }
    double permuted = 0.0;
    double sorted = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        permuted += x[i] * y[pi[i]];
        sorted += x[i] * y[i];
    }
    if (permuted > sorted + kSlack)
        raise(errc::bound_violation, "rearrangement inequality failed", permuted, sorted);
    return {permuted, sorted};
}

double obtuse_shrink(double x, double y, double alpha) {
    if (!(x > y && y > 0.0))
        raise(errc::precondition_violated, "need x > y > 0", y, x);
    if (!(alpha >= 2.0 * kPi / 3.0 - 1e-12 && alpha <= 4.0 * kPi / 3.0 + 1e-12))
        raise(errc::precondition_violated, "angle outside [2pi/3, 4pi/3]", alpha, 0.0);
    const double value = std::abs(x + cplx{std::cos(alpha), std::sin(alpha)} * y);
    if (value > x + kSlack)
        raise(errc::bound_violation, "obtuse shrink bound failed", value, x);
    return value;
}

}  // namespace unireduce
