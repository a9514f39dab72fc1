#pragma once

#include <cstddef>
#include <span>
#include <tuple>
#include <vector>

#include "unireduce/numerics.hpp"

namespace unireduce {

/// e^{2 pi i k / n}. Adjacent roots are at chord distance
/// d_n = |e^{2 pi i / n} - 1| >= 4/n for n >= 2.
struct RootOfUnity {
    std::size_t order;  // n >= 1
    std::size_t index;  // 0 <= k < n

    cplx value() const;
    static double adjacent_distance(std::size_t order);
};

/// Result of quantizing one unit scalar (or a tuple of them) to a root of
/// unity: input = alpha.value() * e^{i residual_phase} for the scalar case.
struct PhaseApproximation {
    RootOfUnity alpha;
    double residual_phase;  // in (-pi/n, pi/n]
    double l1_distance;
    double l2_distance;
};

/// Principal argument in (-pi, pi].
double principal_arg(cplx z);

/// Unique alpha in Omega_n with z = alpha e^{i phi}, phi in (-pi/n, pi/n];
/// a tie at phi = pi/n belongs to the root below.
/// Errors: not_unit_modulus unless ||z|-1| <= 1e-8.
PhaseApproximation nearest_root(cplx z, std::size_t order);

/// Returns ((2/pi)|phi|, |e^{i phi} - 1|, |phi|), lower <= chord <= upper.
/// Errors: out_of_range when |phi| > pi; bound_violation if the ordering
/// fails (it cannot, short of an implementation bug).
std::tuple<double, double, double> arc_chord_bounds(double phi);

/// Given phases phi_j in [-pi,pi] with |1 + sum e^{i phi_j}| >= (k+1)(1-eps),
/// returns pi sqrt(k)(k+1) sqrt(eps/2) and certifies sum |phi_j| stays below
/// it, along with the intermediate (4/pi^2) sum phi_j^2 <= (k+1)^2 2 eps.
/// Errors: hypothesis_violated; out_of_range; invalid_argument on empty input.
double phase_sum_bound(std::span<const double> phis, double eps);

/// Quantizes a tuple of unit scalars with product 1 and |sum| >= n(1-eps),
/// eps < 2/n^3, to the root alpha = nearest_root(g_1, n), certifying
/// ||g - alpha 1||_1 < pi n sqrt(2 n eps) and ||g - alpha 1||_2 < pi n sqrt(2 eps).
/// Errors: eps_too_large; product_not_one; sum_too_small; not_unit_modulus.
PhaseApproximation approx_scalar(std::span<const cplx> g, double eps);

/// For descending nonnegative tuples, sum x_i y_{pi(i)} <= sum x_i y_i.
/// Returns (permuted, sorted). Errors: length_mismatch; not_sorted.
std::pair<double, double> rearrangement_bound(std::span<const double> x,
                                              std::span<const double> y,
                                              std::span<const std::size_t> pi);

/// |x + e^{i alpha} y| <= x for x > y > 0 and alpha in [2pi/3, 4pi/3].
/// Returns the modulus. Errors: precondition_violated.
double obtuse_shrink(double x, double y, double alpha);

}  // namespace unireduce
