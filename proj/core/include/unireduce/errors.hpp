#pragma once

#include <stdexcept>
#include <string>

namespace unireduce {

/// Failure kinds surfaced by the library. Each maps onto a documented CLI
/// exit code (see tools/unireduce.cpp).
enum class errc {
    not_square,
    not_unitary,
    near_singular,
    dependent_input,
    not_unit_modulus,
    out_of_range,
    hypothesis_violated,
    eps_too_large,
    product_not_one,
    sum_too_small,
    length_mismatch,
    not_sorted,
    precondition_violated,
    cap_exceeded,
    dimension_mismatch,
    no_witness,
    vanishing_inner_product,
    zero_average,
    homomorphism_failure,
    degenerate_split,
    spread_violation,
    no_common_eigenvector,
    all_components_below_eps,
    all_components_zero,
    bound_violation,
    invalid_argument,
    parse_error,
};

const char* errc_name(errc code);

/// Library exception. `measured` and `bound` carry the two sides of a failed
/// inequality when there is one (0/0 otherwise).
class Error : public std::runtime_error {
public:
    Error(errc code, const std::string& what, double measured = 0.0, double bound = 0.0)
        : std::runtime_error(std::string(errc_name(code)) + ": " + what),
          code_(code),
          measured_(measured),
          bound_(bound) {}

    errc code() const noexcept { return code_; }
    double measured() const noexcept { return measured_; }
    double bound() const noexcept { return bound_; }

private:
    errc code_;
    double measured_;
    double bound_;
};

[[noreturn]] inline void raise(errc code, const std::string& what, double measured = 0.0,
                               double bound = 0.0) {
    throw Error(code, what, measured, bound);
}

}  // namespace unireduce
