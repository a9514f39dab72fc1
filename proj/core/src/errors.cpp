#include "unireduce/errors.hpp"

namespace unireduce {

const char* errc_name(errc code) {
    switch (code) {
        case errc::not_square: return "NotSquare";
        case errc::not_unitary: return "NotUnitary";
        case errc::near_singular: return "NearSingular";
        case errc::dependent_input: return "DependentInput";
        case errc::not_unit_modulus: return "NotUnitModulus";
        case errc::out_of_range: return "OutOfRange";
        case errc::hypothesis_violated: return "HypothesisViolated";
        case errc::eps_too_large: return "EpsTooLarge";
        case errc::product_not_one: return "ProductNotOne";
        case errc::sum_too_small: return "SumTooSmall";
        case errc::length_mismatch: return "LengthMismatch";
        case errc::not_sorted: return "NotSorted";
        case errc::precondition_violated: return "PreconditionViolated";
        case errc::cap_exceeded: return "CapExceeded";
        case errc::dimension_mismatch: return "DimensionMismatch";
        case errc::no_witness: return "NoWitness";
        case errc::vanishing_inner_product: return "VanishingInnerProduct";
        case errc::zero_average: return "ZeroAverage";
        case errc::homomorphism_failure: return "HomomorphismFailure";
        case errc::degenerate_split: return "DegenerateSplit";
        case errc::spread_violation: return "SpreadViolation";
        case errc::no_common_eigenvector: return "NoCommonEigenvector";
        case errc::all_components_below_eps: return "AllComponentsBelowEps";
        case errc::all_components_zero: return "AllComponentsZero";
        case errc::bound_violation: return "BoundViolation";
        case errc::invalid_argument: return "InvalidArgument";
        case errc::parse_error: return "ParseError";
    }
    return "UnknownError";
}

}  // namespace unireduce
