#pragma once

#include <string>
#include <vector>

#include "unireduce/numerics.hpp"

namespace unireduce {

enum class EigenMethod { average, rho, monomial, truncate, oracle };

const char* eigen_method_name(EigenMethod m);
EigenMethod eigen_method_from_name(const std::string& name);

/// A constructed common eigenvector with the measured quantities the
/// underlying distance theorem talks about.
///   eta          the constructed vector, possibly unnormalized
///   eta_unit     eta normalized
///   characters   per-generator eigenvalues of eta_unit
///   max_residual max over group elements of ||G eta_unit - chi_G eta_unit||
///   distance_sq  ||xi - eta||^2 against the input vector
///   bound_value  the distance^2 bound claimed by the method's theorem
///                (truncate: 3600 n^11 eps; monomial: 1/n^2; rho: 32 eps;
///                 average: strong_defect^2)
///   bound_holds  distance_sq < bound_value as measured
///   eps          measured weak defect of the input pair
struct EigenvectorCertificate {
    EigenMethod method;
    std::vector<cplx> eta;
    UnitVector eta_unit;
    std::vector<cplx> characters;
    double max_residual = 0.0;
    double distance_sq = 0.0;
    double bound_value = 0.0;
    bool bound_holds = false;
    double eps = 0.0;
};

}  // namespace unireduce
