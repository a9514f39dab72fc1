#include "unireduce/certificate.hpp"

namespace unireduce {

const char* eigen_method_name(EigenMethod m) {
    switch (m) {
        case EigenMethod::average: return "average";
        case EigenMethod::rho: return "rho";
        case EigenMethod::monomial: return "monomial";
        case EigenMethod::truncate: return "truncate";
        case EigenMethod::oracle: return "oracle";
    }
    return "unknown";
}

EigenMethod eigen_method_from_name(const std::string& name) {
    if (name == "average") return EigenMethod::average;
    if (name == "rho") return EigenMethod::rho;
    if (name == "monomial") return EigenMethod::monomial;
    if (name == "truncate") return EigenMethod::truncate;
    if (name == "oracle") return EigenMethod::oracle;
    raise(errc::parse_error, "unknown eigenvector method: " + name);
}

}  // namespace unireduce
