#pragma once

#include <optional>
#include <string>

#include "unireduce/certificate.hpp"
#include "unireduce/decompose.hpp"
#include "unireduce/fixedpoint.hpp"
#include "unireduce/group.hpp"
#include "unireduce/numerics.hpp"
#include "unireduce/verify.hpp"

// JSON (de)serialization for every file format and report the CLI speaks.
// Complex numbers are [re, im] pairs; floats use the shortest decimal that
// round-trips, so equal values serialize to equal bytes.
//
// Schemas:
//   matrix  {"rows": [[[re,im], ...], ...]}              row-major
//   vector  {"entries": [[re,im], ...]}
//   group   {"dim": n, "elements": [matrix...],
//            "generators": [indices...], "tol": {...}}
//   generators input {"generators": [matrix...], "tol"?: {...}}

namespace unireduce::io {

std::string matrix_to_json(const ComplexMatrix& m);
ComplexMatrix matrix_from_json(const std::string& text);

std::string vector_to_json(std::span<const cplx> v);
std::vector<cplx> vector_from_json(const std::string& text);

std::string group_to_json(const FiniteUnitaryGroup& g);
FiniteUnitaryGroup group_from_json(const std::string& text);

struct GeneratorFile {
    std::vector<ComplexMatrix> generators;
    std::optional<Tolerance> tol;
};
GeneratorFile generators_from_json(const std::string& text);

std::string defect_report_to_json(const DefectReport& report);
std::string certificate_to_json(const EigenvectorCertificate& cert);
std::string block_decomposition_to_json(const BlockDecomposition& bd);

/// Byte-stable (no wall time, no thread count); see verify.hpp.
std::string suite_report_to_json(const SuiteReport& report);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

/// Applies the UNIREDUCE_TOL environment override to eq_tol, if set.
Tolerance apply_env_overrides(Tolerance tol);

}  // namespace unireduce::io
