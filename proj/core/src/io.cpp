#include "unireduce/io.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace unireduce::io {

using nlohmann::json;

namespace {

json complex_to_json(const cplx& z) { return json::array({z.real(), z.imag()}); }

cplx complex_from_json(const json& j) {
    if (!j.is_array() || j.size() != 2)
        raise(errc::parse_error, "complex numbers are [re, im] pairs");
    return {j[0].get<double>(), j[1].get<double>()};
}

json matrix_to_value(const ComplexMatrix& m) {
    json rows = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(complex_to_json(m(i, j)));
        rows.push_back(std::move(row));
    }
    return json{{"rows", std::move(rows)}};
}

ComplexMatrix matrix_from_value(const json& j) {
    if (!j.contains("rows") || !j["rows"].is_array() || j["rows"].empty())
        raise(errc::parse_error, "matrix needs a non-empty \"rows\" array");
    const json& rows = j["rows"];
    const std::size_t n_rows = rows.size();
    const std::size_t n_cols = rows[0].size();
    std::vector<cplx> entries;
    entries.reserve(n_rows * n_cols);
    for (const json& row : rows) {
        if (row.size() != n_cols) raise(errc::parse_error, "ragged matrix rows");
        for (const json& z : row) entries.push_back(complex_from_json(z));
    }
    return ComplexMatrix(n_rows, n_cols, std::move(entries));
}

json vector_to_value(std::span<const cplx> v) {
    json entries = json::array();
    for (const cplx& z : v) entries.push_back(complex_to_json(z));
    return json{{"entries", std::move(entries)}};
}

std::vector<cplx> vector_from_value(const json& j) {
    if (!j.contains("entries") || !j["entries"].is_array())
        raise(errc::parse_error, "vector needs an \"entries\" array");
    std::vector<cplx> out;
    for (const json& z : j["entries"]) out.push_back(complex_from_json(z));
    return out;
}

json tolerance_to_value(const Tolerance& tol) {
    return json{{"eq_tol", tol.eq_tol},
                {"unitarity_tol", tol.unitarity_tol},
                {"residual_tol", tol.residual_tol}};
}

Tolerance tolerance_from_value(const json& j) {
    Tolerance tol;
    if (j.contains("eq_tol")) tol.eq_tol = j["eq_tol"].get<double>();
    if (j.contains("unitarity_tol")) tol.unitarity_tol = j["unitarity_tol"].get<double>();
    if (j.contains("residual_tol")) tol.residual_tol = j["residual_tol"].get<double>();
    tol.validate();
    return tol;
}

json parse(const std::string& text) {
    json j = json::parse(text, nullptr, /*allow_exceptions=*/false);
    if (j.is_discarded()) raise(errc::parse_error, "malformed JSON");
    return j;
}

}  // namespace

std::string matrix_to_json(const ComplexMatrix& m) { return matrix_to_value(m).dump(2) + "\n"; }

ComplexMatrix matrix_from_json(const std::string& text) { return matrix_from_value(parse(text)); }

std::string vector_to_json(std::span<const cplx> v) { return vector_to_value(v).dump(2) + "\n"; }

std::vector<cplx> vector_from_json(const std::string& text) {
    return vector_from_value(parse(text));
}

std::string group_to_json(const FiniteUnitaryGroup& g) {
    json elements = json::array();
    for (const auto& u : g.elements()) elements.push_back(matrix_to_value(u.mat()));
    json generators = json::array();
    for (std::size_t gi : g.generator_indices()) generators.push_back(gi);
    json j{{"dim", g.dim()},
           {"elements", std::move(elements)},
           {"generators", std::move(generators)},
           {"tol", tolerance_to_value(g.tol())}};
    return j.dump(2) + "\n";
}

FiniteUnitaryGroup group_from_json(const std::string& text) {
    const json j = parse(text);
    if (!j.contains("elements") || !j["elements"].is_array())
        raise(errc::parse_error, "group needs an \"elements\" array");
    const Tolerance tol = j.contains("tol") ? tolerance_from_value(j["tol"]) : Tolerance{};

    std::vector<UnitaryMatrix> elements;
    for (const json& m : j["elements"])
        elements.push_back(certify_unitary(matrix_from_value(m), tol));
    std::vector<std::size_t> generator_indices;
    if (j.contains("generators"))
        for (const json& idx : j["generators"]) generator_indices.push_back(idx.get<std::size_t>());

    FiniteUnitaryGroup g =
        FiniteUnitaryGroup::from_closed_elements(std::move(elements), generator_indices, tol);
    if (j.contains("dim") && j["dim"].get<std::size_t>() != g.dim())
        raise(errc::parse_error, "declared dim does not match the elements");
    return g;
}

GeneratorFile generators_from_json(const std::string& text) {
    const json j = parse(text);
    if (!j.contains("generators") || !j["generators"].is_array() || j["generators"].empty())
        raise(errc::parse_error, "input needs a non-empty \"generators\" array");
    GeneratorFile out;
    for (const json& m : j["generators"]) out.generators.push_back(matrix_from_value(m));
    if (j.contains("tol")) out.tol = tolerance_from_value(j["tol"]);
    return out;
}

std::string defect_report_to_json(const DefectReport& report) {
    json moduli = json::array();
    for (double m : report.moduli) moduli.push_back(m);
    json j{{"weak_defect", report.weak_defect},
           {"strong_defect", report.strong_defect},
           {"argmin_element", report.argmin_element},
           {"moduli", std::move(moduli)}};
    return j.dump(2) + "\n";
}

std::string certificate_to_json(const EigenvectorCertificate& cert) {
    json characters = json::array();
    for (const cplx& chi : cert.characters) characters.push_back(complex_to_json(chi));
    json j{{"method", eigen_method_name(cert.method)},
           {"eta", vector_to_value(cert.eta)},
           {"eta_unit", vector_to_value(cert.eta_unit)},
           {"characters", std::move(characters)},
           {"max_residual", cert.max_residual},
           {"distance_sq", cert.distance_sq},
           {"bound_value", cert.bound_value},
           {"bound_holds", cert.bound_holds},
           {"eps", cert.eps}};
    return j.dump(2) + "\n";
}

std::string block_decomposition_to_json(const BlockDecomposition& bd) {
    json sizes = json::array();
    for (std::size_t s : bd.block_sizes) sizes.push_back(s);
    json j{{"seed", bd.seed},
           {"block_sizes", std::move(sizes)},
           {"basis_change", matrix_to_value(bd.basis_change)}};
    return j.dump(2) + "\n";
}

std::string suite_report_to_json(const SuiteReport& report) {
    json failures = json::array();
    for (const SuiteFailure& f : report.failures) {
        failures.push_back(json{{"seed", f.seed},
                                {"trial", f.trial},
                                {"check", f.check},
                                {"description", f.description},
                                {"measured", f.measured},
                                {"bound", f.bound}});
    }
    json j{{"suite", report.suite},
           {"seed", report.seed},
           {"trials", report.trials},
           {"failures", std::move(failures)}};
    return j.dump(2) + "\n";
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) raise(errc::parse_error, "cannot open " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) raise(errc::parse_error, "cannot write " + path);
    out << content;
}

Tolerance apply_env_overrides(Tolerance tol) {
    if (const char* text = std::getenv("UNIREDUCE_TOL")) {
        char* end = nullptr;
        const double value = std::strtod(text, &end);
        if (end == text || *end != '\0')
            raise(errc::parse_error, "UNIREDUCE_TOL is not a number");
        tol.eq_tol = value;
        tol.validate();
    }
    return tol;
}

}  // namespace unireduce::io
