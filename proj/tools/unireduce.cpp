// unireduce CLI: closes finite unitary groups from generators, measures
// approximate-fixed-point defects, constructs certified common eigenvectors,
// block-diagonalizes, and runs the randomized verification suites.
//
// Exit codes: 0 ok, 1 input error, 2 bound/verification failure,
// 3 closure cap exceeded, 4 no common eigenvector, 5 degenerate split.

#include <CLI11.hpp>

#include <cstdint>
#include <iostream>
#include <string>

#include "unireduce/decompose.hpp"
#include "unireduce/families.hpp"
#include "unireduce/fixedpoint.hpp"
#include "unireduce/group.hpp"
#include "unireduce/io.hpp"
#include "unireduce/verify.hpp"

namespace {

using namespace unireduce;

int exit_code_for(const Error& e) {
    switch (e.code()) {
        case errc::cap_exceeded: return 3;
        case errc::no_common_eigenvector: return 4;
        case errc::degenerate_split: return 5;
        case errc::parse_error:
        case errc::invalid_argument:
        case errc::dimension_mismatch:
        case errc::length_mismatch:
        case errc::not_square:
        case errc::not_unitary:
        case errc::near_singular:
        case errc::dependent_input:
        case errc::not_unit_modulus:
        case errc::out_of_range:
        case errc::not_sorted:
        case errc::precondition_violated: return 1;
        default: return 2;
    }
}

FiniteUnitaryGroup load_group(const std::string& path) {
    FiniteUnitaryGroup g = io::group_from_json(io::read_file(path));
    const Tolerance overridden = io::apply_env_overrides(g.tol());
    if (overridden.eq_tol != g.tol().eq_tol)
        g = FiniteUnitaryGroup::from_closed_elements(g.elements(), g.generator_indices(),
                                                     overridden);
    return g;
}

UnitVector load_vector(const std::string& path) {
    return UnitVector(io::vector_from_json(io::read_file(path)));
}

int cmd_closure(const std::string& in_path, const std::string& out_path, std::size_t cap) {
    const io::GeneratorFile input = io::generators_from_json(io::read_file(in_path));
    const Tolerance tol = io::apply_env_overrides(input.tol.value_or(Tolerance{}));
    std::vector<UnitaryMatrix> generators;
    generators.reserve(input.generators.size());
    for (const ComplexMatrix& m : input.generators) generators.push_back(certify_unitary(m, tol));
    const FiniteUnitaryGroup g = FiniteUnitaryGroup::close(generators, tol, cap);
    io::write_file(out_path, io::group_to_json(g));
    std::cout << "order " << g.order() << " dim " << g.dim() << "\n";
    return 0;
}

int cmd_defect(const std::string& group_path, const std::string& xi_path) {
    const FiniteUnitaryGroup g = load_group(group_path);
    const UnitVector xi = load_vector(xi_path);
    std::cout << io::defect_report_to_json(defect(g, xi));
    return 0;
}

int cmd_eigenvector(const std::string& group_path, const std::string& xi_path,
                    const std::string& method) {
    const FiniteUnitaryGroup g = load_group(group_path);
    const UnitVector xi = load_vector(xi_path);

    EigenvectorCertificate cert = [&] {
        if (method == "auto")
            return monomial_structure(g) ? monomial_eigenvector(g, xi)
                                         : truncate_eigenvector(g, xi);
        switch (eigen_method_from_name(method)) {
            case EigenMethod::average: return average_eigenvector(g, xi);
            case EigenMethod::rho: return rho_eigenvector(g, xi);
            case EigenMethod::monomial: return monomial_eigenvector(g, xi);
            case EigenMethod::truncate: return truncate_eigenvector(g, xi);
            default:
                raise(errc::invalid_argument, "method must be auto|average|rho|monomial|truncate");
        }
    }();
    std::cout << io::certificate_to_json(cert);
    return 0;
}

int cmd_decompose(const std::string& group_path, std::uint64_t seed) {
    const FiniteUnitaryGroup g = load_group(group_path);
    std::cout << io::block_decomposition_to_json(reduce_blocks(g, seed));
    return 0;
}

int cmd_verify(const std::string& suite, std::uint64_t seed, std::uint64_t trials,
               unsigned threads) {
    const SuiteReport report = run_suite(suite, seed, trials, threads);
    std::cout << io::suite_report_to_json(report);
    std::cerr << "suite " << report.suite << ": " << report.trials << " trials, "
              << report.failures.size() << " failures, " << report.wall_time << " s\n";
    return report.failures.empty() ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"finite unitary groups: approximate fixed points to certified eigenvectors"};
    app.require_subcommand(1);

    std::string in_path, out_path, group_path, xi_path;
    std::string method = "auto";
    std::string suite = "lemmas";
    std::size_t cap = 10000;
    std::uint64_t seed = 0;
    std::uint64_t trials = 100;
    unsigned threads = 1;

    CLI::App* closure = app.add_subcommand("closure", "close a group from generators");
    closure->add_option("--in", in_path, "generators JSON")->required();
    closure->add_option("--out", out_path, "output group JSON")->required();
    closure->add_option("--cap", cap, "element cap");

    CLI::App* defect_cmd = app.add_subcommand("defect", "weak/strong defect of (group, vector)");
    defect_cmd->add_option("--group", group_path, "group JSON")->required();
    defect_cmd->add_option("--xi", xi_path, "vector JSON")->required();

    CLI::App* eigen = app.add_subcommand("eigenvector", "construct a certified common eigenvector");
    eigen->add_option("--group", group_path, "group JSON")->required();
    eigen->add_option("--xi", xi_path, "vector JSON")->required();
    eigen->add_option("--method", method, "auto|average|rho|monomial|truncate");

    CLI::App* decomp = app.add_subcommand("decompose", "orthogonal block decomposition");
    decomp->add_option("--group", group_path, "group JSON")->required();
    decomp->add_option("--seed", seed, "split seed");

    CLI::App* verify = app.add_subcommand("verify", "randomized verification suites");
    verify->add_option("--suite", suite, "lemmas|bounds|pipeline|oracle")->required();
    verify->add_option("--seed", seed, "suite seed");
    verify->add_option("--trials", trials, "trial count")->required();
    verify->add_option("--threads", threads, "worker threads");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (closure->parsed()) return cmd_closure(in_path, out_path, cap);
        if (defect_cmd->parsed()) return cmd_defect(group_path, xi_path);
        if (eigen->parsed()) return cmd_eigenvector(group_path, xi_path, method);
        if (decomp->parsed()) return cmd_decompose(group_path, seed);
        if (verify->parsed()) return cmd_verify(suite, seed, trials, threads);
    } catch (const unireduce::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_code_for(e);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
