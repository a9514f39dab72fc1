#include <doctest.h>

#include <json.hpp>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

#include "unireduce/families.hpp"
#include "unireduce/io.hpp"

using namespace unireduce;

namespace {
const Tolerance kTol;

std::filesystem::path temp_dir() {
    auto dir = std::filesystem::temp_directory_path() / "unireduce_test";
    std::filesystem::create_directories(dir);
    return dir;
}

#ifdef UNIREDUCE_CLI_PATH
int run_cli(const std::string& args, const std::filesystem::path& stdout_path) {
    const std::string command =
        std::string(UNIREDUCE_CLI_PATH) + " " + args + " > " + stdout_path.string() + " 2>/dev/null";
    const int status = std::system(command.c_str());
    return WEXITSTATUS(status);
}
#endif

}  // namespace

TEST_CASE("matrix and vector JSON round-trips are byte stable") {
    std::mt19937_64 mat_rng(1);
    const UnitaryMatrix u = families::random_unitary(mat_rng, 3);
    const std::string once = io::matrix_to_json(u.mat());
    const std::string twice = io::matrix_to_json(io::matrix_from_json(once));
    CHECK(once == twice);

    std::mt19937_64 rng(2);
    const UnitVector v = families::random_unit_vector(rng, 5);
    const std::string vonce = io::vector_to_json(v);
    CHECK(vonce == io::vector_to_json(UnitVector(io::vector_from_json(vonce))));
}

TEST_CASE("group JSON round-trips preserve elements, generators and tolerance") {
    const FiniteUnitaryGroup g = families::symmetric_group(3, kTol);
    const std::string text = io::group_to_json(g);
    const FiniteUnitaryGroup parsed = io::group_from_json(text);
    CHECK(parsed.order() == g.order());
    CHECK(parsed.dim() == g.dim());
    CHECK(parsed.generator_indices() == g.generator_indices());
    CHECK(io::group_to_json(parsed) == text);
}

TEST_CASE("re-closing a serialized closure reproduces identical bytes") {
    // Exact-arithmetic generators (signed permutations) keep every product
    // bit-stable, so closure -> serialize -> parse -> re-close is a fixed
    // point at the byte level.
    const FiniteUnitaryGroup first = families::pauli_group(kTol);
    const std::string bytes = io::group_to_json(first);

    const FiniteUnitaryGroup parsed = io::group_from_json(bytes);
    std::vector<UnitaryMatrix> generators;
    for (std::size_t gi : parsed.generator_indices()) generators.push_back(parsed.element(gi));
    const FiniteUnitaryGroup second = FiniteUnitaryGroup::close(generators, parsed.tol());
    CHECK(io::group_to_json(second) == bytes);
}

TEST_CASE("malformed inputs raise parse errors") {
    CHECK_THROWS_AS(io::matrix_from_json("{}"), Error);
    CHECK_THROWS_AS(io::vector_from_json("not json"), Error);
    CHECK_THROWS_AS(io::generators_from_json(R"({"generators": []})"), Error);
}

TEST_CASE("report serializers expose the documented keys") {
    const FiniteUnitaryGroup pair = families::diagonal_group(2, {0, 1}, kTol);
    UnitVector xi(std::vector<cplx>{std::sqrt(0.9), std::sqrt(0.1)});

    const auto parsed_defect = nlohmann::json::parse(io::defect_report_to_json(defect(pair, xi)));
    for (const char* key : {"weak_defect", "strong_defect", "argmin_element", "moduli"})
        CHECK(parsed_defect.contains(key));

    const auto parsed_cert =
        nlohmann::json::parse(io::certificate_to_json(truncate_eigenvector(pair, xi)));
    for (const char* key : {"method", "eta", "eta_unit", "characters", "max_residual",
                            "distance_sq", "bound_value", "bound_holds", "eps"})
        CHECK(parsed_cert.contains(key));
    CHECK(parsed_cert["method"] == "truncate");

    const auto parsed_blocks = nlohmann::json::parse(
        io::block_decomposition_to_json(reduce_blocks(pair, 7)));
    for (const char* key : {"seed", "block_sizes", "basis_change"})
        CHECK(parsed_blocks.contains(key));
}

TEST_CASE("environment override rewrites eq_tol") {
    setenv("UNIREDUCE_TOL", "1e-6", 1);
    const Tolerance overridden = io::apply_env_overrides(Tolerance{});
    CHECK(overridden.eq_tol == doctest::Approx(1e-6));
    CHECK(overridden.unitarity_tol == doctest::Approx(1e-10));

    setenv("UNIREDUCE_TOL", "banana", 1);
    CHECK_THROWS_AS(io::apply_env_overrides(Tolerance{}), Error);
    unsetenv("UNIREDUCE_TOL");
}

#ifdef UNIREDUCE_CLI_PATH

TEST_CASE("cli closure/defect/eigenvector/decompose contract") {
    const auto dir = temp_dir();
    const auto gens_path = dir / "s3_gens.json";
    const auto group_path = dir / "s3_group.json";
    const auto xi_path = dir / "xi.json";
    const auto out_path = dir / "out.json";

    // Generators file for S3.
    {
        nlohmann::json gens = nlohmann::json::array();
        gens.push_back(nlohmann::json::parse(
            io::matrix_to_json(families::permutation_matrix({1, 2, 0}, kTol).mat())));
        gens.push_back(nlohmann::json::parse(
            io::matrix_to_json(families::permutation_matrix({1, 0, 2}, kTol).mat())));
        std::ofstream(gens_path) << nlohmann::json{{"generators", gens}}.dump(2);
    }
    CHECK(run_cli("closure --in " + gens_path.string() + " --out " + group_path.string(),
                  out_path) == 0);
    {
        std::ifstream in(out_path);
        std::string line;
        std::getline(in, line);
        CHECK(line == "order 6 dim 3");
    }

    // Defect of the uniform vector: weak defect 0.
    io::write_file(xi_path.string(),
                   io::vector_to_json(UnitVector(std::vector<cplx>(3, cplx(1.0, 0.0)))));
    CHECK(run_cli("defect --group " + group_path.string() + " --xi " + xi_path.string(),
                  out_path) == 0);
    {
        const auto report = nlohmann::json::parse(std::ifstream(out_path));
        CHECK(report["weak_defect"].get<double>() <= 1e-12);
    }

    // Eigenvector in auto mode dispatches the monomial pipeline.
    CHECK(run_cli("eigenvector --group " + group_path.string() + " --xi " + xi_path.string(),
                  out_path) == 0);
    {
        const auto cert = nlohmann::json::parse(std::ifstream(out_path));
        CHECK(cert["method"] == "monomial");
        CHECK(cert["distance_sq"].get<double>() <= 1e-15);
    }

    CHECK(run_cli("decompose --group " + group_path.string() + " --seed 3", out_path) == 0);
    {
        const auto blocks = nlohmann::json::parse(std::ifstream(out_path));
        CHECK(blocks["block_sizes"] == nlohmann::json::array({1, 2}));
    }
}

TEST_CASE("cli exit codes for failure modes") {
    const auto dir = temp_dir();
    const auto out_path = dir / "cli_out.json";

    // Malformed input: exit 1.
    const auto bad_path = dir / "bad.json";
    io::write_file(bad_path.string(), "{\"nonsense\": true}");
    CHECK(run_cli("closure --in " + bad_path.string() + " --out " + (dir / "x.json").string(),
                  out_path) == 1);

    // Infinite group exceeds the cap: exit 3.
    {
        const double c = std::cos(1.0), s = std::sin(1.0);
        nlohmann::json gens = nlohmann::json::array();
        gens.push_back(nlohmann::json::parse(
            io::matrix_to_json(ComplexMatrix(2, 2, {c, -s, s, c}))));
        const auto rot_path = dir / "rotation.json";
        std::ofstream(rot_path) << nlohmann::json{{"generators", gens}}.dump(2);
        CHECK(run_cli("closure --in " + rot_path.string() + " --out " +
                          (dir / "y.json").string() + " --cap 64",
                      out_path) == 3);
    }

    // No common eigenvector on the Pauli closure: exit 4.
    {
        const auto pauli_path = dir / "pauli.json";
        io::write_file(pauli_path.string(), io::group_to_json(families::pauli_group(kTol)));
        const auto xi_path = dir / "xi2.json";
        std::mt19937_64 rng(3);
        io::write_file(xi_path.string(),
                       io::vector_to_json(families::random_unit_vector(rng, 2)));
        CHECK(run_cli("eigenvector --group " + pauli_path.string() + " --xi " +
                          xi_path.string() + " --method truncate",
                      out_path) == 4);
    }

    // {I, -I} annihilates the average: exit 2 (hypothesis chain broken).
    {
        const auto signs_path = dir / "signs.json";
        io::write_file(signs_path.string(),
                       io::group_to_json(families::scalar_group(2, 2, kTol)));
        const auto xi_path = dir / "xi3.json";
        std::mt19937_64 rng(4);
        io::write_file(xi_path.string(),
                       io::vector_to_json(families::random_unit_vector(rng, 2)));
        CHECK(run_cli("eigenvector --group " + signs_path.string() + " --xi " +
                          xi_path.string() + " --method average",
                      out_path) == 2);
    }
}

TEST_CASE("cli verify is deterministic across thread counts") {
    const auto dir = temp_dir();
    const auto a = dir / "verify_a.json";
    const auto b = dir / "verify_b.json";
    CHECK(run_cli("verify --suite lemmas --seed 42 --trials 60 --threads 1", a) == 0);
    CHECK(run_cli("verify --suite lemmas --seed 42 --trials 60 --threads 4", b) == 0);
    CHECK(io::read_file(a.string()) == io::read_file(b.string()));
}

#endif  // UNIREDUCE_CLI_PATH
