// Copyright 2026 The qastat Authors
//
//    Licensed under the Apache License, Version 2.0 (the "License");
//    you may not use this file except in compliance with the License.
//    You may obtain a copy of the License at
//
//        http://www.apache.org/licenses/LICENSE-2.0
//
//    Unless required by applicable law or agreed to in writing, software
//    distributed under the License is distributed on an "AS IS" BASIS,
//    WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
//    See the License for the specific language governing permissions and
//    limitations under the License.

#include <filesystem>
#include <fstream>
#include <sstream>

#include <catch_amalgamated.hpp>
#include <nlohmann/json.hpp>

#include "cli.hpp"
#include "oracles.hpp"
#include "qastat/qubo_io.hpp"
#include "qastat/samplers.hpp"

using namespace qastat;
using nlohmann::json;

namespace {

struct Outcome {
    int code;
    std::string out;
    std::string err;
};

Outcome run_cli(std::vector<std::string> args) {
    args.insert(args.begin(), "qastat");
    std::ostringstream out, err;
    const int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

class TempDir {
 public:
    TempDir() {
        path_ = std::filesystem::temp_directory_path() /
                ("qastat_cli_" + std::to_string(std::random_device{}()));
        std::filesystem::create_directories(path_);
    }
    ~TempDir() { std::filesystem::remove_all(path_); }

    std::string write(const std::string& name, const std::string& text) const {
        const auto file = path_ / name;
        std::ofstream(file) << text;
        return file.string();
    }
    std::string path(const std::string& name) const { return (path_ / name).string(); }

 private:
    std::filesystem::path path_;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

}  // namespace

TEST_CASE("solve writes the exact ground states", "[cli]") {
    TempDir dir;
    const auto input = dir.write("two.qubo", "0 0 -1\n1 1 -1\n0 1 3\n");
    const auto r = run_cli({"solve", "--input", input, "--no-timestamp"});
    REQUIRE(r.code == cli::kOk);
    const auto doc = json::parse(r.out);
    const auto truth = exact_solve(read_qubo_file(input));
    REQUIRE(doc["solutions"].size() == truth.records().size());
    for (std::size_t k = 0; k < truth.records().size(); ++k) {
        CHECK(doc["solutions"][k]["assignment"].get<std::vector<int>>() ==
              std::vector<int>(truth.records()[k].assignment.begin(),
                               truth.records()[k].assignment.end()));
        CHECK(doc["solutions"][k]["energy"] == truth.records()[k].energy);
    }
    CHECK(doc["info"]["config"]["sampler"]["sampler"] == "exact");
    CHECK(doc["info"]["config"]["input"] == input);
    CHECK_FALSE(doc["info"].contains("timestamp"));

    const auto stamped = json::parse(run_cli({"solve", "--input", input}).out);
    CHECK(stamped["info"].contains("timestamp"));
}

TEST_CASE("solve reports parse errors with the line", "[cli]") {
    TempDir dir;
    const auto input = dir.write("dup.qubo", "0 0 1\n0 1 2\n0 0 3\n");
    const auto r = run_cli({"solve", "--input", input});
    CHECK(r.code == cli::kParseFailure);
    CHECK(r.err.find("line 3") != std::string::npos);
}

TEST_CASE("solve refuses oversized exact problems", "[cli]") {
    TempDir dir;
    const auto input = dir.write("big.qubo", "0 30 1\n");
    CHECK(run_cli({"solve", "--input", input}).code == cli::kCapacityFailure);
}

TEST_CASE("boltzmann solve follows the Boltzmann law", "[cli]") {
    TempDir dir;
    // Ising h = (0.25, -0.25), J = -0.25 after conversion
    const auto input = dir.write("two.qubo", "0 0 1\n1 1 -0.0\n0 1 -1\n");
    const auto r = run_cli({"solve", "--input", input, "--sampler", "boltzmann", "--reads",
                            "40000", "--noise-sigma-a", "0", "--noise-sigma-b", "0", "--tau", "1",
                            "--seed", "8", "--no-timestamp"});
    REQUIRE(r.code == cli::kOk);
    const auto doc = json::parse(r.out);
    const auto model = read_qubo_file(input);
    std::vector<double> counts(4, 0.0), energies;
    for (const auto& s : doc["solutions"]) {
        const auto a = s["assignment"].get<std::vector<int>>();
        counts[static_cast<std::size_t>(a[0] + 2 * a[1])] += s["occurrences"].get<double>();
    }
    for (std::uint64_t mask = 0; mask < 4; ++mask) {
        energies.push_back(model.energy(testing::bits_of(mask, 2)));
    }
    // coefficients are within range, so no rescaling
    const auto p = testing::boltzmann_probabilities(energies, 1.0);
    CHECK(testing::chi_square_p_value(counts, p, 40000.0) > 0.01);
    CHECK(doc["info"]["config"]["sampler"]["noise"]["sigma_a"] == 0.0);
}

TEST_CASE("solve through an embedding", "[cli]") {
    TempDir dir;
    const auto input = dir.write("tri.qubo", "0 0 -1\n1 1 -1\n2 2 -1\n0 1 2\n1 2 2\n0 2 2\n");
    const auto r = run_cli({"solve", "--input", input, "--topology", "chimera:1,1,4",
                            "--chain-strength", "-3", "--no-timestamp"});
    REQUIRE(r.code == cli::kOk);
    const auto doc = json::parse(r.out);
    CHECK(doc["info"]["embedding"]["qubits"] == 4);
    CHECK(doc["info"]["config"]["embedding"]["chain_strength"] == -3.0);
    CHECK(doc["solutions"][0]["energy"] == -1.0);
}

TEST_CASE("embed subcommand", "[cli]") {
    SECTION("triangle on a cell") {
        const auto r = run_cli({"embed", "--complete", "3", "--topology", "chimera:1,1,4",
                                "--no-timestamp"});
        REQUIRE(r.code == cli::kOk);
        const auto doc = json::parse(r.out);
        CHECK(doc["metrics"]["qubits"] == 4);
        CHECK(doc["metrics"]["max_chain_length"] == 2);
        CHECK(doc["chains"].size() == 3);
    }
    SECTION("native path") {
        TempDir dir;
        const auto input = dir.write("path.qubo", "0 1 1\n1 2 1\n2 3 1\n");
        const auto doc = json::parse(
                run_cli({"embed", "--input", input, "--topology", "chimera:2,2,4"}).out);
        CHECK(doc["metrics"]["max_chain_length"] == 1);
    }
    SECTION("K_16 budget") {
        const auto doc = json::parse(
                run_cli({"embed", "--complete", "16", "--topology", "chimera:8,8,4"}).out);
        CHECK(doc["metrics"]["qubits"].get<int>() <= 160);
    }
    SECTION("does not fit") {
        const auto r = run_cli({"embed", "--complete", "9", "--topology", "chimera:1,1,4"});
        CHECK(r.code == cli::kEmbeddingFailure);
    }
    SECTION("needs exactly one graph source") {
        CHECK(run_cli({"embed", "--topology", "chimera:1,1,4"}).code == cli::kFailure);
    }
}

TEST_CASE("mle subcommand writes the iteration trace", "[cli]") {
    TempDir dir;
    const auto data = dir.write(
            "x.csv", "x\n-2.296\n-0.216\n-0.082\n0.231\n1.127\n1.164\n1.189\n1.236\n1.272\n1.373\n");
    const auto out = dir.path("trace.csv");
    const auto r = run_cli({"mle", "--data", data, "--iters", "4", "--out", out, "--no-timestamp"});
    REQUIRE(r.code == cli::kOk);
    std::istringstream csv(read_file(out));
    std::vector<std::string> rows;
    for (std::string line; std::getline(csv, line);) {
        if (!line.empty() && line[0] != '#') rows.push_back(line);
    }
    REQUIRE(rows.size() == 5);
    CHECK(rows[0] == "iteration,theta,phi,energy,loglik");
    CHECK(rows[3].rfind("3,0.5,1.09375,", 0) == 0);
    CHECK(read_file(out).find("# config: ") == 0);
}

TEST_CASE("design subcommand", "[cli]") {
    const auto r = run_cli({"design", "--size", "4", "--sampler", "exact", "--no-timestamp"});
    REQUIRE(r.code == cli::kOk);
    CHECK(r.out.find("valid=true") != std::string::npos);
    CHECK(r.out.find("energy=-8") != std::string::npos);
    CHECK(r.out.find("row,col\n") != std::string::npos);
    std::size_t points = 0;
    std::istringstream lines(r.out.substr(r.out.find("row,col\n") + 8));
    for (std::string line; std::getline(lines, line);) points += line.empty() ? 0 : 1;
    CHECK(points == 4);
}

TEST_CASE("matinv subcommand", "[cli]") {
    TempDir dir;
    const auto input =
            dir.write("a.csv", "1.344,0.418,-0.935\n-1.018,1.095,-0.250\n0.277,-0.384,0.755\n");
    const auto json_path = dir.path("result.json");
    const auto r = run_cli({"matinv", "--input", input, "--bits", "6", "--power-high", "0",
                            "--json", json_path, "--no-timestamp"});
    REQUIRE(r.code == cli::kOk);
    const auto doc = json::parse(read_file(json_path));
    CHECK(doc["residual"].get<double>() < 0.19);
    CHECK(doc["v_hat"][0][0] == 0.625);
    CHECK(doc["info"]["config"]["bits"] == 6);
    CHECK(r.out.rfind("0.625,", 0) == 0);

    const auto ragged = dir.write("bad.csv", "1,2\n3\n");
    CHECK(run_cli({"matinv", "--input", ragged}).code == cli::kParseFailure);
    CHECK(run_cli({"matinv", "--input", input, "--bits", "9"}).code == cli::kCapacityFailure);
}

TEST_CASE("argument errors and help", "[cli]") {
    CHECK(run_cli({}).code == cli::kParseFailure);
    CHECK(run_cli({"solve"}).code == cli::kParseFailure);
    CHECK(run_cli({"solve", "--input", "x", "--sampler", "qpu"}).code == cli::kParseFailure);
    CHECK(run_cli({"solve", "--input", "x", "--reads", "many"}).code == cli::kParseFailure);
    const auto help = run_cli({"--help"});
    CHECK(help.code == cli::kOk);
    CHECK(help.out.find("matinv") != std::string::npos);
    CHECK(run_cli({"solve", "--input", "x", "--sampler", "sa", "--reads", "0"}).code ==
          cli::kFailure);
}
