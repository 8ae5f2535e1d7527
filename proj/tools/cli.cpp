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

#include "cli.hpp"

#include <charconv>
#include <chrono>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <optional>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "qastat/chimera.hpp"
#include "qastat/design.hpp"
#include "qastat/embedding.hpp"
#include "qastat/matinv.hpp"
#include "qastat/mle.hpp"
#include "qastat/qubo_io.hpp"
#include "qastat/samplers.hpp"

namespace qastat::cli {
namespace {

using nlohmann::json;

std::string format_double(double value) {
    char buffer[64];
    auto [ptr, ec] = std::to_chars(buffer, buffer + sizeof(buffer), value);
    return ec == std::errc() ? std::string(buffer, ptr) : std::string("nan");
}

std::string timestamp_now() {
    const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm utc{};
    gmtime_r(&now, &utc);
    std::ostringstream out;
    out << std::put_time(&utc, "%Y-%m-%dT%H:%M:%SZ");
    return out.str();
}

void write_document(const std::string& path, std::ostream& out, const std::string& text) {
    if (path.empty() || path == "-") {
        out << text;
        return;
    }
    std::ofstream file(path);
    if (!file) throw std::runtime_error("cannot open " + path + " for writing");
    file << text;
    if (!file) throw std::runtime_error("failed writing " + path);
}

/// Numeric CSV: comma and/or whitespace separated, `#` comments, blank
/// lines skipped. The first non-comment line may be a non-numeric header.
std::vector<std::vector<double>> read_numeric_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path, 0);
    std::vector<std::vector<double>> rows;
    bool first = true;
    std::string line;
    for (std::size_t line_number = 1; std::getline(in, line); ++line_number) {
        line = line.substr(0, line.find('#'));
        for (auto& ch : line) {
            if (ch == ',' || ch == ';' || ch == '\t' || ch == '\r') ch = ' ';
        }
        std::istringstream stream(line);
        std::vector<std::string> tokens;
        for (std::string token; stream >> token;) tokens.push_back(token);
        if (tokens.empty()) continue;

        std::vector<double> row;
        bool numeric = true;
        for (const auto& token : tokens) {
            double value = 0.0;
            const char* begin = token.data() + (token.front() == '+' ? 1 : 0);
            auto [ptr, ec] = std::from_chars(begin, token.data() + token.size(), value);
            if (ec != std::errc() || ptr != token.data() + token.size() || !std::isfinite(value)) {
                numeric = false;
                break;
            }
            row.push_back(value);
        }
        if (!numeric) {
            if (first) {
                first = false;
                continue;
            }
            throw ParseError(path + ": non-numeric value", line_number);
        }
        first = false;
        rows.push_back(std::move(row));
    }
    return rows;
}

struct SamplerOptions {
    std::string kind = "exact";
    SamplerConfig config;

    SamplerConfig build() const {
        SamplerConfig result = config;
        result.kind = parse_sampler_kind(kind);
        result.params.validate();
        result.noise.validate();
        result.range.validate();
        return result;
    }
};

void add_sampler_options(CLI::App& app, SamplerOptions& o) {
    auto& p = o.config.params;
    auto& noise = o.config.noise;
    auto& range = o.config.range;
    app.add_option("--sampler", o.kind, "Backend: exact, sa or boltzmann")
            ->check(CLI::IsMember({"exact", "sa", "boltzmann"}))
            ->capture_default_str();
    app.add_option("--reads", p.num_reads, "Reads per submission")->capture_default_str();
    app.add_option("--seed", p.seed, "Random seed")->capture_default_str();
    app.add_option("--sweeps", p.sa_sweeps, "Simulated annealing sweeps per read")
            ->capture_default_str();
    app.add_option("--beta-initial", p.sa_beta_initial, "Initial inverse temperature")
            ->capture_default_str();
    app.add_option("--beta-final", p.sa_beta_final, "Final inverse temperature")
            ->capture_default_str();
    app.add_option("--noise-sigma-a", noise.sigma_a, "Std. dev. of linear-term noise")
            ->capture_default_str();
    app.add_option("--noise-sigma-b", noise.sigma_b, "Std. dev. of coupling noise")
            ->capture_default_str();
    app.add_option("--noise-bias-a", noise.bias_a, "Mean of linear-term noise")
            ->capture_default_str();
    app.add_option("--noise-bias-b", noise.bias_b, "Mean of coupling noise")->capture_default_str();
    app.add_option("--tau", noise.tau, "Boltzmann temperature")->capture_default_str();
    app.add_option("--exact-draw-limit", noise.exact_max_variables,
                   "Largest model drawn exactly by the Boltzmann backend (Gibbs beyond)")
            ->capture_default_str();
    app.add_option("--gibbs-burn-in", noise.gibbs_burn_in, "Gibbs sweeps per read")
            ->capture_default_str();
    app.add_option("--h-min", range.h_min, "Hardware linear range, lower end")->capture_default_str();
    app.add_option("--h-max", range.h_max, "Hardware linear range, upper end")->capture_default_str();
    app.add_option("--j-min", range.j_min, "Hardware coupling range, lower end")
            ->capture_default_str();
    app.add_option("--j-max", range.j_max, "Hardware coupling range, upper end")
            ->capture_default_str();
}

struct TopologyOptions {
    std::string topology;
    double chain_strength = -5.0;
    std::size_t restarts = 10;
    bool discard_broken = false;

    EmbeddingOptions embedding(std::uint64_t seed) const {
        EmbeddingOptions options;
        options.seed = seed;
        options.max_restarts = restarts;
        options.chain_strength = chain_strength;
        return options;
    }

    json to_json() const {
        if (topology.empty()) return nullptr;
        return {{"topology", to_string(parse_topology(topology))},
                {"chain_strength", chain_strength},
                {"restarts", restarts},
                {"discard_broken", discard_broken}};
    }
};

void add_topology_options(CLI::App& app, TopologyOptions& o, bool required) {
    auto* topology = app.add_option("--topology", o.topology, "Hardware graph, chimera:m,n,L");
    if (required) topology->required();
    app.add_option("--chain-strength", o.chain_strength, "Coupling inside chains (negative)")
            ->capture_default_str();
    app.add_option("--embed-restarts", o.restarts, "Randomized embedding restarts")
            ->capture_default_str();
    app.add_flag("--discard-broken", o.discard_broken,
                 "Drop reads with broken chains instead of majority voting");
}

struct OutputOptions {
    std::string out = "-";
    bool no_timestamp = false;
};

void add_output_options(CLI::App& app, OutputOptions& o) {
    app.add_option("--out", o.out, "Output file ('-' for stdout)")->capture_default_str();
    app.add_flag("--no-timestamp", o.no_timestamp, "Omit the run timestamp from metadata");
}

json embedding_metrics(const Embedding& embedding) {
    return {{"qubits", embedding.num_qubits()},
            {"max_chain_length", embedding.max_chain_length()},
            {"logical_variables", embedding.chains.size()}};
}

// solve ------------------------------------------------------------------

struct SolveArgs {
    std::string input;
    bool full_spectrum = false;
    SamplerOptions sampler;
    TopologyOptions topology;
    OutputOptions output;
};

int solve(const SolveArgs& args, std::ostream& out) {
    SamplerConfig config = args.sampler.build();
    config.exact.full_spectrum = args.full_spectrum;
    const QuboModel model = read_qubo_file(args.input);

    json effective = {{"command", "solve"},
                      {"input", args.input},
                      {"variables", model.num_variables()},
                      {"sampler", to_json(config)},
                      {"embedding", args.topology.to_json()}};

    SampleSet result;
    json embedding_info;
    if (!args.topology.topology.empty()) {
        const ChimeraGraph hardware(parse_topology(args.topology.topology));
        auto run = sample_embedded(model, config, hardware,
                                   args.topology.embedding(config.params.seed),
                                   UnembedOptions{args.topology.discard_broken});
        embedding_info = embedding_metrics(run.embedding);
        embedding_info["broken_chain_fraction"] =
                broken_chain_fraction(run.logical_samples, run.embedding);
        embedding_info["chains"] = to_json(run.embedding)["chains"];
        result = std::move(run.logical_samples);
    } else {
        result = sample(config, model);
    }

    json doc = to_json(result);
    auto& info = doc["info"];
    info["seed"] = config.params.seed;
    if (config.kind == SamplerKind::Exact) info["reads"] = result.total_occurrences();
    info["config"] = effective;
    if (!embedding_info.is_null()) info["embedding"] = embedding_info;
    if (!args.output.no_timestamp) info["timestamp"] = timestamp_now();
    write_document(args.output.out, out, doc.dump(2) + "\n");
    return kOk;
}

// embed ------------------------------------------------------------------

struct EmbedArgs {
    std::string input;
    std::size_t complete = 0;
    std::uint64_t seed = 0;
    TopologyOptions topology;
    OutputOptions output;
};

int embed(const EmbedArgs& args, std::ostream& out) {
    if (args.input.empty() == (args.complete == 0)) {
        throw InvalidArgument("give exactly one of --input or --complete");
    }
    const Graph logical = args.input.empty() ? Graph::complete(args.complete)
                                             : interaction_graph(read_qubo_file(args.input));
    const ChimeraGraph hardware(parse_topology(args.topology.topology));
    const Embedding embedding = find_embedding(logical, hardware, args.topology.embedding(args.seed));

    json doc = to_json(embedding);
    doc["metrics"] = embedding_metrics(embedding);
    doc["metrics"]["logical_edges"] = logical.num_edges();
    json effective = {{"command", "embed"}, {"seed", args.seed}, {"embedding", args.topology.to_json()}};
    if (args.input.empty()) {
        effective["complete"] = args.complete;
    } else {
        effective["input"] = args.input;
    }
    doc["info"] = {{"config", effective}};
    if (!args.output.no_timestamp) doc["info"]["timestamp"] = timestamp_now();
    write_document(args.output.out, out, doc.dump(2) + "\n");
    return kOk;
}

// mle --------------------------------------------------------------------

struct MleArgs {
    std::string data;
    std::string model = "normal";
    int powers_high = 1;
    int powers_low = -7;
    std::vector<double> start{0.0, 1.0};
    std::size_t iterations = 10;
    SamplerOptions sampler;
    OutputOptions output;
};

int mle(const MleArgs& args, std::ostream& out, std::ostream& err) {
    MleProblem problem;
    for (const auto& row : read_numeric_csv(args.data)) {
        problem.data.insert(problem.data.end(), row.begin(), row.end());
    }
    if (problem.data.empty()) throw ParseError(args.data + ": no data values", 0);
    problem.family = make_family(args.model);
    problem.theta_encoding = BinaryEncoding::from_range(args.powers_high, args.powers_low);
    problem.phi_encoding = problem.theta_encoding;
    if (args.start.size() != 2) throw InvalidArgument("--start expects theta,phi");

    const SamplerConfig config = args.sampler.build();
    const MleTrace trace = run_mle(problem, args.start[0], args.start[1], config, args.iterations);
    for (const auto& note : trace.diagnostics) err << "note: " << note << '\n';

    const json effective = {{"command", "mle"},
                            {"data", args.data},
                            {"observations", problem.data.size()},
                            {"model", args.model},
                            {"powers_high", args.powers_high},
                            {"powers_low", args.powers_low},
                            {"start", args.start},
                            {"iterations", args.iterations},
                            {"sampler", to_json(config)}};
    std::ostringstream csv;
    csv << "# config: " << effective.dump() << '\n';
    if (!args.output.no_timestamp) csv << "# timestamp: " << timestamp_now() << '\n';
    csv << "iteration,theta,phi,energy,loglik\n";
    for (const auto& it : trace.iterations) {
        csv << it.iteration << ',' << format_double(it.theta) << ',' << format_double(it.phi) << ','
            << format_double(it.energy) << ',' << format_double(it.log_likelihood) << '\n';
    }
    const auto& best = trace.best();
    csv << "# best: iteration " << best.iteration << " theta=" << format_double(best.theta)
        << " phi=" << format_double(best.phi) << " loglik=" << format_double(best.log_likelihood)
        << '\n';
    write_document(args.output.out, out, csv.str());
    return kOk;
}

// design -----------------------------------------------------------------

struct DesignArgs {
    std::size_t size = 0;
    std::string samples_out;
    SamplerOptions sampler;
    TopologyOptions topology;
    OutputOptions output;
};

int design(const DesignArgs& args, std::ostream& out) {
    const SamplerConfig config = args.sampler.build();
    std::optional<DesignEmbedding> hardware;
    if (!args.topology.topology.empty()) {
        hardware = DesignEmbedding{ChimeraGraph(parse_topology(args.topology.topology)),
                                   args.topology.embedding(config.params.seed),
                                   UnembedOptions{args.topology.discard_broken}};
    }
    const DesignRun run = generate_design(args.size, config, hardware);
    const Design& d = run.design;

    const json effective = {{"command", "design"},
                            {"size", args.size},
                            {"sampler", to_json(config)},
                            {"embedding", args.topology.to_json()}};
    std::ostringstream csv;
    csv << "# size=" << d.size << " points=" << d.points.size()
        << " row_latin=" << std::boolalpha << d.row_latin << " column_latin=" << d.column_latin
        << " diagonal_free=" << d.diagonal_free << " valid=" << d.valid();
    if (!run.samples.empty()) csv << " energy=" << format_double(run.samples.lowest().energy);
    csv << '\n';
    if (run.embedding) csv << "# embedding: " << embedding_metrics(*run.embedding).dump() << '\n';
    csv << "# config: " << effective.dump() << '\n';
    if (!args.output.no_timestamp) csv << "# timestamp: " << timestamp_now() << '\n';
    csv << "row,col\n";
    for (const auto& [r, c] : d.points) csv << r << ',' << c << '\n';
    write_document(args.output.out, out, csv.str());

    if (!args.samples_out.empty()) {
        json doc = to_json(run.samples);
        doc["info"]["config"] = effective;
        if (!args.output.no_timestamp) doc["info"]["timestamp"] = timestamp_now();
        write_document(args.samples_out, out, doc.dump(2) + "\n");
    }
    return kOk;
}

// matinv -----------------------------------------------------------------

struct MatinvArgs {
    std::string input;
    std::size_t bits = 6;
    int power_high = 0;
    std::string json_out;
    SamplerOptions sampler;
    OutputOptions output;
};

int matinv(const MatinvArgs& args, std::ostream& out, std::ostream& err) {
    const auto rows = read_numeric_csv(args.input);
    if (rows.empty()) throw ParseError(args.input + ": empty matrix", 0);
    Eigen::MatrixXd a(static_cast<Eigen::Index>(rows.size()),
                      static_cast<Eigen::Index>(rows.front().size()));
    for (std::size_t r = 0; r < rows.size(); ++r) {
        if (rows[r].size() != rows.front().size()) {
            throw ParseError(args.input + ": ragged matrix row " + std::to_string(r + 1), 0);
        }
        for (std::size_t c = 0; c < rows[r].size(); ++c) {
            a(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = rows[r][c];
        }
    }
    if (args.bits == 0) throw InvalidArgument("--bits must be positive");
    const auto encoding = BinaryEncoding::from_range(
            args.power_high, args.power_high - static_cast<int>(args.bits) + 1);
    const MatInvProblem problem = precompute(a, encoding);
    const SamplerConfig config = args.sampler.build();
    if (config.kind == SamplerKind::Exact && problem.column_qubits(0) > kExactMaxVariables) {
        throw CapacityError("exact backend limited to " + std::to_string(kExactMaxVariables) +
                            " qubits per column, need " + std::to_string(problem.column_qubits(0)));
    }
    const MatInvResult result = invert(problem, config);
    for (const auto& warning : result.warnings) err << "warning: " << warning << '\n';

    std::ostringstream csv;
    for (Eigen::Index r = 0; r < result.v_hat.rows(); ++r) {
        for (Eigen::Index c = 0; c < result.v_hat.cols(); ++c) {
            csv << (c == 0 ? "" : ",") << format_double(result.v_hat(r, c));
        }
        csv << '\n';
    }
    write_document(args.output.out, out, csv.str());

    if (!args.json_out.empty()) {
        json v = json::array();
        for (Eigen::Index r = 0; r < result.v_hat.rows(); ++r) {
            json row = json::array();
            for (Eigen::Index c = 0; c < result.v_hat.cols(); ++c) row.push_back(result.v_hat(r, c));
            v.push_back(std::move(row));
        }
        json columns = json::array();
        for (std::size_t k = 0; k < result.column_ok.size(); ++k) {
            json column = {{"column", k}, {"ok", static_cast<bool>(result.column_ok[k])}};
            if (result.column_ok[k]) {
                column["energy"] = result.column_energies[k];
            } else {
                column["error"] = result.column_errors[k];
            }
            columns.push_back(std::move(column));
        }
        json doc = {{"v_hat", v},
                    {"columns", columns},
                    {"residual", result.residual},
                    {"warnings", result.warnings},
                    {"info",
                     {{"config",
                       {{"command", "matinv"},
                        {"input", args.input},
                        {"bits", args.bits},
                        {"power_high", args.power_high},
                        {"sampler", to_json(config)}}}}}};
        if (!args.output.no_timestamp) doc["info"]["timestamp"] = timestamp_now();
        write_document(args.json_out, out, doc.dump(2) + "\n");
    }
    if (!result.ok()) {
        for (std::size_t k = 0; k < result.column_ok.size(); ++k) {
            if (!result.column_ok[k]) err << "column " << k << " failed: " << result.column_errors[k] << '\n';
        }
        return kFailure;
    }
    return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Annealer-style QUBO modelling, sampling and statistics applications"};
    app.name(args.empty() ? "qastat" : args.front());
    app.require_subcommand(1);

    SolveArgs solve_args;
    auto* solve_cmd = app.add_subcommand("solve", "Sample a QUBO file and write a SampleSet JSON");
    solve_cmd->add_option("--input", solve_args.input, "QUBO text file")->required();
    solve_cmd->add_flag("--full-spectrum", solve_args.full_spectrum,
                        "Exact backend: list every assignment");
    add_sampler_options(*solve_cmd, solve_args.sampler);
    add_topology_options(*solve_cmd, solve_args.topology, false);
    add_output_options(*solve_cmd, solve_args.output);

    EmbedArgs embed_args;
    auto* embed_cmd = app.add_subcommand("embed", "Minor-embed a problem graph and write the chains");
    embed_cmd->add_option("--input", embed_args.input, "QUBO text file whose interaction graph is embedded");
    embed_cmd->add_option("--complete", embed_args.complete, "Embed the complete graph K_n instead");
    embed_cmd->add_option("--seed", embed_args.seed, "Random seed")->capture_default_str();
    add_topology_options(*embed_cmd, embed_args.topology, true);
    add_output_options(*embed_cmd, embed_args.output);

    MleArgs mle_args;
    auto* mle_cmd = app.add_subcommand("mle", "Iterated Taylor-QUBO maximum likelihood");
    mle_cmd->add_option("--data", mle_args.data, "CSV of observations")->required();
    mle_cmd->add_option("--model", mle_args.model, "Model family")
            ->check(CLI::IsMember({"normal"}))
            ->capture_default_str();
    mle_cmd->add_option("--powers-high", mle_args.powers_high, "Largest power of two per parameter")
            ->capture_default_str();
    mle_cmd->add_option("--powers-low", mle_args.powers_low, "Smallest power of two per parameter")
            ->capture_default_str();
    mle_cmd->add_option("--start", mle_args.start, "Expansion point theta,phi")
            ->delimiter(',')
            ->expected(2)
            ->capture_default_str();
    mle_cmd->add_option("--iters", mle_args.iterations, "Iterations")->capture_default_str();
    add_sampler_options(*mle_cmd, mle_args.sampler);
    add_output_options(*mle_cmd, mle_args.output);

    DesignArgs design_args;
    design_args.sampler.kind = "sa";
    auto* design_cmd = app.add_subcommand("design", "N-queens experimental design");
    design_cmd->add_option("--size", design_args.size, "Grid size N")->required();
    design_cmd->add_option("--samples-out", design_args.samples_out, "Also write the SampleSet JSON here");
    add_sampler_options(*design_cmd, design_args.sampler);
    add_topology_options(*design_cmd, design_args.topology, false);
    add_output_options(*design_cmd, design_args.output);

    MatinvArgs matinv_args;
    auto* matinv_cmd = app.add_subcommand("matinv", "Column-wise matrix inversion");
    matinv_cmd->add_option("--input", matinv_args.input, "CSV matrix A")->required();
    matinv_cmd->add_option("--bits", matinv_args.bits, "Qubits per entry")->capture_default_str();
    matinv_cmd->add_option("--power-high", matinv_args.power_high, "Largest power of two per entry")
            ->capture_default_str();
    matinv_cmd->add_option("--json", matinv_args.json_out, "Write the result document here");
    add_sampler_options(*matinv_cmd, matinv_args.sampler);
    add_output_options(*matinv_cmd, matinv_args.output);

    std::vector<const char*> argv;
    for (const auto& arg : args) argv.push_back(arg.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kParseFailure;
    }

    try {
        if (*solve_cmd) return solve(solve_args, out);
        if (*embed_cmd) return embed(embed_args, out);
        if (*mle_cmd) return mle(mle_args, out, err);
        if (*design_cmd) return design(design_args, out);
        if (*matinv_cmd) return matinv(matinv_args, out, err);
    } catch (const ParseError& e) {
        err << "parse error: " << e.what() << '\n';
        return kParseFailure;
    } catch (const EmbeddingError& e) {
        err << "embedding failed: " << e.what() << '\n';
        return kEmbeddingFailure;
    } catch (const CapacityError& e) {
        err << "too large: " << e.what() << '\n';
        return kCapacityFailure;
    } catch (const ExpansionPointError& e) {
        err << "error: " << e.what() << " (after " << e.partial_trace().size() << " iterations)\n";
        return kFailure;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kFailure;
    }
    return kFailure;
}

}  // namespace qastat::cli
