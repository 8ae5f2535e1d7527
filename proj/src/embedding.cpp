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

#include "qastat/embedding.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <queue>
#include <random>
#include <set>

#include "qastat/rng.hpp"

namespace qastat {

std::size_t Embedding::num_qubits() const {
    return std::accumulate(chains.begin(), chains.end(), std::size_t{0},
                           [](std::size_t acc, const auto& chain) { return acc + chain.size(); });
}

std::size_t Embedding::max_chain_length() const {
    std::size_t best = 0;
    for (const auto& chain : chains) best = std::max(best, chain.size());
    return best;
}

std::vector<std::size_t> Embedding::used_qubits() const {
    std::vector<std::size_t> qubits;
    for (const auto& chain : chains) qubits.insert(qubits.end(), chain.begin(), chain.end());
    std::sort(qubits.begin(), qubits.end());
    qubits.erase(std::unique(qubits.begin(), qubits.end()), qubits.end());
    return qubits;
}

namespace {

constexpr std::size_t kUnowned = std::numeric_limits<std::size_t>::max();

bool chain_connected(const Graph& hardware, const std::vector<std::size_t>& chain) {
    if (chain.empty()) return false;
    std::set<std::size_t> members(chain.begin(), chain.end());
    std::set<std::size_t> seen{chain.front()};
    std::vector<std::size_t> stack{chain.front()};
    while (!stack.empty()) {
        const auto g = stack.back();
        stack.pop_back();
        for (auto h : hardware.neighbors(g)) {
            if (members.count(h) != 0 && seen.insert(h).second) stack.push_back(h);
        }
    }
    return seen.size() == members.size();
}

bool chains_adjacent(const Graph& hardware, const std::vector<std::size_t>& a,
                     const std::vector<std::size_t>& b) {
    for (auto g : a) {
        for (auto h : b) {
            if (hardware.has_edge(g, h)) return true;
        }
    }
    return false;
}

/// Grows chains one logical vertex at a time along cheapest paths to the
/// chains of already-placed neighbours. Overlapping qubits are allowed but
/// priced exponentially in their use count; repeated tear-up-and-reroute
/// passes push the layout toward an overlap-free one.
class ChainPlacer {
 public:
    ChainPlacer(const Graph& logical, const Graph& hardware, std::mt19937_64& rng)
            : logical_(logical),
              hardware_(hardware),
              rng_(rng),
              chains_(logical.num_nodes()),
              usage_(hardware.num_nodes(), 0),
              history_(hardware.num_nodes(), 0.0) {}

    /// Overlap phase: stops early once the overlap count has not reached a
    /// new minimum for `patience` passes.
    bool run(std::size_t max_passes, std::size_t refine_passes) {
        constexpr std::size_t patience = 6;
        bool clean = false;
        std::size_t best_overlap = std::numeric_limits<std::size_t>::max();
        std::size_t stale = 0;
        for (std::size_t pass = 0; pass < max_passes && !clean && stale < patience; ++pass) {
            const double base = std::min(std::pow(2.0, static_cast<double>(pass + 1)), 1e6);
            for (auto v : pass == 0 ? bfs_order() : shuffled()) {
                tear_up(v);
                if (!place(v, base, false)) return false;
            }
            std::size_t overlap = 0;
            for (std::size_t g = 0; g < usage_.size(); ++g) {
                if (usage_[g] > 1) {
                    overlap += static_cast<std::size_t>(usage_[g] - 1);
                    history_[g] += usage_[g] - 1;
                }
            }
            clean = overlap == 0;
            stale = overlap < best_overlap ? 0 : stale + 1;
            best_overlap = std::min(best_overlap, overlap);
        }
        if (!clean) return false;
        polish(refine_passes);
        return true;
    }

    /// Starts from an overlap-free layout and only shortens it.
    void seed(std::vector<std::vector<std::size_t>> chains) {
        chains_ = std::move(chains);
        std::fill(usage_.begin(), usage_.end(), 0);
        for (const auto& chain : chains_) {
            for (auto g : chain) ++usage_[g];
        }
    }

    void polish(std::size_t refine_passes) {
        for (std::size_t pass = 0; pass < refine_passes; ++pass) {
            bool improved = false;
            for (auto v : shuffled()) {
                auto previous = chains_[v];
                tear_up(v);
                if (place(v, 1.0, true) && chains_[v].size() < previous.size()) {
                    improved = true;
                    continue;
                }
                tear_up(v);
                chains_[v] = std::move(previous);
                for (auto g : chains_[v]) ++usage_[g];
            }
            if (!improved) break;
        }
        trim();
        for (auto& chain : chains_) std::sort(chain.begin(), chain.end());
    }

    std::vector<std::vector<std::size_t>> chains() const { return chains_; }

 private:
    /// Qubits that stayed contested after earlier passes carry a growing
    /// surcharge, so equally overlapping layouts stop being ties.
    double weight(std::size_t g, double base, bool forbid_overlap) const {
        if (forbid_overlap) {
            return usage_[g] == 0 ? 1.0 : std::numeric_limits<double>::infinity();
        }
        return (1.0 + history_[g]) * (usage_[g] == 0 ? 1.0 : std::pow(base, usage_[g]));
    }

    void tear_up(std::size_t v) {
        for (auto g : chains_[v]) --usage_[g];
        chains_[v].clear();
    }

    std::vector<std::size_t> shuffled() {
        std::vector<std::size_t> order(logical_.num_nodes());
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::shuffle(order.begin(), order.end(), rng_);
        return order;
    }

    std::vector<std::size_t> bfs_order() {
        std::vector<std::size_t> order;
        std::vector<bool> seen(logical_.num_nodes(), false);
        for (auto start : shuffled()) {
            if (seen[start]) continue;
            std::queue<std::size_t> queue;
            queue.push(start);
            seen[start] = true;
            while (!queue.empty()) {
                const auto v = queue.front();
                queue.pop();
                order.push_back(v);
                auto nbrs = logical_.neighbors(v);
                std::shuffle(nbrs.begin(), nbrs.end(), rng_);
                for (auto u : nbrs) {
                    if (!seen[u]) {
                        seen[u] = true;
                        queue.push(u);
                    }
                }
            }
        }
        return order;
    }

    /// Node-weighted shortest paths from every qubit of `sources`.
    void shortest_paths(const std::vector<std::size_t>& sources, double base, bool forbid,
                        std::vector<double>& dist, std::vector<std::size_t>& parent) const {
        const std::size_t n = hardware_.num_nodes();
        dist.assign(n, std::numeric_limits<double>::infinity());
        parent.assign(n, kUnowned);
        using Item = std::pair<double, std::size_t>;
        std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
        for (auto s : sources) {
            dist[s] = 0.0;
            heap.emplace(0.0, s);
        }
        while (!heap.empty()) {
            const auto [d, g] = heap.top();
            heap.pop();
            if (d > dist[g]) continue;
            for (auto h : hardware_.neighbors(g)) {
                const double nd = d + weight(h, base, forbid);
                if (nd < dist[h]) {
                    dist[h] = nd;
                    parent[h] = g;
                    heap.emplace(nd, h);
                }
            }
        }
    }

    std::size_t pick_random(const std::vector<std::size_t>& ties) {
        return ties[std::uniform_int_distribution<std::size_t>(0, ties.size() - 1)(rng_)];
    }

    bool place(std::size_t v, double base, bool forbid) {
        const std::size_t n = hardware_.num_nodes();
        std::vector<std::size_t> placed;
        for (auto u : logical_.neighbors(v)) {
            if (!chains_[u].empty()) placed.push_back(u);
        }

        std::vector<double> cost(n, 0.0);
        for (std::size_t g = 0; g < n; ++g) cost[g] = weight(g, base, forbid);

        std::vector<std::vector<std::size_t>> parents(placed.size());
        std::vector<std::vector<bool>> is_source(placed.size(), std::vector<bool>(n, false));
        std::vector<double> dist;
        for (std::size_t p = 0; p < placed.size(); ++p) {
            const auto& sources = chains_[placed[p]];
            for (auto s : sources) is_source[p][s] = true;
            shortest_paths(sources, base, forbid, dist, parents[p]);
            for (std::size_t g = 0; g < n; ++g) {
                if (!is_source[p][g]) cost[g] += dist[g] - weight(g, base, forbid);
            }
        }

        double best = std::numeric_limits<double>::infinity();
        for (std::size_t g = 0; g < n; ++g) {
            if (std::isfinite(cost[g])) best = std::min(best, cost[g]);
        }
        if (!std::isfinite(best)) return false;
        std::vector<std::size_t> ties;
        for (std::size_t g = 0; g < n; ++g) {
            if (cost[g] <= best + 1e-9 * std::max(1.0, std::abs(best))) ties.push_back(g);
        }
        const std::size_t root = pick_random(ties);

        std::set<std::size_t> chain{root};
        for (std::size_t p = 0; p < placed.size(); ++p) {
            for (auto x = parents[p][root]; x != kUnowned && !is_source[p][x]; x = parents[p][x]) {
                chain.insert(x);
            }
        }
        chains_[v].assign(chain.begin(), chain.end());
        for (auto g : chains_[v]) ++usage_[g];
        return true;
    }

    /// Removes chain leaves that neither connectivity nor edge coverage
    /// needs. Requires an overlap-free layout.
    void trim() {
        std::vector<std::size_t> owner(hardware_.num_nodes(), kUnowned);
        for (std::size_t v = 0; v < chains_.size(); ++v) {
            for (auto g : chains_[v]) owner[g] = v;
        }
        bool changed = true;
        while (changed) {
            changed = false;
            for (std::size_t v = 0; v < chains_.size(); ++v) {
                auto& chain = chains_[v];
                for (std::size_t idx = 0; idx < chain.size() && chain.size() > 1;) {
                    const auto g = chain[idx];
                    std::size_t internal = 0;
                    for (auto h : hardware_.neighbors(g)) internal += owner[h] == v ? 1 : 0;
                    bool needed = internal > 1;
                    for (auto u : logical_.neighbors(v)) {
                        if (needed) break;
                        bool other = false;
                        for (auto a : chain) {
                            if (a == g) continue;
                            for (auto h : hardware_.neighbors(a)) {
                                if (owner[h] == u) {
                                    other = true;
                                    break;
                                }
                            }
                            if (other) break;
                        }
                        needed = !other;
                    }
                    if (needed) {
                        ++idx;
                        continue;
                    }
                    owner[g] = kUnowned;
                    --usage_[g];
                    chain.erase(chain.begin() + static_cast<std::ptrdiff_t>(idx));
                    changed = true;
                }
            }
        }
    }

    const Graph& logical_;
    const Graph& hardware_;
    std::mt19937_64& rng_;
    std::vector<std::vector<std::size_t>> chains_;
    std::vector<int> usage_;
    std::vector<double> history_;
};

}  // namespace

EmbeddingCheck verify_embedding(const Graph& logical, const Graph& hardware,
                                const Embedding& embedding) {
    EmbeddingCheck check;
    auto fail = [&check](bool& flag, const std::string& why) {
        flag = false;
        if (check.message.empty()) check.message = why;
    };
    if (embedding.chains.size() != logical.num_nodes()) {
        fail(check.connected, "embedding has " + std::to_string(embedding.chains.size()) +
                                  " chains for " + std::to_string(logical.num_nodes()) +
                                  " variables");
        return check;
    }
    std::vector<std::size_t> owner(hardware.num_nodes(), kUnowned);
    for (std::size_t v = 0; v < embedding.chains.size(); ++v) {
        const auto& chain = embedding.chains[v];
        for (auto g : chain) {
            if (g >= hardware.num_nodes()) {
                fail(check.connected, "chain " + std::to_string(v) + " uses unknown qubit " +
                                          std::to_string(g));
                return check;
            }
            if (owner[g] != kUnowned) {
                fail(check.disjoint, "qubit " + std::to_string(g) + " shared by chains " +
                                         std::to_string(owner[g]) + " and " + std::to_string(v));
            }
            owner[g] = v;
        }
        if (!chain_connected(hardware, chain)) {
            fail(check.connected, "chain " + std::to_string(v) + " is empty or disconnected");
        }
    }
    for (const auto& [u, v] : logical.edges()) {
        if (!chains_adjacent(hardware, embedding.chains[u], embedding.chains[v])) {
            fail(check.covers_edges, "no hardware edge between chains " + std::to_string(u) +
                                         " and " + std::to_string(v));
        }
    }
    return check;
}

Embedding clique_embedding(std::size_t num_variables, const ChimeraGraph& hardware,
                           double chain_strength) {
    const auto& shape = hardware.shape();
    const std::size_t blocks = (num_variables + shape.shore - 1) / shape.shore;
    if (blocks > shape.rows || blocks > shape.cols) {
        throw EmbeddingError("K_" + std::to_string(num_variables) + " needs a " +
                             std::to_string(blocks) + "x" + std::to_string(blocks) +
                             " block of cells, hardware is " + to_string(shape));
    }
    Embedding embedding;
    embedding.chain_strength = chain_strength;
    embedding.chains.resize(num_variables);
    for (std::size_t v = 0; v < num_variables; ++v) {
        const std::size_t b = v / shape.shore;
        const std::size_t k = v % shape.shore;
        auto& chain = embedding.chains[v];
        for (std::size_t col = 0; col <= b; ++col) chain.push_back(hardware.node(b, col, 1, k));
        for (std::size_t row = b; row < blocks; ++row) chain.push_back(hardware.node(row, b, 0, k));
        std::sort(chain.begin(), chain.end());
    }
    return embedding;
}

Embedding find_embedding(const Graph& logical, const ChimeraGraph& hardware,
                         const EmbeddingOptions& options) {
    if (logical.num_nodes() == 0) throw InvalidArgument("cannot embed an empty graph");
    if (!(options.chain_strength < 0.0)) throw InvalidArgument("chain strength must be negative");

    if (logical.num_nodes() <= hardware.num_nodes()) {
        // Restarts search a corner window of the hardware that grows by one
        // cell per restart, which keeps chains compact and paths cheap.
        const auto& shape = hardware.shape();
        const std::size_t start = (logical.num_nodes() + shape.shore - 1) / shape.shore + 1;
        for (std::size_t restart = 0; restart < options.max_restarts; ++restart) {
            const ChimeraGraph window(ChimeraShape{std::min(shape.rows, start + restart),
                                                   std::min(shape.cols, start + restart),
                                                   shape.shore});
            if (logical.num_nodes() > window.num_nodes()) continue;
            std::mt19937_64 rng(derive_seed(options.seed, restart));
            ChainPlacer placer(logical, window.graph(), rng);
            if (!placer.run(options.max_passes, options.refine_passes)) continue;
            Embedding embedding{placer.chains(), options.chain_strength};
            for (auto& chain : embedding.chains) {
                for (auto& g : chain) {
                    const auto at = window.coordinate(g);
                    g = hardware.node(at.row, at.col, at.side, at.k);
                }
                std::sort(chain.begin(), chain.end());
            }
            if (verify_embedding(logical, hardware.graph(), embedding).ok()) return embedding;
        }
    }
    // Any graph on n vertices is a subgraph of K_n, so the clique layout is
    // a valid starting point; non-complete graphs then get their chains
    // shortened.
    Embedding embedding;
    try {
        embedding = clique_embedding(logical.num_nodes(), hardware, options.chain_strength);
    } catch (const EmbeddingError&) {
        throw EmbeddingError("no embedding of a " + std::to_string(logical.num_nodes()) +
                             "-node, " + std::to_string(logical.num_edges()) + "-edge graph into " +
                             to_string(hardware.shape()) + " after " +
                             std::to_string(options.max_restarts) + " restarts");
    }
    if (!logical.is_complete()) {
        std::mt19937_64 rng(derive_seed(options.seed, options.max_restarts));
        ChainPlacer placer(logical, hardware.graph(), rng);
        placer.seed(embedding.chains);
        placer.polish(options.refine_passes);
        Embedding polished{placer.chains(), options.chain_strength};
        if (verify_embedding(logical, hardware.graph(), polished).ok()) embedding = std::move(polished);
    }
    return embedding;
}

IsingModel embed_model(const IsingModel& logical, const Embedding& embedding,
                       const ChimeraGraph& hardware, const HardwareRange& range) {
    range.validate();
    if (!(embedding.chain_strength < 0.0)) throw InvalidArgument("chain strength must be negative");
    const Graph& hw = hardware.graph();
    const auto check = verify_embedding(interaction_graph(logical), hw, embedding);
    if (!check.ok()) throw InvalidArgument("invalid embedding: " + check.message);

    const auto qubits = embedding.used_qubits();
    std::vector<std::size_t> index(hw.num_nodes(), kUnowned);
    for (std::size_t k = 0; k < qubits.size(); ++k) index[qubits[k]] = k;

    IsingModel physical(qubits.size(), logical.offset());
    for (std::size_t v = 0; v < embedding.chains.size(); ++v) {
        const auto& chain = embedding.chains[v];
        const double share = logical.linear(v) / static_cast<double>(chain.size());
        for (auto g : chain) physical.add_linear(index[g], share);
    }

    for (const auto& [edge, coupling] : logical.quadratic_biases()) {
        std::vector<std::pair<std::size_t, std::size_t>> couplers;
        for (auto a : embedding.chains[edge.first]) {
            for (auto b : embedding.chains[edge.second]) {
                if (hw.has_edge(a, b)) couplers.emplace_back(a, b);
            }
        }
        double needed = 1.0;
        if (coupling > 0.0 && range.j_max > 0.0) needed = std::ceil(coupling / range.j_max);
        if (coupling < 0.0) needed = std::ceil(-coupling / -range.j_min);
        const std::size_t count =
                std::clamp<std::size_t>(static_cast<std::size_t>(needed), 1, couplers.size());
        for (std::size_t c = 0; c < count; ++c) {
            physical.add_quadratic(index[couplers[c].first], index[couplers[c].second],
                                   coupling / static_cast<double>(count));
        }
    }

    std::size_t chain_edges = 0;
    for (const auto& chain : embedding.chains) {
        for (std::size_t a = 0; a < chain.size(); ++a) {
            for (std::size_t b = a + 1; b < chain.size(); ++b) {
                if (!hw.has_edge(chain[a], chain[b])) continue;
                physical.set_quadratic(index[chain[a]], index[chain[b]], embedding.chain_strength);
                ++chain_edges;
            }
        }
    }
    physical.add_offset(-embedding.chain_strength * static_cast<double>(chain_edges));
    return physical;
}

SampleSet unembed(const SampleSet& physical, const Embedding& embedding,
                  const IsingModel& logical, const UnembedOptions& options) {
    if (physical.vartype() != Vartype::Spin) throw InvalidArgument("unembed expects spin samples");
    if (embedding.chains.size() != logical.num_variables()) {
        throw InvalidArgument("embedding and logical model disagree on variable count");
    }
    const auto qubits = embedding.used_qubits();
    std::vector<std::size_t> position;
    if (physical.num_variables() == qubits.size()) {
        position.assign(qubits.empty() ? 0 : qubits.back() + 1, kUnowned);
        for (std::size_t k = 0; k < qubits.size(); ++k) position[qubits[k]] = k;
    } else if (!qubits.empty() && physical.num_variables() > qubits.back()) {
        position.resize(physical.num_variables());
        std::iota(position.begin(), position.end(), std::size_t{0});
    } else {
        throw InvalidArgument("physical samples do not cover the embedding's qubits");
    }

    SampleSet result(Vartype::Spin, logical.num_variables());
    std::vector<SampleRecord> records;
    for (const auto& record : physical.records()) {
        SampleRecord out;
        out.assignment.resize(logical.num_variables());
        out.occurrences = record.occurrences;
        for (std::size_t v = 0; v < embedding.chains.size(); ++v) {
            const auto& chain = embedding.chains[v];
            long sum = 0;
            for (auto g : chain) sum += record.assignment[position[g]];
            if (static_cast<std::size_t>(std::labs(sum)) != chain.size()) ++out.broken_chains;
            if (sum > 0) {
                out.assignment[v] = 1;
            } else if (sum < 0) {
                out.assignment[v] = -1;
            } else {
                out.assignment[v] = record.assignment[position[chain.front()]];
            }
        }
        if (options.discard_broken && out.broken_chains > 0) continue;
        out.energy = logical.energy(std::span<const std::int8_t>(out.assignment));
        records.push_back(std::move(out));
    }
    result.add_all(std::move(records));
    result.info() = physical.info();
    result.info()["unembedded"] = true;
    result.info()["discard_broken"] = options.discard_broken;
    return result;
}

template <Vartype V>
EmbeddedRun sample_embedded(const QuadraticModel<V>& model, const SamplerConfig& sampler,
                            const ChimeraGraph& hardware, const EmbeddingOptions& options,
                            const UnembedOptions& unembed_options, std::uint64_t stream) {
    IsingModel logical = [&] {
        if constexpr (V == Vartype::Binary) {
            return qubo_to_ising(model);
        } else {
            return model;
        }
    }();
    EmbeddedRun run;
    run.embedding = find_embedding(interaction_graph(logical), hardware, options);
    run.physical = embed_model(logical, run.embedding, hardware, sampler.range);
    run.physical_samples = sample(sampler, run.physical, stream);
    SampleSet spins = unembed(run.physical_samples, run.embedding, logical, unembed_options);
    if constexpr (V == Vartype::Binary) {
        run.logical_samples = to_binary(spins, model);
    } else {
        run.logical_samples = std::move(spins);
    }
    return run;
}

template EmbeddedRun sample_embedded(const QuboModel&, const SamplerConfig&, const ChimeraGraph&,
                                     const EmbeddingOptions&, const UnembedOptions&, std::uint64_t);
template EmbeddedRun sample_embedded(const IsingModel&, const SamplerConfig&, const ChimeraGraph&,
                                     const EmbeddingOptions&, const UnembedOptions&, std::uint64_t);

double broken_chain_fraction(const SampleSet& unembedded, const Embedding& embedding) {
    if (embedding.chains.empty() || unembedded.empty()) return 0.0;
    double broken = 0.0;
    for (const auto& record : unembedded.records()) {
        broken += static_cast<double>(record.broken_chains * record.occurrences);
    }
    return broken / (static_cast<double>(unembedded.total_occurrences()) *
                     static_cast<double>(embedding.chains.size()));
}

nlohmann::json to_json(const Embedding& embedding) {
    nlohmann::json chains = nlohmann::json::object();
    for (std::size_t v = 0; v < embedding.chains.size(); ++v) {
        chains[std::to_string(v)] = embedding.chains[v];
    }
    return {{"chains", std::move(chains)}, {"chain_strength", embedding.chain_strength}};
}

Embedding embedding_from_json(const nlohmann::json& document) {
    Embedding embedding;
    embedding.chain_strength = document.at("chain_strength").get<double>();
    const auto& chains = document.at("chains");
    embedding.chains.resize(chains.size());
    for (const auto& [key, value] : chains.items()) {
        std::size_t v = 0;
        try {
            v = std::stoul(key);
        } catch (const std::exception&) {
            throw InvalidArgument("chain key '" + key + "' is not a variable index");
        }
        if (v >= embedding.chains.size()) throw InvalidArgument("chain keys must be 0..n-1");
        embedding.chains[v] = value.get<std::vector<std::size_t>>();
        std::sort(embedding.chains[v].begin(), embedding.chains[v].end());
    }
    return embedding;
}

}  // namespace qastat
