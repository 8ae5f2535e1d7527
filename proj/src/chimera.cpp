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

#include "qastat/chimera.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>

namespace qastat {

Graph Graph::complete(std::size_t num_nodes) {
    Graph graph(num_nodes);
    for (std::size_t u = 0; u < num_nodes; ++u) {
        for (std::size_t v = u + 1; v < num_nodes; ++v) graph.add_edge(u, v);
    }
    return graph;
}

void Graph::add_edge(std::size_t u, std::size_t v) {
    if (u >= num_nodes() || v >= num_nodes()) throw InvalidArgument("edge endpoint out of range");
    if (u == v) throw InvalidArgument("self-loop on node " + std::to_string(u));
    auto& nu = adjacency_[u];
    auto it = std::lower_bound(nu.begin(), nu.end(), v);
    if (it != nu.end() && *it == v) return;
    nu.insert(it, v);
    auto& nv = adjacency_[v];
    nv.insert(std::lower_bound(nv.begin(), nv.end(), u), u);
    ++num_edges_;
}

bool Graph::has_edge(std::size_t u, std::size_t v) const {
    if (u >= num_nodes() || v >= num_nodes()) return false;
    return std::binary_search(adjacency_[u].begin(), adjacency_[u].end(), v);
}

std::size_t Graph::max_degree() const {
    std::size_t best = 0;
    for (const auto& nbrs : adjacency_) best = std::max(best, nbrs.size());
    return best;
}

bool Graph::is_complete() const {
    const std::size_t n = num_nodes();
    return num_edges_ == n * (n - (n > 0 ? 1 : 0)) / 2;
}

std::vector<std::pair<std::size_t, std::size_t>> Graph::edges() const {
    std::vector<std::pair<std::size_t, std::size_t>> result;
    result.reserve(num_edges_);
    for (std::size_t u = 0; u < num_nodes(); ++u) {
        for (auto v : adjacency_[u]) {
            if (u < v) result.emplace_back(u, v);
        }
    }
    return result;
}

ChimeraGraph::ChimeraGraph(ChimeraShape shape) : shape_(shape) {
    if (shape.rows == 0 || shape.cols == 0 || shape.shore == 0) {
        throw InvalidArgument("chimera dimensions must be positive");
    }
    graph_ = Graph(2 * shape.shore * shape.rows * shape.cols);
    for (std::size_t r = 0; r < shape.rows; ++r) {
        for (std::size_t c = 0; c < shape.cols; ++c) {
            for (std::size_t a = 0; a < shape.shore; ++a) {
                for (std::size_t b = 0; b < shape.shore; ++b) {
                    graph_.add_edge(node(r, c, 0, a), node(r, c, 1, b));
                }
                if (r + 1 < shape.rows) graph_.add_edge(node(r, c, 0, a), node(r + 1, c, 0, a));
                if (c + 1 < shape.cols) graph_.add_edge(node(r, c, 1, a), node(r, c + 1, 1, a));
            }
        }
    }
}

std::size_t ChimeraGraph::node(std::size_t row, std::size_t col, std::size_t side,
                               std::size_t k) const {
    if (row >= shape_.rows || col >= shape_.cols || side > 1 || k >= shape_.shore) {
        throw InvalidArgument("chimera coordinate out of range");
    }
    return ((row * shape_.cols + col) * 2 + side) * shape_.shore + k;
}

ChimeraGraph::Coordinate ChimeraGraph::coordinate(std::size_t node) const {
    if (node >= num_nodes()) throw InvalidArgument("chimera node out of range");
    const std::size_t k = node % shape_.shore;
    node /= shape_.shore;
    const std::size_t side = node % 2;
    node /= 2;
    return {node / shape_.cols, node % shape_.cols, side, k};
}

ChimeraGraph chimera(std::size_t rows, std::size_t cols, std::size_t shore) {
    return ChimeraGraph(ChimeraShape{rows, cols, shore});
}

ChimeraShape parse_topology(const std::string& text) {
    const std::string prefix = "chimera:";
    if (text.rfind(prefix, 0) != 0) {
        throw InvalidArgument("unsupported topology '" + text + "' (expected chimera:m,n,L)");
    }
    std::vector<std::size_t> dims;
    std::stringstream stream(text.substr(prefix.size()));
    for (std::string part; std::getline(stream, part, ',');) {
        std::size_t value = 0;
        auto [ptr, ec] = std::from_chars(part.data(), part.data() + part.size(), value);
        if (ec != std::errc() || ptr != part.data() + part.size() || value == 0) {
            throw InvalidArgument("bad chimera dimension '" + part + "' in '" + text + "'");
        }
        dims.push_back(value);
    }
    if (dims.size() == 2) dims.push_back(4);
    if (dims.size() != 3) throw InvalidArgument("expected chimera:m,n,L, got '" + text + "'");
    return {dims[0], dims[1], dims[2]};
}

std::string to_string(const ChimeraShape& shape) {
    return "chimera:" + std::to_string(shape.rows) + "," + std::to_string(shape.cols) + "," +
           std::to_string(shape.shore);
}

}  // namespace qastat
