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

#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "qastat/model.hpp"

namespace qastat {

/// Simple undirected graph with sorted adjacency lists.
class Graph {
 public:
    explicit Graph(std::size_t num_nodes = 0) : adjacency_(num_nodes) {}

    static Graph complete(std::size_t num_nodes);

    std::size_t num_nodes() const { return adjacency_.size(); }
    std::size_t num_edges() const { return num_edges_; }

    /// Adds u -- v; repeated edges are ignored. Self-loops are invalid.
    void add_edge(std::size_t u, std::size_t v);
    bool has_edge(std::size_t u, std::size_t v) const;
    const std::vector<std::size_t>& neighbors(std::size_t u) const { return adjacency_.at(u); }
    std::size_t degree(std::size_t u) const { return adjacency_.at(u).size(); }
    std::size_t max_degree() const;
    bool is_complete() const;

    /// Edges as (u, v) with u < v, in lexicographic order.
    std::vector<std::pair<std::size_t, std::size_t>> edges() const;

 private:
    std::vector<std::vector<std::size_t>> adjacency_;
    std::size_t num_edges_ = 0;
};

/// Interaction graph of a model: one node per variable, one edge per stored
/// interaction.
template <Vartype V>
Graph interaction_graph(const QuadraticModel<V>& model) {
    Graph graph(model.num_variables());
    for (const auto& [edge, bias] : model.quadratic_biases()) graph.add_edge(edge.first, edge.second);
    return graph;
}

struct ChimeraShape {
    std::size_t rows = 16;
    std::size_t cols = 16;
    std::size_t shore = 4;

    friend bool operator==(const ChimeraShape&, const ChimeraShape&) = default;
};

/// Chimera hardware graph: a rows x cols grid of K_{shore,shore} unit
/// cells. Side 0 qubits couple to the same qubit in the cells above and
/// below, side 1 qubits to the cells left and right.
///
/// Node index of (row, col, side, k) is ((row * cols + col) * 2 + side) * shore + k.
class ChimeraGraph {
 public:
    struct Coordinate {
        std::size_t row, col, side, k;
    };

    explicit ChimeraGraph(ChimeraShape shape);

    const ChimeraShape& shape() const { return shape_; }
    const Graph& graph() const { return graph_; }
    std::size_t num_nodes() const { return graph_.num_nodes(); }

    std::size_t node(std::size_t row, std::size_t col, std::size_t side, std::size_t k) const;
    Coordinate coordinate(std::size_t node) const;

 private:
    ChimeraShape shape_;
    Graph graph_;
};

/// Throws InvalidArgument when any dimension is zero.
ChimeraGraph chimera(std::size_t rows, std::size_t cols, std::size_t shore = 4);

/// Parses `chimera:m,n,L` (or `chimera:m,n` with L = 4).
ChimeraShape parse_topology(const std::string& text);
std::string to_string(const ChimeraShape& shape);

}  // namespace qastat
