/**
 * Immutable simple undirected graph and structural analysis
 * (isolated vertices, connectivity, component sizes).
 */

#ifndef KEYGRAPH_GRAPH_HPP_
#define KEYGRAPH_GRAPH_HPP_

#include <cstdint>
#include <iosfwd>
#include <span>
#include <utility>
#include <vector>

namespace keygraph {

using Vertex = std::uint32_t;

/// Undirected edge stored with first < second.
using Edge = std::pair<Vertex, Vertex>;

/// Simple undirected graph on vertices 0..n-1, stored as its sorted edge set.
class Graph {
 public:
    Graph() = default;

    /// Builds from an arbitrary edge list. Endpoints are normalised, duplicates
    /// are merged; self-loops and out-of-range vertices throw.
    Graph(std::size_t n, std::vector<Edge> edges);

    static Graph empty(std::size_t n);
    static Graph complete(std::size_t n);

    std::size_t n() const { return n_; }
    std::size_t edge_count() const { return edges_.size(); }

    /// Sorted, duplicate-free, with first < second.
    std::span<const Edge> edges() const { return edges_; }

    bool has_edge(Vertex u, Vertex v) const;

    std::vector<std::size_t> degrees() const;

    friend bool operator==(const Graph& a, const Graph& b) { return a.n_ == b.n_ && a.edges_ == b.edges_; }

 private:
    std::size_t n_ = 0;
    std::vector<Edge> edges_;
};

/// Compressed neighbour lists of a graph, each sorted ascending.
class Adjacency {
 public:
    explicit Adjacency(const Graph& g);

    std::size_t n() const { return offsets_.size() - 1; }
    std::span<const Vertex> neighbors(Vertex v) const {
        return {neighbors_.data() + offsets_[v], neighbors_.data() + offsets_[v + 1]};
    }
    std::size_t degree(Vertex v) const { return offsets_[v + 1] - offsets_[v]; }

 private:
    std::vector<std::size_t> offsets_;
    std::vector<Vertex> neighbors_;
};

/// Edge-set intersection of two graphs on the same vertex count.
Graph intersect(const Graph& g1, const Graph& g2);

/// One "u v" line per edge, 0-based, lexicographically sorted.
void write_edge_list(std::ostream& os, const Graph& g);

struct ComponentSummary {
    std::vector<std::size_t> sizes;  // descending
    std::size_t isolated_count = 0;
    bool connected = true;
    double giant_fraction = 0.0;
};

std::size_t count_isolated(const Graph& g);
bool is_connected(const Graph& g);
ComponentSummary components(const Graph& g);

/// Disjoint-set forest with path halving and union by size.
class UnionFind {
 public:
    explicit UnionFind(std::size_t n);

    std::size_t find(std::size_t x);
    bool unite(std::size_t a, std::size_t b);
    std::size_t size_of(std::size_t x) { return size_[find(x)]; }
    std::size_t sets() const { return sets_; }

 private:
    std::vector<std::size_t> parent_;
    std::vector<std::size_t> size_;
    std::size_t sets_;
};

}  // namespace keygraph

#endif  // KEYGRAPH_GRAPH_HPP_
