#include "keygraph/graph.hpp"

#include <algorithm>
#include <numeric>
#include <ostream>
#include <stdexcept>

namespace keygraph {

Graph::Graph(std::size_t n, std::vector<Edge> edges) : n_(n), edges_(std::move(edges)) {
    bool sorted = true;
    for(std::size_t i = 0; i < edges_.size(); ++i) {
        auto& e = edges_[i];
        if(e.first == e.second) {
            throw std::invalid_argument("graph: self-loops are not allowed");
        }
        if(e.first >= n_ || e.second >= n_) {
            throw std::invalid_argument("graph: edge endpoint out of range");
        }
        if(e.first > e.second) {
            std::swap(e.first, e.second);
        }
        if(i > 0 && !(edges_[i - 1] < e)) {
            sorted = false;
        }
    }
    if(!sorted) {
        std::sort(edges_.begin(), edges_.end());
        edges_.erase(std::unique(edges_.begin(), edges_.end()), edges_.end());
    }
}

Graph Graph::empty(std::size_t n) { return Graph(n, {}); }

Graph Graph::complete(std::size_t n) {
    std::vector<Edge> edges;
    edges.reserve(n * (n > 0 ? n - 1 : 0) / 2);
    for(Vertex u = 0; u < n; ++u) {
        for(Vertex v = u + 1; v < n; ++v) {
            edges.emplace_back(u, v);
        }
    }
    return Graph(n, std::move(edges));
}

bool Graph::has_edge(Vertex u, Vertex v) const {
    if(u > v) {
        std::swap(u, v);
    }
    return std::binary_search(edges_.begin(), edges_.end(), Edge{u, v});
}

std::vector<std::size_t> Graph::degrees() const {
    std::vector<std::size_t> deg(n_, 0);
    for(const auto& [u, v] : edges_) {
        ++deg[u];
        ++deg[v];
    }
    return deg;
}

Adjacency::Adjacency(const Graph& g) : offsets_(g.n() + 1, 0), neighbors_(2 * g.edge_count()) {
    for(const auto& [u, v] : g.edges()) {
        ++offsets_[u + 1];
        ++offsets_[v + 1];
    }
    std::partial_sum(offsets_.begin(), offsets_.end(), offsets_.begin());
    std::vector<std::size_t> cursor(offsets_.begin(), offsets_.end() - 1);
    // Edges are sorted, so lower neighbours (as second) come out in order
    // first, then higher neighbours (as first).
    for(const auto& [u, v] : g.edges()) {
        neighbors_[cursor[v]++] = u;
    }
    for(const auto& [u, v] : g.edges()) {
        neighbors_[cursor[u]++] = v;
    }
}

Graph intersect(const Graph& g1, const Graph& g2) {
    if(g1.n() != g2.n()) {
        throw std::invalid_argument("intersect: graphs have different vertex counts");
    }
    std::vector<Edge> common;
    common.reserve(std::min(g1.edge_count(), g2.edge_count()));
    std::set_intersection(g1.edges().begin(), g1.edges().end(), g2.edges().begin(), g2.edges().end(),
                          std::back_inserter(common));
    return Graph(g1.n(), std::move(common));
}

void write_edge_list(std::ostream& os, const Graph& g) {
    for(const auto& [u, v] : g.edges()) {
        os << u << ' ' << v << '\n';
    }
}

UnionFind::UnionFind(std::size_t n) : parent_(n), size_(n, 1), sets_(n) {
    std::iota(parent_.begin(), parent_.end(), std::size_t{0});
}

std::size_t UnionFind::find(std::size_t x) {
    while(parent_[x] != x) {
        parent_[x] = parent_[parent_[x]];
        x = parent_[x];
    }
    return x;
}

bool UnionFind::unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if(a == b) {
        return false;
    }
    if(size_[a] < size_[b]) {
        std::swap(a, b);
    }
    parent_[b] = a;
    size_[a] += size_[b];
    --sets_;
    return true;
}

std::size_t count_isolated(const Graph& g) {
    const auto deg = g.degrees();
    return static_cast<std::size_t>(std::count(deg.begin(), deg.end(), std::size_t{0}));
}

bool is_connected(const Graph& g) {
    if(g.n() <= 1) {
        return true;
    }
    if(g.edge_count() + 1 < g.n()) {
        return false;
    }
    UnionFind uf(g.n());
    for(const auto& [u, v] : g.edges()) {
        if(uf.unite(u, v) && uf.sets() == 1) {
            return true;
        }
    }
    return uf.sets() == 1;
}

ComponentSummary components(const Graph& g) {
    ComponentSummary summary;
    const auto n = g.n();
    UnionFind uf(n);
    for(const auto& [u, v] : g.edges()) {
        uf.unite(u, v);
    }
    for(std::size_t v = 0; v < n; ++v) {
        if(uf.find(v) == v) {
            summary.sizes.push_back(uf.size_of(v));
        }
    }
    std::sort(summary.sizes.begin(), summary.sizes.end(), std::greater<>());
    summary.isolated_count = count_isolated(g);
    summary.connected = n <= 1 || summary.sizes.size() == 1;
    summary.giant_fraction =
        n == 0 ? 0.0 : static_cast<double>(summary.sizes.front()) / static_cast<double>(n);
    return summary;
}

}  // namespace keygraph
