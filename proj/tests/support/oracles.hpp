// Independent reference implementations used only by tests.

#ifndef KEYGRAPH_TESTS_ORACLES_HPP_
#define KEYGRAPH_TESTS_ORACLES_HPP_

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <functional>
#include <queue>
#include <utility>
#include <vector>

namespace oracle {

/// Fraction of (ring_i, ring_j) subset pairs of {0..pool-1} that intersect,
/// by listing every pair. pool <= 16.
inline double enumerated_edge_prob(int k_i, int k_j, int pool) {
    std::vector<std::uint32_t> a;
    std::vector<std::uint32_t> b;
    for(std::uint32_t mask = 0; mask < (1u << pool); ++mask) {
        const int bits = std::popcount(mask);
        if(bits == k_i) a.push_back(mask);
        if(bits == k_j) b.push_back(mask);
    }
    std::uint64_t hits = 0;
    for(auto x : a) {
        for(auto y : b) {
            hits += (x & y) != 0 ? 1 : 0;
        }
    }
    return static_cast<double>(hits) / (static_cast<double>(a.size()) * static_cast<double>(b.size()));
}

inline double log_choose(double n, double k) { return std::lgamma(n + 1) - std::lgamma(k + 1) - std::lgamma(n - k + 1); }

/// 1 - C(P - k_i, k_j) / C(P, k_j) through log-gamma.
inline double lgamma_edge_prob(long k_i, long k_j, long pool) {
    if(k_i + k_j > pool) {
        return 1.0;
    }
    const double p = static_cast<double>(pool);
    return -std::expm1(log_choose(p - static_cast<double>(k_i), static_cast<double>(k_j)) -
                       log_choose(p, static_cast<double>(k_j)));
}

/// Mean key-sharing probability of class `cls` against the class mix.
inline double lgamma_lambda(std::size_t cls, const std::vector<double>& mu, const std::vector<long>& rings, long pool) {
    double sum = 0.0;
    for(std::size_t j = 0; j < mu.size(); ++j) {
        sum += mu[j] * lgamma_edge_prob(rings[cls], rings[j], pool);
    }
    return sum;
}

/// Component sizes (descending) by breadth-first search over an adjacency list.
inline std::vector<std::size_t> bfs_component_sizes(std::size_t n, const std::vector<std::pair<std::uint32_t, std::uint32_t>>& edges) {
    std::vector<std::vector<std::uint32_t>> adj(n);
    for(const auto& [u, v] : edges) {
        adj[u].push_back(v);
        adj[v].push_back(u);
    }
    std::vector<char> seen(n, 0);
    std::vector<std::size_t> sizes;
    for(std::size_t s = 0; s < n; ++s) {
        if(seen[s]) continue;
        std::size_t size = 0;
        std::queue<std::uint32_t> q;
        q.push(static_cast<std::uint32_t>(s));
        seen[s] = 1;
        while(!q.empty()) {
            const auto u = q.front();
            q.pop();
            ++size;
            for(auto v : adj[u]) {
                if(!seen[v]) {
                    seen[v] = 1;
                    q.push(v);
                }
            }
        }
        sizes.push_back(size);
    }
    std::sort(sizes.begin(), sizes.end(), std::greater<>());
    return sizes;
}

}  // namespace oracle

#endif  // KEYGRAPH_TESTS_ORACLES_HPP_
