#include "keygraph/sampler.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace keygraph {

namespace {

constexpr KeyCount kBitsetPoolLimit = KeyCount{1} << 16;

inline double torus_distance_sq(const Point& a, const Point& b) {
    double dx = std::abs(a[0] - b[0]);
    double dy = std::abs(a[1] - b[1]);
    dx = std::min(dx, 1.0 - dx);
    dy = std::min(dy, 1.0 - dy);
    return dx * dx + dy * dy;
}

bool sorted_rings_intersect(std::span<const Key> a, std::span<const Key> b) {
    auto ia = a.begin();
    auto ib = b.begin();
    while(ia != a.end() && ib != b.end()) {
        if(*ia < *ib) {
            ++ia;
        } else if(*ib < *ia) {
            ++ib;
        } else {
            return true;
        }
    }
    return false;
}

Graph key_graph_inverted(const KeyRingAssignment& a) {
    const auto n = a.n();
    const auto pool = static_cast<std::size_t>(a.pool);
    std::vector<std::size_t> start(pool + 1, 0);
    for(Key k : a.keys) {
        ++start[k + 1];
    }
    for(std::size_t k = 0; k < pool; ++k) {
        start[k + 1] += start[k];
    }
    std::vector<Vertex> holders(a.keys.size());
    std::vector<std::size_t> cursor(start.begin(), start.end() - 1);
    for(std::size_t x = 0; x < n; ++x) {
        for(Key k : a.ring(x)) {
            holders[cursor[k]++] = static_cast<Vertex>(x);
        }
    }

    // stamp[y] == x + 1 marks y as already linked to x.
    std::vector<std::size_t> stamp(n, 0);
    std::vector<Edge> edges;
    for(std::size_t x = 0; x < n; ++x) {
        const auto first = edges.size();
        for(Key k : a.ring(x)) {
            for(std::size_t h = start[k]; h < start[k + 1]; ++h) {
                const Vertex y = holders[h];
                if(y > x && stamp[y] != x + 1) {
                    stamp[y] = x + 1;
                    edges.emplace_back(static_cast<Vertex>(x), y);
                }
            }
        }
        std::sort(edges.begin() + static_cast<std::ptrdiff_t>(first), edges.end());
    }
    // Already sorted: x ascending, y sorted within each x.
    return Graph(n, std::move(edges));
}

Graph key_graph_pairwise(const KeyRingAssignment& a) {
    const auto n = a.n();
    std::vector<Edge> edges;
    if(a.pool <= kBitsetPoolLimit) {
        const std::size_t words = (static_cast<std::size_t>(a.pool) + 63) / 64;
        std::vector<std::uint64_t> bits(n * words, 0);
        for(std::size_t x = 0; x < n; ++x) {
            for(Key k : a.ring(x)) {
                bits[x * words + k / 64] |= std::uint64_t{1} << (k % 64);
            }
        }
        for(std::size_t x = 0; x < n; ++x) {
            const auto* bx = bits.data() + x * words;
            for(std::size_t y = x + 1; y < n; ++y) {
                const auto* by = bits.data() + y * words;
                for(std::size_t w = 0; w < words; ++w) {
                    if((bx[w] & by[w]) != 0) {
                        edges.emplace_back(static_cast<Vertex>(x), static_cast<Vertex>(y));
                        break;
                    }
                }
            }
        }
    } else {
        for(std::size_t x = 0; x < n; ++x) {
            for(std::size_t y = x + 1; y < n; ++y) {
                if(sorted_rings_intersect(a.ring(x), a.ring(y))) {
                    edges.emplace_back(static_cast<Vertex>(x), static_cast<Vertex>(y));
                }
            }
        }
    }
    return Graph(n, std::move(edges));
}

}  // namespace

std::vector<std::uint32_t> sample_classes(std::size_t n, std::span<const double> mu, const RandomStream& stream) {
    validate_mix(mu);
    std::vector<double> cumulative(mu.size());
    double total = 0.0;
    for(std::size_t i = 0; i < mu.size(); ++i) {
        total += mu[i];
        cumulative[i] = total;
    }
    auto eng = stream.engine();
    std::vector<std::uint32_t> classes(n);
    const auto last = static_cast<std::uint32_t>(mu.size() - 1);
    for(auto& c : classes) {
        // Scale by the actual total so a mix summing to 1 - 1e-10 still
        // covers [0, 1).
        const double u = eng.uniform01() * total;
        const auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u);
        c = std::min(static_cast<std::uint32_t>(it - cumulative.begin()), last);
    }
    return classes;
}

KeyRingAssignment sample_key_rings(std::span<const std::uint32_t> classes, const NetworkProfile& profile,
                                   const RandomStream& stream) {
    profile.validate();
    const auto r = profile.classes();
    KeyRingAssignment out;
    out.pool = profile.pool;
    out.classes.assign(classes.begin(), classes.end());
    out.offsets.reserve(classes.size() + 1);

    std::size_t total = 0;
    for(auto c : classes) {
        if(c >= r) {
            throw std::invalid_argument("sample_key_rings: class index out of range");
        }
        total += static_cast<std::size_t>(profile.ring_sizes[c]);
    }
    out.keys.reserve(total);

    auto eng = stream.engine();
    const auto pool = static_cast<std::uint64_t>(profile.pool);
    std::vector<char> taken(pool, 0);
    for(auto c : classes) {
        const auto k = static_cast<std::uint64_t>(profile.ring_sizes[c]);
        const auto first = out.keys.size();
        // Floyd's algorithm: uniform k-subset of {0..pool-1} in k draws.
        for(std::uint64_t j = pool - k; j < pool; ++j) {
            const auto t = eng.below(j + 1);
            const auto pick = taken[t] ? j : t;
            taken[pick] = 1;
            out.keys.push_back(static_cast<Key>(pick));
        }
        auto ring_begin = out.keys.begin() + static_cast<std::ptrdiff_t>(first);
        std::sort(ring_begin, out.keys.end());
        for(auto it = ring_begin; it != out.keys.end(); ++it) {
            taken[*it] = 0;
        }
        out.offsets.push_back(out.keys.size());
    }
    return out;
}

Graph build_key_graph(const KeyRingAssignment& assignment, KeyGraphMethod method) {
    return method == KeyGraphMethod::InvertedIndex ? key_graph_inverted(assignment) : key_graph_pairwise(assignment);
}

Graph sample_er(std::size_t n, double alpha, const RandomStream& stream) {
    if(!(alpha >= 0.0 && alpha <= 1.0)) {
        throw std::invalid_argument("sample_er: alpha must lie in [0, 1]");
    }
    if(alpha == 0.0) {
        return Graph::empty(n);
    }
    if(alpha == 1.0) {
        return Graph::complete(n);
    }
    auto eng = stream.engine();
    std::vector<Edge> edges;
    std::size_t count = 0;
    for(Vertex u = 0; u < n; ++u) {
        // Branch-free append: write every candidate, advance on success.
        edges.resize(count + (n - u - 1));
        for(Vertex v = u + 1; v < n; ++v) {
            edges[count] = {u, v};
            count += eng.bernoulli(alpha) ? 1 : 0;
        }
    }
    edges.resize(count);
    return Graph(n, std::move(edges));
}

Positions sample_positions(std::size_t n, const RandomStream& stream) {
    auto eng = stream.engine();
    Positions pos;
    pos.coords.resize(n);
    for(auto& p : pos.coords) {
        p[0] = eng.uniform01();
        p[1] = eng.uniform01();
    }
    return pos;
}

double torus_distance(const Point& a, const Point& b) { return std::sqrt(torus_distance_sq(a, b)); }

Graph rgg_from_positions(const Positions& positions, double rho) {
    if(!(rho > 0.0 && rho < 0.5)) {
        throw std::invalid_argument("rgg: disk radius must lie in (0, 0.5)");
    }
    const auto& pts = positions.coords;
    for(const auto& p : pts) {
        if(!(p[0] >= 0.0 && p[0] < 1.0 && p[1] >= 0.0 && p[1] < 1.0)) {
            throw std::invalid_argument("rgg: positions must lie in [0, 1)^2");
        }
    }
    const double rho_sq = rho * rho;
    const auto n = pts.size();
    std::vector<Edge> edges;
    std::size_t count = 0;
    for(Vertex u = 0; u < n; ++u) {
        edges.resize(count + (n - u - 1));
        for(Vertex v = u + 1; v < n; ++v) {
            edges[count] = {u, v};
            count += torus_distance_sq(pts[u], pts[v]) < rho_sq ? 1 : 0;
        }
    }
    edges.resize(count);
    return Graph(n, std::move(edges));
}

Graph sample_rgg(std::size_t n, double rho, const RandomStream& stream) {
    if(!(rho > 0.0 && rho < 0.5)) {
        throw std::invalid_argument("rgg: disk radius must lie in (0, 0.5)");
    }
    return rgg_from_positions(sample_positions(n, stream), rho);
}

}  // namespace keygraph
