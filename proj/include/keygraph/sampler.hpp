/**
 * Seeded generation of class assignments, key rings and the three graph
 * families (random key graph, Erdos-Renyi channel graph, random geometric
 * graph on the unit torus).
 */

#ifndef KEYGRAPH_SAMPLER_HPP_
#define KEYGRAPH_SAMPLER_HPP_

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "keygraph/graph.hpp"
#include "keygraph/rng.hpp"
#include "keygraph/theory.hpp"

namespace keygraph {

using Key = std::uint32_t;

/**
 * Class index and key ring of every node. Classes are 0-based (0..r-1) and
 * keys are 0-based pool slots (0..P-1). Rings are stored back to back; ring
 * x occupies keys[offsets[x], offsets[x+1]) in ascending order.
 */
struct KeyRingAssignment {
    std::vector<std::uint32_t> classes;
    std::vector<std::size_t> offsets{0};
    std::vector<Key> keys;
    KeyCount pool = 0;

    std::size_t n() const { return classes.size(); }
    std::span<const Key> ring(std::size_t x) const {
        return {keys.data() + offsets[x], keys.data() + offsets[x + 1]};
    }
};

using Point = std::array<double, 2>;

/// Node positions in [0,1)^2 with toroidal wraparound.
struct Positions {
    std::vector<Point> coords;
};

enum class KeyGraphMethod {
    InvertedIndex,  // key -> nodes buckets, O(nK + edges)
    Pairwise        // bitset AND (P <= 2^16) or sorted-merge per node pair
};

std::vector<std::uint32_t> sample_classes(std::size_t n, std::span<const double> mu, const RandomStream& stream);

KeyRingAssignment sample_key_rings(std::span<const std::uint32_t> classes, const NetworkProfile& profile,
                                   const RandomStream& stream);

Graph build_key_graph(const KeyRingAssignment& assignment, KeyGraphMethod method = KeyGraphMethod::InvertedIndex);

Graph sample_er(std::size_t n, double alpha, const RandomStream& stream);

Positions sample_positions(std::size_t n, const RandomStream& stream);

double torus_distance(const Point& a, const Point& b);

Graph rgg_from_positions(const Positions& positions, double rho);

Graph sample_rgg(std::size_t n, double rho, const RandomStream& stream);

}  // namespace keygraph

#endif  // KEYGRAPH_SAMPLER_HPP_
