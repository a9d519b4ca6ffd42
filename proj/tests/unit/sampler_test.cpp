#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <set>

#include "keygraph/sampler.hpp"

using namespace keygraph;

namespace {

KeyRingAssignment rings_of(const std::vector<std::vector<Key>>& rings, KeyCount pool) {
    KeyRingAssignment a;
    a.pool = pool;
    for(const auto& r : rings) {
        a.classes.push_back(0);
        a.keys.insert(a.keys.end(), r.begin(), r.end());
        a.offsets.push_back(a.keys.size());
    }
    return a;
}

}  // namespace

TEST_CASE("sample_classes") {
    const std::vector<double> one{1.0};
    CHECK(sample_classes(5, one, {1, 0}) == std::vector<std::uint32_t>(5, 0));
    CHECK(sample_classes(0, one, {1, 0}).empty());

    const std::vector<double> half{0.5, 0.5};
    const std::size_t n = 100000;
    const auto c = sample_classes(n, half, {2024, 1});
    const double freq = static_cast<double>(std::count(c.begin(), c.end(), 0u)) / n;
    CHECK(std::abs(freq - 0.5) <= 3.0 * std::sqrt(0.25 / n));

    CHECK(sample_classes(50, half, {3, 3}) == sample_classes(50, half, {3, 3}));
    CHECK_THROWS_AS(sample_classes(5, std::vector<double>{0.5, 0.4}, {1, 0}), std::invalid_argument);
}

TEST_CASE("sample_key_rings forced cases") {
    SUBCASE("full pool") {
        const NetworkProfile p{{1.0}, {6}, 6};
        const std::vector<std::uint32_t> classes(4, 0);
        const auto a = sample_key_rings(classes, p, {1, 2});
        for(std::size_t x = 0; x < 4; ++x) {
            const auto r = a.ring(x);
            CHECK(std::vector<Key>(r.begin(), r.end()) == std::vector<Key>{0, 1, 2, 3, 4, 5});
        }
    }
    SUBCASE("single key pool") {
        const NetworkProfile p{{1.0}, {1}, 1};
        const auto a = sample_key_rings(std::vector<std::uint32_t>(3, 0), p, {1, 2});
        for(std::size_t x = 0; x < 3; ++x) {
            REQUIRE(a.ring(x).size() == 1);
            CHECK(a.ring(x)[0] == 0);
        }
    }
    SUBCASE("errors") {
        CHECK_THROWS_AS(sample_key_rings(std::vector<std::uint32_t>{0}, {{1.0}, {11}, 10}, {1, 2}), std::invalid_argument);
        CHECK_THROWS_AS(sample_key_rings(std::vector<std::uint32_t>{1}, {{1.0}, {3}, 10}, {1, 2}), std::invalid_argument);
    }
}

TEST_CASE("sample_key_rings structure") {
    const NetworkProfile p{{0.3, 0.7}, {4, 9}, 50};
    const auto classes = sample_classes(300, p.mu, {8, 1});
    const auto a = sample_key_rings(classes, p, {8, 2});
    REQUIRE(a.n() == 300);
    for(std::size_t x = 0; x < a.n(); ++x) {
        const auto r = a.ring(x);
        CHECK(static_cast<KeyCount>(r.size()) == p.ring_sizes[a.classes[x]]);
        CHECK(std::adjacent_find(r.begin(), r.end(), std::greater_equal<>()) == r.end());
        CHECK(r.back() < 50);
    }
}

TEST_CASE("key inclusion frequency is K/P") {
    const NetworkProfile p{{1.0}, {3}, 10};
    const std::size_t n = 100000;
    const auto a = sample_key_rings(std::vector<std::uint32_t>(n, 0), p, {77, 0});
    std::vector<std::size_t> counts(10, 0);
    for(Key k : a.keys) ++counts[k];
    const double se = std::sqrt(0.3 * 0.7 / n);
    for(std::size_t k = 0; k < 10; ++k) {
        CAPTURE(k);
        CHECK(std::abs(static_cast<double>(counts[k]) / n - 0.3) <= 3.0 * se);
    }
}

TEST_CASE("build_key_graph by inspection") {
    CHECK(build_key_graph(rings_of({{0}, {0}}, 5)) == Graph(2, {{0, 1}}));
    CHECK(build_key_graph(rings_of({{0}, {1}}, 5)) == Graph::empty(2));
    CHECK(build_key_graph(rings_of({{0, 1}, {1, 2}, {3, 4}}, 5)) == Graph(3, {{0, 1}}));
    CHECK(build_key_graph(rings_of({{0, 1}, {1, 2}, {3, 4}}, 5), KeyGraphMethod::Pairwise) == Graph(3, {{0, 1}}));
}

TEST_CASE("inverted index and pairwise construction agree") {
    std::mt19937_64 gen(12);
    for(int trial = 0; trial < 60; ++trial) {
        const std::size_t n = std::uniform_int_distribution<std::size_t>(0, 200)(gen);
        // Cover both the bitset path and the sorted-merge path.
        const KeyCount pool = trial % 3 == 0 ? std::uniform_int_distribution<KeyCount>(70000, 100000)(gen)
                                             : std::uniform_int_distribution<KeyCount>(20, 3000)(gen);
        const KeyCount k1 = std::uniform_int_distribution<KeyCount>(1, std::min<KeyCount>(pool / 4, 60))(gen);
        const KeyCount k2 = std::uniform_int_distribution<KeyCount>(k1, std::min<KeyCount>(pool / 2, 120))(gen);
        const NetworkProfile p{{0.4, 0.6}, {k1, k2}, pool};
        const RandomStream s{5, static_cast<std::uint64_t>(trial)};
        const auto a = sample_key_rings(sample_classes(n, p.mu, s.child(1)), p, s.child(2));
        CAPTURE(trial);
        CHECK(build_key_graph(a, KeyGraphMethod::InvertedIndex) == build_key_graph(a, KeyGraphMethod::Pairwise));
    }
}

TEST_CASE("single-class key graph edge frequency") {
    const NetworkProfile p{{1.0}, {5}, 100};
    const std::size_t n = 100;
    const int seeds = 50;
    std::size_t edges = 0;
    for(int s = 0; s < seeds; ++s) {
        const auto a = sample_key_rings(std::vector<std::uint32_t>(n, 0), p, {31, static_cast<std::uint64_t>(s)});
        edges += build_key_graph(a).edge_count();
    }
    const double pairs = seeds * n * (n - 1) / 2.0;
    const double expected = edge_prob(5, 5, 100);
    // Key-graph edges are pairwise independent, so the binomial variance applies.
    const double se = std::sqrt(expected * (1.0 - expected) / pairs);
    CHECK(std::abs(edges / pairs - expected) <= 3.0 * se);
}

TEST_CASE("class-pair edge frequency of the intersection graph") {
    const NetworkProfile p{{0.5, 0.5}, {4, 8}, 200};
    const double alpha = 0.5;
    const std::size_t n = 200;
    double pairs[2][2] = {{0, 0}, {0, 0}};
    double hits[2][2] = {{0, 0}, {0, 0}};
    for(std::uint64_t s = 0; s < 40; ++s) {
        const RandomStream stream{17, s};
        const auto classes = sample_classes(n, p.mu, stream.child(1));
        const auto a = sample_key_rings(classes, p, stream.child(2));
        const auto g = intersect(build_key_graph(a), sample_er(n, alpha, stream.child(3)));
        for(std::size_t x = 0; x < n; ++x) {
            for(std::size_t y = x + 1; y < n; ++y) {
                pairs[std::min(classes[x], classes[y])][std::max(classes[x], classes[y])] += 1;
            }
        }
        for(const auto& [u, v] : g.edges()) {
            hits[std::min(classes[u], classes[v])][std::max(classes[u], classes[v])] += 1;
        }
    }
    for(int i = 0; i < 2; ++i) {
        for(int j = i; j < 2; ++j) {
            const double expected = alpha * edge_prob(p.ring_sizes[i], p.ring_sizes[j], p.pool);
            const double se = std::sqrt(expected * (1.0 - expected) / pairs[i][j]);
            CAPTURE(i);
            CAPTURE(j);
            CHECK(std::abs(hits[i][j] / pairs[i][j] - expected) <= 3.0 * se);
        }
    }
}

TEST_CASE("sample_er") {
    CHECK(sample_er(10, 0.0, {1, 1}) == Graph::empty(10));
    CHECK(sample_er(10, 1.0, {1, 1}) == Graph::complete(10));
    CHECK(sample_er(0, 0.5, {1, 1}).edge_count() == 0);
    CHECK_THROWS_AS(sample_er(10, 1.1, {1, 1}), std::invalid_argument);
    CHECK(sample_er(50, 0.3, {4, 4}) == sample_er(50, 0.3, {4, 4}));

    const std::size_t n = 500;
    const int seeds = 100;
    double total = 0.0;
    for(int s = 0; s < seeds; ++s) {
        total += static_cast<double>(sample_er(n, 0.2, {6, static_cast<std::uint64_t>(s)}).edge_count());
    }
    const double pairs = n * (n - 1) / 2.0;
    const double se = std::sqrt(pairs * 0.2 * 0.8 / seeds);
    CHECK(std::abs(total / seeds - 24950.0) <= 3.0 * se);
}

TEST_CASE("torus distance and disk graph") {
    CHECK(torus_distance({0.1, 0.1}, {0.9, 0.1}) == doctest::Approx(0.2));
    CHECK(torus_distance({0.1, 0.1}, {0.5, 0.1}) == doctest::Approx(0.4));
    CHECK(torus_distance({0.05, 0.95}, {0.95, 0.05}) == doctest::Approx(std::sqrt(0.02)));

    CHECK(rgg_from_positions({{{0.1, 0.1}, {0.9, 0.1}}}, 0.25) == Graph(2, {{0, 1}}));
    CHECK(rgg_from_positions({{{0.1, 0.1}, {0.5, 0.1}}}, 0.25) == Graph::empty(2));
    CHECK(rgg_from_positions({{{0.3, 0.3}, {0.3, 0.3}}}, 0.01) == Graph(2, {{0, 1}}));
    // Strict inequality: distance exactly 0.25 is not an edge.
    CHECK(rgg_from_positions({{{0.0, 0.0}, {0.25, 0.0}}}, 0.25) == Graph::empty(2));

    CHECK_THROWS_AS(rgg_from_positions({{{0.1, 0.1}}}, 0.5), std::invalid_argument);
    CHECK_THROWS_AS(rgg_from_positions({{{0.1, 0.1}}}, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(rgg_from_positions({{{1.1, 0.1}}}, 0.2), std::invalid_argument);
    CHECK_THROWS_AS(sample_rgg(5, 0.6, {1, 1}), std::invalid_argument);
}

TEST_CASE("sample_rgg") {
    CHECK(sample_rgg(1, 0.3, {1, 1}) == Graph::empty(1));
    CHECK(sample_rgg(80, 0.1, {2, 9}) == sample_rgg(80, 0.1, {2, 9}));

    const double rho = 0.252313;
    const int samples = 100000;
    int hits = 0;
    for(int s = 0; s < samples; ++s) {
        hits += static_cast<int>(sample_rgg(2, rho, {13, static_cast<std::uint64_t>(s)}).edge_count());
    }
    const double expected = std::numbers::pi * rho * rho;
    CHECK(std::abs(static_cast<double>(hits) / samples - expected) <= 3.0 * std::sqrt(expected * (1 - expected) / samples));

    const auto pos = sample_positions(300, {4, 4});
    for(const auto& pt : pos.coords) {
        CHECK(pt[0] >= 0.0);
        CHECK(pt[0] < 1.0);
        CHECK(pt[1] >= 0.0);
        CHECK(pt[1] < 1.0);
    }
}
