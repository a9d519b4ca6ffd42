#include <doctest.h>

#include <atomic>
#include <cmath>
#include <stdexcept>

#include "keygraph/montecarlo.hpp"

using namespace keygraph;

namespace {

ExperimentConfig small_config(double alpha, std::size_t trials = 40) {
    ExperimentConfig c;
    c.n = 120;
    c.profile = {{0.5, 0.5}, {12, 20}, 1000};
    c.channel = ChannelModel::on_off(alpha);
    c.trials = trials;
    c.master_seed = 3;
    return c;
}

void check_same(const ModelEstimate& a, const ModelEstimate& b) {
    CHECK(a.model == b.model);
    CHECK(a.trials == b.trials);
    CHECK(a.no_isolated == b.no_isolated);
    CHECK(a.connected == b.connected);
    CHECK(a.coincide == b.coincide);
    CHECK(a.mean_giant_fraction == b.mean_giant_fraction);
}

}  // namespace

TEST_CASE("wilson half-width") {
    // Reference values from statsmodels proportion_confint(method="wilson").
    CHECK(wilson_half_width(0, 10) == doctest::Approx(0.13876639993144463).epsilon(1e-12));
    CHECK(wilson_half_width(400, 800) == doctest::Approx(0.034564708177836634).epsilon(1e-12));
    CHECK(wilson_half_width(800, 800) == doctest::Approx(0.002389438102838016).epsilon(1e-12));
    CHECK(wilson_half_width(0, 0) == 0.0);
}

TEST_CASE("parallel_for") {
    for(unsigned threads : {0u, 1u, 3u, 8u}) {
        std::vector<std::atomic<int>> hits(257);
        parallel_for(hits.size(), threads, [&](std::size_t i) { hits[i].fetch_add(1); });
        for(auto& h : hits) {
            CHECK(h.load() == 1);
        }
    }
    for(unsigned threads : {1u, 4u}) {
        try {
            parallel_for(100, threads, [](std::size_t i) {
                if(i % 10 == 7) throw std::runtime_error(std::to_string(i));
            });
            FAIL("expected an exception");
        } catch(const std::runtime_error& e) {
            CHECK(std::string(e.what()) == "7");
        }
    }
    parallel_for(0, 4, [](std::size_t) { FAIL("no work expected"); });
}

TEST_CASE("run_trial degenerate channels") {
    SUBCASE("everything connected") {
        ExperimentConfig c;
        c.n = 50;
        c.profile = {{1.0}, {8}, 8};
        c.channel = ChannelModel::on_off(1.0);
        c.trials = 3;
        const auto o = run_trial(c, 2);
        CHECK(o.primary.connected);
        CHECK(o.primary.isolated_count == 0);
        CHECK(o.primary.giant_fraction == 1.0);
        CHECK_FALSE(o.disk.has_value());
    }
    SUBCASE("empty channel") {
        const auto o = run_trial(small_config(0.0), 0);
        CHECK(o.primary.isolated_count == 120);
        CHECK_FALSE(o.primary.connected);
        CHECK(o.primary.giant_fraction == doctest::Approx(1.0 / 120));
    }
    SUBCASE("index out of range") { CHECK_THROWS_AS(run_trial(small_config(0.5), 40), std::out_of_range); }
}

TEST_CASE("run_trial is reproducible") {
    auto c = small_config(0.3);
    c.paired_disk = true;
    const auto a = run_trial(c, 5);
    const auto b = run_trial(c, 5);
    CHECK(a.primary.isolated_count == b.primary.isolated_count);
    CHECK(a.primary.connected == b.primary.connected);
    CHECK(a.primary.giant_fraction == b.primary.giant_fraction);
    REQUIRE(a.disk.has_value());
    REQUIRE(b.disk.has_value());
    CHECK(a.disk->isolated_count == b.disk->isolated_count);
    CHECK(a.disk->giant_fraction == b.disk->giant_fraction);

    // The primary observation does not depend on whether a twin is drawn.
    c.paired_disk = false;
    const auto solo = run_trial(c, 5);
    CHECK(solo.primary.giant_fraction == a.primary.giant_fraction);
    CHECK(solo.primary.isolated_count == a.primary.isolated_count);
}

TEST_CASE("trial_graph matches run_trial") {
    const auto c = small_config(0.4);
    for(std::size_t t = 0; t < 5; ++t) {
        const auto s = components(trial_graph(c, t));
        const auto o = run_trial(c, t);
        CHECK(s.isolated_count == o.primary.isolated_count);
        CHECK(s.connected == o.primary.connected);
    }
}

TEST_CASE("estimate") {
    SUBCASE("certain connectivity") {
        ExperimentConfig c;
        c.n = 30;
        c.profile = {{1.0}, {4}, 4};
        c.channel = ChannelModel::on_off(1.0);
        c.trials = 17;
        const auto e = estimate(c);
        CHECK(e.primary.p_connected == 1.0);
        CHECK(e.primary.p_no_isolated == 1.0);
        CHECK(e.primary.coincide == 17);
    }
    SUBCASE("empty channel") {
        const auto e = estimate(small_config(0.0, 10));
        CHECK(e.primary.p_connected == 0.0);
        CHECK(e.primary.p_no_isolated == 0.0);
    }
    SUBCASE("connected implies no isolated nodes") {
        const auto e = estimate(small_config(0.5, 60));
        CHECK(e.primary.connected <= e.primary.no_isolated);
        CHECK(e.primary.p_connected == doctest::Approx(static_cast<double>(e.primary.connected) / 60));
        CHECK(e.primary.ci_half_width_95 == doctest::Approx(wilson_half_width(e.primary.connected, 60)));
    }
    SUBCASE("thread count does not matter") {
        auto c = small_config(0.35, 50);
        c.paired_disk = true;
        const auto one = estimate(c, 1);
        for(unsigned threads : {2u, 5u, 0u}) {
            const auto many = estimate(c, threads);
            check_same(one.primary, many.primary);
            REQUIRE(many.disk.has_value());
            check_same(*one.disk, *many.disk);
        }
        CHECK(one.disk->model == "disk");
        CHECK(one.primary.model == "onoff");
    }
    SUBCASE("disk channel") {
        auto c = small_config(0.0, 10);
        c.channel = ChannelModel::disk(0.3);
        const auto e = estimate(c);
        CHECK(e.primary.model == "disk");
        CHECK_FALSE(e.disk.has_value());
    }
}

TEST_CASE("config validation") {
    auto c = small_config(0.3);
    c.trials = 0;
    CHECK_THROWS_AS(c.validate(), std::invalid_argument);
    c = small_config(0.9);
    c.paired_disk = true;
    CHECK_THROWS_AS(c.validate(), std::invalid_argument);
    c = small_config(0.3);
    c.channel = ChannelModel::disk(0.2);
    c.paired_disk = true;
    CHECK_THROWS_AS(c.validate(), std::invalid_argument);
    c = small_config(0.3);
    c.profile.ring_sizes = {20, 12};
    CHECK_THROWS_AS(estimate(c), std::invalid_argument);
}

TEST_CASE("sweep_k1") {
    ExperimentConfig base = small_config(0.0, 20);
    base.n = 500;
    base.profile = {{0.5, 0.5}, {}, 10000};
    const auto rule = RingRule::offsets({0, 5});

    SUBCASE("single cell equals estimate") {
        const auto cells = sweep_k1(base, {20}, rule, {0.4});
        REQUIRE(cells.size() == 1);
        REQUIRE(cells[0].result.has_value());
        auto c = base;
        c.profile.ring_sizes = {20, 25};
        c.channel = ChannelModel::on_off(0.4);
        check_same(cells[0].result->primary, estimate(c).primary);
        CHECK(cells[0].critical_k1 == 17);
    }
    SUBCASE("ordering, markers and failed cells") {
        base.trials = 2;
        base.paired_disk = true;
        const auto cells = sweep_k1(base, {9998, 10, 5}, rule, {0.2, 0.8});
        REQUIRE(cells.size() == 6);
        CHECK(cells[0].ring_sizes == std::vector<KeyCount>{5, 10});
        CHECK(cells[2].ring_sizes == std::vector<KeyCount>{10, 15});
        CHECK(cells[0].critical_k1 == 25);
        CHECK(cells[1].critical_k1 == 12);
        CHECK(cells[0].disk_error.empty());
        REQUIRE(cells[0].result.has_value());
        CHECK(cells[0].result->disk.has_value());
        // alpha = 0.8 has no valid disk twin.
        CHECK_FALSE(cells[1].disk_error.empty());
        REQUIRE(cells[1].result.has_value());
        CHECK_FALSE(cells[1].result->disk.has_value());
        // Rings beyond the pool fail the cell, not the sweep.
        CHECK_FALSE(cells[4].error.empty());
        CHECK_FALSE(cells[4].result.has_value());
    }
}

TEST_CASE("sweep_alpha") {
    ExperimentConfig base = small_config(0.0, 5);
    const auto cells = sweep_alpha(base, {{12, 20}, {16, 16}}, {0.1, 0.6});
    REQUIRE(cells.size() == 4);
    CHECK(cells[1].ring_sizes == std::vector<KeyCount>{12, 20});
    CHECK(cells[1].alpha == 0.6);
    CHECK(cells[2].ring_sizes == std::vector<KeyCount>{16, 16});
    CHECK_FALSE(cells[0].critical_k1.has_value());

    base.channel = ChannelModel::disk(0.1);
    const auto disk = sweep_alpha(base, {{12, 20}}, {0.2, 0.9});
    REQUIRE(disk[0].result.has_value());
    CHECK(disk[0].result->primary.model == "disk");
    CHECK_FALSE(disk[1].error.empty());
}

TEST_CASE("minimum-ring pairs") {
    for(const auto& pair : equal_mean_pairs()) {
        CHECK(0.5 * pair[0] + 0.5 * pair[1] == 40.0);
    }
    CHECK(literal_pairs()[1] == std::vector<KeyCount>{20, 50});
}

TEST_CASE("percolation_experiment") {
    const NetworkProfile profile{{1.0}, {12}, 400};
    const std::size_t n = 150;
    const double lambda1 = edge_prob(12, 12, 400);
    const double alpha_hat = std::log(150.0) / (150.0 * lambda1);
    const auto table = percolation_experiment(profile, n, {0.0, alpha_hat, 1.0}, 20, 9);
    CHECK(table.lambda1 == doctest::Approx(lambda1));
    CHECK(table.alpha_hat == doctest::Approx(alpha_hat));
    REQUIRE(table.rows.size() == 3);
    CHECK(table.rows[0].mean_giant_fraction == doctest::Approx(1.0 / n));
    CHECK(table.rows[0].p_connected == 0.0);
    CHECK_FALSE(table.rows[0].at_threshold);
    CHECK(table.rows[1].at_threshold);
    CHECK_FALSE(table.rows[2].at_threshold);

    // alpha = 1 leaves the key graph untouched.
    ExperimentConfig c;
    c.n = n;
    c.profile = profile;
    c.channel = ChannelModel::on_off(1.0);
    c.trials = 20;
    c.master_seed = 9;
    double giant = 0.0;
    for(std::size_t t = 0; t < 20; ++t) giant += components(trial_graph(c, t)).giant_fraction;
    CHECK(table.rows[2].mean_giant_fraction == doctest::Approx(giant / 20));
}
