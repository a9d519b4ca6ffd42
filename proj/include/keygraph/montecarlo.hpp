/**
 * Trial engine and sweep drivers for the connectivity experiments.
 *
 * Trial t of an experiment draws everything from RandomStream{seed, t}, so
 * results depend only on (config, seed) and never on the worker count or
 * the order in which trials finish.
 */

#ifndef KEYGRAPH_MONTECARLO_HPP_
#define KEYGRAPH_MONTECARLO_HPP_

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "keygraph/graph.hpp"
#include "keygraph/theory.hpp"

namespace keygraph {

struct ExperimentConfig {
    std::size_t n = 500;
    NetworkProfile profile;
    ChannelModel channel;
    std::size_t trials = 800;
    std::uint64_t master_seed = 1;
    /// With an on/off channel, also intersect the same key graph with a disk
    /// graph of radius sqrt(alpha/pi).
    bool paired_disk = false;

    void validate() const;
};

struct Observation {
    std::size_t isolated_count = 0;
    bool connected = false;
    double giant_fraction = 0.0;
};

struct TrialOutcome {
    Observation primary;
    std::optional<Observation> disk;  // paired twin
};

struct ModelEstimate {
    std::string model;  // "onoff" or "disk"
    std::size_t trials = 0;
    std::size_t no_isolated = 0;
    std::size_t connected = 0;
    std::size_t coincide = 0;  // trials where connected == no isolated nodes
    double p_no_isolated = 0.0;
    double p_connected = 0.0;
    double ci_half_width_95 = 0.0;  // Wilson score, for p_connected
    double mean_giant_fraction = 0.0;
};

struct Estimate {
    std::size_t trials = 0;
    ModelEstimate primary;
    std::optional<ModelEstimate> disk;
};

/// Half-width of the 95% Wilson score interval for successes/trials.
double wilson_half_width(std::size_t successes, std::size_t trials);

/// Runs body(i) for i in [0, count) on up to `threads` workers (0 = hardware
/// concurrency). Rethrows the exception of the lowest failing index.
void parallel_for(std::size_t count, unsigned threads, const std::function<void(std::size_t)>& body);

/// Intersection graph of one trial (the primary model), e.g. for dumping.
Graph trial_graph(const ExperimentConfig& config, std::size_t trial_index);

TrialOutcome run_trial(const ExperimentConfig& config, std::size_t trial_index);

Estimate estimate(const ExperimentConfig& config, unsigned threads = 1);

struct SweepCell {
    std::vector<KeyCount> ring_sizes;
    double alpha = 0.0;
    std::optional<Estimate> result;
    std::string error;             // whole cell failed
    std::string disk_error;        // only the paired disk twin failed
    std::optional<KeyCount> critical_k1;
};

/// One cell per (K1, alpha), rows in ascending K1 then in the given alpha order.
std::vector<SweepCell> sweep_k1(const ExperimentConfig& base, std::vector<KeyCount> k1_values,
                                const RingRule& rule, const std::vector<double>& alphas, unsigned threads = 1);

/// One cell per (ring vector, alpha) in the given order.
std::vector<SweepCell> sweep_alpha(const ExperimentConfig& base, const std::vector<std::vector<KeyCount>>& ring_sets,
                                   const std::vector<double>& alphas, unsigned threads = 1);

struct PercolationRow {
    double alpha = 0.0;
    double mean_giant_fraction = 0.0;
    double p_connected = 0.0;
    double p_no_isolated = 0.0;
    bool at_threshold = false;
};

struct PercolationTable {
    double lambda1 = 0.0;
    double alpha_hat = 0.0;
    std::vector<PercolationRow> rows;
};

PercolationTable percolation_experiment(const NetworkProfile& profile, std::size_t n,
                                        const std::vector<double>& alphas, std::size_t trials,
                                        std::uint64_t seed, unsigned threads = 1);

/// Equal-mean ring pairs used for the minimum-ring comparison (mean 40 at
/// mu = (0.5, 0.5)).
std::vector<std::vector<KeyCount>> equal_mean_pairs();

/// Alternate list {(10,70),(20,50),(30,50),(40,40)}; (20, 50) has mean 35.
std::vector<std::vector<KeyCount>> literal_pairs();

}  // namespace keygraph

#endif  // KEYGRAPH_MONTECARLO_HPP_
