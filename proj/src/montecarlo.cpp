#include "keygraph/montecarlo.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <numbers>
#include <thread>

#include "keygraph/sampler.hpp"

namespace keygraph {

namespace {

// Child-stream tags within one trial.
constexpr std::uint64_t kClassStream = 1;
constexpr std::uint64_t kRingStream = 2;
constexpr std::uint64_t kOnOffStream = 3;
constexpr std::uint64_t kDiskStream = 4;

constexpr double kZ95 = 1.959963984540054;

Observation observe(const Graph& g) {
    const auto summary = components(g);
    return {summary.isolated_count, summary.connected, summary.giant_fraction};
}

Graph key_graph_for_trial(const ExperimentConfig& config, const RandomStream& stream) {
    const auto classes = sample_classes(config.n, config.profile.mu, stream.child(kClassStream));
    return build_key_graph(sample_key_rings(classes, config.profile, stream.child(kRingStream)));
}

Graph channel_graph(const ChannelModel& channel, std::size_t n, const RandomStream& stream) {
    if(channel.kind == ChannelModel::Kind::OnOff) {
        return sample_er(n, channel.alpha, stream.child(kOnOffStream));
    }
    return sample_rgg(n, channel.rho, stream.child(kDiskStream));
}

ModelEstimate aggregate(std::string model, const std::vector<Observation>& obs) {
    ModelEstimate est;
    est.model = std::move(model);
    est.trials = obs.size();
    double giant_sum = 0.0;
    for(const auto& o : obs) {
        const bool no_isolated = o.isolated_count == 0;
        est.no_isolated += no_isolated ? 1 : 0;
        est.connected += o.connected ? 1 : 0;
        est.coincide += (no_isolated == o.connected) ? 1 : 0;
        giant_sum += o.giant_fraction;
    }
    const auto t = static_cast<double>(est.trials);
    est.p_no_isolated = static_cast<double>(est.no_isolated) / t;
    est.p_connected = static_cast<double>(est.connected) / t;
    est.ci_half_width_95 = wilson_half_width(est.connected, est.trials);
    est.mean_giant_fraction = giant_sum / t;
    return est;
}

std::string model_name(const ChannelModel& channel) {
    return channel.kind == ChannelModel::Kind::OnOff ? "onoff" : "disk";
}

SweepCell run_cell(const ExperimentConfig& base, std::vector<KeyCount> rings, double alpha, unsigned threads) {
    SweepCell cell;
    cell.ring_sizes = std::move(rings);
    cell.alpha = alpha;
    try {
        ExperimentConfig config = base;
        config.profile.ring_sizes = cell.ring_sizes;
        if(base.channel.kind == ChannelModel::Kind::Disk) {
            config.channel = ChannelModel::disk(match_alpha_to_rho(alpha));
            config.paired_disk = false;
        } else {
            config.channel = ChannelModel::on_off(alpha);
            if(config.paired_disk && !(alpha > 0.0 && alpha < std::numbers::pi / 4.0)) {
                cell.disk_error = "no disk twin: matched radius must lie in (0, 0.5)";
                config.paired_disk = false;
            }
        }
        cell.result = estimate(config, threads);
    } catch(const std::exception& e) {
        cell.error = e.what();
    }
    return cell;
}

}  // namespace

void ExperimentConfig::validate() const {
    if(trials < 1) {
        throw std::invalid_argument("experiment needs at least one trial");
    }
    if(n > std::numeric_limits<Vertex>::max()) {
        throw std::invalid_argument("node count too large");
    }
    profile.validate();
    channel.validate();
    if(paired_disk) {
        if(channel.kind != ChannelModel::Kind::OnOff) {
            throw std::invalid_argument("paired disk runs need an on/off channel");
        }
        if(!(channel.alpha > 0.0 && channel.alpha < std::numbers::pi / 4.0)) {
            throw std::invalid_argument("paired disk runs need 0 < alpha < pi/4");
        }
    }
}

double wilson_half_width(std::size_t successes, std::size_t trials) {
    if(trials == 0) {
        return 0.0;
    }
    const double n = static_cast<double>(trials);
    const double p = static_cast<double>(successes) / n;
    const double z2 = kZ95 * kZ95;
    return kZ95 / (1.0 + z2 / n) * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n));
}

void parallel_for(std::size_t count, unsigned threads, const std::function<void(std::size_t)>& body) {
    if(threads == 0) {
        threads = std::max(1u, std::thread::hardware_concurrency());
    }
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, count));
    if(threads <= 1) {
        for(std::size_t i = 0; i < count; ++i) {
            body(i);
        }
        return;
    }

    std::atomic<std::size_t> next{0};
    std::mutex failure_mutex;
    std::size_t failed_index = count;
    std::exception_ptr failure;

    auto worker = [&] {
        for(std::size_t i = next.fetch_add(1); i < count; i = next.fetch_add(1)) {
            try {
                body(i);
            } catch(...) {
                std::lock_guard lock(failure_mutex);
                if(i < failed_index) {
                    failed_index = i;
                    failure = std::current_exception();
                }
            }
        }
    };
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for(unsigned t = 0; t < threads; ++t) {
        pool.emplace_back(worker);
    }
    pool.clear();
    if(failure) {
        std::rethrow_exception(failure);
    }
}

Graph trial_graph(const ExperimentConfig& config, std::size_t trial_index) {
    config.validate();
    const RandomStream stream{config.master_seed, trial_index};
    return intersect(key_graph_for_trial(config, stream), channel_graph(config.channel, config.n, stream));
}

TrialOutcome run_trial(const ExperimentConfig& config, std::size_t trial_index) {
    config.validate();
    if(trial_index >= config.trials) {
        throw std::out_of_range("trial index exceeds the configured trial count");
    }
    const RandomStream stream{config.master_seed, trial_index};
    const Graph key_graph = key_graph_for_trial(config, stream);

    TrialOutcome outcome;
    outcome.primary = observe(intersect(key_graph, channel_graph(config.channel, config.n, stream)));
    if(config.paired_disk) {
        const auto twin = ChannelModel::disk(match_alpha_to_rho(config.channel.alpha));
        outcome.disk = observe(intersect(key_graph, channel_graph(twin, config.n, stream)));
    }
    return outcome;
}

Estimate estimate(const ExperimentConfig& config, unsigned threads) {
    config.validate();
    std::vector<TrialOutcome> outcomes(config.trials);
    parallel_for(config.trials, threads, [&](std::size_t t) { outcomes[t] = run_trial(config, t); });

    std::vector<Observation> primary;
    std::vector<Observation> disk;
    primary.reserve(outcomes.size());
    for(const auto& o : outcomes) {
        primary.push_back(o.primary);
        if(o.disk) {
            disk.push_back(*o.disk);
        }
    }

    Estimate est;
    est.trials = config.trials;
    est.primary = aggregate(model_name(config.channel), primary);
    if(config.paired_disk) {
        est.disk = aggregate("disk", disk);
    }
    return est;
}

std::vector<SweepCell> sweep_k1(const ExperimentConfig& base, std::vector<KeyCount> k1_values, const RingRule& rule,
                                const std::vector<double>& alphas, unsigned threads) {
    std::sort(k1_values.begin(), k1_values.end());
    const auto n = static_cast<std::int64_t>(base.n);

    std::vector<std::optional<KeyCount>> markers;
    for(double alpha : alphas) {
        try {
            markers.emplace_back(critical_k1(n, alpha, base.profile.pool, base.profile.mu, rule));
        } catch(const std::exception&) {
            markers.emplace_back(std::nullopt);
        }
    }

    std::vector<SweepCell> cells;
    for(auto k1 : k1_values) {
        for(std::size_t a = 0; a < alphas.size(); ++a) {
            auto cell = run_cell(base, rule.apply(k1), alphas[a], threads);
            cell.critical_k1 = markers[a];
            cells.push_back(std::move(cell));
        }
    }
    return cells;
}

std::vector<SweepCell> sweep_alpha(const ExperimentConfig& base, const std::vector<std::vector<KeyCount>>& ring_sets,
                                   const std::vector<double>& alphas, unsigned threads) {
    std::vector<SweepCell> cells;
    for(const auto& rings : ring_sets) {
        for(double alpha : alphas) {
            cells.push_back(run_cell(base, rings, alpha, threads));
        }
    }
    return cells;
}

PercolationTable percolation_experiment(const NetworkProfile& profile, std::size_t n,
                                        const std::vector<double>& alphas, std::size_t trials,
                                        std::uint64_t seed, unsigned threads) {
    PercolationTable table;
    const auto derived = derive(profile, ChannelModel::on_off(1.0));
    table.lambda1 = derived.lambda.front();
    table.alpha_hat = critical_transmissibility(static_cast<std::int64_t>(n), table.lambda1);

    for(double alpha : alphas) {
        ExperimentConfig config;
        config.n = n;
        config.profile = profile;
        config.channel = ChannelModel::on_off(alpha);
        config.trials = trials;
        config.master_seed = seed;
        const auto est = estimate(config, threads);

        PercolationRow row;
        row.alpha = alpha;
        row.mean_giant_fraction = est.primary.mean_giant_fraction;
        row.p_connected = est.primary.p_connected;
        row.p_no_isolated = est.primary.p_no_isolated;
        row.at_threshold = std::abs(alpha - table.alpha_hat) <= 1e-9 * table.alpha_hat;
        table.rows.push_back(row);
    }
    return table;
}

std::vector<std::vector<KeyCount>> equal_mean_pairs() { return {{10, 70}, {20, 60}, {30, 50}, {40, 40}}; }

std::vector<std::vector<KeyCount>> literal_pairs() { return {{10, 70}, {20, 50}, {30, 50}, {40, 40}}; }

}  // namespace keygraph
