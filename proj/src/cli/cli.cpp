#include "keygraph/cli.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <optional>
#include <sstream>

#include "json_config.hpp"
#include "keygraph/montecarlo.hpp"
#include "keygraph/sampler.hpp"
#include "keygraph/theory.hpp"

#ifndef KEYGRAPH_VERSION
#define KEYGRAPH_VERSION "0.0.0"
#endif

namespace keygraph::cli {

namespace {

using json = nlohmann::json;

/// Raised for semantically invalid flag combinations (exit code 2).
class UsageError : public std::runtime_error {
 public:
    using std::runtime_error::runtime_error;
};

struct Options {
    std::optional<std::size_t> n;
    std::optional<KeyCount> pool;
    std::vector<double> mu;
    std::vector<KeyCount> k;
    std::vector<KeyCount> ring_offsets;
    std::vector<double> ring_factors;
    std::optional<double> alpha;
    std::optional<double> rho;

    std::uint64_t seed = 1;
    std::size_t trials = 800;
    unsigned threads = 1;
    std::string out;
    std::string dump_graph;

    std::string preset;
    std::string axis;
    std::string model = "onoff";
    std::vector<KeyCount> k1_values;
    std::vector<double> alphas;
    std::vector<std::string> pairs;
    std::optional<bool> paired_disk;

    std::vector<double> alpha_scale;

    double sigma = 1.0;
    double a = 2.0;
};

// ---------------------------------------------------------------------------
// option wiring

void add_config(CLI::App* sub, std::string& path) {
    sub->add_option("--config", path, "JSON document with the same field names as the flags");
}

void add_profile_options(CLI::App* sub, Options& o) {
    sub->add_option("--n", o.n, "Number of nodes");
    sub->add_option("--pool", o.pool, "Key pool size P");
    sub->add_option("--mu", o.mu, "Class probabilities, comma separated")->delimiter(',');
}

void add_ring_rule_options(CLI::App* sub, Options& o) {
    auto* offsets = sub->add_option("--ring-offsets", o.ring_offsets, "K_i = K1 + offset_i (first offset usually 0)")
                        ->delimiter(',');
    auto* factors =
        sub->add_option("--ring-factors", o.ring_factors, "K_i = round(factor_i * K1)")->delimiter(',');
    offsets->excludes(factors);
}

void add_channel_options(CLI::App* sub, Options& o) {
    auto* alpha = sub->add_option("--alpha", o.alpha, "On/off channel probability");
    auto* rho = sub->add_option("--rho", o.rho, "Disk radius on the unit torus (alpha = pi rho^2)");
    alpha->excludes(rho);
}

void add_run_options(CLI::App* sub, Options& o) {
    sub->add_option("--seed", o.seed, "Master seed")->envname("KEYGRAPH_SEED");
    sub->add_option("--trials", o.trials, "Trials per estimate")->check(CLI::PositiveNumber);
    sub->add_option("--threads", o.threads, "Worker threads (0 = all cores)");
}

void add_out_option(CLI::App* sub, Options& o) { sub->add_option("--out", o.out, "Write output to this file"); }

// ---------------------------------------------------------------------------
// resolution helpers

template <typename T>
T require(const std::optional<T>& value, const char* flag) {
    if(!value) {
        throw UsageError(std::string("missing required option ") + flag);
    }
    return *value;
}

void require_nonempty(bool nonempty, const char* flag) {
    if(!nonempty) {
        throw UsageError(std::string("missing required option ") + flag);
    }
}

std::optional<RingRule> ring_rule(const Options& o) {
    if(!o.ring_offsets.empty()) {
        return RingRule::offsets(o.ring_offsets);
    }
    if(!o.ring_factors.empty()) {
        return RingRule::factors(o.ring_factors);
    }
    return std::nullopt;
}

/// Alpha from --alpha or, via alpha = pi rho^2, from --rho.
std::optional<double> resolved_alpha(const Options& o) {
    if(o.alpha) {
        return o.alpha;
    }
    if(o.rho) {
        return match_rho_to_alpha(*o.rho);
    }
    return std::nullopt;
}

NetworkProfile profile_from(const Options& o, std::vector<KeyCount> rings) {
    NetworkProfile p;
    p.mu = o.mu;
    p.ring_sizes = std::move(rings);
    p.pool = require(o.pool, "--pool");
    return p;
}

std::vector<KeyCount> parse_pair(const std::string& text) {
    std::vector<KeyCount> rings;
    std::stringstream ss(text);
    std::string part;
    while(std::getline(ss, part, ':')) {
        try {
            std::size_t used = 0;
            rings.push_back(std::stoll(part, &used));
            if(used != part.size()) {
                throw std::invalid_argument(part);
            }
        } catch(const std::exception&) {
            throw UsageError("invalid ring set '" + text + "' (expected K1:K2[:...])");
        }
    }
    if(rings.empty()) {
        throw UsageError("empty ring set");
    }
    return rings;
}

std::vector<double> default_alpha_grid() {
    std::vector<double> grid;
    for(int i = 1; i <= 19; ++i) {
        grid.push_back(0.05 * i);
    }
    return grid;
}

void apply_preset(Options& o) {
    if(o.preset.empty()) {
        return;
    }
    if(o.preset != "fig1" && o.preset != "fig2" && o.preset != "fig2-literal") {
        throw UsageError("unknown preset '" + o.preset + "' (fig1, fig2, fig2-literal)");
    }
    if(!o.n) o.n = 500;
    if(!o.pool) o.pool = 10000;
    if(o.mu.empty()) o.mu = {0.5, 0.5};
    if(!o.paired_disk) o.paired_disk = true;
    if(o.preset == "fig1") {
        if(o.axis.empty()) o.axis = "k1";
        if(o.ring_offsets.empty() && o.ring_factors.empty()) o.ring_offsets = {0, 5};
        if(o.k1_values.empty()) o.k1_values = {5, 10, 15, 20, 25, 30, 35};
        if(o.alphas.empty()) o.alphas = {0.2, 0.4, 0.6, 0.8};
    } else {
        if(o.axis.empty()) o.axis = "alpha";
        if(o.pairs.empty()) {
            const auto sets = o.preset == "fig2" ? equal_mean_pairs() : literal_pairs();
            for(const auto& s : sets) {
                o.pairs.push_back(std::to_string(s[0]) + ":" + std::to_string(s[1]));
            }
        }
        if(o.alphas.empty()) o.alphas = default_alpha_grid();
    }
}

json profile_json(const Options& o) {
    json j;
    if(o.n) j["n"] = *o.n;
    if(o.pool) j["pool"] = *o.pool;
    if(!o.mu.empty()) j["mu"] = o.mu;
    if(!o.k.empty()) j["k"] = o.k;
    if(!o.ring_offsets.empty()) j["ring-offsets"] = o.ring_offsets;
    if(!o.ring_factors.empty()) j["ring-factors"] = o.ring_factors;
    if(o.alpha) j["alpha"] = *o.alpha;
    if(o.rho) j["rho"] = *o.rho;
    return j;
}

// ---------------------------------------------------------------------------
// output

class Output {
 public:
    Output(std::string command, json config, std::uint64_t seed)
        : command_(std::move(command)), config_(std::move(config)), seed_(seed),
          start_(std::chrono::steady_clock::now()) {}

    std::ostream& body() { return body_; }

    void flush(const std::string& path, std::ostream& out) const {
        const double seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
        std::ostringstream text;
        text << "# tool: keygraph " << KEYGRAPH_VERSION << '\n';
        text << "# command: " << command_ << '\n';
        text << "# seed: " << seed_ << '\n';
        text << "# config: " << config_.dump() << '\n';
        text << "# wall_clock_seconds: " << fixed(seconds, 3) << '\n';
        text << body_.str();
        if(path.empty()) {
            out << text.str();
            return;
        }
        std::ofstream file(path, std::ios::binary);
        if(!file) {
            throw UsageError("cannot open output file '" + path + "'");
        }
        file << text.str();
    }

 private:
    std::string command_;
    json config_;
    std::uint64_t seed_;
    std::chrono::steady_clock::time_point start_;
    std::ostringstream body_;
};

constexpr const char* kSweepHeader = "k1,k2,alpha,rho,model,trials,p_no_isolated,p_connected,ci95,critical_k1,error";

void write_model_row(std::ostream& os, const std::vector<KeyCount>& rings, double alpha, const ModelEstimate* est,
                     const std::string& model, std::optional<KeyCount> marker, const std::string& error) {
    const bool disk = model == "disk";
    os << rings.front() << ',' << rings.back() << ',' << fixed(alpha) << ',';
    if(disk && alpha > 0.0) {
        os << fixed(std::sqrt(alpha / std::numbers::pi));
    }
    os << ',' << model << ',';
    if(est) {
        os << est->trials << ',' << fixed(est->p_no_isolated) << ',' << fixed(est->p_connected) << ','
           << fixed(est->ci_half_width_95);
    } else {
        os << ",,,";
    }
    os << ',';
    if(marker) {
        os << *marker;
    }
    os << ',' << csv_escape(error) << '\n';
}

void write_cell(std::ostream& os, const SweepCell& cell, const std::string& primary_model) {
    if(!cell.result) {
        write_model_row(os, cell.ring_sizes, cell.alpha, nullptr, primary_model, cell.critical_k1, cell.error);
        return;
    }
    const auto& est = *cell.result;
    write_model_row(os, cell.ring_sizes, cell.alpha, &est.primary, est.primary.model, cell.critical_k1, "");
    if(est.disk) {
        write_model_row(os, cell.ring_sizes, cell.alpha, &*est.disk, "disk", cell.critical_k1, "");
    } else if(!cell.disk_error.empty()) {
        write_model_row(os, cell.ring_sizes, cell.alpha, nullptr, "disk", cell.critical_k1, cell.disk_error);
    }
}

void dump_graph_if_requested(const Options& o, const ExperimentConfig& config) {
    if(o.dump_graph.empty()) {
        return;
    }
    std::ofstream file(o.dump_graph, std::ios::binary);
    if(!file) {
        throw UsageError("cannot open graph dump file '" + o.dump_graph + "'");
    }
    write_edge_list(file, trial_graph(config, 0));
}

void dump_first_cell(const Options& o, const ExperimentConfig& base, const std::vector<SweepCell>& cells) {
    for(const auto& cell : cells) {
        if(!cell.result) {
            continue;
        }
        auto config = base;
        config.profile.ring_sizes = cell.ring_sizes;
        config.paired_disk = false;
        config.channel = base.channel.kind == ChannelModel::Kind::Disk
                             ? ChannelModel::disk(match_alpha_to_rho(cell.alpha))
                             : ChannelModel::on_off(cell.alpha);
        dump_graph_if_requested(o, config);
        return;
    }
}

// ---------------------------------------------------------------------------
// subcommands

int cmd_threshold(const Options& o, std::ostream& out) {
    const auto n = static_cast<std::int64_t>(require(o.n, "--n"));
    const auto pool = require(o.pool, "--pool");
    require_nonempty(!o.mu.empty(), "--mu");
    const auto alpha = resolved_alpha(o);
    if(!alpha) {
        throw UsageError("missing required option --alpha or --rho");
    }
    const auto rule = ring_rule(o);
    if(!rule) {
        throw UsageError("missing required option --ring-offsets or --ring-factors");
    }

    json config = profile_json(o);
    Output output("threshold", config, o.seed);

    const auto k1 = critical_k1(n, *alpha, pool, o.mu, *rule);
    auto profile = profile_from(o, rule->apply(k1));
    const auto derived = derive(profile, ChannelModel::on_off(*alpha));
    const auto report = check_scaling(n, profile, *alpha, 1.0);
    const double nd = static_cast<double>(n);

    auto& os = output.body();
    os << "critical_k1: " << k1 << '\n';
    os << "ring_sizes:";
    for(auto k : profile.ring_sizes) {
        os << ' ' << k;
    }
    os << '\n';
    os << "alpha: " << fixed(*alpha, 9) << '\n';
    os << "lambda1: " << fixed(derived.lambda.front(), 9) << '\n';
    os << "threshold_lambda1: " << fixed(std::log(nd) / (nd * *alpha), 9) << '\n';
    os << "c_n: " << fixed(report.c_n, 6) << '\n';
    os << "alpha_hat: " << fixed(critical_transmissibility(n, derived.lambda.front()), 9) << '\n';
    output.flush(o.out, out);
    return kSuccess;
}

int cmd_check(const Options& o, std::ostream& out) {
    const auto n = static_cast<std::int64_t>(require(o.n, "--n"));
    require_nonempty(!o.mu.empty(), "--mu");
    require_nonempty(!o.k.empty(), "--k");
    const auto alpha = resolved_alpha(o).value_or(1.0);
    const auto profile = profile_from(o, o.k);

    json config = profile_json(o);
    config["sigma"] = o.sigma;
    config["a"] = o.a;
    Output output("check", config, o.seed);

    const auto report = check_scaling(n, profile, alpha, o.sigma);
    auto& os = output.body();
    os << "ordering_ok: " << (report.ordering_ok ? "true" : "false") << '\n';
    os << "pool_ok: " << (report.pool_ok ? "true" : "false") << '\n';
    os << "omega_ratio: " << fixed(report.omega_ratio) << '\n';
    os << "c_n: " << fixed(report.c_n) << '\n';
    for(const auto& w : report.warnings) {
        os << "warning: " << w << '\n';
    }
    const auto& k = profile.ring_sizes;
    for(std::size_t i = 0; i < k.size(); ++i) {
        for(std::size_t j = i; j < k.size(); ++j) {
            const auto bounds = verify_bounds(k[i], k[j], profile.pool, o.a);
            auto flag = [](const std::optional<bool>& b) { return b ? (*b ? "true" : "false") : "n/a"; };
            os << "bounds[" << i + 1 << ',' << j + 1 << "]: sandwich=" << flag(bounds.sandwich)
               << " combinatorial=" << flag(bounds.combinatorial) << " exponential=" << flag(bounds.exponential)
               << " equivalence_ratio=" << fixed(bounds.equivalence_ratio) << '\n';
        }
    }
    output.flush(o.out, out);
    return report.ordering_ok && report.pool_ok ? kSuccess : kScalingFailure;
}

ExperimentConfig base_config(const Options& o) {
    ExperimentConfig config;
    config.n = require(o.n, "--n");
    config.profile.mu = o.mu;
    config.profile.pool = require(o.pool, "--pool");
    config.trials = o.trials;
    config.master_seed = o.seed;
    config.paired_disk = o.paired_disk.value_or(false);
    if(o.model == "disk") {
        config.channel = ChannelModel::disk(0.25);
        config.paired_disk = false;
    } else if(o.model != "onoff") {
        throw UsageError("--model must be onoff or disk");
    }
    return config;
}

int cmd_simulate(const Options& o, std::ostream& out) {
    require_nonempty(!o.mu.empty(), "--mu");
    require_nonempty(!o.k.empty(), "--k");
    auto config = base_config(o);
    config.profile.ring_sizes = o.k;
    if(o.model == "disk" || (!o.alpha && o.rho)) {
        config.channel = ChannelModel::disk(require(o.rho, "--rho"));
        config.paired_disk = false;
    } else {
        config.channel = ChannelModel::on_off(require(o.alpha, "--alpha"));
    }
    config.validate();

    json jc = profile_json(o);
    jc["trials"] = o.trials;
    jc["paired-disk"] = config.paired_disk;
    jc["model"] = config.channel.kind == ChannelModel::Kind::Disk ? "disk" : "onoff";
    Output output("simulate", jc, o.seed);

    SweepCell cell;
    cell.ring_sizes = config.profile.ring_sizes;
    cell.alpha = config.channel.link_probability();
    cell.result = estimate(config, o.threads);
    output.body() << kSweepHeader << '\n';
    write_cell(output.body(), cell, cell.result->primary.model);
    dump_graph_if_requested(o, config);
    output.flush(o.out, out);
    return kSuccess;
}


int cmd_sweep(Options o, std::ostream& out) {
    apply_preset(o);
    if(o.axis.empty()) {
        o.axis = "k1";
    }
    require_nonempty(!o.mu.empty(), "--mu");
    require_nonempty(!o.alphas.empty(), "--alphas");
    auto base = base_config(o);

    json jc = profile_json(o);
    jc["axis"] = o.axis;
    jc["alphas"] = o.alphas;
    jc["trials"] = o.trials;
    jc["paired-disk"] = base.paired_disk;
    jc["model"] = o.model;
    if(!o.preset.empty()) {
        jc["preset"] = o.preset;
    }

    std::vector<SweepCell> cells;
    if(o.axis == "k1") {
        const auto rule = ring_rule(o);
        if(!rule) {
            throw UsageError("k1 sweeps need --ring-offsets or --ring-factors");
        }
        require_nonempty(!o.k1_values.empty(), "--k1");
        jc["k1"] = o.k1_values;
        if(rule->classes() != o.mu.size()) {
            throw UsageError("ring rule and --mu disagree on the number of classes");
        }
        validate_mix(o.mu);
        Output output("sweep", jc, o.seed);
        cells = sweep_k1(base, o.k1_values, *rule, o.alphas, o.threads);
        output.body() << kSweepHeader << '\n';
        for(const auto& cell : cells) {
            write_cell(output.body(), cell, o.model);
        }
        dump_first_cell(o, base, cells);
        output.flush(o.out, out);
    } else if(o.axis == "alpha") {
        require_nonempty(!o.pairs.empty(), "--pairs");
        std::vector<std::vector<KeyCount>> sets;
        for(const auto& p : o.pairs) {
            sets.push_back(parse_pair(p));
        }
        jc["pairs"] = o.pairs;
        validate_mix(o.mu);
        Output output("sweep", jc, o.seed);
        cells = sweep_alpha(base, sets, o.alphas, o.threads);
        output.body() << kSweepHeader << '\n';
        for(const auto& cell : cells) {
            write_cell(output.body(), cell, o.model);
        }
        dump_first_cell(o, base, cells);
        output.flush(o.out, out);
    } else {
        throw UsageError("--axis must be k1 or alpha");
    }
    return kSuccess;
}

int cmd_percolate(const Options& o, std::ostream& out) {
    const auto n = require(o.n, "--n");
    require_nonempty(!o.mu.empty(), "--mu");
    require_nonempty(!o.k.empty(), "--k");
    if(o.alphas.empty() == o.alpha_scale.empty()) {
        throw UsageError("give exactly one of --alphas or --alpha-scale");
    }
    const auto profile = profile_from(o, o.k);
    profile.validate();
    const auto derived = derive(profile, ChannelModel::on_off(1.0));
    const double alpha_hat = critical_transmissibility(static_cast<std::int64_t>(n), derived.lambda.front());

    std::vector<double> grid = o.alphas;
    for(double s : o.alpha_scale) {
        grid.push_back(s * alpha_hat);
    }
    for(double alpha : grid) {
        if(!(alpha >= 0.0 && alpha <= 1.0)) {
            throw UsageError("percolation grid value " + fixed(alpha) + " lies outside [0, 1]");
        }
    }

    json jc = profile_json(o);
    jc["trials"] = o.trials;
    if(!o.alphas.empty()) jc["alphas"] = o.alphas;
    if(!o.alpha_scale.empty()) jc["alpha-scale"] = o.alpha_scale;
    Output output("percolate", jc, o.seed);

    const auto table = percolation_experiment(profile, n, grid, o.trials, o.seed, o.threads);
    auto& os = output.body();
    os << "alpha,mean_giant_fraction,p_connected,alpha_hat,at_threshold\n";
    for(const auto& row : table.rows) {
        os << fixed(row.alpha) << ',' << fixed(row.mean_giant_fraction) << ',' << fixed(row.p_connected) << ','
           << fixed(table.alpha_hat) << ',' << (row.at_threshold ? "true" : "false") << '\n';
    }
    output.flush(o.out, out);
    return kSuccess;
}

}  // namespace

std::string fixed(double value, int decimals) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*f", decimals, value);
    std::string s(buf);
    if(s.find_first_not_of("-0.") == std::string::npos && s.front() == '-') {
        s.erase(0, 1);  // no "-0.000000"
    }
    return s;
}

std::string csv_escape(std::string_view field) {
    if(field.find_first_of(",\"\n\r") == std::string_view::npos) {
        return std::string(field);
    }
    std::string quoted = "\"";
    for(char c : field) {
        if(c == '"') {
            quoted += '"';
        }
        quoted += c;
    }
    quoted += '"';
    return quoted;
}

std::string strip_manifest(std::string_view text) {
    std::string body;
    std::size_t pos = 0;
    while(pos < text.size()) {
        auto end = text.find('\n', pos);
        if(end == std::string_view::npos) {
            end = text.size();
        } else {
            ++end;
        }
        const auto line = text.substr(pos, end - pos);
        if(line.empty() || line.front() != '#') {
            body.append(line);
        }
        pos = end;
    }
    return body;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Connectivity of key-predistribution sensor networks under on/off and disk channels", "keygraph"};
    app.set_version_flag("--version", KEYGRAPH_VERSION);
    app.require_subcommand(1);

    Options threshold_opts;
    auto* threshold = app.add_subcommand("threshold", "Critical smallest key ring K1 for whp connectivity");
    std::string threshold_config;
    add_config(threshold, threshold_config);
    add_profile_options(threshold, threshold_opts);
    add_ring_rule_options(threshold, threshold_opts);
    add_channel_options(threshold, threshold_opts);
    add_out_option(threshold, threshold_opts);

    Options check_opts;
    auto* check = app.add_subcommand("check", "Scaling conditions and probability bounds for a profile");
    std::string check_config;
    add_config(check, check_config);
    add_profile_options(check, check_opts);
    check->add_option("--k", check_opts.k, "Key ring sizes per class, comma separated")->delimiter(',');
    add_channel_options(check, check_opts);
    check->add_option("--sigma", check_opts.sigma, "Pool-size constant: require P >= sigma n");
    check->add_option("--a", check_opts.a, "Exponent for the combinatorial bound (>= 1)");
    add_out_option(check, check_opts);

    Options simulate_opts;
    auto* simulate = app.add_subcommand("simulate", "Single connectivity estimate");
    std::string simulate_config;
    add_config(simulate, simulate_config);
    add_profile_options(simulate, simulate_opts);
    simulate->add_option("--k", simulate_opts.k, "Key ring sizes per class, comma separated")->delimiter(',');
    add_channel_options(simulate, simulate_opts);
    add_run_options(simulate, simulate_opts);
    simulate->add_option("--model", simulate_opts.model, "Channel model: onoff or disk");
    simulate->add_flag("--paired-disk,!--no-paired-disk", simulate_opts.paired_disk,
                       "Also run the matched disk model on the same key graphs");
    simulate->add_option("--dump-graph", simulate_opts.dump_graph, "Write the trial-0 graph as an edge list");
    add_out_option(simulate, simulate_opts);

    Options sweep_opts;
    auto* sweep = app.add_subcommand("sweep", "Connectivity estimates over a K1 or alpha grid (CSV)");
    std::string sweep_config;
    add_config(sweep, sweep_config);
    add_profile_options(sweep, sweep_opts);
    add_ring_rule_options(sweep, sweep_opts);
    add_run_options(sweep, sweep_opts);
    sweep->add_option("--preset", sweep_opts.preset, "fig1, fig2 or fig2-literal");
    sweep->add_option("--axis", sweep_opts.axis, "k1 or alpha");
    sweep->add_option("--k1", sweep_opts.k1_values, "K1 grid, comma separated")->delimiter(',');
    sweep->add_option("--alphas", sweep_opts.alphas, "Channel probabilities, comma separated")->delimiter(',');
    sweep->add_option("--pairs", sweep_opts.pairs, "Ring sets for alpha sweeps, e.g. 10:70,40:40")->delimiter(',');
    sweep->add_option("--model", sweep_opts.model, "Channel model: onoff or disk");
    sweep->add_flag("--paired-disk,!--no-paired-disk", sweep_opts.paired_disk,
                    "Also run the matched disk model on the same key graphs");
    sweep->add_option("--dump-graph", sweep_opts.dump_graph, "Write the first cell's trial-0 graph as an edge list");
    add_out_option(sweep, sweep_opts);

    Options percolate_opts;
    auto* percolate = app.add_subcommand("percolate", "Giant component and connectivity versus edge occupation");
    std::string percolate_config;
    add_config(percolate, percolate_config);
    add_profile_options(percolate, percolate_opts);
    percolate->add_option("--k", percolate_opts.k, "Key ring sizes per class, comma separated")->delimiter(',');
    add_run_options(percolate, percolate_opts);
    percolate->add_option("--alphas", percolate_opts.alphas, "Occupation probabilities")->delimiter(',');
    percolate->add_option("--alpha-scale", percolate_opts.alpha_scale, "Grid as multiples of the critical alpha")
        ->delimiter(',');
    add_out_option(percolate, percolate_opts);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch(const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch(const CLI::CallForAllHelp& e) {
        return app.exit(e, out, err);
    } catch(const CLI::CallForVersion& e) {
        return app.exit(e, out, err);
    } catch(const CLI::ParseError& e) {
        app.exit(e, err, err);
        return kUsageError;
    }

    try {
        for(auto [sub, path] : {std::pair{threshold, &threshold_config}, std::pair{check, &check_config},
                                std::pair{simulate, &simulate_config}, std::pair{sweep, &sweep_config},
                                std::pair{percolate, &percolate_config}}) {
            if(sub->parsed() && !path->empty()) {
                apply_json_config(sub, *path);
            }
        }
        if(threshold->parsed()) {
            return cmd_threshold(threshold_opts, out);
        }
        if(check->parsed()) {
            return cmd_check(check_opts, out);
        }
        if(simulate->parsed()) {
            return cmd_simulate(simulate_opts, out);
        }
        if(sweep->parsed()) {
            return cmd_sweep(sweep_opts, out);
        }
        if(percolate->parsed()) {
            return cmd_percolate(percolate_opts, out);
        }
    } catch(const NoSolutionError& e) {
        err << "error: " << e.what() << '\n';
        return kNoSolution;
    } catch(const UsageError& e) {
        err << "error: " << e.what() << "\n\n" << app.get_subcommands().front()->help();
        return kUsageError;
    } catch(const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kUsageError;
    }
    err << app.help();
    return kUsageError;
}

}  // namespace keygraph::cli
