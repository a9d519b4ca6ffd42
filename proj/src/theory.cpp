#include "keygraph/theory.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace keygraph {

namespace {

constexpr double kMixTolerance = 1e-9;

// Rounding allowance when comparing two sides of an inequality that were each
// evaluated as running products.
constexpr double kBoundSlack = 1e-14;

bool le_with_slack(double lhs, double rhs) { return lhs <= rhs + kBoundSlack * std::max(1.0, std::abs(rhs)); }

void check_basic_profile(const NetworkProfile& profile) {
    validate_mix(profile.mu);
    if(profile.ring_sizes.size() != profile.mu.size()) {
        throw std::invalid_argument("profile: ring_sizes and mu must have the same length");
    }
    if(profile.pool < 1) {
        throw std::invalid_argument("profile: key pool size must be positive");
    }
    for(auto k : profile.ring_sizes) {
        if(k < 1) {
            throw std::invalid_argument("profile: key ring sizes must be positive");
        }
        if(k > profile.pool) {
            throw std::invalid_argument("profile: key ring size exceeds the key pool");
        }
    }
}

DerivedProbabilities derive_unchecked(const NetworkProfile& profile, double alpha) {
    const auto r = profile.classes();
    DerivedProbabilities out;
    out.p.assign(r, std::vector<double>(r, 0.0));
    out.lambda.assign(r, 0.0);
    out.capital_lambda.assign(r, 0.0);
    for(std::size_t i = 0; i < r; ++i) {
        for(std::size_t j = i; j < r; ++j) {
            const double p = edge_prob(profile.ring_sizes[i], profile.ring_sizes[j], profile.pool);
            out.p[i][j] = p;
            out.p[j][i] = p;
        }
    }
    for(std::size_t i = 0; i < r; ++i) {
        double lambda = 0.0;
        for(std::size_t j = 0; j < r; ++j) {
            lambda += profile.mu[j] * out.p[i][j];
        }
        out.lambda[i] = lambda;
        out.capital_lambda[i] = alpha * lambda;
        out.k_avg += profile.mu[i] * static_cast<double>(profile.ring_sizes[i]);
    }
    return out;
}

}  // namespace

void validate_mix(std::span<const double> mu) {
    if(mu.empty()) {
        throw std::invalid_argument("class mix must have at least one class");
    }
    double total = 0.0;
    for(double m : mu) {
        if(!(m > 0.0) || !std::isfinite(m)) {
            throw std::invalid_argument("class mix entries must be positive");
        }
        total += m;
    }
    if(std::abs(total - 1.0) > kMixTolerance) {
        std::ostringstream msg;
        msg << "class mix must sum to 1 (got " << total << ")";
        throw std::invalid_argument(msg.str());
    }
}

std::vector<std::string> NetworkProfile::validate() const {
    check_basic_profile(*this);
    if(!std::is_sorted(ring_sizes.begin(), ring_sizes.end())) {
        throw std::invalid_argument("profile: key ring sizes must be nondecreasing");
    }
    std::vector<std::string> warnings;
    if(2 * ring_sizes.back() > pool) {
        warnings.emplace_back("largest key ring exceeds half of the key pool");
    }
    return warnings;
}

ChannelModel ChannelModel::on_off(double alpha) {
    ChannelModel c;
    c.kind = Kind::OnOff;
    c.alpha = alpha;
    return c;
}

ChannelModel ChannelModel::disk(double rho) {
    ChannelModel c;
    c.kind = Kind::Disk;
    c.rho = rho;
    c.alpha = 0.0;
    return c;
}

void ChannelModel::validate() const {
    if(kind == Kind::OnOff) {
        if(!(alpha >= 0.0 && alpha <= 1.0)) {
            throw std::invalid_argument("on/off channel probability must lie in [0, 1]");
        }
    } else if(!(rho > 0.0 && rho < 0.5)) {
        throw std::invalid_argument("disk radius must lie in (0, 0.5)");
    }
}

double ChannelModel::link_probability() const {
    return kind == Kind::OnOff ? alpha : match_rho_to_alpha(rho);
}

bool BoundReport::all_hold() const {
    return sandwich.value_or(false) && combinatorial.value_or(false) && exponential.value_or(false);
}

RingRule RingRule::offsets(std::vector<KeyCount> offsets) {
    if(offsets.empty()) {
        throw std::invalid_argument("ring rule needs at least one class");
    }
    RingRule rule;
    rule.kind_ = Kind::Offset;
    rule.offsets_ = std::move(offsets);
    return rule;
}

RingRule RingRule::factors(std::vector<double> factors) {
    if(factors.empty()) {
        throw std::invalid_argument("ring rule needs at least one class");
    }
    for(double f : factors) {
        if(!(f > 0.0) || !std::isfinite(f)) {
            throw std::invalid_argument("ring rule factors must be positive");
        }
    }
    RingRule rule;
    rule.kind_ = Kind::Factor;
    rule.factors_ = std::move(factors);
    return rule;
}

std::size_t RingRule::classes() const { return kind_ == Kind::Offset ? offsets_.size() : factors_.size(); }

std::vector<KeyCount> RingRule::apply(KeyCount k1) const {
    std::vector<KeyCount> rings;
    rings.reserve(classes());
    if(kind_ == Kind::Offset) {
        for(auto off : offsets_) {
            rings.push_back(k1 + off);
        }
    } else {
        for(double f : factors_) {
            rings.push_back(static_cast<KeyCount>(std::llround(f * static_cast<double>(k1))));
        }
    }
    return rings;
}

double no_overlap_prob(KeyCount k_i, KeyCount k_j, KeyCount pool) {
    if(k_i < 1 || k_j < 1) {
        throw std::invalid_argument("key ring sizes must be positive");
    }
    if(k_i > pool || k_j > pool) {
        throw std::invalid_argument("key ring size exceeds the key pool");
    }
    if(k_i + k_j > pool) {
        return 0.0;
    }
    // Symmetric in (k_i, k_j); iterate over the shorter ring.
    const KeyCount terms = std::min(k_i, k_j);
    const KeyCount other = std::max(k_i, k_j);
    const auto p = static_cast<double>(pool);
    double q = 1.0;
    for(KeyCount t = 0; t < terms; ++t) {
        const auto td = static_cast<double>(t);
        q *= (p - static_cast<double>(other) - td) / (p - td);
    }
    return q;
}

double edge_prob(KeyCount k_i, KeyCount k_j, KeyCount pool) { return 1.0 - no_overlap_prob(k_i, k_j, pool); }

DerivedProbabilities derive(const NetworkProfile& profile, const ChannelModel& channel) {
    profile.validate();
    channel.validate();
    return derive_unchecked(profile, channel.link_probability());
}

KeyCount critical_k1(std::int64_t n, double alpha, KeyCount pool, std::span<const double> mu,
                     const RingRule& rule) {
    if(n < 2) {
        throw std::invalid_argument("critical K1 needs n >= 2");
    }
    if(!(alpha > 0.0 && alpha <= 1.0)) {
        throw std::invalid_argument("critical K1 needs 0 < alpha <= 1");
    }
    if(pool < 1) {
        throw std::invalid_argument("key pool size must be positive");
    }
    validate_mix(mu);
    if(rule.classes() != mu.size()) {
        throw std::invalid_argument("ring rule and class mix disagree on the number of classes");
    }
    const double nd = static_cast<double>(n);
    const double threshold = (1.0 / alpha) * std::log(nd) / nd;

    NetworkProfile profile;
    profile.mu.assign(mu.begin(), mu.end());
    profile.pool = pool;
    for(KeyCount k1 = 1; k1 <= pool; ++k1) {
        auto rings = rule.apply(k1);
        if(*std::max_element(rings.begin(), rings.end()) > pool) {
            break;
        }
        if(rings.front() < 1 || !std::is_sorted(rings.begin(), rings.end())) {
            continue;
        }
        profile.ring_sizes = std::move(rings);
        const auto derived = derive_unchecked(profile, alpha);
        if(derived.lambda.front() > threshold) {
            return k1;
        }
    }
    std::ostringstream msg;
    msg << "no K1 satisfies lambda_1 > log(n)/(n alpha) = " << threshold << " within the key pool";
    throw NoSolutionError(msg.str());
}

double match_alpha_to_rho(double alpha) {
    if(!(alpha > 0.0)) {
        throw std::invalid_argument("alpha must be positive to match a disk radius");
    }
    if(alpha >= std::numbers::pi / 4.0) {
        throw std::invalid_argument("alpha >= pi/4 would need a disk radius >= 0.5 on the unit torus");
    }
    return std::sqrt(alpha / std::numbers::pi);
}

double match_rho_to_alpha(double rho) { return std::numbers::pi * rho * rho; }

double critical_transmissibility(std::int64_t n, double lambda1) {
    if(n < 2) {
        throw std::invalid_argument("critical transmissibility needs n >= 2");
    }
    if(!(lambda1 > 0.0)) {
        throw std::invalid_argument("critical transmissibility needs lambda_1 > 0");
    }
    const double nd = static_cast<double>(n);
    return std::log(nd) / (nd * lambda1);
}

ScalingReport check_scaling(std::int64_t n, const NetworkProfile& profile, double alpha, double sigma) {
    if(n < 2) {
        throw std::invalid_argument("scaling check needs n >= 2");
    }
    if(!(sigma > 0.0)) {
        throw std::invalid_argument("sigma must be positive");
    }
    if(!(alpha >= 0.0 && alpha <= 1.0)) {
        throw std::invalid_argument("alpha must lie in [0, 1]");
    }
    check_basic_profile(profile);

    ScalingReport report;
    const auto& k = profile.ring_sizes;
    report.ordering_ok = std::is_sorted(k.begin(), k.end()) && 2 * k.back() <= profile.pool;
    if(!std::is_sorted(k.begin(), k.end())) {
        report.warnings.emplace_back("key ring sizes are not nondecreasing");
    }
    if(2 * k.back() > profile.pool) {
        report.warnings.emplace_back("largest key ring exceeds half of the key pool");
    }
    const double nd = static_cast<double>(n);
    report.pool_ok = static_cast<double>(profile.pool) >= sigma * nd;

    const auto derived = derive_unchecked(profile, alpha);
    report.omega_ratio = derived.p[0][0] * nd * alpha;
    report.c_n = derived.capital_lambda[0] * nd / std::log(nd);
    return report;
}

BoundReport verify_bounds(KeyCount k_i, KeyCount k_j, KeyCount pool, double a) {
    BoundReport report;
    if(k_i < 1 || k_j < 1 || pool < 1) {
        report.notes.emplace_back("key counts must be positive");
        return report;
    }
    if(!(a >= 1.0) || !std::isfinite(a)) {
        report.notes.emplace_back("exponent a must be >= 1");
    }
    if(k_i + k_j > pool) {
        report.notes.emplace_back("k_i + k_j > pool: sandwich and exponential bounds not applicable");
    } else {
        const double ki = static_cast<double>(k_i);
        const double kj = static_cast<double>(k_j);
        const double p = static_cast<double>(pool);
        const double q = no_overlap_prob(k_i, k_j, pool);
        const double prob = 1.0 - q;
        const double product = ki * kj / p;

        report.sandwich = le_with_slack(1.0 - std::exp(-product), prob) && le_with_slack(prob, ki * kj / (p - ki));
        report.exponential = le_with_slack(q, std::exp(-product));
        report.equivalence_ratio = prob / product;
    }

    if(a >= 1.0 && std::isfinite(a)) {
        const auto scaled = static_cast<KeyCount>(std::ceil(a * static_cast<double>(k_i)));
        if(scaled + k_j > pool) {
            report.notes.emplace_back("ceil(a k_i) + k_j > pool: combinatorial bound not applicable");
        } else {
            const double lhs = no_overlap_prob(scaled, k_j, pool);
            const double rhs = std::pow(no_overlap_prob(k_i, k_j, pool), a);
            report.combinatorial = le_with_slack(lhs, rhs);
        }
    }
    return report;
}

}  // namespace keygraph
