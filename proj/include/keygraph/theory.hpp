/**
 * Closed-form quantities for the heterogeneous key predistribution model:
 * pairwise key-sharing probabilities, mean class edge probabilities,
 * connectivity thresholds and finite-n scaling diagnostics.
 *
 * Every function here is pure and safe to call concurrently.
 */

#ifndef KEYGRAPH_THEORY_HPP_
#define KEYGRAPH_THEORY_HPP_

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace keygraph {

using KeyCount = std::int64_t;

/// Raised when a critical key-ring search finds no admissible ring size.
class NoSolutionError : public std::runtime_error {
 public:
    using std::runtime_error::runtime_error;
};

/**
 * Parameters of the heterogeneous scheme: class mix, per-class key-ring
 * sizes (nondecreasing) and key pool size.
 */
struct NetworkProfile {
    std::vector<double> mu;
    std::vector<KeyCount> ring_sizes;
    KeyCount pool = 0;

    std::size_t classes() const { return mu.size(); }

    /// Throws std::invalid_argument on a hard violation; returns warnings
    /// (currently only "largest ring exceeds half the pool").
    std::vector<std::string> validate() const;
};

/// Validates a class mix on its own (used by the sampler).
void validate_mix(std::span<const double> mu);

struct ChannelModel {
    enum class Kind { OnOff, Disk };

    Kind kind = Kind::OnOff;
    double alpha = 1.0;  // OnOff only
    double rho = 0.0;    // Disk only, torus units

    static ChannelModel on_off(double alpha);
    static ChannelModel disk(double rho);

    /// OnOff accepts alpha in [0, 1] (alpha = 0 is the degenerate empty
    /// channel); Disk requires 0 < rho < 0.5.
    void validate() const;

    /// Marginal probability that a channel is up: alpha, or pi*rho^2.
    double link_probability() const;
};

struct DerivedProbabilities {
    std::vector<std::vector<double>> p;  // r x r key-sharing probabilities
    std::vector<double> lambda;          // mean key-sharing prob per class
    std::vector<double> capital_lambda;  // alpha * lambda
    double k_avg = 0.0;
};

struct ScalingReport {
    bool ordering_ok = false;
    bool pool_ok = false;
    double omega_ratio = 0.0;  // p11 * n * alpha
    double c_n = 0.0;          // Lambda_1 * n / log n
    std::vector<std::string> warnings;
};

struct BoundReport {
    // nullopt when the bound's precondition does not hold for the input.
    std::optional<bool> sandwich;
    std::optional<bool> combinatorial;
    std::optional<bool> exponential;
    double equivalence_ratio = 0.0;  // edge_prob / (k_i k_j / pool)
    std::vector<std::string> notes;

    bool all_hold() const;
};

/**
 * Maps the smallest ring size K1 to the full ring vector (K1, ..., Kr).
 * Offsets: K_i = K1 + offset_i. Factors: K_i = round(factor_i * K1).
 */
class RingRule {
 public:
    enum class Kind { Offset, Factor };

    static RingRule offsets(std::vector<KeyCount> offsets);
    static RingRule factors(std::vector<double> factors);

    Kind kind() const { return kind_; }
    std::size_t classes() const;
    std::vector<KeyCount> apply(KeyCount k1) const;

 private:
    Kind kind_ = Kind::Offset;
    std::vector<KeyCount> offsets_;
    std::vector<double> factors_;
};

/// Ratio C(pool - k_i, k_j) / C(pool, k_j) as a running product; 0 when
/// k_i + k_j > pool.
double no_overlap_prob(KeyCount k_i, KeyCount k_j, KeyCount pool);

/// Probability that rings of sizes k_i and k_j drawn from a pool share a key.
double edge_prob(KeyCount k_i, KeyCount k_j, KeyCount pool);

DerivedProbabilities derive(const NetworkProfile& profile, const ChannelModel& channel);

/// Smallest K1 >= 1 with lambda_1 > (1/alpha) log(n)/n.
KeyCount critical_k1(std::int64_t n, double alpha, KeyCount pool, std::span<const double> mu,
                     const RingRule& rule);

double match_alpha_to_rho(double alpha);
double match_rho_to_alpha(double rho);

/// log(n) / (n * lambda1).
double critical_transmissibility(std::int64_t n, double lambda1);

ScalingReport check_scaling(std::int64_t n, const NetworkProfile& profile, double alpha, double sigma);

BoundReport verify_bounds(KeyCount k_i, KeyCount k_j, KeyCount pool, double a);

}  // namespace keygraph

#endif  // KEYGRAPH_THEORY_HPP_
