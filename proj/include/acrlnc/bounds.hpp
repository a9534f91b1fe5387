#pragma once

#include <optional>

// Closed-form delay and throughput bounds for AC-RLNC.
namespace acrlnc::bounds {

struct BoundParams {
    double eps = 0.0;
    std::optional<double> eps_max;  // defaults to eps
    int overlap = 6;
    int rtt = 4;
    std::optional<int> k;           // defaults to rtt - 1
    double th = 0.0;
    double lambda = 0.0;            // fraction of time without feedback
    double p_e_target = 1e-3;

    double eps_max_or_eps() const { return eps_max.value_or(eps); }
    int k_or_default() const { return k.value_or(rtt - 1); }
    // Effective DoF requirement m_e = overlap * eps.
    double m_e() const { return overlap * eps; }
};

// Probability that the overlap window closes: (1 - eps_max)^overlap.
double prob_eow(double eps_max, int overlap);

// sum_{i=1}^{floor(overlap*eps_max)} C(overlap,i) eps^i (1-eps)^(overlap-i).
double prob_retrans(double eps, double eps_max, int overlap);

struct MeanDelayBound {
    double no_fb = 0.0;
    double nack = 0.0;
    double ack = 0.0;
    double combined = 0.0;  // lambda*no_fb + (1-lambda)*(nack + ack)
};

// Throws std::domain_error when eps_max >= 1 or parameters leave their domain.
MeanDelayBound mean_delay_bound(const BoundParams& p);

// overlap*eps_max + log_{eps_max}(p_e) + overlap; eps_max and p_e in (0,1).
double max_delay_bound(int overlap, double eps_max, double p_e_target);

// Model DoF rate d = m_d / a_d with m_d = overlap*eps and
// a_d = m_d/(1-eps) + eps*m_d; the overlap cancels.
double model_dof_rate(double eps);
// Largest admissible eps_max: 1 - d - th.
double eps_max_cap(double eps, double th);

enum class BcSupport {
    Printed,  // t = 0 .. RTT-1
    Full      // t = 0 .. RTT
};

// Bhattacharyya coefficient between Binomial(rtt, r_a) and Binomial(rtt, r_b).
double bc_binomial(double r_a, double r_b, int rtt, BcSupport support = BcSupport::Printed);

// -ln(BC); saturates at kDistanceSentinel with a flag when BC == 0.
struct Distance {
    double value = 0.0;
    bool saturated = false;
};
inline constexpr double kDistanceSentinel = 744.44007192138122;  // -ln(denorm_min)
Distance bhattacharyya_distance(double bc);

struct ThroughputBound {
    double value = 0.0;
    double r_lo = 0.0;      // rate known at the sender, r(t - RTT)
    double r_hi = 0.0;      // deviated rate r(t)
    double variance = 0.0;  // V over one RTT
    int m = 0;
    double bc = 0.0;
    Distance distance;
};

// m defaults to fec_count(eps, k).
ThroughputBound throughput_bound_bec(double eps, int rtt, int k, std::optional<int> m = std::nullopt,
                                     BcSupport support = BcSupport::Printed);
// eps = pi_B; the BEC Bhattacharyya distance serves as the GE surrogate.
ThroughputBound throughput_bound_ge(double q, double s, int rtt, int k,
                                    std::optional<int> m = std::nullopt,
                                    BcSupport support = BcSupport::Printed);

}  // namespace acrlnc::bounds
