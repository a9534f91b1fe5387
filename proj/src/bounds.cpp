#include "acrlnc/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "acrlnc/acrlnc.hpp"
#include "acrlnc/channel.hpp"

namespace acrlnc::bounds {

namespace {

void require(bool ok, const char* what) {
    if (!ok) throw std::domain_error(what);
}

bool is_probability(double x) { return x >= 0.0 && x <= 1.0; }

// floor(a * b) for a, b >= 0, exact even when the rounded product lands on an integer.
long exact_floor_product(double a, double b) {
    double f = std::floor(a * b);
    if (std::fma(a, b, -f) < 0.0) f -= 1.0;
    return static_cast<long>(f);
}

}  // namespace

double prob_eow(double eps_max, int overlap) {
    require(is_probability(eps_max), "prob_eow: eps_max must lie in [0,1]");
    require(overlap >= 1, "prob_eow: overlap must be positive");
    return std::pow(1.0 - eps_max, overlap);
}

double prob_retrans(double eps, double eps_max, int overlap) {
    require(is_probability(eps) && is_probability(eps_max), "prob_retrans: probabilities out of range");
    require(overlap >= 1, "prob_retrans: overlap must be positive");
    const long top = std::min<long>(exact_floor_product(overlap, eps_max), overlap);
    double sum = 0.0;
    double c = 1.0;  // C(overlap, i)
    for (long i = 1; i <= top; ++i) {
        c = c * static_cast<double>(overlap - i + 1) / static_cast<double>(i);
        sum += c * std::pow(eps, static_cast<double>(i)) *
               std::pow(1.0 - eps, static_cast<double>(overlap - i));
    }
    return sum;
}

MeanDelayBound mean_delay_bound(const BoundParams& p) {
    const double emax = p.eps_max_or_eps();
    const int k = p.k_or_default();
    require(emax < 1.0, "mean_delay_bound: eps_max = 1 diverges");
    require(is_probability(p.eps) && p.eps <= emax, "mean_delay_bound: need 0 <= eps <= eps_max < 1");
    require(k >= 1 && p.overlap >= k, "mean_delay_bound: need overlap >= k >= 1");
    require(is_probability(p.lambda), "mean_delay_bound: lambda must lie in [0,1]");

    const double peow = prob_eow(emax, p.overlap);
    const double pret = prob_retrans(p.eps, emax, p.overlap);
    const double eow_delay = p.m_e() + k;
    const double rtt = p.rtt;
    const double scale = 1.0 / (1.0 - emax);

    MeanDelayBound b;
    b.no_fb = scale * (peow * eow_delay + (1.0 - peow) * rtt);
    b.nack = emax * scale *
             (pret * ((1.0 - peow) * rtt + peow * eow_delay) +
              (1.0 - pret) * (rtt + peow * eow_delay));
    b.ack = (1.0 - emax) * (peow * eow_delay + pret * rtt + (1.0 - pret) * rtt);
    b.combined = p.lambda * b.no_fb + (1.0 - p.lambda) * (b.nack + b.ack);
    return b;
}

double max_delay_bound(int overlap, double eps_max, double p_e_target) {
    require(eps_max > 0.0 && eps_max < 1.0, "max_delay_bound: eps_max must lie in (0,1)");
    require(p_e_target > 0.0 && p_e_target < 1.0, "max_delay_bound: P_e must lie in (0,1)");
    require(overlap >= 1, "max_delay_bound: overlap must be positive");
    return overlap * eps_max + std::log(p_e_target) / std::log(eps_max) + overlap;
}

double model_dof_rate(double eps) {
    require(eps > 0.0 && eps < 1.0, "model_dof_rate: eps must lie in (0,1)");
    return 1.0 / (1.0 / (1.0 - eps) + eps);
}

double eps_max_cap(double eps, double th) { return 1.0 - model_dof_rate(eps) - th; }

double bc_binomial(double r_a, double r_b, int rtt, BcSupport support) {
    require(is_probability(r_a) && is_probability(r_b), "bc_binomial: rates must lie in [0,1]");
    require(rtt >= 2, "bc_binomial: rtt must be at least 2");
    const double succ = r_a * r_b;
    const double fail = (1.0 - r_a) * (1.0 - r_b);
    const int top = support == BcSupport::Printed ? rtt - 1 : rtt;
    double sum = 0.0;
    double c = 1.0;  // C(rtt, t)
    for (int t = 0; t <= top; ++t) {
        if (t > 0) c = c * static_cast<double>(rtt - t + 1) / static_cast<double>(t);
        sum += c * std::pow(succ, t / 2.0) * std::pow(fail, (rtt - t) / 2.0);
    }
    return sum;
}

Distance bhattacharyya_distance(double bc) {
    if (!(bc > 0.0)) return {kDistanceSentinel, true};
    return {-std::log(bc), false};
}

namespace {

ThroughputBound rate_deviation_bound(double r_lo, double variance, int rtt, int k, int m,
                                     BcSupport support) {
    require(k + m >= 1, "throughput bound: k + m must be positive");
    ThroughputBound b;
    b.r_lo = r_lo;
    b.variance = variance;
    b.m = m;
    b.r_hi = std::min(1.0, r_lo + std::sqrt(variance) / static_cast<double>(k + m));
    if (b.r_hi == b.r_lo) {
        // Identical output distributions: zero distance by definition.
        b.bc = 1.0;
        b.distance = {0.0, false};
    } else {
        b.bc = bc_binomial(b.r_hi, b.r_lo, rtt, support);
        b.distance = bhattacharyya_distance(b.bc);
    }
    b.value = r_lo - b.distance.value;
    return b;
}

}  // namespace

ThroughputBound throughput_bound_bec(double eps, int rtt, int k, std::optional<int> m,
                                     BcSupport support) {
    require(eps >= 0.0 && eps < 1.0, "throughput_bound_bec: eps must lie in [0,1)");
    const double r_lo = 1.0 - eps;
    const int mm = m.value_or(fec_count(eps, std::max(k, 1)));
    return rate_deviation_bound(r_lo, rtt * r_lo * (1.0 - r_lo), rtt, k, mm, support);
}

ThroughputBound throughput_bound_ge(double q, double s, int rtt, int k, std::optional<int> m,
                                    BcSupport support) {
    require(q >= 0.0 && q < 1.0 && s > 0.0 && s <= 1.0, "throughput_bound_ge: q in [0,1), s in (0,1]");
    const double pi_b = stationary(q, s).pi_bad;
    const double r_lo = 1.0 - pi_b;
    const int mm = m.value_or(fec_count(pi_b, std::max(k, 1)));
    // V_GE = (pi_B eps_B - (pi_B eps_B)^2) RTT with eps_B = 1.
    return rate_deviation_bound(r_lo, (pi_b - pi_b * pi_b) * rtt, rtt, k, mm, support);
}

}  // namespace acrlnc::bounds
