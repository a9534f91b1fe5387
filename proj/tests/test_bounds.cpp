#include "doctest.h"

#include <cmath>

#include "acrlnc/bounds.hpp"
#include "acrlnc/channel.hpp"
#include "bounds_oracle.hpp"

using namespace acrlnc::bounds;

namespace {

double rel(double got, const oracle::Real& want) {
    const double w = want.convert_to<double>();
    if (w == 0.0) return std::abs(got);
    return std::abs(got - w) / std::abs(w);
}

}  // namespace

TEST_CASE("probability of end of window") {
    CHECK(prob_eow(0.0, 6) == 1.0);
    CHECK(prob_eow(0.5, 6) == 0.015625);
    CHECK(prob_eow(0.3, 1) == doctest::Approx(0.7));
}

TEST_CASE("retransmission probability") {
    CHECK(prob_retrans(0.0, 0.5, 6) == 0.0);
    CHECK(prob_retrans(0.5, 0.5, 6) == doctest::Approx(41.0 / 64));
    CHECK(prob_retrans(0.1, 0.1, 6) == 0.0);
    // floor(10 * 0.3) must be 3 even though 10 * 0.3 rounds oddly.
    CHECK(prob_retrans(0.3, 0.3, 10) == doctest::Approx(oracle::prob_retrans(0.3, 0.3, 10).convert_to<double>()));
}

TEST_CASE("mean delay bound") {
    BoundParams p;
    p.eps = 0.0;
    p.overlap = 6;
    p.rtt = 4;
    const auto b = mean_delay_bound(p);
    CHECK(b.no_fb == doctest::Approx(3.0));
    CHECK(b.nack == 0.0);

    p.eps = 0.5;
    p.lambda = 4.0 / 2000;
    const auto m = mean_delay_bound(p);
    const auto o = oracle::mean_delay(0.5, 0.5, 6, 4, 3, 4.0 / 2000);
    CHECK(rel(m.no_fb, o.no_fb) < 1e-12);
    CHECK(rel(m.nack, o.nack) < 1e-12);
    CHECK(rel(m.ack, o.ack) < 1e-12);
    CHECK(rel(m.combined, o.combined) < 1e-12);

    p.eps_max = 1.0;
    CHECK_THROWS_AS(mean_delay_bound(p), std::domain_error);
    p.eps_max.reset();
    p.overlap = 2;
    CHECK_THROWS_AS(mean_delay_bound(p), std::domain_error);
}

TEST_CASE("max delay bound") {
    CHECK(max_delay_bound(6, 0.5, 1e-3) == doctest::Approx(18.966).epsilon(1e-4));
    CHECK(max_delay_bound(4, 0.2, 0.2) == doctest::Approx(4 * 0.2 + 1 + 4));
    CHECK(max_delay_bound(8, 0.5, 1e-3) > max_delay_bound(6, 0.5, 1e-3));
    CHECK_THROWS_AS(max_delay_bound(6, 0.0, 1e-3), std::domain_error);
    CHECK_THROWS_AS(max_delay_bound(6, 1.0, 1e-3), std::domain_error);
}

TEST_CASE("Bhattacharyya coefficient") {
    for (double r : {0.0, 0.2, 0.5, 0.9, 1.0}) CHECK(bc_binomial(r, r, 7, BcSupport::Full) == doctest::Approx(1.0));
    CHECK(bc_binomial(0.5, 0.5, 4) == doctest::Approx(0.9375));
    CHECK(bc_binomial(0.0, 1.0, 5, BcSupport::Full) == 0.0);
    const auto d = bhattacharyya_distance(0.0);
    CHECK(d.saturated);
    CHECK(d.value == kDistanceSentinel);
    CHECK(bhattacharyya_distance(1.0).value == 0.0);
}

TEST_CASE("throughput bounds") {
    CHECK(throughput_bound_bec(0.0, 10, 9).value == 1.0);
    CHECK(throughput_bound_ge(0.0, 0.3, 10, 9).value == 1.0);

    const auto b = throughput_bound_bec(0.5, 10, 9);
    CHECK(b.m == 5);
    CHECK(rel(b.value, oracle::throughput_bec(0.5, 10, 9)) < 1e-9);

    // GE bound stays at or below the BEC bound at equal average rate.
    for (int rtt : {4, 10, 30})
        for (double eps = 0.05; eps < 0.75; eps += 0.05) {
            const double q = eps * 0.3 / (1 - eps);
            CHECK(throughput_bound_ge(q, 0.3, rtt, rtt - 1).value <=
                  throughput_bound_bec(eps, rtt, rtt - 1).value + 1e-12);
        }
}

TEST_CASE("throughput bound monotonicity") {
    // Nonincreasing once r_hi stays below 1.
    for (int rtt : {4, 10, 30}) {
        double prev = 2.0;
        for (double eps = 0.5; eps < 0.9; eps += 0.05) {
            const double v = throughput_bound_bec(eps, rtt, rtt - 1).value;
            CHECK(v <= prev + 1e-12);
            prev = v;
        }
    }
    // Below that the clamp r_hi = 1 empties the printed sum and the distance saturates,
    // so the bound rises with eps.
    const auto low = throughput_bound_bec(0.2, 4, 3), high = throughput_bound_bec(0.4, 4, 3);
    CHECK(low.r_hi == 1.0);
    CHECK(low.distance.saturated);
    CHECK(high.value > low.value);
}

TEST_CASE("oracle agreement on a parameter grid") {
    int n = 0;
    for (double eps : {0.05, 0.2, 0.35, 0.5, 0.65}) {
        for (int rtt : {2, 5, 20, 60}) {
            const int k = rtt - 1;
            for (int o : {k, 2 * k, 4 * k}) {
                const double lambda = rtt / 1000.0;
                const auto m = mean_delay_bound({eps, std::nullopt, o, rtt, std::nullopt, 0.0, lambda, 1e-3});
                const auto w = oracle::mean_delay(eps, eps, o, rtt, k, lambda);
                CHECK(rel(m.combined, w.combined) < 1e-9);
                CHECK(rel(prob_retrans(eps, eps, o), oracle::prob_retrans(eps, eps, o)) < 1e-9);
                CHECK(rel(max_delay_bound(o, eps, 1e-4), oracle::max_delay(o, eps, oracle::Real(1e-4))) < 1e-9);
                ++n;
            }
            CHECK(rel(throughput_bound_bec(eps, rtt, k).value, oracle::throughput_bec(eps, rtt, k)) < 1e-9);
            const double q = 0.4 * eps;
            CHECK(rel(throughput_bound_ge(q, 0.3, rtt, k).value, oracle::throughput_ge(q, 0.3, rtt, k)) < 1e-9);
        }
    }
    CHECK(n == 60);
}

TEST_CASE("model DoF rate cap") {
    CHECK(model_dof_rate(0.5) == doctest::Approx(0.4));
    CHECK(eps_max_cap(0.5, 0.1) == doctest::Approx(0.5));
    CHECK(rel(eps_max_cap(0.3, 0.05), 1 - oracle::dof_rate(0.3) - oracle::Real(0.05)) < 1e-12);
}
