#include "doctest.h"

#include <cmath>
#include <sstream>

#include "acrlnc/channel.hpp"

using namespace acrlnc;

TEST_CASE("BEC") {
    Rng rng(1);
    BecChannel zero(0.0);
    for (int i = 0; i < 1000; ++i) CHECK_FALSE(zero.step(rng));

    BecChannel ch(0.3);
    const int n = 200000;
    int e = 0;
    for (int i = 0; i < n; ++i) e += ch.step(rng);
    CHECK(std::abs(e / double(n) - 0.3) < 3 * std::sqrt(0.3 * 0.7 / n));

    CHECK_THROWS(BecChannel(1.0));
    CHECK_THROWS(BecChannel(-0.1));
}

TEST_CASE("stationary distribution") {
    auto a = stationary(0.3, 0.3);
    CHECK(a.pi_good == doctest::Approx(0.5));
    auto b = stationary(0.5, 0.3);
    CHECK(b.pi_good == doctest::Approx(0.375));
    CHECK(b.pi_bad == doctest::Approx(0.625));
    CHECK(stationary(1e-12, 0.3).pi_good == doctest::Approx(1.0));
    CHECK(GeChannel::from_erasure_rate(0.4, 0.3).q() == doctest::Approx(0.2));
}

TEST_CASE("GE long-run statistics") {
    Rng rng(5);
    GeChannel ch(0.5, 0.3);
    ch.reset(rng);
    const int n = 1000000;
    long e = 0, bursts = 0;
    bool prev = false;
    for (int i = 0; i < n; ++i) {
        const bool x = ch.step(rng);
        e += x;
        bursts += x && !prev;
        prev = x;
    }
    const double pb = 0.625;
    // Positive correlation widens the spread; 2 sigma of the Markov-chain estimate.
    const double rho = 1 - 0.5 - 0.3;
    const double sigma = std::sqrt(pb * (1 - pb) / n * (1 + rho) / (1 - rho));
    CHECK(std::abs(e / double(n) - pb) < 2 * sigma);
    CHECK(double(e) / bursts == doctest::Approx(1 / 0.3).epsilon(0.02));

    GeChannel sym(0.2, 0.2);
    sym.reset(rng);
    e = 0;
    for (int i = 0; i < n; ++i) e += sym.step(rng);
    CHECK(e / double(n) == doctest::Approx(0.5).epsilon(0.01));
}

TEST_CASE("expected transmissions") {
    CHECK(expected_transmissions_bec(0.0) == 1.0);
    CHECK(expected_transmissions_bec(0.5) == doctest::Approx(2.0));
    // eps = 0.5 with s = 0.3 gives q = 0.3.
    CHECK(expected_transmissions_ge(0.3, 0.3) == doctest::Approx(2.6667).epsilon(1e-4));
    CHECK_THROWS_AS(expected_transmissions_ge(0.3, 1.0), std::domain_error);
    // Small s: GE needs more transmissions than BEC at the same average rate.
    const double q = 0.05, s = 0.1, eps = q / (q + s);
    CHECK(expected_transmissions_ge(q, s) > expected_transmissions_bec(eps));
}

TEST_CASE("trace parse and round trip") {
    std::istringstream in("#ac-rlnc-trace v1\n0011 0\n\n 1\n");
    CHECK(parse_trace(in) == std::vector<bool>{false, false, true, true, false, true});

    std::istringstream bad_header("0011\n");
    CHECK_THROWS_AS(parse_trace(bad_header), TraceParseError);

    std::istringstream bad("#ac-rlnc-trace v1\n0101\n01x1\n");
    try {
        parse_trace(bad);
        FAIL("expected a parse error");
    } catch (const TraceParseError& e) {
        CHECK(e.line == 3);
    }

    Rng rng(9);
    BecChannel ch(0.4);
    std::vector<bool> rec(300);
    for (auto&& x : rec) x = ch.step(rng);
    std::stringstream buf;
    write_trace(buf, rec);
    CHECK(parse_trace(buf) == rec);

    TraceChannel tr({true, false});
    CHECK(tr.step(rng));
    CHECK_FALSE(tr.step(rng));
    CHECK_THROWS_AS(tr.step(rng), EndOfTrace);
}
