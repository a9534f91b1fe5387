// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fails.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <fmt/format.h>

#include "acrlnc/bounds.hpp"
#include "acrlnc/harness.hpp"
#include "bounds_oracle.hpp"
#include "properties.hpp"

using namespace acrlnc;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

unsigned workers() { return std::max(1u, std::thread::hardware_concurrency()); }

// Seed-averaged rows of a BEC sweep, keyed by (protocol, eps, rtt).
struct Key {
    Protocol protocol;
    double eps;
    int rtt;
    bool operator<(const Key& o) const {
        return std::tie(protocol, eps, rtt) < std::tie(o.protocol, o.eps, o.rtt);
    }
};

std::map<Key, SweepRow> means(const std::vector<SweepRow>& rows) {
    std::map<Key, SweepRow> out;
    for (const auto& r : rows)
        if (r.seed == "mean") out[{r.protocol, r.eps, r.rtt}] = r;
    return out;
}

Outcome golden() {
    const auto c = check_golden();
    std::string d = c.ok() ? "12-slot action log, t=7 and t=9 criteria and w_min all match"
                           : fmt::format("{} mismatches", c.mismatches.size());
    for (const auto& m : c.mismatches) d += "; " + m;
    return {c.ok(), d};
}

Outcome throughput_ratio(ChannelKind ch, double lo, double hi) {
    BoundsConfig b;
    b.channels = {ch};
    b.eps_values = {0.5};
    if (ch == ChannelKind::Ge) {
        b.q = 0.5;
        b.s = 0.3;
    }
    b.rtts.clear();
    for (int r = 2; r <= 100; ++r) b.rtts.push_back(r);
    const auto rows = bounds_table(b);
    double mn = 1e9, mx = -1e9;
    int outside = 0;
    for (const auto& r : rows) {
        const double ratio = *r.throughput_bound / (1.0 - r.eps);
        mn = std::min(mn, ratio);
        mx = std::max(mx, ratio);
        if (ratio < lo || ratio > hi) ++outside;
    }
    const double at100 = *rows.back().throughput_bound / (1.0 - rows.back().eps);
    return {outside == 0,
            fmt::format("capacity {:.4f}; bound/capacity in [{:.4f}, {:.4f}], {:.4f} at RTT=100; "
                        "{}/{} RTT values outside [{}, {}]",
                        1.0 - rows.front().eps, mn, mx, at100, outside, rows.size(), lo, hi)};
}

Outcome oracle_grid() {
    std::mt19937_64 rng(2024);
    std::uniform_real_distribution<double> ueps(0.01, 0.7), uth(0.0, 0.2), ulog(-6.0, -1.0);
    double worst = 0.0;
    std::string worst_what;
    auto cmp = [&](const char* what, double got, const oracle::Real& want) {
        const double w = want.convert_to<double>();
        const double e = w == 0.0 ? std::abs(got) : std::abs(got - w) / std::abs(w);
        if (e > worst) {
            worst = e;
            worst_what = what;
        }
    };
    for (int i = 0; i < 100; ++i) {
        const double eps = ueps(rng);
        const int rtt = 2 + static_cast<int>(rng() % 59);
        const int k = rtt - 1;
        const int o = k * (1 + static_cast<int>(rng() % 4));
        const double th = uth(rng);
        const double pe = std::pow(10.0, ulog(rng));
        const double lambda = std::min(1.0, rtt / 1000.0);

        cmp("prob_eow", bounds::prob_eow(eps, o), oracle::prob_eow(eps, o));
        cmp("prob_retrans", bounds::prob_retrans(eps, eps, o), oracle::prob_retrans(eps, eps, o));
        bounds::BoundParams p;
        p.eps = eps;
        p.overlap = o;
        p.rtt = rtt;
        p.th = th;
        p.lambda = lambda;
        p.p_e_target = pe;
        const auto m = bounds::mean_delay_bound(p);
        const auto w = oracle::mean_delay(eps, eps, o, rtt, k, lambda);
        cmp("no_fb", m.no_fb, w.no_fb);
        cmp("nack", m.nack, w.nack);
        cmp("ack", m.ack, w.ack);
        cmp("combined", m.combined, w.combined);
        cmp("max_delay", bounds::max_delay_bound(o, eps, pe), oracle::max_delay(o, eps, oracle::Real(pe)));
        cmp("eps_max_cap", bounds::eps_max_cap(eps, th), 1 - oracle::dof_rate(eps) - oracle::Real(th));
        cmp("bc_full", bounds::bc_binomial(1 - eps, std::min(1.0, 1.1 - eps), rtt, bounds::BcSupport::Full),
            oracle::bc(1 - oracle::Real(eps), std::min(1.0, 1.1 - eps), rtt, true));
        cmp("throughput_bec", bounds::throughput_bound_bec(eps, rtt, k).value, oracle::throughput_bec(eps, rtt, k));
        const double q = eps * 0.3 / (1 - eps);
        cmp("throughput_ge", bounds::throughput_bound_ge(q, 0.3, rtt, k).value, oracle::throughput_ge(q, 0.3, rtt, k));
    }
    return {worst <= 1e-9, fmt::format("100 points x 11 quantities, max relative error {:.3g} ({})", worst,
                                       worst_what.empty() ? "-" : worst_what)};
}

Outcome mean_delay_dominance() {
    const std::vector<double> eps{0.1, 0.2, 0.3, 0.4, 0.5};
    SweepConfig s;
    s.base.packets = 5000;
    s.base.rtt = 4;
    s.eps_values = eps;
    s.protocols = {Protocol::Acrlnc};
    s.seeds = 20;
    s.jobs = workers();
    const auto avg = means(sweep(s));

    SweepConfig tail = s;
    tail.seeds = 1000;
    tail.base_seed = 100000;
    tail.aggregate = false;
    const auto tail_rows = sweep(tail);

    bool ok = true;
    std::string d;
    for (double e : eps) {
        const auto& r = avg.at({Protocol::Acrlnc, e, 4});
        bounds::BoundParams p;
        p.eps = e;
        p.overlap = 6;
        p.rtt = 4;
        p.lambda = 4.0 / r.slots;
        const double bound = bounds::mean_delay_bound(p).combined;
        const double dmax_bound = bounds::max_delay_bound(6, e, 1e-3);
        int over = 0, n = 0;
        for (const auto& t : tail_rows)
            if (t.eps == e) {
                ++n;
                over += t.d_max > dmax_bound;
            }
        const double freq = static_cast<double>(over) / n;
        const bool point = r.d_mean <= bound && freq <= 2e-3;
        ok = ok && point;
        d += fmt::format("{}eps={}: D_mean {:.3f} vs bound {:.3f}, P(D_max > {:.2f}) = {:.3f}", d.empty() ? "" : "; ",
                         e, r.d_mean, bound, dmax_bound, freq);
    }
    return {ok, d};
}

Outcome bec_comparison() {
    SweepConfig s;
    s.base.packets = 10000;
    s.eps_values = {0.05, 0.1, 0.15, 0.2, 0.25, 0.3, 0.35, 0.4, 0.45, 0.5};
    s.rtts = {4, 10, 20};
    s.protocols = {Protocol::Acrlnc, Protocol::SrArq};
    s.seeds = 20;
    s.jobs = workers();
    const auto avg = means(sweep(s));
    const double ac = avg.at({Protocol::Acrlnc, 0.4, 20}).throughput;
    const double sr = avg.at({Protocol::SrArq, 0.4, 20}).throughput;
    int worse = 0;
    std::string where;
    for (double e : s.eps_values)
        for (int rtt : s.rtts)
            if (avg.at({Protocol::Acrlnc, e, rtt}).throughput < avg.at({Protocol::SrArq, e, rtt}).throughput) {
                ++worse;
                if (where.size() < 80) where += fmt::format(" ({},{})", e, rtt);
            }

    // Reference point only: SR-ARQ with a send window of one RTT.
    SweepConfig w = s;
    w.eps_values = {0.4};
    w.rtts = {20};
    w.protocols = {Protocol::SrArq};
    w.base.srarq_window = 20;
    const double sr_w = means(sweep(w)).at({Protocol::SrArq, 0.4, 20}).throughput;

    return {ac / sr >= 1.5 && worse == 0,
            fmt::format("eps=0.4 RTT=20: AC-RLNC {:.4f} / SR-ARQ {:.4f} = {:.3f} (gate 1.5); AC-RLNC below SR-ARQ "
                        "at {}/{} points{}; windowed SR-ARQ (window 20) reference {:.4f}, ratio {:.3f}",
                        ac, sr, ac / sr, worse, s.eps_values.size() * s.rtts.size(), where, sr_w, ac / sr_w)};
}

Outcome ge_comparison() {
    SweepConfig s;
    s.base.channel = ChannelKind::Ge;
    s.base.q = 0.4;
    s.base.s = 0.3;
    s.base.packets = 10000;
    s.base.rtt = 20;
    s.protocols = {Protocol::Acrlnc, Protocol::SrArq};
    s.seeds = 20;
    s.jobs = workers();
    const auto rows = sweep(s);
    const SweepRow* ac = nullptr;
    const SweepRow* sr = nullptr;
    for (const auto& r : rows)
        if (r.seed == "mean") (r.protocol == Protocol::Acrlnc ? ac : sr) = &r;
    const double ratio = sr->d_mean / ac->d_mean;
    const double gap_ac = ac->d_max - ac->d_mean, gap_sr = sr->d_max - sr->d_mean;
    return {ratio >= 2.0 && gap_ac < gap_sr,
            fmt::format("D_mean SR-ARQ {:.2f} / AC-RLNC {:.2f} = {:.3f} (gate 2, reported 3x: {}); "
                        "D_max - D_mean gap AC-RLNC {:.2f} vs SR-ARQ {:.2f}",
                        sr->d_mean, ac->d_mean, ratio, ratio >= 3.0 ? "reached" : "not reached", gap_ac, gap_sr)};
}

Outcome zero_error() {
    int bad = 0;
    for (std::uint64_t seed = 1; seed <= 100; ++seed) {
        RunConfig c;
        c.eps = 0.5;
        c.packets = 200;
        c.seed = seed;
        const auto r = run(c);
        if (!r.report.complete || !r.payloads_verified) ++bad;
    }
    return {bad == 0, fmt::format("{} of 100 runs incomplete or corrupted", bad)};
}

Outcome properties() {
    const auto gf = props::gf_axioms();
    const int rt = props::roundtrip_failures(10000, 16, 31);
    const long ledger = props::ledger_mismatches(100, 47);
    return {gf.empty() && rt == 0 && ledger == 0,
            fmt::format("field axioms {}; {} of 10000 round trips failed; {} ledger mismatches over 100 runs",
                        gf.empty() ? "hold" : gf, rt, ledger)};
}

Outcome determinism() {
    SweepConfig s;
    s.base.packets = 500;
    s.eps_values = {0.2, 0.4};
    s.rtts = {4, 10};
    s.protocols = {Protocol::Acrlnc, Protocol::SrArq};
    s.seeds = 5;
    auto text = [](const std::vector<SweepRow>& rows) {
        std::ostringstream out;
        write_sweep_csv(out, rows);
        return out.str();
    };
    const auto a = text(sweep(s));
    const auto b = text(sweep(s));
    s.jobs = workers();
    const auto c = text(sweep(s));
    return {a == b && a == c, fmt::format("{} bytes, repeat {}, parallel {}", a.size(), a == b ? "identical" : "differs",
                                          a == c ? "identical" : "differs")};
}

}  // namespace

int main() {
    struct Criterion {
        int id;
        const char* name;
        double limit_s;
        std::function<Outcome()> fn;
    };
    const std::vector<Criterion> criteria = {
        {1, "golden replay", 1, golden},
        {2, "throughput bound BEC", 1, [] { return throughput_ratio(ChannelKind::Bec, 0.90, 0.96); }},
        {3, "throughput bound GE", 1, [] { return throughput_ratio(ChannelKind::Ge, 0.88, 0.94); }},
        {4, "bound oracle equivalence", 10, oracle_grid},
        {5, "simulation vs delay bounds", 300, mean_delay_dominance},
        {6, "protocol comparison BEC", 300, bec_comparison},
        {7, "protocol comparison GE", 300, ge_comparison},
        {8, "zero-error delivery", 60, zero_error},
        {9, "field/decoder/ledger properties", 60, properties},
        {10, "sweep determinism", 1e9, determinism},
    };
    int failed = 0;
    for (const auto& c : criteria) {
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.fn();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        const bool in_time = secs < c.limit_s;
        const bool pass = o.pass && in_time;
        failed += !pass;
        std::string limit = c.limit_s < 1e8 ? fmt::format(" < {}s", c.limit_s) : "";
        fmt::print("[{}] {:>2} {}: {} ({:.2f}s{}{})\n", pass ? "PASS" : "FAIL", c.id, c.name, o.detail, secs, limit,
                   in_time ? "" : " exceeded");
        std::fflush(stdout);
    }
    fmt::print("{} of {} criteria passed\n", criteria.size() - failed, criteria.size());
    return failed ? 1 : 0;
}
