// Command-line front end: simulate, sweep, replay, bounds, golden.
#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "CLI11.hpp"
#include "json.hpp"

#include "acrlnc/harness.hpp"

using namespace acrlnc;

namespace {

// Flags shared by simulate, replay and sweep. Unset flags leave the config file value.
struct RunFlags {
    std::string config_path;
    std::optional<std::string> protocol, channel, delay_clock, trace;
    std::optional<double> eps, q, s, th, overlap_factor;
    std::optional<int> rtt, m_override, srarq_window;
    std::optional<PacketIndex> packets;
    std::optional<std::size_t> payload_len;
    std::optional<Slot> horizon;
    std::optional<std::uint64_t> seed;
    bool th_adaptive = false;
};

struct OutputFlags {
    std::string out;
    std::string format = "csv";
};

void add_output_flags(CLI::App* app, OutputFlags& o) {
    app->add_option("--out", o.out, "Output path (default stdout)");
    app->add_option("--format", o.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
}

void add_run_flags(CLI::App* app, RunFlags& f, bool scalar_grid) {
    app->add_option("--config", f.config_path, "JSON run config; flags override its fields");
    app->add_option("--protocol", f.protocol, "acrlnc or srarq");
    app->add_option("--channel", f.channel, "bec, ge or trace");
    app->add_option("--q", f.q, "GE good-to-bad probability (default: solved from --eps)");
    if (scalar_grid) {
        app->add_option("--eps", f.eps, "BEC erasure rate, or GE average erasure rate");
        app->add_option("--s", f.s, "GE bad-to-good probability");
        app->add_option("--rtt", f.rtt, "Round-trip time in slots");
        app->add_option("--seed", f.seed, "Random seed");
    }
    app->add_option("--trace", f.trace, "Trace file for --channel trace");
    app->add_option("--packets", f.packets, "Number of information packets M");
    app->add_option("--payload-len", f.payload_len, "Payload length in bytes");
    app->add_option("--th", f.th, "Retransmission threshold");
    app->add_flag("--th-adaptive", f.th_adaptive, "Threshold = running std. deviation of erasures");
    app->add_option("--overlap-factor", f.overlap_factor, "Maximum overlap as a multiple of k");
    app->add_option("--m-override", f.m_override, "Pin the FEC burst size");
    app->add_option("--horizon", f.horizon, "Maximum slots, 0 = until delivery completes");
    app->add_option("--delay-clock", f.delay_clock, "ack or receiver");
    app->add_option("--srarq-window", f.srarq_window, "SR-ARQ send window, 0 = unbounded");
}

RunConfig resolve(const RunFlags& f) {
    RunConfig c;
    if (!f.config_path.empty()) {
        std::ifstream in(f.config_path);
        if (!in) throw std::runtime_error("cannot open config " + f.config_path);
        c = run_config_from_json(nlohmann::json::parse(in), c);
    }
    if (f.protocol) c.protocol = parse_protocol(*f.protocol);
    if (f.channel) c.channel = parse_channel(*f.channel);
    if (f.eps) c.eps = *f.eps;
    if (f.q) c.q = *f.q;
    if (f.s) c.s = *f.s;
    if (f.trace) {
        c.trace_path = *f.trace;
        if (!f.channel) c.channel = ChannelKind::Trace;
    }
    if (f.rtt) c.rtt = *f.rtt;
    if (f.packets) c.packets = *f.packets;
    if (f.payload_len) c.payload_len = *f.payload_len;
    if (f.th) c.th = *f.th;
    if (f.th_adaptive) c.th_adaptive = true;
    if (f.overlap_factor) c.overlap_factor = *f.overlap_factor;
    if (f.m_override) c.m_override = *f.m_override;
    if (f.horizon) c.horizon = *f.horizon;
    if (f.seed) c.seed = *f.seed;
    if (f.delay_clock) c.delay_clock = parse_delay_clock(*f.delay_clock);
    if (f.srarq_window) c.srarq_window = *f.srarq_window;
    return c;
}

template <class Fn>
void emit(const OutputFlags& o, Fn&& write) {
    if (o.out.empty()) {
        write(std::cout);
        return;
    }
    std::ofstream out(o.out);
    if (!out) throw std::runtime_error("cannot open " + o.out);
    write(out);
}

void write_slot_log(const std::string& path, const std::vector<SlotLog>& log) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path);
    out << "slot,feedback,action,kind,window_start,window_end,added,erasures,acknowledged,md,ad,r,d,th,"
           "criterion\n";
    for (const auto& s : log) {
        const char* fb = !s.feedback ? "" : s.feedback->ack ? "ack" : "nack";
        const char* crit = !s.criterion_evaluated ? "" : s.criterion ? "pass" : "fail";
        out << fmt::format("{},{},{},{},{},{},{},{},{},{},{},{},{},{},{}\n", s.slot, fb,
                           to_string(s.action), to_string(s.kind), s.window_start, s.window_end, s.added,
                           s.erasures, s.acknowledged, s.md, s.ad, s.r, s.d, s.th, crit);
    }
}

void report(const OutputFlags& o, const RunConfig& c, const RunResult& r) {
    emit(o, [&](std::ostream& out) {
        if (o.format == "json") {
            nlohmann::json j;
            j["config"] = to_json(c);
            j["result"] = sweep_to_json({to_row(c, r.report)}).front();
            j["result"]["delivered"] = r.report.delivered;
            j["result"]["payloads_verified"] = r.payloads_verified;
            out << j.dump(2) << '\n';
        } else {
            write_sweep_csv(out, {to_row(c, r.report)});
        }
    });
}

std::vector<double> range(double lo, double hi, double step) {
    std::vector<double> v;
    if (step <= 0.0) throw std::invalid_argument("range step must be positive");
    for (int i = 0;; ++i) {
        // Rounded so that 0.05 steps print as 0.15, not 0.15000000000000002.
        const double x = std::round((lo + i * step) * 1e12) / 1e12;
        if (x > hi + step * 1e-9) break;
        v.push_back(x);
    }
    return v;
}

std::vector<int> int_range(const std::vector<int>& lohi) {
    std::vector<int> v;
    for (int r = lohi.at(0); r <= lohi.at(1); ++r) v.push_back(r);
    return v;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"AC-RLNC adaptive causal network coding simulator"};
    app.require_subcommand(1);

    // simulate
    RunFlags sim_flags;
    OutputFlags sim_out;
    std::string sim_log, sim_record;
    auto* simulate = app.add_subcommand("simulate", "Run one simulation");
    add_run_flags(simulate, sim_flags, true);
    add_output_flags(simulate, sim_out);
    simulate->add_option("--log", sim_log, "Write the per-slot sender log as CSV");
    simulate->add_option("--record-trace", sim_record, "Save the channel outcomes as a trace file");

    // replay
    RunFlags rep_flags;
    OutputFlags rep_out;
    std::string rep_path;
    auto* replay_cmd = app.add_subcommand("replay", "Run against a recorded erasure trace");
    replay_cmd->add_option("trace_file", rep_path, "Trace file")->required();
    add_run_flags(replay_cmd, rep_flags, true);
    add_output_flags(replay_cmd, rep_out);

    // sweep
    RunFlags sw_flags;
    OutputFlags sw_out;
    std::vector<double> sw_eps, sw_s, sw_eps_range;
    std::vector<int> sw_rtts, sw_rtt_range;
    std::vector<std::string> sw_protocols;
    int sw_seeds = 20;
    std::uint64_t sw_base_seed = 1;
    unsigned sw_jobs = 1;
    bool sw_no_aggregate = false;
    auto* sweep_cmd = app.add_subcommand("sweep", "Run a parameter grid over several seeds");
    add_run_flags(sweep_cmd, sw_flags, false);
    add_output_flags(sweep_cmd, sw_out);
    sweep_cmd->add_option("--eps", sw_eps, "Erasure rates (comma separated)")->delimiter(',');
    sweep_cmd->add_option("--eps-range", sw_eps_range, "LO HI STEP")->expected(3);
    sweep_cmd->add_option("--s", sw_s, "GE s values (comma separated)")->delimiter(',');
    sweep_cmd->add_option("--rtt", sw_rtts, "RTT values (comma separated)")->delimiter(',');
    sweep_cmd->add_option("--rtt-range", sw_rtt_range, "LO HI (inclusive)")->expected(2);
    sweep_cmd->add_option("--protocols", sw_protocols, "acrlnc,srarq")->delimiter(',');
    sweep_cmd->add_option("--seeds", sw_seeds, "Replications per grid point");
    sweep_cmd->add_option("--seed", sw_base_seed, "First seed");
    sweep_cmd->add_option("--jobs", sw_jobs, "Worker threads");
    sweep_cmd->add_flag("--no-aggregate", sw_no_aggregate, "Omit mean/stderr rows");

    // bounds
    BoundsConfig bc;
    OutputFlags b_out;
    std::vector<std::string> b_channels{"bec"};
    std::vector<double> b_eps_range;
    std::vector<int> b_rtt_range;
    std::string b_support = "printed";
    auto* bounds_cmd = app.add_subcommand("bounds", "Tabulate the analytic bounds");
    add_output_flags(bounds_cmd, b_out);
    bounds_cmd->add_option("--channel", b_channels, "bec,ge")->delimiter(',');
    bounds_cmd->add_option("--eps", bc.eps_values, "Erasure rates (comma separated)")->delimiter(',');
    bounds_cmd->add_option("--eps-range", b_eps_range, "LO HI STEP")->expected(3);
    bounds_cmd->add_option("--rtt", bc.rtts, "RTT values (comma separated)")->delimiter(',');
    bounds_cmd->add_option("--rtt-range", b_rtt_range, "LO HI (inclusive)")->expected(2);
    bounds_cmd->add_option("--s", bc.s, "GE bad-to-good probability");
    bounds_cmd->add_option("--q", bc.q, "GE good-to-bad probability (default: solved from --eps)");
    bounds_cmd->add_option("--overlap-factor", bc.overlap_factor, "Maximum overlap as a multiple of k");
    bounds_cmd->add_option("--th", bc.th, "Retransmission threshold");
    bounds_cmd->add_option("--eps-max", bc.eps_max, "Upper erasure estimate (default eps)");
    bounds_cmd->add_option("--lambda", bc.lambda, "Fraction of slots without feedback");
    bounds_cmd->add_option("--packets", bc.packets, "M, used for the default lambda");
    bounds_cmd->add_option("--pe", bc.p_e_target, "Target error probability of the max-delay bound");
    bounds_cmd->add_option("--m", bc.m, "FEC count in the throughput bound (default round(eps k))");
    bounds_cmd->add_option("--bc-support", b_support, "printed (t<RTT) or full (t<=RTT)")
        ->check(CLI::IsMember({"printed", "full"}));

    // golden
    std::string g_log;
    auto* golden = app.add_subcommand("golden", "Check the reference scenario slot by slot");
    golden->add_option("--log", g_log, "Write the per-slot sender log as CSV");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*simulate) {
            const auto c = resolve(sim_flags);
            const auto r = run(c);
            if (!sim_log.empty()) write_slot_log(sim_log, r.log);
            if (!sim_record.empty()) save_trace(sim_record, r.channel_outcomes);
            report(sim_out, c, r);
            return r.report.complete ? 0 : 3;
        }
        if (*replay_cmd) {
            auto c = resolve(rep_flags);
            const auto r = replay(rep_path, c);
            c.channel = ChannelKind::Trace;
            c.trace_path = rep_path;
            report(rep_out, c, r);
            return r.report.complete ? 0 : 3;
        }
        if (*sweep_cmd) {
            SweepConfig sc;
            sc.base = resolve(sw_flags);
            sc.eps_values = sw_eps;
            if (!sw_eps_range.empty()) {
                const auto v = range(sw_eps_range[0], sw_eps_range[1], sw_eps_range[2]);
                sc.eps_values.insert(sc.eps_values.end(), v.begin(), v.end());
            }
            sc.s_values = sw_s;
            sc.rtts = sw_rtts;
            if (!sw_rtt_range.empty()) {
                const auto v = int_range(sw_rtt_range);
                sc.rtts.insert(sc.rtts.end(), v.begin(), v.end());
            }
            for (const auto& p : sw_protocols) sc.protocols.push_back(parse_protocol(p));
            sc.seeds = sw_seeds;
            sc.base_seed = sw_base_seed;
            sc.jobs = sw_jobs;
            sc.aggregate = !sw_no_aggregate;
            const auto rows = sweep(sc);
            emit(sw_out, [&](std::ostream& out) {
                if (sw_out.format == "json") out << sweep_to_json(rows).dump(2) << '\n';
                else write_sweep_csv(out, rows);
            });
            return 0;
        }
        if (*bounds_cmd) {
            bc.channels.clear();
            for (const auto& ch : b_channels) bc.channels.push_back(parse_channel(ch));
            if (!b_eps_range.empty()) bc.eps_values = range(b_eps_range[0], b_eps_range[1], b_eps_range[2]);
            if (!b_rtt_range.empty()) bc.rtts = int_range(b_rtt_range);
            bc.support = b_support == "full" ? bounds::BcSupport::Full : bounds::BcSupport::Printed;
            const auto rows = bounds_table(bc);
            emit(b_out, [&](std::ostream& out) {
                if (b_out.format == "json") out << bounds_to_json(rows).dump(2) << '\n';
                else write_bounds_csv(out, rows);
            });
            return 0;
        }
        if (*golden) {
            const auto start = std::chrono::steady_clock::now();
            const auto check = check_golden();
            const double ms =
                std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
            const auto& log = check.result.log;
            const auto& expected = golden_expected();
            fmt::print("slot  action          kind            added  w_min  criterion\n");
            for (std::size_t i = 0; i < expected.size() && i < log.size(); ++i) {
                const auto& s = log[i];
                std::string crit;
                if (s.criterion_evaluated)
                    crit = fmt::format("({} - {}/{}) - {}/{} {} {}", 1, s.erasures, s.acknowledged, s.md,
                                       std::max(s.ad, 1), s.criterion ? ">" : "<=", s.th);
                fmt::print("{:>4}  {:<14}  {:<14}  {:>5}  {:>5}  {}\n", s.slot, to_string(s.action),
                           to_string(s.kind), s.added, s.window_start, crit);
            }
            for (const auto& m : check.mismatches) fmt::print("mismatch: {}\n", m);
            if (!g_log.empty()) write_slot_log(g_log, log);
            fmt::print("golden: {} ({:.2f} ms)\n", check.ok() ? "PASS" : "FAIL", ms);
            return check.ok() ? 0 : 1;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 0;
}
