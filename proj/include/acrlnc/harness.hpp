#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "acrlnc/acrlnc.hpp"
#include "acrlnc/bounds.hpp"
#include "acrlnc/channel.hpp"
#include "acrlnc/metrics.hpp"

namespace acrlnc {

enum class Protocol { Acrlnc, SrArq };
enum class ChannelKind { Bec, Ge, Trace };

std::string_view to_string(Protocol p);
std::string_view to_string(ChannelKind c);
Protocol parse_protocol(std::string_view s);
ChannelKind parse_channel(std::string_view s);
DelayClock parse_delay_clock(std::string_view s);

struct RunConfig {
    Protocol protocol = Protocol::Acrlnc;
    ChannelKind channel = ChannelKind::Bec;
    double eps = 0.0;            // BEC erasure rate, or GE average erasure rate pi_B
    std::optional<double> q;     // GE: given directly instead of derived from eps
    double s = 0.3;
    std::filesystem::path trace_path;
    std::optional<std::vector<bool>> trace;  // in-memory trace, preferred over trace_path
    int rtt = 4;
    double overlap_factor = 2.0;
    double th = 0.0;
    bool th_adaptive = false;
    PacketIndex packets = 1000;
    std::size_t payload_len = 16;
    Slot horizon = 0;  // 0 = run until delivery completes
    std::uint64_t seed = 1;
    DelayClock delay_clock = DelayClock::AckInclusive;
    std::optional<int> m_override;
    int srarq_window = 0;  // 0 = unbounded

    int k() const { return rtt - 1; }
    int overlap() const;
    // GE transition probabilities resolved from (q | eps, s).
    double ge_q() const;
    // Average forward erasure rate implied by the channel parameters.
    double average_erasure_rate() const;
    ProtocolConfig protocol_config() const;
    void validate() const;
};

RunConfig run_config_from_json(const nlohmann::json& j, RunConfig base = {});
nlohmann::json to_json(const RunConfig& c);

struct RunResult {
    MetricsReport report;
    std::vector<SlotLog> log;            // AC-RLNC sender log
    std::vector<bool> channel_outcomes;  // per slot, true = erased
    bool payloads_verified = false;      // every delivered payload equals its source
};

// Splits one user seed into independent streams.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream);

// Deterministic given the config. Throws EndOfTrace when a trace runs out.
RunResult run(const RunConfig& config);
// run() with the trace channel loaded from `path`.
RunResult replay(const std::filesystem::path& path, RunConfig config);

struct SweepConfig {
    RunConfig base;
    std::vector<double> eps_values;  // empty: base.eps
    std::vector<double> s_values;    // empty: base.s
    std::vector<int> rtts;           // empty: base.rtt
    std::vector<Protocol> protocols; // empty: base.protocol
    int seeds = 20;
    std::uint64_t base_seed = 1;
    bool aggregate = true;  // append "mean" and "stderr" rows per grid point
    unsigned jobs = 1;
};

struct SweepRow {
    Protocol protocol = Protocol::Acrlnc;
    ChannelKind channel = ChannelKind::Bec;
    double eps = 0.0;
    double q = 0.0;
    double s = 0.0;
    int rtt = 0;
    int overlap = 0;
    double th = 0.0;
    std::string seed;
    double slots = 0.0;
    double throughput = 0.0;
    double d_mean = 0.0;
    double d_max = 0.0;
    bool complete = false;
    std::string error;
};

inline constexpr const char* kSweepHeader =
    "protocol,channel,eps,q,s,rtt,overlap,th,seed,slots,throughput,d_mean,d_max,complete";

std::vector<SweepRow> sweep(const SweepConfig& config);
SweepRow to_row(const RunConfig& config, const MetricsReport& report);
void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows);
nlohmann::json sweep_to_json(const std::vector<SweepRow>& rows);

struct BoundsConfig {
    std::vector<ChannelKind> channels{ChannelKind::Bec};
    std::vector<double> eps_values{0.5};
    std::vector<int> rtts{4};
    double s = 0.3;
    std::optional<double> q;  // GE only; otherwise solved from eps
    double overlap_factor = 2.0;
    double th = 0.0;
    std::optional<double> eps_max;
    std::optional<double> lambda;  // default RTT / n with n = packets / (1 - eps)
    PacketIndex packets = 1000;
    double p_e_target = 1e-3;
    std::optional<int> m;
    bounds::BcSupport support = bounds::BcSupport::Printed;
};

struct BoundsRow {
    ChannelKind channel = ChannelKind::Bec;
    double eps = 0.0;  // GE: pi_B
    double s = 0.0;
    int rtt = 0;
    int overlap = 0;
    double th = 0.0;
    double lambda = 0.0;
    double p_e_target = 0.0;
    std::optional<double> p_eow, p_retrans, d_mean_bound, d_max_bound, throughput_bound;
    std::vector<std::string> errors;
};

inline constexpr const char* kBoundsHeader =
    "channel,eps,s,rtt,overlap,th,lambda,p_e_target,p_eow,p_retrans,d_mean_bound,d_max_bound,"
    "throughput_bound";

std::vector<BoundsRow> bounds_table(const BoundsConfig& config);
void write_bounds_csv(std::ostream& out, const std::vector<BoundsRow>& rows);
nlohmann::json bounds_to_json(const std::vector<BoundsRow>& rows);

// Reference scenario: RTT = 4, m = 1, th = 0, erasures at slots 3 and 4.
struct GoldenStep {
    Slot slot;
    ActionKind action;
    PacketKind kind;
    PacketIndex added;  // 0 when no new packet
};
RunConfig golden_config();
std::vector<bool> golden_trace(std::size_t length = 64);
const std::vector<GoldenStep>& golden_expected();

struct GoldenCheck {
    bool actions_match = false;
    bool criteria_match = false;
    bool window_match = false;
    std::vector<std::string> mismatches;
    RunResult result;
    bool ok() const { return actions_match && criteria_match && window_match; }
};
GoldenCheck check_golden();

}  // namespace acrlnc
