#pragma once

#include <cstdint>
#include <deque>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "acrlnc/coding.hpp"

namespace acrlnc {

struct FeedbackMessage {
    Slot slot = 0;  // forward slot being acknowledged
    bool ack = false;
};

enum class ThresholdMode { Fixed, Adaptive };

struct ProtocolConfig {
    int rtt = 4;
    int overlap_cap = 0;  // 0 selects 2k
    ThresholdMode threshold_mode = ThresholdMode::Fixed;
    double threshold = 0.0;
    std::optional<int> m_override;
    PacketIndex packet_count = 0;

    int k() const { return rtt - 1; }
    int overlap() const { return overlap_cap > 0 ? overlap_cap : 2 * k(); }
    // Throws std::invalid_argument when rtt < 2, overlap < k, or th < 0.
    void validate() const;
};

enum class ActionKind { AddNew, Repeat, FecBurst, TerminalRepeat };

std::string_view to_string(ActionKind kind);

struct TransmitAction {
    ActionKind kind = ActionKind::AddNew;
    int burst_size = 0;  // FecBurst: m of the burst this slot belongs to
    CodedPacket packet;
};

struct RateEstimate {
    double p_e = 0.0;
    double r = 1.0;
    double sd = 0.0;
};

inline bool retransmission_criterion(double r, double d, double th) { return r - d > th; }

// Nearest integer, ties away from zero.
long round_half_away(double x);

// Number of a-priori FEC repeats per window: round(p_e * k).
int fec_count(double p_e, int k);

// Per-slot record of what the sender knew and did.
struct SlotLog {
    Slot slot = 0;
    std::optional<FeedbackMessage> feedback;
    ActionKind action = ActionKind::AddNew;
    PacketKind kind = PacketKind::NewInfo;
    PacketIndex window_start = 0;
    PacketIndex window_end = 0;
    PacketIndex added = 0;  // index of the new packet, 0 when none
    std::int64_t erasures = 0;
    std::int64_t acknowledged = 0;  // slots with feedback so far (t - RTT)
    int md = 0;
    int ad = 0;
    double r = 1.0;
    double d = 0.0;
    double th = 0.0;
    bool criterion_evaluated = false;
    bool criterion = false;
    bool ew = false;  // an a-priori FEC burst was started in this slot
};

// AC-RLNC sender. One call to on_slot per forward slot; the caller delivers
// the feedback for slot t - RTT together with slot t.
class AcrlncSender {
public:
    AcrlncSender(ProtocolConfig config, std::span<const InformationPacket> source,
                 std::uint64_t seed);

    // nullopt once every packet is known decoded (DoF(c_t) = 0).
    std::optional<TransmitAction> on_slot(std::optional<FeedbackMessage> feedback);

    RateEstimate estimate_rate() const;
    double threshold() const;
    // d = m_d / max(a_d, 1) from the incremental ledger.
    double dof_rate() const;

    // Incremental ledger.
    int md() const { return static_cast<int>(nacked_new_.size()); }
    int ad() const { return static_cast<int>(added_.size()); }
    // Batch recomputation of the set formulas from the full slot history.
    int compute_md() const;
    int compute_ad() const;

    Slot slot() const { return t_; }
    PacketIndex window_start() const { return w_min_; }
    PacketIndex newest() const { return newest_; }
    int window_size() const;
    std::int64_t erasures() const { return e_; }
    bool finished() const { return finished_; }
    const ProtocolConfig& config() const { return config_; }
    const std::vector<SlotLog>& log() const { return log_; }

private:
    enum class Fb : std::uint8_t { None, Ack, Nack };
    struct SlotRecord {
        PacketIndex lo = 0;
        PacketIndex hi = 0;
        PacketKind kind = PacketKind::NewInfo;
        Fb fb = Fb::None;
    };

    void apply_feedback(const FeedbackMessage& fb);
    void slide();
    int current_m() const;
    bool intersects_window(const SlotRecord& rec) const;
    TransmitAction emit(ActionKind action, int burst);

    ProtocolConfig config_;
    std::span<const InformationPacket> source_;
    Rng rng_;

    Slot t_ = 0;
    PacketIndex w_min_ = 1;
    PacketIndex newest_ = 0;
    int new_since_fec_ = 0;
    int pending_fec_ = 0;
    int burst_size_ = 0;
    bool draining_ = false;
    bool finished_ = false;

    std::int64_t e_ = 0;
    std::int64_t acknowledged_ = 0;
    // Running mean / M2 of per-slot erasure indicators (Welford).
    double var_mean_ = 0.0;
    double var_m2_ = 0.0;

    Decoder shadow_;
    std::deque<CodedPacket> in_flight_;
    std::vector<SlotRecord> history_;  // by slot - 1
    // Window ends of the slots counted in m_d / a_d, nondecreasing.
    std::deque<PacketIndex> nacked_new_;
    std::deque<PacketIndex> added_;
    std::vector<SlotLog> log_;
};

struct ReceiverStep {
    FeedbackMessage feedback;
    Slot feedback_due = 0;  // slot at which the sender sees it
    DecodeOutcome outcome;
};

// Receiver side of one forward slot; `delivered` is null when the slot was erased.
ReceiverStep receiver_on_packet(Decoder& decoder, Slot slot, const CodedPacket* delivered,
                                int rtt);

}  // namespace acrlnc
