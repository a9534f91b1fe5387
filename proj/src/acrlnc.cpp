#include "acrlnc/acrlnc.hpp"

#include <cmath>
#include <stdexcept>

namespace acrlnc {

std::string_view to_string(ActionKind kind) {
    switch (kind) {
        case ActionKind::AddNew: return "ADD_NEW";
        case ActionKind::Repeat: return "REPEAT";
        case ActionKind::FecBurst: return "FEC_BURST";
        case ActionKind::TerminalRepeat: return "TERMINAL_REPEAT";
    }
    return "?";
}

void ProtocolConfig::validate() const {
    if (rtt < 2) throw std::invalid_argument("rtt must be at least 2 slots");
    if (overlap() < k()) throw std::invalid_argument("overlap cap must be at least k = rtt - 1");
    if (!(threshold >= 0.0)) throw std::invalid_argument("threshold must be nonnegative");
    if (m_override && *m_override < 0) throw std::invalid_argument("m override must be nonnegative");
    if (packet_count < 0) throw std::invalid_argument("packet count must be nonnegative");
}

long round_half_away(double x) { return std::lround(x); }

int fec_count(double p_e, int k) {
    if (!(p_e >= 0.0 && p_e < 1.0)) throw std::invalid_argument("fec_count: p_e must lie in [0,1)");
    if (k < 1) throw std::invalid_argument("fec_count: k must be positive");
    return static_cast<int>(round_half_away(p_e * k));
}

AcrlncSender::AcrlncSender(ProtocolConfig config, std::span<const InformationPacket> source,
                           std::uint64_t seed)
    : config_(config), source_(source), rng_(seed), shadow_(0) {
    config_.validate();
    if (config_.packet_count == 0) config_.packet_count = static_cast<PacketIndex>(source.size());
    if (static_cast<std::size_t>(config_.packet_count) > source.size())
        throw std::invalid_argument("packet count exceeds source stream");
}

int AcrlncSender::window_size() const {
    return newest_ >= w_min_ ? static_cast<int>(newest_ - w_min_ + 1) : 0;
}

RateEstimate AcrlncSender::estimate_rate() const {
    // Warm-up: no feedback yet, the channel is assumed perfect.
    if (acknowledged_ == 0) return {};
    const double p = static_cast<double>(e_) / static_cast<double>(acknowledged_);
    return {p, 1.0 - p, std::sqrt(p * (1.0 - p))};
}

double AcrlncSender::threshold() const {
    if (config_.threshold_mode == ThresholdMode::Fixed) return config_.threshold;
    if (acknowledged_ == 0) return 0.0;
    return std::sqrt(var_m2_ / static_cast<double>(acknowledged_));
}

double AcrlncSender::dof_rate() const {
    return static_cast<double>(md()) / static_cast<double>(std::max(ad(), 1));
}

bool AcrlncSender::intersects_window(const SlotRecord& rec) const {
    return window_size() > 0 && rec.hi >= w_min_ && rec.lo <= newest_;
}

int AcrlncSender::compute_md() const {
    int n = 0;
    for (const auto& rec : history_)
        if (rec.fb == Fb::Nack && rec.kind == PacketKind::NewInfo && intersects_window(rec)) ++n;
    return n;
}

int AcrlncSender::compute_ad() const {
    int n = 0;
    for (const auto& rec : history_)
        if (rec.kind != PacketKind::NewInfo && intersects_window(rec)) ++n;
    return n;
}

int AcrlncSender::current_m() const {
    if (config_.m_override) return *config_.m_override;
    return fec_count(estimate_rate().p_e, config_.k());
}

void AcrlncSender::apply_feedback(const FeedbackMessage& fb) {
    if (fb.slot < 1 || fb.slot > t_ - config_.rtt || fb.slot > static_cast<Slot>(history_.size()))
        throw std::logic_error("feedback for a slot that is not yet acknowledgeable");
    auto& rec = history_[static_cast<std::size_t>(fb.slot - 1)];
    if (rec.fb != Fb::None) throw std::logic_error("duplicate feedback");
    rec.fb = fb.ack ? Fb::Ack : Fb::Nack;

    while (!in_flight_.empty() && in_flight_.front().slot < fb.slot) in_flight_.pop_front();
    const CodedPacket* sent = nullptr;
    if (!in_flight_.empty() && in_flight_.front().slot == fb.slot) sent = &in_flight_.front();

    ++acknowledged_;
    const double x = fb.ack ? 0.0 : 1.0;
    const double delta = x - var_mean_;
    var_mean_ += delta / static_cast<double>(acknowledged_);
    var_m2_ += delta * (x - var_mean_);

    if (fb.ack) {
        if (sent) shadow_.absorb(*sent, t_);
    } else {
        ++e_;
        if (rec.kind == PacketKind::NewInfo) nacked_new_.push_back(rec.hi);
    }
    if (sent) in_flight_.pop_front();
}

void AcrlncSender::slide() {
    w_min_ = std::max(w_min_, shadow_.delivered_prefix() + 1);
    while (!nacked_new_.empty() && nacked_new_.front() < w_min_) nacked_new_.pop_front();
    while (!added_.empty() && added_.front() < w_min_) added_.pop_front();
}

TransmitAction AcrlncSender::emit(ActionKind action, int burst) {
    TransmitAction out;
    out.kind = action;
    out.burst_size = burst;
    PacketKind kind = PacketKind::NewInfo;
    switch (action) {
        case ActionKind::AddNew:
            ++newest_;
            ++new_since_fec_;
            kind = PacketKind::NewInfo;
            break;
        case ActionKind::Repeat: kind = PacketKind::FbFec; break;
        case ActionKind::FecBurst: kind = PacketKind::Fec; break;
        case ActionKind::TerminalRepeat: kind = PacketKind::TerminalRepeat; break;
    }

    const auto width = static_cast<std::size_t>(window_size());
    auto& pkt = out.packet;
    pkt.slot = t_;
    pkt.window_start = w_min_;
    pkt.kind = kind;
    pkt.coefficients = random_coefficients(width, rng_);
    pkt.payload = encode(source_.subspan(static_cast<std::size_t>(w_min_ - 1), width), pkt.coefficients);

    history_.push_back({w_min_, newest_, kind, Fb::None});
    if (kind != PacketKind::NewInfo) added_.push_back(newest_);

    CodedPacket header = pkt;
    header.payload.clear();
    in_flight_.push_back(std::move(header));
    return out;
}

std::optional<TransmitAction> AcrlncSender::on_slot(std::optional<FeedbackMessage> feedback) {
    if (finished_) return std::nullopt;
    ++t_;
    if (feedback) apply_feedback(*feedback);
    slide();

    SlotLog entry;
    entry.slot = t_;
    entry.feedback = feedback;
    entry.erasures = e_;
    entry.acknowledged = acknowledged_;
    entry.md = md();
    entry.ad = ad();

    const int w = window_size();
    const int k = config_.k();
    const bool stream_left = newest_ < config_.packet_count;

    if (!draining_ && w >= config_.overlap()) draining_ = true;
    if (draining_ && w == 0) draining_ = false;

    const auto rate = estimate_rate();
    const double d = dof_rate();
    const double th = threshold();
    entry.r = rate.r;
    entry.d = d;
    entry.th = th;

    // Decide the action for this slot.
    ActionKind action = ActionKind::AddNew;
    int burst = 0;
    if (draining_) {
        pending_fec_ = 0;
        action = ActionKind::TerminalRepeat;
    } else if (pending_fec_ > 0 && w > 0) {
        --pending_fec_;
        action = ActionKind::FecBurst;
        burst = burst_size_;
    } else {
        pending_fec_ = 0;
        const bool ew = new_since_fec_ >= k;
        // Starts an a-priori burst of m repeats; false when there is nothing to send.
        auto fire_ew = [&] {
            new_since_fec_ = 0;
            const int m = current_m();
            if (m <= 0 || w == 0) return false;
            pending_fec_ = m;
            burst_size_ = m;
            entry.ew = true;
            return true;
        };
        auto take_fec = [&] {
            --pending_fec_;
            burst = burst_size_;
            return ActionKind::FecBurst;
        };

        if (!feedback) {
            if (ew && fire_ew()) action = take_fec();
            else action = ActionKind::AddNew;
        } else if (!feedback->ack) {
            entry.criterion_evaluated = true;
            entry.criterion = retransmission_criterion(rate.r, d, th);
            if (entry.criterion) {
                if (ew && fire_ew()) action = take_fec();
                else action = ActionKind::AddNew;
            } else {
                action = ActionKind::Repeat;
                if (ew) fire_ew();
            }
        } else {
            if (ew && fire_ew()) {
                action = take_fec();
            } else {
                entry.criterion_evaluated = true;
                entry.criterion = retransmission_criterion(rate.r, d, th);
                action = (rate.r - d < th) ? ActionKind::Repeat : ActionKind::AddNew;
            }
        }
    }

    // Repeats need a nonempty window; new packets need a remaining source packet.
    if (action != ActionKind::AddNew && w == 0) {
        action = ActionKind::AddNew;
        burst = 0;
        pending_fec_ = 0;
    }
    if (action == ActionKind::AddNew && !stream_left) {
        if (w == 0) {
            finished_ = true;
            return std::nullopt;
        }
        action = ActionKind::TerminalRepeat;
    }

    auto out = emit(action, burst);
    entry.action = out.kind;
    entry.kind = out.packet.kind;
    entry.window_start = out.packet.window_start;
    entry.window_end = out.packet.window_end();
    entry.added = action == ActionKind::AddNew ? newest_ : 0;
    log_.push_back(entry);
    return out;
}

ReceiverStep receiver_on_packet(Decoder& decoder, Slot slot, const CodedPacket* delivered,
                                int rtt) {
    ReceiverStep step;
    step.feedback = {slot, delivered != nullptr};
    step.feedback_due = slot + rtt;
    if (delivered) step.outcome = decoder.absorb(*delivered, slot);
    return step;
}

}  // namespace acrlnc
