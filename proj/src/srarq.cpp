#include "acrlnc/srarq.hpp"

#include <stdexcept>

namespace acrlnc {

SrArqSender::SrArqSender(PacketIndex packet_count, int rtt, int send_window)
    : packet_count_(packet_count),
      rtt_(rtt),
      send_window_(send_window),
      acked_(static_cast<std::size_t>(packet_count), 0),
      queued_(static_cast<std::size_t>(packet_count), 0) {
    if (packet_count < 0) throw std::invalid_argument("packet count must be nonnegative");
    if (rtt < 1) throw std::invalid_argument("rtt must be positive");
    if (send_window < 0) throw std::invalid_argument("send window must be nonnegative");
}

SrArqAction SrArqSender::on_slot(std::optional<FeedbackMessage> feedback) {
    ++t_;
    if (feedback) {
        if (feedback->slot < 1 || feedback->slot > t_ - rtt_ ||
            feedback->slot > static_cast<Slot>(sent_at_.size()))
            throw std::logic_error("feedback for a slot that is not yet acknowledgeable");
        const PacketIndex idx = sent_at_[static_cast<std::size_t>(feedback->slot - 1)];
        if (idx > 0) {
            const auto i = static_cast<std::size_t>(idx - 1);
            if (feedback->ack) {
                acked_[i] = 1;
                while (base_ <= packet_count_ && acked_[static_cast<std::size_t>(base_ - 1)]) ++base_;
            } else if (!acked_[i] && !queued_[i]) {
                queued_[i] = 1;
                queue_.push_back(idx);
            }
        }
    }

    if (finished()) return {SrArqAction::Kind::Done, 0, false};

    SrArqAction action;
    if (!queue_.empty()) {
        action = {SrArqAction::Kind::Send, queue_.front(), true};
        queued_[static_cast<std::size_t>(queue_.front() - 1)] = 0;
        queue_.pop_front();
    } else if (next_new_ <= packet_count_ &&
               (send_window_ == 0 || next_new_ < base_ + send_window_)) {
        action = {SrArqAction::Kind::Send, next_new_++, false};
    }
    sent_at_.push_back(action.kind == SrArqAction::Kind::Send ? action.index : 0);
    return action;
}

SrArqReceiver::SrArqReceiver(PacketIndex packet_count)
    : received_(static_cast<std::size_t>(packet_count), 0),
      in_order_slot_(static_cast<std::size_t>(packet_count), 0) {}

std::vector<PacketIndex> SrArqReceiver::on_packet(PacketIndex index, Slot slot) {
    std::vector<PacketIndex> released;
    if (index < 1 || static_cast<std::size_t>(index) > received_.size())
        throw std::out_of_range("SR-ARQ receiver: packet index out of range");
    received_[static_cast<std::size_t>(index - 1)] = 1;
    while (static_cast<std::size_t>(prefix_) < received_.size() &&
           received_[static_cast<std::size_t>(prefix_)]) {
        in_order_slot_[static_cast<std::size_t>(prefix_)] = slot;
        ++prefix_;
        released.push_back(prefix_);
    }
    return released;
}

Slot SrArqReceiver::in_order_slot(PacketIndex index) const {
    if (index < 1 || static_cast<std::size_t>(index) > in_order_slot_.size()) return 0;
    return in_order_slot_[static_cast<std::size_t>(index - 1)];
}

}  // namespace acrlnc
