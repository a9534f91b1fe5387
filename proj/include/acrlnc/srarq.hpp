#pragma once

#include <deque>
#include <optional>
#include <vector>

#include "acrlnc/acrlnc.hpp"

namespace acrlnc {

struct SrArqAction {
    enum class Kind { Send, Idle, Done };
    Kind kind = Kind::Idle;
    PacketIndex index = 0;
    bool retransmission = false;
};

// Selective-repeat ARQ over uncoded packets. NACKed packets are resent FIFO
// ahead of new ones. send_window bounds how far past the oldest unacknowledged
// packet a new packet may be; 0 means unbounded.
class SrArqSender {
public:
    SrArqSender(PacketIndex packet_count, int rtt, int send_window = 0);

    SrArqAction on_slot(std::optional<FeedbackMessage> feedback);

    Slot slot() const { return t_; }
    PacketIndex next_new_index() const { return next_new_; }
    PacketIndex base() const { return base_; }
    const std::deque<PacketIndex>& retransmit_queue() const { return queue_; }
    bool finished() const { return base_ > packet_count_; }

private:
    PacketIndex packet_count_;
    int rtt_;
    int send_window_;
    Slot t_ = 0;
    PacketIndex next_new_ = 1;
    PacketIndex base_ = 1;
    std::vector<char> acked_;          // by index - 1
    std::vector<char> queued_;         // by index - 1
    std::vector<PacketIndex> sent_at_; // packet sent in slot, by slot - 1 (0 = idle)
    std::deque<PacketIndex> queue_;
};

class SrArqReceiver {
public:
    explicit SrArqReceiver(PacketIndex packet_count);

    // Returns indices released in order by this reception.
    std::vector<PacketIndex> on_packet(PacketIndex index, Slot slot);

    PacketIndex delivered_prefix() const { return prefix_; }
    Slot in_order_slot(PacketIndex index) const;

private:
    std::vector<char> received_;
    std::vector<Slot> in_order_slot_;
    PacketIndex prefix_ = 0;
};

}  // namespace acrlnc
