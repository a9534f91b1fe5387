#pragma once

#include <span>
#include <string_view>
#include <vector>

#include "acrlnc/coding.hpp"

namespace acrlnc {

enum class DelayClock { AckInclusive, ReceiverSide };

std::string_view to_string(DelayClock clock);

struct DeliveryRecord {
    PacketIndex index = 0;
    Slot first_tx_slot = 0;
    Slot inorder_slot = 0;  // 0 = not delivered
    Slot ack_slot = 0;      // inorder_slot + RTT in the slotted model
    bool delivered() const { return inorder_slot > 0; }
};

// ACK-inclusive: ack_slot - first_tx_slot. Receiver-side: inorder_slot - first_tx_slot.
// Throws std::domain_error for an undelivered packet.
Slot in_order_delay(const DeliveryRecord& record, DelayClock clock = DelayClock::AckInclusive);

struct MetricsReport {
    double throughput = 0.0;  // in-order packets per slot
    double d_mean = 0.0;
    Slot d_max = 0;
    Slot slots = 0;
    PacketIndex packets = 0;
    PacketIndex delivered = 0;
    bool complete = false;
    std::vector<DeliveryRecord> records;
};

// Delay statistics cover delivered records only; `complete` is false when
// fewer than `packet_count` packets were delivered.
MetricsReport summarize(std::vector<DeliveryRecord> records, Slot slots, PacketIndex packet_count,
                        DelayClock clock = DelayClock::AckInclusive);

}  // namespace acrlnc
