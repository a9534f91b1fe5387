#include "acrlnc/metrics.hpp"

#include <algorithm>
#include <stdexcept>

namespace acrlnc {

std::string_view to_string(DelayClock clock) {
    return clock == DelayClock::AckInclusive ? "ack" : "receiver";
}

Slot in_order_delay(const DeliveryRecord& record, DelayClock clock) {
    if (!record.delivered()) throw std::domain_error("in_order_delay: packet not delivered");
    const Slot end = clock == DelayClock::AckInclusive ? record.ack_slot : record.inorder_slot;
    return end - record.first_tx_slot;
}

MetricsReport summarize(std::vector<DeliveryRecord> records, Slot slots, PacketIndex packet_count,
                        DelayClock clock) {
    MetricsReport report;
    report.slots = slots;
    report.packets = packet_count;

    double sum = 0.0;
    for (const auto& r : records) {
        if (!r.delivered()) continue;
        const Slot d = in_order_delay(r, clock);
        sum += static_cast<double>(d);
        report.d_max = std::max(report.d_max, d);
        ++report.delivered;
    }
    if (report.delivered > 0) report.d_mean = sum / static_cast<double>(report.delivered);
    if (slots > 0)
        report.throughput = static_cast<double>(report.delivered) / static_cast<double>(slots);
    report.complete = report.delivered == packet_count;
    report.records = std::move(records);
    return report;
}

}  // namespace acrlnc
