#include "acrlnc/coding.hpp"

#include <algorithm>
#include <stdexcept>

namespace acrlnc {

std::string_view to_string(PacketKind kind) {
    switch (kind) {
        case PacketKind::NewInfo: return "NEW_INFO";
        case PacketKind::Fec: return "FEC";
        case PacketKind::FbFec: return "FB_FEC";
        case PacketKind::TerminalRepeat: return "TERMINAL_REPEAT";
    }
    return "?";
}

std::size_t CodedPacket::dof() const {
    return static_cast<std::size_t>(
        std::count_if(coefficients.begin(), coefficients.end(), [](auto c) { return c != 0; }));
}

Payload encode(std::span<const InformationPacket> window,
               std::span<const gf256::Element> coefficients) {
    if (window.empty()) throw std::invalid_argument("encode: empty window");
    if (window.size() != coefficients.size())
        throw std::invalid_argument("encode: window/coefficient length mismatch");
    const std::size_t len = window.front().payload.size();
    Payload out(len, 0);
    for (std::size_t i = 0; i < window.size(); ++i) {
        if (window[i].payload.size() != len)
            throw std::invalid_argument("encode: unequal payload lengths");
        gf256::axpy(out, coefficients[i], window[i].payload);
    }
    return out;
}

std::vector<gf256::Element> random_coefficients(std::size_t width, Rng& rng) {
    std::vector<gf256::Element> out(width);
    for (auto& c : out) c = static_cast<gf256::Element>(rng() >> 56);
    if (width > 0)
        while (out.back() == 0) out.back() = static_cast<gf256::Element>(rng() >> 56);
    return out;
}

// --- Decoder ---------------------------------------------------------------

void Decoder::subtract(Row& dst, gf256::Element c, const Row& src) {
    if (c == 0) return;
    const auto offset = static_cast<std::size_t>(src.lo - dst.lo);
    if (dst.hi() < src.hi()) dst.coef.resize(static_cast<std::size_t>(src.hi() - dst.lo), 0);
    gf256::axpy(std::span(dst.coef).subspan(offset, src.coef.size()), c, src.coef);
    gf256::axpy(dst.payload, c, src.payload);
}

void Decoder::trim(Row& row) {
    auto first = std::find_if(row.coef.begin(), row.coef.end(), [](auto c) { return c != 0; });
    if (first == row.coef.end()) {
        row.coef.clear();
        return;
    }
    row.lo += first - row.coef.begin();
    row.coef.erase(row.coef.begin(), first);
    while (row.coef.back() == 0) row.coef.pop_back();
}

bool Decoder::is_singleton(const Row& row) const {
    return std::all_of(row.coef.begin() + 1, row.coef.end(), [](auto c) { return c == 0; });
}

void Decoder::grow(PacketIndex index) {
    const auto need = static_cast<std::size_t>(index);
    if (decoded_.size() < need) {
        decoded_.resize(need, 0);
        store_.resize(need);
        in_order_slot_.resize(need, 0);
    }
}

bool Decoder::is_decoded(PacketIndex index) const {
    return index >= 1 && static_cast<std::size_t>(index) <= decoded_.size() &&
           decoded_[static_cast<std::size_t>(index - 1)];
}

std::span<const std::uint8_t> Decoder::payload(PacketIndex index) const {
    if (!is_decoded(index)) return {};
    return store_[static_cast<std::size_t>(index - 1)];
}

Slot Decoder::in_order_slot(PacketIndex index) const {
    if (index < 1 || static_cast<std::size_t>(index) > in_order_slot_.size()) return 0;
    return in_order_slot_[static_cast<std::size_t>(index - 1)];
}

void Decoder::mark_decoded(PacketIndex index, Payload payload) {
    grow(index);
    decoded_[static_cast<std::size_t>(index - 1)] = 1;
    store_[static_cast<std::size_t>(index - 1)] = std::move(payload);
    ++decoded_count_;
}

DecodeOutcome Decoder::absorb(const CodedPacket& packet, Slot slot) {
    if (packet.window_start < 1) throw std::invalid_argument("absorb: window_start < 1");
    if (payload_len_ > 0 && packet.payload.size() != payload_len_)
        throw std::invalid_argument("absorb: payload length mismatch");

    Row row{packet.window_start, packet.coefficients, {}};
    if (payload_len_ > 0) row.payload = packet.payload;

    // Substitute packets that are already decoded.
    for (std::size_t j = 0; j < row.coef.size(); ++j) {
        const PacketIndex idx = row.lo + static_cast<PacketIndex>(j);
        if (row.coef[j] != 0 && is_decoded(idx)) {
            gf256::axpy(row.payload, row.coef[j], payload(idx));
            row.coef[j] = 0;
        }
    }
    trim(row);

    // Reduce against every pending pivot, ascending. Pivot rows are zero on
    // all other pivot columns, so earlier columns are never reintroduced.
    for (std::size_t j = 0; j < row.coef.size(); ++j) {
        if (row.coef[j] == 0) continue;
        auto it = rows_.find(row.lo + static_cast<PacketIndex>(j));
        if (it != rows_.end()) subtract(row, row.coef[j], it->second);
    }
    trim(row);

    DecodeOutcome outcome;
    if (row.coef.empty()) return outcome;
    outcome.innovative = true;

    const gf256::Element lead = row.coef.front();
    if (lead != 1) {
        const auto s = gf256::inv(lead);
        gf256::scale(row.coef, s);
        gf256::scale(row.payload, s);
    }
    const PacketIndex pivot = row.lo;

    // Back-substitute the new pivot out of existing rows.
    std::vector<PacketIndex> touched;
    for (auto& [p, other] : rows_) {
        if (pivot < other.lo || pivot >= other.hi()) continue;
        const auto c = other.coef[static_cast<std::size_t>(pivot - other.lo)];
        if (c == 0) continue;
        subtract(other, c, row);
        while (!other.coef.empty() && other.coef.back() == 0) other.coef.pop_back();
        touched.push_back(p);
    }
    touched.push_back(pivot);
    rows_.emplace(pivot, std::move(row));

    for (PacketIndex p : touched) {
        auto it = rows_.find(p);
        if (it != rows_.end() && is_singleton(it->second)) {
            mark_decoded(p, std::move(it->second.payload));
            rows_.erase(it);
        }
    }

    while (is_decoded(delivered_prefix_ + 1)) {
        ++delivered_prefix_;
        in_order_slot_[static_cast<std::size_t>(delivered_prefix_ - 1)] = slot;
        outcome.newly_in_order.push_back(delivered_prefix_);
    }
    return outcome;
}

}  // namespace acrlnc
