#pragma once

#include <cstdint>
#include <map>
#include <random>
#include <span>
#include <string_view>
#include <vector>

#include "acrlnc/gf256.hpp"

namespace acrlnc {

using Slot = std::int64_t;
// 1-based position in the source stream.
using PacketIndex = std::int64_t;
using Payload = std::vector<std::uint8_t>;
using Rng = std::mt19937_64;

struct InformationPacket {
    PacketIndex index = 0;
    Payload payload;
};

enum class PacketKind { NewInfo, Fec, FbFec, TerminalRepeat };

std::string_view to_string(PacketKind kind);

// A random linear combination of the contiguous window
// [window_start, window_start + coefficients.size()).
struct CodedPacket {
    Slot slot = 0;
    PacketIndex window_start = 1;
    std::vector<gf256::Element> coefficients;
    Payload payload;
    PacketKind kind = PacketKind::NewInfo;

    std::size_t width() const { return coefficients.size(); }
    PacketIndex window_end() const {
        return window_start + static_cast<PacketIndex>(coefficients.size()) - 1;
    }
    // Number of nonzero coefficient positions.
    std::size_t dof() const;
};

// Octet-wise combination sum(coefficients[i] * window[i].payload).
// Throws std::invalid_argument on empty input or length mismatch.
Payload encode(std::span<const InformationPacket> window,
               std::span<const gf256::Element> coefficients);

// Uniform coefficients; the last (newest) position is redrawn until nonzero.
std::vector<gf256::Element> random_coefficients(std::size_t width, Rng& rng);

struct DecodeOutcome {
    bool innovative = false;
    std::vector<PacketIndex> newly_in_order;
};

// Incremental Gaussian elimination over GF(2^8). Pending rows are kept in
// reduced row-echelon form keyed by pivot column; a row that reduces to a
// single column is moved to the decoded store. A payload length of zero
// gives a coefficient-only decoder (the sender's shadow copy).
class Decoder {
public:
    explicit Decoder(std::size_t payload_len = 0) : payload_len_(payload_len) {}

    DecodeOutcome absorb(const CodedPacket& packet, Slot slot);

    // Decoded packets plus pending independent rows.
    std::size_t rank() const { return decoded_count_ + rows_.size(); }
    std::size_t pending_rows() const { return rows_.size(); }
    std::size_t decoded_count() const { return decoded_count_; }
    PacketIndex delivered_prefix() const { return delivered_prefix_; }

    bool is_decoded(PacketIndex index) const;
    // Payload of a decoded packet; empty span when not decoded.
    std::span<const std::uint8_t> payload(PacketIndex index) const;
    // Slot at which packet `index` was released in order (0 if not yet).
    Slot in_order_slot(PacketIndex index) const;

private:
    struct Row {
        PacketIndex lo = 0;  // pivot column; coef[0] == 1
        std::vector<gf256::Element> coef;
        Payload payload;
        PacketIndex hi() const { return lo + static_cast<PacketIndex>(coef.size()); }
    };

    static void subtract(Row& dst, gf256::Element c, const Row& src);
    static void trim(Row& row);
    bool is_singleton(const Row& row) const;
    void mark_decoded(PacketIndex index, Payload payload);
    void grow(PacketIndex index);

    std::size_t payload_len_;
    std::map<PacketIndex, Row> rows_;
    std::vector<char> decoded_;       // by index - 1
    std::vector<Payload> store_;      // by index - 1
    std::vector<Slot> in_order_slot_; // by index - 1
    std::size_t decoded_count_ = 0;
    PacketIndex delivered_prefix_ = 0;
};

}  // namespace acrlnc
