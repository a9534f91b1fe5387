#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>

// Arithmetic over GF(2^8) with reduction polynomial x^8+x^4+x^3+x^2+1.
namespace acrlnc::gf256 {

using Element = std::uint8_t;

inline constexpr unsigned kPolynomial = 0x11D;
inline constexpr std::size_t kFieldSize = 256;

struct Tables {
    std::array<Element, 512> exp{};
    std::array<int, 256> log{};
    std::array<Element, 256> inverse{};
    // mul[a][b]; 64 KiB, used by the row kernels.
    std::array<std::array<Element, 256>, 256> mul{};
};

const Tables& tables();

inline Element add(Element a, Element b) { return a ^ b; }

inline Element mul(Element a, Element b) { return tables().mul[a][b]; }

// Precondition: a != 0.
inline Element inv(Element a) { return tables().inverse[a]; }

inline Element div(Element a, Element b) { return mul(a, inv(b)); }

// dst ^= c * src, element-wise. Sizes must match.
void axpy(std::span<Element> dst, Element c, std::span<const Element> src);

// v *= c, element-wise.
void scale(std::span<Element> v, Element c);

}  // namespace acrlnc::gf256
