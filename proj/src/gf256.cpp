#include "acrlnc/gf256.hpp"

#include <cassert>

namespace acrlnc::gf256 {

namespace {

Tables build_tables() {
    Tables t;
    unsigned x = 1;
    for (int i = 0; i < 255; ++i) {
        t.exp[i] = static_cast<Element>(x);
        t.log[x] = i;
        x <<= 1;
        if (x & 0x100) x ^= kPolynomial;
    }
    for (int i = 255; i < 512; ++i) t.exp[i] = t.exp[i - 255];
    t.log[0] = -1;

    for (unsigned a = 1; a < 256; ++a) t.inverse[a] = t.exp[255 - t.log[a]];

    for (unsigned a = 1; a < 256; ++a)
        for (unsigned b = 1; b < 256; ++b)
            t.mul[a][b] = t.exp[t.log[a] + t.log[b]];
    return t;
}

}  // namespace

const Tables& tables() {
    static const Tables t = build_tables();
    return t;
}

void axpy(std::span<Element> dst, Element c, std::span<const Element> src) {
    assert(dst.size() == src.size());
    if (c == 0) return;
    if (c == 1) {
        for (std::size_t i = 0; i < dst.size(); ++i) dst[i] ^= src[i];
        return;
    }
    const auto& row = tables().mul[c];
    for (std::size_t i = 0; i < dst.size(); ++i) dst[i] ^= row[src[i]];
}

void scale(std::span<Element> v, Element c) {
    if (c == 1) return;
    const auto& row = tables().mul[c];
    for (auto& e : v) e = row[e];
}

}  // namespace acrlnc::gf256
