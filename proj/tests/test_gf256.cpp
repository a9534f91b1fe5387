#include "doctest.h"

#include <array>
#include <vector>

#include "acrlnc/gf256.hpp"

using namespace acrlnc::gf256;

namespace {

// Carry-less multiply with 0x11D reduction, one bit at a time.
Element slow_mul(Element a, Element b) {
    unsigned r = 0, x = a;
    for (int i = 0; i < 8; ++i) {
        if (b & (1u << i)) r ^= x;
        x <<= 1;
        if (x & 0x100) x ^= 0x11D;
    }
    return static_cast<Element>(r);
}

// exp table built by repeated doubling.
std::array<Element, 255> doubling_powers() {
    std::array<Element, 255> p{};
    unsigned x = 1;
    for (int i = 0; i < 255; ++i) {
        p[i] = static_cast<Element>(x);
        x <<= 1;
        if (x & 0x100) x ^= 0x11D;
    }
    return p;
}

}  // namespace

TEST_CASE("multiplication examples") {
    CHECK(mul(0x01, 0x57) == 0x57);
    CHECK(mul(0x00, 0xFF) == 0x00);
    CHECK(mul(0x02, 0x80) == 0x1D);
    CHECK(add(0x53, 0xCA) == (0x53 ^ 0xCA));
}

TEST_CASE("tables agree with bitwise multiplication") {
    for (unsigned a = 0; a < 256; ++a)
        for (unsigned b = 0; b < 256; ++b)
            REQUIRE(mul(Element(a), Element(b)) == slow_mul(Element(a), Element(b)));
}

TEST_CASE("generator 0x02 has order 255") {
    const auto p = doubling_powers();
    std::array<bool, 256> seen{};
    for (auto v : p) {
        CHECK_FALSE(seen[v]);
        seen[v] = true;
    }
    CHECK_FALSE(seen[0]);
    for (int i = 0; i < 255; ++i) CHECK(tables().exp[i] == p[i]);
}

TEST_CASE("inverses and division") {
    for (unsigned a = 1; a < 256; ++a) {
        CHECK(mul(Element(a), inv(Element(a))) == 1);
        for (unsigned b = 1; b < 256; b += 17) CHECK(mul(div(Element(a), Element(b)), Element(b)) == a);
    }
}

TEST_CASE("row kernels") {
    std::vector<Element> dst{1, 2, 3, 4}, src{5, 6, 7, 8};
    auto expect = dst;
    for (std::size_t i = 0; i < dst.size(); ++i) expect[i] ^= slow_mul(0x35, src[i]);
    axpy(dst, 0x35, src);
    CHECK(dst == expect);
    for (auto& e : expect) e = slow_mul(e, 0xA1);
    scale(dst, 0xA1);
    CHECK(dst == expect);
}
