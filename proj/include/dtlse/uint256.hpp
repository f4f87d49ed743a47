// dtlse: software model of a reconfigurable DTLS 1.3 cryptographic engine
// Copyright 2026 The dtlse Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

#include "dtlse/bytes.hpp"

namespace dtlse {

/// Fixed-width 256-bit unsigned integer, four 64-bit limbs, least significant
/// limb first. Mirrors the engine's full-width 256-bit data path: all
/// arithmetic is well-defined over the whole range and carries/borrows are
/// reported to the caller instead of trapping.
struct UInt256 {
    std::array<uint64_t, 4> limb{0, 0, 0, 0};

    constexpr UInt256() = default;
    constexpr explicit UInt256(uint64_t v) : limb{v, 0, 0, 0} {}

    static UInt256 from_hex(std::string_view hex);
    static UInt256 from_bytes_be(BytesView bytes);  // up to 32 bytes

    std::string to_hex() const;         // minimal-width, lowercase, "0" for zero
    std::string to_hex_padded() const;  // always 64 hex digits
    Bytes to_bytes_be() const;          // fixed 32 bytes
    Bytes to_bytes_be(size_t width) const;

    bool is_zero() const { return (limb[0] | limb[1] | limb[2] | limb[3]) == 0; }
    bool is_even() const { return (limb[0] & 1) == 0; }
    bool bit(unsigned i) const { return (limb[i >> 6] >> (i & 63)) & 1; }
    void set_bit(unsigned i) { limb[i >> 6] |= uint64_t{1} << (i & 63); }

    /// Index of the most significant set bit plus one; 0 for zero.
    unsigned bit_length() const;

    friend bool operator==(const UInt256&, const UInt256&) = default;
    std::strong_ordering operator<=>(const UInt256& o) const;
};

/// r = a + b, returns the carry out of bit 255.
bool add_carry(const UInt256& a, const UInt256& b, UInt256& r);
/// r = a - b, returns the borrow out of bit 255.
bool sub_borrow(const UInt256& a, const UInt256& b, UInt256& r);

UInt256 shl1(const UInt256& a);  // discards the top bit
UInt256 shr1(const UInt256& a);
UInt256 shl(const UInt256& a, unsigned k);
UInt256 shr(const UInt256& a, unsigned k);

/// Per-limb masked select, fixed shape for either outcome.
UInt256 select(bool take_b, const UInt256& a, const UInt256& b);

}  // namespace dtlse
