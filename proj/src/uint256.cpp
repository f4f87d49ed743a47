// dtlse: software model of a reconfigurable DTLS 1.3 cryptographic engine
// Copyright 2026 The dtlse Authors.
// SPDX-License-Identifier: Apache-2.0
#include "dtlse/uint256.hpp"

#include <stdexcept>

namespace dtlse {

UInt256 UInt256::from_hex(std::string_view hex) {
    if (hex.size() > 64) throw std::invalid_argument("hex value wider than 256 bits");
    std::string padded(64 - hex.size(), '0');
    padded.append(hex);
    return from_bytes_be(dtlse::from_hex(padded));
}

UInt256 UInt256::from_bytes_be(BytesView bytes) {
    if (bytes.size() > 32) throw std::invalid_argument("byte string wider than 256 bits");
    UInt256 r;
    for (size_t i = 0; i < bytes.size(); ++i) {
        size_t bit = (bytes.size() - 1 - i) * 8;
        r.limb[bit >> 6] |= uint64_t{bytes[i]} << (bit & 63);
    }
    return r;
}

std::string UInt256::to_hex() const {
    std::string s = to_hex_padded();
    size_t i = s.find_first_not_of('0');
    return i == std::string::npos ? "0" : s.substr(i);
}

std::string UInt256::to_hex_padded() const { return dtlse::to_hex(to_bytes_be()); }

Bytes UInt256::to_bytes_be() const { return to_bytes_be(32); }

Bytes UInt256::to_bytes_be(size_t width) const {
    if (width < (bit_length() + 7) / 8) throw std::invalid_argument("value does not fit width");
    Bytes out(width, 0);
    for (size_t i = 0; i < width && i < 32; ++i) {
        size_t bit = i * 8;
        out[width - 1 - i] = static_cast<uint8_t>(limb[bit >> 6] >> (bit & 63));
    }
    return out;
}

unsigned UInt256::bit_length() const {
    for (int i = 3; i >= 0; --i) {
        if (limb[i] != 0) return static_cast<unsigned>(i * 64 + 64 - __builtin_clzll(limb[i]));
    }
    return 0;
}

std::strong_ordering UInt256::operator<=>(const UInt256& o) const {
    for (int i = 3; i >= 0; --i) {
        if (limb[i] != o.limb[i]) return limb[i] <=> o.limb[i];
    }
    return std::strong_ordering::equal;
}

bool add_carry(const UInt256& a, const UInt256& b, UInt256& r) {
    unsigned __int128 carry = 0;
    for (int i = 0; i < 4; ++i) {
        unsigned __int128 s = carry + a.limb[i] + b.limb[i];
        r.limb[i] = static_cast<uint64_t>(s);
        carry = s >> 64;
    }
    return carry != 0;
}

bool sub_borrow(const UInt256& a, const UInt256& b, UInt256& r) {
    unsigned __int128 borrow = 0;
    for (int i = 0; i < 4; ++i) {
        unsigned __int128 d =
            static_cast<unsigned __int128>(a.limb[i]) - b.limb[i] - static_cast<uint64_t>(borrow);
        r.limb[i] = static_cast<uint64_t>(d);
        borrow = (d >> 64) != 0 ? 1 : 0;
    }
    return borrow != 0;
}

UInt256 shl1(const UInt256& a) {
    UInt256 r;
    uint64_t carry = 0;
    for (int i = 0; i < 4; ++i) {
        r.limb[i] = a.limb[i] << 1 | carry;
        carry = a.limb[i] >> 63;
    }
    return r;
}

UInt256 shr1(const UInt256& a) {
    UInt256 r;
    uint64_t carry = 0;
    for (int i = 3; i >= 0; --i) {
        r.limb[i] = a.limb[i] >> 1 | carry << 63;
        carry = a.limb[i] & 1;
    }
    return r;
}

UInt256 shl(const UInt256& a, unsigned k) {
    UInt256 r;
    if (k >= 256) return r;
    unsigned limbs = k / 64, bits = k % 64;
    for (int i = 3; i >= 0; --i) {
        uint64_t v = 0;
        int src = i - static_cast<int>(limbs);
        if (src >= 0) v = a.limb[src] << bits;
        if (bits != 0 && src - 1 >= 0) v |= a.limb[src - 1] >> (64 - bits);
        r.limb[i] = v;
    }
    return r;
}

UInt256 shr(const UInt256& a, unsigned k) {
    UInt256 r;
    if (k >= 256) return r;
    unsigned limbs = k / 64, bits = k % 64;
    for (unsigned i = 0; i < 4; ++i) {
        uint64_t v = 0;
        unsigned src = i + limbs;
        if (src < 4) v = a.limb[src] >> bits;
        if (bits != 0 && src + 1 < 4) v |= a.limb[src + 1] << (64 - bits);
        r.limb[i] = v;
    }
    return r;
}

UInt256 select(bool take_b, const UInt256& a, const UInt256& b) {
    uint64_t mask = 0 - static_cast<uint64_t>(take_b);
    UInt256 r;
    for (int i = 0; i < 4; ++i) r.limb[i] = (a.limb[i] & ~mask) | (b.limb[i] & mask);
    return r;
}

}  // namespace dtlse
