// dtlse: software model of a reconfigurable DTLS 1.3 cryptographic engine
// Copyright 2026 The dtlse Authors.
// SPDX-License-Identifier: Apache-2.0
#include "dtlse/bytes.hpp"

#include <stdexcept>

namespace dtlse {

std::string to_hex(BytesView data) {
    static const char* digits = "0123456789abcdef";
    std::string out;
    out.reserve(data.size() * 2);
    for (uint8_t b : data) {
        out.push_back(digits[b >> 4]);
        out.push_back(digits[b & 0xF]);
    }
    return out;
}

static int hex_nibble(char c) {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    return -1;
}

Bytes from_hex(std::string_view hex) {
    if (hex.size() % 2 != 0) throw std::invalid_argument("hex string has odd length");
    Bytes out(hex.size() / 2);
    for (size_t i = 0; i < out.size(); ++i) {
        int hi = hex_nibble(hex[2 * i]);
        int lo = hex_nibble(hex[2 * i + 1]);
        if (hi < 0 || lo < 0) throw std::invalid_argument("invalid hex character");
        out[i] = static_cast<uint8_t>(hi << 4 | lo);
    }
    return out;
}

bool ct_equal(BytesView a, BytesView b) {
    if (a.size() != b.size()) return false;
    uint8_t diff = 0;
    for (size_t i = 0; i < a.size(); ++i) diff |= static_cast<uint8_t>(a[i] ^ b[i]);
    return diff == 0;
}

void put_u16(Bytes& out, uint16_t v) {
    out.push_back(static_cast<uint8_t>(v >> 8));
    out.push_back(static_cast<uint8_t>(v));
}

void put_u24(Bytes& out, uint32_t v) {
    out.push_back(static_cast<uint8_t>(v >> 16));
    out.push_back(static_cast<uint8_t>(v >> 8));
    out.push_back(static_cast<uint8_t>(v));
}

void put_u48(Bytes& out, uint64_t v) {
    for (int s = 40; s >= 0; s -= 8) out.push_back(static_cast<uint8_t>(v >> s));
}

void put_u64(Bytes& out, uint64_t v) {
    for (int s = 56; s >= 0; s -= 8) out.push_back(static_cast<uint8_t>(v >> s));
}

uint16_t get_u16(BytesView in, size_t off) {
    return static_cast<uint16_t>(in[off] << 8 | in[off + 1]);
}

uint32_t get_u24(BytesView in, size_t off) {
    return static_cast<uint32_t>(in[off]) << 16 | static_cast<uint32_t>(in[off + 1]) << 8 |
           in[off + 2];
}

uint64_t get_u48(BytesView in, size_t off) {
    uint64_t v = 0;
    for (size_t i = 0; i < 6; ++i) v = v << 8 | in[off + i];
    return v;
}

uint64_t get_u64(BytesView in, size_t off) {
    uint64_t v = 0;
    for (size_t i = 0; i < 8; ++i) v = v << 8 | in[off + i];
    return v;
}

}  // namespace dtlse
