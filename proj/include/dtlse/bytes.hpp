// dtlse: software model of a reconfigurable DTLS 1.3 cryptographic engine
// Copyright 2026 The dtlse Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace dtlse {

using Bytes = std::vector<uint8_t>;
using BytesView = std::span<const uint8_t>;

/// Lowercase hex. Input parsing is case-insensitive and rejects odd length
/// or non-hex characters.
std::string to_hex(BytesView data);
Bytes from_hex(std::string_view hex);

inline Bytes to_bytes(std::string_view s) { return Bytes(s.begin(), s.end()); }

/// Constant-shape byte comparison: examines every byte regardless of where
/// the first mismatch occurs.
bool ct_equal(BytesView a, BytesView b);

// Big-endian integer field helpers for wire encoding.
void put_u16(Bytes& out, uint16_t v);
void put_u24(Bytes& out, uint32_t v);
void put_u48(Bytes& out, uint64_t v);
void put_u64(Bytes& out, uint64_t v);
uint16_t get_u16(BytesView in, size_t off);
uint32_t get_u24(BytesView in, size_t off);
uint64_t get_u48(BytesView in, size_t off);
uint64_t get_u64(BytesView in, size_t off);

inline void append(Bytes& out, BytesView more) { out.insert(out.end(), more.begin(), more.end()); }

}  // namespace dtlse
