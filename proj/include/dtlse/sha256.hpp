// dtlse: software model of a reconfigurable DTLS 1.3 cryptographic engine
// Copyright 2026 The dtlse Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <cstdint>

#include "dtlse/bytes.hpp"

namespace dtlse {

/// Streaming SHA2-256. The eight chaining words fully define the hash state
/// at every 64-byte boundary, so a state can be serialized, dropped, and
/// restored mid-message. Each digested 512-bit block costs 65 cycles on the
/// ledger. Total input must stay below 2^64 bits.
class Sha256State {
  public:
    Sha256State();

    void absorb(BytesView data);

    /// Pads and returns the digest without disturbing this state; absorbing
    /// may continue afterwards.
    std::array<uint8_t, 32> finalize() const;

    const std::array<uint32_t, 8>& chain() const { return h_; }
    uint64_t bit_count() const { return bits_; }
    BytesView pending() const { return BytesView(buf_.data(), buf_len_); }

    /// Rebuilds a state from its resumable parts. `bit_count` must be a
    /// multiple of 8 and consistent with `pending` (count % 512 bits equals
    /// the pending length in bits).
    static Sha256State restore(const std::array<uint32_t, 8>& chain, uint64_t bit_count,
                               BytesView pending);

  private:
    void compress(const uint8_t* block);

    std::array<uint32_t, 8> h_;
    std::array<uint8_t, 64> buf_{};
    size_t buf_len_ = 0;
    uint64_t bits_ = 0;
};

Bytes sha256(BytesView msg);

/// HMAC-SHA2-256 with the usual 64-byte block: key XORed with repeated 0x36
/// for the inner pass and 0x5C for the outer pass; keys longer than 64 bytes
/// are hashed first.
Bytes hmac_sha256(BytesView key, BytesView msg);

}  // namespace dtlse
