// dtlse: software model of a reconfigurable DTLS 1.3 cryptographic engine
// Copyright 2026 The dtlse Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <cstdint>

#include "dtlse/bytes.hpp"

namespace dtlse {

using Block128 = std::array<uint8_t, 16>;

/// Expanded AES-128 key: eleven 16-byte round keys.
struct AesKeySchedule {
    std::array<Block128, 11> round_keys;

    static AesKeySchedule expand(BytesView key16);
};

/// Forward cipher on one block. 11 cycles on the ledger (128-bit data path,
/// one round per cycle plus load). GCM needs only the forward direction.
Block128 aes128_encrypt(const AesKeySchedule& ks, const Block128& pt);

namespace detail {
/// Uninstrumented forward cipher for composite modes that carry their own
/// cycle formula.
Block128 aes_forward(const AesKeySchedule& ks, const Block128& pt);
}  // namespace detail

}  // namespace dtlse
