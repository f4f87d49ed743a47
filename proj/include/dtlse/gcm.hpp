// dtlse: software model of a reconfigurable DTLS 1.3 cryptographic engine
// Copyright 2026 The dtlse Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>

#include "dtlse/aes.hpp"
#include "dtlse/bytes.hpp"

namespace dtlse {

/// Galois multiplier staging and tag width. A multiplier with n_h h-stages
/// needs 128/n_h cycles per multiplication; n_h = 4 (32 cycles per block) is
/// the default, and is also the staging assumed by the GCM cycle formula.
struct GcmParams {
    unsigned n_h = 4;
    size_t tag_len = 16;

    void validate() const;
};

/// Product in GF(2^128) under the GCM bit ordering (bit 0 of a block is the
/// most significant bit of its first byte). Computed as 128 applications of
/// the basic h-step
///   Z <- Z xor x_i * V,  V <- (V >> 1) xor lsb(V) * (11100001 || 0^120)
/// grouped n_h per cycle; the result does not depend on n_h.
Block128 ghash_mul(const Block128& x, const Block128& h, const GcmParams& params = {});

/// AES-128-GCM seal with a 96-bit IV. The tag is truncated to
/// params.tag_len. Ledger charge: 54 + 32*(m+n) cycles for m blocks of
/// associated data and n blocks of payload.
std::pair<Bytes, Bytes> gcm_seal(BytesView key16, BytesView iv12, BytesView aad, BytesView pt,
                                 const GcmParams& params = {});

/// Verifies the (possibly truncated) tag with a constant-shape comparison
/// before any plaintext is produced; returns nothing on authentication
/// failure. Same cycle charge as sealing.
std::optional<Bytes> gcm_open(BytesView key16, BytesView iv12, BytesView aad, BytesView ct,
                              BytesView tag, const GcmParams& params = {});

}  // namespace dtlse
