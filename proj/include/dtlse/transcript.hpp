// dtlse: software model of a reconfigurable DTLS 1.3 cryptographic engine
// Copyright 2026 The dtlse Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "dtlse/bytes.hpp"
#include "dtlse/sha256.hpp"

namespace dtlse {

/// Compact save/restore image of a running transcript:
///   H (32B, big-endian words) || bit_count (8B BE) || pending_len (1B) || pending
/// Serialized size is 41 + pending bytes: at most 104, and within the 96-byte
/// session budget whenever at most 55 bytes are pending.
struct TranscriptSnapshot {
    std::array<uint8_t, 32> chain;
    uint64_t bit_count = 0;
    Bytes pending;  // 0..63 bytes

    Bytes serialize() const;
    static TranscriptSnapshot deserialize(BytesView data);
};

/// Running session hash. Bytes stream through a 64-byte staging buffer and
/// full blocks are digested eagerly, so the full message never needs to be
/// retained; a checkpoint finalizes a copy and the running state keeps
/// absorbing.
class RunningTranscript {
  public:
    void absorb(BytesView data);

    /// Hash of everything absorbed so far; the transcript is unchanged.
    Bytes checkpoint() const;

    TranscriptSnapshot snapshot() const;
    static RunningTranscript restore(const TranscriptSnapshot& snap);

    uint64_t total_bytes() const { return sha_.bit_count() / 8; }
    size_t pending_len() const { return sha_.pending().size(); }

  private:
    Sha256State sha_;
};

}  // namespace dtlse
