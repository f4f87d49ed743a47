// dtlse: software model of a reconfigurable DTLS 1.3 cryptographic engine
// Copyright 2026 The dtlse Authors.
// SPDX-License-Identifier: Apache-2.0
#include "dtlse/transcript.hpp"

#include <stdexcept>

namespace dtlse {

Bytes TranscriptSnapshot::serialize() const {
    if (pending.size() > 63) throw std::invalid_argument("pending exceeds one block");
    Bytes out(chain.begin(), chain.end());
    put_u64(out, bit_count);
    out.push_back(static_cast<uint8_t>(pending.size()));
    append(out, pending);
    return out;
}

TranscriptSnapshot TranscriptSnapshot::deserialize(BytesView data) {
    if (data.size() < 41) throw std::invalid_argument("snapshot too short");
    TranscriptSnapshot s;
    std::copy(data.begin(), data.begin() + 32, s.chain.begin());
    s.bit_count = get_u64(data, 32);
    size_t n = data[40];
    if (n > 63 || data.size() != 41 + n) throw std::invalid_argument("snapshot length mismatch");
    s.pending.assign(data.begin() + 41, data.end());
    return s;
}

void RunningTranscript::absorb(BytesView data) { sha_.absorb(data); }

Bytes RunningTranscript::checkpoint() const {
    auto d = sha_.finalize();
    return Bytes(d.begin(), d.end());
}

TranscriptSnapshot RunningTranscript::snapshot() const {
    TranscriptSnapshot s;
    const auto& h = sha_.chain();
    for (int i = 0; i < 8; ++i) {
        s.chain[4 * i] = static_cast<uint8_t>(h[i] >> 24);
        s.chain[4 * i + 1] = static_cast<uint8_t>(h[i] >> 16);
        s.chain[4 * i + 2] = static_cast<uint8_t>(h[i] >> 8);
        s.chain[4 * i + 3] = static_cast<uint8_t>(h[i]);
    }
    s.bit_count = sha_.bit_count();
    auto p = sha_.pending();
    s.pending.assign(p.begin(), p.end());
    return s;
}

RunningTranscript RunningTranscript::restore(const TranscriptSnapshot& snap) {
    std::array<uint32_t, 8> h;
    for (int i = 0; i < 8; ++i) {
        h[i] = static_cast<uint32_t>(snap.chain[4 * i]) << 24 |
               static_cast<uint32_t>(snap.chain[4 * i + 1]) << 16 |
               static_cast<uint32_t>(snap.chain[4 * i + 2]) << 8 | snap.chain[4 * i + 3];
    }
    RunningTranscript rt;
    rt.sha_ = Sha256State::restore(h, snap.bit_count, snap.pending);
    return rt;
}

}  // namespace dtlse
