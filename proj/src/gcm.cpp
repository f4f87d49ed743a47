// dtlse: software model of a reconfigurable DTLS 1.3 cryptographic engine
// Copyright 2026 The dtlse Authors.
// SPDX-License-Identifier: Apache-2.0
#include "dtlse/gcm.hpp"

#include <stdexcept>

#include "dtlse/ledger.hpp"

namespace dtlse {

namespace {

struct Gf128 {
    uint64_t hi = 0, lo = 0;  // hi holds bytes 0..7, big-endian

    static Gf128 from_block(const Block128& b) {
        Gf128 v;
        for (int i = 0; i < 8; ++i) v.hi = v.hi << 8 | b[i];
        for (int i = 8; i < 16; ++i) v.lo = v.lo << 8 | b[i];
        return v;
    }
    Block128 to_block() const {
        Block128 b;
        for (int i = 0; i < 8; ++i) b[i] = static_cast<uint8_t>(hi >> (56 - 8 * i));
        for (int i = 0; i < 8; ++i) b[8 + i] = static_cast<uint8_t>(lo >> (56 - 8 * i));
        return b;
    }
};

// One multiplication = 128 h-steps. The reduction block 11100001||0^120 is
// 0xe1 in the leading byte.
Gf128 gf_mul(const Gf128& x, const Gf128& h) {
    Gf128 z;
    Gf128 v = h;
    for (int i = 0; i < 128; ++i) {
        bool xi = i < 64 ? (x.hi >> (63 - i)) & 1 : (x.lo >> (127 - i)) & 1;
        if (xi) {
            z.hi ^= v.hi;
            z.lo ^= v.lo;
        }
        bool lsb = v.lo & 1;
        v.lo = v.lo >> 1 | v.hi << 63;
        v.hi >>= 1;
        if (lsb) v.hi ^= 0xe100000000000000ULL;
    }
    return z;
}

class GhashAccumulator {
  public:
    GhashAccumulator(const Block128& h, unsigned n_h) : h_(Gf128::from_block(h)), n_h_(n_h) {}

    void feed(BytesView data) {
        for (size_t off = 0; off < data.size(); off += 16) {
            Gf128 blk;
            size_t n = std::min<size_t>(16, data.size() - off);
            for (size_t i = 0; i < 16; ++i) {
                uint8_t byte = i < n ? data[off + i] : 0;
                if (i < 8)
                    blk.hi = blk.hi << 8 | byte;
                else
                    blk.lo = blk.lo << 8 | byte;
            }
            y_.hi ^= blk.hi;
            y_.lo ^= blk.lo;
            y_ = gf_mul(y_, h_);
            if (CostLedger* l = active_ledger()) l->record_ghash(n_h_, false);
        }
    }

    void feed_lengths(uint64_t aad_bits, uint64_t data_bits) {
        y_.hi ^= aad_bits;
        y_.lo ^= data_bits;
        y_ = gf_mul(y_, h_);
        if (CostLedger* l = active_ledger()) l->record_ghash(n_h_, false);
    }

    Block128 digest() const { return y_.to_block(); }

  private:
    Gf128 h_;
    Gf128 y_;
    unsigned n_h_;
};

Block128 counter_block(BytesView iv12, uint32_t counter) {
    Block128 b{};
    for (int i = 0; i < 12; ++i) b[i] = iv12[i];
    b[12] = static_cast<uint8_t>(counter >> 24);
    b[13] = static_cast<uint8_t>(counter >> 16);
    b[14] = static_cast<uint8_t>(counter >> 8);
    b[15] = static_cast<uint8_t>(counter);
    return b;
}

Block128 aes_counted(const AesKeySchedule& ks, const Block128& in) {
    if (CostLedger* l = active_ledger()) l->record_aes_block(false);
    return detail::aes_forward(ks, in);
}

void check_inputs(BytesView iv12, BytesView aad, BytesView data, const GcmParams& params) {
    params.validate();
    if (iv12.size() != 12) throw std::invalid_argument("GCM IV must be exactly 12 bytes");
    if (aad.size() >= (uint64_t{1} << 32) || data.size() >= (uint64_t{1} << 32))
        throw std::invalid_argument("GCM input too large");
}

// Tag over aad and ciphertext; also produces the keystream-XORed output.
struct GcmCore {
    GcmCore(const AesKeySchedule& ks, BytesView iv12, const GcmParams& params)
        : ks_(ks), iv_(iv12), params_(params) {}

    Bytes apply_keystream(BytesView data) {
        Bytes out(data.size());
        for (size_t off = 0; off < data.size(); off += 16) {
            Block128 stream = aes_counted(ks_, counter_block(iv_, 2 + counter_++));
            size_t n = std::min<size_t>(16, data.size() - off);
            for (size_t i = 0; i < n; ++i) out[off + i] = data[off + i] ^ stream[i];
        }
        return out;
    }

    Bytes tag(BytesView aad, BytesView ct) {
        Block128 h = aes_counted(ks_, Block128{});
        GhashAccumulator ghash(h, params_.n_h);
        ghash.feed(aad);
        ghash.feed(ct);
        ghash.feed_lengths(aad.size() * 8, ct.size() * 8);
        Block128 s = ghash.digest();
        Block128 ek_j0 = aes_counted(ks_, counter_block(iv_, 1));
        Bytes t(params_.tag_len);
        for (size_t i = 0; i < t.size(); ++i) t[i] = s[i] ^ ek_j0[i];
        return t;
    }

    const AesKeySchedule& ks_;
    BytesView iv_;
    GcmParams params_;
    uint32_t counter_ = 0;
};

uint64_t blocks16(size_t n) { return (n + 15) / 16; }

}  // namespace

void GcmParams::validate() const {
    if (n_h == 0 || n_h > 128 || 128 % n_h != 0)
        throw std::invalid_argument("n_h must divide 128");
    if (tag_len != 4 && tag_len != 8 && tag_len != 12 && tag_len != 16)
        throw std::invalid_argument("tag length must be 4, 8, 12 or 16 bytes");
}

Block128 ghash_mul(const Block128& x, const Block128& h, const GcmParams& params) {
    params.validate();
    if (CostLedger* l = active_ledger()) l->record_ghash(params.n_h, true);
    return gf_mul(Gf128::from_block(x), Gf128::from_block(h)).to_block();
}

std::pair<Bytes, Bytes> gcm_seal(BytesView key16, BytesView iv12, BytesView aad, BytesView pt,
                                 const GcmParams& params) {
    check_inputs(iv12, aad, pt, params);
    AesKeySchedule ks = AesKeySchedule::expand(key16);
    GcmCore core(ks, iv12, params);
    Bytes ct = core.apply_keystream(pt);
    Bytes tag = core.tag(aad, ct);
    if (CostLedger* l = active_ledger()) l->record_gcm(blocks16(aad.size()), blocks16(pt.size()));
    return {std::move(ct), std::move(tag)};
}

std::optional<Bytes> gcm_open(BytesView key16, BytesView iv12, BytesView aad, BytesView ct,
                              BytesView tag, const GcmParams& params) {
    check_inputs(iv12, aad, ct, params);
    AesKeySchedule ks = AesKeySchedule::expand(key16);
    GcmCore core(ks, iv12, params);
    Bytes expect = core.tag(aad, ct);
    Bytes pt = core.apply_keystream(ct);
    if (CostLedger* l = active_ledger()) l->record_gcm(blocks16(aad.size()), blocks16(ct.size()));
    if (tag.size() != params.tag_len || !ct_equal(expect, tag)) return std::nullopt;
    return pt;
}

}  // namespace dtlse
