// dtlse: software model of a reconfigurable DTLS 1.3 cryptographic engine
// Copyright 2026 The dtlse Authors.
// SPDX-License-Identifier: Apache-2.0
#include "dtlse/ecdsa.hpp"

#include "dtlse/errors.hpp"
#include "dtlse/ledger.hpp"

namespace dtlse {

namespace {

UInt256 bits_to_scalar(BytesView bytes, unsigned n_bits) {
    UInt256 v = UInt256::from_bytes_be(bytes);
    unsigned total = static_cast<unsigned>(bytes.size()) * 8;
    return total > n_bits ? shr(v, total - n_bits) : v;
}

size_t coord_width(const CurveParams& c) { return (c.field->t + 7) / 8; }

}  // namespace

UInt256 scalar_from_drbg(Drbg& drbg, const CurveParams& c) {
    for (;;) {
        Bytes raw = drbg.generate(c.nt);
        UInt256 k = bits_to_scalar(raw, c.nt);
        if (!k.is_zero() && k < c.n) return k;
    }
}

FieldElement hash_to_scalar(const CurveParams& c, BytesView hash32) {
    if (hash32.size() != 32) throw std::invalid_argument("message hash must be 32 bytes");
    UInt256 e = bits_to_scalar(hash32, c.nt < 256 ? c.nt : 256);
    UInt256 diff;
    if (!sub_borrow(e, c.n, diff)) e = diff;  // e < 2^nt < 2n, one subtract settles it
    return FieldElement(c.scalar_field, e);
}

KeyPair keygen(const CurveParams& c, PointCache& cache, Drbg& drbg) {
    UInt256 d = scalar_from_drbg(drbg, c);
    AffinePoint q = ecsm(d, cache.acquire(c, c.generator), c);
    return KeyPair{d, q};
}

Bytes ecdh_derive(const CurveParams& c, PointCache& cache, const UInt256& k,
                  const AffinePoint& peer) {
    if (peer.is_infinity() || !on_curve(c, peer))
        throw CryptoError("peer public key failed curve validation");
    AffinePoint shared = ecsm(k, cache.acquire(c, peer), c);
    if (shared.is_infinity()) throw CryptoError("degenerate shared point");
    if (CostLedger* l = active_ledger()) ++l->ecdh_derives;
    return shared.x().value().to_bytes_be();
}

EcdsaSignature ecdsa_sign(const CurveParams& c, PointCache& cache, const UInt256& d,
                          BytesView msg_hash32) {
    if (d.is_zero() || !(d < c.n)) throw std::invalid_argument("signing key out of range");
    FieldElement e = hash_to_scalar(c, msg_hash32);
    FieldElement priv(c.scalar_field, d);

    Bytes seed = d.to_bytes_be();
    append(seed, msg_hash32);
    Drbg nonce_drbg(seed);

    const CombTable& g_table = cache.acquire(c, c.generator);
    for (;;) {
        UInt256 k = scalar_from_drbg(nonce_drbg, c);
        AffinePoint big_r = ecsm(k, g_table, c);
        FieldElement r = FieldElement::reduced(c.scalar_field, big_r.x().value());
        if (r.is_zero()) continue;
        FieldElement s =
            mod_div(mod_add(e, mod_mul(r, priv)), FieldElement(c.scalar_field, k));
        if (s.is_zero()) continue;
        if (CostLedger* l = active_ledger()) ++l->ecdsa_signs;
        return EcdsaSignature{r.value(), s.value()};
    }
}

bool ecdsa_verify(const CurveParams& c, PointCache& cache, const AffinePoint& q,
                  BytesView msg_hash32, const EcdsaSignature& sig) {
    if (CostLedger* l = active_ledger()) ++l->ecdsa_verifies;
    if (sig.r.is_zero() || !(sig.r < c.n) || sig.s.is_zero() || !(sig.s < c.n)) return false;
    if (q.is_infinity() || !on_curve(c, q)) return false;

    FieldElement e = hash_to_scalar(c, msg_hash32);
    FieldElement w = mod_div(FieldElement(c.scalar_field, UInt256(1)),
                             FieldElement(c.scalar_field, sig.s));
    FieldElement u1 = mod_mul(e, w);
    FieldElement u2 = mod_mul(FieldElement(c.scalar_field, sig.r), w);

    AffinePoint acc;
    if (!u1.is_zero()) acc = ecsm(u1.value(), cache.acquire(c, c.generator), c);
    AffinePoint term = ecsm(u2.value(), cache.acquire(c, q), c);
    AffinePoint big_r = point_add(c, acc, term);
    if (big_r.is_infinity()) return false;

    FieldElement rx = FieldElement::reduced(c.scalar_field, big_r.x().value());
    return rx.value() == sig.r;
}

Bytes encode_point(const CurveParams& c, const AffinePoint& p) {
    if (p.is_infinity()) throw std::invalid_argument("cannot encode the identity");
    size_t w = coord_width(c);
    Bytes out;
    out.reserve(1 + 2 * w);
    out.push_back(0x04);
    append(out, p.x().value().to_bytes_be(w));
    append(out, p.y().value().to_bytes_be(w));
    return out;
}

AffinePoint decode_point(const CurveParams& c, BytesView data) {
    size_t w = coord_width(c);
    if (data.size() != 1 + 2 * w || data[0] != 0x04)
        throw CryptoError("malformed uncompressed point");
    UInt256 x = UInt256::from_bytes_be(data.subspan(1, w));
    UInt256 y = UInt256::from_bytes_be(data.subspan(1 + w, w));
    if (!(x < c.field->p) || !(y < c.field->p)) throw CryptoError("point coordinate out of range");
    AffinePoint p(FieldElement(c.field, x), FieldElement(c.field, y));
    if (!on_curve(c, p)) throw CryptoError("point is not on the curve");
    return p;
}

}  // namespace dtlse
