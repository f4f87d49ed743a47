// dtlse: software model of a reconfigurable DTLS 1.3 cryptographic engine
// Copyright 2026 The dtlse Authors.
// SPDX-License-Identifier: Apache-2.0
#include "dtlse/protocols.hpp"

#include "dtlse/errors.hpp"
#include "dtlse/sha256.hpp"

namespace dtlse {
namespace proto {

MerkleTree::MerkleTree(const std::vector<Bytes>& leaves) {
    if (leaves.empty()) throw std::invalid_argument("tree needs at least one leaf");
    std::vector<Bytes> level;
    level.reserve(leaves.size());
    for (const Bytes& leaf : leaves) level.push_back(sha256(leaf));
    levels_.push_back(std::move(level));

    while (levels_.back().size() > 1) {
        const std::vector<Bytes>& below = levels_.back();
        std::vector<Bytes> next;
        next.reserve((below.size() + 1) / 2);
        for (size_t i = 0; i < below.size(); i += 2) {
            const Bytes& left = below[i];
            const Bytes& right = i + 1 < below.size() ? below[i + 1] : below[i];  // duplicate odd
            Bytes cat = left;
            append(cat, right);
            next.push_back(sha256(cat));
        }
        levels_.push_back(std::move(next));
    }
}

std::vector<MerkleTree::ProofStep> MerkleTree::prove(size_t index) const {
    if (index >= levels_[0].size()) throw std::invalid_argument("leaf index out of range");
    std::vector<ProofStep> proof;
    for (size_t lvl = 0; lvl + 1 < levels_.size(); ++lvl) {
        const std::vector<Bytes>& nodes = levels_[lvl];
        size_t sibling = index ^ 1;
        if (sibling >= nodes.size()) sibling = index;  // odd node pairs with itself
        proof.push_back(ProofStep{nodes[sibling], (index & 1) == 0});
        index /= 2;
    }
    return proof;
}

bool MerkleTree::verify(const Bytes& root, const Bytes& leaf, size_t index,
                        const std::vector<ProofStep>& proof) {
    Bytes node = sha256(leaf);
    for (const ProofStep& step : proof) {
        Bytes cat;
        if (step.sibling_on_right) {
            cat = node;
            append(cat, step.sibling);
        } else {
            cat = step.sibling;
            append(cat, node);
        }
        node = sha256(cat);
        index /= 2;
    }
    return node == root;
}

AffinePoint SchnorrProver::commit(Drbg& drbg, UInt256& nonce_out) const {
    nonce_out = scalar_from_drbg(drbg, *curve);
    return ecsm(nonce_out, cache->acquire(*curve, curve->generator), *curve);
}

UInt256 SchnorrProver::respond(const UInt256& nonce, const UInt256& challenge) const {
    FieldElement r(curve->scalar_field, nonce);
    FieldElement c(curve->scalar_field, challenge);
    FieldElement x(curve->scalar_field, secret);
    return mod_add(r, mod_mul(c, x)).value();
}

UInt256 schnorr_challenge(Drbg& verifier_drbg, const CurveParams& curve) {
    return scalar_from_drbg(verifier_drbg, curve);
}

bool schnorr_verify(const CurveParams& curve, PointCache& cache, const AffinePoint& public_key,
                    const SchnorrTranscript& t) {
    if (t.response.is_zero() || !(t.response < curve.n)) return false;
    if (t.challenge.is_zero() || !(t.challenge < curve.n)) return false;
    if (t.commitment.is_infinity() || !on_curve(curve, t.commitment)) return false;
    AffinePoint lhs = ecsm(t.response, cache.acquire(curve, curve.generator), curve);
    AffinePoint rhs = point_add(
        curve, t.commitment, ecsm(t.challenge, cache.acquire(curve, public_key), curve));
    return lhs == rhs;
}

SchnorrTranscript schnorr_simulate(const CurveParams& curve, PointCache& cache,
                                   const AffinePoint& public_key, Drbg& drbg) {
    SchnorrTranscript t;
    t.challenge = scalar_from_drbg(drbg, curve);
    t.response = scalar_from_drbg(drbg, curve);
    AffinePoint s_g = ecsm(t.response, cache.acquire(curve, curve.generator), curve);
    AffinePoint c_q = ecsm(t.challenge, cache.acquire(curve, public_key), curve);
    t.commitment = point_add(curve, s_g, point_neg(curve, c_q));
    return t;
}

namespace {

/// assoc(x) = (x mod 2^L) + 2^L with L = ceil(f/2), reduced into the scalar
/// field.
FieldElement associate_value(const CurveParams& curve, const AffinePoint& point) {
    unsigned half = (curve.nt + 1) / 2;
    UInt256 masked;
    for (unsigned i = 0; i < half; ++i)
        if (point.x().value().bit(i)) masked.set_bit(i);
    masked.set_bit(half);
    return FieldElement::reduced(curve.scalar_field, masked);
}

}  // namespace

Bytes ecmqv_derive(const CurveParams& curve, PointCache& cache, const EcmqvParty& self,
                   const AffinePoint& peer_static, const AffinePoint& peer_ephemeral) {
    if (!on_curve(curve, peer_static) || peer_static.is_infinity() ||
        !on_curve(curve, peer_ephemeral) || peer_ephemeral.is_infinity())
        throw CryptoError("peer key failed curve validation");

    FieldElement own_assoc = associate_value(curve, self.ephemeral_pair.q);
    FieldElement peer_assoc = associate_value(curve, peer_ephemeral);
    if (own_assoc.is_zero() || peer_assoc.is_zero()) throw CryptoError("degenerate associate value");

    // Implicit signature s = ephemeral + assoc(own) * static, mod n.
    FieldElement s = mod_add(FieldElement(curve.scalar_field, self.ephemeral_pair.d),
                             mod_mul(own_assoc, FieldElement(curve.scalar_field, self.static_pair.d)));
    if (s.is_zero()) throw CryptoError("degenerate implicit signature");

    // Fold in the cofactor: k = h * s mod n.
    FieldElement k = s;
    for (unsigned i = 1; i < curve.cofactor; ++i)
        k = mod_add(k, s);

    AffinePoint combined = point_add(
        curve, peer_ephemeral, ecsm(peer_assoc.value(), cache.acquire(curve, peer_static), curve));
    if (combined.is_infinity()) throw CryptoError("degenerate combined point");
    AffinePoint shared = ecsm(k.value(), cache.acquire(curve, combined), curve);
    if (shared.is_infinity()) throw CryptoError("degenerate shared point");

    return hkdf_extract(to_bytes("ecmqv"), shared.x().value().to_bytes_be());
}

}  // namespace proto
}  // namespace dtlse
