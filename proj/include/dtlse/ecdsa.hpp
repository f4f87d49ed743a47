// dtlse: software model of a reconfigurable DTLS 1.3 cryptographic engine
// Copyright 2026 The dtlse Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "dtlse/curve.hpp"
#include "dtlse/kdf.hpp"

namespace dtlse {

struct KeyPair {
    UInt256 d;
    AffinePoint q;
};

struct EcdsaSignature {
    UInt256 r;
    UInt256 s;
};

/// Rejection-sampled scalar in [1, n): draws nt bits per attempt from the
/// generator and retries values of 0 or >= n.
UInt256 scalar_from_drbg(Drbg& drbg, const CurveParams& c);

/// Leftmost-nt-bits reduction of a 32-byte hash into the scalar field.
FieldElement hash_to_scalar(const CurveParams& c, BytesView hash32);

/// Fresh key pair; the public point comes from the cached generator table.
KeyPair keygen(const CurveParams& c, PointCache& cache, Drbg& drbg);

/// x-coordinate of k * peer, fixed 32-byte big-endian. The peer point is
/// validated against the curve equation first; its comb table comes from the
/// cache, built on the fly into a free slot when absent.
Bytes ecdh_derive(const CurveParams& c, PointCache& cache, const UInt256& k,
                  const AffinePoint& peer);

/// Deterministic signature: the nonce stream is an HMAC-DRBG instantiated
/// from d || msg_hash, drawing nt bits per candidate and retrying candidates
/// that fall outside [1, n) or produce r = 0 or s = 0.
EcdsaSignature ecdsa_sign(const CurveParams& c, PointCache& cache, const UInt256& d,
                          BytesView msg_hash32);

/// Standard verification via u1*G + u2*Q, two cached-table multiplications.
/// Out-of-range r or s, off-curve keys and mismatches all report as reject,
/// not errors. Plain ECDSA: both (r, s) and (r, n-s) verify.
bool ecdsa_verify(const CurveParams& c, PointCache& cache, const AffinePoint& q,
                  BytesView msg_hash32, const EcdsaSignature& sig);

/// 0x04 || x || y with curve-sized coordinates; parse rejects off-curve
/// points.
Bytes encode_point(const CurveParams& c, const AffinePoint& p);
AffinePoint decode_point(const CurveParams& c, BytesView data);

}  // namespace dtlse
