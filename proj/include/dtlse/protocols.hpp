// dtlse: software model of a reconfigurable DTLS 1.3 cryptographic engine
// Copyright 2026 The dtlse Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "dtlse/ecdsa.hpp"
#include "dtlse/kdf.hpp"

namespace dtlse {
namespace proto {

/// Binary hash tree over byte-string leaves: leaf nodes are the hash of the
/// leaf, parents hash the concatenation of their children, and an odd node at
/// any level is duplicated.
class MerkleTree {
  public:
    explicit MerkleTree(const std::vector<Bytes>& leaves);

    const Bytes& root() const { return levels_.back()[0]; }
    size_t leaf_count() const { return levels_[0].size(); }

    struct ProofStep {
        Bytes sibling;
        bool sibling_on_right;
    };
    std::vector<ProofStep> prove(size_t index) const;

    static bool verify(const Bytes& root, const Bytes& leaf, size_t index,
                       const std::vector<ProofStep>& proof);

  private:
    std::vector<std::vector<Bytes>> levels_;  // level 0 = leaf hashes
};

/// Interactive identification: commitment R = rG, verifier challenge c,
/// response s = r + c x mod n; accepting transcripts satisfy sG = R + cQ.
struct SchnorrTranscript {
    AffinePoint commitment;
    UInt256 challenge;
    UInt256 response;
};

struct SchnorrProver {
    const CurveParams* curve;
    PointCache* cache;
    UInt256 secret;

    AffinePoint commit(Drbg& drbg, UInt256& nonce_out) const;
    UInt256 respond(const UInt256& nonce, const UInt256& challenge) const;
};

UInt256 schnorr_challenge(Drbg& verifier_drbg, const CurveParams& curve);

bool schnorr_verify(const CurveParams& curve, PointCache& cache, const AffinePoint& public_key,
                    const SchnorrTranscript& t);

/// Honest-verifier simulator: samples (c, s) and solves for the commitment.
SchnorrTranscript schnorr_simulate(const CurveParams& curve, PointCache& cache,
                                   const AffinePoint& public_key, Drbg& drbg);

/// Authenticated key agreement from static and ephemeral pairs. The
/// associate value folds the low half of an x-coordinate:
/// assoc(x) = (x mod 2^ceil(f/2)) + 2^ceil(f/2), f = bit length of n.
struct EcmqvParty {
    KeyPair static_pair;
    KeyPair ephemeral_pair;
};

/// Both sides derive the same 32-byte secret (extract with a fixed salt over
/// the shared x-coordinate).
Bytes ecmqv_derive(const CurveParams& curve, PointCache& cache, const EcmqvParty& self,
                   const AffinePoint& peer_static, const AffinePoint& peer_ephemeral);

}  // namespace proto
}  // namespace dtlse
