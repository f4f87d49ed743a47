// dtlse: software model of a reconfigurable DTLS 1.3 cryptographic engine
// Copyright 2026 The dtlse Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <set>

#include "dtlse/curve.hpp"
#include "dtlse/ecdsa.hpp"

namespace dtlse {
namespace cert {

/// Parse failures, one code per rejection class.
enum class CertError {
    Ok,
    Oversize,
    Truncated,
    BadTag,
    BadLength,
    IndefiniteLength,
    NonCanonical,
    TrailingBytes,
    UnsupportedVersion,
    UnsupportedAlgorithm,
    BadInteger,
    BadBitString,
    BadValidity,
    BadStructure,
    OffCurvePoint,
};

const char* cert_error_name(CertError e);

/// Parsed single-level certificate. Names are opaque byte strings compared
/// bitwise; times are virtual seconds; tbs_bytes is the exact contiguous
/// span the signature covers.
struct Certificate {
    Bytes serial;   // INTEGER content octets
    Bytes issuer;   // UTF8String content octets
    Bytes subject;  // UTF8String content octets
    int64_t not_before = 0;
    int64_t not_after = 0;
    AffinePoint spki_point;
    EcdsaSignature sig;
    Bytes tbs_bytes;
    Bytes der;  // the full accepted encoding
};

struct CertParseResult {
    CertError error = CertError::Ok;
    std::optional<Certificate> cert;
    bool ok() const { return error == CertError::Ok; }
};

/// Strict definite-length DER over a fixed v3 profile:
///   SEQUENCE {
///     tbs: SEQUENCE { [0]{INTEGER 2}, serial INTEGER, sigAlg, issuer
///                     UTF8String, SEQUENCE{INTEGER, INTEGER} validity,
///                     subject UTF8String, SPKI {ecPublicKey, BIT STRING
///                     04||x||y} },
///     sigAlg: SEQUENCE { OID ecdsa-with-SHA256 },
///     BIT STRING { SEQUENCE { INTEGER r, INTEGER s } }
///   }
/// Every accepted input re-encodes to the identical byte string. Inputs are
/// capped at 4 KiB.
CertParseResult parse_certificate(BytesView der, const CurveParams& curve);

struct CertFields {
    uint64_t serial = 1;
    Bytes issuer;
    Bytes subject;
    int64_t not_before = 0;
    int64_t not_after = 0;
    AffinePoint public_key;
};

/// Fixture generator: emits the canonical encoding of the profile above,
/// signed by the CA key with deterministic ECDSA, so output is a pure
/// function of its inputs.
Bytes encode_certificate(const CurveParams& curve, PointCache& cache, const CertFields& fields,
                         const UInt256& ca_signing_key);

enum class ValidateError { Ok, NotYetValid, Expired, BadSignature };

const char* validate_error_name(ValidateError e);

/// Validation policy. In Cached mode a stored hash of a previously validated
/// certificate substitutes for the signature check; the validity window is
/// always enforced against the virtual clock.
struct CertChainPolicy {
    enum class Mode { Full, Cached };

    AffinePoint ca_public_key;
    int64_t clock = 0;
    Mode mode = Mode::Full;
    std::set<Bytes> validated_hashes;  // sha256 of full DER
};

ValidateError validate(const Certificate& c, CertChainPolicy& policy, const CurveParams& curve,
                       PointCache& point_cache);

}  // namespace cert
}  // namespace dtlse
