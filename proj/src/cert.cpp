// dtlse: software model of a reconfigurable DTLS 1.3 cryptographic engine
// Copyright 2026 The dtlse Authors.
// SPDX-License-Identifier: Apache-2.0
#include "dtlse/cert.hpp"

#include "dtlse/errors.hpp"
#include "dtlse/sha256.hpp"

namespace dtlse {
namespace cert {

namespace {

constexpr size_t kMaxDer = 4096;
constexpr uint8_t kTagSequence = 0x30;
constexpr uint8_t kTagInteger = 0x02;
constexpr uint8_t kTagBitString = 0x03;
constexpr uint8_t kTagUtf8 = 0x0C;
constexpr uint8_t kTagVersionCtx = 0xA0;

// SEQUENCE { OID 1.2.840.10045.4.3.2 } : ecdsa-with-SHA256
constexpr uint8_t kSigAlg[] = {0x30, 0x0A, 0x06, 0x08, 0x2A, 0x86,
                               0x48, 0xCE, 0x3D, 0x04, 0x03, 0x02};
// SEQUENCE { OID 1.2.840.10045.2.1 } : ecPublicKey
constexpr uint8_t kSpkiAlg[] = {0x30, 0x09, 0x06, 0x07, 0x2A, 0x86, 0x48, 0xCE, 0x3D, 0x02, 0x01};

struct Cursor {
    BytesView data;
    size_t pos = 0;
    CertError err = CertError::Ok;

    bool fail(CertError e) {
        if (err == CertError::Ok) err = e;
        return false;
    }
    size_t remaining() const { return data.size() - pos; }

    /// Reads tag+length of the next element; on success positions the cursor
    /// at the content and reports its length. DER only: definite, minimal.
    bool header(uint8_t expected_tag, size_t& content_len) {
        if (remaining() < 2) return fail(CertError::Truncated);
        if (data[pos] != expected_tag) return fail(CertError::BadTag);
        uint8_t first = data[pos + 1];
        size_t header_len = 2;
        if (first < 0x80) {
            content_len = first;
        } else if (first == 0x80) {
            return fail(CertError::IndefiniteLength);
        } else if (first == 0x81) {
            if (remaining() < 3) return fail(CertError::Truncated);
            content_len = data[pos + 2];
            if (content_len < 0x80) return fail(CertError::NonCanonical);
            header_len = 3;
        } else if (first == 0x82) {
            if (remaining() < 4) return fail(CertError::Truncated);
            content_len = static_cast<size_t>(data[pos + 2]) << 8 | data[pos + 3];
            if (content_len < 0x100) return fail(CertError::NonCanonical);
            header_len = 4;
        } else {
            return fail(CertError::NonCanonical);  // longer forms cannot occur under 4 KiB
        }
        if (remaining() < header_len + content_len) return fail(CertError::BadLength);
        pos += header_len;
        return true;
    }

    bool bytes(size_t n, BytesView& out) {
        if (remaining() < n) return fail(CertError::Truncated);
        out = data.subspan(pos, n);
        pos += n;
        return true;
    }

    bool literal(BytesView expect, CertError on_mismatch) {
        BytesView got;
        if (!bytes(expect.size(), got)) return false;
        for (size_t i = 0; i < expect.size(); ++i) {
            if (got[i] != expect[i]) return fail(on_mismatch);
        }
        return true;
    }
};

/// Non-negative INTEGER with minimal content encoding.
bool read_integer(Cursor& cur, Bytes& content) {
    size_t len;
    if (!cur.header(kTagInteger, len)) return false;
    if (len == 0) return cur.fail(CertError::BadInteger);
    BytesView raw;
    if (!cur.bytes(len, raw)) return false;
    if (raw[0] & 0x80) return cur.fail(CertError::BadInteger);  // profile is unsigned-only
    if (len > 1 && raw[0] == 0x00 && !(raw[1] & 0x80)) return cur.fail(CertError::BadInteger);
    content.assign(raw.begin(), raw.end());
    return true;
}

bool integer_to_i64(const Bytes& content, int64_t& out) {
    Bytes sig = content;
    if (!sig.empty() && sig[0] == 0x00) sig.erase(sig.begin());
    if (sig.size() > 8) return false;
    uint64_t v = 0;
    for (uint8_t b : sig) v = v << 8 | b;
    if (v > static_cast<uint64_t>(INT64_MAX)) return false;
    out = static_cast<int64_t>(v);
    return true;
}

bool integer_to_u256(const Bytes& content, UInt256& out) {
    Bytes sig = content;
    if (!sig.empty() && sig[0] == 0x00) sig.erase(sig.begin());
    if (sig.size() > 32) return false;
    out = UInt256::from_bytes_be(sig);
    return true;
}

bool read_utf8(Cursor& cur, Bytes& content) {
    size_t len;
    if (!cur.header(kTagUtf8, len)) return false;
    BytesView raw;
    if (!cur.bytes(len, raw)) return false;
    content.assign(raw.begin(), raw.end());
    return true;
}

// --- canonical writer ---

void write_len(Bytes& out, size_t len) {
    if (len < 0x80) {
        out.push_back(static_cast<uint8_t>(len));
    } else if (len < 0x100) {
        out.push_back(0x81);
        out.push_back(static_cast<uint8_t>(len));
    } else {
        out.push_back(0x82);
        out.push_back(static_cast<uint8_t>(len >> 8));
        out.push_back(static_cast<uint8_t>(len));
    }
}

Bytes der_tlv(uint8_t tag, BytesView content) {
    Bytes out;
    out.push_back(tag);
    write_len(out, content.size());
    append(out, content);
    return out;
}

Bytes der_integer_content(BytesView minimal) {
    // Re-wraps already-minimal content octets.
    return der_tlv(kTagInteger, minimal);
}

Bytes der_integer_u64(uint64_t v) {
    Bytes content;
    for (int s = 56; s >= 0; s -= 8) {
        uint8_t b = static_cast<uint8_t>(v >> s);
        if (content.empty() && b == 0 && s != 0) continue;
        content.push_back(b);
    }
    if (content[0] & 0x80) content.insert(content.begin(), 0x00);
    return der_tlv(kTagInteger, content);
}

Bytes der_integer_u256(const UInt256& v) {
    Bytes content = v.to_bytes_be((v.bit_length() + 7) / 8);
    if (content.empty()) content.push_back(0);
    if (content[0] & 0x80) content.insert(content.begin(), 0x00);
    return der_tlv(kTagInteger, content);
}

Bytes encode_tbs(const CurveParams& curve, BytesView serial_content, BytesView issuer,
                 BytesView subject, int64_t not_before, int64_t not_after,
                 const AffinePoint& public_key) {
    Bytes tbs_content;
    append(tbs_content, der_tlv(kTagVersionCtx, der_integer_u64(2)));
    append(tbs_content, der_integer_content(serial_content));
    append(tbs_content, BytesView(kSigAlg, sizeof(kSigAlg)));
    append(tbs_content, der_tlv(kTagUtf8, issuer));
    Bytes validity;
    append(validity, der_integer_u64(static_cast<uint64_t>(not_before)));
    append(validity, der_integer_u64(static_cast<uint64_t>(not_after)));
    append(tbs_content, der_tlv(kTagSequence, validity));
    append(tbs_content, der_tlv(kTagUtf8, subject));

    Bytes spki_content(kSpkiAlg, kSpkiAlg + sizeof(kSpkiAlg));
    Bytes point_bits;
    point_bits.push_back(0x00);  // no unused bits
    append(point_bits, encode_point(curve, public_key));
    append(spki_content, der_tlv(kTagBitString, point_bits));
    append(tbs_content, der_tlv(kTagSequence, spki_content));

    return der_tlv(kTagSequence, tbs_content);
}

Bytes encode_signature_bits(const EcdsaSignature& sig) {
    Bytes seq_content;
    append(seq_content, der_integer_u256(sig.r));
    append(seq_content, der_integer_u256(sig.s));
    Bytes bits;
    bits.push_back(0x00);
    append(bits, der_tlv(kTagSequence, seq_content));
    return der_tlv(kTagBitString, bits);
}

}  // namespace

const char* cert_error_name(CertError e) {
    switch (e) {
        case CertError::Ok: return "ok";
        case CertError::Oversize: return "oversize";
        case CertError::Truncated: return "truncated";
        case CertError::BadTag: return "bad-tag";
        case CertError::BadLength: return "bad-length";
        case CertError::IndefiniteLength: return "indefinite-length";
        case CertError::NonCanonical: return "non-canonical";
        case CertError::TrailingBytes: return "trailing-bytes";
        case CertError::UnsupportedVersion: return "unsupported-version";
        case CertError::UnsupportedAlgorithm: return "unsupported-algorithm";
        case CertError::BadInteger: return "bad-integer";
        case CertError::BadBitString: return "bad-bit-string";
        case CertError::BadValidity: return "bad-validity";
        case CertError::BadStructure: return "bad-structure";
        case CertError::OffCurvePoint: return "off-curve-point";
    }
    return "?";
}

const char* validate_error_name(ValidateError e) {
    switch (e) {
        case ValidateError::Ok: return "ok";
        case ValidateError::NotYetValid: return "not-yet-valid";
        case ValidateError::Expired: return "expired";
        case ValidateError::BadSignature: return "bad-signature";
    }
    return "?";
}

CertParseResult parse_certificate(BytesView der, const CurveParams& curve) {
    CertParseResult result;
    auto reject = [&](CertError e) {
        result.error = e;
        return result;
    };
    if (der.size() > kMaxDer) return reject(CertError::Oversize);
    if (der.empty()) return reject(CertError::Truncated);

    Cursor cur{der};
    Certificate c;

    size_t outer_len;
    if (!cur.header(kTagSequence, outer_len)) return reject(cur.err);
    if (cur.pos + outer_len != der.size()) return reject(CertError::TrailingBytes);

    // --- tbsCertificate ---
    size_t tbs_start = cur.pos;
    size_t tbs_len;
    if (!cur.header(kTagSequence, tbs_len)) return reject(cur.err);
    size_t tbs_hdr = cur.pos - tbs_start;
    size_t tbs_end = cur.pos + tbs_len;
    c.tbs_bytes.assign(der.begin() + tbs_start, der.begin() + tbs_hdr + tbs_start + tbs_len);

    // [0] EXPLICIT version = v3
    size_t ver_len;
    if (!cur.header(kTagVersionCtx, ver_len)) return reject(cur.err);
    size_t ver_end = cur.pos + ver_len;
    Bytes version;
    if (!read_integer(cur, version)) return reject(cur.err);
    if (cur.pos != ver_end) return reject(CertError::TrailingBytes);
    if (version != Bytes{0x02}) return reject(CertError::UnsupportedVersion);

    if (!read_integer(cur, c.serial)) return reject(cur.err);
    if (!cur.literal(BytesView(kSigAlg, sizeof(kSigAlg)), CertError::UnsupportedAlgorithm))
        return reject(cur.err);
    if (!read_utf8(cur, c.issuer)) return reject(cur.err);

    size_t validity_len;
    if (!cur.header(kTagSequence, validity_len)) return reject(cur.err);
    size_t validity_end = cur.pos + validity_len;
    Bytes nb, na;
    if (!read_integer(cur, nb) || !read_integer(cur, na)) return reject(cur.err);
    if (cur.pos != validity_end) return reject(CertError::TrailingBytes);
    if (!integer_to_i64(nb, c.not_before) || !integer_to_i64(na, c.not_after))
        return reject(CertError::BadValidity);
    if (c.not_before > c.not_after) return reject(CertError::BadValidity);

    if (!read_utf8(cur, c.subject)) return reject(cur.err);

    size_t spki_len;
    if (!cur.header(kTagSequence, spki_len)) return reject(cur.err);
    size_t spki_end = cur.pos + spki_len;
    if (!cur.literal(BytesView(kSpkiAlg, sizeof(kSpkiAlg)), CertError::UnsupportedAlgorithm))
        return reject(cur.err);
    size_t bits_len;
    if (!cur.header(kTagBitString, bits_len)) return reject(cur.err);
    if (bits_len < 2) return reject(CertError::BadBitString);
    BytesView bits;
    if (!cur.bytes(bits_len, bits)) return reject(cur.err);
    if (bits[0] != 0x00) return reject(CertError::BadBitString);
    try {
        c.spki_point = decode_point(curve, bits.subspan(1));
    } catch (const CryptoError&) {
        return reject(CertError::OffCurvePoint);
    }
    if (cur.pos != spki_end) return reject(CertError::TrailingBytes);
    if (cur.pos != tbs_end) return reject(CertError::TrailingBytes);

    // --- signatureAlgorithm ---
    if (!cur.literal(BytesView(kSigAlg, sizeof(kSigAlg)), CertError::UnsupportedAlgorithm))
        return reject(cur.err);

    // --- signature BIT STRING { SEQUENCE { r, s } } ---
    size_t sig_bits_len;
    if (!cur.header(kTagBitString, sig_bits_len)) return reject(cur.err);
    size_t sig_bits_end = cur.pos + sig_bits_len;
    BytesView unused;
    if (!cur.bytes(1, unused)) return reject(cur.err);
    if (unused[0] != 0x00) return reject(CertError::BadBitString);
    size_t rs_len;
    if (!cur.header(kTagSequence, rs_len)) return reject(cur.err);
    size_t rs_end = cur.pos + rs_len;
    Bytes r_bytes, s_bytes;
    if (!read_integer(cur, r_bytes) || !read_integer(cur, s_bytes)) return reject(cur.err);
    if (cur.pos != rs_end || cur.pos != sig_bits_end) return reject(CertError::TrailingBytes);
    if (!integer_to_u256(r_bytes, c.sig.r) || !integer_to_u256(s_bytes, c.sig.s))
        return reject(CertError::BadInteger);

    if (cur.pos != der.size()) return reject(CertError::TrailingBytes);

    c.der.assign(der.begin(), der.end());
    result.cert = std::move(c);
    return result;
}

Bytes encode_certificate(const CurveParams& curve, PointCache& cache, const CertFields& fields,
                         const UInt256& ca_signing_key) {
    if (fields.not_before > fields.not_after) throw std::invalid_argument("inverted validity");
    Bytes serial_tlv = der_integer_u64(fields.serial);
    Bytes serial_content(serial_tlv.begin() + 2, serial_tlv.end());

    Bytes tbs = encode_tbs(curve, serial_content, fields.issuer, fields.subject, fields.not_before,
                           fields.not_after, fields.public_key);
    EcdsaSignature sig = ecdsa_sign(curve, cache, ca_signing_key, sha256(tbs));

    Bytes content = tbs;
    append(content, BytesView(kSigAlg, sizeof(kSigAlg)));
    append(content, encode_signature_bits(sig));
    return der_tlv(kTagSequence, content);
}

ValidateError validate(const Certificate& c, CertChainPolicy& policy, const CurveParams& curve,
                       PointCache& point_cache) {
    if (policy.clock < c.not_before) return ValidateError::NotYetValid;
    if (policy.clock > c.not_after) return ValidateError::Expired;

    if (policy.mode == CertChainPolicy::Mode::Cached) {
        Bytes hash = sha256(c.der);
        if (policy.validated_hashes.contains(hash)) return ValidateError::Ok;
        if (!ecdsa_verify(curve, point_cache, policy.ca_public_key, sha256(c.tbs_bytes), c.sig))
            return ValidateError::BadSignature;
        policy.validated_hashes.insert(std::move(hash));
        return ValidateError::Ok;
    }

    if (!ecdsa_verify(curve, point_cache, policy.ca_public_key, sha256(c.tbs_bytes), c.sig))
        return ValidateError::BadSignature;
    return ValidateError::Ok;
}

}  // namespace cert
}  // namespace dtlse
