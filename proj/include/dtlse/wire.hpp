// dtlse: software model of a reconfigurable DTLS 1.3 cryptographic engine
// Copyright 2026 The dtlse Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <map>
#include <optional>

#include "dtlse/bytes.hpp"
#include "dtlse/curve.hpp"
#include "dtlse/ecdsa.hpp"

namespace dtlse {
namespace wire {

enum class ContentType : uint8_t {
    Alert = 21,
    Handshake = 22,
    AppData = 23,
};

enum class HsType : uint8_t {
    ClientHello = 1,
    ServerHello = 2,
    EncryptedExtensions = 8,
    Certificate = 11,
    CertificateRequest = 13,
    CertificateVerify = 15,
    Finished = 20,
    CertificateUrl = 21,
};

const char* hs_type_name(HsType t);

inline constexpr uint16_t kRecordVersion = 0xFEFD;
inline constexpr uint16_t kCipherSuite = 0x1301;  // ECDHE/ECDSA AES-128-GCM SHA-256
inline constexpr size_t kRecordHeaderLen = 13;
inline constexpr size_t kHandshakeHeaderLen = 12;
/// Record plaintext cap imposed by the engine's 256-byte packet FIFOs.
inline constexpr size_t kMaxRecordPayload = 256;
inline constexpr size_t kMaxFragmentBody = kMaxRecordPayload - kHandshakeHeaderLen;

/// 13-byte record header: type, version, epoch, 48-bit sequence, length.
struct RecordHeader {
    ContentType type = ContentType::Handshake;
    uint16_t epoch = 0;
    uint64_t seq = 0;  // 48-bit
    uint16_t length = 0;

    Bytes encode() const;
};

struct Record {
    RecordHeader header;
    Bytes payload;
};

Bytes encode_record(ContentType type, uint16_t epoch, uint64_t seq, BytesView payload);

/// Parses consecutive records out of one datagram; stops at the first
/// malformed header and reports how many bytes were consumed cleanly.
std::vector<Record> parse_datagram(BytesView datagram, size_t& consumed);

/// 12-byte handshake header: type, 24-bit total length, 16-bit message
/// sequence, 24-bit fragment offset, 24-bit fragment length.
struct Fragment {
    HsType type = HsType::ClientHello;
    uint32_t total_len = 0;
    uint16_t message_seq = 0;
    uint32_t frag_offset = 0;
    Bytes body;  // frag_len bytes
};

/// One fragment per record payload, exact fit required.
Bytes encode_fragment(const Fragment& f);
std::optional<Fragment> parse_fragment(BytesView payload);

/// Splits a message body into fragments that respect the record cap.
std::vector<Fragment> fragment_message(HsType type, uint16_t message_seq, BytesView body);

/// The as-if-unfragmented byte image absorbed into the session transcript:
/// the 12-byte header with offset 0 and fragment length equal to the total,
/// followed by the whole body.
Bytes canonical_message(HsType type, uint16_t message_seq, BytesView body);

struct CompleteMessage {
    HsType type;
    uint16_t message_seq;
    Bytes body;
};

/// Fragment reassembly keyed by message sequence. Duplicate bytes must agree
/// with what was already received; conflicting overlaps are dropped.
class Reassembler {
  public:
    enum class Feed { Progress, Complete, Duplicate, Conflict };

    Feed feed(const Fragment& f);

    /// Completed-but-unprocessed message with the given sequence, if any.
    std::optional<CompleteMessage> take(uint16_t message_seq);

    /// Marks a sequence processed so later copies report Duplicate.
    void mark_processed(uint16_t message_seq);

  private:
    struct Pending {
        HsType type;
        Bytes body;
        std::vector<bool> have;
        size_t missing = 0;
        bool complete = false;
    };
    std::map<uint16_t, Pending> pending_;
    std::map<uint16_t, CompleteMessage> completed_;
    std::vector<uint16_t> processed_;
};

// --- message bodies ---

struct HelloBody {
    Bytes random32;
    uint16_t group = 0;
    Bytes key_share;  // 04 || x || y
};

Bytes encode_hello(const HelloBody& h);
std::optional<HelloBody> parse_hello(BytesView body);

Bytes encode_certificate_body(BytesView der);
std::optional<Bytes> parse_certificate_body(BytesView body);

Bytes encode_certificate_verify(const CurveParams& curve, const EcdsaSignature& sig);
std::optional<EcdsaSignature> parse_certificate_verify(const CurveParams& curve, BytesView body);

/// 64 spaces, a role-specific context string, a NUL, then the transcript
/// hash; the signature covers the SHA2-256 of this image.
Bytes signature_input(bool server, BytesView transcript_hash);

/// TLS registry ids for the bundled presets; private-range id otherwise.
uint16_t named_group(const CurveParams& curve);

enum class AlertCode : uint8_t {
    UnexpectedMessage = 10,
    HandshakeFailure = 40,
    BadCertificate = 42,
    UnknownCa = 48,
    DecryptError = 51,
};

Bytes encode_alert(AlertCode code);                    // fatal level only
std::optional<AlertCode> parse_alert(BytesView body);

}  // namespace wire
}  // namespace dtlse
