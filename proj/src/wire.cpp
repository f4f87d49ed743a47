// dtlse: software model of a reconfigurable DTLS 1.3 cryptographic engine
// Copyright 2026 The dtlse Authors.
// SPDX-License-Identifier: Apache-2.0
#include "dtlse/wire.hpp"

#include <stdexcept>

namespace dtlse {
namespace wire {

const char* hs_type_name(HsType t) {
    switch (t) {
        case HsType::ClientHello: return "client_hello";
        case HsType::ServerHello: return "server_hello";
        case HsType::EncryptedExtensions: return "encrypted_extensions";
        case HsType::Certificate: return "certificate";
        case HsType::CertificateRequest: return "certificate_request";
        case HsType::CertificateVerify: return "certificate_verify";
        case HsType::Finished: return "finished";
        case HsType::CertificateUrl: return "certificate_url";
    }
    return "?";
}

Bytes RecordHeader::encode() const {
    Bytes out;
    out.reserve(kRecordHeaderLen);
    out.push_back(static_cast<uint8_t>(type));
    put_u16(out, kRecordVersion);
    put_u16(out, epoch);
    put_u48(out, seq);
    put_u16(out, length);
    return out;
}

Bytes encode_record(ContentType type, uint16_t epoch, uint64_t seq, BytesView payload) {
    if (payload.size() > 0xFFFF) throw std::invalid_argument("record payload too large");
    RecordHeader h{type, epoch, seq, static_cast<uint16_t>(payload.size())};
    Bytes out = h.encode();
    append(out, payload);
    return out;
}

std::vector<Record> parse_datagram(BytesView datagram, size_t& consumed) {
    std::vector<Record> records;
    size_t pos = 0;
    while (datagram.size() - pos >= kRecordHeaderLen) {
        uint8_t t = datagram[pos];
        if (t != static_cast<uint8_t>(ContentType::Alert) &&
            t != static_cast<uint8_t>(ContentType::Handshake) &&
            t != static_cast<uint8_t>(ContentType::AppData))
            break;
        if (get_u16(datagram, pos + 1) != kRecordVersion) break;
        Record r;
        r.header.type = static_cast<ContentType>(t);
        r.header.epoch = get_u16(datagram, pos + 3);
        r.header.seq = get_u48(datagram, pos + 5);
        r.header.length = get_u16(datagram, pos + 11);
        size_t end = pos + kRecordHeaderLen + r.header.length;
        if (end > datagram.size()) break;
        r.payload.assign(datagram.begin() + pos + kRecordHeaderLen, datagram.begin() + end);
        records.push_back(std::move(r));
        pos = end;
    }
    consumed = pos;
    return records;
}

Bytes encode_fragment(const Fragment& f) {
    Bytes out;
    out.reserve(kHandshakeHeaderLen + f.body.size());
    out.push_back(static_cast<uint8_t>(f.type));
    put_u24(out, f.total_len);
    put_u16(out, f.message_seq);
    put_u24(out, f.frag_offset);
    put_u24(out, static_cast<uint32_t>(f.body.size()));
    append(out, f.body);
    return out;
}

std::optional<Fragment> parse_fragment(BytesView payload) {
    if (payload.size() < kHandshakeHeaderLen) return std::nullopt;
    Fragment f;
    f.type = static_cast<HsType>(payload[0]);
    f.total_len = get_u24(payload, 1);
    f.message_seq = get_u16(payload, 4);
    f.frag_offset = get_u24(payload, 6);
    uint32_t frag_len = get_u24(payload, 9);
    if (payload.size() != kHandshakeHeaderLen + frag_len) return std::nullopt;
    if (f.frag_offset + frag_len > f.total_len) return std::nullopt;
    f.body.assign(payload.begin() + kHandshakeHeaderLen, payload.end());
    return f;
}

std::vector<Fragment> fragment_message(HsType type, uint16_t message_seq, BytesView body) {
    std::vector<Fragment> out;
    size_t off = 0;
    do {
        Fragment f;
        f.type = type;
        f.total_len = static_cast<uint32_t>(body.size());
        f.message_seq = message_seq;
        f.frag_offset = static_cast<uint32_t>(off);
        size_t n = std::min(kMaxFragmentBody, body.size() - off);
        f.body.assign(body.begin() + off, body.begin() + off + n);
        out.push_back(std::move(f));
        off += n;
    } while (off < body.size());
    return out;
}

Bytes canonical_message(HsType type, uint16_t message_seq, BytesView body) {
    Fragment whole;
    whole.type = type;
    whole.total_len = static_cast<uint32_t>(body.size());
    whole.message_seq = message_seq;
    whole.frag_offset = 0;
    whole.body.assign(body.begin(), body.end());
    return encode_fragment(whole);
}

Reassembler::Feed Reassembler::feed(const Fragment& f) {
    for (uint16_t done : processed_) {
        if (done == f.message_seq) return Feed::Duplicate;
    }
    if (completed_.contains(f.message_seq)) return Feed::Duplicate;

    auto [it, fresh] = pending_.try_emplace(f.message_seq);
    Pending& p = it->second;
    if (fresh) {
        p.type = f.type;
        p.body.resize(f.total_len);
        p.have.assign(f.total_len, false);
        p.missing = f.total_len;
    } else if (p.type != f.type || p.body.size() != f.total_len) {
        if (fresh) pending_.erase(it);
        return Feed::Conflict;
    }

    for (size_t i = 0; i < f.body.size(); ++i) {
        size_t at = f.frag_offset + i;
        if (p.have[at]) {
            if (p.body[at] != f.body[i]) return Feed::Conflict;
        } else {
            p.body[at] = f.body[i];
            p.have[at] = true;
            --p.missing;
        }
    }
    if (p.missing != 0) return Feed::Progress;

    completed_.emplace(f.message_seq, CompleteMessage{p.type, f.message_seq, std::move(p.body)});
    pending_.erase(f.message_seq);
    return Feed::Complete;
}

std::optional<CompleteMessage> Reassembler::take(uint16_t message_seq) {
    auto it = completed_.find(message_seq);
    if (it == completed_.end()) return std::nullopt;
    CompleteMessage m = std::move(it->second);
    completed_.erase(it);
    return m;
}

void Reassembler::mark_processed(uint16_t message_seq) { processed_.push_back(message_seq); }

Bytes encode_hello(const HelloBody& h) {
    if (h.random32.size() != 32) throw std::invalid_argument("hello random must be 32 bytes");
    Bytes out;
    put_u16(out, kRecordVersion);
    append(out, h.random32);
    put_u16(out, kCipherSuite);
    put_u16(out, h.group);
    put_u16(out, static_cast<uint16_t>(h.key_share.size()));
    append(out, h.key_share);
    return out;
}

std::optional<HelloBody> parse_hello(BytesView body) {
    if (body.size() < 40) return std::nullopt;
    if (get_u16(body, 0) != kRecordVersion) return std::nullopt;
    HelloBody h;
    h.random32.assign(body.begin() + 2, body.begin() + 34);
    if (get_u16(body, 34) != kCipherSuite) return std::nullopt;
    h.group = get_u16(body, 36);
    uint16_t ks_len = get_u16(body, 38);
    if (body.size() != 40u + ks_len) return std::nullopt;
    h.key_share.assign(body.begin() + 40, body.end());
    return h;
}

Bytes encode_certificate_body(BytesView der) {
    Bytes out;
    out.push_back(0);  // empty certificate-request context
    put_u24(out, static_cast<uint32_t>(der.size() + 3));
    put_u24(out, static_cast<uint32_t>(der.size()));
    append(out, der);
    return out;
}

std::optional<Bytes> parse_certificate_body(BytesView body) {
    if (body.size() < 7) return std::nullopt;
    if (body[0] != 0) return std::nullopt;
    uint32_t list_len = get_u24(body, 1);
    uint32_t cert_len = get_u24(body, 4);
    if (list_len != cert_len + 3) return std::nullopt;
    if (body.size() != 7u + cert_len) return std::nullopt;
    return Bytes(body.begin() + 7, body.end());
}

namespace {
size_t scalar_width(const CurveParams& curve) { return (curve.nt + 7) / 8; }
}  // namespace

Bytes encode_certificate_verify(const CurveParams& curve, const EcdsaSignature& sig) {
    size_t w = scalar_width(curve);
    Bytes out;
    put_u16(out, 0x0403);  // ecdsa with SHA2-256
    put_u16(out, static_cast<uint16_t>(2 * w));
    append(out, sig.r.to_bytes_be(w));
    append(out, sig.s.to_bytes_be(w));
    return out;
}

std::optional<EcdsaSignature> parse_certificate_verify(const CurveParams& curve, BytesView body) {
    size_t w = scalar_width(curve);
    if (body.size() != 4 + 2 * w) return std::nullopt;
    if (get_u16(body, 0) != 0x0403) return std::nullopt;
    if (get_u16(body, 2) != 2 * w) return std::nullopt;
    EcdsaSignature sig;
    sig.r = UInt256::from_bytes_be(body.subspan(4, w));
    sig.s = UInt256::from_bytes_be(body.subspan(4 + w, w));
    return sig;
}

Bytes signature_input(bool server, BytesView transcript_hash) {
    Bytes out(64, 0x20);
    std::string_view ctx = server ? "TLS 1.3, server CertificateVerify"
                                  : "TLS 1.3, client CertificateVerify";
    append(out, to_bytes(ctx));
    out.push_back(0x00);
    append(out, transcript_hash);
    return out;
}

uint16_t named_group(const CurveParams& curve) {
    if (curve.name == "p160") return 16;
    if (curve.name == "p192") return 19;
    if (curve.name == "p224") return 21;
    if (curve.name == "p256") return 23;
    return 0xFF01;  // private use
}

Bytes encode_alert(AlertCode code) {
    return Bytes{2, static_cast<uint8_t>(code)};  // level 2 = fatal
}

std::optional<AlertCode> parse_alert(BytesView body) {
    if (body.size() != 2 || body[0] != 2) return std::nullopt;
    return static_cast<AlertCode>(body[1]);
}

}  // namespace wire
}  // namespace dtlse
