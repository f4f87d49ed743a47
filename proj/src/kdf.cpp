// dtlse: software model of a reconfigurable DTLS 1.3 cryptographic engine
// Copyright 2026 The dtlse Authors.
// SPDX-License-Identifier: Apache-2.0
#include "dtlse/kdf.hpp"

#include <stdexcept>

#include "dtlse/ledger.hpp"
#include "dtlse/sha256.hpp"

namespace dtlse {

namespace {
const Bytes kZeros32(32, 0);
}

Drbg::Drbg(BytesView seed_material) {
    if (seed_material.empty()) throw std::invalid_argument("DRBG seed material must be non-empty");
    k_.fill(0x00);
    v_.fill(0x01);
    update(seed_material);
}

void Drbg::update(BytesView provided) {
    // K = HMAC(K, V || 0x00 [|| provided]); V = HMAC(K, V); second round only
    // when seed material is present.
    for (uint8_t round = 0; round < 2; ++round) {
        Bytes msg(v_.begin(), v_.end());
        msg.push_back(round);
        append(msg, provided);
        Bytes nk = hmac_sha256(k_, msg);
        std::copy(nk.begin(), nk.end(), k_.begin());
        Bytes nv = hmac_sha256(k_, v_);
        std::copy(nv.begin(), nv.end(), v_.begin());
        if (provided.empty()) break;
    }
}

Bytes Drbg::generate(uint64_t n_bits) {
    if (n_bits > kMaxBitsPerGenerate) throw std::invalid_argument("DRBG request too large");
    if (generate_count_ >= kMaxGenerates) throw std::runtime_error("DRBG reseed required");

    Bytes out;
    size_t n_bytes = static_cast<size_t>((n_bits + 7) / 8);
    while (out.size() < n_bytes) {
        Bytes nv = hmac_sha256(k_, v_);
        std::copy(nv.begin(), nv.end(), v_.begin());
        append(out, nv);
    }
    out.resize(n_bytes);
    if (n_bits % 8 != 0 && n_bytes > 0)
        out[n_bytes - 1] &= static_cast<uint8_t>(0xFF << (8 - n_bits % 8));

    update({});
    ++generate_count_;
    if (CostLedger* l = active_ledger()) l->record_drbg_generate();
    return out;
}

Bytes hkdf_extract(BytesView salt, BytesView ikm) {
    return hmac_sha256(salt.empty() ? BytesView(kZeros32) : salt, ikm);
}

Bytes hkdf_expand(BytesView prk, BytesView info, size_t length) {
    if (length > 255 * 32) throw std::invalid_argument("HKDF output too long");
    Bytes out;
    Bytes t;
    for (uint8_t counter = 1; out.size() < length; ++counter) {
        Bytes msg = t;
        append(msg, info);
        msg.push_back(counter);
        t = hmac_sha256(prk, msg);
        append(out, t);
    }
    out.resize(length);
    return out;
}

Bytes expand_label(BytesView secret, std::string_view label, BytesView context, size_t length) {
    if (label.size() > 249) throw std::invalid_argument("label too long");
    if (context.size() > 255) throw std::invalid_argument("context too long");
    Bytes info;
    put_u16(info, static_cast<uint16_t>(length));
    append(info, to_bytes("tls13"));
    info.push_back(static_cast<uint8_t>(label.size()));
    append(info, to_bytes(label));
    info.push_back(static_cast<uint8_t>(context.size()));
    append(info, context);
    return hkdf_expand(secret, info, length);
}

Bytes derive_secret(BytesView secret, std::string_view label, BytesView transcript_hash) {
    return expand_label(secret, label, transcript_hash, 32);
}

TrafficKeys traffic_keys(BytesView secret) {
    return TrafficKeys{expand_label(secret, labels::kKey, {}, 16),
                       expand_label(secret, labels::kIv, {}, 12)};
}

void KeySchedule::require_at_least(Stage s) const {
    if (static_cast<int>(stage_) < static_cast<int>(s))
        throw std::logic_error("key schedule stage not reached");
}

void KeySchedule::advance_early(BytesView psk) {
    if (stage_ != Stage::Init) throw std::logic_error("early secret already derived");
    early_secret_ = hkdf_extract(kZeros32, psk.empty() ? BytesView(kZeros32) : psk);
    stage_ = Stage::EarlyDone;
}

void KeySchedule::advance_handshake(BytesView ecdhe_shared, BytesView hello_transcript_hash) {
    if (stage_ != Stage::EarlyDone) throw std::logic_error("key schedule stage violation");
    Bytes salt = derive_secret(early_secret_, labels::kDerived, sha256({}));
    handshake_secret_ = hkdf_extract(salt, ecdhe_shared);
    client_hs_ = derive_secret(handshake_secret_, labels::kClientHs, hello_transcript_hash);
    server_hs_ = derive_secret(handshake_secret_, labels::kServerHs, hello_transcript_hash);
    stage_ = Stage::HandshakeDone;
}

void KeySchedule::advance_master(BytesView finished_transcript_hash) {
    if (stage_ != Stage::HandshakeDone) throw std::logic_error("key schedule stage violation");
    Bytes salt = derive_secret(handshake_secret_, labels::kDerived, sha256({}));
    master_secret_ = hkdf_extract(salt, kZeros32);
    client_ap_ = derive_secret(master_secret_, labels::kClientAp, finished_transcript_hash);
    server_ap_ = derive_secret(master_secret_, labels::kServerAp, finished_transcript_hash);
    stage_ = Stage::MasterDone;
}

const Bytes& KeySchedule::early_secret() const {
    require_at_least(Stage::EarlyDone);
    return early_secret_;
}
const Bytes& KeySchedule::handshake_secret() const {
    require_at_least(Stage::HandshakeDone);
    return handshake_secret_;
}
const Bytes& KeySchedule::master_secret() const {
    require_at_least(Stage::MasterDone);
    return master_secret_;
}
const Bytes& KeySchedule::client_hs_traffic() const {
    require_at_least(Stage::HandshakeDone);
    return client_hs_;
}
const Bytes& KeySchedule::server_hs_traffic() const {
    require_at_least(Stage::HandshakeDone);
    return server_hs_;
}
const Bytes& KeySchedule::client_ap_traffic() const {
    require_at_least(Stage::MasterDone);
    return client_ap_;
}
const Bytes& KeySchedule::server_ap_traffic() const {
    require_at_least(Stage::MasterDone);
    return server_ap_;
}

}  // namespace dtlse
