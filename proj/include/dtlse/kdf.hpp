// dtlse: software model of a reconfigurable DTLS 1.3 cryptographic engine
// Copyright 2026 The dtlse Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <cstdint>
#include <string_view>

#include "dtlse/bytes.hpp"

namespace dtlse {

/// HMAC-DRBG over SHA2-256. The generator is seeded once and never reseeded:
/// at three Generate calls per handshake the 2^48 invocation budget outlives
/// any device. The reseed-required error exists but is reachable only by
/// forcing the counter.
class Drbg {
  public:
    static constexpr uint64_t kMaxGenerates = uint64_t{1} << 48;
    static constexpr uint64_t kMaxBitsPerGenerate = uint64_t{1} << 19;

    /// Instantiate: K = 0x00*32, V = 0x01*32, then the two-round update with
    /// the seed material.
    explicit Drbg(BytesView seed_material);

    /// Returns the leading n_bits of concatenated V iterations, as
    /// ceil(n_bits/8) bytes with unused low bits of the final byte cleared.
    /// K and V advance afterwards.
    Bytes generate(uint64_t n_bits);

    uint64_t generate_count() const { return generate_count_; }
    void force_generate_count(uint64_t n) { generate_count_ = n; }  // test hook

    const std::array<uint8_t, 32>& k() const { return k_; }
    const std::array<uint8_t, 32>& v() const { return v_; }

  private:
    void update(BytesView provided);

    std::array<uint8_t, 32> k_;
    std::array<uint8_t, 32> v_;
    uint64_t generate_count_ = 0;
};

/// PRK = HMAC(salt, ikm); an absent salt stands for 32 zero bytes.
Bytes hkdf_extract(BytesView salt, BytesView ikm);

/// OKM = T(1) || T(2) || ... truncated to length bytes, with
/// T(k) = HMAC(prk, T(k-1) || info || k) and a single-byte counter from 1.
Bytes hkdf_expand(BytesView prk, BytesView info, size_t length);

/// HKDF-Expand with the engine's label framing:
///   info = u16(length) || "tls13" || u8(|label|) || label || u8(|ctx|) || ctx
Bytes expand_label(BytesView secret, std::string_view label, BytesView context, size_t length);

/// expand_label specialized to 32-byte outputs keyed by a transcript hash.
Bytes derive_secret(BytesView secret, std::string_view label, BytesView transcript_hash);

/// The schedule's label strings live here so an alternate set is a one-line
/// swap.
namespace labels {
inline constexpr std::string_view kDerived = "derived";
inline constexpr std::string_view kClientHs = "c hs traffic";
inline constexpr std::string_view kServerHs = "s hs traffic";
inline constexpr std::string_view kClientAp = "c ap traffic";
inline constexpr std::string_view kServerAp = "s ap traffic";
inline constexpr std::string_view kFinished = "finished";
inline constexpr std::string_view kKey = "key";
inline constexpr std::string_view kIv = "iv";
}  // namespace labels

/// AEAD material derived from a traffic secret.
struct TrafficKeys {
    Bytes aead_key;  // 16 bytes
    Bytes aead_iv;   // 12 bytes
};

TrafficKeys traffic_keys(BytesView secret);

/// The three-stage secret ladder. Stages advance monotonically and secrets
/// are readable only once their stage is reached. An absent PSK is a string
/// of zero bits.
class KeySchedule {
  public:
    enum class Stage { Init, EarlyDone, HandshakeDone, MasterDone };

    void advance_early(BytesView psk = {});
    void advance_handshake(BytesView ecdhe_shared, BytesView hello_transcript_hash);
    void advance_master(BytesView finished_transcript_hash);

    Stage stage() const { return stage_; }
    const Bytes& early_secret() const;
    const Bytes& handshake_secret() const;
    const Bytes& master_secret() const;
    const Bytes& client_hs_traffic() const;
    const Bytes& server_hs_traffic() const;
    const Bytes& client_ap_traffic() const;
    const Bytes& server_ap_traffic() const;

  private:
    void require_at_least(Stage s) const;

    Stage stage_ = Stage::Init;
    Bytes early_secret_, handshake_secret_, master_secret_;
    Bytes client_hs_, server_hs_, client_ap_, server_ap_;
};

}  // namespace dtlse
