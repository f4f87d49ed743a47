// dtlse: software model of a reconfigurable DTLS 1.3 cryptographic engine
// Copyright 2026 The dtlse Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <map>
#include <optional>

#include "dtlse/cert.hpp"
#include "dtlse/costmodel.hpp"
#include "dtlse/kdf.hpp"
#include "dtlse/transcript.hpp"
#include "dtlse/wire.hpp"

namespace dtlse {

enum class Role { Client, Server };
enum class HsMode { Full, Cached };

/// Everything a session needs provisioned before the first datagram: curve,
/// own static key and certificate, the CA key, and for cached mode the
/// previously validated server certificate information.
struct SessionConfig {
    Role role = Role::Client;
    const CurveParams* curve = nullptr;
    HsMode mode = HsMode::Full;
    double timeout = 1.0;
    int max_retries = 20;
    size_t tag_len = 16;
    Bytes drbg_seed;

    UInt256 static_key;
    AffinePoint static_pub;
    Bytes certificate_der;  // server: sent in-band; client: hashed, never sent
    AffinePoint ca_public_key;

    // Server side: provisioned directory mapping client certificate hashes
    // to their public keys (certificates themselves are never transmitted).
    std::map<Bytes, AffinePoint> client_directory;

    // Client side, cached mode: server certificate information retained from
    // an earlier session, including the warm comb table for its key.
    Bytes cached_server_cert_hash;
    AffinePoint cached_server_pub;
};

/// Fixture provisioning: one CA, one server and one client identity on a
/// given curve, derived deterministically from a seed.
struct Deployment {
    const CurveParams* curve = nullptr;
    UInt256 ca_key;
    AffinePoint ca_pub;
    UInt256 server_key;
    AffinePoint server_pub;
    Bytes server_cert;
    UInt256 client_key;
    AffinePoint client_pub;
    Bytes client_cert;
    Bytes client_cert_hash;

    static Deployment provision(const CurveParams& curve, uint64_t seed);

    SessionConfig client_config(HsMode mode, uint64_t session_seed) const;
    SessionConfig server_config(HsMode mode, uint64_t session_seed) const;
};

/// One endpoint of the handshake engine. Externally driven: all time comes
/// from the caller, datagrams go in and come out as byte vectors, and every
/// state change lands in the event log (JSON lines).
class Session {
  public:
    enum class State {
        Start,
        WaitServerFlight,   // client: sent hello, awaiting the server flight
        WaitClientHello,    // server: idle
        WaitClientFlight2,  // server: sent its flight, awaiting client auth
        Established,
        Failed,
    };

    static const char* state_name(State s);

    explicit Session(SessionConfig cfg);

    /// Client only: emits the first flight.
    std::vector<Bytes> start(double now);

    std::vector<Bytes> handle_datagram(BytesView datagram, double now);

    /// Retransmission timer: re-emits the buffered flight when expired.
    std::vector<Bytes> tick(double now);

    std::vector<Bytes> send_appdata(BytesView data);

    State state() const { return state_; }
    const CostLedger& ledger() const { return ledger_; }
    std::vector<std::string> take_events();
    std::optional<double> next_deadline() const;

    int retransmissions() const { return retransmissions_; }
    const std::vector<Bytes>& transcript_checkpoints() const { return checkpoints_; }
    const std::vector<size_t>& checkpoint_pending_lengths() const { return checkpoint_pending_; }
    const Bytes& client_ap_secret() const { return client_ap_secret_; }
    const Bytes& server_ap_secret() const { return server_ap_secret_; }
    const std::vector<Bytes>& received_appdata() const { return received_appdata_; }

  private:
    struct BufferedMessage {
        wire::HsType type;
        uint16_t message_seq;
        uint16_t epoch;
        Bytes body;
    };

    struct EpochKeys {
        TrafficKeys send;
        TrafficKeys recv;
    };

    struct ReplayWindow {
        uint64_t max_seq = 0;
        uint64_t mask = 0;  // bit i: max_seq - i seen
        bool any = false;
        bool seen_or_mark(uint64_t seq);
    };

    // --- outbound ---
    void queue_message(wire::HsType type, Bytes body, uint16_t epoch);
    std::vector<Bytes> flush_flight(double now, const char* trigger);
    Bytes seal_record(wire::ContentType type, uint16_t epoch, BytesView payload);

    // --- inbound ---
    void process_record(const wire::Record& rec, double now);
    void process_message(const wire::CompleteMessage& msg, double now);
    std::optional<Bytes> open_record(const wire::Record& rec);

    // --- handshake steps ---
    void client_handle_server_hello(const wire::CompleteMessage& msg);
    void client_handle_certificate(const wire::CompleteMessage& msg, double now);
    void client_handle_cert_verify(const wire::CompleteMessage& msg);
    void client_handle_finished(const wire::CompleteMessage& msg, double now);
    void server_handle_client_hello(const wire::CompleteMessage& msg, double now);
    void server_handle_certificate_url(const wire::CompleteMessage& msg);
    void server_handle_cert_verify(const wire::CompleteMessage& msg);
    void server_handle_finished(const wire::CompleteMessage& msg);

    void absorb_message(const wire::CompleteMessage& msg);
    void absorb_own(wire::HsType type, uint16_t message_seq, BytesView body);
    Bytes take_checkpoint();
    void derive_handshake_keys(BytesView shared, BytesView hello_hash);
    void derive_app_keys(BytesView finished_hash);
    Bytes nonce_for(const TrafficKeys& keys, uint16_t epoch, uint64_t seq) const;

    void fail(wire::AlertCode code, const char* why);
    void change_state(State next, double now);
    void log_event(nlohmann::json ev);

    SessionConfig cfg_;
    State state_;
    CostLedger ledger_;
    Drbg drbg_;
    PointCache cache_;
    RunningTranscript transcript_;
    KeySchedule schedule_;
    cert::CertChainPolicy cert_policy_;

    UInt256 ecdhe_secret_;
    Bytes own_finished_key_;
    Bytes peer_finished_key_;
    std::map<uint16_t, EpochKeys> keys_;  // by epoch (1 = handshake, 2 = app)
    std::map<uint16_t, uint64_t> send_seq_;
    std::map<uint16_t, ReplayWindow> replay_;
    uint16_t write_epoch_ = 0;

    wire::Reassembler reassembler_;
    uint16_t next_peer_seq_ = 0;
    uint16_t own_msg_seq_ = 0;
    std::optional<uint16_t> replay_trigger_seq_;

    std::vector<BufferedMessage> flight_;
    std::vector<BufferedMessage> pending_out_;
    int flight_number_ = 0;
    bool timer_armed_ = false;
    double deadline_ = 0;
    int retries_ = 0;
    int retransmissions_ = 0;

    AffinePoint server_pub_;  // learned from the certificate (client side)
    AffinePoint client_pub_;  // looked up from the directory (server side)

    std::vector<Bytes> checkpoints_;
    std::vector<size_t> checkpoint_pending_;
    Bytes client_ap_secret_, server_ap_secret_;
    std::vector<Bytes> received_appdata_;
    std::vector<std::string> events_;
    std::vector<Bytes> out_;
};

}  // namespace dtlse
