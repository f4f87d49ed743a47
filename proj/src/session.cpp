// dtlse: software model of a reconfigurable DTLS 1.3 cryptographic engine
// Copyright 2026 The dtlse Authors.
// SPDX-License-Identifier: Apache-2.0
#include "dtlse/session.hpp"

#include "dtlse/errors.hpp"
#include "dtlse/gcm.hpp"
#include "dtlse/sha256.hpp"

namespace dtlse {

using wire::AlertCode;
using wire::ContentType;
using wire::HsType;

namespace {

Bytes seed_with(uint64_t value, std::string_view tag) {
    Bytes seed = to_bytes(tag);
    put_u64(seed, value);
    return seed;
}

constexpr uint16_t kHandshakeEpoch = 1;
constexpr uint16_t kAppEpoch = 2;

}  // namespace

// --- Deployment ---

Deployment Deployment::provision(const CurveParams& curve, uint64_t seed) {
    Deployment d;
    d.curve = &curve;
    Drbg drbg(seed_with(seed, "deployment"));
    PointCache cache;
    cache.install_pinned(curve, curve.generator);

    KeyPair ca = keygen(curve, cache, drbg);
    KeyPair server = keygen(curve, cache, drbg);
    KeyPair client = keygen(curve, cache, drbg);
    d.ca_key = ca.d;
    d.ca_pub = ca.q;
    d.server_key = server.d;
    d.server_pub = server.q;
    d.client_key = client.d;
    d.client_pub = client.q;

    cert::CertFields f;
    f.issuer = to_bytes("dtlse fixture ca");
    f.not_before = 0;
    f.not_after = 1000000000;

    f.serial = 1;
    f.subject = to_bytes("server");
    f.public_key = server.q;
    d.server_cert = cert::encode_certificate(curve, cache, f, ca.d);

    f.serial = 2;
    f.subject = to_bytes("client");
    f.public_key = client.q;
    d.client_cert = cert::encode_certificate(curve, cache, f, ca.d);
    d.client_cert_hash = sha256(d.client_cert);
    return d;
}

SessionConfig Deployment::client_config(HsMode mode, uint64_t session_seed) const {
    SessionConfig cfg;
    cfg.role = Role::Client;
    cfg.curve = curve;
    cfg.mode = mode;
    cfg.drbg_seed = seed_with(session_seed, "client-session");
    cfg.static_key = client_key;
    cfg.static_pub = client_pub;
    cfg.certificate_der = client_cert;
    cfg.ca_public_key = ca_pub;
    if (mode == HsMode::Cached) {
        cfg.cached_server_cert_hash = sha256(server_cert);
        cfg.cached_server_pub = server_pub;
    }
    return cfg;
}

SessionConfig Deployment::server_config(HsMode mode, uint64_t session_seed) const {
    SessionConfig cfg;
    cfg.role = Role::Server;
    cfg.curve = curve;
    cfg.mode = mode;
    cfg.drbg_seed = seed_with(session_seed, "server-session");
    cfg.static_key = server_key;
    cfg.static_pub = server_pub;
    cfg.certificate_der = server_cert;
    cfg.ca_public_key = ca_pub;
    cfg.client_directory[client_cert_hash] = client_pub;
    return cfg;
}

// --- Session ---

const char* Session::state_name(State s) {
    switch (s) {
        case State::Start: return "start";
        case State::WaitServerFlight: return "wait_server_flight";
        case State::WaitClientHello: return "wait_client_hello";
        case State::WaitClientFlight2: return "wait_client_flight2";
        case State::Established: return "established";
        case State::Failed: return "failed";
    }
    return "?";
}

Session::Session(SessionConfig cfg) : cfg_(std::move(cfg)), drbg_(cfg_.drbg_seed) {
    if (cfg_.curve == nullptr) throw std::invalid_argument("session needs a curve");
    state_ = cfg_.role == Role::Client ? State::Start : State::WaitClientHello;

    // Warm cache: generator and CA key combs are amortized device setup, as
    // is the retained server-key comb in cached mode.
    cache_.install_pinned(*cfg_.curve, cfg_.curve->generator);
    cache_.install_pinned(*cfg_.curve, cfg_.ca_public_key);
    cert_policy_.ca_public_key = cfg_.ca_public_key;
    cert_policy_.mode = cfg_.mode == HsMode::Cached ? cert::CertChainPolicy::Mode::Cached
                                                    : cert::CertChainPolicy::Mode::Full;
    if (cfg_.role == Role::Client && cfg_.mode == HsMode::Cached) {
        if (!cfg_.cached_server_pub.is_infinity())
            cache_.install_pinned(*cfg_.curve, cfg_.cached_server_pub);
        if (!cfg_.cached_server_cert_hash.empty())
            cert_policy_.validated_hashes.insert(cfg_.cached_server_cert_hash);
    }
}

void Session::log_event(nlohmann::json ev) {
    ev["side"] = cfg_.role == Role::Client ? "client" : "server";
    events_.push_back(ev.dump());
}

std::vector<std::string> Session::take_events() { return std::exchange(events_, {}); }

void Session::change_state(State next, double now) {
    log_event({{"ev", "state"},
               {"at", now},
               {"from", state_name(state_)},
               {"to", state_name(next)}});
    state_ = next;
}

std::optional<double> Session::next_deadline() const {
    if (!timer_armed_ || state_ == State::Failed) return std::nullopt;
    return deadline_;
}

// --- outbound path ---

Bytes Session::nonce_for(const TrafficKeys& keys, uint16_t epoch, uint64_t seq) const {
    Bytes nonce = keys.aead_iv;
    nonce[4] ^= static_cast<uint8_t>(epoch >> 8);
    nonce[5] ^= static_cast<uint8_t>(epoch);
    for (int i = 0; i < 6; ++i) nonce[6 + i] ^= static_cast<uint8_t>(seq >> (40 - 8 * i));
    return nonce;
}

Bytes Session::seal_record(ContentType type, uint16_t epoch, BytesView payload) {
    if (payload.size() > wire::kMaxRecordPayload)
        throw std::invalid_argument("record payload exceeds the FIFO limit");
    uint64_t seq = send_seq_[epoch]++;
    if (epoch == 0) return wire::encode_record(type, epoch, seq, payload);

    const TrafficKeys& keys = keys_.at(epoch).send;
    wire::RecordHeader header{type, epoch, seq,
                              static_cast<uint16_t>(payload.size() + cfg_.tag_len)};
    Bytes aad = header.encode();
    GcmParams params;
    params.tag_len = cfg_.tag_len;
    auto [ct, tag] = gcm_seal(keys.aead_key, nonce_for(keys, epoch, seq), aad, payload, params);
    Bytes out = aad;
    append(out, ct);
    append(out, tag);
    return out;
}

void Session::queue_message(HsType type, Bytes body, uint16_t epoch) {
    BufferedMessage m{type, own_msg_seq_++, epoch, std::move(body)};
    absorb_own(m.type, m.message_seq, m.body);
    pending_out_.push_back(std::move(m));
}

std::vector<Bytes> Session::flush_flight(double now, const char* trigger) {
    if (!pending_out_.empty()) {
        flight_ = std::move(pending_out_);
        pending_out_.clear();
        ++flight_number_;
        retries_ = 0;
    }
    std::vector<Bytes> datagrams;
    for (const BufferedMessage& m : flight_) {
        for (const wire::Fragment& f : wire::fragment_message(m.type, m.message_seq, m.body)) {
            datagrams.push_back(
                seal_record(ContentType::Handshake, m.epoch, wire::encode_fragment(f)));
        }
    }
    log_event({{"ev", "send_flight"},
               {"at", now},
               {"flight", flight_number_},
               {"datagrams", datagrams.size()},
               {"trigger", trigger}});
    return datagrams;
}

std::vector<Bytes> Session::start(double now) {
    if (cfg_.role != Role::Client || state_ != State::Start)
        throw std::logic_error("start() is the client's first move");
    LedgerScope scope(ledger_);

    Bytes random = drbg_.generate(256);
    ecdhe_secret_ = scalar_from_drbg(drbg_, *cfg_.curve);
    AffinePoint share = ecsm(ecdhe_secret_, cache_.acquire(*cfg_.curve, cfg_.curve->generator),
                             *cfg_.curve);

    wire::HelloBody hello;
    hello.random32 = random;
    hello.group = wire::named_group(*cfg_.curve);
    hello.key_share = encode_point(*cfg_.curve, share);
    queue_message(HsType::ClientHello, wire::encode_hello(hello), 0);

    std::vector<Bytes> out = flush_flight(now, "initial");
    timer_armed_ = true;
    deadline_ = now + cfg_.timeout;
    change_state(State::WaitServerFlight, now);
    return out;
}

std::vector<Bytes> Session::tick(double now) {
    if (state_ == State::Failed || !timer_armed_ || now < deadline_) return {};
    LedgerScope scope(ledger_);
    if (retries_ >= cfg_.max_retries) {
        log_event({{"ev", "timeout"}, {"at", now}, {"retries", retries_}});
        change_state(State::Failed, now);
        timer_armed_ = false;
        return {};
    }
    ++retries_;
    ++retransmissions_;
    log_event({{"ev", "retransmit"}, {"at", now}, {"trigger", "timer"}, {"retries", retries_}});
    deadline_ = now + cfg_.timeout;
    return flush_flight(now, "timer");
}

std::vector<Bytes> Session::send_appdata(BytesView data) {
    if (state_ != State::Established) throw ProtocolError("session is not established");
    LedgerScope scope(ledger_);
    std::vector<Bytes> out;
    size_t off = 0;
    do {
        size_t n = std::min(wire::kMaxRecordPayload, data.size() - off);
        out.push_back(seal_record(ContentType::AppData, kAppEpoch, data.subspan(off, n)));
        off += n;
    } while (off < data.size());
    log_event({{"ev", "appdata_sent"}, {"bytes", data.size()}, {"records", out.size()}});
    return out;
}

// --- inbound path ---

bool Session::ReplayWindow::seen_or_mark(uint64_t seq) {
    if (!any) {
        any = true;
        max_seq = seq;
        mask = 1;
        return false;
    }
    if (seq > max_seq) {
        uint64_t shift = seq - max_seq;
        mask = shift >= 64 ? 0 : mask << shift;
        mask |= 1;
        max_seq = seq;
        return false;
    }
    uint64_t delta = max_seq - seq;
    if (delta >= 64) return true;
    uint64_t bit = uint64_t{1} << delta;
    if (mask & bit) return true;
    mask |= bit;
    return false;
}

std::optional<Bytes> Session::open_record(const wire::Record& rec) {
    if (rec.header.epoch == 0) {
        if (rec.payload.size() > wire::kMaxRecordPayload) return std::nullopt;
        return rec.payload;
    }
    auto keys_it = keys_.find(rec.header.epoch);
    if (keys_it == keys_.end()) {
        log_event({{"ev", "drop_record"}, {"reason", "no_keys"}, {"epoch", rec.header.epoch}});
        return std::nullopt;
    }
    ReplayWindow& window = replay_[rec.header.epoch];
    // Peek without marking: only authenticated records advance the window.
    ReplayWindow probe = window;
    if (probe.seen_or_mark(rec.header.seq)) {
        log_event({{"ev", "drop_record"}, {"reason", "replay"}, {"seq", rec.header.seq}});
        return std::nullopt;
    }

    const TrafficKeys& keys = keys_it->second.recv;
    Bytes aad = rec.header.encode();
    GcmParams params;
    params.tag_len = cfg_.tag_len;
    if (rec.payload.size() < cfg_.tag_len) return std::nullopt;
    BytesView ct(rec.payload.data(), rec.payload.size() - cfg_.tag_len);
    BytesView tag(rec.payload.data() + ct.size(), cfg_.tag_len);
    std::optional<Bytes> pt =
        gcm_open(keys.aead_key, nonce_for(keys, rec.header.epoch, rec.header.seq), aad, ct, tag,
                 params);
    if (!pt) {
        log_event({{"ev", "drop_record"}, {"reason", "bad_tag"}, {"seq", rec.header.seq}});
        return std::nullopt;
    }
    if (pt->size() > wire::kMaxRecordPayload) return std::nullopt;
    window.seen_or_mark(rec.header.seq);
    return pt;
}

std::vector<Bytes> Session::handle_datagram(BytesView datagram, double now) {
    if (state_ == State::Failed) return {};
    LedgerScope scope(ledger_);
    out_.clear();

    size_t consumed = 0;
    std::vector<wire::Record> records = wire::parse_datagram(datagram, consumed);
    if (consumed != datagram.size())
        log_event({{"ev", "drop_bytes"}, {"at", now}, {"bytes", datagram.size() - consumed}});

    for (const wire::Record& rec : records) {
        if (state_ == State::Failed) break;
        process_record(rec, now);
    }
    return std::exchange(out_, {});
}

void Session::process_record(const wire::Record& rec, double now) {
    std::optional<Bytes> payload = open_record(rec);
    if (!payload) return;

    switch (rec.header.type) {
        case ContentType::Alert: {
            auto code = wire::parse_alert(*payload);
            log_event({{"ev", "alert_received"},
                       {"at", now},
                       {"code", code ? static_cast<int>(*code) : -1}});
            change_state(State::Failed, now);
            timer_armed_ = false;
            return;
        }
        case ContentType::AppData: {
            if (state_ != State::Established || rec.header.epoch != kAppEpoch) {
                log_event({{"ev", "drop_record"}, {"reason", "unexpected_appdata"}});
                return;
            }
            received_appdata_.push_back(*payload);
            log_event({{"ev", "appdata_received"}, {"at", now}, {"bytes", payload->size()}});
            return;
        }
        case ContentType::Handshake: break;
    }

    std::optional<wire::Fragment> frag = wire::parse_fragment(*payload);
    if (!frag) {
        log_event({{"ev", "drop_record"}, {"reason", "bad_fragment"}});
        return;
    }
    // Plaintext handshake records are only ever hellos.
    if (rec.header.epoch == 0 && frag->type != HsType::ClientHello &&
        frag->type != HsType::ServerHello) {
        log_event({{"ev", "drop_record"}, {"reason", "plaintext_non_hello"}});
        return;
    }

    switch (reassembler_.feed(*frag)) {
        case wire::Reassembler::Feed::Conflict:
            log_event({{"ev", "drop_record"}, {"reason", "fragment_conflict"}});
            return;
        case wire::Reassembler::Feed::Duplicate:
            log_event({{"ev", "duplicate_message"},
                       {"at", now},
                       {"msg_seq", frag->message_seq},
                       {"type", wire::hs_type_name(frag->type)}});
            // A replayed final message of the peer's previous flight means our
            // answer was lost: replay it.
            if (replay_trigger_seq_ && frag->message_seq == *replay_trigger_seq_ &&
                !flight_.empty()) {
                ++retransmissions_;
                log_event({{"ev", "retransmit"},
                           {"at", now},
                           {"trigger", "peer_replay"},
                           {"retries", retries_}});
                for (Bytes& d : flush_flight(now, "peer_replay")) out_.push_back(std::move(d));
            }
            return;
        case wire::Reassembler::Feed::Progress:
        case wire::Reassembler::Feed::Complete: break;
    }

    while (state_ != State::Failed) {
        std::optional<wire::CompleteMessage> msg = reassembler_.take(next_peer_seq_);
        if (!msg) break;
        reassembler_.mark_processed(next_peer_seq_);
        ++next_peer_seq_;
        process_message(*msg, now);
    }
}

void Session::absorb_message(const wire::CompleteMessage& msg) {
    transcript_.absorb(wire::canonical_message(msg.type, msg.message_seq, msg.body));
}

void Session::absorb_own(HsType type, uint16_t message_seq, BytesView body) {
    transcript_.absorb(wire::canonical_message(type, message_seq, body));
}

Bytes Session::take_checkpoint() {
    Bytes h = transcript_.checkpoint();
    checkpoints_.push_back(h);
    checkpoint_pending_.push_back(transcript_.pending_len());
    return h;
}

void Session::derive_handshake_keys(BytesView shared, BytesView hello_hash) {
    schedule_.advance_early();
    schedule_.advance_handshake(shared, hello_hash);
    const Bytes& client_hs = schedule_.client_hs_traffic();
    const Bytes& server_hs = schedule_.server_hs_traffic();
    bool is_client = cfg_.role == Role::Client;
    keys_[kHandshakeEpoch] = EpochKeys{traffic_keys(is_client ? client_hs : server_hs),
                                       traffic_keys(is_client ? server_hs : client_hs)};
    own_finished_key_ = expand_label(is_client ? client_hs : server_hs, labels::kFinished, {}, 32);
    peer_finished_key_ = expand_label(is_client ? server_hs : client_hs, labels::kFinished, {}, 32);
}

void Session::derive_app_keys(BytesView finished_hash) {
    schedule_.advance_master(finished_hash);
    client_ap_secret_ = schedule_.client_ap_traffic();
    server_ap_secret_ = schedule_.server_ap_traffic();
    bool is_client = cfg_.role == Role::Client;
    keys_[kAppEpoch] = EpochKeys{traffic_keys(is_client ? client_ap_secret_ : server_ap_secret_),
                                 traffic_keys(is_client ? server_ap_secret_ : client_ap_secret_)};
}

void Session::fail(AlertCode code, const char* why) {
    log_event({{"ev", "alert_sent"}, {"code", static_cast<int>(code)}, {"why", why}});
    uint16_t epoch = keys_.empty() ? 0 : keys_.rbegin()->first;
    out_.push_back(seal_record(ContentType::Alert, epoch, wire::encode_alert(code)));
    state_ = State::Failed;
    timer_armed_ = false;
}

void Session::process_message(const wire::CompleteMessage& msg, double now) {
    bool is_client = cfg_.role == Role::Client;
    switch (msg.type) {
        case HsType::ServerHello:
            if (is_client && state_ == State::WaitServerFlight) {
                client_handle_server_hello(msg);
                return;
            }
            break;
        case HsType::EncryptedExtensions:
        case HsType::CertificateRequest:
            if (is_client && state_ == State::WaitServerFlight) {
                absorb_message(msg);
                return;
            }
            break;
        case HsType::Certificate:
            if (is_client && state_ == State::WaitServerFlight) {
                client_handle_certificate(msg, now);
                return;
            }
            break;
        case HsType::CertificateVerify:
            if (is_client && state_ == State::WaitServerFlight) {
                client_handle_cert_verify(msg);
                return;
            }
            if (!is_client && state_ == State::WaitClientFlight2) {
                server_handle_cert_verify(msg);
                return;
            }
            break;
        case HsType::Finished:
            if (is_client && state_ == State::WaitServerFlight) {
                client_handle_finished(msg, now);
                return;
            }
            if (!is_client && state_ == State::WaitClientFlight2) {
                server_handle_finished(msg);
                change_state(State::Established, now);
                return;
            }
            break;
        case HsType::ClientHello:
            if (!is_client && state_ == State::WaitClientHello) {
                server_handle_client_hello(msg, now);
                return;
            }
            break;
        case HsType::CertificateUrl:
            if (!is_client && state_ == State::WaitClientFlight2) {
                server_handle_certificate_url(msg);
                return;
            }
            break;
    }
    if (state_ != State::Failed)
        log_event({{"ev", "drop_message"},
                   {"at", now},
                   {"reason", "unexpected"},
                   {"type", wire::hs_type_name(msg.type)}});
}

// --- client side ---

void Session::client_handle_server_hello(const wire::CompleteMessage& msg) {
    std::optional<wire::HelloBody> hello = wire::parse_hello(msg.body);
    if (!hello || hello->group != wire::named_group(*cfg_.curve)) {
        log_event({{"ev", "drop_message"}, {"reason", "bad_server_hello"}});
        return;
    }
    absorb_message(msg);
    Bytes h1 = take_checkpoint();

    AffinePoint peer_share;
    try {
        peer_share = decode_point(*cfg_.curve, hello->key_share);
    } catch (const CryptoError&) {
        fail(AlertCode::HandshakeFailure, "invalid server key share");
        return;
    }
    Bytes shared = ecdh_derive(*cfg_.curve, cache_, ecdhe_secret_, peer_share);
    derive_handshake_keys(shared, h1);
}

void Session::client_handle_certificate(const wire::CompleteMessage& msg, double now) {
    std::optional<Bytes> der = wire::parse_certificate_body(msg.body);
    if (!der) {
        fail(AlertCode::BadCertificate, "malformed certificate message");
        return;
    }
    cert::CertParseResult parsed = cert::parse_certificate(*der, *cfg_.curve);
    if (!parsed.ok()) {
        fail(AlertCode::BadCertificate, cert::cert_error_name(parsed.error));
        return;
    }
    absorb_message(msg);
    take_checkpoint();  // hash through the certificate, signed by the peer

    cert_policy_.clock = static_cast<int64_t>(now);
    cert::ValidateError v = cert::validate(*parsed.cert, cert_policy_, *cfg_.curve, cache_);
    if (v != cert::ValidateError::Ok) {
        fail(v == cert::ValidateError::BadSignature ? AlertCode::UnknownCa
                                                    : AlertCode::BadCertificate,
             cert::validate_error_name(v));
        return;
    }
    server_pub_ = parsed.cert->spki_point;
}

void Session::client_handle_cert_verify(const wire::CompleteMessage& msg) {
    std::optional<EcdsaSignature> sig = wire::parse_certificate_verify(*cfg_.curve, msg.body);
    if (!sig || server_pub_.is_infinity()) {
        fail(AlertCode::HandshakeFailure, "malformed certificate verify");
        return;
    }
    const Bytes& h2 = checkpoints_.back();
    Bytes digest = sha256(wire::signature_input(true, h2));
    if (!ecdsa_verify(*cfg_.curve, cache_, server_pub_, digest, *sig)) {
        fail(AlertCode::HandshakeFailure, "server certificate verify failed");
        return;
    }
    absorb_message(msg);
    take_checkpoint();  // h3: basis of the server Finished
}

void Session::client_handle_finished(const wire::CompleteMessage& msg, double now) {
    const Bytes& h3 = checkpoints_.back();
    Bytes expect = hmac_sha256(peer_finished_key_, h3);
    if (!ct_equal(expect, msg.body)) {
        fail(AlertCode::HandshakeFailure, "server finished mismatch");
        return;
    }
    absorb_message(msg);
    Bytes h4 = take_checkpoint();
    derive_app_keys(h4);

    // Client authentication flight.
    queue_message(HsType::CertificateUrl, sha256(cfg_.certificate_der), kHandshakeEpoch);
    Bytes h5 = take_checkpoint();

    EcdsaSignature sig = ecdsa_sign(*cfg_.curve, cache_, cfg_.static_key,
                                    sha256(wire::signature_input(false, h5)));
    queue_message(HsType::CertificateVerify, wire::encode_certificate_verify(*cfg_.curve, sig),
                  kHandshakeEpoch);
    Bytes h6 = take_checkpoint();

    queue_message(HsType::Finished, hmac_sha256(own_finished_key_, h6), kHandshakeEpoch);

    for (Bytes& d : flush_flight(now, "response")) out_.push_back(std::move(d));
    timer_armed_ = false;
    replay_trigger_seq_ = msg.message_seq;  // a replayed server Finished re-triggers our flight
    write_epoch_ = kAppEpoch;
    change_state(State::Established, now);
}

// --- server side ---

void Session::server_handle_client_hello(const wire::CompleteMessage& msg, double now) {
    std::optional<wire::HelloBody> hello = wire::parse_hello(msg.body);
    if (!hello || hello->group != wire::named_group(*cfg_.curve)) {
        log_event({{"ev", "drop_message"}, {"reason", "bad_client_hello"}});
        return;
    }
    absorb_message(msg);

    AffinePoint peer_share;
    try {
        peer_share = decode_point(*cfg_.curve, hello->key_share);
    } catch (const CryptoError&) {
        fail(AlertCode::HandshakeFailure, "invalid client key share");
        return;
    }

    Bytes random = drbg_.generate(256);
    ecdhe_secret_ = scalar_from_drbg(drbg_, *cfg_.curve);
    AffinePoint share =
        ecsm(ecdhe_secret_, cache_.acquire(*cfg_.curve, cfg_.curve->generator), *cfg_.curve);

    wire::HelloBody reply;
    reply.random32 = random;
    reply.group = wire::named_group(*cfg_.curve);
    reply.key_share = encode_point(*cfg_.curve, share);
    queue_message(HsType::ServerHello, wire::encode_hello(reply), 0);
    Bytes h1 = take_checkpoint();

    Bytes shared = ecdh_derive(*cfg_.curve, cache_, ecdhe_secret_, peer_share);
    derive_handshake_keys(shared, h1);

    Bytes ee;
    put_u16(ee, 0);  // no extensions
    queue_message(HsType::EncryptedExtensions, std::move(ee), kHandshakeEpoch);

    Bytes cr;
    cr.push_back(0);  // empty request context
    put_u16(cr, 0);
    queue_message(HsType::CertificateRequest, std::move(cr), kHandshakeEpoch);

    queue_message(HsType::Certificate, wire::encode_certificate_body(cfg_.certificate_der),
                  kHandshakeEpoch);
    Bytes h2 = take_checkpoint();

    EcdsaSignature sig = ecdsa_sign(*cfg_.curve, cache_, cfg_.static_key,
                                    sha256(wire::signature_input(true, h2)));
    queue_message(HsType::CertificateVerify, wire::encode_certificate_verify(*cfg_.curve, sig),
                  kHandshakeEpoch);
    Bytes h3 = take_checkpoint();

    queue_message(HsType::Finished, hmac_sha256(own_finished_key_, h3), kHandshakeEpoch);
    Bytes h4 = take_checkpoint();
    derive_app_keys(h4);

    for (Bytes& d : flush_flight(now, "response")) out_.push_back(std::move(d));
    timer_armed_ = true;
    deadline_ = now + cfg_.timeout;
    replay_trigger_seq_ = msg.message_seq;  // a replayed hello re-triggers this flight
    change_state(State::WaitClientFlight2, now);
}

void Session::server_handle_certificate_url(const wire::CompleteMessage& msg) {
    if (msg.body.size() != 32) {
        fail(AlertCode::BadCertificate, "malformed certificate url");
        return;
    }
    auto it = cfg_.client_directory.find(msg.body);
    if (it == cfg_.client_directory.end()) {
        fail(AlertCode::UnknownCa, "client certificate hash not provisioned");
        return;
    }
    client_pub_ = it->second;
    absorb_message(msg);
    take_checkpoint();  // h5: basis of the client signature
}

void Session::server_handle_cert_verify(const wire::CompleteMessage& msg) {
    std::optional<EcdsaSignature> sig = wire::parse_certificate_verify(*cfg_.curve, msg.body);
    if (!sig || client_pub_.is_infinity()) {
        fail(AlertCode::HandshakeFailure, "malformed certificate verify");
        return;
    }
    const Bytes& h5 = checkpoints_.back();
    Bytes digest = sha256(wire::signature_input(false, h5));
    if (!ecdsa_verify(*cfg_.curve, cache_, client_pub_, digest, *sig)) {
        fail(AlertCode::HandshakeFailure, "client certificate verify failed");
        return;
    }
    absorb_message(msg);
    take_checkpoint();  // h6: basis of the client Finished
}

void Session::server_handle_finished(const wire::CompleteMessage& msg) {
    const Bytes& h6 = checkpoints_.back();
    Bytes expect = hmac_sha256(peer_finished_key_, h6);
    if (!ct_equal(expect, msg.body)) {
        fail(AlertCode::HandshakeFailure, "client finished mismatch");
        return;
    }
    absorb_message(msg);
    timer_armed_ = false;
    write_epoch_ = kAppEpoch;
}

}  // namespace dtlse
