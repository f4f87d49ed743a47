// dtlse: software model of a reconfigurable DTLS 1.3 cryptographic engine
// Copyright 2026 The dtlse Authors.
// SPDX-License-Identifier: Apache-2.0
#include "dtlse/netsim.hpp"

#include "dtlse/config.hpp"

namespace dtlse {
namespace sim {

SimConfig SimConfig::from_text(std::string_view text) {
    auto kv = parse_kv(text);
    SimConfig c;
    auto num = [&](const char* key, double& out) {
        if (auto it = kv.find(key); it != kv.end()) out = std::stod(it->second);
    };
    auto integer = [&](const char* key, auto& out) {
        if (auto it = kv.find(key); it != kv.end())
            out = static_cast<std::decay_t<decltype(out)>>(std::stoull(it->second));
    };
    num("drop_prob", c.drop_prob);
    num("reorder_prob", c.reorder_prob);
    num("duplicate_prob", c.duplicate_prob);
    num("latency", c.latency);
    num("jitter", c.jitter);
    num("timeout", c.timeout);
    num("max_time", c.max_time);
    integer("seed", c.seed);
    integer("deployment_seed", c.deployment_seed);
    integer("max_retries", c.max_retries);
    integer("tag_len", c.tag_len);
    integer("appdata_bytes", c.appdata_bytes);
    if (auto it = kv.find("curve"); it != kv.end()) c.curve = it->second;
    if (auto it = kv.find("mode"); it != kv.end()) {
        if (it->second == "full")
            c.mode = HsMode::Full;
        else if (it->second == "cached")
            c.mode = HsMode::Cached;
        else
            throw std::invalid_argument("mode must be full or cached");
    }
    return c;
}

SimConfig SimConfig::from_file(const std::string& path) { return from_text(read_file(path)); }

nlohmann::json SimReport::summary() const {
    return nlohmann::json{
        {"completed", completed},
        {"duration", duration},
        {"retransmissions", retransmissions},
        {"drops", drops},
        {"duplicates", duplicates},
        {"reorders", reorders},
        {"traffic_secrets_equal", traffic_secrets_equal},
        {"transcripts_equal", transcripts_equal},
        {"max_checkpoint_pending", max_checkpoint_pending},
        {"client_ecsm", client_ledger.ecsm_total()},
        {"server_ecsm", server_ledger.ecsm_total()},
        {"client_comb", client_ledger.comb_total()},
        {"client_drbg_generates", client_ledger.drbg_generates},
        {"client_aes_blocks", client_ledger.aes_blocks},
        {"client_sha_blocks", client_ledger.sha_blocks},
        {"client_cycles", client_ledger.cycles_total()},
        {"server_cycles", server_ledger.cycles_total()},
    };
}

World::World(const SimConfig& cfg) : cfg_(cfg), rng_(cfg.seed) {
    const CurveParams& curve = CurveParams::preset(cfg_.curve);
    Deployment dep = Deployment::provision(curve, cfg_.deployment_seed);

    SessionConfig ccfg = dep.client_config(cfg_.mode, cfg_.seed);
    SessionConfig scfg = dep.server_config(cfg_.mode, cfg_.seed + 0x9e3779b97f4a7c15ULL);
    ccfg.timeout = scfg.timeout = cfg_.timeout;
    ccfg.max_retries = scfg.max_retries = cfg_.max_retries;
    ccfg.tag_len = scfg.tag_len = cfg_.tag_len;
    client_ = std::make_unique<Session>(std::move(ccfg));
    server_ = std::make_unique<Session>(std::move(scfg));

    dispatch_outputs(Role::Client, client_->start(now_));
    drain_events(Role::Client);
    schedule_timer(Role::Client);
}

double World::uniform() {
    // 53-bit mantissa draw; avoids distribution objects so sequences are
    // identical everywhere.
    return static_cast<double>(rng_() >> 11) * 0x1.0p-53;
}

void World::drain_events(Role r) {
    for (std::string& line : session(r).take_events()) report_.event_log.push_back(std::move(line));
}

void World::dispatch_outputs(Role from, std::vector<Bytes> datagrams) {
    Role to = from == Role::Client ? Role::Server : Role::Client;
    const char* to_name = to == Role::Client ? "client" : "server";
    for (Bytes& d : datagrams) {
        report_.datagrams.push_back(d);
        double u_drop = uniform();
        double u_dup = uniform();
        double u_reorder = uniform();
        double jitter = cfg_.jitter > 0 ? uniform() * cfg_.jitter : 0.0;

        if (u_drop < cfg_.drop_prob) {
            ++report_.drops;
            report_.event_log.push_back(nlohmann::json{{"ev", "net_drop"},
                                                       {"at", now_},
                                                       {"to", to_name},
                                                       {"bytes", d.size()}}
                                            .dump());
            continue;
        }
        double delay = cfg_.latency + jitter;
        if (u_reorder < cfg_.reorder_prob) {
            ++report_.reorders;
            delay += 2 * cfg_.latency;  // lands behind the datagrams after it
        }
        if (u_dup < cfg_.duplicate_prob) {
            ++report_.duplicates;
            queue_.push(Event{now_ + delay + cfg_.latency * 0.25, order_++, Event::Kind::Deliver,
                              to, d});
        }
        queue_.push(Event{now_ + delay, order_++, Event::Kind::Deliver, to, std::move(d)});
    }
}

void World::schedule_timer(Role r) {
    if (std::optional<double> deadline = session(r).next_deadline()) {
        queue_.push(Event{*deadline, order_++, Event::Kind::Timer, r, {}});
    }
}

bool World::done() const {
    return (client_->state() == Session::State::Established &&
            server_->state() == Session::State::Established &&
            (cfg_.appdata_bytes == 0 || !server_->received_appdata().empty())) ||
           client_->state() == Session::State::Failed ||
           server_->state() == Session::State::Failed;
}

bool World::step() {
    if (queue_.empty()) return false;
    Event ev = queue_.top();
    queue_.pop();
    if (ev.at > cfg_.max_time) return false;
    now_ = ev.at;

    Session& target = session(ev.target);
    std::vector<Bytes> outputs;
    if (ev.kind == Event::Kind::Deliver) {
        bool was_established = target.state() == Session::State::Established;
        outputs = target.handle_datagram(ev.payload, now_);
        // First time both sides are up, push the configured payload through.
        if (!was_established && !appdata_sent_ && cfg_.appdata_bytes > 0 &&
            client_->state() == Session::State::Established &&
            server_->state() == Session::State::Established) {
            appdata_sent_ = true;
            Bytes payload(cfg_.appdata_bytes);
            for (size_t i = 0; i < payload.size(); ++i) payload[i] = static_cast<uint8_t>(i);
            dispatch_outputs(Role::Client, client_->send_appdata(payload));
            drain_events(Role::Client);
        }
    } else {
        outputs = target.tick(now_);
    }
    dispatch_outputs(ev.target, std::move(outputs));
    drain_events(ev.target);
    schedule_timer(ev.target);
    return true;
}

SimReport World::finish() {
    while (!done() && step()) {
    }
    drain_events(Role::Client);
    drain_events(Role::Server);

    report_.completed = client_->state() == Session::State::Established &&
                        server_->state() == Session::State::Established;
    report_.duration = now_;
    report_.retransmissions = client_->retransmissions() + server_->retransmissions();
    report_.client_ledger = client_->ledger();
    report_.server_ledger = server_->ledger();
    if (report_.completed) {
        report_.traffic_secrets_equal =
            client_->client_ap_secret() == server_->client_ap_secret() &&
            client_->server_ap_secret() == server_->server_ap_secret();
        report_.transcripts_equal =
            client_->transcript_checkpoints() == server_->transcript_checkpoints() &&
            client_->transcript_checkpoints().size() == 6;
        for (size_t pend : client_->checkpoint_pending_lengths())
            report_.max_checkpoint_pending = std::max(report_.max_checkpoint_pending, pend);
    }
    for (const Bytes& chunk : server_->received_appdata())
        append(report_.server_received_appdata, chunk);
    report_.event_log.push_back(report_.summary().dump());
    return report_;
}

SimReport run_handshake(const SimConfig& cfg) {
    World world(cfg);
    return world.finish();
}

}  // namespace sim
}  // namespace dtlse
