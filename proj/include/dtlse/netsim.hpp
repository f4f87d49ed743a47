// dtlse: software model of a reconfigurable DTLS 1.3 cryptographic engine
// Copyright 2026 The dtlse Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <memory>
#include <queue>
#include <random>

#include "dtlse/session.hpp"

namespace dtlse {
namespace sim {

/// Deterministic lossy-datagram scenario. The same seed and config always
/// produce the same event schedule: randomness comes from one engine whose
/// draws happen in a fixed order (drop, duplicate, reorder, then jitter, per
/// datagram sent).
struct SimConfig {
    double drop_prob = 0.0;
    double reorder_prob = 0.0;
    double duplicate_prob = 0.0;
    double latency = 0.05;  // virtual seconds, one way
    double jitter = 0.0;
    uint64_t seed = 1;

    std::string curve = "p256";
    HsMode mode = HsMode::Full;
    double timeout = 1.0;
    int max_retries = 20;
    size_t tag_len = 16;
    uint64_t deployment_seed = 1;
    size_t appdata_bytes = 0;  // client payload sent after the handshake
    double max_time = 600.0;

    static SimConfig from_text(std::string_view text);
    static SimConfig from_file(const std::string& path);
};

struct SimReport {
    bool completed = false;
    double duration = 0;
    int retransmissions = 0;
    int drops = 0;
    int duplicates = 0;
    int reorders = 0;
    bool traffic_secrets_equal = false;
    bool transcripts_equal = false;
    size_t max_checkpoint_pending = 0;
    CostLedger client_ledger;
    CostLedger server_ledger;
    Bytes server_received_appdata;
    std::vector<std::string> event_log;  // JSON lines, deterministic order
    std::vector<Bytes> datagrams;        // every datagram as sent, in order

    nlohmann::json summary() const;
};

/// Drives a client/server pair to completion (or failure) over the simulated
/// channel.
class World {
  public:
    explicit World(const SimConfig& cfg);

    /// Processes the next scheduled event; false when the queue is empty or
    /// the virtual-time guard expired.
    bool step();

    bool done() const;
    double now() const { return now_; }
    SimReport finish();

  private:
    struct Event {
        double at;
        uint64_t order;  // tie-break, assignment order
        enum class Kind { Deliver, Timer } kind;
        Role target;
        Bytes payload;
    };
    struct Later {
        bool operator()(const Event& a, const Event& b) const {
            return a.at != b.at ? a.at > b.at : a.order > b.order;
        }
    };

    Session& session(Role r) { return r == Role::Client ? *client_ : *server_; }
    void dispatch_outputs(Role from, std::vector<Bytes> datagrams);
    void schedule_timer(Role r);
    void drain_events(Role r);
    double uniform();

    SimConfig cfg_;
    std::mt19937_64 rng_;
    std::unique_ptr<Session> client_;
    std::unique_ptr<Session> server_;
    std::priority_queue<Event, std::vector<Event>, Later> queue_;
    uint64_t order_ = 0;
    double now_ = 0;
    bool appdata_sent_ = false;
    SimReport report_;
};

SimReport run_handshake(const SimConfig& cfg);

}  // namespace sim
}  // namespace dtlse
