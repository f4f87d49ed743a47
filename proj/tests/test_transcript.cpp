#include <random>

#include "doctest.h"
#include "dtlse/sha256.hpp"
#include "dtlse/transcript.hpp"

using namespace dtlse;

TEST_CASE("running transcript equals one-shot hash under random chunkings") {
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 1000; ++trial) {
        size_t len = rng() % 600;
        Bytes msg(len);
        for (auto& b : msg) b = static_cast<uint8_t>(rng());

        RunningTranscript rt;
        size_t off = 0;
        while (off < len) {
            size_t chunk = 1 + rng() % 96;
            chunk = std::min(chunk, len - off);
            rt.absorb(BytesView(msg.data() + off, chunk));
            off += chunk;
        }
        CHECK(rt.checkpoint() == sha256(msg));
        CHECK(rt.pending_len() < 64);
    }
}

TEST_CASE("absorbing nothing is a no-op and checkpoints repeat") {
    RunningTranscript rt;
    rt.absorb(to_bytes("client hello bytes"));
    Bytes c1 = rt.checkpoint();
    rt.absorb({});
    Bytes c2 = rt.checkpoint();
    CHECK(c1 == c2);
    CHECK(c1 == sha256(to_bytes("client hello bytes")));
}

TEST_CASE("checkpoint-absorb-checkpoint matches prefix and full hashes") {
    Bytes a = to_bytes("ClientHello");
    Bytes b = to_bytes("ServerHello");
    RunningTranscript rt;
    rt.absorb(a);
    CHECK(rt.checkpoint() == sha256(a));
    rt.absorb(b);
    Bytes both = a;
    append(both, b);
    CHECK(rt.checkpoint() == sha256(both));
}

TEST_CASE("snapshot serialization layout and size budget") {
    RunningTranscript rt;
    rt.absorb(Bytes(64 + 31, 0x7e));  // one block digested, 31 pending
    TranscriptSnapshot snap = rt.snapshot();
    CHECK(snap.pending.size() == 31);
    Bytes wire = snap.serialize();
    CHECK(wire.size() == 41 + 31);
    CHECK(wire.size() <= 96);

    TranscriptSnapshot back = TranscriptSnapshot::deserialize(wire);
    CHECK(back.chain == snap.chain);
    CHECK(back.bit_count == snap.bit_count);
    CHECK(back.pending == snap.pending);

    // Worst case stays within the hard bound.
    RunningTranscript worst;
    worst.absorb(Bytes(63, 1));
    CHECK(worst.snapshot().serialize().size() == 104);
    for (size_t pend = 0; pend <= 55; ++pend) {
        RunningTranscript t;
        t.absorb(Bytes(pend, 2));
        CHECK(t.snapshot().serialize().size() <= 96);
    }
}

TEST_CASE("snapshot restore is lossless under random interleavings") {
    std::mt19937_64 rng(77);
    for (int trial = 0; trial < 300; ++trial) {
        Bytes msg(rng() % 500);
        for (auto& b : msg) b = static_cast<uint8_t>(rng());

        RunningTranscript rt;
        size_t off = 0;
        while (off < msg.size()) {
            size_t chunk = std::min<size_t>(1 + rng() % 80, msg.size() - off);
            rt.absorb(BytesView(msg.data() + off, chunk));
            off += chunk;
            if (rng() % 3 == 0) {
                Bytes wire = rt.snapshot().serialize();
                rt = RunningTranscript::restore(TranscriptSnapshot::deserialize(wire));
            }
        }
        CHECK(rt.checkpoint() == sha256(msg));
    }
}

TEST_CASE("snapshot round trip preserves checkpoint") {
    RunningTranscript rt;
    rt.absorb(to_bytes("some handshake bytes"));
    Bytes direct = rt.checkpoint();
    RunningTranscript back = RunningTranscript::restore(rt.snapshot());
    CHECK(back.checkpoint() == direct);
    CHECK(back.total_bytes() == rt.total_bytes());
}

TEST_CASE("malformed snapshots are rejected") {
    CHECK_THROWS(TranscriptSnapshot::deserialize(Bytes(10, 0)));
    RunningTranscript rt;
    rt.absorb(Bytes(5, 0));
    Bytes wire = rt.snapshot().serialize();
    wire[40] = 60;  // pending length disagrees with payload
    CHECK_THROWS(TranscriptSnapshot::deserialize(wire));
}
