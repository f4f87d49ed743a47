// dtlse: software model of a reconfigurable DTLS 1.3 cryptographic engine
// Copyright 2026 The dtlse Authors.
// SPDX-License-Identifier: Apache-2.0
#include "dtlse/sha256.hpp"

#include <bit>
#include <cstring>
#include <stdexcept>

#include "dtlse/ledger.hpp"

namespace dtlse {

namespace {

constexpr std::array<uint32_t, 8> kInit = {0x6a09e667, 0xbb67ae85, 0x3c6ef372, 0xa54ff53a,
                                           0x510e527f, 0x9b05688c, 0x1f83d9ab, 0x5be0cd19};

constexpr uint32_t kRound[64] = {
    0x428a2f98, 0x71374491, 0xb5c0fbcf, 0xe9b5dba5, 0x3956c25b, 0x59f111f1, 0x923f82a4,
    0xab1c5ed5, 0xd807aa98, 0x12835b01, 0x243185be, 0x550c7dc3, 0x72be5d74, 0x80deb1fe,
    0x9bdc06a7, 0xc19bf174, 0xe49b69c1, 0xefbe4786, 0x0fc19dc6, 0x240ca1cc, 0x2de92c6f,
    0x4a7484aa, 0x5cb0a9dc, 0x76f988da, 0x983e5152, 0xa831c66d, 0xb00327c8, 0xbf597fc7,
    0xc6e00bf3, 0xd5a79147, 0x06ca6351, 0x14292967, 0x27b70a85, 0x2e1b2138, 0x4d2c6dfc,
    0x53380d13, 0x650a7354, 0x766a0abb, 0x81c2c92e, 0x92722c85, 0xa2bfe8a1, 0xa81a664b,
    0xc24b8b70, 0xc76c51a3, 0xd192e819, 0xd6990624, 0xf40e3585, 0x106aa070, 0x19a4c116,
    0x1e376c08, 0x2748774c, 0x34b0bcb5, 0x391c0cb3, 0x4ed8aa4a, 0x5b9cca4f, 0x682e6ff3,
    0x748f82ee, 0x78a5636f, 0x84c87814, 0x8cc70208, 0x90befffa, 0xa4506ceb, 0xbef9a3f7,
    0xc67178f2};

uint32_t big_sigma0(uint32_t x) { return std::rotr(x, 2) ^ std::rotr(x, 13) ^ std::rotr(x, 22); }
uint32_t big_sigma1(uint32_t x) { return std::rotr(x, 6) ^ std::rotr(x, 11) ^ std::rotr(x, 25); }
uint32_t small_sigma0(uint32_t x) { return std::rotr(x, 7) ^ std::rotr(x, 18) ^ (x >> 3); }
uint32_t small_sigma1(uint32_t x) { return std::rotr(x, 17) ^ std::rotr(x, 19) ^ (x >> 10); }
uint32_t ch(uint32_t x, uint32_t y, uint32_t z) { return (x & y) ^ (~x & z); }
uint32_t maj(uint32_t x, uint32_t y, uint32_t z) { return (x & y) ^ (x & z) ^ (y & z); }

}  // namespace

Sha256State::Sha256State() : h_(kInit) {}

void Sha256State::compress(const uint8_t* block) {
    uint32_t w[64];
    for (int i = 0; i < 16; ++i) {
        w[i] = static_cast<uint32_t>(block[4 * i]) << 24 |
               static_cast<uint32_t>(block[4 * i + 1]) << 16 |
               static_cast<uint32_t>(block[4 * i + 2]) << 8 | block[4 * i + 3];
    }
    for (int i = 16; i < 64; ++i)
        w[i] = small_sigma1(w[i - 2]) + w[i - 7] + small_sigma0(w[i - 15]) + w[i - 16];

    uint32_t a = h_[0], b = h_[1], c = h_[2], d = h_[3];
    uint32_t e = h_[4], f = h_[5], g = h_[6], h = h_[7];
    for (int i = 0; i < 64; ++i) {
        uint32_t t1 = h + big_sigma1(e) + ch(e, f, g) + kRound[i] + w[i];
        uint32_t t2 = big_sigma0(a) + maj(a, b, c);
        h = g;
        g = f;
        f = e;
        e = d + t1;
        d = c;
        c = b;
        b = a;
        a = t1 + t2;
    }
    h_[0] += a;
    h_[1] += b;
    h_[2] += c;
    h_[3] += d;
    h_[4] += e;
    h_[5] += f;
    h_[6] += g;
    h_[7] += h;

    if (CostLedger* l = active_ledger()) l->record_sha_block();
}

void Sha256State::absorb(BytesView data) {
    bits_ += static_cast<uint64_t>(data.size()) * 8;
    size_t off = 0;
    if (buf_len_ != 0) {
        size_t take = std::min(data.size(), 64 - buf_len_);
        std::memcpy(buf_.data() + buf_len_, data.data(), take);
        buf_len_ += take;
        off = take;
        if (buf_len_ == 64) {
            compress(buf_.data());
            buf_len_ = 0;
        }
    }
    while (off + 64 <= data.size()) {
        compress(data.data() + off);
        off += 64;
    }
    if (off < data.size()) {
        buf_len_ = data.size() - off;
        std::memcpy(buf_.data(), data.data() + off, buf_len_);
    }
}

std::array<uint8_t, 32> Sha256State::finalize() const {
    Sha256State copy = *this;
    uint64_t msg_bits = copy.bits_;
    uint8_t pad[72] = {0x80};
    size_t pad_len = 1 + (119 - copy.buf_len_) % 64;  // up to the final 8-byte length
    Bytes tail(pad, pad + pad_len);
    for (int s = 56; s >= 0; s -= 8) tail.push_back(static_cast<uint8_t>(msg_bits >> s));
    copy.absorb(tail);

    std::array<uint8_t, 32> digest;
    for (int i = 0; i < 8; ++i) {
        digest[4 * i] = static_cast<uint8_t>(copy.h_[i] >> 24);
        digest[4 * i + 1] = static_cast<uint8_t>(copy.h_[i] >> 16);
        digest[4 * i + 2] = static_cast<uint8_t>(copy.h_[i] >> 8);
        digest[4 * i + 3] = static_cast<uint8_t>(copy.h_[i]);
    }
    return digest;
}

Sha256State Sha256State::restore(const std::array<uint32_t, 8>& chain, uint64_t bit_count,
                                 BytesView pending) {
    if (bit_count % 8 != 0 || pending.size() > 63 || (bit_count / 8) % 64 != pending.size())
        throw std::invalid_argument("inconsistent hash state");
    Sha256State s;
    s.h_ = chain;
    s.bits_ = bit_count;
    s.buf_len_ = pending.size();
    std::memcpy(s.buf_.data(), pending.data(), pending.size());
    return s;
}

Bytes sha256(BytesView msg) {
    Sha256State s;
    s.absorb(msg);
    auto d = s.finalize();
    return Bytes(d.begin(), d.end());
}

Bytes hmac_sha256(BytesView key, BytesView msg) {
    Bytes k(key.begin(), key.end());
    if (k.size() > 64) k = sha256(k);
    k.resize(64, 0);

    Bytes inner_pad(64), outer_pad(64);
    for (int i = 0; i < 64; ++i) {
        inner_pad[i] = k[i] ^ 0x36;
        outer_pad[i] = k[i] ^ 0x5C;
    }

    Sha256State inner;
    inner.absorb(inner_pad);
    inner.absorb(msg);
    auto inner_digest = inner.finalize();

    Sha256State outer;
    outer.absorb(outer_pad);
    outer.absorb(BytesView(inner_digest.data(), inner_digest.size()));
    auto d = outer.finalize();
    return Bytes(d.begin(), d.end());
}

}  // namespace dtlse
