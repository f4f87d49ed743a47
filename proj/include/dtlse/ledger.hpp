// dtlse: software model of a reconfigurable DTLS 1.3 cryptographic engine
// Copyright 2026 The dtlse Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <map>

namespace dtlse {

/// Invocation-driven cycle accounting. Primitives record raw counters as they
/// execute; cycle totals are derived from the counters by fixed per-primitive
/// formulas and never accumulated independently, so a ledger can always be
/// cross-checked against its counters.
///
/// Cycle formulas:
///   add/sub: 1      mul: t (one cycle per scalar bit, interleaved reduction)
///   inv:     measured iteration steps of the binary Euclidean divider
///   aes:     11 per standalone block (128-bit data path, 10 rounds + load)
///   gcm:     54 + 32*(m+n) per call, m/n = 16-byte blocks of aad/payload
///   ghash:   128/n_h per standalone multiplication
///   sha:     65 per 512-bit block
///
/// AES blocks and GHASH multiplications executed inside a GCM call are counted
/// as invocations but carry no standalone cycle charge; the GCM formula already
/// covers them (encryption and Galois multiplication run in parallel there).
struct CostLedger {
    // Symmetric primitives.
    uint64_t aes_blocks = 0;             ///< every block-cipher invocation
    uint64_t aes_standalone_blocks = 0;  ///< charged 11 cycles each
    uint64_t gcm_calls = 0;
    uint64_t gcm_data_blocks = 0;  ///< sum of m+n over all calls
    uint64_t ghash_muls = 0;
    uint64_t ghash_standalone_cycles = 0;
    uint64_t sha_blocks = 0;

    // Modular arithmetic.
    uint64_t mod_adds = 0;  ///< additions and subtractions, 1 cycle each
    uint64_t mod_muls = 0;
    uint64_t mod_mul_cycles = 0;  ///< sum of t over all multiplications
    uint64_t inv_calls = 0;
    uint64_t inv_cycles = 0;  ///< sum of measured Euclid iteration steps

    // Curve layer.
    uint64_t point_adds = 0;
    uint64_t point_dbls = 0;
    std::map<unsigned, uint64_t> ecsm_calls;  ///< keyed by scalar bit length
    std::map<unsigned, uint64_t> comb_precomputes;
    uint64_t ecsm_cycles = 0;  ///< field-op cycles attributed to ecsm calls
    uint64_t comb_cycles = 0;  ///< field-op cycles attributed to precomputations

    // Protocol layer.
    uint64_t drbg_generates = 0;
    uint64_t ecdsa_signs = 0;
    uint64_t ecdsa_verifies = 0;
    uint64_t ecdh_derives = 0;

    void record_aes_block(bool standalone) {
        ++aes_blocks;
        if (standalone) ++aes_standalone_blocks;
    }
    void record_gcm(uint64_t aad_blocks, uint64_t data_blocks) {
        ++gcm_calls;
        gcm_data_blocks += aad_blocks + data_blocks;
    }
    void record_ghash(unsigned n_h, bool standalone) {
        ++ghash_muls;
        if (standalone) ghash_standalone_cycles += 128 / n_h;
    }
    void record_sha_block() { ++sha_blocks; }
    void record_mod_add() { ++mod_adds; }
    void record_mod_mul(unsigned t) {
        ++mod_muls;
        mod_mul_cycles += t;
    }
    void record_inv(uint64_t steps) {
        ++inv_calls;
        inv_cycles += steps;
    }
    void record_point_add() { ++point_adds; }
    void record_point_dbl() { ++point_dbls; }
    void record_ecsm(unsigned t) { ++ecsm_calls[t]; }
    void record_comb(unsigned t) { ++comb_precomputes[t]; }
    void record_drbg_generate() { ++drbg_generates; }

    uint64_t ecsm_total() const {
        uint64_t n = 0;
        for (auto& [t, c] : ecsm_calls) n += c;
        return n;
    }
    uint64_t comb_total() const {
        uint64_t n = 0;
        for (auto& [t, c] : comb_precomputes) n += c;
        return n;
    }

    uint64_t cycles_aes() const { return 11 * aes_standalone_blocks; }
    uint64_t cycles_gcm() const { return 54 * gcm_calls + 32 * gcm_data_blocks; }
    uint64_t cycles_ghash() const { return ghash_standalone_cycles; }
    uint64_t cycles_sha() const { return 65 * sha_blocks; }
    uint64_t cycles_field() const { return mod_adds + mod_mul_cycles + inv_cycles; }
    uint64_t cycles_total() const {
        return cycles_aes() + cycles_gcm() + cycles_ghash() + cycles_sha() + cycles_field();
    }

    CostLedger& operator+=(const CostLedger& o);
};

/// Installs `ledger` as the active accumulator for the current thread until
/// the scope ends. Ledgers are single-writer per computation scope.
class LedgerScope {
  public:
    explicit LedgerScope(CostLedger& ledger);
    ~LedgerScope();
    LedgerScope(const LedgerScope&) = delete;
    LedgerScope& operator=(const LedgerScope&) = delete;

  private:
    CostLedger* prev_;
};

/// Suspends ledger recording for the current thread until the scope ends.
class LedgerPause {
  public:
    LedgerPause();
    ~LedgerPause();
    LedgerPause(const LedgerPause&) = delete;
    LedgerPause& operator=(const LedgerPause&) = delete;

  private:
    CostLedger* prev_;
};

CostLedger* active_ledger();

}  // namespace dtlse
