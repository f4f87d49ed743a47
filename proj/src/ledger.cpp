// dtlse: software model of a reconfigurable DTLS 1.3 cryptographic engine
// Copyright 2026 The dtlse Authors.
// SPDX-License-Identifier: Apache-2.0
#include "dtlse/ledger.hpp"

namespace dtlse {

namespace {
thread_local CostLedger* g_active_ledger = nullptr;
}

CostLedger& CostLedger::operator+=(const CostLedger& o) {
    aes_blocks += o.aes_blocks;
    aes_standalone_blocks += o.aes_standalone_blocks;
    gcm_calls += o.gcm_calls;
    gcm_data_blocks += o.gcm_data_blocks;
    ghash_muls += o.ghash_muls;
    ghash_standalone_cycles += o.ghash_standalone_cycles;
    sha_blocks += o.sha_blocks;
    mod_adds += o.mod_adds;
    mod_muls += o.mod_muls;
    mod_mul_cycles += o.mod_mul_cycles;
    inv_calls += o.inv_calls;
    inv_cycles += o.inv_cycles;
    point_adds += o.point_adds;
    point_dbls += o.point_dbls;
    for (auto& [t, c] : o.ecsm_calls) ecsm_calls[t] += c;
    for (auto& [t, c] : o.comb_precomputes) comb_precomputes[t] += c;
    ecsm_cycles += o.ecsm_cycles;
    comb_cycles += o.comb_cycles;
    drbg_generates += o.drbg_generates;
    ecdsa_signs += o.ecdsa_signs;
    ecdsa_verifies += o.ecdsa_verifies;
    ecdh_derives += o.ecdh_derives;
    return *this;
}

LedgerScope::LedgerScope(CostLedger& ledger) : prev_(g_active_ledger) { g_active_ledger = &ledger; }
LedgerScope::~LedgerScope() { g_active_ledger = prev_; }

LedgerPause::LedgerPause() : prev_(g_active_ledger) { g_active_ledger = nullptr; }
LedgerPause::~LedgerPause() { g_active_ledger = prev_; }

CostLedger* active_ledger() { return g_active_ledger; }

}  // namespace dtlse
