// dtlse: software model of a reconfigurable DTLS 1.3 cryptographic engine
// Copyright 2026 The dtlse Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <vector>

#include "json.hpp"

#include "dtlse/ledger.hpp"

namespace dtlse {

/// Per-primitive energy calibration. Values come from a calibration file
/// (or the packaged default text); the code never embeds energy numbers.
/// Report energies are cycles times per-cycle constants back-derived from
/// the per-operation rows here. Silicon-absolute agreement is out of scope;
/// the table exists for ratios and report context.
struct EnergyTable {
    // Measured per-operation energies.
    double aes_pj_per_bit = 0;
    double gcm_pj_per_bit = 0;
    double sha_pj_per_bit = 0;
    double ecsm256_uj = 0;
    double comb256_uj = 0;

    // Cycle anchors used to back-derive per-cycle constants.
    double ecsm256_cycles_ref = 0;
    double inv_euclid_cycles_ref = 0;
    double inv_fermat_cycles_ref = 0;

    // Reference rows for report context only.
    double handshake_full_uj_ref = 0;
    double handshake_cached_uj_ref = 0;
    double appdata_nj_per_byte_ref = 0;
    double sw_handshake_mj_ref = 0;
    double sw_appdata_nj_per_byte_ref = 0;
    double sw_comb_ecsm_s_ref = 0;
    double sw_comb_ecsm_uj_ref = 0;
    double aes_a1_cycles_per_block = 0;  // 8-bit serial architecture, model entry only

    static EnergyTable from_text(std::string_view text);
    static EnergyTable from_file(const std::string& path);
    static const EnergyTable& defaults();
    static const char* default_text();

    double aes_pj_per_cycle() const { return aes_pj_per_bit * 128.0 / 11.0; }
    double gcm_pj_per_cycle() const { return gcm_pj_per_bit * 128.0 / 32.0; }
    double sha_pj_per_cycle() const { return sha_pj_per_bit * 512.0 / 65.0; }
    double ecc_pj_per_cycle() const { return ecsm256_uj * 1e6 / ecsm256_cycles_ref; }

    double fermat_euclid_ratio() const { return inv_fermat_cycles_ref / inv_euclid_cycles_ref; }
};

/// Session energy inputs: handshake energy, per-byte data energy, payload
/// size, session duration and data period.
struct AnalysisParams {
    double e_handshake_j = 0;
    double e_appdata_j_per_byte = 0;
    double n_bytes = 0;
    double t_session_s = 0;
    double t_appdata_s = 0;

    void validate() const;
};

struct EnergyBreakdown {
    double total_j = 0;
    double handshake_fraction = 0;
};

/// E_total = E_handshake + N * (t_session / t_appdata) * E_appdata.
EnergyBreakdown e_total(const AnalysisParams& p);

/// Long-format CSV over the parameter grid, columns
/// t_session_s,n_bytes,t_appdata_s,e_total_j,handshake_fraction.
std::string contour_sweep(const AnalysisParams& base, const std::vector<double>& n_values,
                          const std::vector<double>& t_appdata_values,
                          const std::vector<double>& t_session_values);

/// Cycle and energy report for one ledger: raw counts, per-domain cycles,
/// per-domain energies, plus the calibration reference rows.
nlohmann::json ledger_report(const CostLedger& ledger, const EnergyTable& table);

/// Full-vs-cached handshake comparison on modeled cycles and energy.
nlohmann::json mode_comparison(const CostLedger& full, const CostLedger& cached,
                               const EnergyTable& table);

/// Scalar-multiplication energy of a handshake with the three pinned comb
/// tables warm versus rebuilt in-session: cold = warm + 3 table builds.
/// A ledger with no scalar multiplications reports ratio 1.
nlohmann::json comb_amortization(const CostLedger& handshake_ledger, uint64_t comb_table_cycles,
                                 const EnergyTable& table);

/// Symbolic main-loop cost of affine-coordinate comb scalar multiplication,
/// in multiples of a field multiplication: iterations * (5M + 2I).
uint64_t symbolic_affine_ecsm_m(unsigned iterations = 64, unsigned inversion_cost_m = 3);

/// Projective-coordinate counterpart: iterations * (8M + 11M) + 4M plus a
/// final Fermat inversion at 384M.
uint64_t symbolic_projective_ecsm_m(unsigned iterations = 64,
                                    unsigned fermat_inversion_cost_m = 384);

}  // namespace dtlse
