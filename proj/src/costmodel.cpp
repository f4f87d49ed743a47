// dtlse: software model of a reconfigurable DTLS 1.3 cryptographic engine
// Copyright 2026 The dtlse Authors.
// SPDX-License-Identifier: Apache-2.0
#include "dtlse/costmodel.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "dtlse/config.hpp"

namespace dtlse {

namespace {

// Packaged copy of data/calibration.txt.
constexpr const char* kDefaultCalibration = R"(# dtlse energy calibration: 65 nm engine at 0.8 V, 16 MHz
# Measured per-operation energies.
aes_pj_per_bit = 4.08
gcm_pj_per_bit = 11.88
sha_pj_per_bit = 4.43
ecsm256_uj = 6.47
comb256_uj = 11.1

# Cycle anchors for back-deriving per-cycle constants.
ecsm256_cycles_ref = 180000
inv_euclid_cycles_ref = 720
inv_fermat_cycles_ref = 98304

# Reference rows, report context only (absolute silicon numbers are not a
# modeling target).
handshake_full_uj_ref = 68.94
handshake_cached_uj_ref = 44.08
appdata_nj_per_byte_ref = 0.89
sw_handshake_mj_ref = 150.0
sw_appdata_nj_per_byte_ref = 125.0
sw_comb_ecsm_s_ref = 8.5
sw_comb_ecsm_uj_ref = 4180.0
aes_a1_cycles_per_block = 336
)";

double energy_uj(uint64_t cycles, double pj_per_cycle) {
    return static_cast<double>(cycles) * pj_per_cycle * 1e-6;
}

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.9g", v);
    return buf;
}

}  // namespace

EnergyTable EnergyTable::from_text(std::string_view text) {
    auto kv = parse_kv(text);
    EnergyTable t;
    auto take = [&](const char* key, double& out) {
        auto it = kv.find(key);
        if (it == kv.end())
            throw std::invalid_argument("calibration: missing key '" + std::string(key) + "'");
        out = std::stod(it->second);
        kv.erase(it);
    };
    take("aes_pj_per_bit", t.aes_pj_per_bit);
    take("gcm_pj_per_bit", t.gcm_pj_per_bit);
    take("sha_pj_per_bit", t.sha_pj_per_bit);
    take("ecsm256_uj", t.ecsm256_uj);
    take("comb256_uj", t.comb256_uj);
    take("ecsm256_cycles_ref", t.ecsm256_cycles_ref);
    take("inv_euclid_cycles_ref", t.inv_euclid_cycles_ref);
    take("inv_fermat_cycles_ref", t.inv_fermat_cycles_ref);
    take("handshake_full_uj_ref", t.handshake_full_uj_ref);
    take("handshake_cached_uj_ref", t.handshake_cached_uj_ref);
    take("appdata_nj_per_byte_ref", t.appdata_nj_per_byte_ref);
    take("sw_handshake_mj_ref", t.sw_handshake_mj_ref);
    take("sw_appdata_nj_per_byte_ref", t.sw_appdata_nj_per_byte_ref);
    take("sw_comb_ecsm_s_ref", t.sw_comb_ecsm_s_ref);
    take("sw_comb_ecsm_uj_ref", t.sw_comb_ecsm_uj_ref);
    take("aes_a1_cycles_per_block", t.aes_a1_cycles_per_block);
    if (!kv.empty())
        throw std::invalid_argument("calibration: unknown key '" + kv.begin()->first + "'");
    return t;
}

EnergyTable EnergyTable::from_file(const std::string& path) { return from_text(read_file(path)); }

const EnergyTable& EnergyTable::defaults() {
    static const EnergyTable t = from_text(kDefaultCalibration);
    return t;
}

const char* EnergyTable::default_text() { return kDefaultCalibration; }

void AnalysisParams::validate() const {
    if (e_handshake_j <= 0 || e_appdata_j_per_byte <= 0 || n_bytes < 0 || t_session_s <= 0 ||
        t_appdata_s <= 0)
        throw std::invalid_argument("analysis parameters must be positive");
    if (t_appdata_s > t_session_s)
        throw std::invalid_argument("data period cannot exceed session duration");
}

EnergyBreakdown e_total(const AnalysisParams& p) {
    p.validate();
    double data = p.n_bytes * (p.t_session_s / p.t_appdata_s) * p.e_appdata_j_per_byte;
    EnergyBreakdown out;
    out.total_j = p.e_handshake_j + data;
    out.handshake_fraction = p.e_handshake_j / out.total_j;
    return out;
}

std::string contour_sweep(const AnalysisParams& base, const std::vector<double>& n_values,
                          const std::vector<double>& t_appdata_values,
                          const std::vector<double>& t_session_values) {
    std::string csv = "t_session_s,n_bytes,t_appdata_s,e_total_j,handshake_fraction\n";
    for (double ts : t_session_values) {
        for (double n : n_values) {
            for (double ta : t_appdata_values) {
                AnalysisParams p = base;
                p.n_bytes = n;
                p.t_appdata_s = ta;
                p.t_session_s = ts;
                EnergyBreakdown e = e_total(p);
                csv += fmt(ts) + "," + fmt(n) + "," + fmt(ta) + "," + fmt(e.total_j) + "," +
                       fmt(e.handshake_fraction) + "\n";
            }
        }
    }
    return csv;
}

nlohmann::json ledger_report(const CostLedger& l, const EnergyTable& t) {
    nlohmann::json counts = {
        {"aes_blocks", l.aes_blocks},
        {"aes_standalone_blocks", l.aes_standalone_blocks},
        {"gcm_calls", l.gcm_calls},
        {"gcm_data_blocks", l.gcm_data_blocks},
        {"ghash_muls", l.ghash_muls},
        {"sha_blocks", l.sha_blocks},
        {"mod_adds", l.mod_adds},
        {"mod_muls", l.mod_muls},
        {"inv_calls", l.inv_calls},
        {"point_adds", l.point_adds},
        {"point_dbls", l.point_dbls},
        {"ecsm", l.ecsm_total()},
        {"comb_precomputes", l.comb_total()},
        {"drbg_generates", l.drbg_generates},
        {"ecdsa_signs", l.ecdsa_signs},
        {"ecdsa_verifies", l.ecdsa_verifies},
        {"ecdh_derives", l.ecdh_derives},
    };
    nlohmann::json cycles = {
        {"aes", l.cycles_aes()},   {"gcm", l.cycles_gcm()},     {"ghash", l.cycles_ghash()},
        {"sha", l.cycles_sha()},   {"field", l.cycles_field()}, {"ecsm_attributed", l.ecsm_cycles},
        {"comb_attributed", l.comb_cycles}, {"total", l.cycles_total()},
    };
    double aes_uj = energy_uj(l.cycles_aes(), t.aes_pj_per_cycle());
    double gcm_uj = energy_uj(l.cycles_gcm(), t.gcm_pj_per_cycle());
    double ghash_uj = energy_uj(l.cycles_ghash(), t.gcm_pj_per_cycle());
    double sha_uj = energy_uj(l.cycles_sha(), t.sha_pj_per_cycle());
    double ecc_uj = energy_uj(l.cycles_field(), t.ecc_pj_per_cycle());
    nlohmann::json energy = {
        {"aes_uj", aes_uj},
        {"gcm_uj", gcm_uj},
        {"ghash_uj", ghash_uj},
        {"sha_uj", sha_uj},
        {"ecc_uj", ecc_uj},
        {"total_uj", aes_uj + gcm_uj + ghash_uj + sha_uj + ecc_uj},
    };
    nlohmann::json reference = {
        {"handshake_full_uj", t.handshake_full_uj_ref},
        {"handshake_cached_uj", t.handshake_cached_uj_ref},
        {"appdata_nj_per_byte", t.appdata_nj_per_byte_ref},
        {"sw_handshake_mj", t.sw_handshake_mj_ref},
        {"aes_a1_cycles_per_block", t.aes_a1_cycles_per_block},
    };
    return nlohmann::json{
        {"counts", counts}, {"cycles", cycles}, {"energy", energy}, {"reference", reference}};
}

nlohmann::json mode_comparison(const CostLedger& full, const CostLedger& cached,
                               const EnergyTable& table) {
    nlohmann::json full_report = ledger_report(full, table);
    nlohmann::json cached_report = ledger_report(cached, table);
    double full_uj = full_report["energy"]["total_uj"];
    double cached_uj = cached_report["energy"]["total_uj"];
    uint64_t full_cycles = full.cycles_total();
    uint64_t cached_cycles = cached.cycles_total();
    return nlohmann::json{
        {"full_cycles", full_cycles},
        {"cached_cycles", cached_cycles},
        {"cycle_reduction",
         full_cycles == 0 ? 0.0
                          : 1.0 - static_cast<double>(cached_cycles) /
                                      static_cast<double>(full_cycles)},
        {"full_uj", full_uj},
        {"cached_uj", cached_uj},
        {"energy_reduction", full_uj == 0 ? 0.0 : 1.0 - cached_uj / full_uj},
    };
}

nlohmann::json comb_amortization(const CostLedger& handshake_ledger, uint64_t comb_table_cycles,
                                 const EnergyTable& table) {
    uint64_t warm_cycles = handshake_ledger.ecsm_cycles;
    uint64_t cold_cycles = warm_cycles + 3 * comb_table_cycles;
    double warm_uj = energy_uj(warm_cycles, table.ecc_pj_per_cycle());
    double cold_uj = energy_uj(cold_cycles, table.ecc_pj_per_cycle());
    double ratio = warm_cycles == 0
                       ? 1.0
                       : static_cast<double>(cold_cycles) / static_cast<double>(warm_cycles);
    return nlohmann::json{
        {"warm_ecsm_cycles", warm_cycles},
        {"cold_ecsm_cycles", cold_cycles},
        {"pinned_table_cycles", 3 * comb_table_cycles},
        {"warm_uj", warm_uj},
        {"cold_uj", cold_uj},
        {"ratio", ratio},
    };
}

uint64_t symbolic_affine_ecsm_m(unsigned iterations, unsigned inversion_cost_m) {
    // ADD = 2M + I, DBL = 3M + I per iteration.
    return static_cast<uint64_t>(iterations) * (5 + 2 * inversion_cost_m);
}

uint64_t symbolic_projective_ecsm_m(unsigned iterations, unsigned fermat_inversion_cost_m) {
    // ADD = 8M, DBL = 11M, plus the final conversion and one Fermat inversion.
    return static_cast<uint64_t>(iterations) * (8 + 11) + 4 + fermat_inversion_cost_m;
}

}  // namespace dtlse
