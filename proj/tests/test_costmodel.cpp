#include <stdexcept>

#include "doctest.h"
#include "dtlse/costmodel.hpp"
#include "dtlse/curve.hpp"
#include "oracle.hpp"

using namespace dtlse;

TEST_CASE("calibration defaults parse and derive per-cycle constants") {
    const EnergyTable& t = EnergyTable::defaults();
    CHECK(t.aes_pj_per_bit == doctest::Approx(4.08));
    CHECK(t.gcm_pj_per_bit == doctest::Approx(11.88));
    CHECK(t.sha_pj_per_bit == doctest::Approx(4.43));
    CHECK(t.ecsm256_uj == doctest::Approx(6.47));
    CHECK(t.comb256_uj == doctest::Approx(11.1));
    CHECK(t.aes_a1_cycles_per_block == doctest::Approx(336));
    CHECK(t.ecc_pj_per_cycle() == doctest::Approx(6.47e6 / 180000.0));
    CHECK_THROWS_AS(EnergyTable::from_text("aes_pj_per_bit = 1\n"), std::invalid_argument);
    CHECK_THROWS_AS(EnergyTable::from_text(std::string(EnergyTable::default_text()) + "bogus = 1\n"),
                    std::invalid_argument);
}

TEST_CASE("fermat vs euclid inversion ratio from table constants") {
    const EnergyTable& t = EnergyTable::defaults();
    double ratio = t.fermat_euclid_ratio();
    CHECK(ratio == doctest::Approx(98304.0 / 720.0));
    CHECK(ratio / 128.0 > 0.8);
    CHECK(ratio / 128.0 < 1.2);
}

TEST_CASE("session energy formula") {
    AnalysisParams p;
    p.e_handshake_j = 0.150;
    p.e_appdata_j_per_byte = 125e-9;
    p.n_bytes = 32;
    p.t_session_s = 86400;
    p.t_appdata_s = 1;
    EnergyBreakdown every_second = e_total(p);
    CHECK(every_second.handshake_fraction == doctest::Approx(0.3027).epsilon(0.01));

    p.t_appdata_s = 3600;
    CHECK(e_total(p).handshake_fraction > 0.99);

    p.t_appdata_s = p.t_session_s;
    p.n_bytes = 0;
    CHECK(e_total(p).handshake_fraction == doctest::Approx(1.0));

    p.t_appdata_s = 2 * p.t_session_s;
    CHECK_THROWS_AS(e_total(p), std::invalid_argument);
    p.t_appdata_s = 1;
    p.e_handshake_j = 0;
    CHECK_THROWS_AS(e_total(p), std::invalid_argument);
}

TEST_CASE("contour sweep grid matches point evaluations and is monotone") {
    AnalysisParams base;
    base.e_handshake_j = 0.150;
    base.e_appdata_j_per_byte = 125e-9;
    std::vector<double> n_values{1, 8, 32, 128};
    std::vector<double> t_appdata{1, 60, 3600};
    std::vector<double> t_session{86400, 7 * 86400};
    std::string csv = contour_sweep(base, n_values, t_appdata, t_session);

    // Parse rows back.
    struct Row {
        double ts, n, ta, e, frac;
    };
    std::vector<Row> rows;
    size_t pos = csv.find('\n') + 1;
    while (pos < csv.size()) {
        Row r;
        REQUIRE(sscanf(csv.c_str() + pos, "%lf,%lf,%lf,%lf,%lf", &r.ts, &r.n, &r.ta, &r.e,
                       &r.frac) == 5);
        rows.push_back(r);
        pos = csv.find('\n', pos) + 1;
    }
    REQUIRE(rows.size() == n_values.size() * t_appdata.size() * t_session.size());

    for (const Row& r : rows) {
        AnalysisParams p = base;
        p.n_bytes = r.n;
        p.t_appdata_s = r.ta;
        p.t_session_s = r.ts;
        EnergyBreakdown e = e_total(p);
        CHECK(r.e == doctest::Approx(e.total_j));
        CHECK(r.frac == doctest::Approx(e.handshake_fraction));
    }

    // Fraction decreases with payload size, increases with data period, and
    // decreases as the session stretches.
    auto fraction = [&](double ts, double n, double ta) {
        AnalysisParams p = base;
        p.n_bytes = n;
        p.t_appdata_s = ta;
        p.t_session_s = ts;
        return e_total(p).handshake_fraction;
    };
    for (size_t i = 1; i < n_values.size(); ++i)
        CHECK(fraction(86400, n_values[i], 60) < fraction(86400, n_values[i - 1], 60));
    for (size_t i = 1; i < t_appdata.size(); ++i)
        CHECK(fraction(86400, 32, t_appdata[i]) > fraction(86400, 32, t_appdata[i - 1]));
    CHECK(fraction(7 * 86400, 32, 60) < fraction(86400, 32, 60));
}

TEST_CASE("symbolic coordinate-cost identities") {
    CHECK(symbolic_affine_ecsm_m() == 704);
    CHECK(symbolic_projective_ecsm_m() == 1604);
    CHECK(symbolic_affine_ecsm_m(64, 3) == 64 * (5 + 6));
    CHECK(symbolic_projective_ecsm_m(64, 384) == 64 * 19 + 4 + 384);
}

TEST_CASE("ledger report: formula conformance against raw counters") {
    CostLedger l;
    l.aes_standalone_blocks = l.aes_blocks = 3;
    l.gcm_calls = 2;
    l.gcm_data_blocks = 7;
    l.sha_blocks = 5;
    l.mod_adds = 11;
    l.mod_muls = 4;
    l.mod_mul_cycles = 4 * 256;
    l.inv_calls = 2;
    l.inv_cycles = 1440;

    CHECK(l.cycles_aes() == 3 * 11);
    CHECK(l.cycles_gcm() == 54 * 2 + 32 * 7);
    CHECK(l.cycles_sha() == 5 * 65);
    CHECK(l.cycles_field() == 11 + 1024 + 1440);
    CHECK(l.cycles_total() ==
          l.cycles_aes() + l.cycles_gcm() + l.cycles_ghash() + l.cycles_sha() + l.cycles_field());

    nlohmann::json report = ledger_report(l, EnergyTable::defaults());
    CHECK(report["cycles"]["total"] == l.cycles_total());
    CHECK(report["counts"]["gcm_calls"] == 2);
    CHECK(report["energy"]["total_uj"].get<double>() > 0);

    CostLedger empty;
    nlohmann::json zero = ledger_report(empty, EnergyTable::defaults());
    CHECK(zero["cycles"]["total"] == 0);
    CHECK(zero["energy"]["total_uj"].get<double>() == 0.0);
}

TEST_CASE("comb amortization algebra") {
    const EnergyTable& t = EnergyTable::defaults();

    CostLedger none;
    CHECK(comb_amortization(none, 300000, t)["ratio"].get<double>() == doctest::Approx(1.0));

    CostLedger some;
    some.ecsm_cycles = 900000;
    nlohmann::json r = comb_amortization(some, 300000, t);
    CHECK(r["cold_ecsm_cycles"].get<uint64_t>() ==
          r["warm_ecsm_cycles"].get<uint64_t>() + 3 * 300000);
    CHECK(r["ratio"].get<double>() == doctest::Approx(1.0 + 900000.0 / 900000.0));
}

TEST_CASE("ledger addition composes counters") {
    CostLedger a, b;
    a.sha_blocks = 2;
    a.ecsm_calls[256] = 1;
    a.ecsm_cycles = 100;
    b.sha_blocks = 3;
    b.ecsm_calls[256] = 2;
    b.ecsm_calls[192] = 1;
    b.ecsm_cycles = 50;
    a += b;
    CHECK(a.sha_blocks == 5);
    CHECK(a.ecsm_total() == 4);
    CHECK(a.ecsm_cycles == 150);
}
