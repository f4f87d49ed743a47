// dtlse: software model of a reconfigurable DTLS 1.3 cryptographic engine
// Copyright 2026 The dtlse Authors.
// SPDX-License-Identifier: Apache-2.0
//
// Command-line front door: standalone primitives on hex/file inputs,
// certificate tooling, handshake co-simulation, trace audits, energy
// analysis and protocol benchmarks.
//
// Exit codes: 0 success, 2 usage, 3 cryptographic failure, 4 protocol
// failure, 5 I/O failure.

#include <iostream>

#include "CLI11.hpp"

#include "dtlse/cert.hpp"
#include "dtlse/config.hpp"
#include "dtlse/costmodel.hpp"
#include "dtlse/curve.hpp"
#include "dtlse/ecdsa.hpp"
#include "dtlse/errors.hpp"
#include "dtlse/gcm.hpp"
#include "dtlse/kdf.hpp"
#include "dtlse/netsim.hpp"
#include "dtlse/protocols.hpp"
#include "dtlse/sha256.hpp"
#include "dtlse/trace.hpp"

namespace {

using namespace dtlse;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitCrypto = 3;
constexpr int kExitProtocol = 4;
constexpr int kExitIo = 5;

constexpr size_t kMaxFileInput = 16u << 20;

Bytes read_input_file(const std::string& path) {
    std::string content = read_file(path);
    if (content.size() > kMaxFileInput) throw std::invalid_argument("input file exceeds 16 MiB");
    return Bytes(content.begin(), content.end());
}

Bytes input_bytes(const std::string& hex, const std::string& file) {
    if (!hex.empty() && !file.empty())
        throw std::invalid_argument("choose either --hex or --in, not both");
    if (!file.empty()) return read_input_file(file);
    return from_hex(hex);
}

const CurveParams& load_curve(const std::string& spec) {
    static std::vector<CurveParams> loaded;
    for (const std::string& name : CurveParams::preset_names()) {
        if (name == spec) return CurveParams::preset(spec);
    }
    loaded.push_back(CurveParams::from_file(spec));
    return loaded.back();
}

Drbg seeded_drbg(const std::string& seed_hex, std::string_view domain) {
    Bytes seed = to_bytes(domain);
    append(seed, from_hex(seed_hex));
    return Drbg(seed);
}

struct CertKeyFiles {
    static void write_keypair(const CurveParams& curve, const KeyPair& kp,
                              const std::string& prefix) {
        write_file(prefix + ".key", kp.d.to_hex_padded() + "\n");
        write_file(prefix + ".pub", to_hex(encode_point(curve, kp.q)) + "\n");
    }
    static UInt256 read_key(const std::string& path) {
        std::string hex = read_file(path);
        while (!hex.empty() && (hex.back() == '\n' || hex.back() == '\r')) hex.pop_back();
        return UInt256::from_hex(hex);
    }
    static AffinePoint read_pub(const CurveParams& curve, const std::string& path) {
        std::string hex = read_file(path);
        while (!hex.empty() && (hex.back() == '\n' || hex.back() == '\r')) hex.pop_back();
        return decode_point(curve, from_hex(hex));
    }
};

int run_spa_audit(const CurveParams& curve, int count, const std::string& seed_hex) {
    Drbg drbg = seeded_drbg(seed_hex, "spa-audit");
    PointCache cache;
    cache.install_pinned(curve, curve.generator);
    const CombTable& table = *cache.find(curve.generator);

    OpTrace reference;
    bool uniform = true;
    for (int i = 0; i < count; ++i) {
        UInt256 k = scalar_from_drbg(drbg, curve);
        OpTrace trace;
        {
            TraceScope scope(trace);
            ecsm(k, table, curve);
        }
        if (i == 0)
            reference = std::move(trace);
        else if (!(trace == reference))
            uniform = false;
    }
    std::cout << "comb-ecsm: " << (uniform ? "UNIFORM" : "NONUNIFORM") << " across " << count
              << " scalars (" << reference.size() << " ops per trace)\n";

    // The reference ladder leaks: recover the scalar from its point-op tags.
    UInt256 k = scalar_from_drbg(drbg, curve);
    OpTrace leaky;
    {
        TraceScope scope(leaky);
        ecsm_naive(curve, k, curve.generator);
    }
    std::string recovered;
    for (Op op : leaky.ops) {
        if (op == Op::DblPt) recovered.push_back('0');
        if (op == Op::AddPt && !recovered.empty()) recovered.back() = '1';
    }
    std::string actual;
    for (unsigned b = k.bit_length(); b-- > 0;) actual.push_back(k.bit(b) ? '1' : '0');
    bool leaked = recovered == actual;
    std::cout << "naive-ecsm: recovered " << (leaked ? recovered.size() : 0) << "/"
              << actual.size() << " scalar bits from one trace\n";
    if (count > 1) {
        std::cout << "verdict: " << (uniform && leaked ? "ok" : "FAILED") << "\n";
    }
    return uniform && leaked ? kExitOk : kExitCrypto;
}

nlohmann::json bench_reference(const EnergyTable& table) {
    return nlohmann::json{{"sw_comb_ecsm_s", table.sw_comb_ecsm_s_ref},
                          {"sw_comb_ecsm_uj", table.sw_comb_ecsm_uj_ref},
                          {"hw_ecsm256_uj", table.ecsm256_uj},
                          {"hw_comb256_uj", table.comb256_uj}};
}

int run_bench(const std::string& which, const CurveParams& curve, const std::string& seed_hex,
              const EnergyTable& table) {
    Drbg drbg = seeded_drbg(seed_hex, "bench-" + which);
    PointCache cache;
    cache.install_pinned(curve, curve.generator);
    CostLedger ledger;

    if (which == "ecmqv") {
        LedgerScope scope(ledger);
        proto::EcmqvParty a{keygen(curve, cache, drbg), keygen(curve, cache, drbg)};
        proto::EcmqvParty b{keygen(curve, cache, drbg), keygen(curve, cache, drbg)};
        Bytes sa = proto::ecmqv_derive(curve, cache, a, b.static_pair.q, b.ephemeral_pair.q);
        Bytes sb = proto::ecmqv_derive(curve, cache, b, a.static_pair.q, a.ephemeral_pair.q);
        if (sa != sb) return kExitProtocol;
    } else if (which == "schnorr") {
        LedgerScope scope(ledger);
        UInt256 secret = scalar_from_drbg(drbg, curve);
        AffinePoint q = ecsm(secret, cache.acquire(curve, curve.generator), curve);
        proto::SchnorrProver prover{&curve, &cache, secret};
        for (int round = 0; round < 5; ++round) {
            proto::SchnorrTranscript t;
            UInt256 nonce;
            t.commitment = prover.commit(drbg, nonce);
            t.challenge = proto::schnorr_challenge(drbg, curve);
            t.response = prover.respond(nonce, t.challenge);
            if (!proto::schnorr_verify(curve, cache, q, t)) return kExitProtocol;
        }
    } else {  // merkle
        LedgerScope scope(ledger);
        std::vector<Bytes> leaves;
        for (int i = 0; i < 64; ++i) {
            Bytes leaf = drbg.generate(256);
            leaves.push_back(std::move(leaf));
        }
        proto::MerkleTree tree(leaves);
        for (size_t i = 0; i < leaves.size(); ++i) {
            if (!proto::MerkleTree::verify(tree.root(), leaves[i], i, tree.prove(i)))
                return kExitProtocol;
        }
    }

    nlohmann::json out = {{"protocol", which},
                          {"report", ledger_report(ledger, table)},
                          {"sw_reference", bench_reference(table)}};
    std::cout << out.dump(2) << "\n";
    return kExitOk;
}

int dispatch(int argc, char** argv) {
    CLI::App app{"dtlse: reconfigurable DTLS 1.3 engine model"};
    app.require_subcommand(1);
    app.failure_message(CLI::FailureMessage::simple);

    std::string hex_in, file_in, key_hex, iv_hex, aad_hex, pt_hex, ct_hex, tag_hex;
    std::string curve_spec = "p256", seed_hex, calibration_path;
    size_t tag_len = 16;
    unsigned n_h = 4;

    // --- primitives ---
    auto* hash_cmd = app.add_subcommand("hash", "SHA2-256 digest of hex or file input");
    hash_cmd->add_option("--hex", hex_in, "message bytes in hex");
    hash_cmd->add_option("--in", file_in, "message file");
    hash_cmd->callback([&] { std::cout << to_hex(sha256(input_bytes(hex_in, file_in))) << "\n"; });

    auto* hmac_cmd = app.add_subcommand("hmac", "HMAC-SHA2-256");
    hmac_cmd->add_option("--key-hex", key_hex, "key in hex")->required();
    hmac_cmd->add_option("--hex", hex_in, "message bytes in hex");
    hmac_cmd->add_option("--in", file_in, "message file");
    hmac_cmd->callback([&] {
        std::cout << to_hex(hmac_sha256(from_hex(key_hex), input_bytes(hex_in, file_in))) << "\n";
    });

    auto* hkdf_cmd = app.add_subcommand("hkdf", "HKDF extract/expand");
    std::string salt_hex, ikm_hex, prk_hex, info_hex;
    size_t okm_len = 32;
    auto* extract_cmd = hkdf_cmd->add_subcommand("extract", "PRK = HMAC(salt, ikm)");
    extract_cmd->add_option("--salt-hex", salt_hex, "salt (empty = 32 zero bytes)");
    extract_cmd->add_option("--ikm-hex", ikm_hex, "input keying material")->required();
    extract_cmd->callback(
        [&] { std::cout << to_hex(hkdf_extract(from_hex(salt_hex), from_hex(ikm_hex))) << "\n"; });
    auto* expand_cmd = hkdf_cmd->add_subcommand("expand", "OKM from PRK and info");
    expand_cmd->add_option("--prk-hex", prk_hex)->required();
    expand_cmd->add_option("--info-hex", info_hex);
    expand_cmd->add_option("--len", okm_len, "output length in bytes");
    expand_cmd->callback([&] {
        std::cout << to_hex(hkdf_expand(from_hex(prk_hex), from_hex(info_hex), okm_len)) << "\n";
    });
    hkdf_cmd->require_subcommand(1);

    auto* drbg_cmd = app.add_subcommand("drbg", "HMAC-DRBG generate");
    uint64_t drbg_bits = 256;
    int drbg_count = 1;
    drbg_cmd->add_option("--seed-hex", seed_hex, "seed material")->required();
    drbg_cmd->add_option("--bits", drbg_bits, "bits per generate call");
    drbg_cmd->add_option("--count", drbg_count, "number of generate calls");
    drbg_cmd->callback([&] {
        Drbg drbg(from_hex(seed_hex));
        for (int i = 0; i < drbg_count; ++i) std::cout << to_hex(drbg.generate(drbg_bits)) << "\n";
    });

    auto* seal_cmd = app.add_subcommand("aead-seal", "AES-128-GCM seal");
    seal_cmd->add_option("--key-hex", key_hex)->required();
    seal_cmd->add_option("--iv-hex", iv_hex, "96-bit IV")->required();
    seal_cmd->add_option("--aad-hex", aad_hex);
    seal_cmd->add_option("--pt-hex", pt_hex);
    seal_cmd->add_option("--tag-len", tag_len, "tag bytes: 4, 8, 12 or 16");
    seal_cmd->add_option("--nh", n_h, "Galois multiplier stages");
    seal_cmd->callback([&] {
        GcmParams params{n_h, tag_len};
        auto [ct, tag] =
            gcm_seal(from_hex(key_hex), from_hex(iv_hex), from_hex(aad_hex), from_hex(pt_hex),
                     params);
        std::cout << "ct=" << to_hex(ct) << "\n" << "tag=" << to_hex(tag) << "\n";
    });

    auto* open_cmd = app.add_subcommand("aead-open", "AES-128-GCM open");
    open_cmd->add_option("--key-hex", key_hex)->required();
    open_cmd->add_option("--iv-hex", iv_hex)->required();
    open_cmd->add_option("--aad-hex", aad_hex);
    open_cmd->add_option("--ct-hex", ct_hex);
    open_cmd->add_option("--tag-hex", tag_hex)->required();
    open_cmd->add_option("--tag-len", tag_len);
    open_cmd->add_option("--nh", n_h);
    open_cmd->callback([&] {
        GcmParams params{n_h, tag_len};
        auto pt = gcm_open(from_hex(key_hex), from_hex(iv_hex), from_hex(aad_hex),
                           from_hex(ct_hex), from_hex(tag_hex), params);
        if (!pt) throw CryptoError("authentication failed");
        std::cout << "pt=" << to_hex(*pt) << "\n";
    });

    // --- curve operations ---
    std::string scalar_hex, point_hex, pub_hex, sig_hex, hash_hex;
    auto add_curve_opt = [&](CLI::App* cmd) {
        cmd->add_option("--curve", curve_spec, "preset name or description file");
    };

    auto* keygen_cmd = app.add_subcommand("keygen", "deterministic key pair from a seed");
    add_curve_opt(keygen_cmd);
    keygen_cmd->add_option("--seed", seed_hex, "seed material in hex")->required();
    keygen_cmd->callback([&] {
        const CurveParams& curve = load_curve(curve_spec);
        Drbg drbg = seeded_drbg(seed_hex, "keygen");
        PointCache cache;
        cache.install_pinned(curve, curve.generator);
        KeyPair kp = keygen(curve, cache, drbg);
        std::cout << "key=" << kp.d.to_hex_padded() << "\n"
                  << "pub=" << to_hex(encode_point(curve, kp.q)) << "\n";
    });

    auto* sign_cmd = app.add_subcommand("sign", "deterministic ECDSA over a 32-byte hash");
    add_curve_opt(sign_cmd);
    sign_cmd->add_option("--key-hex", key_hex)->required();
    sign_cmd->add_option("--hash-hex", hash_hex)->required();
    sign_cmd->callback([&] {
        const CurveParams& curve = load_curve(curve_spec);
        PointCache cache;
        cache.install_pinned(curve, curve.generator);
        EcdsaSignature sig =
            ecdsa_sign(curve, cache, UInt256::from_hex(key_hex), from_hex(hash_hex));
        size_t w = (curve.nt + 7) / 8;
        std::cout << "sig=" << to_hex(sig.r.to_bytes_be(w)) << to_hex(sig.s.to_bytes_be(w))
                  << "\n";
    });

    auto* verify_cmd = app.add_subcommand("verify", "ECDSA verification");
    add_curve_opt(verify_cmd);
    verify_cmd->add_option("--pub-hex", pub_hex, "04 || x || y")->required();
    verify_cmd->add_option("--hash-hex", hash_hex)->required();
    verify_cmd->add_option("--sig-hex", sig_hex, "r || s, curve-width")->required();
    verify_cmd->callback([&] {
        const CurveParams& curve = load_curve(curve_spec);
        PointCache cache;
        cache.install_pinned(curve, curve.generator);
        Bytes sig_bytes = from_hex(sig_hex);
        size_t w = (curve.nt + 7) / 8;
        if (sig_bytes.size() != 2 * w) throw std::invalid_argument("signature width mismatch");
        EcdsaSignature sig{UInt256::from_bytes_be(BytesView(sig_bytes.data(), w)),
                           UInt256::from_bytes_be(BytesView(sig_bytes.data() + w, w))};
        AffinePoint q = decode_point(curve, from_hex(pub_hex));
        if (!ecdsa_verify(curve, cache, q, from_hex(hash_hex), sig))
            throw CryptoError("signature rejected");
        std::cout << "ok\n";
    });

    auto* ecdh_cmd = app.add_subcommand("ecdh", "shared secret from scalar and peer point");
    add_curve_opt(ecdh_cmd);
    ecdh_cmd->add_option("--scalar-hex", scalar_hex)->required();
    ecdh_cmd->add_option("--peer-hex", pub_hex)->required();
    ecdh_cmd->callback([&] {
        const CurveParams& curve = load_curve(curve_spec);
        PointCache cache;
        cache.install_pinned(curve, curve.generator);
        AffinePoint peer = decode_point(curve, from_hex(pub_hex));
        std::cout << to_hex(ecdh_derive(curve, cache, UInt256::from_hex(scalar_hex), peer))
                  << "\n";
    });

    auto* ecsm_cmd = app.add_subcommand("ecsm", "scalar multiplication with cycle report");
    add_curve_opt(ecsm_cmd);
    bool use_naive = false;
    ecsm_cmd->add_option("--scalar-hex", scalar_hex)->required();
    ecsm_cmd->add_option("--point-hex", point_hex, "base point (default: generator)");
    ecsm_cmd->add_flag("--naive", use_naive, "reference double-and-add ladder");
    ecsm_cmd->callback([&] {
        const CurveParams& curve = load_curve(curve_spec);
        UInt256 k = UInt256::from_hex(scalar_hex);
        AffinePoint base =
            point_hex.empty() ? curve.generator : decode_point(curve, from_hex(point_hex));
        CostLedger ledger;
        AffinePoint result;
        {
            LedgerScope scope(ledger);
            if (use_naive) {
                result = ecsm_naive(curve, k, base);
            } else {
                PointCache cache;
                result = ecsm(k, cache.acquire(curve, base), curve);
            }
        }
        if (result.is_infinity())
            std::cout << "point=infinity\n";
        else
            std::cout << "point=" << to_hex(encode_point(curve, result)) << "\n";
        std::cout << "cycles=" << ledger.cycles_total() << "\n";
    });

    // --- certificates ---
    auto* cert_cmd = app.add_subcommand("cert", "certificate tooling");
    cert_cmd->require_subcommand(1);
    std::string out_path, ca_key_path, ca_pub_path, pub_path, issuer = "dtlse ca",
                subject = "leaf";
    uint64_t serial = 1;
    int64_t not_before = 0, not_after = 1000000000, clock_s = 1;
    bool cached_mode = false;

    auto* make_ca = cert_cmd->add_subcommand("make-ca", "generate a CA key pair");
    add_curve_opt(make_ca);
    make_ca->add_option("--seed", seed_hex)->required();
    make_ca->add_option("--out", out_path, "file prefix for .key/.pub")->required();
    make_ca->callback([&] {
        const CurveParams& curve = load_curve(curve_spec);
        Drbg drbg = seeded_drbg(seed_hex, "make-ca");
        PointCache cache;
        cache.install_pinned(curve, curve.generator);
        CertKeyFiles::write_keypair(curve, keygen(curve, cache, drbg), out_path);
        std::cout << "wrote " << out_path << ".key and " << out_path << ".pub\n";
    });

    auto* issue = cert_cmd->add_subcommand("issue", "issue a leaf certificate");
    add_curve_opt(issue);
    issue->add_option("--ca-key", ca_key_path, "CA secret key file")->required();
    issue->add_option("--pub", pub_path, "subject public key file")->required();
    issue->add_option("--issuer", issuer);
    issue->add_option("--subject", subject);
    issue->add_option("--serial", serial);
    issue->add_option("--not-before", not_before);
    issue->add_option("--not-after", not_after);
    issue->add_option("--out", out_path, "output DER file")->required();
    issue->callback([&] {
        const CurveParams& curve = load_curve(curve_spec);
        PointCache cache;
        cache.install_pinned(curve, curve.generator);
        cert::CertFields fields;
        fields.serial = serial;
        fields.issuer = to_bytes(issuer);
        fields.subject = to_bytes(subject);
        fields.not_before = not_before;
        fields.not_after = not_after;
        fields.public_key = CertKeyFiles::read_pub(curve, pub_path);
        Bytes der = cert::encode_certificate(curve, cache, fields,
                                             CertKeyFiles::read_key(ca_key_path));
        write_file(out_path, std::string(der.begin(), der.end()));
        std::cout << "wrote " << out_path << " (" << der.size() << " bytes)\n";
    });

    std::string cert_path;
    auto* show = cert_cmd->add_subcommand("show", "parse and print a certificate");
    add_curve_opt(show);
    show->add_option("cert", cert_path, "DER file")->required();
    show->callback([&] {
        const CurveParams& curve = load_curve(curve_spec);
        Bytes der = read_input_file(cert_path);
        cert::CertParseResult r = cert::parse_certificate(der, curve);
        if (!r.ok()) throw CryptoError(std::string("parse: ") + cert::cert_error_name(r.error));
        const cert::Certificate& c = *r.cert;
        std::cout << "serial=" << to_hex(c.serial) << "\n"
                  << "issuer=" << std::string(c.issuer.begin(), c.issuer.end()) << "\n"
                  << "subject=" << std::string(c.subject.begin(), c.subject.end()) << "\n"
                  << "not_before=" << c.not_before << "\n"
                  << "not_after=" << c.not_after << "\n"
                  << "pub=" << to_hex(encode_point(curve, c.spki_point)) << "\n";
    });

    auto* cert_verify = cert_cmd->add_subcommand("verify", "validate a certificate");
    add_curve_opt(cert_verify);
    cert_verify->add_option("cert", cert_path)->required();
    cert_verify->add_option("--ca-pub", ca_pub_path, "CA public key file")->required();
    cert_verify->add_option("--clock", clock_s, "virtual time in seconds");
    cert_verify->add_flag("--cached", cached_mode, "use cached-information policy");
    cert_verify->callback([&] {
        const CurveParams& curve = load_curve(curve_spec);
        Bytes der = read_input_file(cert_path);
        cert::CertParseResult r = cert::parse_certificate(der, curve);
        if (!r.ok()) throw CryptoError(std::string("parse: ") + cert::cert_error_name(r.error));
        PointCache cache;
        cache.install_pinned(curve, curve.generator);
        cert::CertChainPolicy policy;
        policy.ca_public_key = CertKeyFiles::read_pub(curve, ca_pub_path);
        policy.clock = clock_s;
        policy.mode = cached_mode ? cert::CertChainPolicy::Mode::Cached
                                  : cert::CertChainPolicy::Mode::Full;
        cert::ValidateError v = cert::validate(*r.cert, policy, curve, cache);
        if (v != cert::ValidateError::Ok)
            throw CryptoError(std::string("validate: ") + cert::validate_error_name(v));
        std::cout << "ok\n";
    });

    // --- handshake simulation ---
    auto* sim_cmd = app.add_subcommand("handshake-sim", "client/server co-simulation");
    std::string scenario_path, mode_name = "full";
    sim::SimConfig sim_cfg;
    bool quiet = false;
    bool sim_seed_set = false;
    sim_cmd->add_option("--config", scenario_path, "scenario file (key=value)");
    sim_cmd->add_option("--drop", sim_cfg.drop_prob);
    sim_cmd->add_option("--reorder", sim_cfg.reorder_prob);
    sim_cmd->add_option("--dup", sim_cfg.duplicate_prob);
    sim_cmd->add_option("--latency", sim_cfg.latency);
    sim_cmd->add_option("--jitter", sim_cfg.jitter);
    sim_cmd->add_option("--timeout", sim_cfg.timeout);
    sim_cmd->add_option("--retries", sim_cfg.max_retries);
    auto* seed_opt = sim_cmd->add_option("--seed", sim_cfg.seed, "simulation seed");
    sim_cmd->add_option("--curve", sim_cfg.curve);
    sim_cmd->add_option("--mode", mode_name, "full or cached");
    sim_cmd->add_option("--tag-len", sim_cfg.tag_len);
    sim_cmd->add_option("--appdata", sim_cfg.appdata_bytes, "payload bytes after handshake");
    sim_cmd->add_flag("--quiet", quiet, "summary only");
    sim_cmd->callback([&] {
        if (!scenario_path.empty()) {
            sim::SimConfig file_cfg = sim::SimConfig::from_file(scenario_path);
            // Flags override file values where given.
            if (seed_opt->count() == 0) sim_cfg.seed = file_cfg.seed;
            if (sim_cmd->get_option("--drop")->count() == 0)
                sim_cfg.drop_prob = file_cfg.drop_prob;
            if (sim_cmd->get_option("--reorder")->count() == 0)
                sim_cfg.reorder_prob = file_cfg.reorder_prob;
            if (sim_cmd->get_option("--dup")->count() == 0)
                sim_cfg.duplicate_prob = file_cfg.duplicate_prob;
            if (sim_cmd->get_option("--latency")->count() == 0)
                sim_cfg.latency = file_cfg.latency;
            if (sim_cmd->get_option("--jitter")->count() == 0) sim_cfg.jitter = file_cfg.jitter;
            if (sim_cmd->get_option("--timeout")->count() == 0)
                sim_cfg.timeout = file_cfg.timeout;
            if (sim_cmd->get_option("--retries")->count() == 0)
                sim_cfg.max_retries = file_cfg.max_retries;
            if (sim_cmd->get_option("--curve")->count() == 0) sim_cfg.curve = file_cfg.curve;
            if (sim_cmd->get_option("--mode")->count() == 0) sim_cfg.mode = file_cfg.mode;
            if (sim_cmd->get_option("--tag-len")->count() == 0)
                sim_cfg.tag_len = file_cfg.tag_len;
            if (sim_cmd->get_option("--appdata")->count() == 0)
                sim_cfg.appdata_bytes = file_cfg.appdata_bytes;
            sim_seed_set = true;
        }
        if (!sim_seed_set && seed_opt->count() == 0)
            throw std::invalid_argument("--seed is required (no ambient entropy)");
        if (sim_cmd->get_option("--mode")->count() != 0 || scenario_path.empty()) {
            if (mode_name == "full")
                sim_cfg.mode = HsMode::Full;
            else if (mode_name == "cached")
                sim_cfg.mode = HsMode::Cached;
            else
                throw std::invalid_argument("mode must be full or cached");
        }
        sim::SimReport report = sim::run_handshake(sim_cfg);
        if (!quiet) {
            for (const std::string& line : report.event_log) std::cout << line << "\n";
        } else {
            std::cout << report.summary().dump() << "\n";
        }
        if (!report.completed) throw ProtocolError("handshake did not complete");
    });

    // --- spa audit ---
    auto* audit_cmd = app.add_subcommand("spa-audit", "operation-trace uniformity audit");
    int audit_count = 100;
    add_curve_opt(audit_cmd);
    audit_cmd->add_option("--count", audit_count, "number of scalars");
    audit_cmd->add_option("--seed", seed_hex, "seed in hex")->required();
    int audit_rc = kExitOk;
    audit_cmd->callback(
        [&] { audit_rc = run_spa_audit(load_curve(curve_spec), audit_count, seed_hex); });

    // --- energy analysis ---
    auto* energy_cmd = app.add_subcommand("energy", "session energy analysis");
    energy_cmd->require_subcommand(1);
    AnalysisParams analysis;
    analysis.e_handshake_j = 0.150;
    analysis.e_appdata_j_per_byte = 125e-9;
    analysis.n_bytes = 32;
    analysis.t_session_s = 86400;
    analysis.t_appdata_s = 1;

    auto add_energy_opts = [&](CLI::App* cmd) {
        cmd->add_option("--Eh", analysis.e_handshake_j, "handshake energy, joules");
        cmd->add_option("--Ea", analysis.e_appdata_j_per_byte, "data energy, joules per byte");
        cmd->add_option("--N", analysis.n_bytes, "payload bytes per transmission");
        cmd->add_option("--tsession", analysis.t_session_s, "session duration, seconds");
        cmd->add_option("--tappdata", analysis.t_appdata_s, "data period, seconds");
    };
    auto* total_cmd = energy_cmd->add_subcommand("total", "single-point evaluation");
    add_energy_opts(total_cmd);
    total_cmd->callback([&] {
        EnergyBreakdown e = e_total(analysis);
        std::cout << nlohmann::json{{"e_total_j", e.total_j},
                                    {"handshake_fraction", e.handshake_fraction}}
                         .dump()
                  << "\n";
    });
    auto* contour_cmd = energy_cmd->add_subcommand("contour", "CSV sweep over N and data period");
    add_energy_opts(contour_cmd);
    contour_cmd->add_option("--out", out_path, "CSV output file (default: stdout)");
    contour_cmd->callback([&] {
        std::vector<double> n_values, periods;
        for (double n = 1; n <= 1024; n *= 2) n_values.push_back(n);
        for (double t = 1; t <= 86400; t *= 4) periods.push_back(t);
        std::string csv =
            contour_sweep(analysis, n_values, periods, {86400.0, 7 * 86400.0});
        if (out_path.empty())
            std::cout << csv;
        else
            write_file(out_path, csv);
    });

    // --- benchmarks ---
    auto* bench_cmd = app.add_subcommand("bench", "standalone protocol benchmarks");
    bench_cmd->require_subcommand(1);
    int bench_rc = kExitOk;
    for (const char* name : {"ecmqv", "schnorr", "merkle"}) {
        auto* sub = bench_cmd->add_subcommand(name);
        add_curve_opt(sub);
        sub->add_option("--seed", seed_hex)->required();
        sub->add_option("--calibration", calibration_path, "energy calibration file");
        sub->callback([&, name] {
            EnergyTable table = calibration_path.empty()
                                    ? EnergyTable::defaults()
                                    : EnergyTable::from_file(calibration_path);
            bench_rc = run_bench(name, load_curve(curve_spec), seed_hex, table);
        });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? kExitOk : kExitUsage;
    }
    if (audit_rc != kExitOk) return audit_rc;
    if (bench_rc != kExitOk) return bench_rc;
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return dispatch(argc, argv);
    } catch (const CryptoError& e) {
        std::cerr << "crypto error: " << e.what() << "\n";
        return kExitCrypto;
    } catch (const ProtocolError& e) {
        std::cerr << "protocol error: " << e.what() << "\n";
        return kExitProtocol;
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::logic_error& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIo;
    }
}
