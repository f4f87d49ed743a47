#include <random>

#include "doctest.h"
#include "dtlse/aes.hpp"
#include "dtlse/gcm.hpp"
#include "dtlse/ledger.hpp"
#include "dtlse/sha256.hpp"
#include "oracle.hpp"

using namespace dtlse;

namespace {

// Forward-cipher inverse, test oracle only: the library ships no decryption
// round structure because GCM never needs it.
const uint8_t kSbox[256] = {
    0x63, 0x7c, 0x77, 0x7b, 0xf2, 0x6b, 0x6f, 0xc5, 0x30, 0x01, 0x67, 0x2b, 0xfe, 0xd7, 0xab,
    0x76, 0xca, 0x82, 0xc9, 0x7d, 0xfa, 0x59, 0x47, 0xf0, 0xad, 0xd4, 0xa2, 0xaf, 0x9c, 0xa4,
    0x72, 0xc0, 0xb7, 0xfd, 0x93, 0x26, 0x36, 0x3f, 0xf7, 0xcc, 0x34, 0xa5, 0xe5, 0xf1, 0x71,
    0xd8, 0x31, 0x15, 0x04, 0xc7, 0x23, 0xc3, 0x18, 0x96, 0x05, 0x9a, 0x07, 0x12, 0x80, 0xe2,
    0xeb, 0x27, 0xb2, 0x75, 0x09, 0x83, 0x2c, 0x1a, 0x1b, 0x6e, 0x5a, 0xa0, 0x52, 0x3b, 0xd6,
    0xb3, 0x29, 0xe3, 0x2f, 0x84, 0x53, 0xd1, 0x00, 0xed, 0x20, 0xfc, 0xb1, 0x5b, 0x6a, 0xcb,
    0xbe, 0x39, 0x4a, 0x4c, 0x58, 0xcf, 0xd0, 0xef, 0xaa, 0xfb, 0x43, 0x4d, 0x33, 0x85, 0x45,
    0xf9, 0x02, 0x7f, 0x50, 0x3c, 0x9f, 0xa8, 0x51, 0xa3, 0x40, 0x8f, 0x92, 0x9d, 0x38, 0xf5,
    0xbc, 0xb6, 0xda, 0x21, 0x10, 0xff, 0xf3, 0xd2, 0xcd, 0x0c, 0x13, 0xec, 0x5f, 0x97, 0x44,
    0x17, 0xc4, 0xa7, 0x7e, 0x3d, 0x64, 0x5d, 0x19, 0x73, 0x60, 0x81, 0x4f, 0xdc, 0x22, 0x2a,
    0x90, 0x88, 0x46, 0xee, 0xb8, 0x14, 0xde, 0x5e, 0x0b, 0xdb, 0xe0, 0x32, 0x3a, 0x0a, 0x49,
    0x06, 0x24, 0x5c, 0xc2, 0xd3, 0xac, 0x62, 0x91, 0x95, 0xe4, 0x79, 0xe7, 0xc8, 0x37, 0x6d,
    0x8d, 0xd5, 0x4e, 0xa9, 0x6c, 0x56, 0xf4, 0xea, 0x65, 0x7a, 0xae, 0x08, 0xba, 0x78, 0x25,
    0x2e, 0x1c, 0xa6, 0xb4, 0xc6, 0xe8, 0xdd, 0x74, 0x1f, 0x4b, 0xbd, 0x8b, 0x8a, 0x70, 0x3e,
    0xb5, 0x66, 0x48, 0x03, 0xf6, 0x0e, 0x61, 0x35, 0x57, 0xb9, 0x86, 0xc1, 0x1d, 0x9e, 0xe1,
    0xf8, 0x98, 0x11, 0x69, 0xd9, 0x8e, 0x94, 0x9b, 0x1e, 0x87, 0xe9, 0xce, 0x55, 0x28, 0xdf,
    0x8c, 0xa1, 0x89, 0x0d, 0xbf, 0xe6, 0x42, 0x68, 0x41, 0x99, 0x2d, 0x0f, 0xb0, 0x54, 0xbb,
    0x16};

uint8_t gmul(uint8_t a, uint8_t b) {
    uint8_t r = 0;
    while (b) {
        if (b & 1) r ^= a;
        bool hi = a & 0x80;
        a <<= 1;
        if (hi) a ^= 0x1b;
        b >>= 1;
    }
    return r;
}

Block128 aes_decrypt_oracle(const AesKeySchedule& ks, const Block128& ct) {
    uint8_t inv_sbox[256];
    for (int i = 0; i < 256; ++i) inv_sbox[kSbox[i]] = static_cast<uint8_t>(i);

    Block128 s = ct;
    auto add_rk = [&](int r) {
        for (int i = 0; i < 16; ++i) s[i] ^= ks.round_keys[r][i];
    };
    auto inv_shift_rows = [&] {
        Block128 t = s;
        for (int r = 1; r < 4; ++r)
            for (int c = 0; c < 4; ++c) s[r + 4 * ((c + r) % 4)] = t[r + 4 * c];
    };
    auto inv_sub = [&] {
        for (auto& b : s) b = inv_sbox[b];
    };
    auto inv_mix = [&] {
        for (int c = 0; c < 4; ++c) {
            uint8_t a0 = s[4 * c], a1 = s[4 * c + 1], a2 = s[4 * c + 2], a3 = s[4 * c + 3];
            s[4 * c] = gmul(a0, 14) ^ gmul(a1, 11) ^ gmul(a2, 13) ^ gmul(a3, 9);
            s[4 * c + 1] = gmul(a0, 9) ^ gmul(a1, 14) ^ gmul(a2, 11) ^ gmul(a3, 13);
            s[4 * c + 2] = gmul(a0, 13) ^ gmul(a1, 9) ^ gmul(a2, 14) ^ gmul(a3, 11);
            s[4 * c + 3] = gmul(a0, 11) ^ gmul(a1, 13) ^ gmul(a2, 9) ^ gmul(a3, 14);
        }
    };

    add_rk(10);
    for (int r = 9; r >= 1; --r) {
        inv_shift_rows();
        inv_sub();
        add_rk(r);
        inv_mix();
    }
    inv_shift_rows();
    inv_sub();
    add_rk(0);
    return s;
}

Block128 block_from_hex(const std::string& hex) {
    Bytes b = from_hex(hex);
    Block128 blk{};
    std::copy(b.begin(), b.end(), blk.begin());
    return blk;
}

// Bit-by-bit GF(2^128) reference independent of the library path: converts
// the reflected GCM representation to plain polynomial coefficients, does
// schoolbook carry-less multiplication, reduces mod x^128+x^7+x^2+x+1.
Block128 ghash_oracle(const Block128& x, const Block128& y) {
    auto bit_of = [](const Block128& b, int i) {  // coefficient of x^i
        return (b[i / 8] >> (7 - i % 8)) & 1;
    };
    uint8_t prod[256] = {0};
    for (int i = 0; i < 128; ++i) {
        if (!bit_of(x, i)) continue;
        for (int j = 0; j < 128; ++j) prod[i + j] ^= bit_of(y, j);
    }
    for (int i = 255; i >= 128; --i) {
        if (!prod[i]) continue;
        prod[i] = 0;
        prod[i - 128] ^= 1;
        prod[i - 127] ^= 1;
        prod[i - 126] ^= 1;
        prod[i - 121] ^= 1;
    }
    Block128 out{};
    for (int i = 0; i < 128; ++i)
        if (prod[i]) out[i / 8] |= static_cast<uint8_t>(1 << (7 - i % 8));
    return out;
}

}  // namespace

TEST_CASE("SHA2-256 known answers") {
    CHECK(to_hex(sha256({})) == "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
    Bytes abc = to_bytes("abc");
    CHECK(to_hex(sha256(abc)) == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
    Bytes two_block = to_bytes("abcdbcdecdefdefgefghfghighijhijkijkljklmklmnlmnomnopnopq");
    CHECK(to_hex(sha256(two_block)) ==
          "248d6a61d20638b8e5c026930c3e6039a33ce45964ff2167f6ecedd419db06c1");
}

TEST_CASE("SHA2-256 chunking invariance") {
    std::mt19937_64 rng(11);
    Bytes msg(300);
    for (auto& b : msg) b = static_cast<uint8_t>(rng());
    Bytes oneshot = sha256(msg);
    for (size_t chunk : {size_t{1}, size_t{7}, size_t{64}, size_t{65}}) {
        Sha256State s;
        for (size_t off = 0; off < msg.size(); off += chunk) {
            size_t n = std::min(chunk, msg.size() - off);
            s.absorb(BytesView(msg.data() + off, n));
        }
        auto d = s.finalize();
        CHECK(Bytes(d.begin(), d.end()) == oneshot);
    }
}

TEST_CASE("SHA2-256 finalize does not disturb the running state") {
    Sha256State s;
    s.absorb(to_bytes("ab"));
    auto partial = s.finalize();
    CHECK(to_hex(BytesView(partial.data(), 32)) == to_hex(sha256(to_bytes("ab"))));
    s.absorb(to_bytes("c"));
    auto full = s.finalize();
    CHECK(Bytes(full.begin(), full.end()) == sha256(to_bytes("abc")));
}

TEST_CASE("SHA2-256 ledger charges 65 cycles per block") {
    CostLedger ledger;
    {
        LedgerScope scope(ledger);
        Bytes msg(200, 0x5a);
        Sha256State s;
        s.absorb(msg);  // 3 full blocks, 8 bytes pending
        CHECK(ledger.sha_blocks == 3);
        s.finalize();  // padded copy digests one more
    }
    CHECK(ledger.sha_blocks == 4);
    CHECK(ledger.cycles_sha() == 4 * 65);
}

TEST_CASE("SHA2-256 state restore") {
    Bytes msg(150, 0xa7);
    Sha256State s;
    s.absorb(msg);
    Sha256State r = Sha256State::restore(s.chain(), s.bit_count(), s.pending());
    s.absorb(msg);
    r.absorb(msg);
    CHECK(s.finalize() == r.finalize());
    CHECK_THROWS(Sha256State::restore(s.chain(), 12, BytesView()));
}

TEST_CASE("HMAC-SHA256 known answer and properties") {
    Bytes key(20, 0x0b);
    CHECK(to_hex(hmac_sha256(key, to_bytes("Hi There"))) ==
          "b0344c61d8db38535ca8afceaf0bf12b881dc200c9833da726e9376c2e32cff7");

    // RFC-style case 2
    CHECK(to_hex(hmac_sha256(to_bytes("Jefe"), to_bytes("what do ya want for nothing?"))) ==
          "5bdcc146bf60754e6a042426089575c75a003f089d2739839dec58b964ec3843");

    Bytes long_key(65, 0x42);
    Bytes msg = to_bytes("msg");
    CHECK(hmac_sha256(long_key, msg) == hmac_sha256(sha256(long_key), msg));
    CHECK(hmac_sha256(long_key, msg) == hmac_sha256(long_key, msg));
}

TEST_CASE("AES-128 known answers") {
    auto ks = AesKeySchedule::expand(Bytes(16, 0));
    CHECK(to_hex(aes128_encrypt(ks, Block128{})) == "66e94bd4ef8a2c3b884cfa59ca342b2e");

    // FIPS-197 appendix
    auto ks2 = AesKeySchedule::expand(from_hex("000102030405060708090a0b0c0d0e0f"));
    Block128 pt = block_from_hex("00112233445566778899aabbccddeeff");
    CHECK(to_hex(aes128_encrypt(ks2, pt)) == "69c4e0d86a7b0430d8cdb78070b4c55a");

    auto ks3 = AesKeySchedule::expand(from_hex("2b7e151628aed2a6abf7158809cf4f3c"));
    Block128 pt3 = block_from_hex("3243f6a8885a308d313198a2e0370734");
    CHECK(to_hex(aes128_encrypt(ks3, pt3)) == "3925841d02dc09fbdc118597196a0b32");
}

TEST_CASE("AES-128 encrypt/decrypt-oracle identity") {
    std::mt19937_64 rng(123);
    Bytes key(16);
    for (auto& b : key) b = static_cast<uint8_t>(rng());
    auto ks = AesKeySchedule::expand(key);
    for (int i = 0; i < 200; ++i) {
        Block128 pt;
        for (auto& b : pt) b = static_cast<uint8_t>(rng());
        CHECK(aes_decrypt_oracle(ks, aes128_encrypt(ks, pt)) == pt);
    }
}

TEST_CASE("AES ledger cycles") {
    CostLedger ledger;
    {
        LedgerScope scope(ledger);
        auto ks = AesKeySchedule::expand(Bytes(16, 0));
        aes128_encrypt(ks, Block128{});
        aes128_encrypt(ks, Block128{});
    }
    CHECK(ledger.aes_blocks == 2);
    CHECK(ledger.cycles_aes() == 22);
}

TEST_CASE("GHASH annihilator and identity element") {
    std::mt19937_64 rng(5);
    Block128 one{};
    one[0] = 0x80;  // GF identity in GCM bit order
    for (int i = 0; i < 50; ++i) {
        Block128 x;
        for (auto& b : x) b = static_cast<uint8_t>(rng());
        CHECK(ghash_mul(x, Block128{}) == Block128{});
        CHECK(ghash_mul(x, one) == x);
        CHECK(ghash_mul(one, x) == x);
    }
}

TEST_CASE("GHASH matches bit-by-bit oracle and is n_h independent") {
    std::mt19937_64 rng(6);
    for (int i = 0; i < 300; ++i) {
        Block128 x, h;
        for (auto& b : x) b = static_cast<uint8_t>(rng());
        for (auto& b : h) b = static_cast<uint8_t>(rng());
        Block128 expect = ghash_oracle(x, h);
        for (unsigned n_h : {1u, 4u, 32u}) {
            GcmParams p;
            p.n_h = n_h;
            CHECK(ghash_mul(x, h, p) == expect);
        }
    }
}

TEST_CASE("GHASH distributes over xor") {
    std::mt19937_64 rng(7);
    for (int i = 0; i < 1000; ++i) {
        Block128 x, y, h;
        for (auto& b : x) b = static_cast<uint8_t>(rng());
        for (auto& b : y) b = static_cast<uint8_t>(rng());
        for (auto& b : h) b = static_cast<uint8_t>(rng());
        Block128 xy;
        for (int j = 0; j < 16; ++j) xy[j] = x[j] ^ y[j];
        Block128 lhs = ghash_mul(xy, h);
        Block128 a = ghash_mul(x, h), b = ghash_mul(y, h);
        Block128 rhs;
        for (int j = 0; j < 16; ++j) rhs[j] = a[j] ^ b[j];
        CHECK(lhs == rhs);
    }
}

TEST_CASE("GHASH standalone cycle charge is 128/n_h") {
    for (unsigned n_h : {1u, 2u, 4u, 8u, 16u, 32u, 64u, 128u}) {
        CostLedger ledger;
        {
            LedgerScope scope(ledger);
            GcmParams p;
            p.n_h = n_h;
            ghash_mul(Block128{}, Block128{}, p);
        }
        CHECK(ledger.cycles_ghash() == 128 / n_h);
    }
}

TEST_CASE("GCM known answers") {
    Bytes key(16, 0), iv(12, 0);
    auto [ct, tag] = gcm_seal(key, iv, {}, {});
    CHECK(ct.empty());
    CHECK(to_hex(tag) == "58e2fccefa7e3061367f1d57a4e7455a");

    // One zero block of plaintext under the zero key.
    auto [ct2, tag2] = gcm_seal(key, iv, {}, Bytes(16, 0));
    CHECK(to_hex(ct2) == "0388dace60b6a392f328c2b971b2fe78");
    CHECK(to_hex(tag2) == "ab6e47d42cec13bdf53a67b21257bddf");

    // NIST test case 4: key/iv/aad/pt with partial final block.
    Bytes k4 = from_hex("feffe9928665731c6d6a8f9467308308");
    Bytes iv4 = from_hex("cafebabefacedbaddecaf888");
    Bytes aad4 = from_hex("feedfacedeadbeeffeedfacedeadbeefabaddad2");
    Bytes pt4 = from_hex(
        "d9313225f88406e5a55909c5aff5269a86a7a9531534f7da2e4c303d8a318a721c3c0c95956809532fcf0e24"
        "49a6b525b16aedf5aa0de657ba637b39");
    auto [ct4, tag4] = gcm_seal(k4, iv4, aad4, pt4);
    CHECK(to_hex(ct4) ==
          "42831ec2217774244b7221b784d0d49ce3aa212f2c02a4e035c17e2329aca12e21d514b25466931c7d8f6a5a"
          "ac84aa051ba30b396a0aac973d58e091");
    CHECK(to_hex(tag4) == "5bc94fbc3221a5db94fae95ae7121a47");

    auto opened = gcm_open(k4, iv4, aad4, ct4, tag4);
    REQUIRE(opened.has_value());
    CHECK(*opened == pt4);
}

TEST_CASE("GCM round trip and truncated tags") {
    std::mt19937_64 rng(8);
    for (size_t tag_len : {size_t{4}, size_t{8}, size_t{12}, size_t{16}}) {
        GcmParams p;
        p.tag_len = tag_len;
        Bytes key(16), iv(12), aad(7), pt(33);
        for (auto& b : key) b = static_cast<uint8_t>(rng());
        for (auto& b : iv) b = static_cast<uint8_t>(rng());
        for (auto& b : aad) b = static_cast<uint8_t>(rng());
        for (auto& b : pt) b = static_cast<uint8_t>(rng());
        auto [ct, tag] = gcm_seal(key, iv, aad, pt, p);
        CHECK(tag.size() == tag_len);
        auto back = gcm_open(key, iv, aad, ct, tag, p);
        REQUIRE(back.has_value());
        CHECK(*back == pt);
    }
}

TEST_CASE("GCM rejects any single-bit mutation") {
    std::mt19937_64 rng(9);
    Bytes key(16), iv(12), aad(9), pt(40);
    for (auto& b : key) b = static_cast<uint8_t>(rng());
    for (auto& b : iv) b = static_cast<uint8_t>(rng());
    for (auto& b : aad) b = static_cast<uint8_t>(rng());
    for (auto& b : pt) b = static_cast<uint8_t>(rng());
    auto [ct, tag] = gcm_seal(key, iv, aad, pt);

    int accepted = 0;
    for (int trial = 0; trial < 1000; ++trial) {
        Bytes iv2 = iv, aad2 = aad, ct2 = ct, tag2 = tag;
        size_t domain = rng() % 4;
        auto flip = [&](Bytes& v) {
            size_t bit = rng() % (v.size() * 8);
            v[bit / 8] ^= static_cast<uint8_t>(1 << (bit % 8));
        };
        switch (domain) {
            case 0: flip(iv2); break;
            case 1: flip(aad2); break;
            case 2: flip(ct2); break;
            case 3: flip(tag2); break;
        }
        if (gcm_open(key, iv2, aad2, ct2, tag2).has_value()) ++accepted;
    }
    CHECK(accepted == 0);
}

TEST_CASE("GCM cycle formula 54 + 32(m+n)") {
    Bytes key(16, 1), iv(12, 2);

    CostLedger empty_ledger;
    {
        LedgerScope scope(empty_ledger);
        gcm_seal(key, iv, {}, {});
    }
    CHECK(empty_ledger.cycles_gcm() == 54);

    // One aad block, two plaintext blocks.
    CostLedger ledger;
    {
        LedgerScope scope(ledger);
        gcm_seal(key, iv, Bytes(16, 3), Bytes(32, 4));
    }
    CHECK(ledger.cycles_gcm() == 54 + 32 * 3);

    // Charge depends only on lengths, not content.
    CostLedger a, b;
    {
        LedgerScope scope(a);
        gcm_seal(key, iv, Bytes(20, 0xaa), Bytes(45, 0xbb));
    }
    {
        LedgerScope scope(b);
        gcm_seal(key, iv, Bytes(20, 0x11), Bytes(45, 0x22));
    }
    CHECK(a.cycles_gcm() == b.cycles_gcm());
    CHECK(a.cycles_gcm() == 54 + 32 * (2 + 3));

    CHECK_THROWS_AS(gcm_seal(key, Bytes(11, 0), {}, {}), std::invalid_argument);
}
