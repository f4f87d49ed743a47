#include "doctest.h"
#include "dtlse/uint256.hpp"
#include "oracle.hpp"

using namespace dtlse;
using testutil::BigInt;

TEST_CASE("uint256 hex round trip") {
    UInt256 v = UInt256::from_hex("ffffffff00000001000000000000000000000000ffffffffffffffffffffffff");
    CHECK(v.to_hex() == "ffffffff00000001000000000000000000000000ffffffffffffffffffffffff");
    CHECK(UInt256::from_hex("0").is_zero());
    CHECK(UInt256::from_hex("1") == UInt256(1));
    CHECK(UInt256(0xabcd).to_hex() == "abcd");
}

TEST_CASE("uint256 big-endian serialization is fixed 32 bytes") {
    UInt256 v(0x1122);
    Bytes b = v.to_bytes_be();
    REQUIRE(b.size() == 32);
    CHECK(b[30] == 0x11);
    CHECK(b[31] == 0x22);
    CHECK(UInt256::from_bytes_be(b) == v);
}

TEST_CASE("uint256 arithmetic matches arbitrary-precision oracle") {
    testutil::Rng rng(42);
    BigInt two256 = BigInt(1) << 256;
    for (int i = 0; i < 2000; ++i) {
        UInt256 a = rng.next_u256(), b = rng.next_u256();
        BigInt ba = testutil::to_big(a), bb = testutil::to_big(b);

        UInt256 sum;
        bool carry = add_carry(a, b, sum);
        CHECK(testutil::to_big(sum) == (ba + bb) % two256);
        CHECK(carry == (ba + bb >= two256));

        UInt256 diff;
        bool borrow = sub_borrow(a, b, diff);
        CHECK(testutil::to_big(diff) == (ba - bb + two256) % two256);
        CHECK(borrow == (ba < bb));

        CHECK((a < b) == (ba < bb));
        CHECK(testutil::to_big(shl1(a)) == (ba << 1) % two256);
        CHECK(testutil::to_big(shr1(a)) == ba >> 1);
        unsigned k = static_cast<unsigned>(rng.next_u64() % 256);
        CHECK(testutil::to_big(shl(a, k)) == (ba << k) % two256);
        CHECK(testutil::to_big(shr(a, k)) == ba >> k);
    }
}

TEST_CASE("uint256 bit helpers") {
    UInt256 v = UInt256::from_hex("8000000000000001");
    CHECK(v.bit_length() == 64);
    CHECK(v.bit(0));
    CHECK(v.bit(63));
    CHECK_FALSE(v.bit(32));
    CHECK(UInt256().bit_length() == 0);
    CHECK(UInt256(1).bit_length() == 1);

    UInt256 s;
    s.set_bit(200);
    CHECK(s.bit_length() == 201);

    CHECK(select(false, UInt256(5), UInt256(9)) == UInt256(5));
    CHECK(select(true, UInt256(5), UInt256(9)) == UInt256(9));
}
