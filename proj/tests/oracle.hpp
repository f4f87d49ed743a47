// Test-only helpers: an arbitrary-precision integer oracle (boost cpp_int)
// kept independent of the library's fixed-width arithmetic, plus a
// deterministic random source for property tests.
#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <random>
#include <string>

#include "dtlse/field.hpp"
#include "dtlse/uint256.hpp"

namespace testutil {

using BigInt = boost::multiprecision::cpp_int;

inline BigInt to_big(const dtlse::UInt256& v) { return BigInt("0x0" + v.to_hex()); }

inline dtlse::UInt256 from_big(const BigInt& v) {
    std::string hex = v.str(0, std::ios_base::hex);
    return dtlse::UInt256::from_hex(hex);
}

inline BigInt big_mod_pow(BigInt base, BigInt exp, const BigInt& m) {
    return boost::multiprecision::powm(base, exp, m);
}

/// Deterministic engine; only raw 64-bit draws are consumed so sequences are
/// identical across platforms.
class Rng {
  public:
    explicit Rng(uint64_t seed) : eng_(seed) {}

    uint64_t next_u64() { return eng_(); }

    dtlse::UInt256 next_u256() {
        dtlse::UInt256 v;
        for (auto& l : v.limb) l = eng_();
        return v;
    }

    /// Uniform-enough value in [1, bound) for property tests.
    dtlse::UInt256 next_below(const dtlse::UInt256& bound) {
        BigInt b = to_big(bound);
        BigInt v = to_big(next_u256()) % (b - 1);
        return from_big(v + 1);
    }

  private:
    std::mt19937_64 eng_;
};

}  // namespace testutil
