// dtlse: software model of a reconfigurable DTLS 1.3 cryptographic engine
// Copyright 2026 The dtlse Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <string>
#include <string_view>
#include <vector>

#include "dtlse/field.hpp"

namespace dtlse {

enum class CurveForm { ShortWeierstrass, Montgomery };

class AffinePoint {
  public:
    AffinePoint() = default;  // infinity
    AffinePoint(FieldElement x, FieldElement y) : inf_(false), x_(std::move(x)), y_(std::move(y)) {}

    static AffinePoint infinity() { return AffinePoint(); }

    bool is_infinity() const { return inf_; }
    const FieldElement& x() const { return x_; }
    const FieldElement& y() const { return y_; }

    friend bool operator==(const AffinePoint& a, const AffinePoint& b) {
        if (a.inf_ || b.inf_) return a.inf_ == b.inf_;
        return a.x_ == b.x_ && a.y_ == b.y_;
    }

  private:
    bool inf_ = true;
    FieldElement x_, y_;
};

/// Reconfigurable curve description. Montgomery parameters are accepted and
/// converted to short-Weierstrass form at construction; all arithmetic runs
/// on the converted coefficients.
struct CurveParams {
    std::string name;
    FieldCtxPtr field;   // prime p, bit length field->t
    FieldElement a, b;   // y^2 = x^3 + ax + b
    UInt256 n;           // order of the generator, odd prime
    unsigned nt = 0;     // bit length of n
    FieldCtxPtr scalar_field;  // arithmetic mod n for signatures
    AffinePoint generator;
    unsigned cofactor = 1;

    static CurveParams make(CurveForm form, const UInt256& p, const UInt256& a, const UInt256& b,
                            const UInt256& n, const UInt256& gx, const UInt256& gy,
                            unsigned cofactor, std::string name = {});

    /// Named presets: p160, p192, p224, p256 (NIST/SEC parameters) and the
    /// 28-point toy curve "toy23" used for exhaustive tests.
    static const CurveParams& preset(std::string_view name);
    static std::vector<std::string> preset_names();

    /// key=value description file: form, p, a, b, n, Gx, Gy, cofactor.
    static CurveParams from_file(const std::string& path);
    static CurveParams from_text(std::string_view text, std::string name = {});
};

bool on_curve(const CurveParams& c, const AffinePoint& p);

/// Group addition in affine coordinates. Handles the identity, doubling and
/// inverse cases; the generic path costs exactly 2 MUL + 1 INV (the slope is
/// produced directly by the Euclidean divider). Appends one ADD_PT tag.
AffinePoint point_add(const CurveParams& c, const AffinePoint& p, const AffinePoint& q);

/// Doubling: 3 MUL + 1 INV generic (square, slope division, square; the 3x^2
/// numerator is assembled by additions). Appends one DBL_PT tag.
AffinePoint point_dbl(const CurveParams& c, const AffinePoint& p);

AffinePoint point_neg(const CurveParams& c, const AffinePoint& p);

/// Zero-less signed-digit scalar: t digits in {+1,-1} encoding the adjusted
/// scalar k' = k+1 (k even) or k+2 (k odd), most significant digit +1. The
/// recorded correction undoes the adjustment after the multiplication.
struct ZsdScalar {
    enum class Correction { SubP, Sub2P };

    std::vector<int8_t> digits;  // index i holds digit for weight 2^i
    Correction correction = Correction::SubP;

    /// Digit at weight 2^i of the scalar left-padded to `padded_len` digits:
    /// the top digit is +1, padding digits are -1, preserving the value.
    int digit(unsigned i, unsigned padded_len) const;

    /// Reconstructed adjusted scalar k' (the encoding identity).
    UInt256 adjusted_value() const;
};

/// Encodes 0 < k < 2^t - 1 over t digits. The compact form is read straight
/// off the bits of k': digit i is +1 when bit i+1 of k' is set.
ZsdScalar zsd_encode(const UInt256& k, unsigned t);

/// Precomputed comb data for one base point: w = 4 rows with tooth spacing
/// d = ceil(t/4), 8 stored points for the sign patterns with the top row
/// fixed at +1 (negation symmetry covers the other 8), plus the base and its
/// double for the final correction step.
struct CombTable {
    AffinePoint base;
    AffinePoint two_base;
    unsigned d = 0;
    unsigned t = 0;  // scalar bit length this table serves
    std::array<AffinePoint, 8> points;

    /// Point for pattern (s0,s1,s2,s3), each +-1: sum of s_i * 2^(i*d) * base.
    /// Realized as a stored-point fetch plus a constant-shape negation select.
    AffinePoint lookup(int s0, int s1, int s2, int s3, const CurveParams& c) const;
};

/// Builds the 8 signed-pattern points: 3d doublings for the row bases and a
/// shared-subexpression tree of 14 additions for the combinations.
CombTable comb_precompute(const CurveParams& c, const AffinePoint& p);

/// SPA-uniform comb scalar multiplication: exactly d double-and-add
/// iterations whatever the scalar (the first runs on the identity), one
/// constant-shape table select per iteration, then one point-subtract of the
/// selected correction pre-point. The point-op tag sequence is identical for
/// any two scalars of equal length.
AffinePoint ecsm(const UInt256& k, const CombTable& table, const CurveParams& c);

/// Reference MSB-first double-and-add ladder. Deliberately leaky: the trace
/// carries an ADD_PT exactly where the corresponding scalar bit is 1, which
/// is what a single power trace exposes.
AffinePoint ecsm_naive(const CurveParams& c, const UInt256& k, const AffinePoint& p);

/// Six comb-table slots. Pinned entries (generator and long-lived public
/// keys) are never evicted; transient acquisitions recycle the least
/// recently used free slot.
class PointCache {
  public:
    static constexpr size_t kSlots = 6;

    /// Builds and pins a table. Call outside any ledger scope to model a
    /// warm cache whose precomputation was amortized earlier.
    const CombTable& install_pinned(const CurveParams& c, const AffinePoint& p);

    /// Cached table for the point, building into a free slot on miss.
    const CombTable& acquire(const CurveParams& c, const AffinePoint& p);

    const CombTable* find(const AffinePoint& p) const;
    size_t occupied() const;

  private:
    struct Slot {
        bool used = false;
        bool pinned = false;
        uint64_t last_used = 0;
        CombTable table;
    };
    std::array<Slot, kSlots> slots_;
    uint64_t clock_ = 0;
};

}  // namespace dtlse
