// dtlse: software model of a reconfigurable DTLS 1.3 cryptographic engine
// Copyright 2026 The dtlse Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <memory>

#include "dtlse/uint256.hpp"

namespace dtlse {

/// Runtime-configurable prime field. `p` must be odd and at least 3; `t` is
/// the bit length of `p`. Primality itself is not verified, matching the
/// trust model of an accelerator that is handed its parameters.
struct FieldCtx {
    UInt256 p;
    unsigned t = 0;
};

using FieldCtxPtr = std::shared_ptr<const FieldCtx>;

/// Builds a field context, rejecting even or degenerate moduli.
FieldCtxPtr make_field(const UInt256& p);

inline bool same_field(const FieldCtx& a, const FieldCtx& b) { return &a == &b || a.p == b.p; }

/// Residue bound to a field context. Immutable value; all operations return
/// fresh elements. A default-constructed element is detached and only valid
/// as an assignment target.
class FieldElement {
  public:
    FieldElement() = default;
    FieldElement(FieldCtxPtr ctx, const UInt256& v);  // requires v < p

    /// Reduces an arbitrary 256-bit value into the field. Plumbing helper for
    /// parsing external inputs; performs no cycle or trace accounting.
    static FieldElement reduced(FieldCtxPtr ctx, const UInt256& v);

    const UInt256& value() const { return v_; }
    const FieldCtxPtr& ctx() const { return ctx_; }
    bool is_zero() const { return v_.is_zero(); }

    friend bool operator==(const FieldElement& a, const FieldElement& b) {
        return a.v_ == b.v_ && (a.ctx_ == b.ctx_ || (a.ctx_ && b.ctx_ && a.ctx_->p == b.ctx_->p));
    }

  private:
    UInt256 v_;
    FieldCtxPtr ctx_;
};

/// (a + b) mod p. One ADD tag, one cycle.
FieldElement mod_add(const FieldElement& a, const FieldElement& b);
/// (a - b) mod p. One SUB tag, one cycle.
FieldElement mod_sub(const FieldElement& a, const FieldElement& b);
/// p - a (a itself for zero). One SUB tag, one cycle.
FieldElement mod_neg(const FieldElement& a);

/// (a * b) mod p by interleaved modular reduction: the t bits of `a` are
/// consumed most significant first, and every iteration performs exactly one
/// shift-and-add followed by two compute-then-select conditional subtractions
/// of p. The per-iteration operation sequence is identical for all operand
/// values. One MUL tag, t cycles.
FieldElement mod_mul(const FieldElement& a, const FieldElement& b);

/// num / den mod p by the binary extended Euclidean algorithm, built from
/// additions, subtractions and single-bit shifts. The step count is data
/// dependent and is charged to the ledger as measured; the trace receives a
/// single INV tag regardless of the internal iteration count.
FieldElement mod_div(const FieldElement& num, const FieldElement& den);

/// 1 / a mod p via mod_div. Errors on a = 0.
FieldElement mod_inv_euclid(const FieldElement& a);

/// a^(p-2) mod p by square-and-multiply over mod_mul. Slow path kept as an
/// in-repo cross-check for the Euclidean inverter; the ledger accumulates the
/// underlying multiplications (around 1.5t of them).
FieldElement mod_inv_fermat(const FieldElement& a);

}  // namespace dtlse
