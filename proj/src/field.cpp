// dtlse: software model of a reconfigurable DTLS 1.3 cryptographic engine
// Copyright 2026 The dtlse Authors.
// SPDX-License-Identifier: Apache-2.0
#include "dtlse/field.hpp"

#include <stdexcept>

#include "dtlse/ledger.hpp"
#include "dtlse/trace.hpp"

namespace dtlse {

namespace {

void require_same_field(const FieldElement& a, const FieldElement& b) {
    if (!a.ctx() || !b.ctx() || !same_field(*a.ctx(), *b.ctx()))
        throw std::invalid_argument("field context mismatch");
}

/// 258-bit accumulator for the interleaved multiplier: a full-width limb
/// vector plus a small overflow word. The running value never exceeds 3p.
struct Accumulator {
    UInt256 lo;
    uint64_t hi = 0;

    void shift_left() {
        hi = hi << 1 | lo.limb[3] >> 63;
        lo = shl1(lo);
    }
    void add(const UInt256& b, uint64_t mask) {
        UInt256 masked;
        for (int i = 0; i < 4; ++i) masked.limb[i] = b.limb[i] & mask;
        hi += add_carry(lo, masked, lo) ? 1 : 0;
    }
    /// One conditional subtraction: the difference is always computed, then
    /// selected only when the accumulator is >= p.
    void conditional_subtract(const UInt256& p) {
        UInt256 diff;
        bool borrow = sub_borrow(lo, p, diff);
        bool ge = hi != 0 || !borrow;
        lo = select(ge, lo, diff);
        hi -= (ge && borrow) ? 1 : 0;
    }
};

/// v mod p for arbitrary 256-bit v, shift-subtract long division. Boundary
/// plumbing only, no instrumentation.
UInt256 reduce_full(const UInt256& v, const UInt256& p) {
    if (v < p) return v;
    unsigned shift = v.bit_length() - p.bit_length();
    UInt256 r = v;
    UInt256 m = shl(p, shift);
    for (unsigned i = 0; i <= shift; ++i) {
        UInt256 d;
        if (!sub_borrow(r, m, d)) r = d;
        m = shr1(m);
    }
    return r;
}

}  // namespace

FieldCtxPtr make_field(const UInt256& p) {
    if (p.is_even() || p < UInt256(3)) throw std::invalid_argument("modulus must be odd and >= 3");
    auto ctx = std::make_shared<FieldCtx>();
    ctx->p = p;
    ctx->t = p.bit_length();
    return ctx;
}

FieldElement::FieldElement(FieldCtxPtr ctx, const UInt256& v) : v_(v), ctx_(std::move(ctx)) {
    if (!ctx_) throw std::invalid_argument("null field context");
    if (!(v_ < ctx_->p)) throw std::invalid_argument("residue out of range");
}

FieldElement FieldElement::reduced(FieldCtxPtr ctx, const UInt256& v) {
    if (!ctx) throw std::invalid_argument("null field context");
    UInt256 r = reduce_full(v, ctx->p);
    return FieldElement(std::move(ctx), r);
}

FieldElement mod_add(const FieldElement& a, const FieldElement& b) {
    require_same_field(a, b);
    const UInt256& p = a.ctx()->p;
    UInt256 sum;
    bool carry = add_carry(a.value(), b.value(), sum);
    UInt256 diff;
    bool borrow = sub_borrow(sum, p, diff);
    sum = select(carry || !borrow, sum, diff);
    trace_op(Op::Add);
    if (CostLedger* l = active_ledger()) l->record_mod_add();
    return FieldElement(a.ctx(), sum);
}

FieldElement mod_sub(const FieldElement& a, const FieldElement& b) {
    require_same_field(a, b);
    const UInt256& p = a.ctx()->p;
    UInt256 diff;
    bool borrow = sub_borrow(a.value(), b.value(), diff);
    UInt256 wrapped;
    add_carry(diff, p, wrapped);
    diff = select(borrow, diff, wrapped);
    trace_op(Op::Sub);
    if (CostLedger* l = active_ledger()) l->record_mod_add();
    return FieldElement(a.ctx(), diff);
}

FieldElement mod_neg(const FieldElement& a) {
    if (!a.ctx()) throw std::invalid_argument("detached field element");
    const UInt256& p = a.ctx()->p;
    UInt256 diff;
    sub_borrow(p, a.value(), diff);
    diff = select(a.is_zero(), diff, UInt256());
    trace_op(Op::Sub);
    if (CostLedger* l = active_ledger()) l->record_mod_add();
    return FieldElement(a.ctx(), diff);
}

FieldElement mod_mul(const FieldElement& a, const FieldElement& b) {
    require_same_field(a, b);
    const FieldCtx& f = *a.ctx();
    Accumulator acc;
    for (unsigned i = f.t; i-- > 0;) {
        acc.shift_left();
        acc.add(b.value(), 0 - static_cast<uint64_t>(a.value().bit(i)));
        acc.conditional_subtract(f.p);
        acc.conditional_subtract(f.p);
    }
    trace_op(Op::Mul);
    if (CostLedger* l = active_ledger()) l->record_mod_mul(f.t);
    return FieldElement(a.ctx(), acc.lo);
}

FieldElement mod_div(const FieldElement& num, const FieldElement& den) {
    require_same_field(num, den);
    if (den.is_zero()) throw std::domain_error("division by zero residue");
    const UInt256& p = num.ctx()->p;

    UInt256 u = den.value(), v = p;
    UInt256 x1 = num.value(), x2{};
    uint64_t steps = 0;

    // Each single-bit shift and each subtraction is one step; making an odd
    // companion value even (adding p before the halving) is one more.
    auto halve = [&](UInt256& w, UInt256& x) {
        w = shr1(w);
        ++steps;
        if (!x.is_even()) {
            uint64_t carry = add_carry(x, p, x) ? 1 : 0;
            x = shr1(x);
            x.limb[3] |= carry << 63;
            ++steps;
        } else {
            x = shr1(x);
        }
    };
    auto sub_mod = [&](UInt256& w, const UInt256& s, UInt256& x, const UInt256& y) {
        UInt256 d;
        sub_borrow(w, s, d);
        w = d;
        if (sub_borrow(x, y, d)) add_carry(d, p, d);
        x = d;
        ++steps;
    };

    while (u != UInt256(1) && v != UInt256(1)) {
        while (u.is_even()) halve(u, x1);
        while (v.is_even()) halve(v, x2);
        if (u >= v)
            sub_mod(u, v, x1, x2);
        else
            sub_mod(v, u, x2, x1);
    }
    UInt256 r = (u == UInt256(1)) ? x1 : x2;

    trace_op(Op::Inv);
    if (CostLedger* l = active_ledger()) l->record_inv(steps);
    return FieldElement(num.ctx(), r);
}

FieldElement mod_inv_euclid(const FieldElement& a) {
    if (!a.ctx()) throw std::invalid_argument("detached field element");
    if (a.is_zero()) throw std::domain_error("zero residue is not invertible");
    return mod_div(FieldElement(a.ctx(), UInt256(1)), a);
}

FieldElement mod_inv_fermat(const FieldElement& a) {
    if (!a.ctx()) throw std::invalid_argument("detached field element");
    if (a.is_zero()) throw std::domain_error("zero residue is not invertible");
    UInt256 e;
    sub_borrow(a.ctx()->p, UInt256(2), e);
    FieldElement r = a;
    for (unsigned i = e.bit_length() - 1; i-- > 0;) {
        r = mod_mul(r, r);
        if (e.bit(i)) r = mod_mul(r, a);
    }
    return r;
}

}  // namespace dtlse
