// dtlse: software model of a reconfigurable DTLS 1.3 cryptographic engine
// Copyright 2026 The dtlse Authors.
// SPDX-License-Identifier: Apache-2.0
#include "dtlse/curve.hpp"

#include <stdexcept>

#include "dtlse/config.hpp"
#include "dtlse/errors.hpp"
#include "dtlse/ledger.hpp"
#include "dtlse/trace.hpp"

namespace dtlse {

namespace {

void require_on_same_field(const CurveParams& c, const AffinePoint& p) {
    if (p.is_infinity()) return;
    if (!p.x().ctx() || !same_field(*p.x().ctx(), *c.field))
        throw std::invalid_argument("point does not belong to this curve's field");
}

AffinePoint dbl_impl(const CurveParams& c, const AffinePoint& p) {
    if (p.is_infinity()) return p;
    if (p.y().is_zero()) return AffinePoint::infinity();

    FieldElement x_sq = mod_mul(p.x(), p.x());
    FieldElement num = mod_add(mod_add(x_sq, x_sq), x_sq);  // 3x^2 by additions
    num = mod_add(num, c.a);
    FieldElement den = mod_add(p.y(), p.y());
    FieldElement lambda = mod_div(num, den);
    FieldElement l_sq = mod_mul(lambda, lambda);
    FieldElement x3 = mod_sub(mod_sub(l_sq, p.x()), p.x());
    FieldElement y3 = mod_sub(mod_mul(lambda, mod_sub(p.x(), x3)), p.y());
    return AffinePoint(std::move(x3), std::move(y3));
}

AffinePoint add_impl(const CurveParams& c, const AffinePoint& p, const AffinePoint& q) {
    if (p.is_infinity()) return q;
    if (q.is_infinity()) return p;
    if (p.x() == q.x()) {
        if (p.y() == q.y()) return dbl_impl(c, p);
        return AffinePoint::infinity();  // q = -p
    }
    FieldElement lambda = mod_div(mod_sub(q.y(), p.y()), mod_sub(q.x(), p.x()));
    FieldElement l_sq = mod_mul(lambda, lambda);
    FieldElement x3 = mod_sub(mod_sub(l_sq, p.x()), q.x());
    FieldElement y3 = mod_sub(mod_mul(lambda, mod_sub(p.x(), x3)), p.y());
    return AffinePoint(std::move(x3), std::move(y3));
}

/// Constant-shape choice between two finite points. One CSEL tag.
AffinePoint select_point(bool take_second, const AffinePoint& a, const AffinePoint& b,
                         const CurveParams& c) {
    trace_op(Op::Csel);
    UInt256 x = select(take_second, a.x().value(), b.x().value());
    UInt256 y = select(take_second, a.y().value(), b.y().value());
    return AffinePoint(FieldElement(c.field, x), FieldElement(c.field, y));
}

struct PresetDef {
    const char* name;
    const char* p;
    const char* a;
    const char* b;
    const char* n;
    const char* gx;
    const char* gy;
    unsigned cofactor;
};

// SEC/NIST short-Weierstrass parameters for 160/192/224/256-bit primes, plus
// a 28-point toy curve whose order-7 subgroup supports exhaustive checks.
constexpr PresetDef kPresets[] = {
    {"p160", "ffffffffffffffffffffffffffffffff7fffffff",
     "ffffffffffffffffffffffffffffffff7ffffffc", "1c97befc54bd7a8b65acf89f81d4d4adc565fa45",
     "0100000000000000000001f4c8f927aed3ca752257", "4a96b5688ef573284664698968c38bb913cbfc82",
     "23a628553168947d59dcc912042351377ac5fb32", 1},
    {"p192", "fffffffffffffffffffffffffffffffeffffffffffffffff",
     "fffffffffffffffffffffffffffffffefffffffffffffffc",
     "64210519e59c80e70fa7e9ab72243049feb8deecc146b9b1",
     "ffffffffffffffffffffffff99def836146bc9b1b4d22831",
     "188da80eb03090f67cbf20eb43a18800f4ff0afd82ff1012",
     "07192b95ffc8da78631011ed6b24cdd573f977a11e794811", 1},
    {"p224", "ffffffffffffffffffffffffffffffff000000000000000000000001",
     "fffffffffffffffffffffffffffffffefffffffffffffffffffffffe",
     "b4050a850c04b3abf54132565044b0b7d7bfd8ba270b39432355ffb4",
     "ffffffffffffffffffffffffffff16a2e0b8f03e13dd29455c5c2a3d",
     "b70e0cbd6bb4bf7f321390b94a03c1d356c21122343280d6115c1d21",
     "bd376388b5f723fb4c22dfe6cd4375a05a07476444d5819985007e34", 1},
    {"p256", "ffffffff00000001000000000000000000000000ffffffffffffffffffffffff",
     "ffffffff00000001000000000000000000000000fffffffffffffffffffffffc",
     "5ac635d8aa3a93e7b3ebbd55769886bc651d06b0cc53b0f63bce3c3e27d2604b",
     "ffffffff00000000ffffffffffffffffbce6faada7179e84f3b9cac2fc632551",
     "6b17d1f2e12c4247f8bce6e563a440f277037d812deb33a0f4a13945d898c296",
     "4fe342e2fe1a7f9b8ee7eb4a7c0f9e162bce33576b315ececbb6406837bf51f5", 1},
    {"toy23", "17", "1", "1", "7", "11", "3", 4},
};

}  // namespace

CurveParams CurveParams::make(CurveForm form, const UInt256& p, const UInt256& a, const UInt256& b,
                              const UInt256& n, const UInt256& gx, const UInt256& gy,
                              unsigned cofactor, std::string name) {
    // Construction is setup work, not engine computation.
    LedgerPause lp;
    TracePause tp;

    CurveParams c;
    c.name = std::move(name);
    c.field = make_field(p);
    c.scalar_field = make_field(n);
    c.n = n;
    c.nt = n.bit_length();
    if (cofactor == 0) throw std::invalid_argument("cofactor must be positive");
    c.cofactor = cofactor;

    FieldElement fa(c.field, a), fb(c.field, b);
    FieldElement x(c.field, gx), y(c.field, gy);

    if (form == CurveForm::Montgomery) {
        // B y^2 = x^3 + A x^2 + x  with (A, B) in the a/b slots, mapped to
        // u = (3x + A) / 3B, v = y / B,
        // a = (3 - A^2) / 3B^2, b = (2A^3 - 9A) / 27B^3.
        const FieldElement& A = fa;
        const FieldElement& B = fb;
        FieldElement three(c.field, UInt256(3));
        FieldElement nine = mod_mul(three, three);
        FieldElement a_sq = mod_mul(A, A);
        FieldElement b_sq = mod_mul(B, B);
        FieldElement three_b_sq = mod_mul(three, b_sq);
        FieldElement new_a = mod_div(mod_sub(three, a_sq), three_b_sq);
        FieldElement two_a_cub = mod_mul(mod_add(a_sq, a_sq), A);
        FieldElement num_b = mod_sub(two_a_cub, mod_mul(nine, A));
        FieldElement den_b = mod_mul(mod_mul(nine, three), mod_mul(b_sq, B));
        FieldElement new_b = mod_div(num_b, den_b);
        FieldElement u = mod_div(mod_add(mod_add(mod_add(x, x), x), A), mod_mul(three, B));
        FieldElement v = mod_div(y, B);
        fa = new_a;
        fb = new_b;
        x = u;
        y = v;
    }

    c.a = fa;
    c.b = fb;
    c.generator = AffinePoint(x, y);

    // 4a^3 + 27b^2 != 0 keeps the curve non-singular.
    FieldElement a_cub = mod_mul(mod_mul(c.a, c.a), c.a);
    FieldElement four_a_cub = mod_add(mod_add(a_cub, a_cub), mod_add(a_cub, a_cub));
    FieldElement b_sq = mod_mul(c.b, c.b);
    FieldElement disc = four_a_cub;
    for (int i = 0; i < 27; ++i) disc = mod_add(disc, b_sq);
    if (disc.is_zero()) throw std::invalid_argument("singular curve");

    if (!on_curve(c, c.generator)) throw std::invalid_argument("generator not on curve");
    return c;
}

const CurveParams& CurveParams::preset(std::string_view name) {
    static std::vector<CurveParams>* cache = [] {
        auto* v = new std::vector<CurveParams>;
        for (const PresetDef& d : kPresets) {
            v->push_back(make(CurveForm::ShortWeierstrass, UInt256::from_hex(d.p),
                              UInt256::from_hex(d.a), UInt256::from_hex(d.b),
                              UInt256::from_hex(d.n), UInt256::from_hex(d.gx),
                              UInt256::from_hex(d.gy), d.cofactor, d.name));
        }
        return v;
    }();
    for (const CurveParams& c : *cache) {
        if (c.name == name) return c;
    }
    throw std::invalid_argument("unknown curve preset: " + std::string(name));
}

std::vector<std::string> CurveParams::preset_names() {
    std::vector<std::string> names;
    for (const PresetDef& d : kPresets) names.emplace_back(d.name);
    return names;
}

CurveParams CurveParams::from_text(std::string_view text, std::string name) {
    auto kv = parse_kv(text);
    auto get = [&](const char* key) -> const std::string& {
        auto it = kv.find(key);
        if (it == kv.end())
            throw std::invalid_argument("curve file: missing key '" + std::string(key) + "'");
        return it->second;
    };
    CurveForm form;
    const std::string& f = get("form");
    if (f == "weierstrass")
        form = CurveForm::ShortWeierstrass;
    else if (f == "montgomery")
        form = CurveForm::Montgomery;
    else
        throw std::invalid_argument("curve file: form must be weierstrass or montgomery");

    return make(form, UInt256::from_hex(get("p")), UInt256::from_hex(get("a")),
                UInt256::from_hex(get("b")), UInt256::from_hex(get("n")),
                UInt256::from_hex(get("Gx")), UInt256::from_hex(get("Gy")),
                static_cast<unsigned>(std::stoul(get("cofactor"))), std::move(name));
}

CurveParams CurveParams::from_file(const std::string& path) {
    return from_text(read_file(path), path);
}

bool on_curve(const CurveParams& c, const AffinePoint& p) {
    if (p.is_infinity()) return true;
    if (!p.x().ctx() || !same_field(*p.x().ctx(), *c.field)) return false;
    LedgerPause lp;
    TracePause tp;
    FieldElement lhs = mod_mul(p.y(), p.y());
    FieldElement rhs = mod_add(mod_mul(mod_mul(p.x(), p.x()), p.x()),
                               mod_add(mod_mul(c.a, p.x()), c.b));
    return lhs == rhs;
}

AffinePoint point_add(const CurveParams& c, const AffinePoint& p, const AffinePoint& q) {
    require_on_same_field(c, p);
    require_on_same_field(c, q);
    trace_op(Op::AddPt);
    if (CostLedger* l = active_ledger()) l->record_point_add();
    return add_impl(c, p, q);
}

AffinePoint point_dbl(const CurveParams& c, const AffinePoint& p) {
    require_on_same_field(c, p);
    trace_op(Op::DblPt);
    if (CostLedger* l = active_ledger()) l->record_point_dbl();
    return dbl_impl(c, p);
}

AffinePoint point_neg(const CurveParams& c, const AffinePoint& p) {
    require_on_same_field(c, p);
    if (p.is_infinity()) return p;
    return AffinePoint(p.x(), mod_neg(p.y()));
}

int ZsdScalar::digit(unsigned i, unsigned padded_len) const {
    unsigned t = static_cast<unsigned>(digits.size());
    if (i == padded_len - 1) return 1;
    if (i + 1 < t) return digits[i];
    return -1;
}

UInt256 ZsdScalar::adjusted_value() const {
    unsigned t = static_cast<unsigned>(digits.size());
    UInt256 plus_mask;
    for (unsigned i = 0; i < t; ++i) {
        if (digits[i] > 0) plus_mask.set_bit(i);
    }
    // sum = 2m - (2^t - 1); wraparound arithmetic is exact because the sum
    // is known to fit.
    UInt256 v = shl1(plus_mask);
    add_carry(v, UInt256(1), v);
    UInt256 two_t = shl(UInt256(1), t);
    sub_borrow(v, two_t, v);
    return v;
}

ZsdScalar zsd_encode(const UInt256& k, unsigned t) {
    if (k.is_zero()) throw std::invalid_argument("scalar must be nonzero");
    if (t == 0 || t > 256) throw std::invalid_argument("invalid digit length");

    ZsdScalar z;
    UInt256 adjusted;
    bool overflow;
    if (k.is_even()) {
        overflow = add_carry(k, UInt256(1), adjusted);
        z.correction = ZsdScalar::Correction::SubP;
    } else {
        overflow = add_carry(k, UInt256(2), adjusted);
        z.correction = ZsdScalar::Correction::Sub2P;
    }
    if (overflow || adjusted.bit_length() > t)
        throw std::invalid_argument("scalar out of range for digit length");

    z.digits.resize(t);
    z.digits[t - 1] = 1;
    for (unsigned i = 0; i + 1 < t; ++i) z.digits[i] = adjusted.bit(i + 1) ? 1 : -1;
    return z;
}

AffinePoint CombTable::lookup(int s0, int s1, int s2, int s3, const CurveParams& c) const {
    bool negate = s3 < 0;
    unsigned idx = 0;
    if ((negate ? -s0 : s0) > 0) idx |= 1;
    if ((negate ? -s1 : s1) > 0) idx |= 2;
    if ((negate ? -s2 : s2) > 0) idx |= 4;
    const AffinePoint& entry = points[idx];

    trace_op(Op::Csel);
    if (entry.is_infinity()) return entry;  // only reachable on tiny groups
    FieldElement neg_y = mod_neg(entry.y());
    UInt256 y = select(negate, entry.y().value(), neg_y.value());
    return AffinePoint(entry.x(), FieldElement(c.field, y));
}

CombTable comb_precompute(const CurveParams& c, const AffinePoint& p) {
    if (p.is_infinity()) throw std::invalid_argument("cannot precompute the identity");
    require_on_same_field(c, p);
    CostLedger* ledger = active_ledger();
    uint64_t cycles_before = ledger ? ledger->cycles_total() : 0;

    CombTable tb;
    tb.d = (c.nt + 3) / 4;
    tb.t = c.nt;
    tb.base = p;

    // Row bases 2^(i*d) * P by 3d doublings; the first doubling also yields
    // the 2P correction pre-point.
    AffinePoint rows[4];
    rows[0] = p;
    AffinePoint cur = p;
    for (unsigned r = 1; r < 4; ++r) {
        for (unsigned i = 0; i < tb.d; ++i) {
            cur = point_dbl(c, cur);
            if (r == 1 && i == 0) tb.two_base = cur;
        }
        rows[r] = cur;
    }

    // Shared-subexpression tree: 2 + 4 + 8 = 14 additions for the 8 patterns.
    AffinePoint level2[2] = {point_add(c, rows[3], point_neg(c, rows[2])),
                             point_add(c, rows[3], rows[2])};
    AffinePoint level1[4];
    for (unsigned b2 = 0; b2 < 2; ++b2) {
        level1[b2 << 1] = point_add(c, level2[b2], point_neg(c, rows[1]));
        level1[(b2 << 1) | 1] = point_add(c, level2[b2], rows[1]);
    }
    for (unsigned idx = 0; idx < 8; ++idx) {
        const AffinePoint& partial = level1[idx >> 1];
        tb.points[idx] = (idx & 1) ? point_add(c, partial, rows[0])
                                   : point_add(c, partial, point_neg(c, rows[0]));
    }

    if (ledger) {
        ledger->record_comb(c.nt);
        ledger->comb_cycles += ledger->cycles_total() - cycles_before;
    }
    return tb;
}

AffinePoint ecsm(const UInt256& k, const CombTable& table, const CurveParams& c) {
    if (k.is_zero() || !(k < c.n)) throw std::invalid_argument("scalar out of range");
    if (table.t != c.nt) throw std::invalid_argument("comb table does not match curve");

    CostLedger* ledger = active_ledger();
    uint64_t cycles_before = ledger ? ledger->cycles_total() : 0;

    ZsdScalar z = zsd_encode(k, c.nt);
    const unsigned d = table.d;
    const unsigned padded = 4 * d;

    // d uniform iterations; the first runs on the identity so that every
    // scalar sees the same double-and-add pattern.
    AffinePoint q;
    for (unsigned col = d; col-- > 0;) {
        q = point_dbl(c, q);
        AffinePoint t = table.lookup(z.digit(col, padded), z.digit(d + col, padded),
                                     z.digit(2 * d + col, padded), z.digit(3 * d + col, padded), c);
        q = point_add(c, q, t);
    }

    // Undo the even/odd adjustment: one point-subtract of a selected
    // pre-point, same shape either way.
    bool sub_two = z.correction == ZsdScalar::Correction::Sub2P;
    AffinePoint corr = select_point(sub_two, table.base, table.two_base, c);
    q = point_add(c, q, point_neg(c, corr));

    if (ledger) {
        ledger->record_ecsm(c.nt);
        ledger->ecsm_cycles += ledger->cycles_total() - cycles_before;
    }
    return q;
}

AffinePoint ecsm_naive(const CurveParams& c, const UInt256& k, const AffinePoint& p) {
    if (k.is_zero()) throw std::invalid_argument("scalar must be nonzero");
    require_on_same_field(c, p);
    AffinePoint q;
    for (unsigned i = k.bit_length(); i-- > 0;) {
        q = point_dbl(c, q);
        if (k.bit(i)) q = point_add(c, q, p);
    }
    return q;
}

const CombTable& PointCache::install_pinned(const CurveParams& c, const AffinePoint& p) {
    if (const CombTable* hit = find(p)) {
        for (Slot& s : slots_) {
            if (s.used && &s.table == hit) {
                s.pinned = true;
                return s.table;
            }
        }
    }
    for (Slot& s : slots_) {
        if (!s.used) {
            LedgerPause lp;  // amortized precomputation, not handshake work
            TracePause tp;
            s.table = comb_precompute(c, p);
            s.used = true;
            s.pinned = true;
            s.last_used = ++clock_;
            return s.table;
        }
    }
    throw std::runtime_error("point cache full");
}

const CombTable* PointCache::find(const AffinePoint& p) const {
    for (const Slot& s : slots_) {
        if (s.used && s.table.base == p) return &s.table;
    }
    return nullptr;
}

const CombTable& PointCache::acquire(const CurveParams& c, const AffinePoint& p) {
    for (Slot& s : slots_) {
        if (s.used && s.table.base == p) {
            s.last_used = ++clock_;
            return s.table;
        }
    }
    Slot* victim = nullptr;
    for (Slot& s : slots_) {
        if (!s.used) {
            victim = &s;
            break;
        }
        if (!s.pinned && (victim == nullptr || s.last_used < victim->last_used)) victim = &s;
    }
    if (victim == nullptr) throw std::runtime_error("point cache full of pinned entries");
    victim->table = comb_precompute(c, p);
    victim->used = true;
    victim->pinned = false;
    victim->last_used = ++clock_;
    return victim->table;
}

size_t PointCache::occupied() const {
    size_t n = 0;
    for (const Slot& s : slots_) n += s.used ? 1 : 0;
    return n;
}

}  // namespace dtlse
