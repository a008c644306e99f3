#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "fp.hpp"
#include "poly.hpp"
#include "rational.hpp"
#include "rng.hpp"
#include "roots.hpp"
#include "scalar.hpp"

namespace kummer3 {

// Point on Y² = F(X,Z) in weighted projective space, weights (1,4,1).
// Affine points are stored with z = 1; the unique point at infinity is (1:0:0).
template <Scalar K>
struct CurvePoint {
    bool infinity = false;
    K x{}, y{};

    static CurvePoint at_infinity(const K& ex) {
        CurvePoint p;
        p.infinity = true;
        p.x = ex.zero();
        p.y = ex.zero();
        return p;
    }
    static CurvePoint affine(K px, K py) {
        CurvePoint p;
        p.x = std::move(px);
        p.y = std::move(py);
        return p;
    }
    bool operator==(const CurvePoint& o) const {
        if (infinity != o.infinity) return false;
        return infinity || (x == o.x && y == o.y);
    }
    bool operator!=(const CurvePoint& o) const { return !(*this == o); }
};

// Y² = F(X,Z) = f₇X⁷Z + f₆X⁶Z² + … + f₀Z⁸ (degree 7 in X, so the model has a
// rational Weierstrass point at infinity).
template <Scalar K>
struct Curve {
    std::array<K, 8> f{}; // coefficients of F by X-degree
    Poly<K> fx;           // F(X,1)
    K disc{};             // disc(F(X,1))
    bool degenerate = false;

    static Curve make(const std::array<K, 8>& f, bool allow_singular = false) {
        unsigned long long p = f[0].characteristic();
        if (p == 2) throw BadCharacteristic("characteristic 2 not supported");
        if (f[7].is_zero()) throw NotDegreeSeven("f7 = 0: F must have X-degree 7");
        Curve c;
        c.f = f;
        c.fx = Poly<K>(std::vector<K>(f.begin(), f.end()));
        c.disc = discriminant(c.fx);
        c.degenerate = c.disc.is_zero();
        if (c.degenerate && !allow_singular)
            throw NotSquarefree("disc F(X,1) = 0 (pass the degenerate flag to allow)");
        return c;
    }

    K ex() const { return f[7].zero(); } // field exemplar
};

// Relation/derivation work needs characteristic ∉ {2,3,5}.
template <Scalar K>
void require_derivation_char(const Curve<K>& c) {
    unsigned long long p = c.f[7].characteristic();
    if (p == 3 || p == 5)
        throw BadCharacteristic("characteristic " + std::to_string(p) +
                                " excluded for relation derivation");
}

template <Scalar K>
bool is_on_curve(const Curve<K>& c, const CurvePoint<K>& pt) {
    return pt.infinity || pt.y * pt.y == c.fx.eval(pt.x);
}

template <Scalar K>
CurvePoint<K> involution(const CurvePoint<K>& pt) {
    if (pt.infinity) return pt;
    return CurvePoint<K>::affine(pt.x, -pt.y);
}

// Full enumeration: infinity first, then ascending x, y ascending within each x.
inline std::vector<CurvePoint<Fp>> points_over_prime_field(const Curve<Fp>& c) {
    u64 p = c.f[7].modulus();
    if (p > 65536) throw FieldTooLarge("p = " + std::to_string(p) + " > 2^16; use sampling");
    std::vector<CurvePoint<Fp>> pts;
    pts.push_back(CurvePoint<Fp>::at_infinity(c.ex()));
    for (u64 v = 0; v < p; ++v) {
        Fp x(v, p);
        Fp w = c.fx.eval(x);
        if (auto y = field_sqrt(w)) {
            if (y->is_zero()) {
                pts.push_back(CurvePoint<Fp>::affine(x, *y));
            } else {
                u64 a = y->value(), b = p - a;
                pts.push_back(CurvePoint<Fp>::affine(x, Fp(std::min(a, b), p)));
                pts.push_back(CurvePoint<Fp>::affine(x, Fp(std::max(a, b), p)));
            }
        }
    }
    return pts;
}

// Uniform random affine point (accept (x,0) with probability 1/2 to balance
// against the two-point fibres).
inline CurvePoint<Fp> random_affine_point(const Curve<Fp>& c, Rng& rng) {
    u64 p = c.f[7].modulus();
    for (;;) {
        Fp x(rng.below(p), p);
        Fp w = c.fx.eval(x);
        auto y = field_sqrt(w);
        if (!y) continue;
        if (y->is_zero()) {
            if (rng.below(2) == 0) return CurvePoint<Fp>::affine(x, *y);
            continue;
        }
        Fp yy = rng.below(2) ? *y : -*y;
        return CurvePoint<Fp>::affine(x, yy);
    }
}

inline Curve<Fp> reduce_mod(const Curve<Rational>& c, u64 p) {
    std::array<Fp, 8> f;
    for (int i = 0; i < 8; ++i) f[(size_t)i] = reduce_mod(c.f[(size_t)i], p);
    return Curve<Fp>::make(f, c.degenerate);
}

// Random prime of the given size at which reduction keeps degree 7 and (for
// non-degenerate curves) squarefreeness: p ∤ den(f_i), p ∤ num(f₇), p ∤ disc.
inline u64 good_prime(const Curve<Rational>& c, Rng& rng, unsigned bits) {
    auto pred = [&](u64 p) {
        for (const auto& q : c.f)
            if (mod_u64(q.den(), p) == 0) return false;
        if (mod_u64(c.f[7].num(), p) == 0) return false;
        if (!c.degenerate &&
            (mod_u64(c.disc.num(), p) == 0 || mod_u64(c.disc.den(), p) == 0))
            return false;
        return true;
    };
    return random_prime(rng, bits, pred);
}

} // namespace kummer3
