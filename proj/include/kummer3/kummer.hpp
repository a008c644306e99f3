#pragma once

#include <array>
#include <cstddef>
#include <vector>

#include "curve.hpp"
#include "errors.hpp"
#include "fp.hpp"
#include "jacobian.hpp"
#include "poly.hpp"
#include "rational.hpp"
#include "scalar.hpp"

namespace kummer3 {

// A tuple of Kummer coordinates (x₁,…,x₈), not all zero, read projectively.
template <Scalar K>
struct KummerPoint {
    std::array<K, 8> x{};

    bool operator==(const KummerPoint& o) const { return x == o.x; }
    bool operator!=(const KummerPoint& o) const { return !(*this == o); }
    bool all_zero() const {
        for (const auto& v : x)
            if (!v.is_zero()) return false;
        return true;
    }
};

template <Scalar K>
bool projectively_equal(const KummerPoint<K>& a, const KummerPoint<K>& b) {
    if (a.all_zero() || b.all_zero()) return false;
    // all 2x2 minors vanish
    for (size_t i = 0; i < 8; ++i)
        for (size_t j = i + 1; j < 8; ++j)
            if (!(a.x[i] * b.x[j] == a.x[j] * b.x[i])) return false;
    return true;
}

// first nonzero coordinate scaled to 1
template <Scalar K>
KummerPoint<K> canonicalize(const KummerPoint<K>& k) {
    for (size_t i = 0; i < 8; ++i) {
        if (!k.x[i].is_zero()) {
            KummerPoint<K> r;
            K inv = k.x[i].inv();
            for (size_t j = 0; j < 8; ++j) r.x[j] = k.x[j] * inv;
            return r;
        }
    }
    throw Error("canonicalize: zero tuple");
}

// over ℚ: primitive integer tuple with positive first nonzero entry
inline KummerPoint<Rational> canonicalize(const KummerPoint<Rational>& k) {
    Int l = 1, g = 0;
    for (const auto& v : k.x) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), v.den().get_mpz_t());
    KummerPoint<Rational> r;
    for (size_t i = 0; i < 8; ++i) r.x[i] = k.x[i] * Rational(l);
    for (const auto& v : r.x) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.num().get_mpz_t());
    if (g == 0) throw Error("canonicalize: zero tuple");
    int lead = 0;
    for (size_t i = 0; i < 8; ++i) {
        if (!r.x[i].is_zero()) {
            lead = r.x[i].sign();
            break;
        }
    }
    Rational d = Rational(lead < 0 ? -g : g);
    for (size_t i = 0; i < 8; ++i) r.x[i] = r.x[i] / d;
    return r;
}

// the quadric R1 vanishing on the image of κ
template <Scalar K>
K r1_residual(const Curve<K>& c, const KummerPoint<K>& k) {
    const auto& x = k.x;
    const auto& f = c.f;
    return x[0] * x[7] - x[1] * x[6] - x[2] * x[5] - x[3] * x[4] -
           f[5] * x[1] * x[3] * c.ex().from_int(2) + f[5] * x[2] * x[2] +
           f[6] * x[2] * x[3] * c.ex().from_int(2) + f[7] * x[3] * x[3] * c.ex().from_int(3);
}

// κ: Jac → P⁷, stratified by the degree of the Mumford a-polynomial.
// Weight-3 classes with repeated roots reuse the coefficient-based generic
// formulas (they are polynomial in the symmetric functions and b₀, b₁).
template <Scalar K>
KummerPoint<K> kappa(const Curve<K>& c, const JacobianPoint<K>& P) {
    const K zero = c.ex(), one = zero.one(), two = zero.from_int(2), three = zero.from_int(3);
    const auto& f = c.f;
    KummerPoint<K> k;
    for (auto& v : k.x) v = zero;
    int d = P.a.degree();
    if (d == 0) { // O
        k.x[7] = one;
        return k;
    }
    if (d == 1) { // ((x₁,y₁)) − (∞)
        K x1 = -P.a.coeff(0, zero);
        k.x[4] = one;
        k.x[5] = -x1;
        k.x[6] = x1 * x1;
        k.x[7] = x1 * x1 * x1;
        return k;
    }
    if (d == 2) {
        K s = -P.a.coeff(1, zero), q = P.a.coeff(0, zero);
        K b0 = P.b.coeff(0, zero), b1 = P.b.coeff(1, zero);
        k.x[1] = one;
        k.x[2] = s;
        k.x[3] = q;
        k.x[4] = f[5] + two * f[6] * s + f[7] * s * s + two * f[7] * q;
        k.x[5] = f[4] + f[5] * s - f[7] * q * s;
        k.x[6] = -f[4] * s - three * f[5] * q + f[7] * q * q;
        K da = s * s - two * two * q; // (x₁−x₂)²
        if (!da.is_zero()) {
            K y1y2 = b1 * b1 * q + b0 * b1 * s + b0 * b0;
            K num = f[3] * s * s * s + f[1] * s + f[2] * s * s + two * f[0] - two * y1y2 +
                    f[4] * q * s * s - three * f[3] * q * s - two * f[2] * q +
                    f[5] * q * q * s - two * f[4] * q * q + f[7] * q * q * q * s +
                    two * f[6] * q * q * q;
            k.x[7] = num / da;
        } else {
            k.x[7] = b1 * b1 + (q - s * s) * (-two * f[7] * q * s - f[6] * q + f[7] * s * s * s +
                                              f[6] * s * s + f[5] * s + f[4]);
        }
        return k;
    }
    // d == 3; b₀ and b₁ are the quadratic and linear coefficients of the
    // Mumford b — with the leading (X²) coefficient, not the constant term,
    // every κᵢ keeps pole order ≤ 2 along the theta divisor
    K k2 = -P.a.coeff(2, zero), k3 = P.a.coeff(1, zero), k4 = -P.a.coeff(0, zero);
    K b0 = P.b.coeff(2, zero), b1 = P.b.coeff(1, zero);
    k.x[0] = one;
    k.x[1] = k2;
    k.x[2] = k3;
    k.x[3] = k4;
    k.x[4] = b0 * b0 - f[7] * k2 * k2 * k2 + f[7] * k3 * k2 - f[6] * k2 * k2 + three * f[7] * k4 +
             two * f[6] * k3;
    k.x[5] = k2 * b0 * b0 + two * b0 * b1 - f[7] * k2 * k2 * k2 * k2 + three * f[7] * k3 * k2 * k2 -
             f[6] * k2 * k2 * k2 - f[7] * k3 * k3 - f[7] * k4 * k2 + two * f[6] * k3 * k2 -
             f[5] * k2 * k2 + two * f[5] * k3;
    k.x[6] = b1 * b1 - k3 * b0 * b0 + f[7] * k3 * k2 * k2 * k2 - two * f[7] * k3 * k3 * k2 +
             f[6] * k3 * k2 * k2 + f[7] * k4 * k3 - f[6] * k3 * k3 + f[5] * k3 * k2 -
             three * f[5] * k4;
    k.x[7] = k2 * b1 * b1 + two * k3 * b0 * b1 + k4 * b0 * b0 + f[7] * k3 * k3 * k2 * k2 -
             f[7] * k2 * k2 * k2 * k4 + f[7] * k2 * k3 * k4 - f[7] * k3 * k3 * k3 +
             f[6] * k3 * k3 * k2 - f[6] * k4 * k2 * k2 + f[5] * k3 * k3 - f[5] * k4 * k2;
    return k;
}

// linear change of coordinates to the ξ-system (invertible when f₇ ≠ 0)
template <Scalar K>
KummerPoint<K> to_xi(const Curve<K>& c, const KummerPoint<K>& k) {
    const auto& f = c.f;
    const auto& x = k.x;
    K two = c.ex().from_int(2), three = c.ex().from_int(3);
    KummerPoint<K> r;
    r.x[0] = x[0];
    r.x[1] = -f[7] * x[1];
    r.x[2] = f[7] * x[2];
    r.x[3] = -f[7] * x[3];
    r.x[4] = f[4] * x[0] + f[5] * x[1] + two * f[6] * x[2] + three * f[7] * x[3] - x[4];
    r.x[5] = f[3] * x[0] + f[4] * x[1] + f[5] * x[2] - x[5];
    r.x[6] = f[2] * x[0] - f[4] * x[2] - three * f[5] * x[3] - x[6];
    r.x[7] = -f[2] * f[7] * x[1] - f[4] * f[7] * x[2] - f[4] * f[7] * x[3] + f[7] * x[7];
    return r;
}

template <Scalar K>
KummerPoint<K> from_xi(const Curve<K>& c, const KummerPoint<K>& xi) {
    const auto& f = c.f;
    K two = c.ex().from_int(2), three = c.ex().from_int(3);
    KummerPoint<K> k;
    k.x[0] = xi.x[0];
    k.x[1] = -xi.x[1] / f[7];
    k.x[2] = xi.x[2] / f[7];
    k.x[3] = -xi.x[3] / f[7];
    k.x[4] = f[4] * k.x[0] + f[5] * k.x[1] + two * f[6] * k.x[2] + three * f[7] * k.x[3] - xi.x[4];
    k.x[5] = f[3] * k.x[0] + f[4] * k.x[1] + f[5] * k.x[2] - xi.x[5];
    k.x[6] = f[2] * k.x[0] - f[4] * k.x[2] - three * f[5] * k.x[3] - xi.x[6];
    k.x[7] = (xi.x[7] + f[2] * f[7] * k.x[1] + f[4] * f[7] * k.x[2] + f[4] * f[7] * k.x[3]) / f[7];
    return k;
}

namespace kumdetail {

// candidates t with q_j(t) = α_j t² + 2β_j t + γ_j = 0 for all j, where the q_j
// are the coefficients of ((t·carrier + L)² − F) mod a
template <Scalar K>
std::vector<K> solve_coeff(const Poly<K>& a, const Poly<K>& carrier, const Poly<K>& L,
                           const Poly<K>& fx, const K& zero) {
    const K two = zero.from_int(2), four = zero.from_int(4);
    Poly<K> A4 = (carrier * carrier) % a;
    Poly<K> A2L = (carrier * L) % a;
    Poly<K> C0 = (L * L - fx) % a;
    std::vector<K> cand;
    bool constrained = false;
    for (int j = 0; j < 3 && !constrained; ++j) {
        K al = A4.coeff(j, zero), be = A2L.coeff(j, zero), ga = C0.coeff(j, zero);
        if (!al.is_zero()) {
            constrained = true;
            K disc = four * be * be - four * al * ga;
            auto rt = field_sqrt(disc);
            if (!rt) return {};
            K den = (two * al).inv();
            cand.push_back((-two * be + *rt) * den);
            if (!rt->is_zero()) cand.push_back((-two * be - *rt) * den);
        } else if (!be.is_zero()) {
            constrained = true;
            cand.push_back(-ga / (two * be));
        }
    }
    if (!constrained) {
        if (C0.is_zero()) throw NotOnKummer("underdetermined lift (degenerate input)");
        return {};
    }
    std::vector<K> out;
    for (const K& t : cand) {
        bool ok = true;
        for (int j = 0; j < 3; ++j) {
            K al = A4.coeff(j, zero), be = A2L.coeff(j, zero), ga = C0.coeff(j, zero);
            if (!(al * t * t + two * be * t + ga).is_zero()) ok = false;
        }
        if (ok) out.push_back(t);
    }
    return out;
}

template <Scalar K>
void push_pair(const Curve<K>& c, std::vector<JacobianPoint<K>>& out, const JacobianPoint<K>& P) {
    if (!is_on_jacobian(c, P)) throw NotOnKummer("reconstructed pair fails the Mumford congruence");
    for (const auto& q : out)
        if (q == P) return;
    out.push_back(P);
    auto N = negate(c, P);
    for (const auto& q : out)
        if (q == N) return;
    out.push_back(N);
}

} // namespace kumdetail

// Fibre of κ over a Kummer point: {P, −P}, a single point when P = −P, or ∅
// when the class only exists over a quadratic extension.
template <Scalar K>
std::vector<JacobianPoint<K>> lift_to_jacobian(const Curve<K>& c, const KummerPoint<K>& k0) {
    const K zero = c.ex(), one = zero.one(), two = zero.from_int(2), three = zero.from_int(3),
            four = zero.from_int(4);
    const auto& f = c.f;
    if (k0.all_zero()) throw NotOnKummer("zero tuple");
    if (!r1_residual(c, k0).is_zero()) throw NotOnKummer("R1 residual nonzero");
    std::vector<JacobianPoint<K>> out;

    if (!k0.x[0].is_zero()) { // weight 3
        KummerPoint<K> k;
        K inv = k0.x[0].inv();
        for (size_t i = 0; i < 8; ++i) k.x[i] = k0.x[i] * inv;
        K k2 = k.x[1], k3 = k.x[2], k4 = k.x[3];
        Poly<K> a(std::vector<K>{-k4, k3, -k2, one});
        K w = k.x[4] + f[7] * k2 * k2 * k2 - f[7] * k3 * k2 + f[6] * k2 * k2 - three * f[7] * k4 -
              two * f[6] * k3; // b₀² (b₀ = leading coefficient of b)
        K v2 = k.x[5] - k2 * w + f[7] * k2 * k2 * k2 * k2 - three * f[7] * k3 * k2 * k2 +
               f[6] * k2 * k2 * k2 + f[7] * k3 * k3 + f[7] * k4 * k2 - two * f[6] * k3 * k2 +
               f[5] * k2 * k2 - two * f[5] * k3; // 2b₀b₁
        K u = k.x[6] + k3 * w - f[7] * k3 * k2 * k2 * k2 + two * f[7] * k3 * k3 * k2 -
              f[6] * k3 * k2 * k2 - f[7] * k4 * k3 + f[6] * k3 * k3 - f[5] * k3 * k2 +
              three * f[5] * k4; // b₁²
        if (!(v2 * v2 == four * w * u)) throw NotOnKummer("inconsistent b₀,b₁ squares");
        K b0 = zero, b1 = zero;
        if (!w.is_zero()) {
            auto r = field_sqrt(w);
            if (!r) return {};
            b0 = *r;
            b1 = v2 / (two * b0);
        } else if (!u.is_zero()) {
            if (!v2.is_zero()) throw NotOnKummer("inconsistent b₀,b₁ squares");
            auto r = field_sqrt(u);
            if (!r) return {};
            b1 = *r;
        }
        // b = b₀X² + b₁X + t with the constant term t recovered from b² ≡ F mod a
        Poly<K> L = Poly<K>::monomial(b0, 2) + Poly<K>::monomial(b1, 1);
        Poly<K> carrier = Poly<K>::constant(one);
        for (const K& t : kumdetail::solve_coeff(a, carrier, L, c.fx, zero)) {
            Poly<K> b = Poly<K>::constant(t) + L;
            if (((b * b - c.fx) % a).is_zero()) kumdetail::push_pair(c, out, {a, b});
        }
        return out;
    }

    if (!k0.x[1].is_zero()) { // weight 2
        K inv = k0.x[1].inv();
        std::array<K, 8> k;
        for (size_t i = 0; i < 8; ++i) k[i] = k0.x[i] * inv;
        K s = k[2], q = k[3];
        if (!(k[4] == f[5] + two * f[6] * s + f[7] * s * s + two * f[7] * q) ||
            !(k[5] == f[4] + f[5] * s - f[7] * q * s) ||
            !(k[6] == -f[4] * s - three * f[5] * q + f[7] * q * q))
            throw NotOnKummer("weight-2 coordinate pattern violated");
        Poly<K> a(std::vector<K>{q, -s, one});
        Poly<K> r = c.fx % a;
        K c1 = r.coeff(1, zero), c0 = r.coeff(0, zero);
        K da = s * s - four * q;
        K u; // b₁²
        if (!da.is_zero()) {
            K lump = f[3] * s * s * s + f[1] * s + f[2] * s * s + two * f[0] + f[4] * q * s * s -
                     three * f[3] * q * s - two * f[2] * q + f[5] * q * q * s - two * f[4] * q * q +
                     f[7] * q * q * q * s + two * f[6] * q * q * q;
            K y1y2 = (lump - k[7] * da) / two;
            u = (two * y1y2 - two * c0 - s * c1) / (-da);
        } else {
            u = k[7] - (q - s * s) * (-two * f[7] * q * s - f[6] * q + f[7] * s * s * s +
                                      f[6] * s * s + f[5] * s + f[4]);
        }
        K v = (c1 - s * u) / two; // b₀b₁
        K w = c0 + q * u;         // b₀²
        if (!(v * v == u * w)) throw NotOnKummer("inconsistent b₀,b₁ squares");
        K b0 = zero, b1 = zero;
        if (!u.is_zero()) {
            auto rt = field_sqrt(u);
            if (!rt) return {};
            b1 = *rt;
            b0 = v / b1;
        } else if (!w.is_zero()) {
            auto rt = field_sqrt(w);
            if (!rt) return {};
            b0 = *rt;
        }
        kumdetail::push_pair(c, out, {a, Poly<K>(std::vector<K>{b0, b1})});
        return out;
    }

    if (!k0.x[2].is_zero() || !k0.x[3].is_zero())
        throw NotOnKummer("coordinate pattern off the embedding image");

    if (!k0.x[4].is_zero()) { // weight 1
        K inv = k0.x[4].inv();
        K x1 = -k0.x[5] * inv;
        if (!(k0.x[6] * inv == x1 * x1) || !(k0.x[7] * inv == x1 * x1 * x1))
            throw NotOnKummer("weight-1 coordinate pattern violated");
        K w = c.fx.eval(x1);
        auto y = field_sqrt(w);
        if (!y) return {};
        kumdetail::push_pair(c, out,
                             {Poly<K>::linear_root(x1), Poly<K>::constant(*y)});
        return out;
    }

    if (!k0.x[5].is_zero() || !k0.x[6].is_zero())
        throw NotOnKummer("coordinate pattern off the embedding image");
    out.push_back(jac_identity(zero)); // (0,…,0,x₈)
    return out;
}

} // namespace kummer3
