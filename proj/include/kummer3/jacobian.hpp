#pragma once

#include <cstdint>
#include <vector>

#include "curve.hpp"
#include "errors.hpp"
#include "fp.hpp"
#include "poly.hpp"
#include "rational.hpp"
#include "rng.hpp"
#include "roots.hpp"
#include "scalar.hpp"

namespace kummer3 {

// Mumford representation: a monic of degree d ≤ 3, deg b < d, b² ≡ F(X,1) mod a.
// d = 0 (a = 1, b = 0) is the identity class O.
template <Scalar K>
struct JacobianPoint {
    Poly<K> a, b;
    bool operator==(const JacobianPoint& o) const { return a == o.a && b == o.b; }
    bool operator!=(const JacobianPoint& o) const { return !(*this == o); }
};

template <Scalar K>
JacobianPoint<K> jac_identity(const K& ex) {
    return {Poly<K>::constant(ex.one()), Poly<K>()};
}

template <Scalar K>
bool is_identity(const JacobianPoint<K>& P) {
    return P.a.degree() == 0;
}

template <Scalar K>
bool is_on_jacobian(const Curve<K>& c, const JacobianPoint<K>& P) {
    if (P.a.is_zero() || !P.a.lead().is_one() || P.a.degree() > 3) return false;
    if (P.b.degree() >= P.a.degree()) return false;
    return ((P.b * P.b - c.fx) % P.a).is_zero();
}

template <Scalar K>
JacobianPoint<K> negate(const Curve<K>&, const JacobianPoint<K>& P) {
    return {P.a, -P.b};
}

// Cantor composition + reduction. Composition degree is ≤ 6; for the septic
// model reduction reaches deg a ≤ 3 in at most two steps.
template <Scalar K>
JacobianPoint<K> add(const Curve<K>& c, const JacobianPoint<K>& P, const JacobianPoint<K>& Q) {
    auto [d1, e1, e2] = xgcd(P.a, Q.a);
    auto [d, c1, c2] = xgcd(d1, P.b + Q.b);
    Poly<K> a = (P.a * Q.a) / (d * d);
    Poly<K> mid = c1 * (e1 * P.a * Q.b + e2 * Q.a * P.b) + c2 * (P.b * Q.b + c.fx);
    Poly<K> b = (mid / d) % a;
    while (a.degree() > 3) {
        a = ((c.fx - b * b) / a).monic();
        b = (-b) % a;
    }
    return {a, b};
}

template <Scalar K>
JacobianPoint<K> double_point(const Curve<K>& c, const JacobianPoint<K>& P) {
    return add(c, P, P);
}

template <Scalar K>
JacobianPoint<K> scalar_mul(const Curve<K>& c, long long n, const JacobianPoint<K>& P) {
    JacobianPoint<K> base = P;
    std::uint64_t e;
    if (n < 0) {
        base = negate(c, base);
        e = (std::uint64_t)(-(n + 1)) + 1;
    } else {
        e = (std::uint64_t)n;
    }
    JacobianPoint<K> r = jac_identity(c.ex());
    while (e) {
        if (e & 1) r = add(c, r, base);
        e >>= 1;
        if (e) base = add(c, base, base);
    }
    return r;
}

// The 64 classes (∏_{e∈S}(X−e), 0) over subsets S of the 7 roots with |S| ≤ 3,
// ordered by size then lexicographically by root index (roots ascending).
template <Scalar K>
std::vector<JacobianPoint<K>> two_torsion_from_roots(const Curve<K>&, const std::vector<K>& roots) {
    if (roots.size() != 7) throw DoesNotSplit("F(X,1) does not split into 7 distinct linear factors");
    std::vector<JacobianPoint<K>> out;
    out.reserve(64);
    K one = roots[0].one();
    for (int sz = 0; sz <= 3; ++sz) {
        std::vector<int> idx(sz);
        for (int i = 0; i < sz; ++i) idx[(size_t)i] = i;
        for (;;) {
            Poly<K> a = Poly<K>::constant(one);
            for (int i : idx) a = a * Poly<K>::linear_root(roots[(size_t)i]);
            out.push_back({a, Poly<K>()});
            int i = sz - 1;
            while (i >= 0 && idx[(size_t)i] == 7 - sz + i) --i;
            if (i < 0) break;
            ++idx[(size_t)i];
            for (int j = i + 1; j < sz; ++j) idx[(size_t)j] = idx[(size_t)j - 1] + 1;
        }
    }
    return out;
}

inline std::vector<JacobianPoint<Fp>> two_torsion(const Curve<Fp>& c) {
    return two_torsion_from_roots(c, fp_roots(c.fx));
}

inline std::vector<JacobianPoint<Rational>> two_torsion(const Curve<Rational>& c, Rng& rng) {
    std::vector<Rational> roots = rational_roots(c.fx, rng, 7);
    return two_torsion_from_roots(c, roots);
}

// Sum of three uniform random affine curve points: full support on classes of
// that shape, which is all we need for sampling.
inline JacobianPoint<Fp> random_point(const Curve<Fp>& c, Rng& rng) {
    JacobianPoint<Fp> r = jac_identity(c.ex());
    for (int i = 0; i < 3; ++i) {
        CurvePoint<Fp> pt = random_affine_point(c, rng);
        JacobianPoint<Fp> w1{Poly<Fp>::linear_root(pt.x), Poly<Fp>::constant(pt.y)};
        r = add(c, r, w1);
    }
    return r;
}

} // namespace kummer3
