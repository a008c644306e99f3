#pragma once

#include <cmath>
#include <cstdlib>
#include <limits>
#include <numeric>
#include <vector>

#include "curve.hpp"
#include "jacobian.hpp"
#include "kummer.hpp"
#include "relations.hpp"
#include "rng.hpp"

namespace kummer3 {

// Exact log-height surrogate: the maximum |coordinate| of the primitive
// integer representative, carried as an exact integer (comparisons should use
// it) plus a floating log for display.
struct NaiveHeight {
    Int max_abs;
    long bits = 0;
    double log_value = 0;
};

inline NaiveHeight naive_height(const KummerPoint<Rational>& k) {
    auto canon = canonicalize(k); // primitive integers, positive first nonzero
    Int m = 0;
    for (const auto& v : canon.x) {
        Int a = ::abs(v.num());
        if (a > m) m = a;
    }
    NaiveHeight h;
    h.max_abs = m;
    h.bits = (long)mpz_sizeinbase(m.get_mpz_t(), 2);
    long e = 0;
    double mant = mpz_get_d_2exp(&e, m.get_mpz_t());
    h.log_value = std::log(mant) + (double)e * std::log(2.0);
    return h;
}

struct HeightReport {
    JacobianPoint<Rational> point;
    std::vector<NaiveHeight> ladder; // h(kappa(2^n P)) for n = 0..N
    Rational estimate;               // exact value of the final 4^{-N} h_N
    int N = 0;
    double achieved = std::numeric_limits<double>::infinity();
    bool converged = false;
    double gap_bound = 0; // max observed h_{n+1} - 4 h_n (doubling defect)
};

// hat h(P) as the limit of 4^{-n} h(kappa(2^n P)), by exact doubling on the
// Jacobian. Stops once consecutive scaled terms differ by less than tol; a
// report with converged == false means the iteration budget ran out first.
inline HeightReport canonical_height(const Curve<Rational>& c, const JacobianPoint<Rational>& P,
                                     double tol, int maxN) {
    if (!(tol > 0)) throw Error("canonical_height: tolerance must be positive");
    if (maxN < 0) throw Error("canonical_height: negative iteration budget");
    if (!is_on_jacobian(c, P)) throw Error("canonical_height: point not on the Jacobian");
    HeightReport r;
    r.point = P;
    r.ladder.push_back(naive_height(kappa(c, P)));
    if (is_identity(P)) {
        r.estimate = Rational(0);
        r.achieved = 0;
        r.converged = true;
        return r;
    }
    auto Q = P;
    double prev = r.ladder[0].log_value, scale = 1.0;
    bool first = true;
    for (int n = 1; n <= maxN; ++n) {
        Q = double_point(c, Q);
        auto h = naive_height(kappa(c, Q));
        double gap = h.log_value - 4.0 * r.ladder.back().log_value;
        if (first || gap > r.gap_bound) r.gap_bound = gap;
        first = false;
        r.ladder.push_back(h);
        scale /= 4.0;
        double est = scale * h.log_value;
        r.N = n;
        r.achieved = std::fabs(est - prev);
        prev = est;
        if (r.achieved < tol) {
            r.converged = true;
            break;
        }
    }
    r.estimate = Rational(mpq_class(prev));
    return r;
}

struct SearchHit {
    KummerPoint<Rational> x;
    std::vector<JacobianPoint<Rational>> lifts; // fibre of kappa: {P,-P}, {T}, or empty
};

namespace htdetail {

// evaluate the degree-n monomials of an integer tuple mod p (u64, p < 2^31)
inline void monomials_mod(const MonomialBasis& b, const std::array<u64, 8>& x, u64 p,
                          std::vector<u64>& out) {
    u64 pw[8][5];
    for (int i = 0; i < 8; ++i) {
        pw[i][0] = 1 % p;
        for (int e = 1; e <= 4; ++e) pw[i][e] = pw[i][e - 1] * x[(size_t)i] % p;
    }
    out.resize(b.size());
    for (size_t t = 0; t < b.size(); ++t) {
        const Expo8& e = b.at(t);
        u64 v = 1 % p;
        for (int i = 0; i < 8; ++i)
            if (e[(size_t)i]) v = v * pw[i][e[(size_t)i]] % p;
        out[t] = v;
    }
}

} // namespace htdetail

// All projective points of the model with primitive integer coordinates in
// [-H, H]: enumerate canonical representatives, filter by the quadric and the
// derived degree-4 basis mod a prime, then confirm exactly and attach the
// kappa fibre. rng only steers the relation derivation and filter prime.
inline std::vector<SearchHit> search_points(const Curve<Rational>& c, long bound, Rng& rng) {
    if (bound < 1) throw Error("search_points: bound must be >= 1");
    auto rel = find_relations(c, 4, rng);
    MonomialBasis b4 = MonomialBasis::make(4);
    MonomialBasis b2 = MonomialBasis::make(2);
    auto r1q = r1_vector(c, b2);

    // one good filter prime that clears every basis denominator
    u64 p = 0;
    std::vector<std::vector<u64>> fbasis;
    std::vector<u64> fr1;
    for (int tries = 0; tries < 16 && p == 0; ++tries) {
        u64 cand = good_prime(c, rng, 30);
        try {
            fbasis.clear();
            fr1.clear();
            for (const auto& vec : rel.basis) {
                std::vector<u64> row;
                row.reserve(vec.size());
                for (const auto& q : vec) row.push_back(reduce_mod(q, cand).value());
                fbasis.push_back(std::move(row));
            }
            for (const auto& q : r1q) fr1.push_back(reduce_mod(q, cand).value());
            p = cand;
        } catch (const Error&) {
        }
    }
    if (p == 0) throw Error("search_points: no usable filter prime");

    std::vector<SearchHit> out;
    const long W = 2 * bound + 1;
    long total = 1;
    for (int i = 0; i < 8; ++i) total *= W;
    std::array<long, 8> x{};
    std::array<u64, 8> xm{};
    std::vector<u64> mons4, mons2;
    for (long code = 0; code < total; ++code) {
        long cc = code;
        for (int i = 7; i >= 0; --i) {
            x[(size_t)i] = cc % W - bound;
            cc /= W;
        }
        long g = 0;
        bool lead_ok = false, seen = false;
        for (int i = 0; i < 8; ++i) {
            if (x[(size_t)i] && !seen) {
                seen = true;
                lead_ok = x[(size_t)i] > 0;
            }
            g = std::gcd(g, x[(size_t)i] < 0 ? -x[(size_t)i] : x[(size_t)i]);
        }
        if (!seen || !lead_ok || g != 1) continue;
        for (int i = 0; i < 8; ++i) {
            long v = x[(size_t)i];
            xm[(size_t)i] = v >= 0 ? (u64)v : p - (u64)(-v);
        }

        // cheap filters mod p: the quadric, then every degree-4 basis vector
        htdetail::monomials_mod(b2, xm, p, mons2);
        unsigned __int128 acc = 0;
        for (size_t t = 0; t < fr1.size(); ++t) acc += (unsigned __int128)fr1[t] * mons2[t];
        if (acc % p) continue;
        htdetail::monomials_mod(b4, xm, p, mons4);
        bool pass = true;
        for (const auto& row : fbasis) {
            acc = 0;
            for (size_t t = 0; t < row.size(); ++t) acc += (unsigned __int128)row[t] * mons4[t];
            if (acc % p) {
                pass = false;
                break;
            }
        }
        if (!pass) continue;

        // exact confirmation
        KummerPoint<Rational> k;
        for (int i = 0; i < 8; ++i) k.x[(size_t)i] = Rational((long)x[(size_t)i]);
        auto m2 = b2.evaluate(k.x);
        Rational v(0);
        for (size_t t = 0; t < 36; ++t) v += r1q[t] * m2[t];
        if (!v.is_zero()) continue;
        auto m4 = b4.evaluate(k.x);
        for (const auto& vec : rel.basis) {
            v = Rational(0);
            for (size_t t = 0; t < vec.size(); ++t) v += vec[t] * m4[t];
            if (!v.is_zero()) {
                pass = false;
                break;
            }
        }
        if (!pass) continue;

        SearchHit hit;
        hit.x = k;
        try {
            hit.lifts = lift_to_jacobian(c, k);
        } catch (const NotOnKummer&) {
            hit.lifts.clear();
        }
        out.push_back(std::move(hit));
    }
    return out;
}

} // namespace kummer3
