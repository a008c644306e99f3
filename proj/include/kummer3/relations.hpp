#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "curve.hpp"
#include "errors.hpp"
#include "fp.hpp"
#include "jacobian.hpp"
#include "kummer.hpp"
#include "linalg.hpp"
#include "poly.hpp"
#include "rational.hpp"
#include "rng.hpp"
#include "roots.hpp"

namespace kummer3 {

inline long binom(long n, long k) {
    if (k < 0 || k > n) return 0;
    long r = 1;
    for (long i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

// m(n): monic monomials of degree n in 2^g variables
inline long dim_monomials(int n, int g = 3) { return binom((1L << g) + n - 1, n); }

// e(n) = (2n)^g/2 + 2^{g-1}: dimension of the even part of L(2nΘ)
inline long dim_even(int n, int g = 3) {
    long t = 1;
    for (int i = 0; i < g; ++i) t *= 2L * n;
    return t / 2 + (1L << (g - 1));
}

// Coordinate-pair bookkeeping for pairwise-addition experiments. The full
// index set is every unordered pair {(i,j) : 1 <= i <= j <= 8} (36 pairs,
// 1-based); the exceptional subset below is where the defect of candidate
// biquadratic addition forms concentrates. Kept as documented constants for
// future use; nothing in the present surface consumes them.
inline constexpr std::array<std::array<int, 2>, 8> kExceptionalPairs{
    {{1, 8}, {2, 7}, {3, 6}, {4, 5}, {5, 5}, {5, 6}, {5, 7}, {6, 6}}};

inline std::vector<std::array<int, 2>> all_coordinate_pairs() {
    std::vector<std::array<int, 2>> ps;
    for (int i = 1; i <= 8; ++i)
        for (int j = i; j <= 8; ++j) ps.push_back({i, j});
    return ps;
}

// ---- weight bookkeeping ----

struct WeightPair {
    long x = 0, y = 0;
    bool operator==(const WeightPair& o) const { return x == o.x && y == o.y; }
};

inline WeightPair weight_of_x() { return {1, 0}; }
inline WeightPair weight_of_y() { return {0, 1}; }
inline WeightPair weight_of_f(int i) { return {-(long)i, 2}; }
inline WeightPair weight_of_kappa(int i) { // 1-based
    if (i < 1 || i > 8) throw Error("weight_of_kappa: index out of range");
    return i <= 4 ? WeightPair{i - 1, 0} : WeightPair{i - 9, 2};
}

inline WeightPair weight_of_monomial(const Expo8& e) {
    WeightPair w;
    for (int i = 0; i < 8; ++i) {
        WeightPair ki = weight_of_kappa(i + 1);
        w.x += (long)e[(size_t)i] * ki.x;
        w.y += (long)e[(size_t)i] * ki.y;
    }
    return w;
}

// ---- monomial basis ----

// all exponent tuples of total degree n over x₁..x₈, graded-lex: within the
// fixed degree, lexicographically larger tuples first (x₁ⁿ leads, x₈ⁿ trails)
class MonomialBasis {
  public:
    static MonomialBasis make(int n) {
        if (n < 0) throw Error("MonomialBasis: negative degree");
        MonomialBasis b;
        b.degree_ = n;
        Expo8 cur{};
        gen(cur, 0, n, b.e_);
        for (size_t i = 0; i < b.e_.size(); ++i) b.idx_[b.e_[i]] = (long)i;
        return b;
    }

    int degree() const { return degree_; }
    size_t size() const { return e_.size(); }
    const std::vector<Expo8>& exponents() const { return e_; }
    const Expo8& at(size_t i) const { return e_[i]; }

    long index_of(const Expo8& e) const {
        auto it = idx_.find(e);
        if (it == idx_.end()) throw Error("MonomialBasis: exponent not in basis");
        return it->second;
    }

    // values of every monomial at a coordinate tuple
    template <Scalar K>
    std::vector<K> evaluate(const std::array<K, 8>& x) const {
        const K one = x[0].one();
        // power table x_i^e, e ≤ degree
        std::array<std::vector<K>, 8> pw;
        for (int i = 0; i < 8; ++i) {
            pw[(size_t)i].resize((size_t)degree_ + 1, one);
            for (int e = 1; e <= degree_; ++e)
                pw[(size_t)i][(size_t)e] = pw[(size_t)i][(size_t)e - 1] * x[(size_t)i];
        }
        std::vector<K> out;
        out.reserve(e_.size());
        for (const auto& e : e_) {
            K v = one;
            for (int i = 0; i < 8; ++i)
                if (e[(size_t)i]) v = v * pw[(size_t)i][e[(size_t)i]];
            out.push_back(v);
        }
        return out;
    }

  private:
    static void gen(Expo8& cur, int pos, int rest, std::vector<Expo8>& out) {
        if (pos == 7) {
            cur[7] = (std::uint8_t)rest;
            out.push_back(cur);
            cur[7] = 0;
            return;
        }
        for (int e = rest; e >= 0; --e) {
            cur[(size_t)pos] = (std::uint8_t)e;
            gen(cur, pos + 1, rest - e, out);
        }
        cur[(size_t)pos] = 0;
    }

    int degree_ = 0;
    std::vector<Expo8> e_;
    std::map<Expo8, long> idx_;
};

// ---- R1 and its monomial multiples ----

template <Scalar K>
std::vector<std::pair<Expo8, K>> r1_terms(const Curve<K>& c) {
    const K one = c.ex().one(), two = c.ex().from_int(2), three = c.ex().from_int(3);
    auto e2 = [](int i, int j) {
        Expo8 e{};
        ++e[(size_t)i];
        ++e[(size_t)j];
        return e;
    };
    return {
        {e2(0, 7), one},          {e2(1, 6), -one},          {e2(2, 5), -one},
        {e2(3, 4), -one},         {e2(1, 3), -two * c.f[5]}, {e2(2, 2), c.f[5]},
        {e2(2, 3), two * c.f[6]}, {e2(3, 3), three * c.f[7]},
    };
}

// coefficient vector of (∏ xᵉ) · R1 in the basis of degree 2 + |e|
template <Scalar K>
std::vector<K> r1_multiple(const Curve<K>& c, const Expo8& shift, const MonomialBasis& b) {
    std::vector<K> v((size_t)b.size(), c.ex());
    for (const auto& [e, coeff] : r1_terms(c)) {
        Expo8 s = e;
        for (int i = 0; i < 8; ++i) s[(size_t)i] = (std::uint8_t)(s[(size_t)i] + shift[(size_t)i]);
        v[(size_t)b.index_of(s)] = v[(size_t)b.index_of(s)] + coeff;
    }
    return v;
}

template <Scalar K>
std::vector<K> r1_vector(const Curve<K>& c, const MonomialBasis& b2) {
    return r1_multiple(c, Expo8{}, b2);
}

// ---- relation discovery ----

template <Scalar K>
struct RelationBasis {
    int degree = 0;
    std::vector<std::vector<K>> basis;
    std::string provenance;
};

template <Scalar K>
Matrix<K> evaluation_matrix(const Curve<K>& c, int n, const std::vector<JacobianPoint<K>>& samples) {
    MonomialBasis b = MonomialBasis::make(n);
    std::vector<std::vector<K>> rows;
    rows.reserve(samples.size());
    for (const auto& P : samples)
        rows.push_back(b.evaluate(canonicalize(kappa(c, P)).x));
    return Matrix<K>::from_rows(rows, c.ex());
}

namespace reldetail {

// canonical κ tuple of P as a u64 row under the monomial basis
inline std::vector<u64> kappa_row(const Curve<Fp>& c, const MonomialBasis& b,
                                  const JacobianPoint<Fp>& P) {
    auto vals = b.evaluate(canonicalize(kappa(c, P)).x);
    std::vector<u64> r(vals.size());
    for (size_t i = 0; i < vals.size(); ++i) r[i] = vals[i].value();
    return r;
}

// identity + a few low-weight classes + random points, streamed into E
inline void feed_samples(FpEliminator& E, const Curve<Fp>& c, const MonomialBasis& b, Rng& rng,
                         size_t count) {
    E.add_row(kappa_row(c, b, jac_identity(c.ex())));
    for (int i = 0; i < 3; ++i) {
        auto A = random_affine_point(c, rng);
        JacobianPoint<Fp> P1{Poly<Fp>::linear_root(A.x), Poly<Fp>::constant(A.y)};
        E.add_row(kappa_row(c, b, P1));
        auto B = random_affine_point(c, rng);
        JacobianPoint<Fp> P2{Poly<Fp>::linear_root(B.x), Poly<Fp>::constant(B.y)};
        E.add_row(kappa_row(c, b, add(c, P1, P2)));
        E.add_row(kappa_row(c, b, double_point(c, P1)));
    }
    for (size_t i = 10; i < count; ++i) E.add_row(kappa_row(c, b, random_point(c, rng)));
}

inline FpEliminator eliminate(const Curve<Fp>& c, const MonomialBasis& b, Rng& rng, size_t count) {
    FpEliminator E(c.f[7].modulus(), b.size());
    feed_samples(E, c, b, rng, count);
    return E;
}

} // namespace reldetail

// rank of the full evaluation system, stabilized over two independent sample
// batches (native F_p curves) or two independent primes (ℚ curves)
inline long d(const Curve<Fp>& c, int n, Rng& rng) {
    require_derivation_char(c);
    MonomialBasis b = MonomialBasis::make(n);
    size_t base = b.size() + 30;
    for (int attempt = 0; attempt < 3; ++attempt) {
        Rng ra = rng.fork(2 * (u64)attempt), rb = rng.fork(2 * (u64)attempt + 1);
        size_t ns = base << attempt;
        long k1 = (long)reldetail::eliminate(c, b, ra, ns).rank();
        long k2 = (long)reldetail::eliminate(c, b, rb, ns).rank();
        if (k1 == k2) return k1;
    }
    throw RankUnstable("rank did not stabilize across sample batches");
}

inline long d(const Curve<Rational>& c, int n, Rng& rng, unsigned bits = 30) {
    MonomialBasis b = MonomialBasis::make(n);
    size_t base = b.size() + 30;
    for (int attempt = 0; attempt < 3; ++attempt) {
        u64 p1 = good_prime(c, rng, bits), p2;
        do { p2 = good_prime(c, rng, bits); } while (p2 == p1);
        size_t ns = base << attempt;
        Rng ra = rng.fork(2 * (u64)attempt), rb = rng.fork(2 * (u64)attempt + 1);
        long k1 = (long)reldetail::eliminate(reduce_mod(c, p1), b, ra, ns).rank();
        long k2 = (long)reldetail::eliminate(reduce_mod(c, p2), b, rb, ns).rank();
        if (k1 == k2) return k1;
    }
    throw RankUnstable("rank did not stabilize across primes");
}

// Schwartz–Zippel-style check: the form vanishes at `trials` fresh κ images
// (plus all 64 two-torsion images whenever F splits)
inline bool verify_relation(const Curve<Fp>& c, const std::vector<Fp>& rel, int n, int trials,
                            Rng& rng) {
    MonomialBasis b = MonomialBasis::make(n);
    if (rel.size() != b.size()) throw Error("verify_relation: wrong vector length");
    auto vanishes = [&](const JacobianPoint<Fp>& P) {
        auto row = b.evaluate(canonicalize(kappa(c, P)).x);
        Fp acc = c.ex();
        for (size_t i = 0; i < row.size(); ++i) acc = acc + rel[i] * row[i];
        return acc.is_zero();
    };
    for (int t = 0; t < trials; ++t)
        if (!vanishes(random_point(c, rng))) return false;
    if (fp_roots(c.fx).size() == 7)
        for (const auto& T : two_torsion(c))
            if (!vanishes(T)) return false;
    return true;
}

inline bool verify_relation(const Curve<Rational>& c, const std::vector<Rational>& rel, int n,
                            int trials, Rng& rng, unsigned bits = 30) {
    MonomialBasis b = MonomialBasis::make(n);
    if (rel.size() != b.size()) throw Error("verify_relation: wrong vector length");
    auto vanishes_at = [&](const std::array<Rational, 8>& x) {
        auto row = b.evaluate(x);
        Rational acc;
        for (size_t i = 0; i < row.size(); ++i) acc = acc + rel[i] * row[i];
        return acc.is_zero();
    };
    // exact checks at always-available rational Kummer points: the identity
    // image and the weight-1 stratum (rational for every x, whatever y is)
    if (!vanishes_at(kappa(c, jac_identity(c.ex())).x)) return false;
    for (long xv : {0L, 1L, -1L, 2L, -2L, 3L}) {
        Rational x(xv);
        if (!vanishes_at({Rational(), Rational(), Rational(), Rational(), Rational(1), -x, x * x,
                          x * x * x}))
            return false;
    }
    auto roots = rational_roots(c.fx, rng, 7);
    if (roots.size() == 7)
        for (const auto& T : two_torsion_from_roots(c, roots))
            if (!vanishes_at(canonicalize(kappa(c, T)).x)) return false;
    // random classes via a good prime that keeps the relation reducible
    for (int tries = 0; tries < 8; ++tries) {
        u64 p = good_prime(c, rng, bits);
        bool ok = true;
        std::vector<Fp> rp(rel.size(), Fp(0, p));
        try {
            for (size_t i = 0; i < rel.size(); ++i) rp[i] = reduce_mod(rel[i], p);
        } catch (const FieldMismatch&) {
            ok = false;
        }
        if (!ok) continue;
        return verify_relation(reduce_mod(c, p), rp, n, trials, rng);
    }
    throw Error("verify_relation: no usable prime for the given coefficients");
}

inline RelationBasis<Fp> find_relations(const Curve<Fp>& c, int n, Rng& rng) {
    require_derivation_char(c);
    if (n < 2 || n > 4) throw Error("find_relations: degree must be 2..4");
    MonomialBasis b = MonomialBasis::make(n);
    size_t base = b.size() + 30;
    for (int attempt = 0; attempt < 3; ++attempt) {
        Rng ra = rng.fork(100 + 2 * (u64)attempt), rb = rng.fork(101 + 2 * (u64)attempt);
        size_t ns = base << attempt;
        FpEliminator E = reldetail::eliminate(c, b, ra, ns);
        FpEliminator E2 = reldetail::eliminate(c, b, rb, ns);
        if (E.rank() != E2.rank()) continue;
        RelationBasis<Fp> out;
        out.degree = n;
        out.provenance = "mod " + std::to_string(c.f[7].modulus());
        u64 p = c.f[7].modulus();
        for (size_t fc : E.free_cols()) {
            auto kv = E.kernel_vector(fc);
            std::vector<Fp> v(kv.size());
            for (size_t i = 0; i < kv.size(); ++i) v[i] = Fp(kv[i], p);
            out.basis.push_back(std::move(v));
        }
        Rng rv = rng.fork(500 + (u64)attempt);
        bool all_ok = true;
        for (const auto& v : out.basis)
            if (!verify_relation(c, v, n, 16, rv)) all_ok = false;
        if (!all_ok) continue;
        return out;
    }
    throw RankUnstable("kernel did not stabilize across sample batches");
}

namespace reldetail {

struct PrimeKernel {
    u64 p;
    std::vector<std::size_t> pivots, frees;
    std::map<std::size_t, std::vector<u64>> rref; // pivot col -> RREF row
};

inline PrimeKernel prime_kernel(const Curve<Rational>& cq, const MonomialBasis& b, u64 p, Rng rng,
                                size_t ns) {
    Curve<Fp> cp = reduce_mod(cq, p);
    FpEliminator E = eliminate(cp, b, rng, ns);
    PrimeKernel K;
    K.p = p;
    K.pivots = E.pivot_cols();
    K.frees = E.free_cols();
    for (size_t pc : K.pivots) K.rref[pc] = E.rref_row_for_col(pc);
    return K;
}

} // namespace reldetail

// ℚ-coefficient relations: canonical mod-p kernels at ≥ 2 primes with matching
// pivot structure, entries lifted by CRT + rational reconstruction, then
// verified exactly at rational classes and probabilistically at a fresh prime.
inline RelationBasis<Rational> find_relations(const Curve<Rational>& c, int n, Rng& rng,
                                              unsigned bits = 30) {
    if (n < 2 || n > 4) throw Error("find_relations: degree must be 2..4");
    MonomialBasis b = MonomialBasis::make(n);
    size_t base = b.size() + 30;
    for (int attempt = 0; attempt < 3; ++attempt) {
        size_t ns = base << attempt;
        std::vector<reldetail::PrimeKernel> ks;
        auto add_prime = [&]() {
            u64 p;
            bool fresh;
            do {
                p = good_prime(c, rng, bits);
                fresh = true;
                for (const auto& k : ks)
                    if (k.p == p) fresh = false;
            } while (!fresh);
            ks.push_back(reldetail::prime_kernel(
                c, b, p, rng.fork(1000 + 100 * (u64)attempt + (u64)ks.size()), ns));
        };
        add_prime();
        add_prime();
        bool consistent = true;
        for (const auto& k : ks)
            if (k.pivots != ks[0].pivots) consistent = false;
        if (!consistent) continue;

        // lift the canonical kernel entry-wise
        bool lifted = true;
        RelationBasis<Rational> out;
        out.degree = n;
        for (size_t fi = 0; fi < ks[0].frees.size() && lifted; ++fi) {
            size_t fc = ks[0].frees[fi];
            std::vector<Rational> v(b.size());
            v[fc] = Rational(1);
            for (size_t pc : ks[0].pivots) {
                for (int grow = 0;; ++grow) {
                    std::vector<u64> res, mods;
                    for (const auto& k : ks) {
                        u64 e = k.rref.at(pc)[fc];
                        res.push_back(e ? k.p - e : 0); // entry is −rref
                        mods.push_back(k.p);
                    }
                    auto r = rational_reconstruct(res, mods);
                    if (r) {
                        v[pc] = *r;
                        break;
                    }
                    if (ks.size() >= 12) {
                        lifted = false;
                        break;
                    }
                    add_prime();
                    if (ks.back().pivots != ks[0].pivots) {
                        lifted = false;
                        break;
                    }
                }
                if (!lifted) break;
            }
            if (lifted) out.basis.push_back(std::move(v));
        }
        if (!lifted) continue;

        Rng rv = rng.fork(2000 + (u64)attempt);
        bool verified = true;
        for (const auto& v : out.basis)
            if (!verify_relation(c, v, n, 24, rv, bits)) verified = false;
        if (!verified) continue;

        out.provenance = "crt";
        for (const auto& k : ks) out.provenance += " " + std::to_string(k.p);
        return out;
    }
    throw RankUnstable("kernel did not stabilize across primes");
}

struct D4Report {
    long d4 = 0;
    bool holds = false;
};

inline D4Report check_conjecture_d4(const Curve<Fp>& c, Rng& rng) {
    long v = d(c, 4, rng);
    return {v, v == 260};
}

inline D4Report check_conjecture_d4(const Curve<Rational>& c, Rng& rng, unsigned bits = 30) {
    long v = d(c, 4, rng, bits);
    return {v, v == 260};
}

} // namespace kummer3
