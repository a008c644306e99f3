#pragma once

#include <algorithm>
#include <array>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "crt.hpp"
#include "curve.hpp"
#include "errors.hpp"
#include "jacobian.hpp"
#include "kummer.hpp"
#include "linalg.hpp"
#include "relations.hpp"
#include "rng.hpp"
#include "roots.hpp"

namespace kummer3 {

// The duplication quartics δ′: eight degree-4 forms with κ(2P) ∝ δ′(κ(P)).
// Coefficients are stored over the full degree-4 monomial basis (length 330);
// entries off the pivot support of the evaluation span are zero. The map is
// pinned up to nothing — scaled so the x₈⁴ coefficient of the last component
// equals f₇², which makes δ′(e₈) = f₇²·e₈ exactly and the whole coefficient
// table sample-independent.
template <Scalar K>
struct DuplicationMap {
    std::array<std::vector<K>, 8> delta;
    std::string provenance;
};

template <Scalar K>
std::array<K, 8> apply_duplication(const DuplicationMap<K>& d, const std::array<K, 8>& x,
                                   const MonomialBasis& b4) {
    auto mv = b4.evaluate(x);
    std::array<K, 8> out{};
    for (std::size_t i = 0; i < 8; ++i) {
        K acc = x[0].zero();
        for (std::size_t m = 0; m < mv.size(); ++m)
            if (!d.delta[i][m].is_zero()) acc = acc + d.delta[i][m] * mv[m];
        out[i] = acc;
    }
    return out;
}

template <Scalar K>
std::array<K, 8> apply_duplication(const DuplicationMap<K>& d, const std::array<K, 8>& x) {
    return apply_duplication(d, x, MonomialBasis::make(4));
}

// τ rescales the last coordinate by f₇ (inverse: divides). Conjugating δ′ by
// τ and clearing denominators yields the normalized duplication map δ below.
template <Scalar K>
KummerPoint<K> apply_tau(const Curve<K>& c, const KummerPoint<K>& k, bool inverse = false) {
    KummerPoint<K> r = k;
    r.x[7] = inverse ? r.x[7] / c.f[7] : r.x[7] * c.f[7];
    return r;
}

// δ = f₇·(τ ∘ δ′ ∘ τ⁻¹): the coefficient at monomial m in component i picks
// up f₇^(1−e₈(m)), or f₇^(2−e₈(m)) in the last component, where e₈(m) is the
// x₈-exponent of m. Fixes the identity exactly: δ(e₈) = e₈.
template <Scalar K>
DuplicationMap<K> normalized_duplication(const Curve<K>& c, const DuplicationMap<K>& dp) {
    MonomialBasis b4 = MonomialBasis::make(4);
    const K one = c.ex().one();
    const K f7 = c.f[7];
    const K inv = f7.inv();
    const std::array<K, 6> pw{inv * inv * inv, inv * inv, inv, one, f7, f7 * f7};
    DuplicationMap<K> out;
    out.provenance = dp.provenance;
    for (std::size_t i = 0; i < 8; ++i) {
        out.delta[i].assign(b4.size(), c.ex());
        for (std::size_t m = 0; m < b4.size(); ++m) {
            if (dp.delta[i][m].is_zero()) continue;
            int k = (i == 7 ? 2 : 1) - (int)b4.at(m)[7];
            out.delta[i][m] = dp.delta[i][m] * pw[(std::size_t)(k + 3)];
        }
    }
    return out;
}

namespace dupdetail {

// pivot columns of the degree-4 evaluation span at full rank 260
inline std::vector<std::size_t> quartic_pivots(const Curve<Fp>& c, const MonomialBasis& b4,
                                               Rng& rng) {
    for (int attempt = 0; attempt < 2; ++attempt) {
        Rng ra = rng.fork((u64)attempt);
        FpEliminator E = reldetail::eliminate(c, b4, ra, (b4.size() + 90) << attempt);
        if (E.rank() == 260) return E.pivot_cols();
        if (attempt == 1)
            throw KernelUnexpectedDim("degree-4 evaluation rank " + std::to_string(E.rank()) +
                                      ", expected 260");
    }
    return {}; // unreachable
}

// Solve for δ′ from proportionality constraints κ(2P) ∝ δ′(κ(P)). Unknowns
// are the 8·260 coefficients on the pivot support (off-pivot coefficients of
// the canonical solution vanish); each sample contributes, for its anchor
// index a (first nonzero of the canonical κ(2P), so w_a = 1), the 7 rows
//     δ′_k(x)·w_a − δ′_a(x)·w_k = 0,   k ≠ a.
// Generic samples cut the kernel to exactly one dimension.
inline DuplicationMap<Fp> derive_fp(const Curve<Fp>& c, Rng& rng, std::size_t max_samples,
                                    std::vector<std::size_t>* pivots_out) {
    require_derivation_char(c);
    const u64 p = c.ex().modulus();
    MonomialBasis b4 = MonomialBasis::make(4);
    Rng rp = rng.fork(11);
    std::vector<std::size_t> piv = quartic_pivots(c, b4, rp);
    const std::size_t NP = piv.size();
    const std::size_t NC = 8 * NP;

    FpEliminator E(p, NC);
    Rng rs = rng.fork(22);
    std::vector<u64> row(NC);
    std::size_t used = 0, confirmed = 0;
    while (used < max_samples && confirmed < 12) {
        JacobianPoint<Fp> P = random_point(c, rs);
        auto x = canonicalize(kappa(c, P)).x;
        auto w = canonicalize(kappa(c, double_point(c, P))).x;
        auto mv = b4.evaluate(x);
        std::size_t anchor = 0;
        while (w[anchor].is_zero()) ++anchor;
        bool grew = false;
        for (std::size_t k = 0; k < 8; ++k) {
            if (k == anchor) continue;
            std::fill(row.begin(), row.end(), 0);
            for (std::size_t t = 0; t < NP; ++t) {
                const Fp& m = mv[piv[t]];
                if (m.is_zero()) continue;
                row[k * NP + t] = m.value();
                row[anchor * NP + t] = (-(m * w[k])).value();
            }
            grew = E.add_row(row) || grew;
        }
        ++used;
        if (E.rank() >= NC - 1) confirmed = grew ? 1 : confirmed + 1;
    }
    if (E.rank() != NC - 1)
        throw KernelUnexpectedDim("duplication system rank " + std::to_string(E.rank()) +
                                  " of " + std::to_string(NC) +
                                  ": kernel dimension is not 1");

    std::vector<u64> v = E.kernel_vector_echelon(E.free_cols()[0]);

    // x₈⁴ is always a pivot (no vanishing form writes it in earlier monomials)
    std::size_t m84 = (std::size_t)b4.index_of(Expo8{0, 0, 0, 0, 0, 0, 0, 4});
    auto it = std::lower_bound(piv.begin(), piv.end(), m84);
    if (it == piv.end() || *it != m84)
        throw KernelUnexpectedDim("x8^4 column is not a pivot of the evaluation span");
    Fp alpha(v[7 * NP + (std::size_t)(it - piv.begin())], p);
    if (alpha.is_zero())
        throw KernelUnexpectedDim("kernel vector vanishes at the identity slot");
    Fp scale = c.f[7] * c.f[7] * alpha.inv();

    DuplicationMap<Fp> out;
    out.provenance = "mod " + std::to_string(p);
    for (std::size_t i = 0; i < 8; ++i) {
        out.delta[i].assign(b4.size(), c.ex());
        for (std::size_t t = 0; t < NP; ++t)
            out.delta[i][piv[t]] = Fp(v[i * NP + t], p) * scale;
    }
    if (pivots_out) *pivots_out = std::move(piv);
    return out;
}

inline DuplicationMap<Fp> reduce_map(const DuplicationMap<Rational>& d, u64 p) {
    DuplicationMap<Fp> out;
    out.provenance = d.provenance;
    for (std::size_t i = 0; i < 8; ++i) {
        out.delta[i].reserve(d.delta[i].size());
        for (const auto& q : d.delta[i]) out.delta[i].push_back(reduce_mod(q, p));
    }
    return out;
}

} // namespace dupdetail

// Does κ(2P) ∝ δ′(κ(P)) hold? Checks the identity, all two-torsion classes
// when f splits, and `trials` fresh points mixed across strata.
inline bool verify_theorem_duplication(const Curve<Fp>& c, const DuplicationMap<Fp>& d,
                                       int trials, Rng& rng) {
    MonomialBasis b4 = MonomialBasis::make(4);
    auto check = [&](const JacobianPoint<Fp>& P) {
        auto x = canonicalize(kappa(c, P)).x;
        auto w = kappa(c, double_point(c, P)).x;
        auto y = apply_duplication(d, x, b4);
        return proportional(std::vector<Fp>(y.begin(), y.end()),
                            std::vector<Fp>(w.begin(), w.end()));
    };
    if (!check(jac_identity(c.ex()))) return false;
    if (fp_roots(c.fx).size() == 7)
        for (const auto& T : two_torsion(c))
            if (!check(T)) return false;
    for (int t = 0; t < trials; ++t) {
        bool ok;
        if (t % 4 == 0) {
            auto A = random_affine_point(c, rng);
            ok = check(JacobianPoint<Fp>{Poly<Fp>::linear_root(A.x), Poly<Fp>::constant(A.y)});
        } else if (t % 4 == 1) {
            auto A = random_affine_point(c, rng);
            auto B = random_affine_point(c, rng);
            ok = check(add(c, JacobianPoint<Fp>{Poly<Fp>::linear_root(A.x), Poly<Fp>::constant(A.y)},
                           JacobianPoint<Fp>{Poly<Fp>::linear_root(B.x), Poly<Fp>::constant(B.y)}));
        } else {
            ok = check(random_point(c, rng));
        }
        if (!ok) return false;
    }
    return true;
}

inline DuplicationMap<Fp> derive_duplication(const Curve<Fp>& c, Rng& rng,
                                             std::size_t max_samples = 400) {
    DuplicationMap<Fp> d = dupdetail::derive_fp(c, rng, max_samples, nullptr);
    Rng rv = rng.fork(33);
    if (!verify_theorem_duplication(c, d, 12, rv))
        throw KernelUnexpectedDim("derived duplication map fails fresh-sample verification");
    return d;
}

// ℚ: exact checks at the identity and rational torsion, then delegation to a
// good prime for the sampled trials.
inline bool verify_theorem_duplication(const Curve<Rational>& c,
                                       const DuplicationMap<Rational>& d, int trials, Rng& rng,
                                       unsigned bits = 30) {
    MonomialBasis b4 = MonomialBasis::make(4);
    std::array<Rational, 8> e8{};
    for (auto& v : e8) v = c.ex();
    e8[7] = c.ex().one();
    auto ye = apply_duplication(d, e8, b4);
    for (std::size_t i = 0; i < 7; ++i)
        if (!ye[i].is_zero()) return false;
    if (ye[7].is_zero()) return false;

    Rng rf = rng.fork(1);
    auto roots = rational_roots(c.fx, rf, 7);
    if (roots.size() == 7) {
        for (const auto& T : two_torsion_from_roots(c, roots)) {
            auto y = apply_duplication(d, canonicalize(kappa(c, T)).x, b4);
            for (std::size_t i = 0; i < 7; ++i)
                if (!y[i].is_zero()) return false;
            if (y[7].is_zero()) return false;
        }
    }

    for (int a = 0; a < 8; ++a) {
        u64 p = good_prime(c, rng, bits);
        try {
            Rng rd = rng.fork(100 + (u64)a);
            return verify_theorem_duplication(reduce_mod(c, p), dupdetail::reduce_map(d, p),
                                              trials, rd);
        } catch (const FieldMismatch&) {
            continue; // coefficient denominator hit the prime; redraw
        }
    }
    throw Error("verify_theorem_duplication: no usable prime found");
}

// ℚ: derive mod several good primes (each canonically normalized, so the
// reductions agree with the rational map), match pivot structures, and glue
// entrywise by CRT + rational reconstruction. Primes are added until every
// coefficient reconstructs; the result must pass verification.
inline DuplicationMap<Rational> derive_duplication(const Curve<Rational>& c, Rng& rng,
                                                   unsigned bits = 30,
                                                   std::size_t max_samples = 400) {
    MonomialBasis b4 = MonomialBasis::make(4);
    for (int attempt = 0; attempt < 3; ++attempt) {
        std::vector<u64> primes;
        std::vector<DuplicationMap<Fp>> maps;
        std::vector<std::size_t> piv0;
        while (primes.size() < 10) {
            u64 p;
            do {
                p = good_prime(c, rng, bits);
            } while (std::find(primes.begin(), primes.end(), p) != primes.end());
            std::vector<std::size_t> piv;
            Rng rd = rng.fork(1000 + 100 * (u64)attempt + primes.size());
            DuplicationMap<Fp> dm;
            try {
                dm = dupdetail::derive_fp(reduce_mod(c, p), rd, max_samples, &piv);
            } catch (const KernelUnexpectedDim&) {
                break; // non-generic prime; restart with a fresh draw
            }
            if (!piv0.empty() && piv != piv0) break; // pivot structures must agree
            piv0 = std::move(piv);
            primes.push_back(p);
            maps.push_back(std::move(dm));
            if (primes.size() < 2) continue;

            DuplicationMap<Rational> out;
            bool full = true;
            std::vector<u64> residues(primes.size());
            for (std::size_t i = 0; i < 8 && full; ++i) {
                out.delta[i].assign(b4.size(), c.ex());
                for (std::size_t t = 0; t < piv0.size(); ++t) {
                    for (std::size_t k = 0; k < primes.size(); ++k)
                        residues[k] = maps[k].delta[i][piv0[t]].value();
                    auto q = rational_reconstruct(residues, primes);
                    if (!q) {
                        full = false;
                        break;
                    }
                    out.delta[i][piv0[t]] = *q;
                }
            }
            if (!full) continue; // add another prime
            out.provenance = "crt";
            for (u64 q : primes) out.provenance += " " + std::to_string(q);
            Rng rv = rng.fork(2000 + (u64)attempt);
            if (!verify_theorem_duplication(c, out, 24, rv, bits)) break;
            return out;
        }
    }
    throw ReconstructionFailed("duplication map could not be reconstructed over the rationals");
}

} // namespace kummer3
