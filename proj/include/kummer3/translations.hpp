#pragma once

#include <algorithm>
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

// Translation by a 2-torsion class T descends to the Kummer image as a linear
// map of P⁷: an 8×8 matrix W_T, unique up to scale, with κ(P+T) ∝ W_T·κ(P).
template <Scalar K>
struct TranslationMatrix {
    JacobianPoint<K> T;
    Matrix<K> M; // canonical scale: first nonzero entry (row-major) is 1
};

// Interpolate W_T from sample pairs (κ(P), κ(P+T)). Each sample contributes
// the 28 cross-product equations (W·x)_i y_j = (W·x)_j y_i, linear in the 64
// entries; generic samples cut the solution space to one dimension.
template <Scalar K>
TranslationMatrix<K> derive_translation(const Curve<K>& c, const JacobianPoint<K>& T,
                                        const std::vector<JacobianPoint<K>>& samples) {
    if (!is_identity(double_point(c, T)))
        throw Error("derive_translation: T is not 2-torsion");
    if (samples.size() < 10)
        throw Error("derive_translation: need at least 10 samples");
    const K zero = c.ex();
    std::vector<std::vector<K>> rows;
    rows.reserve(samples.size() * 28);
    for (const auto& P : samples) {
        auto x = canonicalize(kappa(c, P)).x;
        auto y = canonicalize(kappa(c, add(c, P, T))).x;
        for (std::size_t i = 0; i < 8; ++i)
            for (std::size_t j = i + 1; j < 8; ++j) {
                std::vector<K> row(64, zero);
                for (std::size_t k = 0; k < 8; ++k) {
                    row[i * 8 + k] = x[k] * y[j];
                    row[j * 8 + k] = -(x[k] * y[i]);
                }
                rows.push_back(std::move(row));
            }
    }
    Matrix<K> ker = Matrix<K>::from_rows(rows, zero).nullspace();
    if (ker.rows() == 0) throw KernelEmpty("translation system is inconsistent");
    if (ker.rows() > 1)
        throw KernelTooBig("translation matrix not determined up to scale (kernel dim " +
                           std::to_string(ker.rows()) + ")");
    K scale = zero;
    for (std::size_t e = 0; e < 64 && scale.is_zero(); ++e)
        if (!ker.at(0, e).is_zero()) scale = ker.at(0, e).inv();
    Matrix<K> M(8, 8, zero);
    for (std::size_t i = 0; i < 8; ++i)
        for (std::size_t j = 0; j < 8; ++j) M.at(i, j) = ker.at(0, i * 8 + j) * scale;
    return {T, M};
}

namespace trandetail {

// reduction of a rational matrix mod p, rescaled to the canonical form
// (first nonzero entry 1, row-major)
inline Matrix<Fp> reduce_and_scale(const Matrix<Rational>& M, u64 p) {
    Matrix<Fp> R(M.rows(), M.cols(), Fp(0, p));
    for (std::size_t i = 0; i < M.rows(); ++i)
        for (std::size_t j = 0; j < M.cols(); ++j) R.at(i, j) = reduce_mod(M.at(i, j), p);
    Fp s(0, p);
    for (std::size_t i = 0; i < M.rows() && s.is_zero(); ++i)
        for (std::size_t j = 0; j < M.cols() && s.is_zero(); ++j)
            if (!R.at(i, j).is_zero()) s = R.at(i, j).inv();
    if (s.is_zero()) throw FieldMismatch("matrix reduces to zero mod " + std::to_string(p));
    for (std::size_t i = 0; i < M.rows(); ++i)
        for (std::size_t j = 0; j < M.cols(); ++j) R.at(i, j) = R.at(i, j) * s;
    return R;
}

} // namespace trandetail

// ℚ: generic rational sample classes are not cheaply available, so derive mod
// two good primes (each canonically scaled), glue entrywise by CRT + rational
// reconstruction, and cross-check the result against a derivation mod a fresh
// prime. Primes are added until every entry reconstructs.
inline TranslationMatrix<Rational> derive_translation(const Curve<Rational>& c,
                                                      const JacobianPoint<Rational>& T,
                                                      Rng& rng, unsigned bits = 30) {
    if (!is_identity(double_point(c, T)))
        throw Error("derive_translation: T is not 2-torsion");
    auto derive_mod = [&](u64 p, Rng rd) {
        Curve<Fp> cp = reduce_mod(c, p);
        JacobianPoint<Fp> Tp{reduce_mod(T.a, p), reduce_mod(T.b, p)};
        std::vector<JacobianPoint<Fp>> samples;
        for (int i = 0; i < 12; ++i) samples.push_back(random_point(cp, rd));
        return derive_translation(cp, Tp, samples);
    };
    for (int attempt = 0; attempt < 3; ++attempt) {
        std::vector<u64> primes;
        std::vector<Matrix<Fp>> mats;
        while (primes.size() < 6) {
            u64 p;
            do {
                p = good_prime(c, rng, bits);
            } while (std::find(primes.begin(), primes.end(), p) != primes.end());
            Matrix<Fp> Wp;
            try {
                Wp = derive_mod(p, rng.fork(100 * (u64)attempt + primes.size())).M;
            } catch (const Error&) {
                break; // non-generic prime or unlucky samples; restart
            }
            primes.push_back(p);
            mats.push_back(std::move(Wp));
            if (primes.size() < 2) continue;

            Matrix<Rational> M(8, 8, c.ex());
            bool full = true;
            std::vector<u64> residues(primes.size());
            for (std::size_t i = 0; i < 8 && full; ++i)
                for (std::size_t j = 0; j < 8; ++j) {
                    for (std::size_t k = 0; k < primes.size(); ++k)
                        residues[k] = mats[k].at(i, j).value();
                    auto q = rational_reconstruct(residues, primes);
                    if (!q) {
                        full = false;
                        break;
                    }
                    M.at(i, j) = *q;
                }
            if (!full) continue; // add another prime

            bool checked = false;
            for (int v = 0; v < 4 && !checked; ++v) {
                u64 pf;
                do {
                    pf = good_prime(c, rng, bits);
                } while (std::find(primes.begin(), primes.end(), pf) != primes.end());
                try {
                    Matrix<Fp> Wf = derive_mod(pf, rng.fork(7000 + (u64)v).fork((u64)attempt)).M;
                    if (!(trandetail::reduce_and_scale(M, pf) == Wf)) {
                        checked = false;
                        break; // wrong reconstruction; restart with fresh primes
                    }
                    checked = true;
                } catch (const FieldMismatch&) {
                    continue; // denominator hit the prime; redraw
                } catch (const Error&) {
                    continue;
                }
            }
            if (checked) return {T, M};
            break;
        }
    }
    throw ReconstructionFailed("translation matrix could not be reconstructed over the rationals");
}

// All 64 matrices, in the canonical two-torsion order, from one sample pool.
inline std::vector<TranslationMatrix<Fp>> all_translations(const Curve<Fp>& c, Rng& rng,
                                                           std::size_t nsamples = 12) {
    std::vector<JacobianPoint<Fp>> samples;
    samples.reserve(nsamples);
    for (std::size_t i = 0; i < nsamples; ++i) samples.push_back(random_point(c, rng));
    std::vector<TranslationMatrix<Fp>> out;
    out.reserve(64);
    for (const auto& T : two_torsion(c)) out.push_back(derive_translation(c, T, samples));
    return out;
}

// Degree-2 monomial values at the 64 canonical torsion images: a 36×64 matrix
// of rank 35 whose left kernel is spanned by the quadric's coefficient vector.
template <Scalar K>
struct TwoTorsionGram {
    Matrix<K> S; // rows: degree-2 monomials in basis order; columns: torsion classes
    std::vector<JacobianPoint<K>> torsion;
};

namespace trandetail {

template <Scalar K>
TwoTorsionGram<K> gram_from_torsion(const Curve<K>& c,
                                    std::vector<JacobianPoint<K>> torsion) {
    MonomialBasis b2 = MonomialBasis::make(2);
    Matrix<K> S(b2.size(), torsion.size(), c.ex());
    for (std::size_t j = 0; j < torsion.size(); ++j) {
        auto vals = b2.evaluate(canonicalize(kappa(c, torsion[j])).x);
        for (std::size_t i = 0; i < vals.size(); ++i) S.at(i, j) = vals[i];
    }
    return {std::move(S), std::move(torsion)};
}

} // namespace trandetail

inline TwoTorsionGram<Fp> two_torsion_gram(const Curve<Fp>& c) {
    return trandetail::gram_from_torsion(c, two_torsion(c));
}
inline TwoTorsionGram<Rational> two_torsion_gram(const Curve<Rational>& c, Rng& rng) {
    return trandetail::gram_from_torsion(c, two_torsion(c, rng));
}

} // namespace kummer3
