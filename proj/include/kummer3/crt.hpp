#pragma once

#include <optional>
#include <span>
#include <vector>

#include "errors.hpp"
#include "fp.hpp"
#include "rational.hpp"

namespace kummer3 {

// residues r_i mod pairwise-coprime m_i -> (x mod prod m_i) with 0 <= x < M
inline std::pair<Int, Int> crt_combine(std::span<const u64> residues, std::span<const u64> moduli) {
    if (residues.size() != moduli.size() || residues.empty())
        throw Error("crt_combine: bad input sizes");
    Int x = residues[0], M = moduli[0];
    for (std::size_t i = 1; i < residues.size(); ++i) {
        Int m(moduli[i]), r(residues[i]);
        Int minv;
        if (mpz_invert(minv.get_mpz_t(), M.get_mpz_t(), m.get_mpz_t()) == 0)
            throw Error("crt_combine: moduli not coprime");
        Int t = ((r - x) * minv) % m;
        if (t < 0) t += m;
        x += M * t;
        M *= m;
    }
    return {x, M};
}

// The unique u/v with |u|, v <= sqrt(M/2), gcd(u,v)=1, u = v*r mod M -- if it
// exists (half-extended Euclid on (M, r)).
inline std::optional<Rational> rational_reconstruct(const Int& r0, const Int& M) {
    if (M <= 1) return std::nullopt;
    Int bound2 = M / 2; // accept u when 2*u^2 <= M, i.e. u^2 <= bound2
    Int r = r0 % M;
    if (r < 0) r += M;
    Int a = M, b = r;
    Int ta = 0, tb = 1;
    while (b * b > bound2) {
        Int q = a / b;
        Int c = a - q * b;
        Int tc = ta - q * tb;
        a = b; b = c;
        ta = tb; tb = tc;
    }
    Int u = b, v = tb;
    if (v == 0) return std::nullopt;
    if (v < 0) { u = -u; v = -v; }
    if (v * v > bound2) return std::nullopt;
    Int g;
    mpz_gcd(g.get_mpz_t(), u.get_mpz_t(), v.get_mpz_t());
    if (g != 1) return std::nullopt;
    Int gv;
    mpz_gcd(gv.get_mpz_t(), v.get_mpz_t(), M.get_mpz_t());
    if (gv != 1) return std::nullopt;
    // u = v*r mod M holds by the Euclidean invariant; keep the cheap check
    Int chk = (u - v * r) % M;
    if (chk != 0) return std::nullopt;
    return Rational(u, v);
}

inline std::optional<Rational> rational_reconstruct(std::span<const u64> residues,
                                                    std::span<const u64> moduli) {
    auto [x, M] = crt_combine(residues, moduli);
    return rational_reconstruct(x, M);
}

} // namespace kummer3
