#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "crt.hpp"
#include "errors.hpp"
#include "fp.hpp"
#include "poly.hpp"
#include "rational.hpp"
#include "rng.hpp"

namespace kummer3 {

inline u64 mod_u64(const Int& z, u64 p) { return mpz_fdiv_ui(z.get_mpz_t(), p); }

inline Fp reduce_mod(const Rational& q, u64 p) {
    u64 d = mod_u64(q.den(), p);
    if (d == 0) throw FieldMismatch("reduce_mod: denominator divisible by " + std::to_string(p));
    return Fp(mod_u64(q.num(), p), p) / Fp(d, p);
}

inline Poly<Fp> reduce_mod(const Poly<Rational>& g, u64 p) {
    std::vector<Fp> c;
    c.reserve(g.coeffs().size());
    for (const auto& q : g.coeffs()) c.push_back(reduce_mod(q, p));
    return Poly<Fp>(std::move(c));
}

// Distinct roots of g in F_p, ascending by value.
inline std::vector<Fp> fp_roots(const Poly<Fp>& g0) {
    if (g0.is_zero()) throw Error("fp_roots: zero polynomial");
    if (g0.degree() == 0) return {};
    u64 p = g0.lead().modulus();
    std::vector<u64> out;
    if (p <= 4096) {
        for (u64 v = 0; v < p; ++v)
            if (g0.eval(Fp(v, p)).is_zero()) out.push_back(v);
    } else {
        // h = gcd(g, X^p - X): monic, squarefree, splits over F_p
        Poly<Fp> g = g0.monic();
        Poly<Fp> x = Poly<Fp>::monomial(Fp(1, p), 1);
        Poly<Fp> sub = powmod(x, p, g) - x;
        Poly<Fp> h = sub.is_zero() ? g : gcd(g, sub);
        // split by the quadratic character of shifted roots (deterministic shifts)
        std::vector<Poly<Fp>> stack{h};
        while (!stack.empty()) {
            Poly<Fp> cur = std::move(stack.back());
            stack.pop_back();
            if (cur.degree() < 1) continue;
            if (cur.degree() == 1) {
                out.push_back((-cur.coeff(0, cur.lead())).value());
                continue;
            }
            for (u64 t = 0;; ++t) {
                Poly<Fp> shifted(std::vector<Fp>{Fp(t, p), Fp(1, p)});
                Poly<Fp> w = powmod(shifted, (p - 1) / 2, cur) - Poly<Fp>::constant(Fp(1, p));
                Poly<Fp> d = w.is_zero() ? cur : gcd(cur, w);
                if (d.degree() > 0 && d.degree() < cur.degree()) {
                    stack.push_back(cur / d);
                    stack.push_back(std::move(d));
                    break;
                }
            }
        }
    }
    std::sort(out.begin(), out.end());
    std::vector<Fp> r;
    r.reserve(out.size());
    for (u64 v : out) r.emplace_back(v, p);
    return r;
}

// All rational roots of g, ascending. Multi-prime: residues of roots mod several
// good primes are matched by CRT + rational reconstruction, then verified exactly,
// so false positives are impossible; primes are added until the set stabilizes.
// If need > 0 and some prime shows fewer than `need` roots, returns {} early
// (g cannot have `need` rational roots).
inline std::vector<Rational> rational_roots(const Poly<Rational>& g0, Rng& rng, std::size_t need = 0) {
    if (g0.is_zero()) throw Error("rational_roots: zero polynomial");
    if (g0.degree() == 0) return {};
    Poly<Rational> g = g0.monic();
    g = (g / gcd(g, g.derivative())).monic(); // squarefree part
    std::vector<Rational> out;
    if (g.degree() == 1) {
        out.push_back(-g.coeff(0, g.lead()));
        return out;
    }
    Rational disc = discriminant(g);
    auto good = [&](u64 p) {
        if (mod_u64(disc.num(), p) == 0 || mod_u64(disc.den(), p) == 0) return false;
        for (const auto& c : g.coeffs())
            if (mod_u64(c.den(), p) == 0) return false;
        return true;
    };

    std::vector<u64> primes;
    std::vector<std::vector<u64>> residues; // per prime, ascending root values
    std::map<std::string, Rational> verified;
    std::size_t prev = (std::size_t)-1;
    for (int k = 0; k < 4; ++k) {
        u64 p = random_prime(rng, 60, good);
        auto rts = fp_roots(reduce_mod(g, p));
        if (need > 0 && rts.size() < need) return {};
        primes.push_back(p);
        std::vector<u64> vals;
        for (const auto& r : rts) vals.push_back(r.value());
        residues.push_back(std::move(vals));

        // cartesian residue tuples -> CRT -> reconstruct -> verify
        std::vector<std::size_t> idx(primes.size(), 0);
        std::vector<u64> tuple(primes.size());
        bool done_tuples = false;
        for (const auto& rs : residues)
            if (rs.empty()) done_tuples = true;
        while (!done_tuples) {
            for (std::size_t i = 0; i < primes.size(); ++i) tuple[i] = residues[i][idx[i]];
            if (auto cand = rational_reconstruct(tuple, primes)) {
                std::string key = cand->str();
                if (!verified.count(key) && g.eval(*cand).is_zero()) verified.emplace(key, *cand);
            }
            std::size_t i = 0;
            for (; i < idx.size(); ++i) {
                if (++idx[i] < residues[i].size()) break;
                idx[i] = 0;
            }
            if (i == idx.size()) done_tuples = true;
        }
        if (k >= 1 && verified.size() == prev) break;
        prev = verified.size();
    }
    for (auto& [key, r] : verified) out.push_back(r);
    std::sort(out.begin(), out.end(),
              [](const Rational& a, const Rational& b) { return (a - b).sign() < 0; });
    return out;
}

} // namespace kummer3
