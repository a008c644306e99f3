#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "scalar.hpp"

namespace kummer3 {

// Univariate polynomial, coefficients low -> high, trailing zeros trimmed.
// The empty vector is the zero polynomial (degree -1).
template <Scalar K>
class Poly {
  public:
    Poly() = default;
    explicit Poly(std::vector<K> c) : c_(std::move(c)) { trim(); }

    static Poly constant(const K& a) { return a.is_zero() ? Poly() : Poly(std::vector<K>{a}); }
    // a * X^d
    static Poly monomial(const K& a, int d) {
        if (a.is_zero()) return Poly();
        std::vector<K> c((size_t)d + 1, a.zero());
        c.back() = a;
        return Poly(std::move(c));
    }
    // X - r
    static Poly linear_root(const K& r) { return Poly(std::vector<K>{-r, r.one()}); }

    int degree() const { return (int)c_.size() - 1; }
    bool is_zero() const { return c_.empty(); }
    const K& lead() const { return c_.back(); }
    const std::vector<K>& coeffs() const { return c_; }
    // coefficient of X^i, with an exemplar for out-of-range reads
    K coeff(int i, const K& ex) const {
        return (i >= 0 && i < (int)c_.size()) ? c_[(size_t)i] : ex.zero();
    }

    bool operator==(const Poly& o) const { return c_ == o.c_; }
    bool operator!=(const Poly& o) const { return !(*this == o); }

    Poly operator-() const {
        std::vector<K> r = c_;
        for (auto& a : r) a = -a;
        return Poly(std::move(r));
    }
    Poly operator+(const Poly& o) const {
        const auto &x = c_, &y = o.c_;
        if (x.empty()) return o;
        if (y.empty()) return *this;
        std::vector<K> r(std::max(x.size(), y.size()), x[0].zero());
        for (size_t i = 0; i < x.size(); ++i) r[i] = x[i];
        for (size_t i = 0; i < y.size(); ++i) r[i] = r[i] + y[i];
        return Poly(std::move(r));
    }
    Poly operator-(const Poly& o) const { return *this + (-o); }
    Poly operator*(const Poly& o) const {
        if (c_.empty() || o.c_.empty()) return Poly();
        std::vector<K> r(c_.size() + o.c_.size() - 1, c_[0].zero());
        for (size_t i = 0; i < c_.size(); ++i)
            for (size_t j = 0; j < o.c_.size(); ++j)
                r[i + j] = r[i + j] + c_[i] * o.c_[j];
        return Poly(std::move(r));
    }
    Poly operator*(const K& a) const {
        if (a.is_zero()) return Poly();
        std::vector<K> r = c_;
        for (auto& x : r) x = x * a;
        return Poly(std::move(r));
    }

    // quotient and remainder; divisor must be nonzero
    std::pair<Poly, Poly> divrem(const Poly& d) const {
        if (d.is_zero()) throw Error("Poly: division by zero polynomial");
        if (degree() < d.degree()) return {Poly(), *this};
        K linv = d.lead().inv();
        std::vector<K> rem = c_;
        std::vector<K> quo((size_t)(degree() - d.degree()) + 1, c_[0].zero());
        for (int i = degree(); i >= d.degree(); --i) {
            K q = rem[(size_t)i] * linv;
            if (!q.is_zero()) {
                quo[(size_t)(i - d.degree())] = q;
                for (int j = 0; j <= d.degree(); ++j)
                    rem[(size_t)(i - d.degree() + j)] = rem[(size_t)(i - d.degree() + j)] - q * d.c_[(size_t)j];
            }
        }
        return {Poly(std::move(quo)), Poly(std::move(rem))};
    }
    Poly operator/(const Poly& d) const { return divrem(d).first; }
    Poly operator%(const Poly& d) const { return divrem(d).second; }

    Poly monic() const {
        if (is_zero() || lead().is_one()) return *this;
        return *this * lead().inv();
    }

    Poly derivative() const {
        if (degree() < 1) return Poly();
        std::vector<K> r(c_.size() - 1, c_[0].zero());
        for (size_t i = 1; i < c_.size(); ++i) r[i - 1] = c_[i] * c_[i].from_int((long)i);
        return Poly(std::move(r));
    }

    K eval(const K& x) const {
        K r = x.zero();
        for (size_t i = c_.size(); i-- > 0;) r = r * x + c_[i];
        return r;
    }

  private:
    void trim() {
        while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
    }
    std::vector<K> c_;
};

// (g, u, v) with u*a + v*b = g, g = gcd(a,b) monic
template <Scalar K>
std::tuple<Poly<K>, Poly<K>, Poly<K>> xgcd(const Poly<K>& a, const Poly<K>& b) {
    Poly<K> r0 = a, r1 = b;
    Poly<K> u0, u1, v0, v1;
    if (!a.is_zero()) {
        u0 = Poly<K>::constant(a.lead().one());
        v1 = Poly<K>::constant(a.lead().one());
    } else if (!b.is_zero()) {
        u0 = Poly<K>::constant(b.lead().one());
        v1 = Poly<K>::constant(b.lead().one());
    } else {
        return {Poly<K>(), Poly<K>(), Poly<K>()};
    }
    // invariant: r0 = u0*a + v0*b, r1 = u1*a + v1*b
    while (!r1.is_zero()) {
        auto [q, r] = r0.divrem(r1);
        Poly<K> u2 = u0 - q * u1, v2 = v0 - q * v1;
        r0 = std::move(r1); r1 = std::move(r);
        u0 = std::move(u1); u1 = std::move(u2);
        v0 = std::move(v1); v1 = std::move(v2);
    }
    K linv = r0.lead().inv();
    return {r0 * linv, u0 * linv, v0 * linv};
}

template <Scalar K>
Poly<K> gcd(Poly<K> a, Poly<K> b) {
    while (!b.is_zero()) {
        Poly<K> r = a % b;
        a = std::move(b);
        b = std::move(r);
    }
    return a.monic();
}

// resultant via the Euclidean recurrence
template <Scalar K>
K resultant(const Poly<K>& A, const Poly<K>& B, const K& ex) {
    if (A.is_zero() || B.is_zero()) {
        // res with the zero polynomial: 1 only if the other is a nonzero constant
        const Poly<K>& other = A.is_zero() ? B : A;
        return other.degree() == 0 ? ex.one() : ex.zero();
    }
    if (A.degree() < B.degree()) {
        K r = resultant(B, A, ex);
        return ((A.degree() * B.degree()) % 2) ? -r : r;
    }
    if (B.degree() == 0) {
        K b = B.lead(), r = ex.one();
        for (int i = 0; i < A.degree(); ++i) r = r * b;
        return r;
    }
    Poly<K> rem = A % B;
    if (rem.is_zero()) return ex.zero();
    K lc = B.lead(), scale = ex.one();
    for (int i = 0; i < A.degree() - rem.degree(); ++i) scale = scale * lc;
    K rec = resultant(B, rem, ex);
    K out = scale * rec;
    return ((A.degree() * B.degree()) % 2) ? -out : out;
}

// disc(F) = (-1)^{d(d-1)/2} res(F, F') / lc(F)
template <Scalar K>
K discriminant(const Poly<K>& F) {
    if (F.degree() < 1) throw Error("discriminant of a constant");
    const K& lc = F.lead();
    K r = resultant(F, F.derivative(), lc);
    r = r / lc;
    int d = F.degree();
    return ((d * (d - 1) / 2) % 2) ? -r : r;
}

template <Scalar K>
Poly<K> mulmod(const Poly<K>& a, const Poly<K>& b, const Poly<K>& m) {
    return (a * b) % m;
}

template <Scalar K>
Poly<K> powmod(Poly<K> base, std::uint64_t e, const Poly<K>& m) {
    Poly<K> r = Poly<K>::constant(m.lead().one());
    base = base % m;
    while (e) {
        if (e & 1) r = mulmod(r, base, m);
        base = mulmod(base, base, m);
        e >>= 1;
    }
    return r;
}

// ---------------------------------------------------------------------------
// Sparse forms in the eight ambient coordinates x1..x8 (exports, evaluation).

using Expo8 = std::array<std::uint8_t, 8>;

inline int expo_total(const Expo8& e) {
    int t = 0;
    for (auto v : e) t += v;
    return t;
}

// graded lex with x1 > x2 > ... > x8: higher total degree first, ties by
// descending lexicographic exponent vector
inline bool grlex_less(const Expo8& a, const Expo8& b) {
    int ta = expo_total(a), tb = expo_total(b);
    if (ta != tb) return ta < tb;
    return a < b; // a earlier in grlex order <=> lexicographically larger
}
inline bool grlex_greater(const Expo8& a, const Expo8& b) { return grlex_less(b, a); }

template <Scalar K>
struct Form8 {
    struct Term {
        Expo8 e;
        K c;
    };
    std::vector<Term> terms; // grlex-descending, no zero coefficients

    void normalize() {
        std::sort(terms.begin(), terms.end(),
                  [](const Term& a, const Term& b) { return grlex_greater(a.e, b.e); });
        std::vector<Term> out;
        for (auto& t : terms) {
            if (t.c.is_zero()) continue;
            if (!out.empty() && out.back().e == t.e)
                out.back().c = out.back().c + t.c;
            else
                out.push_back(t);
            if (!out.empty() && out.back().c.is_zero()) out.pop_back();
        }
        terms = std::move(out);
    }

    bool is_zero() const { return terms.empty(); }

    int degree() const {
        int d = -1;
        for (auto& t : terms) d = std::max(d, expo_total(t.e));
        return d;
    }

    K eval(std::span<const K, 8> x) const {
        if (terms.empty()) return x[0].zero();
        K acc = x[0].zero();
        for (auto& t : terms) {
            K v = t.c;
            for (int i = 0; i < 8; ++i)
                for (int k = 0; k < t.e[(size_t)i]; ++k) v = v * x[(size_t)i];
            acc = acc + v;
        }
        return acc;
    }
};

} // namespace kummer3
