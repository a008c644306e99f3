#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>

#include "errors.hpp"

namespace kummer3 {

using Int = mpz_class;

// Exact rational scalar. Thin wrapper over mpq_class that (a) always keeps the
// canonical form (gcd 1, positive denominator) and (b) exposes the same member
// surface as Fp so templated code treats both uniformly.
class Rational {
  public:
    Rational() : q_(0) {}
    Rational(const mpq_class& q) : q_(q) { canon(); }
    Rational(const Int& n) : q_(n) {}
    Rational(long n) : q_(n) {}
    Rational(const Int& n, const Int& d) : q_(n, d) {
        if (d == 0) throw Error("Rational: zero denominator");
        canon();
    }

    static Rational parse(const std::string& s) {
        // "a" or "a/b", base 10
        mpq_class q;
        if (q.set_str(s, 10) != 0) throw ParseError("bad rational literal: " + s);
        if (q.get_den() == 0) throw ParseError("zero denominator: " + s);
        q.canonicalize();
        return Rational(q);
    }

    const mpq_class& raw() const { return q_; }
    Int num() const { return q_.get_num(); }
    Int den() const { return q_.get_den(); }
    bool is_integer() const { return q_.get_den() == 1; }

    unsigned long long characteristic() const { return 0; }
    bool is_zero() const { return q_ == 0; }
    bool is_one() const { return q_ == 1; }
    Rational zero() const { return Rational(); }
    Rational one() const { return Rational(1); }
    Rational from_int(long v) const { return Rational(v); }

    Rational operator-() const { return Rational(mpq_class(-q_)); }
    Rational operator+(const Rational& o) const { return Rational(mpq_class(q_ + o.q_)); }
    Rational operator-(const Rational& o) const { return Rational(mpq_class(q_ - o.q_)); }
    Rational operator*(const Rational& o) const { return Rational(mpq_class(q_ * o.q_)); }
    Rational operator/(const Rational& o) const {
        if (o.is_zero()) throw Error("Rational: division by zero");
        return Rational(mpq_class(q_ / o.q_));
    }
    Rational& operator+=(const Rational& o) { q_ += o.q_; return *this; }
    Rational& operator-=(const Rational& o) { q_ -= o.q_; return *this; }
    Rational& operator*=(const Rational& o) { q_ *= o.q_; return *this; }
    Rational& operator/=(const Rational& o) { return *this = *this / o; }
    bool operator==(const Rational& o) const { return q_ == o.q_; }
    bool operator!=(const Rational& o) const { return q_ != o.q_; }
    bool operator<(const Rational& o) const { return q_ < o.q_; }

    Rational inv() const {
        if (is_zero()) throw Error("Rational: inverse of zero");
        return Rational(mpq_class(1 / q_));
    }

    int sign() const { return sgn(q_); }
    Rational abs() const { return sign() < 0 ? -*this : *this; }

    std::string str() const { return q_.get_str(); }

  private:
    void canon() { q_.canonicalize(); }
    mpq_class q_;
};

inline std::optional<Rational> field_sqrt(const Rational& a) {
    if (a.sign() < 0) return std::nullopt;
    Int n = a.num(), d = a.den();
    if (mpz_perfect_square_p(n.get_mpz_t()) == 0) return std::nullopt;
    if (mpz_perfect_square_p(d.get_mpz_t()) == 0) return std::nullopt;
    Int rn, rd;
    mpz_sqrt(rn.get_mpz_t(), n.get_mpz_t());
    mpz_sqrt(rd.get_mpz_t(), d.get_mpz_t());
    return Rational(rn, rd);
}

} // namespace kummer3
