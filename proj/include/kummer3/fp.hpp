#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <cassert>

#include "errors.hpp"
#include "rng.hpp"

namespace kummer3 {

using u64 = std::uint64_t;
using u128 = unsigned __int128;
using s64 = std::int64_t;

namespace fpdetail {

inline u64 addmod(u64 a, u64 b, u64 p) {
    u64 s = a + b; // p < 2^62, no overflow
    return s >= p ? s - p : s;
}
inline u64 submod(u64 a, u64 b, u64 p) { return a >= b ? a - b : a + p - b; }
inline u64 mulmod(u64 a, u64 b, u64 p) { return (u64)((u128)a * b % p); }

inline u64 powmod(u64 a, u64 e, u64 p) {
    u64 r = 1 % p;
    a %= p;
    while (e) {
        if (e & 1) r = mulmod(r, a, p);
        a = mulmod(a, a, p);
        e >>= 1;
    }
    return r;
}

// extended Euclid; a must be nonzero mod p, p prime
inline u64 invmod(u64 a, u64 p) {
    a %= p;
    if (a == 0) throw Error("Fp: inverse of zero");
    s64 t = 0, nt = 1;
    s64 r = (s64)p, nr = (s64)a;
    while (nr != 0) {
        s64 q = r / nr;
        s64 tmp = t - q * nt; t = nt; nt = tmp;
        tmp = r - q * nr; r = nr; nr = tmp;
    }
    assert(r == 1);
    return (u64)(t < 0 ? t + (s64)p : t);
}

} // namespace fpdetail

// deterministic Miller-Rabin, valid for all 64-bit inputs
inline bool is_prime_u64(u64 n) {
    if (n < 2) return false;
    for (u64 q : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        if (n == q) return true;
        if (n % q == 0) return false;
    }
    u64 d = n - 1;
    int s = 0;
    while ((d & 1) == 0) { d >>= 1; ++s; }
    for (u64 a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        u64 x = fpdetail::powmod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool witness = true;
        for (int i = 1; i < s; ++i) {
            x = fpdetail::mulmod(x, x, n);
            if (x == n - 1) { witness = false; break; }
        }
        if (witness) return false;
    }
    return true;
}

// Montgomery context for one odd modulus; used by the elimination hot loops.
struct Mont {
    u64 p = 0;
    u64 ninv = 0; // -p^{-1} mod 2^64
    u64 r1 = 0;   // 2^64 mod p  (= to(1))
    u64 r2 = 0;   // 2^128 mod p

    Mont() = default;
    explicit Mont(u64 mod) : p(mod) {
        assert(p & 1);
        u64 inv = p; // Newton: inv = p^{-1} mod 2^64
        for (int i = 0; i < 6; ++i) inv *= 2 - p * inv;
        ninv = ~inv + 1;
        r1 = (u64)(((u128)1 << 64) % p);
        r2 = fpdetail::mulmod(r1, r1, p);
    }

    u64 redc(u128 t) const {
        u64 m = (u64)t * ninv;
        u64 r = (u64)((t + (u128)m * p) >> 64);
        return r >= p ? r - p : r;
    }
    u64 mul(u64 a, u64 b) const { return redc((u128)a * b); }
    u64 to(u64 a) const { return mul(a, r2); }
    u64 from(u64 a) const { return redc(a); }
    u64 add(u64 a, u64 b) const { return fpdetail::addmod(a, b, p); }
    u64 sub(u64 a, u64 b) const { return fpdetail::submod(a, b, p); }
    u64 pow(u64 a, u64 e) const { // a in Montgomery domain
        u64 r = r1;
        while (e) {
            if (e & 1) r = mul(r, a);
            a = mul(a, a);
            e >>= 1;
        }
        return r;
    }
    u64 inv(u64 a) const { return pow(a, p - 2); } // p prime, a != 0
};

// x with x^2 = a (mod p), if any; Tonelli-Shanks
inline std::optional<u64> sqrt_mod(u64 a, u64 p) {
    using namespace fpdetail;
    a %= p;
    if (a == 0) return 0;
    if (p == 2) return a;
    if (powmod(a, (p - 1) / 2, p) != 1) return std::nullopt;
    if (p % 4 == 3) return powmod(a, (p + 1) / 4, p);
    u64 q = p - 1;
    int s = 0;
    while ((q & 1) == 0) { q >>= 1; ++s; }
    u64 z = 2;
    while (powmod(z, (p - 1) / 2, p) != p - 1) ++z;
    u64 m = s, c = powmod(z, q, p), t = powmod(a, q, p), r = powmod(a, (q + 1) / 2, p);
    while (t != 1) {
        u64 i = 0, tt = t;
        while (tt != 1) { tt = mulmod(tt, tt, p); ++i; }
        u64 b = powmod(c, 1ULL << (m - i - 1), p);
        m = i;
        c = mulmod(b, b, p);
        t = mulmod(t, c, p);
        r = mulmod(r, b, p);
    }
    return r;
}

// Prime-field element carrying its modulus. Ops outside elimination loops go
// through here; they are exact and throw FieldMismatch on mixed moduli.
class Fp {
  public:
    Fp() = default; // null element (p = 0); arithmetic on it asserts
    Fp(u64 v, u64 p) : v_(v % p), p_(p) {}

    static Fp make(s64 v, u64 p) {
        s64 r = v % (s64)p;
        if (r < 0) r += (s64)p;
        return Fp((u64)r, p);
    }

    u64 value() const { return v_; }
    u64 modulus() const { return p_; }
    u64 characteristic() const { return p_; }

    bool is_zero() const { return v_ == 0; }
    bool is_one() const { return v_ == 1; }
    Fp zero() const { return Fp(0, p_); }
    Fp one() const { return Fp(1, p_); }
    Fp from_int(s64 v) const { return make(v, p_); }

    Fp operator-() const { return Fp(v_ ? p_ - v_ : 0, p_); }
    Fp operator+(const Fp& o) const { chk(o); return Fp(fpdetail::addmod(v_, o.v_, p_), p_); }
    Fp operator-(const Fp& o) const { chk(o); return Fp(fpdetail::submod(v_, o.v_, p_), p_); }
    Fp operator*(const Fp& o) const { chk(o); return Fp(fpdetail::mulmod(v_, o.v_, p_), p_); }
    Fp operator/(const Fp& o) const { chk(o); return *this * o.inv(); }
    Fp& operator+=(const Fp& o) { return *this = *this + o; }
    Fp& operator-=(const Fp& o) { return *this = *this - o; }
    Fp& operator*=(const Fp& o) { return *this = *this * o; }
    Fp& operator/=(const Fp& o) { return *this = *this / o; }
    bool operator==(const Fp& o) const { chk(o); return v_ == o.v_; }
    bool operator!=(const Fp& o) const { return !(*this == o); }

    Fp inv() const {
        return Fp(fpdetail::invmod(v_, p_), p_);
    }
    Fp pow(u64 e) const { return Fp(fpdetail::powmod(v_, e, p_), p_); }

    std::string str() const { return std::to_string(v_); }

  private:
    void chk(const Fp& o) const {
        assert(p_ != 0 && o.p_ != 0);
        if (p_ != o.p_) throw FieldMismatch("Fp operands have different moduli");
    }
    u64 v_ = 0;
    u64 p_ = 0;
};

inline std::optional<Fp> field_sqrt(const Fp& a) {
    auto r = sqrt_mod(a.value(), a.modulus());
    if (!r) return std::nullopt;
    // canonical choice: the root in [0, p/2]
    u64 x = *r, p = a.modulus();
    if (x > p - x) x = p - x;
    return Fp(x, p);
}

// random prime with the given bit length whose acceptability the caller
// decides (used to dodge primes dividing discriminants etc.)
template <class Pred>
u64 random_prime(Rng& rng, unsigned bits, Pred&& acceptable) {
    assert(bits >= 4 && bits <= 61);
    for (int tries = 0; tries < 100000; ++tries) {
        u64 n = (1ULL << bits) + rng.below(1ULL << bits);
        n |= 1;
        if (!is_prime_u64(n)) continue;
        if (!acceptable(n)) continue;
        return n;
    }
    throw Error("random_prime: no acceptable prime found");
}

inline u64 random_prime(Rng& rng, unsigned bits) {
    return random_prime(rng, bits, [](u64) { return true; });
}

} // namespace kummer3
