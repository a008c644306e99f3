#include <catch2/catch_amalgamated.hpp>

#include <kummer3/heights.hpp>

#include <algorithm>
#include <cmath>

using namespace kummer3;

namespace {

constexpr std::array<long, 8> kSplit{0, 720, -1764, 1624, -735, 175, -21, 1};
constexpr std::array<long, 8> kLadder{1, 1, 0, 0, 0, 0, 0, 1}; // Y^2 = X^7 + X + 1

std::array<Rational, 8> q_coeffs(const std::array<long, 8>& v) {
    std::array<Rational, 8> f;
    for (size_t i = 0; i < 8; ++i) f[i] = Rational(v[i]);
    return f;
}

JacobianPoint<Rational> torsion_class(std::initializer_list<long> roots) {
    Poly<Rational> a = Poly<Rational>::constant(Rational(1));
    for (long r : roots) a = a * Poly<Rational>::linear_root(Rational(r));
    return {a, Poly<Rational>{}};
}

KummerPoint<Rational> tuple_of(const std::array<long, 8>& v) {
    KummerPoint<Rational> k;
    for (size_t i = 0; i < 8; ++i) k.x[i] = Rational(v[i]);
    return k;
}

} // namespace

TEST_CASE("naive height of explicit tuples") {
    auto h0 = naive_height(tuple_of({0, 0, 0, 0, 0, 0, 0, 1}));
    REQUIRE(h0.max_abs == 1);
    REQUIRE(h0.bits == 1);
    REQUIRE(h0.log_value == 0.0);

    // denominators cleared, gcd removed
    KummerPoint<Rational> k;
    k.x = {Rational(1, 2), Rational(0), Rational(0), Rational(0),
           Rational(0),    Rational(0), Rational(0), Rational(3)};
    auto h = naive_height(k);
    REQUIRE(h.max_abs == 6);
    REQUIRE(std::fabs(h.log_value - std::log(6.0)) < 1e-12);

    // scaling invariance
    auto base = tuple_of({3, -1, 4, 1, -5, 9, 2, 6});
    auto scaled = base;
    for (auto& v : scaled.x) v *= Rational(-7, 3);
    REQUIRE(naive_height(base).max_abs == naive_height(scaled).max_abs);

    // zero exactly on {-1,0,1} tuples
    REQUIRE(naive_height(tuple_of({1, -1, 0, 1, 1, 0, -1, 1})).max_abs == 1);
    REQUIRE(naive_height(tuple_of({1, -1, 0, 1, 1, 0, -2, 1})).log_value > 0);

    KummerPoint<Rational> zero;
    for (auto& v : zero.x) v = Rational(0);
    REQUIRE_THROWS_AS(naive_height(zero), Error);
}

TEST_CASE("torsion image heights on the split curve") {
    auto c = Curve<Rational>::make(q_coeffs(kSplit));

    // frozen primitive tuple for the roots-{1,2} class
    auto T = torsion_class({1, 2});
    auto canon = canonicalize(kappa(c, T));
    std::array<long, 8> want{0, 1, 3, 2, 62, -216, 1159, 2394};
    for (size_t i = 0; i < 8; ++i) REQUIRE(canon.x[i] == Rational(want[i]));
    REQUIRE(naive_height(kappa(c, T)).max_abs == 2394);

    // identity: converges at n = 0 with estimate exactly zero
    auto r0 = canonical_height(c, torsion_class({}), 1e-3, 5);
    REQUIRE(r0.converged);
    REQUIRE(r0.N == 0);
    REQUIRE(r0.estimate.is_zero());
    REQUIRE(r0.ladder.size() == 1);
    REQUIRE(r0.ladder[0].max_abs == 1);

    // 2-torsion collapses to the origin image and certifies hat-h = 0
    auto rt = canonical_height(c, T, 1e-3, 5);
    REQUIRE(rt.converged);
    REQUIRE(rt.N <= 5);
    REQUIRE(rt.estimate.is_zero());
    REQUIRE(rt.ladder[0].max_abs == 2394);
    REQUIRE(rt.ladder[1].max_abs == 1); // kappa(O)

    auto rw = canonical_height(c, torsion_class({0, 3, 5}), 1e-3, 5);
    REQUIRE(rw.converged);
    REQUIRE(rw.estimate.is_zero());
}

TEST_CASE("doubling ladder matches the frozen exact values") {
    auto c = Curve<Rational>::make(q_coeffs(kLadder));
    JacobianPoint<Rational> P{Poly<Rational>::linear_root(Rational(0)),
                              Poly<Rational>::constant(Rational(1))}; // [(0,1) - inf]
    REQUIRE(is_on_jacobian(c, P));

    auto r = canonical_height(c, P, 1e-3, 4);
    REQUIRE_FALSE(r.converged); // budget exhausted before the tolerance
    REQUIRE(r.N == 4);
    REQUIRE(r.ladder.size() == 5);
    REQUIRE(r.ladder[0].max_abs == 1);
    REQUIRE(r.ladder[1].max_abs == 4);
    REQUIRE(r.ladder[2].max_abs == 4096);
    REQUIRE(r.ladder[3].max_abs == Int("19497035901263872"));
    REQUIRE(r.ladder[4].max_abs ==
            Int("555523632216337304232879504785935893789601124324864280252485468416"));
    REQUIRE(r.ladder[4].bits == 219);
    REQUIRE(std::fabs(r.ladder[4].log_value - 151.382772) < 1e-5);
    REQUIRE(std::fabs(r.gap_bound - 4.237974) < 1e-5);
    REQUIRE(std::fabs(r.estimate.raw().get_d() - r.ladder[4].log_value / 256.0) < 1e-12);
    REQUIRE(r.achieved > 1e-3);

    // the bound h(2P) <= 4 h(P) + C holds along the ladder with the reported C
    for (size_t n = 0; n + 1 < r.ladder.size(); ++n)
        REQUIRE(r.ladder[n + 1].log_value <= 4.0 * r.ladder[n].log_value + r.gap_bound + 1e-9);

    // a longer budget converges
    auto rc = canonical_height(c, P, 1e-3, 8);
    REQUIRE(rc.converged);
    REQUIRE(rc.N >= 5);
    REQUIRE(rc.achieved < 1e-3);

    // ladder of 2P is the shifted ladder of P (exact integers)
    auto r2 = canonical_height(c, double_point(c, P), 1e-3, 3);
    for (size_t n = 0; n < r2.ladder.size(); ++n)
        REQUIRE(r2.ladder[n].max_abs == r.ladder[n + 1].max_abs);

    // quadraticity of the limit under doubling
    auto rc2 = canonical_height(c, double_point(c, P), 1e-3, 8);
    REQUIRE(rc2.converged);
    REQUIRE(std::fabs(rc2.estimate.raw().get_d() - 4.0 * rc.estimate.raw().get_d()) < 5e-3);

    REQUIRE_THROWS_AS(canonical_height(c, P, 0.0, 4), Error);
    REQUIRE_THROWS_AS(canonical_height(c, P, 1e-3, -1), Error);
    JacobianPoint<Rational> off{Poly<Rational>::linear_root(Rational(0)),
                                Poly<Rational>::constant(Rational(2))};
    REQUIRE_THROWS_AS(canonical_height(c, off, 1e-3, 4), Error);
}

TEST_CASE("bounded point search on the split curve") {
    auto c = Curve<Rational>::make(q_coeffs(kSplit));
    Rng rng(11);
    auto hits = search_points(c, 1, rng);

    // frozen hit list (as canonical tuples, order-insensitive)
    std::vector<std::array<long, 8>> want{
        {0, 0, 0, 0, 0, 0, 0, 1},  // origin
        {0, 0, 0, 0, 1, 0, 0, 0},  // Weierstrass x = 0
        {0, 0, 0, 0, 1, -1, 1, 1}, // Weierstrass x = 1
        {0, 0, 0, 0, 1, 1, 1, -1}, // x = -1: no rational lift
    };
    REQUIRE(hits.size() == want.size());
    auto find_hit = [&](const std::array<long, 8>& t) -> const SearchHit* {
        for (const auto& h : hits) {
            bool eq = true;
            for (size_t i = 0; i < 8; ++i)
                if (h.x.x[i] != Rational(t[i])) eq = false;
            if (eq) return &h;
        }
        return nullptr;
    };
    for (const auto& t : want) REQUIRE(find_hit(t) != nullptr);

    // the origin lifts to the identity alone
    const auto* origin = find_hit({0, 0, 0, 0, 0, 0, 0, 1});
    REQUIRE(origin->lifts.size() == 1);
    REQUIRE(is_identity(origin->lifts[0]));

    // Weierstrass images lift to a single 2-torsion class
    const auto* w0 = find_hit({0, 0, 0, 0, 1, 0, 0, 0});
    REQUIRE(w0->lifts.size() == 1);
    REQUIRE(is_identity(double_point(c, w0->lifts[0])));

    // the x = -1 image only lifts over a quadratic extension
    const auto* ext = find_hit({0, 0, 0, 0, 1, 1, 1, -1});
    REQUIRE(ext->lifts.empty());

    // every rational 2-torsion image with coordinates in the box appears
    Rng tr(3);
    for (const auto& T : two_torsion(c, tr)) {
        auto canon = canonicalize(kappa(c, T));
        Int m = 0;
        for (const auto& v : canon.x) {
            Int a = ::abs(v.num());
            if (a > m) m = a;
        }
        if (m <= 1) {
            std::array<long, 8> t;
            for (size_t i = 0; i < 8; ++i) t[i] = canon.x[i].num().get_si();
            REQUIRE(find_hit(t) != nullptr);
        }
    }

    // lift fibres are closed under negation and sit over their tuple
    for (const auto& h : hits)
        for (const auto& L : h.lifts) {
            auto neg = negate(c, L);
            bool found = false;
            for (const auto& M : h.lifts)
                if (M == neg) found = true;
            REQUIRE(found);
            REQUIRE(proportional(std::vector<Rational>(kappa(c, L).x.begin(), kappa(c, L).x.end()),
                                 std::vector<Rational>(h.x.x.begin(), h.x.x.end())));
        }

    // widening the box keeps every previous hit
    Rng rng2(12);
    auto hits2 = search_points(c, 2, rng2);
    REQUIRE(hits2.size() >= hits.size());
    for (const auto& t : want) {
        bool present = false;
        for (const auto& h : hits2) {
            bool eq = true;
            for (size_t i = 0; i < 8; ++i)
                if (h.x.x[i] != Rational(t[i])) eq = false;
            if (eq) present = true;
        }
        REQUIRE(present);
    }

    Rng rng3(13);
    REQUIRE_THROWS_AS(search_points(c, 0, rng3), Error);
}
