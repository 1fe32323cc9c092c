#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <set>

#include "bianchi/quadfield.hpp"

using namespace bianchi;

static const bool prec_init = [] {
    set_precision_bits(160);
    return true;
}();

TEST_CASE("order construction and basic invariants") {
    OrderSpec o2(2);
    CHECK(o2.disc() == -8);
    CHECK(o2.t0() == 0);
    CHECK(o2.n0() == 2);
    CHECK(o2.euclidean());

    OrderSpec o7(7);
    CHECK(o7.disc() == -7);
    CHECK(o7.t0() == 1);
    CHECK(o7.n0() == 2);

    OrderSpec o11(11);
    CHECK(o11.disc() == -11);
    CHECK(o11.n0() == 3);

    CHECK_THROWS_AS(OrderSpec(1), config_error);
    CHECK_THROWS_AS(OrderSpec(3), config_error);
    CHECK_THROWS_AS(OrderSpec(4), config_error);
    CHECK_THROWS_AS(OrderSpec(-2), config_error);
}

TEST_CASE("quadratic integer arithmetic matches the complex embedding") {
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<std::int64_t> coef(-50, 50);
    for (long d : {2L, 7L, 11L, 5L}) {
        OrderSpec ord(d);
        for (int trial = 0; trial < 50; ++trial) {
            QuadInt a(coef(rng), coef(rng), ord);
            QuadInt b(coef(rng), coef(rng), ord);
            Complex lhs = (a * b).value();
            Complex rhs = a.value() * b.value();
            CHECK(abs(lhs - rhs) < Real("1e-40"));
            CHECK(abs((a + b).value() - (a.value() + b.value())) < Real("1e-40"));
            CHECK(abs(a.conj().value() - conj(a.value())) < Real("1e-40"));
            // norm and trace against the embedding
            Real nrm = real(a.value() * conj(a.value()));
            CHECK(abs(Real(a.norm()) - nrm) < Real("1e-35"));
            CHECK(abs(Real(a.trace()) - 2 * real(a.value())) < Real("1e-35"));
        }
    }
}

TEST_CASE("exact division agrees with brute multiplication") {
    OrderSpec ord(2);
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<std::int64_t> coef(-20, 20);
    for (int trial = 0; trial < 200; ++trial) {
        QuadInt a(coef(rng), coef(rng), ord);
        QuadInt b(coef(rng), coef(rng), ord);
        if (b.is_zero()) continue;
        QuadInt prod = a * b;
        auto q = QuadInt::divide_exact(prod, b);
        REQUIRE(q.has_value());
        CHECK(*q == a);
    }
    // a non-divisible pair
    auto q = QuadInt::divide_exact(QuadInt(1, 0, ord), QuadInt(0, 1, ord));
    CHECK(!q.has_value());
}

TEST_CASE("xgcd produces a common divisor with Bezout witnesses") {
    std::mt19937_64 rng(13);
    std::uniform_int_distribution<std::int64_t> coef(-30, 30);
    for (long d : {2L, 7L, 11L}) {
        OrderSpec ord(d);
        for (int trial = 0; trial < 100; ++trial) {
            QuadInt a(coef(rng), coef(rng), ord);
            QuadInt b(coef(rng), coef(rng), ord);
            if (a.is_zero() && b.is_zero()) continue;
            auto r = xgcd(a, b);
            CHECK(r.u * a + r.v * b == r.g);
            CHECK(!r.g.is_zero());
            CHECK(QuadInt::divide_exact(a, r.g).has_value());
            CHECK(QuadInt::divide_exact(b, r.g).has_value());
        }
    }
}

TEST_CASE("gcd of coprime pairs is a unit") {
    OrderSpec ord(2);
    QuadInt sqrtm2(0, 1, ord);
    auto r = xgcd(QuadInt(3, 1, ord), QuadInt(2, 0, ord) + sqrtm2 * QuadInt(3, 0, ord));
    // whatever the gcd is, dividing both inputs by it must work; check unit case
    // explicitly for a pair with coprime norms
    auto r2 = xgcd(QuadInt(5, 0, ord), QuadInt(0, 3, ord) + QuadInt(1, 0, ord));
    CHECK(r2.g.norm() == 1);
    (void)r;
}

TEST_CASE("residue systems are complete and inequivalent") {
    for (long d : {2L, 7L, 11L}) {
        OrderSpec ord(d);
        for (auto [cx, cy] : {std::pair<long, long>{2, 1}, {3, 0}, {0, 1}, {1, 2}}) {
            QuadInt c(cx, cy, ord);
            if (c.is_zero()) continue;
            auto reps = residues(c);
            CHECK(std::int64_t(reps.size()) == c.norm());
            // no two representatives congruent mod c; coordinates are in the
            // basis (w1, w2) = (omega, 1), so the element is r[1] + r[0]*omega
            for (size_t i = 0; i < reps.size(); ++i) {
                for (size_t j = i + 1; j < reps.size(); ++j) {
                    QuadInt diff(reps[i][1] - reps[j][1], reps[i][0] - reps[j][0], ord);
                    CHECK(!QuadInt::divide_exact(diff, c).has_value());
                }
            }
        }
    }
}

TEST_CASE("lattice reduction lands in the fundamental domain and fixes the coset") {
    OrderSpec ord(2);
    Lattice lat = Lattice::standard(ord);
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> unif(-20.0, 20.0);
    for (int trial = 0; trial < 100; ++trial) {
        Complex z(Real(unif(rng)), Real(unif(rng)));
        Complex r = lat.reduce(z);
        auto c = lat.coords(r);
        CHECK(abs(c[0]) <= Real("0.5000001"));
        CHECK(abs(c[1]) <= Real("0.5000001"));
        CHECK(lat.contains(z - r, Real("1e-30")));
    }
    CHECK(lat.contains(lat.at(3, -5), Real("1e-30")));
    CHECK(!lat.contains(lat.at(3, -5) + Complex(Real("0.25"), Real(0)), Real("1e-30")));
}

TEST_CASE("level membership and smearing") {
    OrderSpec ord(2);
    QuadInt n(0, 1, ord);  // sqrt(-2)
    Level level(n);
    CHECK(level.ideal_norm() == 2);
    CHECK(level.contains(QuadInt(0, 3, ord)));
    CHECK(level.contains(QuadInt(2, 0, ord)));
    CHECK(!level.contains(QuadInt(1, 0, ord)));

    std::mt19937_64 rng(23);
    for (int trial = 0; trial < 25; ++trial) {
        Mat2 A = random_gamma0(level, 40, rng);
        CHECK(A.is_sl2());
        CHECK(in_gamma0(A, level));
        Mat2 An = smear(A, level);
        CHECK(An.det() == QuadInt(1, 0, ord));
        // A_N = D A D^{-1} with D = diag(N, 1): a and d are unchanged
        CHECK(An.a() == A.a());
        CHECK(An.d() == A.d());
        CHECK(An.b() == A.b() * n);
        CHECK(An.c() * n == A.c());
    }
}

TEST_CASE("random SL2 sampler is seed stable") {
    OrderSpec ord(7);
    std::mt19937_64 r1(99), r2(99);
    for (int trial = 0; trial < 10; ++trial) {
        Mat2 A = random_sl2(ord, 30, r1);
        Mat2 B = random_sl2(ord, 30, r2);
        CHECK(A == B);
        CHECK(A.is_sl2());
    }
}
