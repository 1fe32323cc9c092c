#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "bianchi/cocycle.hpp"

using namespace bianchi;

static const bool prec_init = [] {
    set_precision_bits(160);
    return true;
}();

namespace {

struct Fixture {
    OrderSpec ord{2};
    SeriesParams params = SeriesParams::defaults();
    Lattice lat = Lattice::standard(ord);
    LatticeConstants lc{lat, params};
    Level level{QuadInt(0, 1, ord)};  // (sqrt(-2))
    Complex zero{Real(0), Real(0)};
};

Complex torsion_point(const Lattice& lat, int i, int j, int den) {
    return lat.at(i, j) / Real(den);
}

}  // namespace

TEST_CASE("phi on parabolic and identity elements") {
    Fixture f;
    Mat2 id = Mat2::identity(f.ord);
    CHECK(abs(phi(id, f.lc, f.params).value) < Real("1e-40"));

    // upper triangular with rational b: I(b) = 0
    Mat2 t(QuadInt(1, 0, f.ord), QuadInt(3, 0, f.ord), QuadInt(0, 0, f.ord),
           QuadInt(1, 0, f.ord));
    CHECK(abs(phi(t, f.lc, f.params).value) < Real("1e-40"));

    // b = omega picks up E_2(0)(omega - conj omega)
    Mat2 tw(QuadInt(1, 0, f.ord), QuadInt(0, 1, f.ord), QuadInt(0, 0, f.ord),
            QuadInt(1, 0, f.ord));
    Complex expected = f.lc.e2zero() * i_defect(f.ord.omega_value());
    CHECK(abs(phi(tw, f.lc, f.params).value - expected) < Real("1e-38"));
}

TEST_CASE("phi_pq at (0,0) agrees with phi") {
    Fixture f;
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 4; ++trial) {
        Mat2 A = random_sl2(f.ord, 3, rng);
        Complex a = phi_pq(A, f.zero, f.zero, f.lc, f.params).value;
        Complex b = phi(A, f.lc, f.params).value;
        CHECK(abs(a - b) < Real("1e-34"));
    }
}

TEST_CASE("cocycle relation for phi_pq") {
    Fixture f;
    std::mt19937_64 rng(23);
    for (int trial = 0; trial < 3; ++trial) {
        Mat2 A = random_sl2(f.ord, 3, rng);
        Mat2 B = random_sl2(f.ord, 3, rng);
        Complex p = torsion_point(f.lat, 1 + trial, 2, 3);
        Complex q = torsion_point(f.lat, 2, 1 + trial, 3);
        CHECK(check_cocycle(A, B, p, q, f.lc, f.params) < Real("1e-30"));
    }
}

TEST_CASE("phi_n at (0,0): literal difference passes its internal explicit check") {
    Fixture f;
    std::mt19937_64 rng(37);
    for (int trial = 0; trial < 3; ++trial) {
        Mat2 A = random_gamma0(f.level, 4, rng);
        CHECK_NOTHROW(phi_n(A, f.level, f.lc, f.params));
    }
}

TEST_CASE("phi_n is a homomorphism on Gamma_0") {
    Fixture f;
    std::mt19937_64 rng(41);
    for (int trial = 0; trial < 2; ++trial) {
        Mat2 A = random_gamma0(f.level, 3, rng);
        Mat2 B = random_gamma0(f.level, 3, rng);
        CHECK(check_cocycle_n(A, B, f.level, f.zero, f.zero, f.lc, f.params) < Real("1e-30"));
    }
}

TEST_CASE("transformation law against the harmonic lift") {
    Fixture f;
    std::mt19937_64 rng(53);
    Point3 u(Complex(Real("0.31"), Real("0.17")), Real("0.9"));
    for (int trial = 0; trial < 2; ++trial) {
        Mat2 A = random_sl2(f.ord, 2, rng);
        CHECK(check_transformation(A, u, f.lc, f.params) < Real("1e-25"));
    }
    Mat2 G = random_gamma0(f.level, 2, rng);
    CHECK(check_transformation_n(G, f.level, u, f.lc, f.params) < Real("1e-25"));
}

TEST_CASE("field normalization lands on integral invariants") {
    SeriesParams params = SeriesParams::defaults();
    FieldSpec fs2 = make_field_spec(OrderSpec(2), params);
    CHECK(fs2.g2 == 30);
    CHECK(fs2.g3 == 28);
    // independent recomputation on the scaled lattice
    WeierstrassCache w(fs2.lattice);
    CHECK(abs(w.g2() - Complex(Real(30), Real(0))) < Real("1e-35"));
    CHECK(abs(w.g3() - Complex(Real(28), Real(0))) < Real("1e-35"));

    FieldSpec fs7 = make_field_spec(OrderSpec(7), params);
    CHECK(fs7.g2 == 35);
    CHECK(fs7.g3 == 49);
}

TEST_CASE("integrality recognition") {
    SeriesParams params = SeriesParams::defaults();
    FieldSpec fs = make_field_spec(OrderSpec(2), params);
    Complex omega = fs.lattice.order().omega_value();

    Complex exact = Real(7) - Real(5) * omega;
    auto w1 = recognize_integrality(exact, fs, 40, Real("1e-30"));
    REQUIRE(w1.conclusive);
    CHECK(w1.coeffs[0] == 7);
    CHECK(w1.coeffs[1] == -5);
    CHECK(w1.height == 7);

    // g2 of the normalized lattice, recomputed analytically
    WeierstrassCache w(fs.lattice);
    auto w2 = recognize_integrality(w.g2(), fs, 40, Real("1e-30"));
    REQUIRE(w2.conclusive);
    CHECK(w2.coeffs[0] == 30);
    CHECK(w2.coeffs[1] == 0);

    auto w3 = recognize_integrality(Complex(pi_const(), Real(0)), fs, 40, Real("1e-34"));
    CHECK(!w3.conclusive);
    CHECK(!w3.note.empty());
}
