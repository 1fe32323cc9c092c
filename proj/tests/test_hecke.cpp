#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "bianchi/hecke.hpp"

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
    Level level{QuadInt(0, 1, ord)};
};

}  // namespace

TEST_CASE("coset representative counts and validation") {
    Fixture f;
    auto cr2 = coset_reps(QuadInt(0, 1, f.ord));  // sqrt(-2), norm 2, ramified
    CHECK(cr2.reps.size() == 3);
    CHECK(cr2.ramified);
    auto cr3 = coset_reps(QuadInt(1, 1, f.ord));  // 1+sqrt(-2), norm 3, split
    CHECK(cr3.reps.size() == 4);
    CHECK(!cr3.ramified);
    // 5 is inert in Q(sqrt(-2))
    auto cr5 = coset_reps(QuadInt(5, 0, f.ord));
    CHECK(cr5.reps.size() == 26);
    // 3 splits, so the rational element 3 does not generate a prime ideal
    CHECK_THROWS_AS(coset_reps(QuadInt(3, 0, f.ord)), config_error);
    CHECK_THROWS_AS(coset_reps(QuadInt(2, 1, f.ord)), config_error);  // norm 6
    // level coprimality: 1+sqrt(-2) against level (1+sqrt(-2))
    Level l3(QuadInt(1, 1, f.ord));
    CHECK_THROWS_AS(coset_reps(QuadInt(1, 1, f.ord), l3), config_error);
    // the ramified prime is allowed at its own level
    CHECK_NOTHROW(coset_reps(QuadInt(0, 1, f.ord), f.level));
}

TEST_CASE("hecke translates form a permutation-matched set") {
    Fixture f;
    std::mt19937_64 rng(7);
    for (auto pv : {QuadInt(0, 1, f.ord), QuadInt(1, 1, f.ord)}) {
        auto cr = coset_reps(pv);
        Mat2 A = random_sl2(f.ord, 4, rng);
        auto ts = hecke_translates(A, cr);
        CHECK(ts.size() == cr.reps.size());
        for (const auto& B : ts) CHECK(B.is_sl2());
    }
}

TEST_CASE("eigenvalue identity for Phi") {
    Fixture f;
    std::mt19937_64 rng(19);
    for (auto pv : {QuadInt(0, 1, f.ord), QuadInt(1, 1, f.ord)}) {
        for (int trial = 0; trial < 2; ++trial) {
            Mat2 A = random_sl2(f.ord, 3, rng);
            auto res = hecke_apply_phi(A, pv, f.lc, f.params);
            CHECK(res.residual < Real("1e-28"));
        }
    }
}

TEST_CASE("eigenvalue identity for Phi_N") {
    Fixture f;
    std::mt19937_64 rng(29);
    for (auto pv : {QuadInt(0, 1, f.ord), QuadInt(1, 1, f.ord)}) {
        Mat2 A = random_gamma0(f.level, 3, rng);
        auto res = hecke_apply_phi_n(A, pv, f.level, f.lc, f.params);
        CHECK(res.residual < Real("1e-28"));
    }
}

TEST_CASE("involution negates Phi and Phi_N") {
    Fixture f;
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 3; ++trial) {
        Mat2 A = random_sl2(f.ord, 3, rng);
        CHECK(involution_conjugate(involution_conjugate(A)) == A);
        Complex lhs = involution_phi(A, f.lc, f.params);
        CHECK(abs(lhs + phi(A, f.lc, f.params).value) < Real("1e-32"));
    }
    Mat2 G = random_gamma0(f.level, 3, rng);
    Complex lhs = involution_phi_n(G, f.level, f.lc, f.params);
    CHECK(abs(lhs + phi_n(G, f.level, f.lc, f.params).value) < Real("1e-32"));
}
