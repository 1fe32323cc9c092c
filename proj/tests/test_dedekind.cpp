#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "bianchi/dedekind.hpp"

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
};

}  // namespace

TEST_CASE("d_sum is odd in a") {
    Fixture f;
    QuadInt c(1, 1, f.ord);  // norm 3
    for (auto a : {QuadInt(1, 0, f.ord), QuadInt(2, 1, f.ord)}) {
        Complex plus = d_sum(a, c, f.lc, f.params);
        Complex minus = d_sum(-a, c, f.lc, f.params);
        CHECK(abs(plus + minus) < Real("1e-35"));
    }
}

TEST_CASE("d_sum depends on a only mod c") {
    Fixture f;
    QuadInt a(1, 0, f.ord), c(0, 1, f.ord);  // c = sqrt(-2)
    for (auto m : {QuadInt(1, 0, f.ord), QuadInt(-2, 1, f.ord)}) {
        Complex shifted = d_sum(a + c * m, c, f.lc, f.params);
        CHECK(abs(shifted - d_sum(a, c, f.lc, f.params)) < Real("1e-35"));
    }
}

TEST_CASE("d_sum vanishes for unit c") {
    Fixture f;
    QuadInt a(3, 1, f.ord), one(1, 0, f.ord);
    CHECK(abs(d_sum(a, one, f.lc, f.params)) < Real("1e-40"));
}

TEST_CASE("d_sum_pq specializes to d_sum at (0,0)") {
    Fixture f;
    QuadInt a(2, 1, f.ord), c(1, 1, f.ord);
    Complex zero(Real(0), Real(0));
    CHECK(abs(d_sum_pq(a, c, zero, zero, f.lc, f.params) - d_sum(a, c, f.lc, f.params)) <
          Real("1e-38"));
}

TEST_CASE("d_sum_pq is invariant under lattice translation of p and q") {
    Fixture f;
    QuadInt a(1, 1, f.ord), c(0, 1, f.ord);
    Complex p = f.lat.at(1, 2) / Real(3);
    Complex q = f.lat.at(2, 1) / Real(3);
    Complex base = d_sum_pq(a, c, p, q, f.lc, f.params);
    CHECK(abs(d_sum_pq(a, c, p + f.lat.at(1, -1), q, f.lc, f.params) - base) < Real("1e-35"));
    CHECK(abs(d_sum_pq(a, c, p, q + f.lat.at(-2, 1), f.lc, f.params) - base) < Real("1e-35"));
}

TEST_CASE("d_smoothed matches its definition") {
    Fixture f;
    Level level(QuadInt(0, 1, f.ord));
    QuadInt a(1, 0, f.ord), c(1, 1, f.ord);
    Complex p = f.lat.at(1, 0) / Real(2);
    Complex q = f.lat.at(0, 1) / Real(2);
    Complex direct = d_sum_pq(level.generator() * a, c, p, q, f.lc, f.params) -
                     d_sum_pq(a, c, p, q, f.lc, f.params);
    CHECK(abs(d_smoothed(a, c, level, p, q, f.lc, f.params) - direct) < Real("1e-40"));
}
