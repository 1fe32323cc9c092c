#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <random>
#include <stdexcept>
#include <vector>

#include "bianchi/mp.hpp"

namespace bianchi {

struct config_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Imaginary quadratic order O = Z[omega] for K = Q(sqrt(-d)), d squarefree.
// omega = sqrt(-d) when d = 1,2 mod 4 and (1+sqrt(-d))/2 when d = 3 mod 4,
// so omega^2 = t0*omega - n0.
class OrderSpec {
  public:
    explicit OrderSpec(long d, long conductor = 1);

    long d() const { return d_; }
    long disc() const { return disc_; }
    long conductor() const { return conductor_; }
    long t0() const { return t0_; }
    long n0() const { return n0_; }
    bool euclidean() const { return d_ == 2 || d_ == 7 || d_ == 11; }

    Complex omega_value() const;  // omega as a complex number
    // sqrt(disc) as an element: 2*omega - t0 has square equal to t0^2 - 4 n0 = disc.
    Complex sqrt_disc_value() const;

    bool operator==(const OrderSpec& o) const {
        return d_ == o.d_ && conductor_ == o.conductor_;
    }
    bool operator!=(const OrderSpec& o) const { return !(*this == o); }

  private:
    long d_, conductor_, disc_, t0_, n0_;
};

// x + y*omega with integer x, y.
class QuadInt {
  public:
    QuadInt() : x_(0), y_(0), ord_(nullptr) {}
    QuadInt(std::int64_t x, std::int64_t y, const OrderSpec& ord) : x_(x), y_(y), ord_(&ord) {}

    std::int64_t x() const { return x_; }
    std::int64_t y() const { return y_; }
    const OrderSpec& order() const;

    bool is_zero() const { return x_ == 0 && y_ == 0; }
    bool is_unit() const;  // +-1 only: Z[i] and Z[zeta_3] are rejected upstream
    bool is_rational() const { return y_ == 0; }

    QuadInt conj() const;
    std::int64_t norm() const;
    std::int64_t trace() const { return 2 * x_ + order().t0() * y_; }

    Complex value() const;  // embedding into C

    friend QuadInt operator+(const QuadInt& a, const QuadInt& b);
    friend QuadInt operator-(const QuadInt& a, const QuadInt& b);
    friend QuadInt operator-(const QuadInt& a);
    friend QuadInt operator*(const QuadInt& a, const QuadInt& b);
    friend bool operator==(const QuadInt& a, const QuadInt& b);
    friend bool operator!=(const QuadInt& a, const QuadInt& b) { return !(a == b); }

    // Exact division; nullopt when b does not divide a.
    static std::optional<QuadInt> divide_exact(const QuadInt& a, const QuadInt& b);

    std::string str() const;

  private:
    void check_compatible(const QuadInt& o) const;
    std::int64_t x_, y_;
    const OrderSpec* ord_;
};

struct XgcdResult {
    QuadInt g, u, v;  // u*a + v*b = g
};

// Extended gcd by norm-Euclidean division.  Requires a Euclidean order.
XgcdResult xgcd(const QuadInt& a, const QuadInt& b);

// Lattice L = Z*w1 + Z*w2 with Im(w1/w2) > 0, stable under O.
// The default lattice for an order is (omega, 1); any complex scaling of it
// is also admissible (used for the integrality normalization).
class Lattice {
  public:
    Lattice(const Complex& w1, const Complex& w2, const OrderSpec& ord);
    static Lattice standard(const OrderSpec& ord);

    const Complex& w1() const { return w1_; }
    const Complex& w2() const { return w2_; }
    const OrderSpec& order() const { return *ord_; }
    const Complex& scale() const { return scale_; }  // w2, i.e. lattice = scale * (Z omega + Z)

    Real area() const;            // covolume
    Complex pairing() const;      // D(L) = w1 conj(w2) - conj(w1) w2 = 2i*area
    Complex at(std::int64_t i, std::int64_t j) const { return Real(i) * w1_ + Real(j) * w2_; }
    Complex at(const QuadInt& a) const { return scale_ * a.value(); }

    // coordinates of z in basis (w1, w2)
    std::array<Real, 2> coords(const Complex& z) const;
    // z reduced into the centered fundamental parallelogram
    Complex reduce(const Complex& z) const;
    // true when z is a lattice point (within tol of one after reduction)
    bool contains(const Complex& z, const Real& tol) const;

  private:
    Complex w1_, w2_, scale_;
    const OrderSpec* ord_;
};

// Coset representatives of L/cL, |reps| = norm(c).  Representatives are
// returned as integer coordinate pairs in the basis (w1, w2).
std::vector<std::array<std::int64_t, 2>> residues(const QuadInt& c);

// 2x2 matrix over O.
class Mat2 {
  public:
    Mat2(QuadInt a, QuadInt b, QuadInt c, QuadInt d) : a_(a), b_(b), c_(c), d_(d) {}
    static Mat2 identity(const OrderSpec& ord);

    const QuadInt& a() const { return a_; }
    const QuadInt& b() const { return b_; }
    const QuadInt& c() const { return c_; }
    const QuadInt& d() const { return d_; }

    QuadInt det() const { return a_ * d_ - b_ * c_; }
    bool is_sl2() const { return det().is_unit() && det().x() == 1; }

    friend Mat2 operator*(const Mat2& m, const Mat2& n);
    friend bool operator==(const Mat2& m, const Mat2& n) {
        return m.a_ == n.a_ && m.b_ == n.b_ && m.c_ == n.c_ && m.d_ == n.d_;
    }

    Mat2 inverse_sl2() const;  // adjugate; requires det = 1
    std::int64_t max_entry_norm() const;
    std::string str() const;

  private:
    QuadInt a_, b_, c_, d_;
};

// Principal level ideal (N) with N a non-zero non-unit.
class Level {
  public:
    explicit Level(const QuadInt& gen);
    const QuadInt& generator() const { return n_; }
    std::int64_t ideal_norm() const { return n_.norm(); }
    bool contains(const QuadInt& c) const;  // c in (N)

  private:
    QuadInt n_;
};

bool in_gamma0(const Mat2& m, const Level& level);

// A = (a b; c d) in Gamma_0((N))  ->  A_N = (a bN; c/N d).
Mat2 smear(const Mat2& m, const Level& level);

// Seeded sampler for Gamma_0((N)) elements with bounded entry norms.
Mat2 random_gamma0(const Level& level, std::int64_t height, std::mt19937_64& rng);

// Random element of SL2(O) (level (1)).
Mat2 random_sl2(const OrderSpec& ord, std::int64_t height, std::mt19937_64& rng);

}  // namespace bianchi
