#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>

#include "bianchi/mp.hpp"
#include "bianchi/quadfield.hpp"
#include "bianchi/weierstrass.hpp"

namespace bianchi {

struct precision_exhaustion : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct SeriesParams {
    unsigned digits;       // decimal digits of working precision
    Real target_error;     // absolute error target per series evaluation
    enum class Evaluator { reference, fast };
    Evaluator evaluator = Evaluator::fast;

    static SeriesParams defaults();
    Real lattice_tol() const;  // tolerance for "is a lattice point" decisions
};

// Point u = z + jv in the upper half space H^3.
struct Point3 {
    Complex z;
    Real v;
    Point3(Complex z_, Real v_) : z(z_), v(v_) {
        if (!(v > 0)) throw std::domain_error("Point3: v must be positive");
    }
};

// Mobius action of a 2x2 complex matrix with det 1 on H^3.
Point3 mobius_h3(const Complex& a, const Complex& b, const Complex& c, const Complex& d,
                 const Point3& u);
Point3 mobius_h3(const Mat2& m, const Point3& u);

// Per-lattice analytic data, computed once and shared.
class LatticeConstants {
  public:
    LatticeConstants(const Lattice& lat, const SeriesParams& params);
    // restore path: E_2(0) supplied from a cache instead of being recomputed
    LatticeConstants(const Lattice& lat, const SeriesParams& params, const Complex& e2zero,
                     int kappa);

    const Lattice& lattice() const { return lat_; }
    const WeierstrassCache& weierstrass() const { return weier_; }
    const Real& area() const { return area_; }
    const Complex& pairing() const { return pairing_; }  // D(L) = 2i*area
    const Complex& e2zero() const { return e2zero_; }
    // dual basis for the Poisson pairing Re(w * conj(mu))
    const Complex& poisson_dual1() const { return pd1_; }
    const Complex& poisson_dual2() const { return pd2_; }
    // additive character convention for the Fourier-Bessel expansion of H:
    // e(x) = exp(2 pi i * kappa * Re(x)); kappa = 2 matches e(x)=e(x+conj x).
    int character_scale() const { return kappa_; }
    void set_character_scale(int kappa);

  private:
    Lattice lat_;
    WeierstrassCache weier_;
    Real area_;
    Complex pairing_;
    Complex e2zero_;
    Complex pd1_, pd2_;
    int kappa_ = 2;
};

// Analytically continued weighted lattice sums
//   Z_k(x, u) = sum_{l in L+x, l != 0} conj(l)^k |l|^{-2u},
// continued via the incomplete-gamma / Poisson split.  u is 1 or 2 here and
// the incomplete gammas collapse to elementary closed forms.
Complex z_sum(int k, int u, const Complex& x, const LatticeConstants& lc,
              const SeriesParams& params);

// Generic-exponent variant (used as the continuation oracle near u = 0).
Complex z_sum_continued(int k, const Real& u, const Complex& x, const LatticeConstants& lc,
                        const SeriesParams& params);

// Kronecker-Eisenstein series E_k at s = 0, k in {0, 1, 2}.
Complex e_k(int k, const Complex& x, const LatticeConstants& lc, const SeriesParams& params);

// E(x) = (2 pi i / D(L)) * Z_2(x, 1); satisfies E(0) = E_2(0).
Complex e_aux(const Complex& x, const LatticeConstants& lc, const SeriesParams& params);

// Harmonic lift H(u) on H^3 (standard lattice of the order only):
//   H(u) = E_2(0)(z - conj z) - (4 pi / D(L)) v sum' (conj(m) n / |mn|)
//          K_1(4 pi |mn| v) e(mnz),   m in L, n in L'.
Complex h_value(const Point3& u, const LatticeConstants& lc, const SeriesParams& params);

// H_N(u) = H(Nu) - H(u), Nu = (Nz, |N|v).
Complex h_n_value(const Point3& u, const Level& level, const LatticeConstants& lc,
                  const SeriesParams& params);

// Regularized incomplete gamma helpers (exposed for the continuation oracle
// and tests).
Real upper_gamma(const Real& a, const Real& z);       // Gamma(a, z)
Real reg_upper_gamma(const Real& a, const Real& z);   // Q(a, z) = Gamma(a,z)/Gamma(a)

}  // namespace bianchi
