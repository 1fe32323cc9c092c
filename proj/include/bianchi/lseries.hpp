#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "bianchi/cocycle.hpp"

namespace bianchi {

// Fixed-point and unit data of a loxodromic A = (a b; c d):
// alpha, alpha' roots of c X^2 + (d-a) X - b = 0, eps = c alpha + d.
struct GeodesicData {
    Complex alpha, alpha_p;
    Complex eps;
    int theta;  // sign(|eps| - 1)
};

// Roots ordered by Im(alpha) >= Im(alpha'), ties broken by Re.
// Requires c != 0 and (a+d)^2 not in {0, 1, 4}.
std::pair<Complex, Complex> fixed_points(const Mat2& A);

// Validates eps * eps' = 1 and |eps| bounded away from 1.
GeodesicData geodesic_data(const Mat2& A);

// Q_N(m, n) = (m N alpha + n)(m N alpha' + n)
Complex q_form(const Complex& m, const Complex& n, const GeodesicData& gd, const Complex& nval);

// The geodesic u_N(t) joining N alpha' (t=0) to N alpha (t=infinity).
Point3 geodesic_point(const GeodesicData& gd, const Complex& nval, const Real& t);

// Orbit representatives mu_N = m N alpha + n, (m,n) in (L+p) x (L+q) - {0},
// one per eps-orbit, windowed by |mu_N / mu'_N| in [1, |eta|^2) for the
// expanding unit eta.  Bounded by |Q_N| <= radius^2.
struct OrbitSet {
    std::vector<Complex> mu, mu_p;
    Real radius;
};

// N may be a unit (the unsmeared case); otherwise N must divide c.
OrbitSet orbit_reps(const Mat2& A, const QuadInt& nval, const GeodesicData& gd,
                    const Complex& p, const Complex& q, const Real& radius, const Lattice& lat,
                    const SeriesParams& params);

// L_N(A_N, s; p, q) = sum'' conj(Q_N)/|Q_N|^{2s} over the orbit set, Re(s) >= 1.6.
struct LDirectResult {
    Complex value;
    Real tail_estimate;
    GeodesicData gd;
};

LDirectResult l_direct(const Mat2& A, const QuadInt& nval, const Complex& s, const Complex& p,
                       const Complex& q, const Real& radius, const Lattice& lat,
                       const SeriesParams& params);

// Closed forms at s = 1:
//   theta (alpha - alpha') L_N(A_N, 1; p, q) = Phi(A_N)(p,q) / N  with
//   Phi(A_N)(p,q) = -conj(N (a+d)/c) E_2(p) - N ((a+d)/c) E_0(p) E_2(q) - D(a, c/N; p, q),
// and Phi_N(A)(p,q) = theta (alpha - alpha')(N L_N - L) via the N = 1 shape of
// the same formula.  The Phi_N value is asserted against the cocycle module.
struct ClosedS1 {
    Complex l_value;    // L_N(A_N, 1; p, q)
    Complex phi_value;  // Phi_N(A)(p, q)
    GeodesicData gd;
};
ClosedS1 l_closed_s1(const Mat2& A, const QuadInt& nval, const Complex& p, const Complex& q,
                     const LatticeConstants& lc, const SeriesParams& params);

// (p, q) = (l1, l2)(A - I)^{-1} satisfies (p,q)A = (p,q) + (l1,l2) exactly;
// returns nullopt when the companion congruence for A_N fails.
std::optional<std::pair<Complex, Complex>> admissible_pq(const Mat2& A, const QuadInt& nval,
                                                         const QuadInt& l1, const QuadInt& l2,
                                                         const Lattice& lat,
                                                         const SeriesParams& params);

// Orbit-by-orbit comparison of the literal integrand of the L-value integral
// (quadrature over t in [1, |eps|^2], summed over eps-translates) against the
// closed form 2 N^{s+1} theta (alpha-alpha') |alpha-alpha'|^s conj(Q)/|Q|^{s+2}
// * Gamma((s+2)/2)^2 / (2 Gamma(s+2)).  Returns the relative residual.
Real integral_check(const Mat2& A, const QuadInt& nval, const Real& s, const Complex& p,
                    const Complex& q, const Real& radius, unsigned nodes, const Lattice& lat,
                    const SeriesParams& params);

}  // namespace bianchi
