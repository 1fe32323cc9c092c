#pragma once

#include <vector>

#include "bianchi/mp.hpp"
#include "bianchi/quadfield.hpp"

namespace bianchi {

// Weierstrass functions for the lattice Z*tau + Z (and scalings), computed
// from theta q-series.  Convergence is geometric in |q| = |e^{i pi tau}|,
// which is < 0.02 for the orders used here.
class WeierstrassCache {
  public:
    // lattice L = w2 * (Z tau + Z), tau = w1/w2
    explicit WeierstrassCache(const Lattice& lat);

    // Weierstrass zeta/p for the *scaled* lattice L
    Complex zeta(const Complex& z) const;
    Complex wp(const Complex& z) const;
    Complex wp_prime(const Complex& z) const;

    // quasi-period: zeta(z + w2) - zeta(z), for the scaled lattice
    const Complex& eta_w2() const { return eta_w2_; }
    // lattice invariants g2(L), g3(L)
    const Complex& g2() const { return g2_; }
    const Complex& g3() const { return g3_; }

  private:
    Complex theta1(const Complex& x) const;        // theta_1(x | q)
    Complex theta1_prime(const Complex& x) const;  // d/dx
    Complex theta1_second(const Complex& x) const;

    const Lattice* lat_;
    Complex tau_, q_, scale_;
    Complex eta1_norm_;  // quasi-period for period 1 of Z tau + Z
    Complex eta_w2_;
    Complex g2_, g3_;
    int nterms_;
};

}  // namespace bianchi
