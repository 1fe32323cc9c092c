#pragma once

#include "bianchi/eisenstein.hpp"
#include "bianchi/quadfield.hpp"

namespace bianchi {

// Elliptic Dedekind sum D(a,c) = (1/c) sum_{r in L/cL} E_1(ar/c) E_1(r/c).
// Terms whose E_1 argument lies in L contribute 0 (E_1(0) = 0 by parity).
Complex d_sum(const QuadInt& a, const QuadInt& c, const LatticeConstants& lc,
              const SeriesParams& params);

// Two-variable extension
//   D(a,c;p,q) = (1/c) sum_{r in L/cL} E_1(a(r+p)/c + q) E_1((r+p)/c).
Complex d_sum_pq(const QuadInt& a, const QuadInt& c, const Complex& p, const Complex& q,
                 const LatticeConstants& lc, const SeriesParams& params);

// Smoothed difference D^N(a,c;p,q) = D(Na,c;p,q) - D(a,c;p,q).
Complex d_smoothed(const QuadInt& a, const QuadInt& c, const Level& level, const Complex& p,
                   const Complex& q, const LatticeConstants& lc, const SeriesParams& params);

}  // namespace bianchi
