#pragma once

#include "bianchi/mp.hpp"

namespace bianchi {

// Modified Bessel function K_1(t), t > 0, to roughly the current working
// precision.  Ascending series with a cancellation-compensating precision
// bump below the switchover, exponentially-small-remainder asymptotic series
// above it.  The switchover is t* = digits*ln(10)/2 + 8, the point where the
// smallest asymptotic term (~e^{-2t}) clears the target.
Real bessel_k1(const Real& t);

}  // namespace bianchi
