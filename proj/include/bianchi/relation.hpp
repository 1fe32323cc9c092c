#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <optional>
#include <vector>

#include "bianchi/mp.hpp"

namespace bianchi {

using BigInt = boost::multiprecision::cpp_int;

// Integer relation c_1 v_1 + ... + c_n v_n ~ 0 among complex values, found by
// LLL reduction of the embedding lattice [I | round(C Re v) | round(C Im v)].
// Returns the coefficient vector of the best candidate, or nullopt when no
// vector in the reduced basis achieves |sum c_i v_i| < tol.
std::optional<std::vector<BigInt>> integer_relation(const std::vector<Complex>& values,
                                                    unsigned scale_digits, const Real& tol);

// Exact LLL reduction (delta = 99/100) of the rows of a small integer matrix;
// exposed for testing.
void lll_reduce(std::vector<std::vector<BigInt>>& rows);

}  // namespace bianchi
