#pragma once

#include <utility>
#include <vector>

#include "bianchi/dedekind.hpp"
#include "bianchi/eisenstein.hpp"
#include "bianchi/relation.hpp"

namespace bianchi {

struct CocycleValue {
    Complex value;
    Real error_budget;
    enum class Branch { c_nonzero, c_zero } branch;
};

// I(z) = z - conj(z)
inline Complex i_defect(const Complex& z) { return z - conj(z); }

// row-vector action (p,q) -> (p,q)A = (ap+cq, bp+dq), reduced mod L in each slot
std::pair<Complex, Complex> pq_action(const Complex& p, const Complex& q, const Mat2& A,
                                      const Lattice& lat);

// Sczech's cocycle Phi: SL_2(O_L) -> C at (p,q) = (0,0):
//   E_2(0) I((a+d)/c) - D(a,c) for c != 0, E_2(0) I(b/d) for c = 0.
CocycleValue phi(const Mat2& A, const LatticeConstants& lc, const SeriesParams& params);

// The (p,q) extension Phi(A)(p,q).
CocycleValue phi_pq(const Mat2& A, const Complex& p, const Complex& q,
                    const LatticeConstants& lc, const SeriesParams& params);

// Phi_N(A)(p,q) = Phi(A_N)(p,q) - Phi(A)(p,q) for A in Gamma_0((N)).  Computed
// as the literal difference; when (p,q)A_N = (p,q)A mod L^2 the explicit D^N
// branch is evaluated too and the two are asserted to agree.
CocycleValue phi_n(const Mat2& A, const Level& level, const Complex& p, const Complex& q,
                   const LatticeConstants& lc, const SeriesParams& params);
CocycleValue phi_n(const Mat2& A, const Level& level, const LatticeConstants& lc,
                   const SeriesParams& params);

// The explicit D^N branch of Phi_N, valid when (p,q)A_N = (p,q)A mod L^2
// (always at (0,0)); exposed so the two routes can be compared directly.
CocycleValue phi_n_explicit(const Mat2& A, const Level& level, const Complex& p,
                            const Complex& q, const LatticeConstants& lc,
                            const SeriesParams& params);

// |Phi(AB)(p,q) - Phi(A)(p,q) - Phi(B)((p,q)A)|
Real check_cocycle(const Mat2& A, const Mat2& B, const Complex& p, const Complex& q,
                   const LatticeConstants& lc, const SeriesParams& params);
// Phi_N analogue on Gamma_0((N)); (p,q) must satisfy (N-1)p, (N-1)q in L
Real check_cocycle_n(const Mat2& A, const Mat2& B, const Level& level, const Complex& p,
                     const Complex& q, const LatticeConstants& lc, const SeriesParams& params);

// |Phi(A) - (H(Au) - H(u))| and the Phi_N / H_N analogue
Real check_transformation(const Mat2& A, const Point3& u, const LatticeConstants& lc,
                          const SeriesParams& params);
Real check_transformation_n(const Mat2& A, const Level& level, const Point3& u,
                            const LatticeConstants& lc, const SeriesParams& params);

// Normalization data for integrality: a rescaled lattice on which g2, g3 are
// rational integers, so that F = Q(g2, g3, sqrt(D)) = Q(sqrt(D)) and O_F has
// basis {1, omega}.
struct FieldSpec {
    Lattice lattice;       // lambda * (standard lattice)
    Complex lambda;        // the scaling factor
    BigInt g2, g3;         // invariants of the scaled lattice (integers)
    Complex sqrt_disc;     // sqrt(D) as a complex value
};

FieldSpec make_field_spec(const OrderSpec& ord, const SeriesParams& params);

struct AlgebraicWitness {
    bool conclusive = false;         // a witness was found
    std::vector<BigInt> coeffs;      // value = coeffs[0] + coeffs[1]*omega
    Real residual;
    BigInt height;                   // max |coeff|
    std::string note;                // diagnostics when inconclusive
};

// Integer-relation recognition of a value in O_F = Z + Z*omega.
AlgebraicWitness recognize_integrality(const Complex& value, const FieldSpec& fs,
                                       unsigned scale_digits, const Real& tol);

}  // namespace bianchi
