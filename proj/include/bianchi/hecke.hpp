#pragma once

#include <vector>

#include "bianchi/cocycle.hpp"

namespace bianchi {

// Left coset representatives for the determinant-p double coset:
// {(1, j; 0, p) : j in O/pO} together with (p, 0; 0, 1).
struct CosetReps {
    QuadInt p;
    std::vector<Mat2> reps;  // norm(p)+1 matrices of determinant p
    bool ramified = false;
};

// Requires pO_L prime (split/ramified element of prime norm, or an inert
// rational prime).  With a level, p must be coprime to it unless ramified.
CosetReps coset_reps(const QuadInt& p);
CosetReps coset_reps(const QuadInt& p, const Level& level);

// The matched translates g_i A g_{sigma(i)}^{-1} in SL_2(O_L); sigma is the
// unique permutation making each product integral of determinant 1, and its
// bijectivity is asserted.
std::vector<Mat2> hecke_translates(const Mat2& A, const CosetReps& cr);

struct HeckeResult {
    Complex applied;
    Complex eigenvalue;  // p + conj(p)
    Real residual;       // |applied - eigenvalue * phi(A)|
};

// (Phi | T_p)(A) = sum_i Phi(g_i A g_sigma(i)^{-1})
HeckeResult hecke_apply_phi(const Mat2& A, const QuadInt& p, const LatticeConstants& lc,
                            const SeriesParams& params);

// (Phi_N | T_p)(A) = (Phi | T_p)(A_N) - (Phi | T_p)(A), following the proof
// that reduces the smoothed operator to the plain one.
HeckeResult hecke_apply_phi_n(const Mat2& A, const QuadInt& p, const Level& level,
                              const LatticeConstants& lc, const SeriesParams& params);

// x = (1, 0; 0, -1): phi(x A x^{-1}) = phi((a, -b; -c, d)), expected -phi(A)
Mat2 involution_conjugate(const Mat2& A);
Complex involution_phi(const Mat2& A, const LatticeConstants& lc, const SeriesParams& params);
Complex involution_phi_n(const Mat2& A, const Level& level, const LatticeConstants& lc,
                         const SeriesParams& params);

}  // namespace bianchi
