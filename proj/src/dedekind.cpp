#include "bianchi/dedekind.hpp"

namespace bianchi {

Complex d_sum_pq(const QuadInt& a, const QuadInt& c, const Complex& p, const Complex& q,
                 const LatticeConstants& lc, const SeriesParams& params) {
    if (c.is_zero()) throw std::domain_error("d_sum: c = 0");
    const Lattice& lat = lc.lattice();
    Complex av = a.value(), cv = c.value();
    Complex acc(Real(0), Real(0));
    for (const auto& r : residues(c)) {
        Complex rp = (lat.at(r[0], r[1]) + p) / cv;
        // singular-argument convention: E_1 vanishes on L, so the whole term
        // drops and the left factor need not be computed
        if (lat.contains(rp, params.lattice_tol())) continue;
        acc += e_k(1, av * rp + q, lc, params) * e_k(1, rp, lc, params);
    }
    return acc / cv;
}

Complex d_sum(const QuadInt& a, const QuadInt& c, const LatticeConstants& lc,
              const SeriesParams& params) {
    Complex zero(Real(0), Real(0));
    return d_sum_pq(a, c, zero, zero, lc, params);
}

Complex d_smoothed(const QuadInt& a, const QuadInt& c, const Level& level, const Complex& p,
                   const Complex& q, const LatticeConstants& lc, const SeriesParams& params) {
    const QuadInt na = level.generator() * a;
    return d_sum_pq(na, c, p, q, lc, params) - d_sum_pq(a, c, p, q, lc, params);
}

}  // namespace bianchi
