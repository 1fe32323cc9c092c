#include "bianchi/eisenstein.hpp"

#include <boost/math/special_functions/expint.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include <cmath>
#include <sstream>

#include "bianchi/besselk.hpp"

namespace bianchi {

namespace {

const double LN10 = 2.302585092994046;

Real abs2(const Complex& z) {
    Real a = re(z), b = im(z);
    return a * a + b * b;
}

// Gamma(a, z) for small positive integer a.
Real upper_gamma_int(int a, const Real& z) {
    Real e = exp(-z);
    switch (a) {
        case 1: return e;
        case 2: return e * (1 + z);
        case 3: return e * (2 + z * (2 + z));
        default: throw std::domain_error("upper_gamma_int: a out of range");
    }
}

// Regularized lower gamma P(a, z) by the ascending series, z < a + 1.
Real reg_lower_series(const Real& a, const Real& z) {
    Real eps = pow(Real(10), -static_cast<int>(current_digits()) - 8);
    Real term = 1 / (a + 1), s = term;
    for (int n = 1; n < 100000; ++n) {
        term *= z / (a + 1 + n);
        s += term;
        if (abs(term) < eps * abs(s)) break;
    }
    // P(a,z) = z^a e^{-z} / Gamma(a+1) * sum_{n>=0} z^n / ((a+1)...(a+n));
    // the loop accumulates the n >= 1 part of the sum divided by z.
    return pow(z, a) * exp(-z) * (1 + z * s) / boost::math::tgamma(a + 1);
}

// Q(a, z) by the Lentz continued fraction, z >= a + 1.
Real reg_upper_cf(const Real& a, const Real& z) {
    Real eps = pow(Real(10), -static_cast<int>(current_digits()) - 8);
    Real tiny = pow(Real(10), -4 * static_cast<int>(current_digits()));
    Real b = z + 1 - a;
    Real c = 1 / tiny;
    Real d = 1 / b;
    Real h = d;
    for (int i = 1; i < 100000; ++i) {
        Real an = -Real(i) * (Real(i) - a);
        b += 2;
        d = an * d + b;
        if (abs(d) < tiny) d = tiny;
        c = b + an / c;
        if (abs(c) < tiny) c = tiny;
        d = 1 / d;
        Real del = d * c;
        h *= del;
        if (abs(del - 1) < eps) break;
    }
    return exp(-z + a * log(z)) * h / boost::math::tgamma(a);
}

// Q(a, z) for real a (a > 0 here), with integer fast paths.
Real reg_q(const Real& a, const Real& z, int a_int) {
    if (a_int > 0) {
        // Gamma(a_int) = (a_int-1)!, at most 2 for a_int <= 3
        Real g = (a_int == 3) ? Real(2) : Real(1);
        return upper_gamma_int(a_int, z) / g;
    }
    if (z < a + 1) return 1 - reg_lower_series(a, z);
    return reg_upper_cf(a, z);
}

// Core evaluator for Z_k(x, u), the continued lattice sum.  u is passed both
// as a Real and, when it is exactly 1 or 2, as an int so the incomplete
// gammas take their closed forms.
Complex z_core(int k, const Real& u, int u_int, const Complex& x,
               const LatticeConstants& lc, const SeriesParams& params) {
    if (k < 0 || k > 2) throw std::domain_error("z_sum: k must be 0, 1 or 2");
    if (k == 0 && abs(u - 1) < Real("1e-30"))
        throw std::domain_error("z_sum: Z_0 has a pole at u = 1");

    const Lattice& lat = lc.lattice();
    const Real pi = pi_const();
    const Real& A = lc.area();
    Real T = pi / A;
    const unsigned digits = current_digits();
    Real cut(digits * LN10 + 25.0);

    Real tol = params.lattice_tol();
    bool on_lattice = lat.contains(x, tol);
    Complex x0 = on_lattice ? Complex(Real(0), Real(0)) : lat.reduce(x);

    // direct part: sum over lambda in L + x0 with T|lambda|^2 <= cut
    Real R = sqrt(cut / T);
    double Rd = static_cast<double>(R) + static_cast<double>(abs(x0));
    long imax = static_cast<long>(std::ceil(Rd * static_cast<double>(abs(lc.poisson_dual1())))) + 1;
    long jmax = static_cast<long>(std::ceil(Rd * static_cast<double>(abs(lc.poisson_dual2())))) + 1;

    Complex direct(Real(0), Real(0));
    for (long i = -imax; i <= imax; ++i) {
        for (long j = -jmax; j <= jmax; ++j) {
            Complex lam = x0 + lat.at(i, j);
            Real n2 = abs2(lam);
            if (n2 < tol * tol) continue;  // the excluded lambda = 0 term
            Real tz = T * n2;
            if (tz > cut) continue;
            Complex cl = conj(lam);
            Complex num = (k == 0) ? Complex(Real(1), Real(0)) : (k == 1 ? cl : cl * cl);
            direct += num * reg_q(u, tz, u_int) / pow(n2, u);
        }
    }

    // Poisson part: sum over nonzero mu in the dual lattice with
    // pi * A * |mu|^2 <= cut
    Real gu = boost::math::tgamma(u);
    Complex ik = (k == 0) ? Complex(Real(1), Real(0))
                          : (k == 1 ? Complex(Real(0), Real(-1)) : Complex(Real(-1), Real(0)));
    Complex pref = ik * pow(pi, k + 1) / (A * gu);
    Real a2 = Real(k + 1) - u;
    int a2_int = (u_int > 0) ? (k + 1 - u_int) : 0;
    if (u_int > 0 && a2_int <= 0)
        throw std::domain_error("z_sum: need k + 1 > u for the dual expansion");

    Real Rdual = sqrt(cut / (pi * A));
    double Rdd = static_cast<double>(Rdual);
    long dmax1 = static_cast<long>(std::ceil(Rdd * static_cast<double>(abs(lat.w1())))) + 1;
    long dmax2 = static_cast<long>(std::ceil(Rdd * static_cast<double>(abs(lat.w2())))) + 1;

    Complex dual(Real(0), Real(0));
    const Real two_pi = 2 * pi;
    for (long i = -dmax1; i <= dmax1; ++i) {
        for (long j = -dmax2; j <= dmax2; ++j) {
            if (i == 0 && j == 0) continue;
            Complex mu = Real(i) * lc.poisson_dual1() + Real(j) * lc.poisson_dual2();
            Real n2 = abs2(mu);
            Real zz = pi * A * n2;  // = pi^2 |mu|^2 / T
            if (zz > cut) continue;
            Complex cm = conj(mu);
            Complex num = (k == 0) ? Complex(Real(1), Real(0)) : (k == 1 ? cm : cm * cm);
            Real c = pi * pi * n2;
            Real g = (a2_int > 0) ? upper_gamma_int(a2_int, zz) : upper_gamma(a2, zz);
            Real angle = two_pi * re(mu * conj(x0));
            dual += num * pow(c, u - k - 1) * g * cis(angle);
        }
    }

    Complex total = direct + pref * dual;

    if (k == 0) {
        total += Complex(pi * pow(T, u - 1) / (A * gu * (u - 1)), Real(0));
        if (on_lattice) total -= Complex(pow(T, u) / boost::math::tgamma(u + 1), Real(0));
    }
    return total;
}

}  // namespace

SeriesParams SeriesParams::defaults() {
    SeriesParams p;
    p.digits = current_digits();
    p.target_error = pow(Real(10), -static_cast<int>(p.digits) + 6);
    return p;
}

Real SeriesParams::lattice_tol() const {
    return pow(Real(10), -static_cast<int>(digits) / 2);
}

Point3 mobius_h3(const Complex& a, const Complex& b, const Complex& c, const Complex& d,
                 const Point3& u) {
    Complex czd = c * u.z + d;
    Real denom = abs2(czd) + abs2(c) * u.v * u.v;
    Complex znew = ((a * u.z + b) * conj(czd) + a * conj(c) * u.v * u.v) / denom;
    return Point3(znew, u.v / denom);
}

Point3 mobius_h3(const Mat2& m, const Point3& u) {
    return mobius_h3(m.a().value(), m.b().value(), m.c().value(), m.d().value(), u);
}

LatticeConstants::LatticeConstants(const Lattice& lat, const SeriesParams& params)
    : lat_(lat), weier_(lat_) {
    area_ = lat_.area();
    pairing_ = lat_.pairing();
    Complex iu(Real(0), Real(1));
    pd1_ = iu * lat_.w2() / area_;
    pd2_ = -iu * lat_.w1() / area_;
    e2zero_ = z_core(2, Real(2), 2, Complex(Real(0), Real(0)), *this, params);
}

LatticeConstants::LatticeConstants(const Lattice& lat, const SeriesParams& params,
                                   const Complex& e2zero, int kappa)
    : lat_(lat), weier_(lat_) {
    (void)params;
    area_ = lat_.area();
    pairing_ = lat_.pairing();
    Complex iu(Real(0), Real(1));
    pd1_ = iu * lat_.w2() / area_;
    pd2_ = -iu * lat_.w1() / area_;
    e2zero_ = e2zero;
    set_character_scale(kappa);
}

void LatticeConstants::set_character_scale(int kappa) {
    if (kappa != 1 && kappa != 2)
        throw std::domain_error("character_scale must be 1 or 2");
    kappa_ = kappa;
}

Complex z_sum(int k, int u, const Complex& x, const LatticeConstants& lc,
              const SeriesParams& params) {
    if (u != 1 && u != 2) throw std::domain_error("z_sum: u must be 1 or 2");
    return z_core(k, Real(u), u, x, lc, params);
}

Complex z_sum_continued(int k, const Real& u, const Complex& x, const LatticeConstants& lc,
                        const SeriesParams& params) {
    return z_core(k, u, 0, x, lc, params);
}

Complex e_k(int k, const Complex& x, const LatticeConstants& lc, const SeriesParams& params) {
    Real tol = params.lattice_tol();
    switch (k) {
        case 0:
            return lc.lattice().contains(x, tol) ? Complex(Real(-1), Real(0))
                                                 : Complex(Real(0), Real(0));
        case 1: {
            if (lc.lattice().contains(x, tol)) return Complex(Real(0), Real(0));
            if (params.evaluator == SeriesParams::Evaluator::reference)
                return z_sum(1, 1, x, lc, params);
            Complex x0 = lc.lattice().reduce(x);
            return lc.weierstrass().zeta(x0) - lc.e2zero() * x0 -
                   (pi_const() / lc.area()) * conj(x0);
        }
        case 2: {
            if (lc.lattice().contains(x, tol)) return lc.e2zero();
            if (params.evaluator == SeriesParams::Evaluator::reference)
                return z_sum(2, 2, x, lc, params);
            Complex x0 = lc.lattice().reduce(x);
            return lc.weierstrass().wp(x0) + lc.e2zero();
        }
        default:
            throw std::domain_error("e_k: k must be 0, 1 or 2");
    }
}

Complex e_aux(const Complex& x, const LatticeConstants& lc, const SeriesParams& params) {
    Complex two_pi_i(Real(0), 2 * pi_const());
    return two_pi_i * z_sum(2, 1, x, lc, params) / lc.pairing();
}

Complex h_value(const Point3& u, const LatticeConstants& lc, const SeriesParams& params) {
    const Lattice& lat = lc.lattice();
    if (abs(lat.scale() - Real(1)) > params.lattice_tol())
        throw config_error("h_value: requires the standard lattice of the order");
    const OrderSpec& ord = lat.order();
    const Real pi = pi_const();
    const unsigned digits = current_digits();

    const double disc_abs = static_cast<double>(-ord.disc());
    const double fac = 2.0 / lc.character_scale();  // L' = fac * (1/delta) O
    const double vd = static_cast<double>(u.v);
    const double tmax = digits * LN10 + 25.0;
    const double rmn = tmax / (4.0 * 3.141592653589793 * vd * fac);
    const double pj = disc_abs * rmn * rmn;  // N(m) N(n0) <= pj
    std::int64_t pjoint = (pj > 0 && pj < 4.0e18) ? static_cast<std::int64_t>(pj) : -1;
    if (pjoint < 0 || (4.0 * 9.8696 / disc_abs) * pj * (1.0 + std::log(pj)) > 4.0e7) {
        std::ostringstream os;
        os << "h_value: series needs lattice pairs out to product norm " << pj
           << " at v = " << vd << "; raise v or lower the precision";
        throw precision_exhaustion(os.str());
    }

    Complex S(Real(0), Real(0));
    if (pjoint >= 1) {
        const long t0 = ord.t0();
        const Complex delta = ord.sqrt_disc_value();
        const Complex omega = ord.omega_value();
        const Complex cdelta_dir = conj(delta) / abs(delta);
        const Real scale_t = 4 * pi * u.v * Real(fac) / sqrt(Real(disc_abs));
        std::map<std::int64_t, Real> k1cache;
        std::map<std::int64_t, Real> rscache;
        auto k1_of = [&](std::int64_t key) -> const Real& {
            auto it = k1cache.find(key);
            if (it == k1cache.end())
                it = k1cache.emplace(key, bessel_k1(scale_t * sqrt(Real(key)))).first;
            return it->second;
        };
        auto rsqrt_of = [&](std::int64_t key) -> const Real& {
            auto it = rscache.find(key);
            if (it == rscache.end()) it = rscache.emplace(key, 1 / sqrt(Real(key))).first;
            return it->second;
        };

        const double ym_out = std::sqrt(4.0 * pjoint / disc_abs);
        for (long y1 = -static_cast<long>(ym_out); y1 <= static_cast<long>(ym_out); ++y1) {
            double s = std::sqrt(std::max(0.0, disc_abs * static_cast<double>(y1) * y1 * (-1.0) +
                                                   4.0 * pjoint));
            long x1lo = static_cast<long>(std::ceil((-static_cast<double>(t0) * y1 - s) / 2.0));
            long x1hi = static_cast<long>(std::floor((-static_cast<double>(t0) * y1 + s) / 2.0));
            for (long x1 = x1lo; x1 <= x1hi; ++x1) {
                if (x1 == 0 && y1 == 0) continue;
                QuadInt m(x1, y1, ord);
                std::int64_t nm = m.norm();
                if (nm > pjoint) continue;
                std::int64_t pn = pjoint / nm;
                if (pn < 1) continue;
                Complex mval = m.value();
                Complex cm = conj(mval) * rsqrt_of(nm);
                Complex w = 4 * pi * mval * u.z / delta;
                Real alpha = re(w);
                Real beta = re(w * omega);
                Complex ea = cis(alpha);
                const double ym_in = std::sqrt(4.0 * pn / disc_abs);
                for (long y2 = -static_cast<long>(ym_in); y2 <= static_cast<long>(ym_in); ++y2) {
                    double si = std::sqrt(std::max(
                        0.0, -disc_abs * static_cast<double>(y2) * y2 + 4.0 * pn));
                    long x2lo =
                        static_cast<long>(std::ceil((-static_cast<double>(t0) * y2 - si) / 2.0));
                    long x2hi =
                        static_cast<long>(std::floor((-static_cast<double>(t0) * y2 + si) / 2.0));
                    if (x2lo > x2hi) continue;
                    Complex phase = cis(alpha * x2lo + beta * y2);
                    for (long x2 = x2lo; x2 <= x2hi; ++x2, phase *= ea) {
                        if (x2 == 0 && y2 == 0) continue;
                        QuadInt n0(x2, y2, ord);
                        std::int64_t nn = n0.norm();
                        if (nn > pn) continue;
                        Complex dir_n = n0.value() * rsqrt_of(nn) * cdelta_dir;
                        S += cm * dir_n * k1_of(nm * nn) * phase;
                    }
                }
            }
        }
    }

    return lc.e2zero() * (u.z - conj(u.z)) - (4 * pi / lc.pairing()) * u.v * S;
}

Complex h_n_value(const Point3& u, const Level& level, const LatticeConstants& lc,
                  const SeriesParams& params) {
    Complex nval = level.generator().value();
    Point3 nu(nval * u.z, abs(nval) * u.v);
    return h_value(nu, lc, params) - h_value(u, lc, params);
}

Real upper_gamma(const Real& a, const Real& z) {
    if (a <= 0) {
        Real rnd = floor(a + Real(1) / 2);
        if (abs(a - rnd) < Real("1e-25")) {
            // Gamma(1 - n, z) = z^{1-n} E_n(z) for integer n >= 1
            unsigned n = static_cast<unsigned>(1 - static_cast<long>(rnd));
            return pow(z, 1 - Real(n)) * boost::math::expint(n, z);
        }
        // Gamma(a, z) = (Gamma(a+1, z) - z^a e^{-z}) / a
        return (upper_gamma(a + 1, z) - pow(z, a) * exp(-z)) / a;
    }
    return reg_q(a, z, 0) * boost::math::tgamma(a);
}

Real reg_upper_gamma(const Real& a, const Real& z) {
    if (a <= 0) throw std::domain_error("reg_upper_gamma: a must be positive");
    return reg_q(a, z, 0);
}

}  // namespace bianchi
