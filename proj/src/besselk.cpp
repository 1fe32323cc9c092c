#include "bianchi/besselk.hpp"

#include <cmath>
#include <stdexcept>

namespace bianchi {

namespace {

Real k1_series(const Real& t) {
    // K_1(t) = 1/t + ln(t/2) I_1(t) - (t/4) sum_k [psi(k+1)+psi(k+2)] r^k / (k!(k+1)!)
    // with r = t^2/4.  I_1 grows like e^t, so work with ~1.45*t extra bits.
    const unsigned digits = current_digits();
    const double td = static_cast<double>(t);
    const unsigned work_bits =
        static_cast<unsigned>(digits * 3.33 + 1.5 * td + 64);
    ScopedPrecision guard(work_bits);
    Real tw(t);
    // expressions run at the max operand precision, so tw itself must carry
    // the working precision or every derived term stays at the input's
    tw.precision(bits_to_digits(work_bits));
    Real r = tw * tw / 4;
    Real gamma_e = boost::math::constants::euler<Real>();
    Real psi1 = -gamma_e;       // psi(1)
    Real psi2 = 1 - gamma_e;    // psi(2)
    Real fact = 1;              // k! (k+1)!
    Real rk = 1;
    Real i1 = 0, s = 0;
    Real eps = pow(Real(10), -static_cast<int>(digits) - 10);
    for (int k = 0;; ++k) {
        Real denom = fact;
        Real term_i1 = rk / denom;
        Real term_s = (psi1 + psi2) * term_i1;
        i1 += term_i1;
        s += term_s;
        if (k > 2 && abs(term_s) < eps * abs(s)) break;
        if (k > 10000) throw std::runtime_error("bessel_k1: series did not converge");
        rk *= r;
        fact *= Real(k + 1) * Real(k + 2);
        psi1 += Real(1) / (k + 1);
        psi2 += Real(1) / (k + 2);
    }
    i1 *= tw / 2;
    Real value = 1 / tw + log(tw / 2) * i1 - (tw / 4) * s;
    value.precision(digits);  // round back to the ambient precision
    return value;
}

Real k1_asymptotic(const Real& t) {
    // K_1(t) = sqrt(pi/2t) e^{-t} sum_k a_k,  a_0 = 1,
    // a_k = a_{k-1} (4 - (2k-1)^2) / (8 k t)
    const unsigned digits = current_digits();
    Real eps = pow(Real(10), -static_cast<int>(digits) - 6);
    Real a = 1, s = 1;
    Real prev = 1;
    for (int k = 1; k <= 10000; ++k) {
        a *= Real(4 - (2 * k - 1) * (2 * k - 1)) / (8 * k * t);
        if (abs(a) > abs(prev)) break;  // asymptotic tail starts growing
        s += a;
        if (abs(a) < eps * abs(s)) break;
        prev = a;
    }
    return sqrt(pi_const() / (2 * t)) * exp(-t) * s;
}

}  // namespace

Real bessel_k1(const Real& t) {
    if (!(t > 0)) throw std::domain_error("bessel_k1: t must be positive");
    const double switchover = current_digits() * 1.1513 + 8.0;
    if (static_cast<double>(t) >= switchover) return k1_asymptotic(t);
    return k1_series(t);
}

}  // namespace bianchi
