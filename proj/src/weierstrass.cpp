#include "bianchi/weierstrass.hpp"

#include <cmath>

namespace bianchi {

WeierstrassCache::WeierstrassCache(const Lattice& lat) : lat_(&lat) {
    tau_ = lat.w1() / lat.w2();
    scale_ = lat.w2();
    const Real pi = pi_const();
    q_ = exp(Complex(Real(0), pi) * tau_);

    const double log_q = static_cast<double>(log(abs(q_)));
    const double digits = static_cast<double>(current_digits());
    nterms_ = static_cast<int>(std::ceil(std::sqrt((digits * 2.303 + 25.0) / (-log_q)))) + 2;

    // theta derivatives at 0
    Complex t1p(Real(0), Real(0)), t1ppp(Real(0), Real(0));
    for (int n = 0; n < nterms_; ++n) {
        Real k(2 * n + 1);
        Complex qp = exp(log(q_) * k * k / 4);
        Complex term = ((n % 2) ? -qp : qp);
        t1p += term * k;
        t1ppp -= term * k * k * k;
    }
    t1p *= 2;
    t1ppp *= 2;
    eta1_norm_ = -(pi * pi / 3) * t1ppp / t1p;
    eta_w2_ = eta1_norm_ / scale_;

    // invariants from Eisenstein q-series, Q = e^{2 pi i tau}
    Complex Q = q_ * q_;
    const double log_Q = 2 * log_q;
    int nq = static_cast<int>(std::ceil((digits * 2.303 + 25.0) / (-log_Q))) + 2;
    std::vector<std::int64_t> sigma3(nq + 1, 0), sigma5(nq + 1, 0);
    for (std::int64_t d = 1; d <= nq; ++d) {
        std::int64_t d3 = d * d * d, d5 = d3 * d * d;
        for (std::int64_t m = d; m <= nq; m += d) {
            sigma3[m] += d3;
            sigma5[m] += d5;
        }
    }
    Complex e4(Real(1), Real(0)), e6(Real(1), Real(0)), Qn(Real(1), Real(0));
    for (int n = 1; n <= nq; ++n) {
        Qn *= Q;
        e4 += Real(240) * Real(sigma3[n]) * Qn;
        e6 -= Real(504) * Real(sigma5[n]) * Qn;
    }
    Real pi4 = pi * pi * pi * pi;
    Complex s2 = scale_ * scale_;
    Complex s4 = s2 * s2, s6 = s4 * s2;
    g2_ = (4 * pi4 / 3) * e4 / s4;
    g3_ = (8 * pi4 * pi * pi / 27) * e6 / s6;
}

Complex WeierstrassCache::theta1(const Complex& x) const {
    Complex acc(Real(0), Real(0));
    for (int n = 0; n < nterms_; ++n) {
        Complex qp = exp(log(q_) * Real(2 * n + 1) * Real(2 * n + 1) / 4);
        Complex term = qp * sin(Real(2 * n + 1) * x);
        acc += (n % 2) ? -term : term;
    }
    return 2 * acc;
}

Complex WeierstrassCache::theta1_prime(const Complex& x) const {
    Complex acc(Real(0), Real(0));
    for (int n = 0; n < nterms_; ++n) {
        Real k(2 * n + 1);
        Complex qp = exp(log(q_) * k * k / 4);
        Complex term = qp * k * cos(k * x);
        acc += (n % 2) ? -term : term;
    }
    return 2 * acc;
}

Complex WeierstrassCache::theta1_second(const Complex& x) const {
    Complex acc(Real(0), Real(0));
    for (int n = 0; n < nterms_; ++n) {
        Real k(2 * n + 1);
        Complex qp = exp(log(q_) * k * k / 4);
        Complex term = qp * k * k * sin(k * x);
        acc -= (n % 2) ? -term : term;
    }
    return 2 * acc;
}

Complex WeierstrassCache::zeta(const Complex& z) const {
    const Real pi = pi_const();
    Complex zn = z / scale_;
    Complex x = pi * zn;
    Complex f = pi * theta1_prime(x) / theta1(x);
    return (eta1_norm_ * zn + f) / scale_;
}

Complex WeierstrassCache::wp(const Complex& z) const {
    const Real pi = pi_const();
    Complex zn = z / scale_;
    Complex x = pi * zn;
    Complex t = theta1(x), tp = theta1_prime(x), tpp = theta1_second(x);
    Complex fprime = pi * pi * (tpp * t - tp * tp) / (t * t);
    return (-eta1_norm_ - fprime) / (scale_ * scale_);
}

Complex WeierstrassCache::wp_prime(const Complex& z) const {
    // third derivative of theta via term-wise differentiation
    const Real pi = pi_const();
    Complex zn = z / scale_;
    Complex x = pi * zn;
    Complex t = theta1(x), tp = theta1_prime(x), tpp = theta1_second(x);
    Complex tppp(Real(0), Real(0));
    for (int n = 0; n < nterms_; ++n) {
        Real k(2 * n + 1);
        Complex qp = exp(log(q_) * k * k / 4);
        Complex term = qp * k * k * k * cos(k * x);
        tppp -= (n % 2) ? -term : term;
    }
    tppp *= 2;
    Complex g = tp / t;
    Complex gpp = tppp / t - 3 * tpp * tp / (t * t) + 2 * g * g * g;
    return -pi * pi * pi * gpp / (scale_ * scale_ * scale_);
}

}  // namespace bianchi
