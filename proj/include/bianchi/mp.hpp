#pragma once

#include <boost/multiprecision/mpfr.hpp>
#include <boost/multiprecision/complex_adaptor.hpp>
#include <boost/math/constants/constants.hpp>

#include <string>

namespace bianchi {

namespace mp = boost::multiprecision;

// Variable-precision real/complex scalars.  Precision is set process-wide
// (per thread) through set_precision_bits(); values remember the precision
// they were created with.
using Real = mp::number<mp::mpfr_float_backend<0>, mp::et_off>;
using Complex = mp::number<mp::complex_adaptor<mp::mpfr_float_backend<0>>, mp::et_off>;

inline unsigned bits_to_digits(unsigned bits) {
    return static_cast<unsigned>(bits * 0.30103) + 2;
}

inline void set_precision_bits(unsigned bits) {
    Real::default_precision(bits_to_digits(bits));
}

inline unsigned current_digits() { return Real::default_precision(); }

inline Real pi_const() { return boost::math::constants::pi<Real>(); }

inline Complex make_complex(const Real& re, const Real& im) { return Complex(re, im); }

inline Real re(const Complex& z) { return real(z); }
inline Real im(const Complex& z) { return imag(z); }

inline Complex cis(const Real& t) { return Complex(cos(t), sin(t)); }

// RAII precision override (restores previous working precision).
class ScopedPrecision {
  public:
    explicit ScopedPrecision(unsigned bits) : saved_(Real::default_precision()) {
        set_precision_bits(bits);
    }
    ~ScopedPrecision() { Real::default_precision(saved_); }
    ScopedPrecision(const ScopedPrecision&) = delete;
    ScopedPrecision& operator=(const ScopedPrecision&) = delete;

  private:
    unsigned saved_;
};

inline std::string to_decimal_string(const Real& x) {
    return x.str(Real::default_precision(), std::ios_base::scientific);
}

}  // namespace bianchi
