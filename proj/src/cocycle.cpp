#include "bianchi/cocycle.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <map>
#include <sstream>

namespace bianchi {

namespace {

Real budget_for(const QuadInt& c, const SeriesParams& params) {
    // heuristic: norm(c) Dedekind terms, each a product of two E_1 values at
    // target error, divided by |c|; the constant absorbs the E/E_2 terms
    double nc = static_cast<double>(c.is_zero() ? 1 : c.norm());
    return params.target_error * Real(50.0 * (1.0 + std::sqrt(nc)));
}

}  // namespace

std::pair<Complex, Complex> pq_action(const Complex& p, const Complex& q, const Mat2& A,
                                      const Lattice& lat) {
    Complex ps = A.a().value() * p + A.c().value() * q;
    Complex qs = A.b().value() * p + A.d().value() * q;
    return {lat.reduce(ps), lat.reduce(qs)};
}

CocycleValue phi(const Mat2& A, const LatticeConstants& lc, const SeriesParams& params) {
    if (!A.is_sl2()) throw std::domain_error("phi: matrix not in SL2(O_L)");
    CocycleValue out;
    out.error_budget = budget_for(A.c(), params);
    if (A.c().is_zero()) {
        out.branch = CocycleValue::Branch::c_zero;
        out.value = lc.e2zero() * i_defect(A.b().value() / A.d().value());
    } else {
        out.branch = CocycleValue::Branch::c_nonzero;
        Complex tr_over_c = (A.a() + A.d()).value() / A.c().value();
        out.value = lc.e2zero() * i_defect(tr_over_c) - d_sum(A.a(), A.c(), lc, params);
    }
    return out;
}

CocycleValue phi_pq(const Mat2& A, const Complex& p_in, const Complex& q_in,
                    const LatticeConstants& lc, const SeriesParams& params) {
    if (!A.is_sl2()) throw std::domain_error("phi_pq: matrix not in SL2(O_L)");
    const Lattice& lat = lc.lattice();
    Complex p = lat.reduce(p_in), q = lat.reduce(q_in);
    CocycleValue out;
    out.error_budget = budget_for(A.c(), params);
    if (A.c().is_zero()) {
        out.branch = CocycleValue::Branch::c_zero;
        Complex bd = A.b().value() / A.d().value();
        out.value = -conj(bd) * e_aux(p, lc, params) -
                    bd * e_k(0, p, lc, params) * e_k(2, q, lc, params);
    } else {
        out.branch = CocycleValue::Branch::c_nonzero;
        auto [ps, qs] = pq_action(p, q, A, lat);
        Complex ac = A.a().value() / A.c().value();
        Complex dc = A.d().value() / A.c().value();
        out.value = -conj(ac) * e_aux(p, lc, params) - conj(dc) * e_aux(ps, lc, params) -
                    ac * e_k(0, p, lc, params) * e_k(2, q, lc, params) -
                    dc * e_k(0, ps, lc, params) * e_k(2, qs, lc, params) -
                    d_sum_pq(A.a(), A.c(), p, q, lc, params);
    }
    return out;
}

CocycleValue phi_n_explicit(const Mat2& A, const Level& level, const Complex& p,
                            const Complex& q, const LatticeConstants& lc,
                            const SeriesParams& params) {
    const Lattice& lat = lc.lattice();
    Complex nm1 = level.generator().value() - 1;
    CocycleValue out;
    out.error_budget = 2 * budget_for(A.c(), params);
    if (A.c().is_zero()) {
        out.branch = CocycleValue::Branch::c_zero;
        Complex bd = A.b().value() / A.d().value();
        out.value = -conj(nm1 * bd) * e_aux(p, lc, params) -
                    nm1 * bd * e_k(0, p, lc, params) * e_k(2, q, lc, params);
    } else {
        out.branch = CocycleValue::Branch::c_nonzero;
        Mat2 an = smear(A, level);
        auto [ps, qs] = pq_action(p, q, an, lat);
        Complex ac = A.a().value() / A.c().value();
        Complex dc = A.d().value() / A.c().value();
        out.value = -conj(nm1 * ac) * e_aux(p, lc, params) -
                    conj(nm1 * dc) * e_aux(ps, lc, params) -
                    nm1 * ac * e_k(0, p, lc, params) * e_k(2, q, lc, params) -
                    nm1 * dc * e_k(0, ps, lc, params) * e_k(2, qs, lc, params) -
                    d_smoothed(A.a(), A.c(), level, p, q, lc, params);
    }
    return out;
}

CocycleValue phi_n(const Mat2& A, const Level& level, const Complex& p, const Complex& q,
                   const LatticeConstants& lc, const SeriesParams& params) {
    if (!in_gamma0(A, level)) throw std::domain_error("phi_n: matrix not in Gamma_0((N))");
    const Lattice& lat = lc.lattice();
    Mat2 an = smear(A, level);
    CocycleValue a_n = phi_pq(an, p, q, lc, params);
    CocycleValue a_1 = phi_pq(A, p, q, lc, params);
    CocycleValue out;
    out.value = a_n.value - a_1.value;
    out.error_budget = a_n.error_budget + a_1.error_budget;
    out.branch = a_1.branch;

    // when the two row-vector actions agree mod L^2 the explicit branch must
    // reproduce the literal difference
    auto [p1, q1] = pq_action(p, q, A, lat);
    auto [p2, q2] = pq_action(p, q, an, lat);
    Real tol = params.lattice_tol();
    if (lat.contains(p1 - p2, tol) && lat.contains(q1 - q2, tol)) {
        CocycleValue ex = phi_n_explicit(A, level, p, q, lc, params);
        if (abs(ex.value - out.value) > out.error_budget + ex.error_budget)
            throw std::runtime_error("phi_n: literal and explicit branches disagree");
    }
    return out;
}

CocycleValue phi_n(const Mat2& A, const Level& level, const LatticeConstants& lc,
                   const SeriesParams& params) {
    Complex zero(Real(0), Real(0));
    return phi_n(A, level, zero, zero, lc, params);
}

Real check_cocycle(const Mat2& A, const Mat2& B, const Complex& p, const Complex& q,
                   const LatticeConstants& lc, const SeriesParams& params) {
    auto [pa, qa] = pq_action(lc.lattice().reduce(p), lc.lattice().reduce(q), A, lc.lattice());
    Complex lhs = phi_pq(A * B, p, q, lc, params).value;
    Complex rhs = phi_pq(A, p, q, lc, params).value + phi_pq(B, pa, qa, lc, params).value;
    return abs(lhs - rhs);
}

Real check_cocycle_n(const Mat2& A, const Mat2& B, const Level& level, const Complex& p,
                     const Complex& q, const LatticeConstants& lc, const SeriesParams& params) {
    auto [pa, qa] = pq_action(lc.lattice().reduce(p), lc.lattice().reduce(q), A, lc.lattice());
    Complex lhs = phi_n(A * B, level, p, q, lc, params).value;
    Complex rhs = phi_n(A, level, p, q, lc, params).value +
                  phi_n(B, level, pa, qa, lc, params).value;
    return abs(lhs - rhs);
}

Real check_transformation(const Mat2& A, const Point3& u, const LatticeConstants& lc,
                          const SeriesParams& params) {
    Complex lhs = phi(A, lc, params).value;
    Point3 au = mobius_h3(A, u);
    Complex rhs = h_value(au, lc, params) - h_value(u, lc, params);
    return abs(lhs - rhs);
}

Real check_transformation_n(const Mat2& A, const Level& level, const Point3& u,
                            const LatticeConstants& lc, const SeriesParams& params) {
    Complex lhs = phi_n(A, level, lc, params).value;
    Point3 au = mobius_h3(A, u);
    Complex rhs = h_n_value(au, level, lc, params) - h_n_value(u, level, lc, params);
    return abs(lhs - rhs);
}

namespace {

using Rat = boost::multiprecision::cpp_rational;

std::map<BigInt, int> factorize(BigInt n) {
    std::map<BigInt, int> out;
    if (n < 0) n = -n;
    for (BigInt f = 2; f * f <= n; ++f) {
        while (n % f == 0) {
            ++out[f];
            n /= f;
        }
    }
    if (n > 1) ++out[n];
    return out;
}

int valuation(const Rat& r, const BigInt& p) {
    int v = 0;
    BigInt num = numerator(r), den = denominator(r);
    while (num % p == 0) {
        ++v;
        num /= p;
    }
    while (den % p == 0) {
        --v;
        den /= p;
    }
    return v;
}

BigInt ipow(const BigInt& p, int e) {
    BigInt out = 1;
    for (int i = 0; i < e; ++i) out *= p;
    return out;
}

}  // namespace

FieldSpec make_field_spec(const OrderSpec& ord, const SeriesParams& params) {
    Lattice base = Lattice::standard(ord);
    WeierstrassCache w(base);
    Complex g2_0 = w.g2(), g3_0 = w.g3();
    Complex disc_c = g2_0 * g2_0 * g2_0 - 27 * g3_0 * g3_0;
    Complex j_c = 1728 * g2_0 * g2_0 * g2_0 / disc_c;
    Real j_r = re(j_c);
    Real j_round = floor(j_r + Real(1) / 2);
    if (abs(j_c - Complex(j_round, Real(0))) > Real("1e-10"))
        throw config_error("make_field_spec: j-invariant is not a rational integer");
    std::string j_str = j_round.str(0, std::ios_base::fixed);
    if (auto dot = j_str.find('.'); dot != std::string::npos) j_str = j_str.substr(0, dot);
    BigInt j(j_str);
    if (j == 0 || j == 1728)
        throw config_error("make_field_spec: degenerate j (excluded orders)");

    // smallest-height integer pair (G2, G3) with G2^3 / G3^2 = 27 j / (j - 1728)
    Rat r = Rat(27 * j) / Rat(j - 1728);
    Rat G2 = r, G3 = r;
    auto primes_n = factorize(numerator(r));
    auto primes_d = factorize(denominator(r));
    for (const auto& kv : primes_d) primes_n[kv.first] += 0;
    for (const auto& kv : primes_n) {
        const BigInt& p = kv.first;
        int e2 = valuation(G2, p), e3 = valuation(G3, p);
        int t = -std::min(e2 >= 0 ? e2 / 2 : -((-e2 + 1) / 2), e3 >= 0 ? e3 / 3 : -((-e3 + 2) / 3));
        if (t > 0) {
            G2 *= ipow(p, 2 * t);
            G3 *= ipow(p, 3 * t);
        } else if (t < 0) {
            G2 /= ipow(p, -2 * t);
            G3 /= ipow(p, -3 * t);
        }
    }
    if (denominator(G2) != 1 || denominator(G3) != 1)
        throw config_error("make_field_spec: invariant reduction left a denominator");

    Complex G2c(Real(numerator(G2).str()), Real(0));
    Complex G3c(Real(numerator(G3).str()), Real(0));
    Complex lambda2 = g3_0 * G2c / (g2_0 * G3c);
    if (abs(lambda2 * lambda2 * G2c - g2_0) > Real("1e-20") * abs(g2_0))
        throw config_error("make_field_spec: lambda normalization inconsistent");
    Complex lambda = sqrt(lambda2);

    FieldSpec fs{Lattice(lambda * ord.omega_value(), lambda, ord), lambda, numerator(G2),
                 numerator(G3), ord.sqrt_disc_value()};
    (void)params;
    return fs;
}

AlgebraicWitness recognize_integrality(const Complex& value, const FieldSpec& fs,
                                       unsigned scale_digits, const Real& tol) {
    AlgebraicWitness out;
    out.residual = abs(value);
    if (out.residual < tol) {
        out.conclusive = true;
        out.coeffs = {0, 0};
        out.height = 0;
        return out;
    }
    Complex omega = fs.lattice.order().omega_value();
    std::vector<Complex> vals{Complex(Real(1), Real(0)), omega, value};
    auto rel = integer_relation(vals, scale_digits, tol);
    if (!rel) {
        out.note = "no integer relation at this precision; raise precision to distinguish "
                   "non-integrality from truncation";
        return out;
    }
    BigInt c0 = (*rel)[0], c1 = (*rel)[1], c2 = (*rel)[2];
    if (c2 != 1 && c2 != -1) {
        std::ostringstream os;
        os << "relation found with non-unit value coefficient " << c2
           << "; value may be integral only after scaling";
        out.note = os.str();
        return out;
    }
    int sgn = (c2 > 0) ? -1 : 1;
    out.coeffs = {sgn * c0, sgn * c1};
    Complex reconstructed = Real(out.coeffs[0].str()) + Real(out.coeffs[1].str()) * omega;
    out.residual = abs(reconstructed - value);
    BigInt h0 = out.coeffs[0] < 0 ? BigInt(-out.coeffs[0]) : out.coeffs[0];
    BigInt h1 = out.coeffs[1] < 0 ? BigInt(-out.coeffs[1]) : out.coeffs[1];
    out.height = h0 > h1 ? h0 : h1;
    out.conclusive = out.residual < tol;
    if (!out.conclusive) out.note = "witness candidate exceeded the residual tolerance";
    return out;
}

}  // namespace bianchi
