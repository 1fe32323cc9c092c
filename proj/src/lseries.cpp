#include "bianchi/lseries.hpp"

#include <boost/math/special_functions/gamma.hpp>

#include <algorithm>
#include <cmath>

namespace bianchi {

namespace {

Real abs2(const Complex& z) { return re(z) * re(z) + im(z) * im(z); }

Complex cpow_int(const Complex& base, long e) {
    Complex out(Real(1), Real(0));
    Complex b = e < 0 ? Real(1) / base : base;
    for (long i = 0, n = e < 0 ? -e : e; i < n; ++i) out *= b;
    return out;
}

// A_N for a possibly-unit N (Level insists on a non-unit generator)
Mat2 smear_general(const Mat2& A, const QuadInt& nval) {
    auto cn = QuadInt::divide_exact(A.c(), nval);
    if (!cn) throw std::domain_error("lseries: N does not divide c");
    return Mat2(A.a(), A.b() * nval, *cn, A.d());
}

void check_assumptions(const Mat2& A, const Mat2& an, const Complex& p, const Complex& q,
                       const Lattice& lat, const SeriesParams& params) {
    for (const Mat2* m : {&A, &an}) {
        Complex ps = m->a().value() * p + m->c().value() * q - p;
        Complex qs = m->b().value() * p + m->d().value() * q - q;
        if (!lat.contains(ps, params.lattice_tol()) || !lat.contains(qs, params.lattice_tol()))
            throw std::domain_error("lseries: (p,q) is not fixed mod L^2 by the matrix pair");
    }
}

// integer coordinate box covering {x in L + shift : |x| <= bound}
struct CoordBox {
    std::int64_t imax, jmax;
};

CoordBox coord_box(const Lattice& lat, const Complex& shift, const Real& bound) {
    Real reach = bound + abs(shift);
    Real im = reach * abs(lat.w2()) / lat.area() + 2;
    Real jm = reach * abs(lat.w1()) / lat.area() + 2;
    if (im > Real(5e7) || jm > Real(5e7))
        throw precision_exhaustion("lseries: enumeration box too large");
    return {static_cast<std::int64_t>(im), static_cast<std::int64_t>(jm)};
}

}  // namespace

std::pair<Complex, Complex> fixed_points(const Mat2& A) {
    if (A.c().is_zero()) throw std::domain_error("fixed_points: c = 0");
    QuadInt tr = A.a() + A.d();
    if (tr.y() == 0) {
        std::int64_t t2 = tr.x() * tr.x();
        if (t2 == 0 || t2 == 1 || t2 == 4)
            throw std::domain_error("fixed_points: (a+d)^2 in {0,1,4}");
    }
    Complex a = A.a().value(), b = A.b().value(), c = A.c().value(), d = A.d().value();
    Complex delta = sqrt((d - a) * (d - a) + 4 * b * c);
    Complex r1 = (a - d + delta) / (2 * c);
    Complex r2 = (a - d - delta) / (2 * c);
    Real gap = abs(r1 - r2) * Real("1e-30");
    bool swap_them;
    if (abs(im(r1) - im(r2)) > gap)
        swap_them = im(r1) < im(r2);
    else
        swap_them = re(r1) < re(r2);
    if (swap_them) std::swap(r1, r2);
    return {r1, r2};
}

GeodesicData geodesic_data(const Mat2& A) {
    auto [alpha, alpha_p] = fixed_points(A);
    Complex c = A.c().value(), d = A.d().value();
    GeodesicData gd;
    gd.alpha = alpha;
    gd.alpha_p = alpha_p;
    gd.eps = c * alpha + d;
    Complex eps_p = c * alpha_p + d;
    if (abs(gd.eps * eps_p - Real(1)) > Real("1e-25"))
        throw std::logic_error("geodesic_data: eps * eps' != 1");
    Real mag = abs(gd.eps);
    if (abs(mag - 1) < Real("1e-6"))
        throw std::domain_error("geodesic_data: |eps| = 1, matrix not loxodromic");
    gd.theta = mag > 1 ? 1 : -1;
    return gd;
}

Complex q_form(const Complex& m, const Complex& n, const GeodesicData& gd, const Complex& nval) {
    return (m * nval * gd.alpha + n) * (m * nval * gd.alpha_p + n);
}

Point3 geodesic_point(const GeodesicData& gd, const Complex& nval, const Real& t) {
    Real t2 = t * t;
    Complex z = nval * (gd.alpha * t2 + gd.alpha_p) / (t2 + 1);
    Real v = abs(nval) * abs(gd.alpha - gd.alpha_p) * t / (t2 + 1);
    return Point3(z, v);
}

OrbitSet orbit_reps(const Mat2& A, const QuadInt& nval, const GeodesicData& gd,
                    const Complex& p, const Complex& q, const Real& radius, const Lattice& lat,
                    const SeriesParams& params) {
    Mat2 an = smear_general(A, nval);
    check_assumptions(A, an, p, q, lat, params);
    Complex nc = nval.value();
    Complex eta = gd.theta > 0 ? gd.eps : Real(1) / gd.eps;
    Real log_eta2 = 2 * log(abs(eta));
    Real aa = abs(gd.alpha - gd.alpha_p);
    Real r2 = radius * radius;

    // in the window |mu| <= |eta| * radius and |mu'| <= radius, which bounds
    // m = (mu - mu')/(N(alpha - alpha')) and n = (mu' alpha - mu alpha')/(alpha - alpha')
    Real mu_bound = abs(eta) * radius;
    Real m_bound = (mu_bound + radius) / (abs(nc) * aa);
    Real n_bound = (radius * abs(gd.alpha) + mu_bound * abs(gd.alpha_p)) / aa;
    CoordBox mb = coord_box(lat, p, m_bound);
    CoordBox nb = coord_box(lat, q, n_bound);

    struct Rep {
        Complex mu, mu_p;
    };
    std::vector<Rep> reps;
    Real tiny = params.lattice_tol();
    for (std::int64_t i = -mb.imax; i <= mb.imax; ++i) {
        for (std::int64_t j = -mb.jmax; j <= mb.jmax; ++j) {
            Complex m = lat.at(i, j) + p;
            for (std::int64_t k = -nb.imax; k <= nb.imax; ++k) {
                for (std::int64_t l = -nb.jmax; l <= nb.jmax; ++l) {
                    Complex n = lat.at(k, l) + q;
                    if (abs(m) < tiny && abs(n) < tiny) continue;
                    Complex mu = m * nc * gd.alpha + n;
                    Complex mu_p = m * nc * gd.alpha_p + n;
                    Real qa = abs(mu) * abs(mu_p);
                    if (qa > r2 || qa < tiny) continue;
                    // slide into the ratio window [1, |eta|^2)
                    Real ratio = abs(mu) / abs(mu_p);
                    long shift = static_cast<long>(
                        std::floor(static_cast<double>(log(ratio) / log_eta2)));
                    Complex mu_c = mu * cpow_int(eta, -shift);
                    Complex mu_pc = mu_p * cpow_int(eta, shift);
                    Real rc = abs(mu_c) / abs(mu_pc);
                    Real edge = Real("1e-30");
                    Real eta2 = abs(eta) * abs(eta);
                    while (rc < 1 - edge) {
                        mu_c *= eta;
                        mu_pc /= eta;
                        rc = abs(mu_c) / abs(mu_pc);
                    }
                    while (rc >= eta2 * (1 - edge)) {
                        mu_c /= eta;
                        mu_pc *= eta;
                        rc = abs(mu_c) / abs(mu_pc);
                    }
                    reps.push_back({mu_c, mu_pc});
                }
            }
        }
    }

    std::sort(reps.begin(), reps.end(),
              [](const Rep& x, const Rep& y) { return re(x.mu) < re(y.mu); });
    OrbitSet out;
    out.radius = radius;
    Real dtol = Real("1e-20") * (1 + radius);
    for (std::size_t i = 0; i < reps.size(); ++i) {
        bool dup = false;
        for (std::size_t j = i; j-- > 0;) {
            if (re(reps[i].mu) - re(reps[j].mu) > dtol) break;
            if (abs(reps[i].mu - reps[j].mu) < dtol && abs(reps[i].mu_p - reps[j].mu_p) < dtol) {
                dup = true;
                break;
            }
        }
        if (!dup) {
            out.mu.push_back(reps[i].mu);
            out.mu_p.push_back(reps[i].mu_p);
        }
    }
    return out;
}

LDirectResult l_direct(const Mat2& A, const QuadInt& nval, const Complex& s, const Complex& p,
                       const Complex& q, const Real& radius, const Lattice& lat,
                       const SeriesParams& params) {
    if (re(s) < Real("1.6"))
        throw config_error("l_direct: Re(s) >= 1.6 required for the convergent-region sum");
    GeodesicData gd = geodesic_data(A);
    OrbitSet orbits = orbit_reps(A, nval, gd, p, q, radius, lat, params);
    Real half2 = radius * radius / 4;
    Complex total(Real(0), Real(0)), inner(Real(0), Real(0));
    for (std::size_t i = 0; i < orbits.mu.size(); ++i) {
        Complex qv = orbits.mu[i] * orbits.mu_p[i];
        Real qa2 = abs2(qv);
        Complex term = conj(qv) * exp(-s * log(qa2));
        total += term;
        if (sqrt(qa2) <= half2) inner += term;
    }
    LDirectResult out;
    out.value = total;
    out.tail_estimate = 10 * abs(total - inner);
    out.gd = gd;
    return out;
}

namespace {

// -conj(nmult (a+d)/c) E(p) - nmult ((a+d)/c) E_0(p) E_2(q) - D(a, cdiv; p, q);
// the leading weight is the auxiliary E, which restricts to E_2(0) at p = 0
Complex phi_closed(const Mat2& A, const Complex& nmult, const QuadInt& cdiv, const Complex& p,
                   const Complex& q, const LatticeConstants& lc, const SeriesParams& params) {
    Complex coef = (A.a() + A.d()).value() / A.c().value();
    return -conj(nmult * coef) * e_aux(p, lc, params) -
           nmult * coef * e_k(0, p, lc, params) * e_k(2, q, lc, params) -
           d_sum_pq(A.a(), cdiv, p, q, lc, params);
}

}  // namespace

ClosedS1 l_closed_s1(const Mat2& A, const QuadInt& nval, const Complex& p, const Complex& q,
                     const LatticeConstants& lc, const SeriesParams& params) {
    const Lattice& lat = lc.lattice();
    Mat2 an = smear_general(A, nval);
    check_assumptions(A, an, lat.reduce(p), lat.reduce(q), lat, params);
    ClosedS1 out;
    out.gd = geodesic_data(A);
    Complex nc = nval.value();
    Complex pr = lat.reduce(p), qr = lat.reduce(q);

    Complex phi_an = phi_closed(A, nc, an.c(), pr, qr, lc, params);
    Complex phi_a = phi_closed(A, Complex(Real(1), Real(0)), A.c(), pr, qr, lc, params);
    Complex denom = out.gd.theta * (out.gd.alpha - out.gd.alpha_p);
    out.l_value = phi_an / (nc * denom);
    out.phi_value = phi_an - phi_a;

    if (!nval.is_unit()) {
        Level level(nval);
        CocycleValue ref = phi_n(A, level, pr, qr, lc, params);
        if (abs(ref.value - out.phi_value) > 4 * ref.error_budget)
            throw std::runtime_error("l_closed_s1: closed form disagrees with the cocycle");
    }
    return out;
}

std::optional<std::pair<Complex, Complex>> admissible_pq(const Mat2& A, const QuadInt& nval,
                                                         const QuadInt& l1, const QuadInt& l2,
                                                         const Lattice& lat,
                                                         const SeriesParams& params) {
    Complex a = A.a().value(), b = A.b().value(), c = A.c().value(), d = A.d().value();
    Complex det = 2 - (a + d);  // det(A - I) for det A = 1
    if (abs(det) < params.lattice_tol()) return std::nullopt;
    Complex l1v = lat.scale() * l1.value(), l2v = lat.scale() * l2.value();
    Complex p = (l1v * (d - 1) - l2v * c) / det;
    Complex q = (-l1v * b + l2v * (a - 1)) / det;
    Mat2 an = smear_general(A, nval);
    Complex ps = an.a().value() * p + an.c().value() * q - p;
    Complex qs = an.b().value() * p + an.d().value() * q - q;
    if (!lat.contains(ps, params.lattice_tol()) || !lat.contains(qs, params.lattice_tol()))
        return std::nullopt;
    return std::make_pair(lat.reduce(p), lat.reduce(q));
}

Real integral_check(const Mat2& A, const QuadInt& nval, const Real& s, const Complex& p,
                    const Complex& q, const Real& radius, unsigned nodes, const Lattice& lat,
                    const SeriesParams& params) {
    if (!(s > 1)) throw config_error("integral_check: s > 1 required");
    GeodesicData gd = geodesic_data(A);
    OrbitSet orbits = orbit_reps(A, nval, gd, p, q, radius, lat, params);
    Complex nc = nval.value();
    Complex ns = pow(nc, Complex(s, Real(0)));
    Complex alpha = gd.alpha, alpha_p = gd.alpha_p;
    Complex ada = alpha - alpha_p;
    Real aa = abs(ada);
    Real eps2 = abs2(gd.eps);

    // literal integrand of the geodesic-period display at parameter t for the
    // lattice pair determined by (mu, mu'):
    //   [conj(X)^2 (a-a') t + conj(X) conj(mN) v(t) |a-a'| (1-t^2)
    //      - (conj(mN) v(t))^2 conj(a-a') t]
    //   * (|X|^2 + |mN|^2 v(t)^2)^{-s-2} * N^s v(t)^s / (1+t^2)^2,
    // X = m N z(t) + n = (mu t^2 + mu')/(1+t^2), v(t) = |a-a'| t/(1+t^2).
    auto integrand = [&](const Complex& mu, const Complex& mu_p, const Real& t) {
        Real t2 = t * t;
        Real den = t2 + 1;
        Complex x = (mu * t2 + mu_p) / den;
        Complex mn = (mu - mu_p) / ada;
        Real vt = aa * t / den;
        Real d2 = abs2(x) + abs2(mn) * vt * vt;
        Complex bracket = conj(x) * conj(x) * ada * t +
                          conj(x) * conj(mn) * vt * aa * (1 - t2) -
                          conj(mn) * conj(mn) * vt * vt * conj(ada) * t;
        return bracket * pow(d2, -(s + 2)) * pow(vt, s) / (den * den);
    };

    // composite Simpson over [1, eps2]
    auto integrate = [&](const Complex& mu, const Complex& mu_p) {
        unsigned n = nodes % 2 ? nodes + 1 : nodes;
        Real h = (eps2 - 1) / n;
        Complex acc = integrand(mu, mu_p, Real(1)) + integrand(mu, mu_p, eps2);
        for (unsigned i = 1; i < n; ++i) {
            Real t = 1 + h * i;
            acc += integrand(mu, mu_p, t) * (i % 2 ? 4 : 2);
        }
        return acc * h / 3;
    };

    Complex literal(Real(0), Real(0));
    for (std::size_t i = 0; i < orbits.mu.size(); ++i) {
        Complex base = integrate(orbits.mu[i], orbits.mu_p[i]);
        Complex orbit_sum = base;
        Real cutoff = abs(base) * Real("1e-12") + Real("1e-40");
        for (int dir : {1, -1}) {
            Complex mu = orbits.mu[i], mu_p = orbits.mu_p[i];
            int stale = 0;
            for (int k = 0; k < 200 && stale < 2; ++k) {
                mu *= dir > 0 ? gd.eps : Real(1) / gd.eps;
                mu_p *= dir > 0 ? Real(1) / gd.eps : gd.eps;
                Complex piece = integrate(mu, mu_p);
                orbit_sum += piece;
                stale = abs(piece) < cutoff ? stale + 1 : 0;
            }
        }
        literal += orbit_sum;
    }
    literal *= 2 * nc * ns;

    // closed form over the same orbit set
    Real half = (s + 2) / 2;
    Real beta = boost::math::tgamma(half) * boost::math::tgamma(half) /
                (2 * boost::math::tgamma(s + 2));
    Complex closed(Real(0), Real(0));
    for (std::size_t i = 0; i < orbits.mu.size(); ++i) {
        Complex qv = orbits.mu[i] * orbits.mu_p[i];
        closed += conj(qv) * pow(abs(qv), -(s + 2));
    }
    closed *= 2 * nc * ns * gd.theta * ada * pow(aa, s) * beta;

    if (abs(closed) == 0) throw std::domain_error("integral_check: empty orbit set");
    return abs(literal - closed) / abs(closed);
}

}  // namespace bianchi
