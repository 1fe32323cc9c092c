#include "bianchi/hecke.hpp"

#include <algorithm>

namespace bianchi {

namespace {

bool is_rational_prime(std::int64_t n) {
    if (n < 2) return false;
    for (std::int64_t f = 2; f * f <= n; ++f)
        if (n % f == 0) return false;
    return true;
}

// pO_L prime: either norm(p) is a rational prime (split or ramified), or p is
// a rational prime that stays inert (norm = p^2 with no element of norm p).
bool generates_prime_ideal(const QuadInt& p) {
    std::int64_t n = p.norm();
    if (is_rational_prime(n)) return true;
    if (!p.is_rational()) return false;
    std::int64_t q = p.x() < 0 ? -p.x() : p.x();
    if (!is_rational_prime(q) || n != q * q) return false;
    // inert iff no residue r has r^2 = disc mod q (q odd; q = 2 never inert
    // for the discriminants handled here without checking, so test directly)
    long disc = p.order().disc();
    for (std::int64_t r = 0; r < q; ++r)
        if (((r * r - disc) % q + q) % q == 0) return false;
    return true;
}

Mat2 adjugate(const Mat2& m) { return Mat2(m.d(), -m.b(), -m.c(), m.a()); }

std::optional<Mat2> divide_entries(const Mat2& m, const QuadInt& p) {
    auto a = QuadInt::divide_exact(m.a(), p);
    auto b = QuadInt::divide_exact(m.b(), p);
    auto c = QuadInt::divide_exact(m.c(), p);
    auto d = QuadInt::divide_exact(m.d(), p);
    if (!a || !b || !c || !d) return std::nullopt;
    return Mat2(*a, *b, *c, *d);
}

}  // namespace

CosetReps coset_reps(const QuadInt& p) {
    if (!generates_prime_ideal(p))
        throw config_error("coset_reps: p does not generate a prime ideal");
    const OrderSpec& ord = p.order();
    CosetReps out;
    out.p = p;
    out.ramified = (ord.disc() % p.norm() == 0);
    QuadInt one(1, 0, ord), zero(0, 0, ord);
    for (const auto& r : residues(p)) {
        QuadInt j(r[1], r[0], ord);  // residues() coords are in the basis (omega, 1)
        out.reps.emplace_back(one, j, zero, p);
    }
    out.reps.emplace_back(p, zero, zero, one);
    if (out.reps.size() != static_cast<std::size_t>(p.norm()) + 1)
        throw std::logic_error("coset_reps: wrong representative count");
    // pairwise inequivalence: g_i g_j^{-1} must not be integral
    for (std::size_t i = 0; i < out.reps.size(); ++i)
        for (std::size_t j = 0; j < i; ++j)
            if (divide_entries(out.reps[i] * adjugate(out.reps[j]), p))
                throw std::logic_error("coset_reps: representatives are equivalent");
    return out;
}

CosetReps coset_reps(const QuadInt& p, const Level& level) {
    CosetReps out = coset_reps(p);
    QuadInt g = xgcd(p, level.generator()).g;
    if (!g.is_unit() && !out.ramified)
        throw config_error("coset_reps: p shares a factor with the level");
    return out;
}

std::vector<Mat2> hecke_translates(const Mat2& A, const CosetReps& cr) {
    const std::size_t n = cr.reps.size();
    std::vector<Mat2> out;
    std::vector<bool> used(n, false);
    for (std::size_t i = 0; i < n; ++i) {
        std::optional<std::size_t> match;
        for (std::size_t j = 0; j < n; ++j) {
            auto cand = divide_entries(cr.reps[i] * A * adjugate(cr.reps[j]), cr.p);
            if (!cand) continue;
            if (match) throw std::logic_error("hecke_translates: matching is not unique");
            match = j;
            out.push_back(*cand);
        }
        if (!match) throw std::logic_error("hecke_translates: no integral translate");
        if (used[*match]) throw std::logic_error("hecke_translates: matching not bijective");
        used[*match] = true;
        if (!out.back().is_sl2())
            throw std::logic_error("hecke_translates: translate not in SL2");
    }
    return out;
}

HeckeResult hecke_apply_phi(const Mat2& A, const QuadInt& p, const LatticeConstants& lc,
                            const SeriesParams& params) {
    CosetReps cr = coset_reps(p);
    Complex sum(Real(0), Real(0));
    for (const auto& B : hecke_translates(A, cr)) sum += phi(B, lc, params).value;
    HeckeResult out;
    out.applied = sum;
    out.eigenvalue = Complex(Real(p.trace()), Real(0));
    out.residual = abs(sum - out.eigenvalue * phi(A, lc, params).value);
    return out;
}

HeckeResult hecke_apply_phi_n(const Mat2& A, const QuadInt& p, const Level& level,
                              const LatticeConstants& lc, const SeriesParams& params) {
    CosetReps cr = coset_reps(p, level);
    if (!in_gamma0(A, level))
        throw std::domain_error("hecke_apply_phi_n: matrix not in Gamma_0((N))");
    Mat2 an = smear(A, level);
    Complex sum(Real(0), Real(0));
    for (const auto& B : hecke_translates(an, cr)) sum += phi(B, lc, params).value;
    for (const auto& B : hecke_translates(A, cr)) sum -= phi(B, lc, params).value;
    HeckeResult out;
    out.applied = sum;
    out.eigenvalue = Complex(Real(p.trace()), Real(0));
    out.residual = abs(sum - out.eigenvalue * phi_n(A, level, lc, params).value);
    return out;
}

Mat2 involution_conjugate(const Mat2& A) { return Mat2(A.a(), -A.b(), -A.c(), A.d()); }

Complex involution_phi(const Mat2& A, const LatticeConstants& lc, const SeriesParams& params) {
    return phi(involution_conjugate(A), lc, params).value;
}

Complex involution_phi_n(const Mat2& A, const Level& level, const LatticeConstants& lc,
                         const SeriesParams& params) {
    return phi_n(involution_conjugate(A), level, lc, params).value;
}

}  // namespace bianchi
