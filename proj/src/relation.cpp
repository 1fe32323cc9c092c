#include "bianchi/relation.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <stdexcept>

namespace bianchi {

namespace {

using Rat = boost::multiprecision::cpp_rational;

Rat dot(const std::vector<Rat>& a, const std::vector<Rat>& b) {
    Rat s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

BigInt floor_div(const BigInt& a, const BigInt& b) {
    // b > 0
    BigInt q = a / b, r = a % b;
    if (r < 0) --q;
    return q;
}

BigInt round_rat(const Rat& r) {
    // round to nearest, ties toward +inf
    BigInt num = numerator(r), den = denominator(r);
    return floor_div(2 * num + den, 2 * den);
}

BigInt real_to_bigint(const Real& x) {
    // x is integer valued (a floor result); strip any fixed-format fraction
    std::string s = x.str(0, std::ios_base::fixed);
    auto dot = s.find('.');
    if (dot != std::string::npos) s = s.substr(0, dot);
    if (s.empty() || s == "-") s = "0";
    return BigInt(s);
}

}  // namespace

void lll_reduce(std::vector<std::vector<BigInt>>& rows) {
    const std::size_t n = rows.size();
    if (n < 2) return;
    const std::size_t m = rows[0].size();

    auto as_rat = [&](const std::vector<BigInt>& v) {
        std::vector<Rat> out(v.size());
        for (std::size_t i = 0; i < v.size(); ++i) out[i] = v[i];
        return out;
    };

    // Gram-Schmidt data, recomputed on structural changes (sizes are tiny)
    std::vector<std::vector<Rat>> gs(n);
    std::vector<std::vector<Rat>> mu(n, std::vector<Rat>(n, 0));
    std::vector<Rat> norm2(n);
    auto recompute = [&]() {
        for (std::size_t i = 0; i < n; ++i) {
            gs[i] = as_rat(rows[i]);
            for (std::size_t j = 0; j < i; ++j) {
                mu[i][j] = norm2[j] == 0 ? Rat(0) : dot(as_rat(rows[i]), gs[j]) / norm2[j];
                for (std::size_t t = 0; t < m; ++t) gs[i][t] -= mu[i][j] * gs[j][t];
            }
            norm2[i] = dot(gs[i], gs[i]);
        }
    };
    recompute();

    const Rat delta(99, 100);
    std::size_t k = 1;
    std::size_t guard = 0;
    while (k < n) {
        if (++guard > 100000) throw std::runtime_error("lll_reduce: did not terminate");
        // size reduction
        for (std::size_t j = k; j-- > 0;) {
            BigInt r = round_rat(mu[k][j]);
            if (r != 0) {
                for (std::size_t t = 0; t < m; ++t) rows[k][t] -= r * rows[j][t];
                recompute();
            }
        }
        // Lovasz condition
        if (norm2[k] >= (delta - mu[k][k - 1] * mu[k][k - 1]) * norm2[k - 1]) {
            ++k;
        } else {
            std::swap(rows[k], rows[k - 1]);
            recompute();
            k = (k > 1) ? k - 1 : 1;
        }
    }
}

std::optional<std::vector<BigInt>> integer_relation(const std::vector<Complex>& values,
                                                    unsigned scale_digits, const Real& tol) {
    const std::size_t n = values.size();
    if (n < 2) throw std::invalid_argument("integer_relation: need at least two values");
    Real scale = pow(Real(10), static_cast<int>(scale_digits));
    std::vector<std::vector<BigInt>> rows(n, std::vector<BigInt>(n + 2, 0));
    for (std::size_t i = 0; i < n; ++i) {
        rows[i][i] = 1;
        rows[i][n] = real_to_bigint(floor(re(values[i]) * scale + Real(1) / 2));
        rows[i][n + 1] = real_to_bigint(floor(im(values[i]) * scale + Real(1) / 2));
    }
    lll_reduce(rows);

    // pick the row with the smallest embedded residual among nontrivial ones
    std::optional<std::vector<BigInt>> best;
    Real best_res;
    for (const auto& row : rows) {
        bool trivial = true;
        Complex resid(Real(0), Real(0));
        std::vector<BigInt> coeff(row.begin(), row.begin() + n);
        for (std::size_t i = 0; i < n; ++i) {
            if (coeff[i] != 0) trivial = false;
            resid += Real(coeff[i].str()) * values[i];
        }
        if (trivial) continue;
        Real r = abs(resid);
        if (r < tol && (!best || r < best_res)) {
            best = coeff;
            best_res = r;
        }
    }
    return best;
}

}  // namespace bianchi
