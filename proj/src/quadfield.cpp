#include "bianchi/quadfield.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace bianchi {

OrderSpec::OrderSpec(long d, long conductor) : d_(d), conductor_(conductor) {
    if (d <= 0) throw config_error("d must be positive (field Q(sqrt(-d)))");
    for (long p = 2; p * p <= d; ++p)
        if (d % (p * p) == 0) throw config_error("d must be squarefree");
    if (conductor < 1) throw config_error("conductor must be positive");
    if (conductor != 1)
        throw config_error("non-maximal orders are not enabled; use conductor 1");
    if (d == 1) throw config_error("order Z[i] is excluded (extra units make D(a,c) trivial)");
    if (d == 3)
        throw config_error("order Z[zeta_3] is excluded (extra units make D(a,c) trivial)");
    if (d % 4 == 3) {
        t0_ = 1;
        n0_ = (1 + d) / 4;
        disc_ = -d;
    } else {
        t0_ = 0;
        n0_ = d;
        disc_ = -4 * d;
    }
}

Complex OrderSpec::omega_value() const {
    Real sq = sqrt(Real(d_));
    if (t0_ == 0) return Complex(Real(0), sq);
    return Complex(Real(1) / 2, sq / 2);
}

Complex OrderSpec::sqrt_disc_value() const {
    return Real(2) * omega_value() - Real(t0_);
}

const OrderSpec& QuadInt::order() const {
    if (!ord_) throw config_error("QuadInt used before initialization");
    return *ord_;
}

void QuadInt::check_compatible(const QuadInt& o) const {
    if (order() != o.order()) throw config_error("mixed-order operands");
}

bool QuadInt::is_unit() const { return norm() == 1; }

QuadInt QuadInt::conj() const { return QuadInt(x_ + order().t0() * y_, -y_, order()); }

std::int64_t QuadInt::norm() const {
    return x_ * x_ + order().t0() * x_ * y_ + order().n0() * y_ * y_;
}

Complex QuadInt::value() const {
    return Real(x_) + Real(y_) * order().omega_value();
}

QuadInt operator+(const QuadInt& a, const QuadInt& b) {
    a.check_compatible(b);
    return QuadInt(a.x_ + b.x_, a.y_ + b.y_, a.order());
}

QuadInt operator-(const QuadInt& a, const QuadInt& b) {
    a.check_compatible(b);
    return QuadInt(a.x_ - b.x_, a.y_ - b.y_, a.order());
}

QuadInt operator-(const QuadInt& a) { return QuadInt(-a.x_, -a.y_, a.order()); }

QuadInt operator*(const QuadInt& a, const QuadInt& b) {
    a.check_compatible(b);
    const long t0 = a.order().t0(), n0 = a.order().n0();
    // (x1 + y1 w)(x2 + y2 w), w^2 = t0 w - n0
    return QuadInt(a.x_ * b.x_ - n0 * a.y_ * b.y_,
                   a.x_ * b.y_ + a.y_ * b.x_ + t0 * a.y_ * b.y_, a.order());
}

bool operator==(const QuadInt& a, const QuadInt& b) {
    a.check_compatible(b);
    return a.x_ == b.x_ && a.y_ == b.y_;
}

std::optional<QuadInt> QuadInt::divide_exact(const QuadInt& a, const QuadInt& b) {
    if (b.is_zero()) throw std::domain_error("division by zero");
    const std::int64_t nb = b.norm();
    QuadInt num = a * b.conj();
    if (num.x() % nb != 0 || num.y() % nb != 0) return std::nullopt;
    return QuadInt(num.x() / nb, num.y() / nb, a.order());
}

std::string QuadInt::str() const {
    std::ostringstream os;
    os << x_;
    if (y_ != 0) os << (y_ >= 0 ? "+" : "") << y_ << "*w";
    return os.str();
}

namespace {

// Nearest-quotient division a = q*b + r with norm(r) < norm(b) (norm-Euclidean
// orders).  Rounding ties are resolved by a local search over neighbors.
QuadInt euclid_quotient(const QuadInt& a, const QuadInt& b) {
    const std::int64_t nb = b.norm();
    QuadInt num = a * b.conj();
    auto round_div = [](std::int64_t p, std::int64_t q) {
        // round(p/q), q > 0
        return static_cast<std::int64_t>(std::llround(static_cast<double>(p) / static_cast<double>(q)));
    };
    std::int64_t qx = round_div(num.x(), nb), qy = round_div(num.y(), nb);
    QuadInt best(qx, qy, a.order());
    std::int64_t best_norm = (a - best * b).norm();
    for (int dx = -1; dx <= 1; ++dx)
        for (int dy = -1; dy <= 1; ++dy) {
            QuadInt cand(qx + dx, qy + dy, a.order());
            std::int64_t n = (a - cand * b).norm();
            if (n < best_norm) {
                best = cand;
                best_norm = n;
            }
        }
    if (best_norm >= nb)
        throw config_error("Euclidean division failed; order not norm-Euclidean?");
    return best;
}

}  // namespace

XgcdResult xgcd(const QuadInt& a, const QuadInt& b) {
    const OrderSpec& ord = a.order();
    if (!ord.euclidean())
        throw config_error("xgcd requires a norm-Euclidean order (d in {2,7,11})");
    if (a.is_zero() && b.is_zero()) throw std::domain_error("xgcd(0,0)");
    QuadInt r0 = a, r1 = b;
    QuadInt s0(1, 0, ord), s1(0, 0, ord), t0(0, 0, ord), t1(1, 0, ord);
    while (!r1.is_zero()) {
        QuadInt q = euclid_quotient(r0, r1);
        QuadInt r2 = r0 - q * r1;
        QuadInt s2 = s0 - q * s1;
        QuadInt t2 = t0 - q * t1;
        r0 = r1; r1 = r2;
        s0 = s1; s1 = s2;
        t0 = t1; t1 = t2;
    }
    return {r0, s0, t0};
}

Lattice::Lattice(const Complex& w1, const Complex& w2, const OrderSpec& ord)
    : w1_(w1), w2_(w2), scale_(w2), ord_(&ord) {
    Complex ratio = w1 / w2;
    if (!(im(ratio) > 0)) throw config_error("lattice basis must satisfy Im(w1/w2) > 0");
    // only scalings of the standard (omega, 1) basis are supported; this keeps
    // multiplication by O exactly lattice-preserving
    Complex dev = ratio - ord.omega_value();
    if (abs(dev) > Real("1e-30") * (1 + abs(ratio)))
        throw config_error("lattice must be a complex scaling of (omega, 1)");
}

Lattice Lattice::standard(const OrderSpec& ord) {
    return Lattice(ord.omega_value(), Complex(Real(1), Real(0)), ord);
}

Real Lattice::area() const {
    // |Im(w1 * conj(w2))|, positive by the orientation invariant
    return im(w1_ * conj(w2_));
}

Complex Lattice::pairing() const { return w1_ * conj(w2_) - conj(w1_) * w2_; }

std::array<Real, 2> Lattice::coords(const Complex& z) const {
    // solve z = s1 w1 + s2 w2 over R
    Real a11 = re(w1_), a21 = im(w1_), a12 = re(w2_), a22 = im(w2_);
    Real det = a11 * a22 - a12 * a21;
    Real s1 = (re(z) * a22 - im(z) * a12) / det;
    Real s2 = (a11 * im(z) - a21 * re(z)) / det;
    return {s1, s2};
}

namespace {
Real round_half_down(const Real& x) { return floor(x + Real(1) / 2); }
}  // namespace

Complex Lattice::reduce(const Complex& z) const {
    auto s = coords(z);
    Real k1 = round_half_down(s[0]), k2 = round_half_down(s[1]);
    return z - k1 * w1_ - k2 * w2_;
}

bool Lattice::contains(const Complex& z, const Real& tol) const {
    auto s = coords(z);
    Real d1 = abs(s[0] - round_half_down(s[0]));
    Real d2 = abs(s[1] - round_half_down(s[1]));
    return d1 < tol && d2 < tol;
}

namespace {

struct Snf2 {
    // U * M * V = diag(d1, d2); we track U^{-1} whose columns give the adapted
    // basis of Z^2 in which M Z^2 = d1 Z e1 + d2 Z e2.
    std::int64_t d1, d2;
    std::array<std::array<std::int64_t, 2>, 2> uinv;  // columns v1, v2
};

Snf2 snf_2x2(std::array<std::array<std::int64_t, 2>, 2> m) {
    // m[r][c]; row ops carry U (and its inverse), column ops are free for our use
    std::array<std::array<std::int64_t, 2>, 2> uinv = {{{1, 0}, {0, 1}}};
    auto row_op = [&](int dst, int src, std::int64_t k) {
        // row_dst += k * row_src  =>  uinv column src -= k * column dst
        m[dst][0] += k * m[src][0];
        m[dst][1] += k * m[src][1];
        uinv[0][src] -= k * uinv[0][dst];
        uinv[1][src] -= k * uinv[1][dst];
    };
    auto swap_rows = [&]() {
        std::swap(m[0], m[1]);
        std::swap(uinv[0][0], uinv[0][1]);
        std::swap(uinv[1][0], uinv[1][1]);
    };
    auto col_op = [&](int dst, int src, std::int64_t k) {
        m[0][dst] += k * m[0][src];
        m[1][dst] += k * m[1][src];
    };
    auto swap_cols = [&]() {
        std::swap(m[0][0], m[0][1]);
        std::swap(m[1][0], m[1][1]);
    };
    for (int iter = 0; iter < 64; ++iter) {
        // clear first column below pivot by gcd steps
        while (m[1][0] != 0) {
            if (m[0][0] == 0 || (m[1][0] != 0 && std::llabs(m[1][0]) < std::llabs(m[0][0])))
                swap_rows();
            if (m[1][0] == 0) break;
            row_op(1, 0, -(m[1][0] / m[0][0]));
        }
        while (m[0][1] != 0) {
            if (m[0][0] == 0 || (m[0][1] != 0 && std::llabs(m[0][1]) < std::llabs(m[0][0])))
                swap_cols();
            if (m[0][1] == 0) break;
            col_op(1, 0, -(m[0][1] / m[0][0]));
        }
        if (m[1][0] == 0 && m[0][1] == 0) {
            if (m[1][1] % m[0][0] == 0) break;
            // enforce divisibility d1 | d2
            row_op(0, 1, 1);
            continue;
        }
    }
    Snf2 out;
    out.d1 = std::llabs(m[0][0]);
    out.d2 = std::llabs(m[1][1]);
    out.uinv = uinv;
    return out;
}

}  // namespace

std::vector<std::array<std::int64_t, 2>> residues(const QuadInt& c) {
    if (c.is_zero()) throw std::domain_error("residues: c = 0");
    const long t0 = c.order().t0(), n0 = c.order().n0();
    // multiplication by c in the basis (w1, w2) = scale*(omega, 1):
    // c*w1 = (x + t0 y) w1 - n0 y w2 ; c*w2 = y w1 + x w2
    std::array<std::array<std::int64_t, 2>, 2> m = {
        {{c.x() + t0 * c.y(), c.y()}, {-n0 * c.y(), c.x()}}};
    Snf2 s = snf_2x2(m);
    std::vector<std::array<std::int64_t, 2>> out;
    out.reserve(static_cast<std::size_t>(s.d1 * s.d2));
    for (std::int64_t i = 0; i < s.d1; ++i)
        for (std::int64_t j = 0; j < s.d2; ++j)
            out.push_back({i * s.uinv[0][0] + j * s.uinv[0][1],
                           i * s.uinv[1][0] + j * s.uinv[1][1]});
    return out;
}

Mat2 Mat2::identity(const OrderSpec& ord) {
    QuadInt one(1, 0, ord), zero(0, 0, ord);
    return Mat2(one, zero, zero, one);
}

Mat2 operator*(const Mat2& m, const Mat2& n) {
    return Mat2(m.a_ * n.a_ + m.b_ * n.c_, m.a_ * n.b_ + m.b_ * n.d_,
                m.c_ * n.a_ + m.d_ * n.c_, m.c_ * n.b_ + m.d_ * n.d_);
}

Mat2 Mat2::inverse_sl2() const {
    return Mat2(d_, -b_, -c_, a_);
}

std::int64_t Mat2::max_entry_norm() const {
    return std::max(std::max(a_.norm(), b_.norm()), std::max(c_.norm(), d_.norm()));
}

std::string Mat2::str() const {
    return a_.str() + "," + b_.str() + "," + c_.str() + "," + d_.str();
}

Level::Level(const QuadInt& gen) : n_(gen) {
    if (gen.is_zero()) throw config_error("level generator must be non-zero");
    if (gen.is_unit()) throw config_error("level generator must be a non-unit");
}

bool Level::contains(const QuadInt& c) const {
    return QuadInt::divide_exact(c, n_).has_value();
}

bool in_gamma0(const Mat2& m, const Level& level) {
    return m.is_sl2() && level.contains(m.c());
}

Mat2 smear(const Mat2& m, const Level& level) {
    auto c_over_n = QuadInt::divide_exact(m.c(), level.generator());
    if (!c_over_n) throw std::domain_error("smear: c not divisible by N");
    return Mat2(m.a(), m.b() * level.generator(), *c_over_n, m.d());
}

namespace {

QuadInt random_quadint(const OrderSpec& ord, std::int64_t coord_bound, std::mt19937_64& rng) {
    std::uniform_int_distribution<std::int64_t> dist(-coord_bound, coord_bound);
    return QuadInt(dist(rng), dist(rng), ord);
}

Mat2 random_level_matrix(const OrderSpec& ord, const QuadInt& ngen, std::int64_t height,
                         std::mt19937_64& rng) {
    // c = N*t in the level ideal; a coprime to c; b, d completed via xgcd
    const std::int64_t coord = std::max<std::int64_t>(
        1, static_cast<std::int64_t>(std::sqrt(static_cast<double>(height))));
    for (int attempt = 0; attempt < 4000; ++attempt) {
        QuadInt t = random_quadint(ord, coord, rng);
        QuadInt c = ngen * t;
        QuadInt a = random_quadint(ord, coord, rng);
        if (a.is_zero() && c.is_zero()) continue;
        XgcdResult g = xgcd(a, c);
        if (!g.g.is_unit()) continue;
        // unit is +-1; normalize the Bezout identity to u*a + v*c = 1
        std::int64_t sgn = g.g.x();
        QuadInt d(sgn * g.u.x(), sgn * g.u.y(), ord);
        QuadInt b(-sgn * g.v.x(), -sgn * g.v.y(), ord);
        Mat2 m(a, b, c, d);
        if ((m.det() - QuadInt(1, 0, ord)).is_zero() && m.max_entry_norm() <= height) return m;
    }
    throw std::runtime_error("random_gamma0: no admissible matrix within height bound");
}

}  // namespace

Mat2 random_gamma0(const Level& level, std::int64_t height, std::mt19937_64& rng) {
    const OrderSpec& ord = level.generator().order();
    Mat2 m = random_level_matrix(ord, level.generator(), height, rng);
    return m;
}

Mat2 random_sl2(const OrderSpec& ord, std::int64_t height, std::mt19937_64& rng) {
    return random_level_matrix(ord, QuadInt(1, 0, ord), height, rng);
}

}  // namespace bianchi
