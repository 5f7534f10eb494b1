#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

namespace snakeineq {

/// Closed interval [lo, hi].
struct Interval {
    double lo = -1.0;
    double hi = 1.0;

    Interval() = default;
    Interval(double lo_, double hi_) : lo(lo_), hi(hi_) {
        if (lo > hi) throw std::invalid_argument("Interval: lo > hi");
    }
    double length() const { return hi - lo; }
    bool contains(double x) const { return x >= lo && x <= hi; }
};

/// Polynomial in the Chebyshev basis: p(x) = sum_j coeffs[j] * T_j(x).
/// Trailing coefficients below 1e-13 * max|c_j| are trimmed, so the stored
/// degree is honest after arithmetic.
class ChebPoly {
  public:
    static constexpr double kTrimRel = 1e-13;

    ChebPoly() : c_{0.0} {}
    explicit ChebPoly(std::vector<double> coeffs) : c_(std::move(coeffs)) {
        if (c_.empty()) c_.push_back(0.0);
        trim();
    }

    /// The basis element T_k.
    static ChebPoly basis(std::size_t k, double scale = 1.0) {
        std::vector<double> c(k + 1, 0.0);
        c[k] = scale;
        return ChebPoly(std::move(c));
    }

    static ChebPoly constant(double v) { return ChebPoly({v}); }

    const std::vector<double>& coeffs() const { return c_; }
    std::size_t degree() const { return c_.size() - 1; }
    double coeff(std::size_t j) const { return j < c_.size() ? c_[j] : 0.0; }

    double max_abs_coeff() const {
        double m = 0.0;
        for (double v : c_) m = std::max(m, std::abs(v));
        return m;
    }

    bool is_zero(double tol = 0.0) const {
        return c_.size() == 1 && std::abs(c_[0]) <= tol;
    }

    /// Clenshaw recurrence; valid for any real x.
    double operator()(double x) const {
        double b1 = 0.0, b2 = 0.0;
        const double two_x = 2.0 * x;
        for (std::size_t j = c_.size(); j-- > 1;) {
            const double b = two_x * b1 - b2 + c_[j];
            b2 = b1;
            b1 = b;
        }
        return x * b1 - b2 + c_[0];
    }

    /// Clenshaw over a batch of points; the recurrence runs over the
    /// coefficient index with the point loop innermost so it vectorizes.
    void eval_many(std::span<const double> xs, std::span<double> out) const {
        const std::size_t m = xs.size();
        std::vector<double> b1(m, 0.0), b2(m, 0.0);
        for (std::size_t j = c_.size(); j-- > 1;) {
            const double cj = c_[j];
            for (std::size_t i = 0; i < m; ++i) {
                const double b = 2.0 * xs[i] * b1[i] - b2[i] + cj;
                b2[i] = b1[i];
                b1[i] = b;
            }
        }
        const double c0 = c_[0];
        for (std::size_t i = 0; i < m; ++i) out[i] = xs[i] * b1[i] - b2[i] + c0;
    }

    ChebPoly& operator*=(double s) {
        for (double& v : c_) v *= s;
        trim();
        return *this;
    }

    friend ChebPoly operator*(ChebPoly p, double s) { return p *= s; }
    friend ChebPoly operator*(double s, ChebPoly p) { return p *= s; }

    friend ChebPoly operator+(const ChebPoly& p, const ChebPoly& q) {
        std::vector<double> c(std::max(p.c_.size(), q.c_.size()), 0.0);
        for (std::size_t j = 0; j < c.size(); ++j) c[j] = p.coeff(j) + q.coeff(j);
        return ChebPoly(std::move(c));
    }

    friend ChebPoly operator-(const ChebPoly& p, const ChebPoly& q) {
        std::vector<double> c(std::max(p.c_.size(), q.c_.size()), 0.0);
        for (std::size_t j = 0; j < c.size(); ++j) c[j] = p.coeff(j) - q.coeff(j);
        return ChebPoly(std::move(c));
    }

    friend ChebPoly operator-(const ChebPoly& p) { return p * -1.0; }

  private:
    void trim() {
        const double tol = kTrimRel * max_abs_coeff();
        while (c_.size() > 1 && std::abs(c_.back()) <= tol) c_.pop_back();
    }

    std::vector<double> c_;
};

inline double eval(const ChebPoly& p, double x) { return p(x); }

/// p' in the Chebyshev basis, via c'_{j-1} accumulation:
/// c'_{j-1} = c'_{j+1} + 2j c_j  (with the j=1 term halved).
inline ChebPoly derivative(const ChebPoly& p) {
    const auto& c = p.coeffs();
    const std::size_t d = p.degree();
    if (d == 0) return ChebPoly::constant(0.0);
    std::vector<double> dc(d, 0.0);
    for (std::size_t j = d; j >= 1; --j) {
        dc[j - 1] = (j + 1 < d ? dc[j + 1] : 0.0) + 2.0 * static_cast<double>(j) * c[j];
    }
    dc[0] *= 0.5;
    return ChebPoly(std::move(dc));
}

inline ChebPoly derivative(const ChebPoly& p, unsigned k) {
    ChebPoly q = p;
    for (unsigned i = 0; i < k; ++i) q = derivative(q);
    return q;
}

/// Product via T_i T_j = (T_{i+j} + T_{|i-j|}) / 2.
inline ChebPoly multiply(const ChebPoly& p, const ChebPoly& q) {
    const auto& a = p.coeffs();
    const auto& b = q.coeffs();
    std::vector<double> c(a.size() + b.size() - 1, 0.0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0.0) continue;
        for (std::size_t j = 0; j < b.size(); ++j) {
            const double h = 0.5 * a[i] * b[j];
            c[i + j] += h;
            c[i > j ? i - j : j - i] += h;
        }
    }
    return ChebPoly(std::move(c));
}

/// Monomial coefficients (a_0 + a_1 x + ...) to Chebyshev basis.
inline ChebPoly from_monomial(std::span<const double> mono) {
    ChebPoly result = ChebPoly::constant(0.0);
    ChebPoly xpow = ChebPoly::constant(1.0);
    const ChebPoly x = ChebPoly::basis(1);
    for (std::size_t j = 0; j < mono.size(); ++j) {
        if (j > 0) xpow = multiply(xpow, x);
        if (mono[j] != 0.0) result = result + mono[j] * xpow;
    }
    return result;
}

inline ChebPoly from_monomial(std::initializer_list<double> mono) {
    return from_monomial(std::span<const double>(mono.begin(), mono.size()));
}

/// Chebyshev to monomial coefficients, via the T_j recurrence in
/// monomial space. Fine for moderate degrees; high-degree conversion is
/// ill-conditioned by nature.
inline std::vector<double> to_monomial(const ChebPoly& p) {
    const std::size_t d = p.degree();
    std::vector<double> acc(d + 1, 0.0);
    std::vector<double> tkm1{1.0}, tk{0.0, 1.0};
    acc[0] = p.coeff(0);
    if (d >= 1) {
        for (std::size_t j = 1; j <= d; ++j) {
            for (std::size_t i = 0; i < tk.size(); ++i) acc[i] += p.coeff(j) * tk[i];
            if (j == d) break;
            std::vector<double> tnext(j + 2, 0.0);
            for (std::size_t i = 0; i < tk.size(); ++i) tnext[i + 1] += 2.0 * tk[i];
            for (std::size_t i = 0; i < tkm1.size(); ++i) tnext[i] -= tkm1[i];
            tkm1 = std::move(tk);
            tk = std::move(tnext);
        }
    }
    return acc;
}

/// Quotient of p by (x - t) in the Chebyshev basis (backward recurrence).
/// Exact when t is a root of p; the remainder is returned through `rem`.
inline ChebPoly divide_linear(const ChebPoly& p, double t, double* rem = nullptr) {
    const auto& c = p.coeffs();
    const std::size_t d = p.degree();
    if (d == 0) {
        if (rem) *rem = c[0];
        return ChebPoly::constant(0.0);
    }
    if (d == 1) {
        if (rem) *rem = c[0] + t * c[1];
        return ChebPoly::constant(c[1]);
    }
    // With q = sum b_j T_j: c_d = b_{d-1}/2, c_j = (b_{j-1}+b_{j+1})/2 - t b_j
    // for 2 <= j < d, c_1 = b_0 + b_2/2 - t b_1, solved backwards.
    std::vector<double> b(d, 0.0);
    b[d - 1] = 2.0 * c[d];
    for (std::size_t j = d - 1; j >= 2; --j) {
        const double bj1 = (j + 1 < d) ? b[j + 1] : 0.0;
        b[j - 1] = 2.0 * c[j] + 2.0 * t * b[j] - bj1;
    }
    if (d >= 2) b[0] = c[1] + t * b[1] - 0.5 * (d > 2 ? b[2] : 0.0);
    const double b0 = b[0], b1 = (d > 1) ? b[1] : 0.0;
    if (rem) *rem = c[0] - 0.5 * b1 + t * b0;
    return ChebPoly(std::move(b));
}

struct RootMult {
    double x;
    int multiplicity;
};

namespace detail {

/// Colleague (Chebyshev companion) matrix eigenvalues of p.
inline std::vector<std::complex<double>> colleague_eigenvalues(const ChebPoly& p) {
    const std::size_t d = p.degree();
    if (d == 0) throw std::invalid_argument("constant polynomial");
    const auto& c = p.coeffs();
    Eigen::MatrixXd A = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(d),
                                              static_cast<Eigen::Index>(d));
    if (d == 1) {
        A(0, 0) = -c[0] / c[1];
    } else {
        A(0, 1) = 1.0;
        for (std::size_t i = 1; i + 1 < d; ++i) {
            A(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i - 1)) = 0.5;
            A(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i + 1)) = 0.5;
        }
        const double cd = c[d];
        for (std::size_t j = 0; j < d; ++j) {
            double v = -0.5 * c[j] / cd;
            if (j == d - 2) v += 0.5;
            A(static_cast<Eigen::Index>(d - 1), static_cast<Eigen::Index>(j)) = v;
        }
    }
    Eigen::EigenSolver<Eigen::MatrixXd> es(A, /*computeEigenvectors=*/false);
    std::vector<std::complex<double>> ev(d);
    for (std::size_t i = 0; i < d; ++i) ev[i] = es.eigenvalues()(static_cast<Eigen::Index>(i));
    return ev;
}

/// One Newton polish step limited to a trust radius.
inline double newton_polish(const ChebPoly& p, const ChebPoly& dp, double x0,
                            int iters = 3, double radius = 1e-6) {
    double x = x0;
    for (int i = 0; i < iters; ++i) {
        const double f = p(x);
        const double g = dp(x);
        if (g == 0.0) break;
        const double step = f / g;
        if (std::abs(step) > radius) break;
        x -= step;
    }
    return x;
}

}  // namespace detail

/// All real roots of p within [lo - pad, hi + pad], clustered into
/// multiplicities (radius 1e-7 * (1 + |root|)) and sorted descending.
/// Simple roots are Newton-polished.
inline std::vector<RootMult> roots_in(const ChebPoly& p, double lo, double hi,
                                      double pad = 1e-8) {
    if (p.degree() == 0) throw std::invalid_argument("constant polynomial");
    auto ev = detail::colleague_eigenvalues(p);
    // Double touch points surface as conjugate pairs with small imaginary part.
    const double imag_tol = 1e-6;
    std::vector<double> xs;
    for (const auto& z : ev) {
        if (std::abs(z.imag()) <= imag_tol && z.real() >= lo - pad && z.real() <= hi + pad)
            xs.push_back(z.real());
    }
    std::sort(xs.begin(), xs.end(), std::greater<double>());
    std::vector<RootMult> out;
    const ChebPoly dp = derivative(p);
    std::size_t i = 0;
    while (i < xs.size()) {
        std::size_t j = i + 1;
        while (j < xs.size() &&
               std::abs(xs[j] - xs[i]) <= 1e-7 * (1.0 + std::abs(xs[i])))
            ++j;
        double center = 0.0;
        for (std::size_t k = i; k < j; ++k) center += xs[k];
        center /= static_cast<double>(j - i);
        if (j - i == 1) center = detail::newton_polish(p, dp, center);
        center = std::clamp(center, lo, hi);
        out.push_back({center, static_cast<int>(j - i)});
        i = j;
    }
    return out;
}

/// Roots in [-1 - eps, 1 + eps] with clustered multiplicity, descending.
inline std::vector<RootMult> roots(const ChebPoly& p) {
    return roots_in(p, -1.0, 1.0);
}

struct SupnormResult {
    double value = 0.0;
    double argmax = 0.0;
};

/// max |p| over I: Chebyshev grid of 16 (d+1) points, then each bracket
/// around a local maximum is refined by root-finding on p'.
inline SupnormResult supnorm(const ChebPoly& p, Interval I = Interval{-1.0, 1.0}) {
    const std::size_t d = p.degree();
    const std::size_t m = 16 * (d + 1) + 1;
    const double mid = 0.5 * (I.lo + I.hi);
    const double half = 0.5 * (I.hi - I.lo);
    std::vector<double> xs(m), vals(m);
    for (std::size_t i = 0; i < m; ++i) {
        const double theta = M_PI * static_cast<double>(i) / static_cast<double>(m - 1);
        xs[i] = mid - half * std::cos(theta);  // ascending, endpoints exact
    }
    xs.front() = I.lo;
    xs.back() = I.hi;
    p.eval_many(xs, vals);

    SupnormResult best{std::abs(vals[0]), xs[0]};
    for (std::size_t i = 0; i < m; ++i) {
        if (std::abs(vals[i]) > best.value) best = {std::abs(vals[i]), xs[i]};
    }
    if (d == 0 || half == 0.0) return best;

    const ChebPoly dp = derivative(p);
    auto refine = [&](double a, double b) {
        double fa = dp(a), fb = dp(b);
        if (fa == 0.0) {
            if (std::abs(p(a)) > best.value) best = {std::abs(p(a)), a};
            return;
        }
        if (fa * fb > 0.0) return;
        for (int it = 0; it < 80; ++it) {
            const double c = 0.5 * (a + b);
            const double fc = dp(c);
            if (fc == 0.0 || 0.5 * (b - a) < 1e-15 * (1.0 + std::abs(c))) {
                a = b = c;
                break;
            }
            if (fa * fc < 0.0) {
                b = c;
                fb = fc;
            } else {
                a = c;
                fa = fc;
            }
        }
        const double c = 0.5 * (a + b);
        if (std::abs(p(c)) > best.value) best = {std::abs(p(c)), c};
    };
    for (std::size_t i = 0; i + 1 < m; ++i) {
        // Only brackets that can host a local extremum of |p| matter, but
        // the sign test inside refine() is cheap enough to run everywhere.
        refine(xs[i], xs[i + 1]);
    }
    return best;
}

/// Chebyshev-distributed grid of m points on [lo, hi], endpoints exact.
inline std::vector<double> cheb_grid(std::size_t m, double lo = -1.0, double hi = 1.0) {
    std::vector<double> xs(m);
    const double mid = 0.5 * (lo + hi), half = 0.5 * (hi - lo);
    for (std::size_t i = 0; i < m; ++i) {
        const double theta = M_PI * static_cast<double>(i) / static_cast<double>(m - 1);
        xs[i] = mid - half * std::cos(theta);
    }
    xs.front() = lo;
    xs.back() = hi;
    return xs;
}

/// Uniform grid of m points on [lo, hi].
inline std::vector<double> uniform_grid(std::size_t m, double lo = -1.0, double hi = 1.0) {
    std::vector<double> xs(m);
    for (std::size_t i = 0; i < m; ++i)
        xs[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(m - 1);
    return xs;
}

}  // namespace snakeineq
