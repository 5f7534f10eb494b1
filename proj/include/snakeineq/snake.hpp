#pragma once

#include <cmath>
#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "snakeineq/chebpoly.hpp"

namespace snakeineq {

/// Weight mu = sqrt(R_s) with R_s >= 0 on [-1,1].
struct Majorant {
    ChebPoly R;
    std::string tag;  // optional catalog identifier

    std::size_t s() const { return R.degree(); }

    double mu(double x) const {
        const double v = R(x);
        return v > 0.0 ? std::sqrt(v) : 0.0;
    }

    /// Numerical nonnegativity: R >= -1e-10 * max coefficient on a grid.
    bool nonnegative(std::size_t grid = 4096) const {
        const double tol = -1e-10 * R.max_abs_coeff();
        auto xs = cheb_grid(grid);
        std::vector<double> vals(xs.size());
        R.eval_many(xs, vals);
        for (double v : vals)
            if (v < tol) return false;
        return true;
    }

    /// Vanishing order of R at an endpoint (0 when mu(e) > 0).
    int boundary_order(double e) const {
        ChebPoly q = R;
        int order = 0;
        while (q.degree() >= 1) {
            const double scale = q.max_abs_coeff();
            if (std::abs(q(e)) > 1e-8 * scale) break;
            double rem = 0.0;
            q = divide_linear(q, e, &rem);
            ++order;
        }
        return order;
    }

    bool boundary_degenerate() const {
        return boundary_order(1.0) > 0 || boundary_order(-1.0) > 0;
    }
};

/// Coefficients a_0..a_s of A(z) with |A(e^{i theta})|^2 = R(cos theta).
struct FejerFactor {
    std::vector<double> a;

    std::complex<double> operator()(std::complex<double> z) const {
        std::complex<double> v = 0.0;
        for (std::size_t j = a.size(); j-- > 0;) v = v * z + a[j];
        return v;
    }

    double circle_sq(double theta) const {
        const std::complex<double> z(std::cos(theta), std::sin(theta));
        return std::norm((*this)(z));
    }
};

struct OscNode {
    double x = 0.0;
    int sign = 0;       // sign of omega at the node; 0 where mu vanishes
    int multiplicity = 1;
};

struct Snake {
    ChebPoly omega;
    Majorant mu;
    std::vector<OscNode> nodes;  // descending in x
    std::size_t base = 0;        // N: omega = sum_i factor.a[i] T_{N+i}
    FejerFactor factor;

    std::size_t n() const { return omega.degree(); }
    bool boundary_degenerate() const { return mu.boundary_degenerate(); }
};

namespace detail {

inline std::vector<std::complex<double>> monomial_roots(const std::vector<double>& coef) {
    std::size_t d = coef.size() - 1;
    while (d > 0 && coef[d] == 0.0) --d;
    if (d == 0) return {};
    Eigen::MatrixXd C = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(d),
                                              static_cast<Eigen::Index>(d));
    for (std::size_t i = 1; i < d; ++i)
        C(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i - 1)) = 1.0;
    for (std::size_t j = 0; j < d; ++j)
        C(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(d - 1)) = -coef[j] / coef[d];
    Eigen::EigenSolver<Eigen::MatrixXd> es(C, false);
    std::vector<std::complex<double>> out(d);
    for (std::size_t i = 0; i < d; ++i) out[i] = es.eigenvalues()(static_cast<Eigen::Index>(i));
    return out;
}

/// Vanishing order of p at e, by repeated exact-at-root deflation.
inline int vanishing_order(const ChebPoly& p, double e) {
    ChebPoly q = p;
    int order = 0;
    while (q.degree() >= 1) {
        if (std::abs(q(e)) > 1e-8 * q.max_abs_coeff()) break;
        double rem = 0.0;
        q = divide_linear(q, e, &rem);
        ++order;
    }
    return order;
}

}  // namespace detail

/// Fejer-Riesz factorization of R(cos theta) >= 0. Roots of
/// z^s R((z+1/z)/2) are split: those inside the unit disk are kept, and
/// near-unit-circle clusters must have even size, half of each assigned.
inline FejerFactor fejer_riesz(const Majorant& mu) {
    if (!mu.nonnegative()) throw std::runtime_error("majorant not nonnegative");
    // Boundary zeros of R map to unit-circle roots of the Laurent polynomial
    // with doubled multiplicity, which the eigenvalue solver resolves poorly.
    // Deflate them exactly first: a zero of order r at x = e contributes a
    // factor (z - e)^r to A, since |z - e|^2 = 2|1 - e cos(theta)| on |z|=1.
    const int r_pos = mu.boundary_order(1.0);
    const int r_neg = mu.boundary_order(-1.0);
    ChebPoly R = mu.R;
    for (int i = 0; i < r_pos; ++i) R = divide_linear(R, 1.0);
    for (int i = 0; i < r_neg; ++i) R = divide_linear(R, -1.0);
    const std::size_t s = R.degree();
    if (s == 0 && r_pos == 0 && r_neg == 0) {
        if (R.coeff(0) < 0.0) throw std::runtime_error("majorant not nonnegative");
        return FejerFactor{{std::sqrt(R.coeff(0))}};
    }
    // Laurent form: R(cos t) = r_0 + sum r_j (z^j + z^-j)/2, z = e^{it};
    // multiply by z^s to get an ordinary degree-2s polynomial.
    std::vector<std::complex<double>> zr;
    if (s > 0) {
        std::vector<double> L(2 * s + 1, 0.0);
        L[s] = R.coeff(0);
        for (std::size_t j = 1; j <= s; ++j) {
            L[s + j] += 0.5 * R.coeff(j);
            L[s - j] += 0.5 * R.coeff(j);
        }
        zr = detail::monomial_roots(L);
    }

    const double band = 1e-6;
    std::vector<std::complex<double>> inside, near_unit;
    for (const auto& z : zr) {
        const double az = std::abs(z);
        if (az < 1.0 - band)
            inside.push_back(z);
        else if (az <= 1.0 + band)
            near_unit.push_back(z);
    }
    // Unit-circle roots must appear with even multiplicity; cluster them and
    // assign half of each cluster (its centroid) to the factor.
    std::vector<std::complex<double>> selected = inside;
    std::vector<bool> used(near_unit.size(), false);
    for (std::size_t i = 0; i < near_unit.size(); ++i) {
        if (used[i]) continue;
        std::vector<std::size_t> cluster{i};
        for (std::size_t j = i + 1; j < near_unit.size(); ++j) {
            if (!used[j] && std::abs(near_unit[j] - near_unit[i]) < 1e-4) {
                cluster.push_back(j);
                used[j] = true;
            }
        }
        used[i] = true;
        if (cluster.size() % 2 != 0)
            throw std::runtime_error("factorization failed: odd boundary multiplicity");
        std::complex<double> centroid = 0.0;
        for (std::size_t idx : cluster) centroid += near_unit[idx];
        centroid /= static_cast<double>(cluster.size());
        for (std::size_t k = 0; k < cluster.size() / 2; ++k) selected.push_back(centroid);
    }
    if (selected.size() != s)
        throw std::runtime_error("factorization failed: root count mismatch");
    for (int i = 0; i < r_pos; ++i) selected.push_back(1.0);
    for (int i = 0; i < r_neg; ++i) selected.push_back(-1.0);

    // A0(z) = prod (z - z_i); conjugate symmetry makes coefficients real.
    std::vector<std::complex<double>> ac{1.0};
    for (const auto& z : selected) {
        std::vector<std::complex<double>> next(ac.size() + 1, 0.0);
        for (std::size_t j = 0; j < ac.size(); ++j) {
            next[j + 1] += ac[j];
            next[j] -= z * ac[j];
        }
        ac = std::move(next);
    }
    std::vector<double> a(ac.size());
    for (std::size_t j = 0; j < ac.size(); ++j) a[j] = ac[j].real();

    // Scale so |A|^2 matches R on the circle; sample where R is largest.
    FejerFactor A{a};
    double best_ratio = 0.0, best_R = -1.0;
    for (int i = 0; i <= 64; ++i) {
        const double theta = M_PI * i / 64.0;
        const double Rv = mu.R(std::cos(theta));
        const double Av = A.circle_sq(theta);
        if (Rv > best_R && Av > 0.0) {
            best_R = Rv;
            best_ratio = Rv / Av;
        }
    }
    if (best_ratio <= 0.0) throw std::runtime_error("factorization failed: degenerate scale");
    const double c = std::sqrt(best_ratio);
    double max_a = 0.0;
    std::size_t max_j = 0;
    for (std::size_t j = 0; j < a.size(); ++j) {
        if (std::abs(a[j]) > max_a) {
            max_a = std::abs(a[j]);
            max_j = j;
        }
    }
    const double sign = (a[max_j] >= 0.0) ? 1.0 : -1.0;
    for (double& v : a) v *= c * sign;
    return FejerFactor{a};
}

/// Oscillation nodes of omega against +-mu: interior double touch points of
/// omega^2 - R (each one node), plus the endpoints. An endpoint where omega
/// vanishes to order v and R to order r carries multiplicity v+1 when 2v = r
/// and v when 2v > r.
inline std::vector<OscNode> oscillation_nodes(const ChebPoly& omega, const Majorant& mu) {
    const ChebPoly diff = multiply(omega, omega) - mu.R;
    const ChebPoly ddiff = derivative(diff);
    const double scale = diff.max_abs_coeff();

    const ChebPoly d2diff = derivative(ddiff);

    // High-order zeros of diff at the endpoints scatter eigenvalue-based
    // roots into the interior; divide them out before locating touch points.
    ChebPoly g = diff;
    for (double e : {1.0, -1.0}) {
        const int k = detail::vanishing_order(g, e);
        for (int i = 0; i < k; ++i) g = divide_linear(g, e);
    }

    // Interior touch points are (at least) double roots of omega^2 - R and
    // simple roots of its derivative: polish every candidate on the
    // derivative, then dedupe and keep genuine touches.
    std::vector<double> candidates;
    for (const auto& rm : roots(g)) {
        if (std::abs(rm.x) >= 1.0 - 1e-9) continue;  // endpoints handled below
        double x = rm.x;
        for (int it = 0; it < 50; ++it) {
            const double h = d2diff(x);
            if (h == 0.0) break;
            const double step = ddiff(x) / h;
            x -= step;
            if (std::abs(step) < 1e-15) break;
        }
        if (std::abs(x - rm.x) > 1e-5) x = rm.x;  // polish wandered off
        if (std::abs(x) >= 1.0 - 1e-9) continue;
        if (std::abs(diff(x)) > 1e-7 * scale) continue;  // near-touch, not a node
        candidates.push_back(x);
    }
    std::sort(candidates.begin(), candidates.end(), std::greater<double>());
    std::vector<OscNode> nodes;
    for (double x : candidates) {
        if (!nodes.empty() &&
            std::abs(nodes.back().x - x) <= 1e-7 * (1.0 + std::abs(x)))
            continue;
        const double w = omega(x);
        nodes.push_back({x, (w >= 0.0) ? 1 : -1, 1});
    }

    for (double e : {1.0, -1.0}) {
        const int r = mu.boundary_order(e);
        if (r == 0) {
            const double w = omega(e);
            const double m = mu.mu(e);
            if (std::abs(std::abs(w) - m) <= 1e-8 * std::max(1.0, m))
                nodes.push_back({e, (w >= 0.0) ? 1 : -1, 1});
        } else {
            const int v = detail::vanishing_order(omega, e);
            if (2 * v < r) throw std::runtime_error("not a snake");
            const int mult = (2 * v == r) ? v + 1 : v;
            if (mult > 0) nodes.push_back({e, 0, mult});
        }
    }
    std::sort(nodes.begin(), nodes.end(),
              [](const OscNode& a, const OscNode& b) { return a.x > b.x; });

    int total = 0;
    for (const auto& nd : nodes) total += nd.multiplicity;
    if (total != static_cast<int>(omega.degree()) + 1)
        throw std::runtime_error("not a snake");
    return nodes;
}

namespace detail {

/// Checks conditions (a) and (b) and fills degenerate-node signs from the
/// alternation pattern. Returns false when alternation fails.
inline bool validate_snake(Snake& s) {
    // (a) |omega| <= mu + tol on a dense grid
    auto xs = cheb_grid(4096);
    std::vector<double> w(xs.size()), r(xs.size());
    s.omega.eval_many(xs, w);
    s.mu.R.eval_many(xs, r);
    const double tol_a = 1e-8 * std::max(1.0, s.omega.max_abs_coeff());
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double m = r[i] > 0.0 ? std::sqrt(r[i]) : 0.0;
        if (std::abs(w[i]) > m + tol_a) return false;
    }
    // (b) alternation with multiplicity-counted index
    int idx = 0;
    for (auto& nd : s.nodes) {
        const double m = s.mu.mu(nd.x);
        const int want = (idx % 2 == 0) ? 1 : -1;
        if (m > 1e-9 * std::max(1.0, s.mu.R.max_abs_coeff())) {
            const double v = s.omega(nd.x);
            if (std::abs(v - want * m) > 1e-8 * std::max(1.0, m)) return false;
            nd.sign = want;
        } else {
            nd.sign = 0;
        }
        idx += nd.multiplicity;
    }
    return true;
}

}  // namespace detail

/// Snake for mu of degree N + s: omega = sum_i a_i T_{N+i} with the a_i from
/// the Fejer-Riesz factor, sign-normalized so omega = +mu at the largest
/// node where mu > 0.
inline Snake snake_construct(const Majorant& mu, std::size_t N) {
    FejerFactor A = fejer_riesz(mu);
    auto build = [&](const FejerFactor& F) {
        ChebPoly w = ChebPoly::constant(0.0);
        for (std::size_t i = 0; i < F.a.size(); ++i)
            w = w + ChebPoly::basis(N + i, F.a[i]);
        return w;
    };
    ChebPoly omega = build(A);
    Snake s{omega, mu, oscillation_nodes(omega, mu), N, A};
    if (!detail::validate_snake(s)) {
        // try the opposite sign before giving up
        for (double& v : s.factor.a) v = -v;
        s.omega = build(s.factor);
        s.nodes = oscillation_nodes(s.omega, mu);
        if (!detail::validate_snake(s))
            throw std::runtime_error("construction failed validation");
    }
    const int count = static_cast<int>(N + mu.s()) + 1;
    int total = 0;
    for (const auto& nd : s.nodes) total += nd.multiplicity;
    if (total != count) throw std::runtime_error("construction failed validation");
    return s;
}

/// Snake for mu1 * mu2 from the coefficient convolution of the two factors,
/// validated independently against the product majorant.
inline Snake product_snake(const Snake& s1, const Snake& s2) {
    const auto& a = s1.factor.a;
    const auto& b = s2.factor.a;
    std::vector<double> c(a.size() + b.size() - 1, 0.0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];

    Majorant mu{multiply(s1.mu.R, s2.mu.R),
                s1.mu.tag.empty() || s2.mu.tag.empty() ? std::string{}
                                                       : s1.mu.tag + "*" + s2.mu.tag};
    const std::size_t N = s1.base + s2.base;
    ChebPoly omega = ChebPoly::constant(0.0);
    for (std::size_t i = 0; i < c.size(); ++i) omega = omega + ChebPoly::basis(N + i, c[i]);
    Snake s{omega, mu, oscillation_nodes(omega, mu), N, FejerFactor{c}};
    if (!detail::validate_snake(s)) {
        for (double& v : s.factor.a) v = -v;
        omega = -omega;
        s.omega = omega;
        s.nodes = oscillation_nodes(omega, mu);
        if (!detail::validate_snake(s))
            throw std::runtime_error("construction failed validation");
    }
    return s;
}

}  // namespace snakeineq
