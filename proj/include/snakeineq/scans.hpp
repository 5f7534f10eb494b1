#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "snakeineq/chebpoly.hpp"
#include "snakeineq/parallel.hpp"

namespace snakeineq {

// ---------------------------------------------------------------------------
// tau(x, t) = (1 - xt)(p(x) - p(t))/(x - t), expanded per fixed t
// ---------------------------------------------------------------------------

/// Polynomial in x for fixed t: synthetic division removes the x = t
/// singularity exactly, then multiply by (1 - xt).
inline ChebPoly tau_poly(const ChebPoly& p, double t) {
    const ChebPoly shifted = p - ChebPoly::constant(p(t));
    const ChebPoly q = divide_linear(shifted, t);
    return multiply(ChebPoly::basis(0) - ChebPoly::basis(1, t), q);
}

inline ChebPoly tau_poly(std::size_t n, double t) {
    return tau_poly(ChebPoly::basis(n), t);
}

inline double tau(std::size_t n, double x, double t) { return tau_poly(n, t)(x); }

inline double tau_dx(std::size_t n, double x, double t) {
    return derivative(tau_poly(n, t))(x);
}

inline double tau_dxx(std::size_t n, double x, double t) {
    return derivative(tau_poly(n, t), 2)(x);
}

namespace detail {

/// tau'(1, t) = n^2 - (1+t)(1 - T_n(t))/(1-t) as a polynomial in t;
/// (1 - T_n)/(1 - t) is the exact quotient at the root t = 1.
inline ChebPoly tau_dx_at_one(std::size_t n) {
    const ChebPoly Q =
        divide_linear(ChebPoly::basis(n) - ChebPoly::constant(1.0), 1.0);
    return ChebPoly::constant(static_cast<double>(n * n)) -
           multiply(ChebPoly::basis(0) + ChebPoly::basis(1), Q);
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Endpoint bound |tau'(+-1, t)| <= n^2
// ---------------------------------------------------------------------------

struct EndpointCheck {
    bool pass = false;
    double worst_margin = 0.0;  // min over the grid of n^2 - |tau'(1,t)|
    double max_value = 0.0;
};

/// tau'(1, t) = n^2 - (1+t)(1 - T_n(t))/(1-t) is a polynomial in t; verify
/// the bound on a dense grid and equality n^2 where T_n(t) = 1.
inline EndpointCheck tau_endpoint_check(std::size_t n) {
    const ChebPoly bdry = detail::tau_dx_at_one(n);
    const double n2 = static_cast<double>(n * n);

    EndpointCheck out;
    out.worst_margin = n2;
    auto ts = uniform_grid(10001);
    std::vector<double> vals(ts.size());
    bdry.eval_many(ts, vals);
    for (double v : vals) {
        out.max_value = std::max(out.max_value, std::abs(v));
        out.worst_margin = std::min(out.worst_margin, n2 - std::abs(v));
    }
    // equality at T_n(t) = 1, i.e. t = cos(2 pi j / n)
    bool eq = true;
    for (std::size_t j = 0; 2 * j <= n; ++j) {
        const double t = std::cos(2.0 * M_PI * static_cast<double>(j) /
                                  static_cast<double>(n));
        if (std::abs(std::abs(bdry(t)) - n2) > 1e-8 * n2) eq = false;
    }
    out.pass = eq && out.worst_margin >= -1e-9 * n2;
    return out;
}

// ---------------------------------------------------------------------------
// Square scan of tau'
// ---------------------------------------------------------------------------

struct LocalExtremum {
    double x = 0.0;
    double t = 0.0;
    double value = 0.0;
};

struct TauScanResult {
    std::size_t n = 0;
    double global_max = 0.0;
    double argmax_x = 0.0;
    double argmax_t = 0.0;
    double boundary_max = 0.0;
    double interior_max = 0.0;  // over |x| <= cos(pi/n)
    double interior_argmax_x = 0.0;
    double interior_argmax_t = 0.0;
    std::vector<LocalExtremum> local_extrema;
};

/// Scans |tau'(x,t)| over the square. The boundary x = +-1 is handled by the
/// exact polynomial sup-norm in t; the interior by the grid plus a Newton
/// polish of the best slice on tau''.
inline TauScanResult tau_scan(std::size_t n, std::size_t grid_x, std::size_t grid_t) {
    TauScanResult out;
    out.n = n;
    const double xcap = (n >= 2) ? std::cos(M_PI / static_cast<double>(n)) : 0.0;

    {
        const ChebPoly bdry = detail::tau_dx_at_one(n);
        const SupnormResult r = supnorm(bdry, {-1.0, 1.0});
        out.boundary_max = r.value;  // tau'(-1, t) mirrors by symmetry
        out.global_max = r.value;
        out.argmax_x = 1.0;
        out.argmax_t = r.argmax;
        // the boundary maximum is attained at every t with T_n(t) = 1; when
        // the reported argmax ties one of those, report the canonical point
        for (std::size_t j = 0; 2 * j <= n; ++j) {
            const double t = std::cos(2.0 * M_PI * static_cast<double>(j) /
                                      static_cast<double>(n));
            if (std::abs(bdry(t)) >= r.value * (1.0 - 1e-12)) {
                out.argmax_t = t;
                break;
            }
        }
    }

    const auto xs = uniform_grid(grid_x);
    const auto ts = uniform_grid(grid_t);
    std::vector<double> slice_best(ts.size(), 0.0), slice_x(ts.size(), 0.0);
    parallel_for(ts.size(), [&](std::size_t j) {
        const ChebPoly dp = derivative(tau_poly(n, ts[j]));
        std::vector<double> v(xs.size());
        dp.eval_many(xs, v);
        for (std::size_t i = 0; i < xs.size(); ++i) {
            if (std::abs(xs[i]) > xcap) continue;
            if (std::abs(v[i]) > slice_best[j]) {
                slice_best[j] = std::abs(v[i]);
                slice_x[j] = xs[i];
            }
        }
    });

    // polish the best few slices: an interior extremum of tau' is a root of
    // tau'' in x; track grid-local maxima over t as reported extrema
    std::vector<std::size_t> order(ts.size());
    for (std::size_t j = 0; j < order.size(); ++j) order[j] = j;
    std::partial_sort(order.begin(), order.begin() + std::min<std::size_t>(16, order.size()),
                      order.end(),
                      [&](std::size_t a, std::size_t b) { return slice_best[a] > slice_best[b]; });
    for (std::size_t r = 0; r < std::min<std::size_t>(16, order.size()); ++r) {
        const std::size_t j = order[r];
        const ChebPoly p = tau_poly(n, ts[j]);
        const ChebPoly d1 = derivative(p);
        const ChebPoly d2 = derivative(d1);
        double x = slice_x[j];
        for (int it = 0; it < 40; ++it) {
            const double h = derivative(d2)(x);
            if (h == 0.0) break;
            const double step = d2(x) / h;
            x -= step;
            if (std::abs(step) < 1e-14) break;
        }
        if (std::abs(x - slice_x[j]) > 2.0 * (xs.size() > 1 ? xs[1] - xs[0] : 1.0) ||
            std::abs(x) > xcap)
            x = slice_x[j];
        const double v = std::abs(d1(x));
        if (v > out.interior_max) {
            out.interior_max = v;
            out.interior_argmax_x = x;
            out.interior_argmax_t = ts[j];
        }
    }
    for (std::size_t j = 1; j + 1 < ts.size(); ++j) {
        if (slice_best[j] > slice_best[j - 1] && slice_best[j] >= slice_best[j + 1])
            out.local_extrema.push_back({slice_x[j], ts[j], slice_best[j]});
    }
    out.interior_max = std::max(out.interior_max,
                                *std::max_element(slice_best.begin(), slice_best.end()));
    if (out.interior_max > out.global_max) {
        out.global_max = out.interior_max;
        out.argmax_x = out.interior_argmax_x;
        out.argmax_t = out.interior_argmax_t;
    }
    return out;
}

// ---------------------------------------------------------------------------
// psi identities
// ---------------------------------------------------------------------------

struct PsiResiduals {
    double psi1 = 0.0;
    double psi2 = 0.0;
};

/// With phi(x) = (1 - xt) omega(x)/(x - t) (a polynomial when t is a root of
/// omega), verifies
///   psi1 = (1-xt) omega''/2 - t omega' = phi' + (x-t) phi''/2
///   psi2 = (1-x^2) omega''/2 + (x-t)/(1-xt) omega'
///          - x(1-t^2)/((x-t)(1-xt)) omega
///        = phi' + (x-t)(1-x^2)/(2(1-xt)) phi''
/// as max relative residuals on a 2001-point grid (excluding |1-xt| < 1e-6).
inline PsiResiduals psi_identity_check(const ChebPoly& omega, double t) {
    if (std::abs(omega(t)) > 1e-8 * std::max(1.0, omega.max_abs_coeff()))
        throw std::runtime_error("t must be a node");
    const ChebPoly q = divide_linear(omega, t);  // omega/(x-t)
    const ChebPoly phi = multiply(ChebPoly::basis(0) - ChebPoly::basis(1, t), q);
    const ChebPoly phi1 = derivative(phi);
    const ChebPoly phi2 = derivative(phi1);
    const ChebPoly w1 = derivative(omega);
    const ChebPoly w2 = derivative(w1);

    double scale = 0.0;
    PsiResiduals out;
    for (const double x : uniform_grid(2001)) {
        const double oneminusxt = 1.0 - x * t;
        if (std::abs(oneminusxt) < 1e-6) continue;
        const double l1 = 0.5 * oneminusxt * w2(x) - t * w1(x);
        const double r1 = phi1(x) + 0.5 * (x - t) * phi2(x);
        const double l2 = 0.5 * (1.0 - x * x) * w2(x) +
                          ((x - t) * w1(x) - x * (1.0 - t * t) * q(x)) / oneminusxt;
        const double r2 = phi1(x) + 0.5 * (x - t) * (1.0 - x * x) / oneminusxt * phi2(x);
        out.psi1 = std::max(out.psi1, std::abs(l1 - r1));
        out.psi2 = std::max(out.psi2, std::abs(l2 - r2));
        scale = std::max({scale, std::abs(l1), std::abs(l2)});
    }
    if (scale > 0.0) {
        out.psi1 /= scale;
        out.psi2 /= scale;
    }
    return out;
}

// ---------------------------------------------------------------------------
// F / G bounds
// ---------------------------------------------------------------------------

inline double fg_F(std::size_t n, double x, double gamma) {
    const double n2s = static_cast<double>(n * n) * (1.0 - x * x);
    return 0.5 * std::sqrt(1.0 + (x + 2.0 * gamma) * (x + 2.0 * gamma) / n2s) +
           (1.0 - gamma * gamma) / gamma * 2.0 * x / n2s;
}

inline double fg_G(double gamma) {
    // F majorized with cos(pi/n) < 1 and n^2 sin^2(pi/n) >= 16 sin^2(pi/4) = 8
    return 0.5 * std::sqrt(1.0 + (1.0 + 2.0 * gamma) * (1.0 + 2.0 * gamma) / 8.0) +
           (1.0 - gamma * gamma) / gamma * 2.0 / 8.0;
}

struct FgCheck {
    bool pass = false;
    double worst_F = 0.0;  // max of F(x_n, gamma) over gamma in [1/2, 1]
    double worst_G = 0.0;  // max of G(gamma) over the same range
};

inline FgCheck fg_bound_check(std::size_t n) {
    if (n < 3) throw std::runtime_error("n >= 3 required");
    const double xn = std::cos(M_PI / static_cast<double>(n));
    FgCheck out;
    const std::size_t G = 10001;
    for (std::size_t i = 0; i < G; ++i) {
        const double g = 0.5 + 0.5 * static_cast<double>(i) / static_cast<double>(G - 1);
        out.worst_F = std::max(out.worst_F, fg_F(n, xn, g));
        out.worst_G = std::max(out.worst_G, fg_G(g));
    }
    out.pass = out.worst_F <= 1.0 && out.worst_G <= 1.0;
    return out;
}

// ---------------------------------------------------------------------------
// Domain decomposition
// ---------------------------------------------------------------------------

enum class DomainTag { D1, D2_1, D2_2, D2_3 };

inline const char* to_string(DomainTag d) {
    switch (d) {
        case DomainTag::D1: return "D1";
        case DomainTag::D2_1: return "D2_1";
        case DomainTag::D2_2: return "D2_2";
        default: return "D2_3";
    }
}

/// gamma = (x - t)/(1 - xt); boundaries go to the lower-index region.
inline DomainTag domain_classify(std::size_t n, double x, double t) {
    if (x < 0.0) throw std::runtime_error("use symmetry tau(x,t) = +-tau(-x,-t) first");
    const double denom = 1.0 - x * t;
    const double gamma = (std::abs(denom) < 1e-15) ? 0.0 : (x - t) / denom;
    if (gamma <= 0.5) return DomainTag::D1;
    const double t_split = std::cos(1.5 * M_PI / static_cast<double>(n));
    if (t >= t_split) return DomainTag::D2_1;
    if (x <= std::cos(M_PI / static_cast<double>(n))) return DomainTag::D2_2;
    return DomainTag::D2_3;
}

// ---------------------------------------------------------------------------
// Second-derivative checks
// ---------------------------------------------------------------------------

struct TauSecondDerivCheck {
    bool endpoint_nonneg = false;   // tau''(1,t) >= 0 for t <= cos(3pi/2n)
    bool d2_3_positive = false;     // tau''(x,t) > 0 on D2_3
    bool t_star_ok = false;         // explicit inequality at t = cos(3pi/2n)
    double worst_endpoint = 0.0;    // min of tau''(1,t) over the range
    double worst_d2_3 = 0.0;        // min of tau''(x,t) over the rectangle
    bool pass = false;
};

inline TauSecondDerivCheck tau_second_deriv_check(std::size_t n) {
    if (n < 3) throw std::runtime_error("n >= 3 required");
    TauSecondDerivCheck out;
    const double nd = static_cast<double>(n);
    const double t_split = std::cos(1.5 * M_PI / nd);
    const double xn = std::cos(M_PI / nd);

    // (i) tau''(1, t) >= 0 on [-1, cos(3pi/2n)]
    {
        double worst = std::numeric_limits<double>::infinity();
        const auto ts = uniform_grid(2001, -1.0, t_split);
        for (const double t : ts)
            worst = std::min(worst, derivative(tau_poly(n, t), 2)(1.0));
        out.worst_endpoint = worst;
        out.endpoint_nonneg = worst >= -1e-9 * nd * nd * nd * nd;
    }

    // (ii) tau''(x, t) > 0 on the D2_3 rectangle x in [cos(pi/n), 1]
    {
        double worst = std::numeric_limits<double>::infinity();
        const auto ts = uniform_grid(501, -1.0, t_split);
        const auto xs = uniform_grid(501, xn, 1.0);
        std::vector<double> mins(ts.size());
        parallel_for(ts.size(), [&](std::size_t j) {
            const ChebPoly d2 = derivative(tau_poly(n, ts[j]), 2);
            std::vector<double> v(xs.size());
            d2.eval_many(xs, v);
            mins[j] = *std::min_element(v.begin(), v.end());
        });
        for (double m : mins) worst = std::min(worst, m);
        out.worst_d2_3 = worst;
        out.d2_3_positive = worst > 0.0;
    }

    // (iii) explicit inequality at t = cos(3pi/2n), meaningful for n >= 7
    {
        const double u = 1.0 / std::tan(0.75 * M_PI / nd);
        const double u2 = u * u;
        const double lhs = nd * nd * (nd * nd - 1.0) / 3.0 - 2.0 * nd * nd * u2 +
                           2.0 / (1.0 + t_split) * u2 * u2;
        out.t_star_ok = (n < 7) || lhs > 0.0;
    }
    out.pass = out.endpoint_nonneg && out.d2_3_positive && out.t_star_ok;
    return out;
}

// ---------------------------------------------------------------------------
// Interlacing of zeros
// ---------------------------------------------------------------------------

struct InterlacingResult {
    bool pass = false;
    bool skipped = false;          // degenerate T_n(t) = +-1 input
    bool extra_root_found = false;  // tau(., t) has the root 1/t
    bool leading_negative = false;  // for t > 0
};

/// Zeros of tau(., t) and of T_n - T_n(t) interlace; tau swaps the root at t
/// for one at 1/t.
inline InterlacingResult interlacing_check(std::size_t n, double t) {
    InterlacingResult out;
    const ChebPoly Tn = ChebPoly::basis(n);
    const double c = Tn(t);
    if (std::abs(std::abs(c) - 1.0) < 1e-9) {
        out.skipped = true;  // double node: documented degenerate input
        out.pass = true;
        return out;
    }
    const ChebPoly omega_star = Tn - ChebPoly::constant(c);
    const ChebPoly taup = tau_poly(n, t);

    std::vector<double> tz, sz;
    for (const auto& r : roots(omega_star)) tz.push_back(r.x);
    const double window = (std::abs(t) >= 1e-3) ? 1.0 / std::abs(t) + 1.0 : 2.0;
    for (const auto& r : roots_in(taup, -window, window)) sz.push_back(r.x);
    std::sort(tz.begin(), tz.end());
    std::sort(sz.begin(), sz.end());
    if (tz.size() != n || sz.size() != n) return out;

    // ascending alternation; the swapped root 1/t sits below all zeros for
    // t < 0 and above them for t > 0
    const double slack = 1e-8;
    bool ok = true;
    if (t <= 0.0) {
        for (std::size_t i = 0; i < n; ++i) {
            if (sz[i] > tz[i] + slack) ok = false;
            if (i + 1 < n && tz[i] > sz[i + 1] + slack) ok = false;
        }
    } else {
        for (std::size_t i = 0; i < n; ++i) {
            if (tz[i] > sz[i] + slack) ok = false;
            if (i + 1 < n && sz[i] > tz[i + 1] + slack) ok = false;
        }
    }
    out.pass = ok;
    if (std::abs(t) >= 0.1) {
        const double inv = 1.0 / t;
        for (double s : sz)
            if (std::abs(s - inv) <= 1e-6 * (1.0 + std::abs(inv)))
                out.extra_root_found = true;
    } else {
        out.extra_root_found = true;  // 1/t outside any reasonable window
    }
    out.leading_negative = taup.coeff(taup.degree()) < 0.0;
    out.pass = out.pass && out.extra_root_found && (t <= 0.0 || out.leading_negative);
    return out;
}

// ---------------------------------------------------------------------------
// Proposition about critical points of tau'
// ---------------------------------------------------------------------------

struct PropDDReport {
    std::size_t n = 0;
    double worst_crit = 0.0;     // max |tau'| over part-(a) critical points
    std::size_t d2_3_roots = 0;  // tau'' roots found inside D2_3
    double global_max = 0.0;     // max |tau'| over the whole square
    bool part_a = false;
    bool part_b = false;
    bool pass = false;
};

/// For each t on a grid, finds the roots of tau''(., t) in x >= 0 (x < 0 is
/// covered by the (x,t) -> (-x,-t) symmetry), classifies them, and checks
/// |tau'| <= n^2 at critical points outside D2_3 and absence of roots inside.
inline PropDDReport verify_prop_DD(std::size_t n) {
    if (n < 3) throw std::runtime_error("n >= 3 required");
    PropDDReport out;
    out.n = n;
    const double n2 = static_cast<double>(n * n);

    const auto ts = uniform_grid(2001);
    std::vector<double> worst(ts.size(), 0.0);
    std::vector<std::size_t> bad(ts.size(), 0);
    parallel_for(ts.size(), [&](std::size_t j) {
        const double t = ts[j];
        const ChebPoly p = tau_poly(n, t);
        const ChebPoly d1 = derivative(p);
        const ChebPoly d2 = derivative(d1);
        if (d2.degree() == 0) return;  // tau'' degenerates to a constant
        for (const auto& r : roots_in(d2, 0.0, 1.0)) {
            const DomainTag tag = domain_classify(n, r.x, t);
            const double v = std::abs(d1(r.x));
            if (tag == DomainTag::D2_3) {
                ++bad[j];
            } else {
                worst[j] = std::max(worst[j], v);
            }
        }
    });
    for (std::size_t j = 0; j < ts.size(); ++j) {
        out.worst_crit = std::max(out.worst_crit, worst[j]);
        out.d2_3_roots += bad[j];
    }

    out.global_max =
        std::max(out.worst_crit, supnorm(detail::tau_dx_at_one(n), {-1.0, 1.0}).value);

    out.part_a = out.worst_crit <= n2 * (1.0 + 1e-9);
    out.part_b = out.d2_3_roots == 0;
    out.pass = out.part_a && out.part_b;
    return out;
}

}  // namespace snakeineq
