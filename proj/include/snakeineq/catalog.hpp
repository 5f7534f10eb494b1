#pragma once

#include <map>
#include <string>
#include <vector>

#include "snakeineq/snake.hpp"

namespace snakeineq {

/// Parameters for the catalog of majorants. Defaults are the test
/// parameters; each case reads only the fields it needs.
struct CatalogParams {
    double a = 1.0;
    double b = 1.0;
    double c = 1.0;
    int ell = 2;
    int m = 0;
    std::vector<double> cs{1.0, 2.0};            // case 4* / 9*
    std::vector<double> as{1.0, 2.0};            // case 10*
    std::vector<double> bs{1.0, 1.0};            // case 10*
};

namespace detail {

inline ChebPoly pow_poly(const ChebPoly& p, int e) {
    ChebPoly r = ChebPoly::constant(1.0);
    for (int i = 0; i < e; ++i) r = multiply(r, p);
    return r;
}

}  // namespace detail

/// R for a catalog case; throws "catalog constraint violated" on bad params.
inline Majorant catalog_R(const std::string& case_id, const CatalogParams& p) {
    using detail::pow_poly;
    auto constraint = [](bool ok) {
        if (!ok) throw std::runtime_error("catalog constraint violated");
    };
    ChebPoly R;
    if (case_id == "unit") {
        R = ChebPoly::constant(1.0);
    } else if (case_id == "sqrt1mx2") {
        R = from_monomial({1.0, 0.0, -1.0});
    } else if (case_id == "case1") {
        constraint(p.b >= 0.0);
        R = from_monomial({1.0, p.b, p.a});
    } else if (case_id == "case2") {
        constraint(p.ell >= 0 && p.m >= 0 && p.ell + p.m > 0);
        R = multiply(pow_poly(from_monomial({1.0, 1.0}), p.ell),
                     pow_poly(from_monomial({1.0, 0.0, -1.0}), p.m));
    } else if (case_id == "case3") {
        R = from_monomial({1.0, 0.0, p.a * p.a - 1.0});
    } else if (case_id == "case4") {
        constraint(!p.cs.empty());
        R = ChebPoly::constant(1.0);
        for (double ci : p.cs) R = multiply(R, from_monomial({1.0, 0.0, ci * ci}));
    } else if (case_id == "case7") {
        R = multiply(from_monomial({1.0, 0.0, p.c * p.c}),
                     from_monomial({1.0, 0.0, p.a * p.a - 1.0}));
    } else if (case_id == "case8") {
        R = from_monomial({1.0, 0.0, -p.a * p.a, 0.0, p.a * p.a});
    } else if (case_id == "case9") {
        constraint(p.ell >= 0 && !p.cs.empty());
        R = pow_poly(from_monomial({1.0, 1.0}), p.ell);
        for (double ci : p.cs) R = multiply(R, from_monomial({1.0, 0.0, ci * ci}));
    } else if (case_id == "case10") {
        constraint(!p.as.empty() && p.as.size() == p.bs.size());
        R = ChebPoly::constant(1.0);
        for (std::size_t i = 0; i < p.as.size(); ++i) {
            constraint(p.bs[i] >= 0.0);
            R = multiply(R, from_monomial({1.0, p.bs[i], p.as[i]}));
        }
    } else if (case_id == "mu_m") {
        constraint(p.m >= 1);
        R = detail::pow_poly(from_monomial({1.0, 0.0, -1.0}), p.m);
    } else {
        throw std::runtime_error("catalog constraint violated: unknown case \"" + case_id + "\"");
    }
    Majorant mu{R, case_id};
    if (!mu.nonnegative()) throw std::runtime_error("catalog constraint violated");
    return mu;
}

/// Majorant plus its degree-n snake.
inline std::pair<Majorant, Snake> catalog_majorant(const std::string& case_id,
                                                   const CatalogParams& p,
                                                   std::size_t n) {
    Majorant mu = catalog_R(case_id, p);
    if (n < mu.s()) throw std::runtime_error("catalog constraint violated: n < deg R");
    Snake s = snake_construct(mu, n - mu.s());
    return {mu, s};
}

/// Minimal k for which the paper's table asserts the Duffin-Schaeffer
/// equality for each catalog case (the m-dependent entries use the params).
inline int catalog_min_k(const std::string& case_id, const CatalogParams& p) {
    static const std::map<std::string, int> fixed{
        {"unit", 1}, {"case3", 2}, {"case7", 2}, {"case8", 1},
        {"case4", 1}, {"case9", 1}, {"case1", 2}, {"sqrt1mx2", 2}};
    if (auto it = fixed.find(case_id); it != fixed.end()) return it->second;
    if (case_id == "case2") return p.m + 1;
    if (case_id == "case10") return static_cast<int>(p.as.size()) + 1;
    if (case_id == "mu_m") return p.m + 1;
    throw std::runtime_error("catalog constraint violated: unknown case \"" + case_id + "\"");
}

}  // namespace snakeineq
