#include <cmath>

#include "doctest.h"
#include "snakeineq/catalog.hpp"
#include "snakeineq/snake.hpp"

using namespace snakeineq;

namespace {

Majorant unit_majorant() { return catalog_R("unit", {}); }

// Trig-moment reconstruction of R's Chebyshev coefficients from |A|^2 on
// the circle; exact for a trig polynomial once the grid resolves degree s.
std::vector<double> moments_from_factor(const FejerFactor& A, std::size_t s) {
    const std::size_t M = 4096;
    std::vector<double> r(s + 1, 0.0);
    for (std::size_t k = 0; k < M; ++k) {
        const double theta = 2.0 * M_PI * static_cast<double>(k) / static_cast<double>(M);
        const double v = A.circle_sq(theta);
        for (std::size_t j = 0; j <= s; ++j)
            r[j] += v * std::cos(static_cast<double>(j) * theta);
    }
    for (std::size_t j = 0; j <= s; ++j)
        r[j] *= (j == 0 ? 1.0 : 2.0) / static_cast<double>(M);
    return r;
}

}  // namespace

TEST_CASE("fejer_riesz on the constant majorant") {
    const FejerFactor A = fejer_riesz(unit_majorant());
    REQUIRE(A.a.size() == 1);
    CHECK(A.a[0] == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("fejer_riesz of 1 - x^2 gives (1 - z^2)/2") {
    const FejerFactor A = fejer_riesz(catalog_R("sqrt1mx2", {}));
    REQUIRE(A.a.size() == 3);
    CHECK(A.a[0] == doctest::Approx(0.5).epsilon(1e-9));
    CHECK(std::abs(A.a[1]) <= 1e-9);
    CHECK(A.a[2] == doctest::Approx(-0.5).epsilon(1e-9));
    for (int k = 0; k <= 100; ++k) {
        const double theta = M_PI * k / 100.0;
        const double s2 = std::sin(theta) * std::sin(theta);
        CHECK(std::abs(A.circle_sq(theta) - s2) <= 1e-9);
    }
}

TEST_CASE("fejer_riesz residual for 1 + 3x^2") {
    CatalogParams p;
    p.a = 2.0;
    const Majorant mu = catalog_R("case3", p);
    const FejerFactor A = fejer_riesz(mu);
    for (int k = 0; k <= 200; ++k) {
        const double theta = M_PI * k / 200.0;
        const double c = std::cos(theta);
        CHECK(std::abs(A.circle_sq(theta) - (1.0 + 3.0 * c * c)) <= 1e-8 * 4.0);
    }
}

TEST_CASE("fejer_riesz rejects sign-indefinite R") {
    Majorant bad{from_monomial({0.0, 1.0}), ""};
    CHECK_THROWS_WITH(static_cast<void>(fejer_riesz(bad)), "majorant not nonnegative");
}

TEST_CASE("fejer_riesz round trip via cosine moments") {
    for (const char* id : {"case1", "case3", "case4", "case7", "case8", "case9", "case10"}) {
        const Majorant mu = catalog_R(id, {});
        const FejerFactor A = fejer_riesz(mu);
        const auto r = moments_from_factor(A, mu.s());
        const double scale = mu.R.max_abs_coeff();
        for (std::size_t j = 0; j <= mu.s(); ++j)
            CHECK(std::abs(r[j] - mu.R.coeff(j)) <= 1e-8 * scale);
    }
}

TEST_CASE("snake for the unit majorant is T_n") {
    const Snake s = snake_construct(unit_majorant(), 7);
    CHECK(s.omega.degree() == 7);
    CHECK(s.omega.coeff(7) == doctest::Approx(1.0).epsilon(1e-12));
    for (std::size_t j = 0; j < 7; ++j) CHECK(std::abs(s.omega.coeff(j)) <= 1e-12);
    REQUIRE(s.nodes.size() == 8);
    for (int i = 0; i <= 7; ++i) {
        CHECK(s.nodes[i].x == doctest::Approx(std::cos(M_PI * i / 7.0)).epsilon(1e-10));
        CHECK(s.nodes[i].sign == ((i % 2 == 0) ? 1 : -1));
        CHECK(s.nodes[i].multiplicity == 1);
    }
}

TEST_CASE("snake for sqrt(1-x^2) is (T_{n+1} - T_{n-1})/2") {
    const int n = 9;
    const Majorant mu = catalog_R("sqrt1mx2", {});
    const Snake s = snake_construct(mu, n - 1);  // degree (n-1) + 2 = n + 1
    const ChebPoly expect = 0.5 * (ChebPoly::basis(n + 1) - ChebPoly::basis(n - 1));
    REQUIRE(s.omega.degree() == static_cast<std::size_t>(n + 1));
    for (std::size_t j = 0; j <= s.omega.degree(); ++j)
        CHECK(std::abs(s.omega.coeff(j) - expect.coeff(j)) <= 1e-9);

    // identity with (x^2-1) T_n'(x)/n
    const ChebPoly alt = multiply(from_monomial({-1.0, 0.0, 1.0}),
                                  (1.0 / n) * derivative(ChebPoly::basis(n)));
    for (std::size_t j = 0; j <= s.omega.degree(); ++j)
        CHECK(std::abs(s.omega.coeff(j) - alt.coeff(j)) <= 1e-12);

    // nodes: cos((2j+1) pi / (2n)) interior plus simple boundary nodes
    REQUIRE(s.nodes.size() == static_cast<std::size_t>(n + 2));
    CHECK(s.nodes.front().x == doctest::Approx(1.0));
    CHECK(s.nodes.front().multiplicity == 1);
    CHECK(s.nodes.back().x == doctest::Approx(-1.0));
    CHECK(s.nodes.back().multiplicity == 1);
    for (int j = 0; j < n; ++j)
        CHECK(s.nodes[j + 1].x ==
              doctest::Approx(std::cos((2.0 * j + 1.0) * M_PI / (2.0 * n))).epsilon(1e-10));
}

TEST_CASE("snake for case 8* has the two-term form b T_{n+2} + (1-b) T_{n-2}") {
    const int n = 8;
    CatalogParams p;
    p.a = 1.0;
    const Majorant mu = catalog_R("case8", p);
    const Snake s = snake_construct(mu, n - 4);  // degree n
    REQUIRE(s.omega.degree() == static_cast<std::size_t>(n));
    const double b = s.omega.coeff(n);
    CHECK(b >= 0.0);
    CHECK(b <= 1.0);
    CHECK(s.omega.coeff(n - 4) == doctest::Approx(1.0 - b).epsilon(1e-9));
    for (std::size_t j = 0; j <= s.omega.degree(); ++j) {
        if (j != static_cast<std::size_t>(n) && j != static_cast<std::size_t>(n - 4))
            CHECK(std::abs(s.omega.coeff(j)) <= 1e-9);
    }
}

TEST_CASE("oscillation nodes of (x^2-1) T_n against 1 - x^2") {
    const int n = 6;
    const ChebPoly omega = multiply(from_monomial({-1.0, 0.0, 1.0}), ChebPoly::basis(n));
    CatalogParams p;
    p.m = 2;
    const Majorant mu = catalog_R("mu_m", p);
    const auto nodes = oscillation_nodes(omega, mu);
    REQUIRE(nodes.size() == static_cast<std::size_t>(n + 1));
    CHECK(nodes.front().multiplicity == 2);
    CHECK(nodes.back().multiplicity == 2);
    for (int i = 0; i <= n; ++i)
        CHECK(nodes[i].x == doctest::Approx(std::cos(M_PI * i / n)).epsilon(1e-9));
}

TEST_CASE("oscillation_nodes rejects a non-snake") {
    const Majorant mu = catalog_R("sqrt1mx2", {});
    CHECK_THROWS_WITH(static_cast<void>(oscillation_nodes(ChebPoly::basis(5), mu)),
                      "not a snake");
}

TEST_CASE("product with the unit snake shifts coefficients") {
    const Snake one = snake_construct(unit_majorant(), 4);
    const Snake s2 = snake_construct(catalog_R("case1", {}), 6);
    const Snake prod = product_snake(one, s2);
    CHECK(prod.base == one.base + s2.base);
    REQUIRE(prod.factor.a.size() == s2.factor.a.size());
    for (std::size_t i = 0; i < s2.factor.a.size(); ++i)
        CHECK(prod.factor.a[i] == doctest::Approx(s2.factor.a[i]).epsilon(1e-12));
}

TEST_CASE("product of two sqrt(1-x^2) snakes matches the 1-x^2 catalog snake") {
    const Majorant mu1 = catalog_R("sqrt1mx2", {});
    const Snake s1 = snake_construct(mu1, 5);
    const Snake s2 = snake_construct(mu1, 5);
    const Snake prod = product_snake(s1, s2);
    // coefficients (1/4, 0, -1/2, 0, 1/4) up to overall sign normalization
    REQUIRE(prod.factor.a.size() == 5);
    const double sgn = prod.factor.a[0] > 0 ? 1.0 : -1.0;
    CHECK(sgn * prod.factor.a[0] == doctest::Approx(0.25).epsilon(1e-9));
    CHECK(std::abs(prod.factor.a[1]) <= 1e-9);
    CHECK(sgn * prod.factor.a[2] == doctest::Approx(-0.5).epsilon(1e-9));
    CHECK(std::abs(prod.factor.a[3]) <= 1e-9);
    CHECK(sgn * prod.factor.a[4] == doctest::Approx(0.25).epsilon(1e-9));

    // multiply-based identity: omega = (x^2-1) T_{N+2} up to normalization
    const ChebPoly direct = multiply(from_monomial({-1.0, 0.0, 1.0}),
                                     ChebPoly::basis(prod.base + 2));
    for (std::size_t j = 0; j <= prod.omega.degree(); ++j)
        CHECK(std::abs(sgn * prod.omega.coeff(j) - direct.coeff(j)) <= 1e-9);
}

TEST_CASE("case 10* as a product of two case 1* factors") {
    CatalogParams f1, f2;
    f1.a = 1.0;
    f1.b = 1.0;
    f2.a = 2.0;
    f2.b = 1.0;
    const Snake s1 = snake_construct(catalog_R("case1", f1), 5);
    const Snake s2 = snake_construct(catalog_R("case1", f2), 5);
    const Snake prod = product_snake(s1, s2);

    CatalogParams p10;
    p10.as = {1.0, 2.0};
    p10.bs = {1.0, 1.0};
    const Majorant mu10 = catalog_R("case10", p10);
    const double scale = std::max(mu10.R.max_abs_coeff(), prod.mu.R.max_abs_coeff());
    for (std::size_t j = 0; j <= mu10.R.degree(); ++j)
        CHECK(std::abs(prod.mu.R.coeff(j) - mu10.R.coeff(j)) <= 1e-10 * scale);
    // prod validated internally as a Snake for mu1*mu2 during construction
    int total = 0;
    for (const auto& nd : prod.nodes) total += nd.multiplicity;
    CHECK(total == static_cast<int>(prod.omega.degree()) + 1);
}

TEST_CASE("catalog snakes validate at sample parameters") {
    const std::vector<std::string> ids{"unit",  "sqrt1mx2", "case1", "case2", "case3",
                                       "case4", "case7",    "case8", "case9", "case10"};
    for (const auto& id : ids) {
        CatalogParams p;
        if (id == "case2") p.ell = 2, p.m = 0;
        if (id == "case3" || id == "case7") p.a = 2.0;
        const Majorant mu = catalog_R(id, p);
        const std::size_t n = std::max<std::size_t>(mu.s(), 12);
        const auto [mu2, s] = catalog_majorant(id, p, n);
        CHECK(s.omega.degree() == n);
        int total = 0;
        for (const auto& nd : s.nodes) total += nd.multiplicity;
        CHECK(total == static_cast<int>(n) + 1);
    }
}

TEST_CASE("case 2* with (l,m)=(2,0): mu = 1+x, double node at -1") {
    CatalogParams p;
    p.ell = 2;
    p.m = 0;
    const auto [mu, s] = catalog_majorant("case2", p, 8);
    CHECK(mu.boundary_degenerate());
    CHECK(s.nodes.back().x == doctest::Approx(-1.0));
    CHECK(s.nodes.back().multiplicity == 2);
    CHECK(s.nodes.front().x == doctest::Approx(1.0));
    CHECK(s.nodes.front().multiplicity == 1);
}

TEST_CASE("case 2* with (l,m)=(1,1) validates") {
    CatalogParams p;
    p.ell = 1;
    p.m = 1;
    const auto [mu, s] = catalog_majorant("case2", p, 9);
    CHECK(mu.boundary_degenerate());
    int total = 0;
    for (const auto& nd : s.nodes) total += nd.multiplicity;
    CHECK(total == 10);
}

TEST_CASE("mu_m (m=2) snake equals (x^2-1) T_{n-2}") {
    CatalogParams p;
    p.m = 2;
    const auto [mu, s] = catalog_majorant("mu_m", p, 10);
    const ChebPoly direct = multiply(from_monomial({-1.0, 0.0, 1.0}), ChebPoly::basis(8));
    const double sgn = (s.omega.coeff(10) * direct.coeff(10) > 0) ? 1.0 : -1.0;
    for (std::size_t j = 0; j <= 10; ++j)
        CHECK(std::abs(sgn * s.omega.coeff(j) - direct.coeff(j)) <= 1e-9);
}

TEST_CASE("even R gives a parity-symmetric snake") {
    for (const char* id : {"case3", "case4", "case8"}) {
        const auto [mu, s] = catalog_majorant(id, {}, 11);
        const double scale = s.omega.max_abs_coeff();
        const std::size_t top = s.omega.degree();
        for (std::size_t j = 0; j <= top; ++j) {
            if ((top - j) % 2 == 1) CHECK(std::abs(s.omega.coeff(j)) <= 1e-10 * scale);
        }
    }
}

TEST_CASE("catalog rejects invalid parameters") {
    CatalogParams p;
    p.b = -1.0;
    CHECK_THROWS(static_cast<void>(catalog_R("case1", p)));
    CHECK_THROWS(static_cast<void>(catalog_R("nosuch", {})));
}
