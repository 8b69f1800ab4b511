// Oracle and property tests for the scalar special functions.  Expected
// values are either exact identities or independently derived constants
// (finite differences, classical closed forms); nothing here is generated by
// the functions under test.

#include <catch2/catch_amalgamated.hpp>
#include <cmath>

#include "conmod/specfun.hpp"

using namespace conmod;

namespace {
// Centered finite difference used as a derivative oracle.
template <typename F>
double fd(F f, double x, double h = 1e-6) {
    return (f(x + h) - f(x - h)) / (2.0 * h);
}
}  // namespace

TEST_CASE("legendre matches explicit low-order polynomials", "[specfun]") {
    for (double x : {-0.9, -0.4, 0.0, 0.3, 0.77, 1.0}) {
        CHECK(legendre(0, x) == 1.0);
        CHECK(legendre(1, x) == x);
        CHECK_THAT(legendre(2, x), Catch::Matchers::WithinAbs(0.5 * (3 * x * x - 1), 1e-15));
        CHECK_THAT(legendre(3, x), Catch::Matchers::WithinAbs(0.5 * (5 * x * x * x - 3 * x), 1e-15));
        CHECK_THAT(legendre(5, x),
                   Catch::Matchers::WithinAbs((63 * std::pow(x, 5) - 70 * std::pow(x, 3) + 15 * x) / 8,
                                              1e-14));
    }
    // Endpoint and parity identities.
    for (int n : {1, 4, 9, 16, 33}) {
        CHECK_THAT(legendre(n, 1.0), Catch::Matchers::WithinAbs(1.0, 1e-13));
        CHECK_THAT(legendre(n, -1.0), Catch::Matchers::WithinAbs(n % 2 ? -1.0 : 1.0, 1e-13));
        CHECK_THAT(legendre(n, -0.37) - (n % 2 ? -1.0 : 1.0) * legendre(n, 0.37),
                   Catch::Matchers::WithinAbs(0.0, 1e-14));
    }
}

TEST_CASE("legendre_derivative agrees with finite differences", "[specfun]") {
    for (int n : {1, 2, 5, 12, 20}) {
        for (double x : {-0.8, -0.25, 0.1, 0.6, 0.95}) {
            double ref = fd([n](double t) { return legendre(n, t); }, x);
            CHECK_THAT(legendre_derivative(n, x), Catch::Matchers::WithinAbs(ref, 1e-7));
        }
        // Exact endpoint limits n(n+1)/2.
        double v = 0.5 * n * (n + 1);
        CHECK(legendre_derivative(n, 1.0) == v);
        CHECK(legendre_derivative(n, -1.0) == (n % 2 ? v : -v));
    }
}

TEST_CASE("integrated legendre shapes vanish at the endpoints", "[specfun][props]") {
    for (int n = 2; n <= 24; ++n) {
        CHECK_THAT(integrated_legendre(n, 1.0), Catch::Matchers::WithinAbs(0.0, 1e-13));
        CHECK_THAT(integrated_legendre(n, -1.0), Catch::Matchers::WithinAbs(0.0, 1e-13));
    }
    // phi_2(0) = (P_2(0) - P_0(0)) / sqrt(6) = -1.5/sqrt(6).
    CHECK_THAT(integrated_legendre(2, 0.0),
               Catch::Matchers::WithinAbs(-0.6123724356957945, 1e-15));
}

TEST_CASE("integrated legendre derivative is consistent", "[specfun]") {
    for (int n : {2, 3, 7, 15}) {
        for (double x : {-0.7, 0.0, 0.41, 0.9}) {
            double ref = fd([n](double t) { return integrated_legendre(n, t); }, x);
            CHECK_THAT(integrated_legendre_derivative(n, x), Catch::Matchers::WithinAbs(ref, 1e-8));
        }
    }
    // Batch evaluation matches the scalar entry points.
    std::vector<double> val, der;
    integrated_legendre_all(9, 0.37, val, der);
    REQUIRE(val.size() == 8);
    for (int n = 2; n <= 9; ++n) {
        CHECK_THAT(val[n - 2], Catch::Matchers::WithinAbs(integrated_legendre(n, 0.37), 1e-15));
        CHECK_THAT(der[n - 2],
                   Catch::Matchers::WithinAbs(integrated_legendre_derivative(n, 0.37), 1e-15));
    }
}

TEST_CASE("integrated legendre derivatives are orthonormal", "[specfun][props]") {
    QuadratureRule q = gauss_rule(26);
    for (int i = 2; i <= 20; ++i) {
        for (int j = i; j <= 20; ++j) {
            double s = 0.0;
            for (std::size_t k = 0; k < q.nodes.size(); ++k)
                s += q.weights[k] * integrated_legendre_derivative(i, q.nodes[k]) *
                     integrated_legendre_derivative(j, q.nodes[k]);
            CHECK_THAT(s, Catch::Matchers::WithinAbs(i == j ? 1.0 : 0.0, 1e-13));
        }
    }
}

TEST_CASE("gauss rules have exact moments and canonical structure", "[specfun][props]") {
    for (int n : {1, 2, 3, 5, 8, 13, 21, 26, 40, 64}) {
        QuadratureRule q = gauss_rule(n);
        REQUIRE(q.nodes.size() == static_cast<std::size_t>(n));
        double wsum = 0.0;
        for (int i = 0; i < n; ++i) {
            wsum += q.weights[i];
            CHECK(q.weights[i] > 0.0);
            if (i) CHECK(q.nodes[i] > q.nodes[i - 1]);
            // Symmetry about the origin.
            CHECK_THAT(q.nodes[i] + q.nodes[n - 1 - i], Catch::Matchers::WithinAbs(0.0, 1e-15));
        }
        CHECK_THAT(wsum, Catch::Matchers::WithinAbs(2.0, 1e-14));
        // Exactness on monomials up to degree 2n-1.
        for (int k = 0; k <= 2 * n - 1; ++k) {
            double s = 0.0;
            for (int i = 0; i < n; ++i) s += q.weights[i] * std::pow(q.nodes[i], k);
            double exact = (k % 2 == 0) ? 2.0 / (k + 1) : 0.0;
            CHECK_THAT(s, Catch::Matchers::WithinAbs(exact, 2e-14));
        }
    }
    CHECK_THROWS_AS(gauss_rule(0), std::domain_error);
    CHECK_THROWS_AS(gauss_rule(65), std::domain_error);
}

TEST_CASE("elliptic integrals via AGM match the hypergeometric series", "[specfun]") {
    for (double r : {0.05, 0.2, 0.45, 0.7, 0.9, 0.95}) {
        EllipticPair e = elliptic_k(r);
        double series = 0.5 * pi * gauss_hypergeometric(0.5, 0.5, 1.0, r * r);
        CHECK_THAT(e.k, Catch::Matchers::WithinRel(series, 1e-12));
        double series_p = 0.5 * pi * gauss_hypergeometric(0.5, 0.5, 1.0, 1.0 - r * r);
        CHECK_THAT(e.k_prime, Catch::Matchers::WithinRel(series_p, 1e-12));
    }
    // Lemniscatic point: K(1/sqrt 2) = Gamma(1/4)^2 / (4 sqrt(pi)).
    EllipticPair e = elliptic_k(std::sqrt(0.5));
    CHECK_THAT(e.k, Catch::Matchers::WithinRel(1.8540746773013719, 1e-14));
    CHECK_THAT(e.k_prime, Catch::Matchers::WithinRel(e.k, 1e-13));
    CHECK_THROWS_AS(elliptic_k(0.0), std::domain_error);
    CHECK_THROWS_AS(elliptic_k(1.0), std::domain_error);
}

TEST_CASE("gauss_hypergeometric reproduces classical closed forms", "[specfun]") {
    CHECK(gauss_hypergeometric(0.3, 0.8, 1.1, 0.0) == 1.0);
    for (double z : {0.1, 0.3, 0.7}) {
        // Geometric series and its derivative.
        CHECK_THAT(gauss_hypergeometric(1.0, 1.0, 1.0, z),
                   Catch::Matchers::WithinRel(1.0 / (1.0 - z), 1e-14));
        CHECK_THAT(gauss_hypergeometric(1.0, 2.0, 1.0, z),
                   Catch::Matchers::WithinRel(1.0 / ((1.0 - z) * (1.0 - z)), 1e-14));
        // -log(1-z)/z.
        CHECK_THAT(gauss_hypergeometric(1.0, 1.0, 2.0, z),
                   Catch::Matchers::WithinRel(-std::log1p(-z) / z, 1e-14));
    }
    CHECK_THROWS_AS(gauss_hypergeometric(0.5, 0.5, 1.0, 1.0), std::domain_error);
    CHECK_THROWS_AS(gauss_hypergeometric(0.5, 0.5, -2.0, 0.5), std::domain_error);
    // Arguments too close to the z=1 singularity must fail loudly, not return
    // a truncated sum.
    CHECK_THROWS_AS(gauss_hypergeometric(0.5, 0.5, 1.0, 1.0 - 1e-9), std::runtime_error);
}

TEST_CASE("digamma and beta agree with classical values", "[specfun]") {
    CHECK_THAT(detail::digamma(1.0), Catch::Matchers::WithinAbs(-0.5772156649015329, 1e-14));
    CHECK_THAT(detail::digamma(2.0), Catch::Matchers::WithinAbs(1.0 - 0.5772156649015329, 1e-14));
    CHECK_THAT(detail::digamma(0.5), Catch::Matchers::WithinAbs(-1.9635100260214235, 1e-13));

    CHECK_THAT(beta_function(1.0, 1.0), Catch::Matchers::WithinRel(1.0, 1e-14));
    CHECK_THAT(beta_function(2.0, 3.0), Catch::Matchers::WithinRel(1.0 / 12.0, 1e-13));
    CHECK_THAT(beta_function(0.5, 0.5), Catch::Matchers::WithinRel(pi, 1e-13));
    CHECK_THAT(beta_function(1.0 / 3.0, 2.0 / 3.0),
               Catch::Matchers::WithinRel(3.6275987284684357, 1e-13));
    // Recurrence B(x+1, y) = B(x, y) x/(x+y).
    for (double x : {0.3, 1.7}) {
        for (double y : {0.45, 2.2}) {
            CHECK_THAT(beta_function(x + 1.0, y),
                       Catch::Matchers::WithinRel(beta_function(x, y) * x / (x + y), 1e-13));
        }
    }
}

TEST_CASE("mu matches the elliptic-integral form at a = 1/2", "[specfun]") {
    // mu_{1/2}(r) = (pi/2) K'(r)/K(r); the mu path goes through the series and
    // the logarithmic z->1 expansion, the right side through the AGM.
    for (double r : {0.02, 0.15, 0.5, 0.70710678118654752, 0.85, 0.99}) {
        EllipticPair e = elliptic_k(r);
        CHECK_THAT(mu(0.5, r), Catch::Matchers::WithinRel(0.5 * pi * e.k_prime / e.k, 1e-12));
    }
    CHECK_THAT(mu(0.5, std::sqrt(0.5)), Catch::Matchers::WithinRel(0.5 * pi, 1e-13));
    // mu(r) mu(r') = pi^2/4.
    for (double r : {0.1, 0.3, 0.6, 0.9}) {
        double rp = std::sqrt(1.0 - r * r);
        CHECK_THAT(mu(0.5, r) * mu(0.5, rp), Catch::Matchers::WithinRel(pi * pi / 4.0, 1e-12));
    }
}

TEST_CASE("mu is strictly decreasing", "[specfun][props]") {
    for (double a : {0.25, 0.5, 0.75}) {
        double prev = mu(a, 0.01);
        for (double r = 0.05; r < 1.0 - 1e-9; r += 0.05) {
            double m = mu(a, r);
            CHECK(m < prev);
            prev = m;
        }
    }
}

TEST_CASE("mu_inverse round-trips", "[specfun][props]") {
    // Near r = 1 the derivative of mu_a explodes, so adjacent doubles can
    // straddle the requested value by far more than 1e-12 (and for small
    // enough y no double satisfies mu_a(r) <= y at all).  The check is
    // therefore representability-aware: the inverse must land within the
    // one-ulp jump of mu_a at the returned point, or on the largest double
    // below 1 when even that is out of reach.
    const double top = std::nextafter(1.0, 0.0);
    for (double a : {0.25, 0.5, 0.75}) {
        for (double y : {0.2, 0.35, 0.6, 1.0, 1.7, 3.0, 4.5, 6.0}) {
            double r = mu_inverse(a, y);
            REQUIRE(r > 0.0);
            REQUIRE(r < 1.0);
            if (y < mu(a, top)) {
                CHECK(r == top);  // root below double resolution: best clamp
                continue;
            }
            double got = mu(a, r);
            double jump = std::abs(mu(a, std::nextafter(r, 0.0)) - got);
            if (std::nextafter(r, 1.0) < 1.0)
                jump = std::max(jump, std::abs(mu(a, std::nextafter(r, 1.0)) - got));
            double tol = std::max(1e-12 * std::max(1.0, y), 2.0 * jump);
            CHECK_THAT(got, Catch::Matchers::WithinAbs(y, tol));
        }
        for (double r : {0.05, 0.2, 0.5, 0.8, 0.95}) {
            CHECK_THAT(mu_inverse(a, mu(a, r)), Catch::Matchers::WithinAbs(r, 1e-10));
        }
    }
}

TEST_CASE("tau reproduces the Teichmueller normalization", "[specfun]") {
    // tau(1) = pi / mu(1/sqrt 2) = 2 exactly.
    CHECK_THAT(tau(1.0), Catch::Matchers::WithinRel(2.0, 1e-13));
    // Capacity decreases as the plates [-1,0] and [t,inf) separate.
    double prev = tau(0.1);
    for (double t : {0.5, 1.0, 2.0, 8.0}) {
        double v = tau(t);
        CHECK(v < prev);
        prev = v;
    }
    CHECK_THROWS_AS(tau(0.0), std::domain_error);
}
