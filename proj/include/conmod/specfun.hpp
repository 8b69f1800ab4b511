#pragma once

// Scalar special functions used throughout the solver: Legendre polynomials
// and their integrated (hierarchic) relatives, Gauss-Legendre rules, complete
// elliptic integrals via the arithmetic-geometric mean, the Gauss
// hypergeometric series, the Hersch-Pfluger style modulus function mu_a and
// its inverse, the Teichmueller capacity tau, and the Euler beta function.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace conmod {

inline constexpr double pi = 3.14159265358979323846264338327950288;

// ---------------------------------------------------------------------------
// Legendre polynomials

// P_n(x) by the three-term recurrence; stable on [-1, 1].
inline double legendre(int n, double x) {
    if (n < 0) throw std::domain_error("legendre: order must be >= 0");
    if (n == 0) return 1.0;
    if (n == 1) return x;
    double pm1 = 1.0, p = x;
    for (int k = 2; k <= n; ++k) {
        double pn = ((2 * k - 1) * x * p - (k - 1) * pm1) / k;
        pm1 = p;
        p = pn;
    }
    return p;
}

// P_n'(x).  Interior points use (1-x^2) P_n' = n (P_{n-1} - x P_n); the
// endpoints use the exact limits P_n'(+-1) = (+-1)^{n+1} n(n+1)/2.
inline double legendre_derivative(int n, double x) {
    if (n < 0) throw std::domain_error("legendre_derivative: order must be >= 0");
    if (n == 0) return 0.0;
    if (x == 1.0) return 0.5 * n * (n + 1);
    if (x == -1.0) {
        double v = 0.5 * n * (n + 1);
        return (n % 2 == 0) ? -v : v;
    }
    if (std::abs(x) > 1.0) throw std::domain_error("legendre_derivative: |x| must be <= 1");
    return n * (legendre(n - 1, x) - x * legendre(n, x)) / (1.0 - x * x);
}

// ---------------------------------------------------------------------------
// Integrated Legendre polynomials
//
// phi_n(x) = (P_n(x) - P_{n-2}(x)) / sqrt(2(2n-1)),  n >= 2.
// They vanish at x = +-1 and their derivatives are orthonormal:
// integral phi_i' phi_j' dx = delta_ij, since phi_n' = sqrt((2n-1)/2) P_{n-1}.

inline double integrated_legendre(int n, double x) {
    if (n < 2) throw std::domain_error("integrated_legendre: order must be >= 2");
    return (legendre(n, x) - legendre(n - 2, x)) / std::sqrt(2.0 * (2 * n - 1));
}

inline double integrated_legendre_derivative(int n, double x) {
    if (n < 2) throw std::domain_error("integrated_legendre_derivative: order must be >= 2");
    return std::sqrt((2 * n - 1) / 2.0) * legendre(n - 1, x);
}

// Evaluate phi_2..phi_p (and derivatives) at one point in a single recurrence
// sweep; used when building reference-element tables.  Outputs are indexed so
// that val[i] corresponds to phi_{i+2}.
inline void integrated_legendre_all(int p, double x, std::vector<double>& val,
                                    std::vector<double>& der) {
    if (p < 1) throw std::domain_error("integrated_legendre_all: p must be >= 1");
    val.assign(p >= 2 ? p - 1 : 0, 0.0);
    der.assign(p >= 2 ? p - 1 : 0, 0.0);
    double pm1 = 1.0, pm0 = x;  // P_{k-1}, P_k rolling pair
    for (int k = 2; k <= p; ++k) {
        double pk = ((2 * k - 1) * x * pm0 - (k - 1) * pm1) / k;
        val[k - 2] = (pk - pm1) / std::sqrt(2.0 * (2 * k - 1));
        der[k - 2] = std::sqrt((2 * k - 1) / 2.0) * pm0;
        pm1 = pm0;
        pm0 = pk;
    }
}

// ---------------------------------------------------------------------------
// Gauss-Legendre quadrature on [-1, 1]

struct QuadratureRule {
    std::vector<double> nodes;    // strictly increasing
    std::vector<double> weights;  // positive, summing to 2
};

// n-point rule, exact for polynomials of degree 2n-1.  Nodes are the roots of
// P_n found by Newton iteration from the Chebyshev-like initial guesses.
inline QuadratureRule gauss_rule(int n) {
    if (n < 1 || n > 64) throw std::domain_error("gauss_rule: need 1 <= n <= 64");
    QuadratureRule rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    for (int i = 0; i < n; ++i) {
        // i-th root in descending order; store ascending below.
        double x = std::cos(pi * (4.0 * i + 3.0) / (4.0 * n + 2.0));
        for (int it = 0; it < 100; ++it) {
            double f = legendre(n, x);
            double df = legendre_derivative(n, x);
            double dx = f / df;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        double df = legendre_derivative(n, x);
        rule.nodes[n - 1 - i] = x;
        rule.weights[n - 1 - i] = 2.0 / ((1.0 - x * x) * df * df);
    }
    // Symmetrize: the rule is invariant under x -> -x; averaging removes the
    // last bits of Newton noise and pins the middle node of odd rules to 0.
    for (int i = 0; i < n / 2; ++i) {
        int j = n - 1 - i;
        double t = 0.5 * (rule.nodes[j] - rule.nodes[i]);
        rule.nodes[i] = -t;
        rule.nodes[j] = t;
        double w = 0.5 * (rule.weights[i] + rule.weights[j]);
        rule.weights[i] = rule.weights[j] = w;
    }
    if (n % 2 == 1) rule.nodes[n / 2] = 0.0;
    return rule;
}

// ---------------------------------------------------------------------------
// Complete elliptic integrals via the arithmetic-geometric mean

inline double agm(double a, double b) {
    if (!(a > 0.0) || !(b > 0.0)) throw std::domain_error("agm: arguments must be positive");
    for (int it = 0; it < 64; ++it) {
        double an = 0.5 * (a + b);
        double bn = std::sqrt(a * b);
        a = an;
        b = bn;
        if (std::abs(a - b) <= 1e-16 * a) break;
    }
    return 0.5 * (a + b);
}

struct EllipticPair {
    double k;        // K(r)
    double k_prime;  // K(r') with r' = sqrt(1 - r^2)
};

// K(r) = pi / (2 agm(1, r')) for modulus r in (0, 1).
inline EllipticPair elliptic_k(double r) {
    if (!(r > 0.0) || !(r < 1.0)) throw std::domain_error("elliptic_k: need 0 < r < 1");
    double rp = std::sqrt((1.0 - r) * (1.0 + r));
    EllipticPair e;
    e.k = pi / (2.0 * agm(1.0, rp));
    e.k_prime = pi / (2.0 * agm(1.0, r));
    return e;
}

// ---------------------------------------------------------------------------
// Gauss hypergeometric function

namespace detail {

inline double lanczos_log_gamma(double x) {
    // Standard g = 7 coefficient set; relative error ~1e-15 on the positive axis.
    static const double cof[9] = {
        0.99999999999980993,  676.5203681218851,     -1259.1392167224028,
        771.32342877765313,   -176.61502916214059,   12.507343278686905,
        -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};
    if (!(x > 0.0)) throw std::domain_error("lanczos_log_gamma: argument must be positive");
    if (x < 0.5) {
        // Reflection keeps the series argument away from the poles.
        return std::log(pi / std::sin(pi * x)) - lanczos_log_gamma(1.0 - x);
    }
    double z = x - 1.0;
    double acc = cof[0];
    for (int i = 1; i < 9; ++i) acc += cof[i] / (z + i);
    double t = z + 7.5;
    return 0.5 * std::log(2.0 * pi) + (z + 0.5) * std::log(t) - t + std::log(acc);
}

// Raw power series sum_{n} (a)_n (b)_n / ((c)_n n!) z^n with a relative
// term tolerance; returns NaN if the term cap is exhausted first.
inline double hyp_series(double a, double b, double c, double z, double tol,
                         long max_terms) {
    double term = 1.0, sum = 1.0;
    for (long n = 0; n < max_terms; ++n) {
        term *= (a + n) * (b + n) / ((c + n) * (n + 1.0)) * z;
        sum += term;
        if (std::abs(term) <= tol * std::abs(sum)) return sum;
    }
    return std::numeric_limits<double>::quiet_NaN();
}

// Digamma for positive argument: shift upward, then the Bernoulli asymptotic
// series.  Good to ~1e-15 for x > 0.
inline double digamma(double x) {
    if (!(x > 0.0)) throw std::domain_error("digamma: argument must be positive");
    double acc = 0.0;
    while (x < 10.0) {
        acc -= 1.0 / x;
        x += 1.0;
    }
    double inv = 1.0 / x, inv2 = inv * inv;
    double s = std::log(x) - 0.5 * inv;
    // -sum B_{2n} / (2n x^{2n})
    s -= inv2 * (1.0 / 12 - inv2 * (1.0 / 120 - inv2 * (1.0 / 252 - inv2 * (1.0 / 240 - inv2 * (1.0 / 132 - inv2 * 691.0 / 32760)))));
    return acc + s;
}

// F(a, b; a+b; z) near z = 1 through the logarithmic connection formula
//
//   F(a,b;a+b;z) = G(a+b)/(G(a)G(b)) * sum_n ((a)_n (b)_n / (n!)^2)
//                  * (2 psi(n+1) - psi(a+n) - psi(b+n) - log(1-z)) (1-z)^n,
//
// which converges geometrically in (1-z).  The caller passes u = 1-z
// directly so that arguments exponentially close to 1 keep full precision.
// Only used internally; the public gauss_hypergeometric keeps the plain
// series semantics.
inline double hyp_log_near_one(double a, double b, double u) {
    if (!(u > 0.0) || u >= 1.0)
        throw std::domain_error("hyp_log_near_one: need 0 < 1-z < 1");
    double lu = std::log(u);
    double psi_a = digamma(a), psi_b = digamma(b);
    double psi_n1 = -0.57721566490153286060651209008240243;  // psi(1)
    double coeff = 1.0;                                      // (a)_n (b)_n / (n!)^2 u^n
    double sum = 0.0;
    for (long n = 0; n < 200000; ++n) {
        if (n > 0) {
            double nn = static_cast<double>(n);
            coeff *= (a + nn - 1.0) * (b + nn - 1.0) / (nn * nn) * u;
            psi_n1 += 1.0 / nn;
            psi_a += 1.0 / (a + nn - 1.0);
            psi_b += 1.0 / (b + nn - 1.0);
        }
        double term = coeff * (2.0 * psi_n1 - psi_a - psi_b - lu);
        sum += term;
        if (n > 2 && std::abs(term) <= 1e-17 * std::abs(sum)) break;
    }
    double lg = lanczos_log_gamma(a + b) - lanczos_log_gamma(a) - lanczos_log_gamma(b);
    return std::exp(lg) * sum;
}

}  // namespace detail

// Plain power series for F(a, b; c; z) on z in [0, 1).  Terms are summed
// until the relative contribution drops below 1e-16; if 20000 terms do not
// reach that, the argument is too close to the z = 1 singularity and the
// call fails loudly rather than returning a half-converged value.
inline double gauss_hypergeometric(double a, double b, double c, double z) {
    if (c <= 0.0 && c == std::floor(c))
        throw std::domain_error("gauss_hypergeometric: c must not be a nonpositive integer");
    if (!(z >= 0.0) || z >= 1.0)
        throw std::domain_error("gauss_hypergeometric: need 0 <= z < 1");
    double s = detail::hyp_series(a, b, c, z, 1e-16, 20000);
    if (std::isnan(s))
        throw std::runtime_error(
            "gauss_hypergeometric: series did not converge within 20000 terms "
            "(argument too close to 1); a=" + std::to_string(a) + " b=" + std::to_string(b) +
            " c=" + std::to_string(c) + " z=" + std::to_string(z));
    return s;
}

// ---------------------------------------------------------------------------
// Modulus function mu_a and friends
//
// mu_a(r) = pi / (2 sin(pi a)) * F(a, 1-a; 1; 1-r^2) / F(a, 1-a; 1; r^2).
// The classical Groetzsch mu is the case a = 1/2.

namespace detail {

// F(a, 1-a; 1; 1-u) given the complement u = 1-z, switching to the
// logarithmic z->1 expansion once the plain series would need too many
// terms.  Dispatching on the complement keeps full precision for arguments
// exponentially close to 1, which the public series cap cannot handle.
inline double hyp_f_complement(double a, double u) {
    if (u >= 1.0) return 1.0;  // z == 0 limit of either expansion
    if (u >= 0.4) return hyp_series(a, 1.0 - a, 1.0, 1.0 - u, 1e-16, 20000);
    return hyp_log_near_one(a, 1.0 - a, u);
}

}  // namespace detail

namespace detail {

// mu_a written in terms of the complements of both hypergeometric arguments:
// num_c = 1 - z_num = r^2 and den_c = 1 - z_den = r'^2.  Callers that know
// the complements exactly (e.g. r'^2 = t/(1+t)) avoid forming r at all, which
// keeps the value accurate even when r itself would round to 1.
inline double mu_from_complements(double a, double num_c, double den_c) {
    return pi / (2.0 * std::sin(pi * a)) * hyp_f_complement(a, num_c) /
           hyp_f_complement(a, den_c);
}

}  // namespace detail

inline double mu(double a, double r) {
    if (!(a > 0.0) || !(a < 1.0)) throw std::domain_error("mu: need 0 < a < 1");
    if (!(r > 0.0) || !(r < 1.0)) throw std::domain_error("mu: need 0 < r < 1");
    // 1 - r is exact for r in [1/2, 1), so both complements are formed
    // without cancellation.
    return detail::mu_from_complements(a, r * r, (1.0 - r) * (1.0 + r));
}

namespace detail {

// Safeguarded Newton iteration for a strictly increasing f with
// f(lo) < 0 < f(hi), derivative by centered difference with absolute step
// 1e-6 (callers work in logarithmic variables where f has O(1) slope).
template <typename F>
inline double solve_increasing(F&& f, double lo, double hi, double x0, double ftol) {
    if (f(lo) >= 0.0) return lo;
    if (f(hi) <= 0.0) return hi;
    double x = std::min(std::max(x0, lo), hi);
    double fx = f(x);
    for (int it = 0; it < 100; ++it) {
        if (std::abs(fx) <= ftol) break;
        if (fx < 0.0) lo = x; else hi = x;
        if (!(hi - lo > 1e-15 * std::max(1.0, std::abs(x)))) break;
        double xn = x;
        double df = (f(x + 1e-6) - f(x - 1e-6)) / 2e-6;
        if (df > 0.0) xn = x - fx / df;
        if (!(xn > lo) || !(xn < hi)) xn = 0.5 * (lo + hi);
        x = xn;
        fx = f(x);
    }
    return x;
}

}  // namespace detail

// Inverse of r -> mu_a(r).  mu_a decreases strictly from +inf to 0 and takes
// the value M = pi / (2 sin(pi a)) at r = 1/sqrt(2).  Each half is solved by
// safeguarded Newton in a logarithmic variable where the map is nearly
// affine:  s = ln r for y >= M (mu ~ D_a/2 - s) and t = ln r'^2 for y < M
// (mu ~ K_a / (D_a - t)), with D_a = 2 psi(1) - psi(a) - psi(1-a) and
// K_a = pi^2 / (2 sin^2(pi a)).  The large-r branch works on the exact
// complement q = r'^2 = e^t, so roots with 1 - r far below machine epsilon
// are still located; converting back to r is then the only rounding step,
// and the result is snapped to whichever neighbouring double best satisfies
// mu_a(r) = y.
inline double mu_inverse(double a, double y) {
    if (!(a > 0.0) || !(a < 1.0)) throw std::domain_error("mu_inverse: need 0 < a < 1");
    if (!(y > 0.0)) throw std::domain_error("mu_inverse: need y > 0");
    const double sa = std::sin(pi * a);
    const double big = pi / (2.0 * sa);
    const double da = 2.0 * detail::digamma(1.0) - detail::digamma(a) - detail::digamma(1.0 - a);
    const double ftol = 1e-14 * std::max(1.0, y);
    double r;
    if (y >= big) {
        // Root in (0, 1/sqrt(2)]; r = e^s underflows below the floor, where
        // the closest representable answer is the floor itself.
        auto f = [&](double s) {
            return y - detail::mu_from_complements(a, std::exp(2.0 * s), -std::expm1(2.0 * s));
        };
        const double s_floor = -640.0;
        double shi = 0.5 * std::log(0.5);
        double slo = std::max(s_floor, std::min(da / 2.0 - y - 3.0, shi - 1.0));
        while (slo > s_floor && f(slo) > 0.0) slo = std::max(s_floor, slo - 16.0);
        r = std::exp(detail::solve_increasing(f, slo, shi, da / 2.0 - y, ftol));
    } else {
        const double ka = pi * pi / (2.0 * sa * sa);
        auto f = [&](double t) {
            double q = std::exp(t);
            return detail::mu_from_complements(a, 1.0 - q, q) - y;
        };
        const double t_floor = std::log(1e-300);
        double thi = std::log(0.5);
        double t0 = da - ka / y;
        double tlo = std::max(t_floor, std::min(t0 - 5.0, thi - 1.0));
        while (tlo > t_floor && f(tlo) > 0.0) tlo = std::max(t_floor, tlo - 40.0);
        double q = std::exp(detail::solve_increasing(f, tlo, thi, t0, ftol));
        r = std::sqrt(1.0 - q);
        if (r >= 1.0) r = std::nextafter(1.0, 0.0);
    }
    // Snap to the representable double closest to the true root.
    double best = r, err = std::abs(mu(a, r) - y);
    for (double c : {std::nextafter(r, 0.0), std::nextafter(r, 1.0)}) {
        if (c > 0.0 && c < 1.0) {
            double e = std::abs(mu(a, c) - y);
            if (e < err) { best = c; err = e; }
        }
    }
    return best;
}

// Capacity of the Teichmueller ring: tau(t) = pi / mu_{1/2}(1 / sqrt(1 + t)).
// With r = 1/sqrt(1+t) the complements are r^2 = 1/(1+t) and
// r'^2 = t/(1+t), both exact in t, so small t costs no precision.
inline double tau(double t) {
    if (!(t > 0.0)) throw std::domain_error("tau: need t > 0");
    return pi / detail::mu_from_complements(0.5, 1.0 / (1.0 + t), t / (1.0 + t));
}

// ---------------------------------------------------------------------------
// Euler beta via the explicit Lanczos gamma approximation above

inline double beta_function(double x, double y) {
    if (!(x > 0.0) || !(y > 0.0)) throw std::domain_error("beta_function: arguments must be positive");
    return std::exp(detail::lanczos_log_gamma(x) + detail::lanczos_log_gamma(y) -
                    detail::lanczos_log_gamma(x + y));
}

}  // namespace conmod
