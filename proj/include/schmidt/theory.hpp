#pragma once

#include "schmidt/core.hpp"

#include <cstddef>
#include <functional>
#include <optional>

namespace schmidt::theory {

// Root of the implicit relation x(phi) for a given w.
struct PhiSolution {
    double x;
    double phi;
    double w;
};

// Spectral edges a = (1 - sqrt w)^2, b = (1 + sqrt w)^2 for w in (0, 1].
MPParams mp_params(double w);

// Limiting density of scaled eigenvalues tau = N * lambda,
//   p(tau) = sqrt((tau - a)(b - tau)) / (2 pi w tau)  on [a, b], else 0.
// Normalized to unit mass for every w in (0, 1].
double mp_density(double tau, double w);

// The implicit relation
//   (pi/2) x = (1+w)/(2w) phi - sin(2 phi)/(2 sqrt w) - (1-w)/(2w) atan(sqrt(a/b) tan phi),
// which reduces to (pi/2) x = phi - sin(2 phi)/2 at w = 1.
double x_of_phi(double phi, double w);

// dx/dphi of the relation above, term by term.
double dx_dphi(double phi, double w);

// Solves x_of_phi(phi, w) = x on [0, pi/2]: bisection, then guarded Newton polish.
PhiSolution phi_of_x(double x, double w);

// a + (b - a) cos^2 phi.
double f_of_phi(double phi, double w);

// Scaled mean spectrum f(x) = N <lambda_i> in the large-N limit.
double f_of_x(double x, double w);

// Symmetric-cut expansions of f: 4 - 4 (3 pi x / 4)^(2/3) near x = 0 and
// pi^2 (1 - x)^2 / 4 near x = 1.
double f_expansion_small_x(double x);
double f_expansion_near_1(double x);

// Small-w form 1 + 2 sqrt(w) cos(2 phi) with (pi/2) x = phi - sin(4 phi)/4.
double f_asymptotic_small_w(double x, double w);

// Fraction of the trace carried by eigenvalues beyond the retained fraction x,
// by adaptive Simpson quadrature of f(phi) dx/dphi over [phi(x), pi/2],
// normalized by the full integral so eta(0) = 1 and eta(1) = 0 exactly.
double eta(double x, double w);

// Closed form 1 - (2 phi - sin(4 phi)/2) / pi.
double eta_closed_form(double x, double w);

// eta for keeping the m largest eigenvalues; zero when m >= n_a.
double eta_for_retained_count(double m, const BipartiteDims& dims);

// Approximate width 4 / (n^2 sqrt(4/f(x) - 1)) of the i-th eigenvalue
// distribution for a symmetric cut. Empty when f(x) >= 4 - 1e-9.
std::optional<double> width_estimate(double x, std::size_t n);

// f(x_i, w) / n_a at x_i = (i + 1/2) / n_a.
double lambda_mean_theory(std::size_t i, const BipartiteDims& dims);

// Conjectured exact mean of the smallest eigenvalue for a symmetric cut, 1/n^3.
double lambda_min_conjecture(std::size_t n);

// Adaptive Simpson quadrature to absolute tolerance `tol`.
double adaptive_simpson(const std::function<double(double)>& g, double lo, double hi, double tol,
                        int max_depth = 50);

}  // namespace schmidt::theory
