#include "schmidt/theory.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace schmidt::theory {

namespace {

constexpr double pi = std::numbers::pi;
constexpr double half_pi = std::numbers::pi / 2.0;

void require_ratio(double w) {
    if (!(w > 0.0 && w <= 1.0)) {
        throw std::domain_error("ratio w must lie in (0, 1], got " + std::to_string(w));
    }
}

void require_unit_interval(double x) {
    if (!(x >= 0.0 && x <= 1.0)) {
        throw std::domain_error("x must lie in [0, 1], got " + std::to_string(x));
    }
}

double simpson_step(const std::function<double(double)>& g, double lo, double hi, double f_lo, double f_mid,
                    double f_hi, double whole, double tol, int depth) {
    const double mid = 0.5 * (lo + hi);
    const double left_mid = 0.5 * (lo + mid);
    const double right_mid = 0.5 * (mid + hi);
    const double f_lm = g(left_mid);
    const double f_rm = g(right_mid);
    const double left = (mid - lo) / 6.0 * (f_lo + 4.0 * f_lm + f_mid);
    const double right = (hi - mid) / 6.0 * (f_mid + 4.0 * f_rm + f_hi);
    const double delta = left + right - whole;
    if (depth <= 0 || std::abs(delta) <= 15.0 * tol) {
        return left + right + delta / 15.0;
    }
    return simpson_step(g, lo, mid, f_lo, f_lm, f_mid, left, 0.5 * tol, depth - 1) +
           simpson_step(g, mid, hi, f_mid, f_rm, f_hi, right, 0.5 * tol, depth - 1);
}

// Solves (pi/2) x = phi - sin(4 phi)/4 on [0, pi/2].
double phi_small_w(double x) {
    if (x <= 0.0) return 0.0;
    if (x >= 1.0) return half_pi;
    const double target = half_pi * x;
    double lo = 0.0;
    double hi = half_pi;
    for (int iter = 0; iter < 64 && hi - lo > 1e-15; ++iter) {
        const double mid = 0.5 * (lo + hi);
        if (mid - std::sin(4.0 * mid) / 4.0 < target) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

}  // namespace

MPParams mp_params(double w) {
    require_ratio(w);
    const double s = std::sqrt(w);
    return {(1.0 - s) * (1.0 - s), (1.0 + s) * (1.0 + s), w};
}

double mp_density(double tau, double w) {
    const auto [a, b, ratio] = mp_params(w);
    if (tau < a || tau > b || tau <= 0.0) return 0.0;
    return std::sqrt((tau - a) * (b - tau)) / (2.0 * pi * ratio * tau);
}

double x_of_phi(double phi, double w) {
    require_ratio(w);
    const double s = std::sqrt(w);
    double t = (1.0 + w) / (2.0 * w) * phi - std::sin(2.0 * phi) / (2.0 * s);
    if (w < 1.0) {
        const auto [a, b, ratio] = mp_params(w);
        // atan(sqrt(a/b) tan phi) in two-argument form: continuous up to phi = pi/2.
        t -= (1.0 - w) / (2.0 * w) * std::atan2(std::sqrt(a) * std::sin(phi), std::sqrt(b) * std::cos(phi));
    }
    return t / half_pi;
}

double dx_dphi(double phi, double w) {
    require_ratio(w);
    const double s = std::sqrt(w);
    double t = (1.0 + w) / (2.0 * w) - std::cos(2.0 * phi) / s;
    if (w < 1.0) {
        const double k = (1.0 - s) / (1.0 + s);
        const double c = std::cos(phi);
        const double sn = std::sin(phi);
        t -= (1.0 - w) / (2.0 * w) * k / (c * c + k * k * sn * sn);
    }
    return t / half_pi;
}

PhiSolution phi_of_x(double x, double w) {
    require_unit_interval(x);
    require_ratio(w);
    if (x == 0.0) return {x, 0.0, w};
    if (x == 1.0) return {x, half_pi, w};

    double lo = 0.0;
    double hi = half_pi;
    while (hi - lo > 1e-13) {
        const double mid = 0.5 * (lo + hi);
        if (x_of_phi(mid, w) < x) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    double phi = 0.5 * (lo + hi);
    double residual = std::abs(x_of_phi(phi, w) - x);
    for (int step = 0; step < 4 && residual > 0.0; ++step) {
        const double slope = dx_dphi(phi, w);
        if (!(slope > 0.0)) break;
        const double candidate = phi - (x_of_phi(phi, w) - x) / slope;
        if (!(candidate >= lo && candidate <= hi)) break;
        const double r = std::abs(x_of_phi(candidate, w) - x);
        if (r >= residual) break;
        phi = candidate;
        residual = r;
    }
    return {x, phi, w};
}

double f_of_phi(double phi, double w) {
    const auto [a, b, ratio] = mp_params(w);
    if (phi >= half_pi) return a;
    const double c = std::cos(phi);
    return a + (b - a) * c * c;
}

double f_of_x(double x, double w) {
    return f_of_phi(phi_of_x(x, w).phi, w);
}

double f_expansion_small_x(double x) {
    return 4.0 - 4.0 * std::pow(3.0 * pi * x / 4.0, 2.0 / 3.0);
}

double f_expansion_near_1(double x) {
    return pi * pi * (1.0 - x) * (1.0 - x) / 4.0;
}

double f_asymptotic_small_w(double x, double w) {
    require_unit_interval(x);
    require_ratio(w);
    return 1.0 + 2.0 * std::sqrt(w) * std::cos(2.0 * phi_small_w(x));
}

double adaptive_simpson(const std::function<double(double)>& g, double lo, double hi, double tol, int max_depth) {
    if (hi == lo) return 0.0;
    const double f_lo = g(lo);
    const double f_hi = g(hi);
    const double f_mid = g(0.5 * (lo + hi));
    const double whole = (hi - lo) / 6.0 * (f_lo + 4.0 * f_mid + f_hi);
    return simpson_step(g, lo, hi, f_lo, f_mid, f_hi, whole, tol, max_depth);
}

double eta(double x, double w) {
    require_unit_interval(x);
    require_ratio(w);
    constexpr double tol = 1e-10;
    const auto integrand = [w](double phi) { return f_of_phi(phi, w) * dx_dphi(phi, w); };
    const double phi0 = phi_of_x(x, w).phi;
    if (phi0 >= half_pi) return 0.0;
    const double tail = adaptive_simpson(integrand, phi0, half_pi, tol);
    const double total = adaptive_simpson(integrand, 0.0, half_pi, tol);
    return tail / total;
}

double eta_closed_form(double x, double w) {
    const double phi = phi_of_x(x, w).phi;
    return 1.0 - (2.0 * phi - 0.5 * std::sin(4.0 * phi)) / pi;
}

double eta_for_retained_count(double m, const BipartiteDims& dims) {
    if (!(m > 0.0)) throw std::domain_error("retained count must be positive");
    const double n = static_cast<double>(dims.n_a());
    if (m >= n) return 0.0;
    return eta(m / n, dims.ratio());
}

std::optional<double> width_estimate(double x, std::size_t n) {
    require_unit_interval(x);
    if (n == 0) throw std::domain_error("n must be positive");
    const double f = f_of_x(x, 1.0);
    if (f >= 4.0 - 1e-9) return std::nullopt;
    const double nd = static_cast<double>(n);
    return 4.0 / (nd * nd * std::sqrt(4.0 / f - 1.0));
}

double lambda_mean_theory(std::size_t i, const BipartiteDims& dims) {
    const double x = x_of_index(i, dims.n_a());
    return f_of_x(x, dims.ratio()) / static_cast<double>(dims.n_a());
}

double lambda_min_conjecture(std::size_t n) {
    if (n == 0) throw std::domain_error("n must be positive");
    const double nd = static_cast<double>(n);
    return 1.0 / (nd * nd * nd);
}

}  // namespace schmidt::theory
