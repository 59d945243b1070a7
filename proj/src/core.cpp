#include "schmidt/core.hpp"

#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>

namespace schmidt {

BipartiteDims::BipartiteDims(std::size_t n_a, std::size_t n_b) : n_a_(n_a), n_b_(n_b) {
    if (n_a == 0 || n_b == 0) {
        throw std::invalid_argument("bipartite dimensions must be positive");
    }
    if (n_a > n_b) {
        throw std::invalid_argument("bipartite dimensions require n_a <= n_b (use make_dims to reorder)");
    }
}

BipartiteDims make_dims(std::size_t n_a, std::size_t n_b) {
    if (n_a > n_b) std::swap(n_a, n_b);
    return BipartiteDims(n_a, n_b);
}

StateVector::StateVector(std::vector<Complex> amplitudes) : amplitudes_(std::move(amplitudes)) {
    if (amplitudes_.empty()) {
        throw std::invalid_argument("state vector must be non-empty");
    }
    double norm2 = 0.0;
    for (const auto& z : amplitudes_) norm2 += std::norm(z);
    if (std::abs(norm2 - 1.0) > norm_tolerance) {
        throw std::invalid_argument("state vector is not normalized: |psi|^2 = " + std::to_string(norm2));
    }
}

SchmidtSpectrum::SchmidtSpectrum(std::vector<double> values) : values_(std::move(values)) {
    if (values_.empty()) {
        throw std::invalid_argument("Schmidt spectrum must be non-empty");
    }
    double sum = 0.0;
    for (std::size_t i = 0; i < values_.size(); ++i) {
        const double v = values_[i];
        if (!(v >= 0.0 && v <= 1.0)) {
            throw std::invalid_argument("Schmidt value out of [0,1]: " + std::to_string(v));
        }
        if (i + 1 < values_.size() && v < values_[i + 1]) {
            throw std::invalid_argument("Schmidt spectrum is not sorted descending");
        }
        sum += v;
    }
    if (std::abs(sum - 1.0) > trace_tolerance) {
        throw std::invalid_argument("Schmidt spectrum does not sum to one: " + std::to_string(sum));
    }
}

TheoryCurve::TheoryCurve(std::vector<CurvePoint> points) : points_(std::move(points)) {
    for (std::size_t i = 1; i < points_.size(); ++i) {
        if (!(points_[i].x > points_[i - 1].x)) {
            throw std::invalid_argument("theory curve x values must be strictly increasing");
        }
    }
}

double x_of_index(std::size_t i, std::size_t n) {
    if (i >= n) {
        throw std::out_of_range("eigenvalue index " + std::to_string(i) + " out of range for n=" + std::to_string(n));
    }
    return (static_cast<double>(i) + 0.5) / static_cast<double>(n);
}

}  // namespace schmidt
