#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace schmidt {

using Complex = std::complex<double>;

// A bipartite cut of an (n_a * n_b)-dimensional Hilbert space with n_a <= n_b.
class BipartiteDims {
public:
    BipartiteDims(std::size_t n_a, std::size_t n_b);

    std::size_t n_a() const noexcept { return n_a_; }
    std::size_t n_b() const noexcept { return n_b_; }
    std::size_t total() const noexcept { return n_a_ * n_b_; }
    // w = n_a / n_b, in (0, 1].
    double ratio() const noexcept { return static_cast<double>(n_a_) / static_cast<double>(n_b_); }

    friend bool operator==(const BipartiteDims&, const BipartiteDims&) = default;

private:
    std::size_t n_a_;
    std::size_t n_b_;
};

// Orders the arguments so that the smaller subsystem comes first.
BipartiteDims make_dims(std::size_t n_a, std::size_t n_b);

// A unit-norm pure state on the full space.
class StateVector {
public:
    static constexpr double norm_tolerance = 1e-12;

    explicit StateVector(std::vector<Complex> amplitudes);

    std::span<const Complex> amplitudes() const noexcept { return amplitudes_; }
    std::size_t size() const noexcept { return amplitudes_.size(); }

private:
    std::vector<Complex> amplitudes_;
};

// Eigenvalues of a reduced density matrix: descending, nonnegative, unit trace.
class SchmidtSpectrum {
public:
    static constexpr double trace_tolerance = 1e-10;

    explicit SchmidtSpectrum(std::vector<double> values);

    std::span<const double> values() const noexcept { return values_; }
    std::size_t size() const noexcept { return values_.size(); }
    double operator[](std::size_t i) const { return values_[i]; }

private:
    std::vector<double> values_;
};

// Spectral edges of the limiting scaled-eigenvalue density.
struct MPParams {
    double a;
    double b;
    double w;
};

struct CurvePoint {
    double x;
    double value;
};

// Sampled theory curve; x must be strictly increasing.
class TheoryCurve {
public:
    explicit TheoryCurve(std::vector<CurvePoint> points);

    std::span<const CurvePoint> points() const noexcept { return points_; }
    std::size_t size() const noexcept { return points_.size(); }

private:
    std::vector<CurvePoint> points_;
};

// x = (i + 1/2) / n, the continuous coordinate of eigenvalue index i.
double x_of_index(std::size_t i, std::size_t n);

}  // namespace schmidt
