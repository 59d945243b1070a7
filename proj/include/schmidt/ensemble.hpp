#pragma once

#include "schmidt/core.hpp"

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace schmidt {

// Per-index running mean and second central moment of sampled spectra.
class EnsembleStats {
public:
    explicit EnsembleStats(BipartiteDims dims);

    // Welford update with one sampled spectrum.
    void accumulate(const SchmidtSpectrum& spectrum);

    const BipartiteDims& dims() const noexcept { return dims_; }
    std::uint64_t count() const noexcept { return count_; }
    std::span<const double> means() const noexcept { return mean_; }
    std::span<const double> m2() const noexcept { return m2_; }

    // Sample standard deviation sqrt(M2 / (count - 1)) per index; needs count >= 2.
    std::vector<double> widths() const;
    // widths / sqrt(count).
    std::vector<double> standard_errors() const;

    // Pairwise (Chan et al.) combination of two disjoint sample sets.
    friend EnsembleStats merge(const EnsembleStats& lhs, const EnsembleStats& rhs);

private:
    BipartiteDims dims_;
    std::uint64_t count_ = 0;
    std::vector<double> mean_;
    std::vector<double> m2_;
};

EnsembleStats merge(const EnsembleStats& lhs, const EnsembleStats& rhs);

// Density of the unordered eigenvalues of a random reduced density matrix on
// the simplex sum(lambda) = 1:
//   Gamma(NK) / prod_j Gamma(K - j) Gamma(N - j + 1) * prod lambda^(K-N) * prod_{i<j} (lambda_i - lambda_j)^2.
// The prefactor is evaluated in log space. Supports N <= 8.
double joint_density(std::span<const double> lambdas, const BipartiteDims& dims);

inline constexpr std::size_t joint_density_max_order = 8;

struct ExactMean {
    std::size_t n_a;
    std::size_t n_b;
    std::size_t index;
    double value;
    bool conjecture;  // from <lambda_min> = 1/N^3 rather than a closed-form integral
};

// Known exact means: (2,2), (3,3), and the conjectured smallest eigenvalue
// 1/N^3 for symmetric cuts up to N = 6.
std::vector<ExactMean> exact_fixtures();

struct ComparisonRow {
    std::size_t index;
    double x;
    double mc_mean;
    double mc_stderr;
    double theory_mean;
    double relative_error;
};

struct ErrorSummary {
    double max;
    double median;
};

struct ComparisonReport {
    BipartiteDims dims;
    std::uint64_t samples;
    std::vector<ComparisonRow> rows;
    ErrorSummary all_indices;
    ErrorSummary without_last;  // equals all_indices when n_a == 1
};

// Monte Carlo means against f(x_i)/N for every index.
ComparisonReport compare(const EnsembleStats& stats);

// Ratio of each width to half the spacing of neighbouring Monte Carlo means,
// for indices 1..N-1. Diagnostic only.
std::vector<double> width_to_half_spacing(const EnsembleStats& stats);

double median(std::vector<double> values);

}  // namespace schmidt
