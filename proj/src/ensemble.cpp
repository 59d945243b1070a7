#include "schmidt/ensemble.hpp"

#include "schmidt/theory.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace schmidt {

EnsembleStats::EnsembleStats(BipartiteDims dims)
    : dims_(dims), mean_(dims.n_a(), 0.0), m2_(dims.n_a(), 0.0) {}

void EnsembleStats::accumulate(const SchmidtSpectrum& spectrum) {
    if (spectrum.size() != mean_.size()) {
        throw std::invalid_argument("spectrum length " + std::to_string(spectrum.size()) +
                                    " does not match n_a = " + std::to_string(mean_.size()));
    }
    ++count_;
    const double n = static_cast<double>(count_);
    for (std::size_t i = 0; i < mean_.size(); ++i) {
        const double delta = spectrum[i] - mean_[i];
        mean_[i] += delta / n;
        m2_[i] += delta * (spectrum[i] - mean_[i]);
    }
}

std::vector<double> EnsembleStats::widths() const {
    if (count_ < 2) throw std::domain_error("widths need at least two samples");
    std::vector<double> out(m2_.size());
    const double denom = static_cast<double>(count_ - 1);
    for (std::size_t i = 0; i < m2_.size(); ++i) out[i] = std::sqrt(std::max(0.0, m2_[i]) / denom);
    return out;
}

std::vector<double> EnsembleStats::standard_errors() const {
    auto out = widths();
    const double root_n = std::sqrt(static_cast<double>(count_));
    for (double& v : out) v /= root_n;
    return out;
}

EnsembleStats merge(const EnsembleStats& lhs, const EnsembleStats& rhs) {
    if (!(lhs.dims_ == rhs.dims_)) throw std::invalid_argument("cannot merge ensembles of different dims");
    if (rhs.count_ == 0) return lhs;
    if (lhs.count_ == 0) return rhs;
    EnsembleStats out(lhs.dims_);
    out.count_ = lhs.count_ + rhs.count_;
    const double na = static_cast<double>(lhs.count_);
    const double nb = static_cast<double>(rhs.count_);
    const double n = static_cast<double>(out.count_);
    for (std::size_t i = 0; i < out.mean_.size(); ++i) {
        const double delta = rhs.mean_[i] - lhs.mean_[i];
        out.mean_[i] = (na * lhs.mean_[i] + nb * rhs.mean_[i]) / n;
        out.m2_[i] = lhs.m2_[i] + rhs.m2_[i] + delta * delta * na * nb / n;
    }
    return out;
}

double joint_density(std::span<const double> lambdas, const BipartiteDims& dims) {
    const std::size_t n = dims.n_a();
    const std::size_t k = dims.n_b();
    if (n > joint_density_max_order) {
        throw std::domain_error("joint_density supports n_a <= " + std::to_string(joint_density_max_order));
    }
    if (lambdas.size() != n) throw std::invalid_argument("joint_density needs exactly n_a eigenvalues");
    double sum = 0.0;
    for (double v : lambdas) {
        if (!(v >= 0.0 && v <= 1.0)) throw std::invalid_argument("eigenvalue outside the simplex");
        sum += v;
    }
    if (std::abs(sum - 1.0) > 1e-9) throw std::invalid_argument("eigenvalues do not sum to one");

    double log_prefactor = std::lgamma(static_cast<double>(n * k));
    for (std::size_t j = 0; j < n; ++j) {
        log_prefactor -= std::lgamma(static_cast<double>(k - j)) + std::lgamma(static_cast<double>(n - j + 1));
    }
    double density = std::exp(log_prefactor);
    const double power = static_cast<double>(k - n);
    for (std::size_t i = 0; i < n; ++i) {
        density *= std::pow(lambdas[i], power);
        for (std::size_t j = i + 1; j < n; ++j) {
            const double gap = lambdas[i] - lambdas[j];
            density *= gap * gap;
        }
    }
    return density;
}

std::vector<ExactMean> exact_fixtures() {
    std::vector<ExactMean> table{
        {2, 2, 0, 7.0 / 8.0, false},
        {2, 2, 1, 1.0 / 8.0, false},
        {3, 3, 0, 313.0 / 432.0, false},
        {3, 3, 1, 103.0 / 432.0, false},
        {3, 3, 2, 1.0 / 27.0, false},
    };
    for (std::size_t n = 4; n <= 6; ++n) {
        table.push_back({n, n, n - 1, theory::lambda_min_conjecture(n), true});
    }
    return table;
}

double median(std::vector<double> values) {
    if (values.empty()) throw std::invalid_argument("median of an empty sequence");
    const auto mid = values.begin() + static_cast<std::ptrdiff_t>(values.size() / 2);
    std::nth_element(values.begin(), mid, values.end());
    if (values.size() % 2 == 1) return *mid;
    const double upper = *mid;
    const double lower = *std::max_element(values.begin(), mid);
    return 0.5 * (lower + upper);
}

namespace {

ErrorSummary summarize(const std::vector<ComparisonRow>& rows, std::size_t count) {
    std::vector<double> errs;
    errs.reserve(count);
    for (std::size_t i = 0; i < count; ++i) errs.push_back(rows[i].relative_error);
    return {*std::max_element(errs.begin(), errs.end()), median(errs)};
}

}  // namespace

ComparisonReport compare(const EnsembleStats& stats) {
    const auto stderrs = stats.standard_errors();
    const auto means = stats.means();
    const std::size_t n = stats.dims().n_a();
    ComparisonReport report{stats.dims(), stats.count(), {}, {}, {}};
    report.rows.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double th = theory::lambda_mean_theory(i, stats.dims());
        if (!(th > 0.0)) throw std::domain_error("theory mean is not positive at index " + std::to_string(i));
        report.rows.push_back({i, x_of_index(i, n), means[i], stderrs[i], th, std::abs(means[i] - th) / th});
    }
    report.all_indices = summarize(report.rows, n);
    report.without_last = n > 1 ? summarize(report.rows, n - 1) : report.all_indices;
    return report;
}

std::vector<double> width_to_half_spacing(const EnsembleStats& stats) {
    const auto widths = stats.widths();
    const auto means = stats.means();
    std::vector<double> out;
    for (std::size_t i = 1; i < means.size(); ++i) {
        const double half_gap = 0.5 * (means[i - 1] - means[i]);
        out.push_back(half_gap > 0.0 ? widths[i] / half_gap : 0.0);
    }
    return out;
}

}  // namespace schmidt
