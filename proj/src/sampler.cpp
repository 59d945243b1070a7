#include "schmidt/sampler.hpp"

#include "schmidt/linalg.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <numbers>
#include <stdexcept>
#include <thread>
#include <vector>

namespace schmidt {

namespace {

constexpr std::uint64_t golden_gamma = 0x9E3779B97F4A7C15ULL;

constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

}  // namespace

CounterRng::CounterRng(std::uint64_t seed, std::uint64_t stream) noexcept
    : state_(mix64(mix64(seed) + golden_gamma * (stream + 1))) {}

std::uint64_t CounterRng::next() noexcept {
    state_ += golden_gamma;
    return mix64(state_);
}

double CounterRng::uniform_open0() noexcept {
    return static_cast<double>((next() >> 11) + 1) * 0x1.0p-53;
}

double CounterRng::uniform() noexcept {
    return static_cast<double>(next() >> 11) * 0x1.0p-53;
}

std::pair<double, double> CounterRng::gaussian_pair() noexcept {
    const double u1 = uniform_open0();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * std::numbers::pi * u2;
    return {r * std::cos(angle), r * std::sin(angle)};
}

SamplerConfig::SamplerConfig(BipartiteDims dims_, std::uint64_t sample_count_, std::uint64_t seed_)
    : dims(dims_), sample_count(sample_count_), seed(seed_) {
    if (sample_count == 0) throw std::invalid_argument("sample_count must be at least 1");
}

StateVector draw_state(const BipartiteDims& dims, CounterRng& rng) {
    std::vector<Complex> amplitudes(dims.total());
    for (;;) {
        double norm2 = 0.0;
        for (auto& z : amplitudes) {
            const auto [re, im] = rng.gaussian_pair();
            z = {re, im};
            norm2 += re * re + im * im;
        }
        const double norm = std::sqrt(norm2);
        if (norm < 1e-300) continue;
        for (auto& z : amplitudes) z /= norm;
        return StateVector(std::move(amplitudes));
    }
}

SchmidtSpectrum schmidt_spectrum(const StateVector& state, const BipartiteDims& dims) {
    if (state.size() != dims.total()) {
        throw std::invalid_argument("state length does not match n_a * n_b");
    }
    if (dims.n_a() == 1) return SchmidtSpectrum({1.0});
    const auto amps = state.amplitudes();
    linalg::ComplexMatrix c(dims.n_a(), dims.n_b(), std::vector<Complex>(amps.begin(), amps.end()));
    auto values = linalg::gram_spectrum(c);
    for (double& v : values) v = std::min(v, 1.0);
    return SchmidtSpectrum(std::move(values));
}

EnsembleStats sample_ensemble(const SamplerConfig& config, unsigned workers, const ProgressSink& progress) {
    const std::uint64_t total = config.sample_count;
    const std::uint64_t blocks = (total + sampler_block_size - 1) / sampler_block_size;
    if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
    workers = static_cast<unsigned>(std::min<std::uint64_t>(workers, blocks));

    std::vector<EnsembleStats> partial(blocks, EnsembleStats(config.dims));
    std::atomic<std::uint64_t> next_block{0};
    std::atomic<std::uint64_t> completed{0};
    std::mutex progress_mutex;
    std::exception_ptr failure;
    std::mutex failure_mutex;

    auto work = [&] {
        try {
            for (;;) {
                const std::uint64_t block = next_block.fetch_add(1);
                if (block >= blocks) return;
                const std::uint64_t begin = block * sampler_block_size;
                const std::uint64_t end = std::min(total, begin + sampler_block_size);
                EnsembleStats& acc = partial[block];
                for (std::uint64_t j = begin; j < end; ++j) {
                    CounterRng rng(config.seed, j);
                    acc.accumulate(schmidt_spectrum(draw_state(config.dims, rng), config.dims));
                }
                const std::uint64_t done = completed.fetch_add(end - begin) + (end - begin);
                if (progress) {
                    std::lock_guard lock(progress_mutex);
                    progress(done, total);
                }
            }
        } catch (...) {
            std::lock_guard lock(failure_mutex);
            if (!failure) failure = std::current_exception();
            next_block.store(blocks);
        }
    };

    if (workers <= 1) {
        work();
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (unsigned t = 0; t < workers; ++t) pool.emplace_back(work);
    }
    if (failure) std::rethrow_exception(failure);

    EnsembleStats result(config.dims);
    for (const auto& block : partial) result = merge(result, block);
    return result;
}

}  // namespace schmidt
