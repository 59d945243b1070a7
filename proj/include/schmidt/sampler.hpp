#pragma once

#include "schmidt/core.hpp"
#include "schmidt/ensemble.hpp"

#include <cstddef>
#include <cstdint>
#include <functional>
#include <utility>

namespace schmidt {

// Counter-based generator: sample j of a run with seed s draws from the
// stream keyed by (s, j), a SplitMix64 sequence. Streams do not depend on
// how samples are distributed over threads.
class CounterRng {
public:
    CounterRng(std::uint64_t seed, std::uint64_t stream) noexcept;

    std::uint64_t next() noexcept;
    // Uniform on (0, 1].
    double uniform_open0() noexcept;
    // Uniform on [0, 1).
    double uniform() noexcept;
    // Two independent standard normals by Box-Muller:
    // r = sqrt(-2 ln u1), (r cos 2 pi u2, r sin 2 pi u2), u1 in (0,1], u2 in [0,1).
    std::pair<double, double> gaussian_pair() noexcept;

private:
    std::uint64_t state_;
};

struct SamplerConfig {
    BipartiteDims dims;
    std::uint64_t sample_count;
    std::uint64_t seed;

    SamplerConfig(BipartiteDims dims, std::uint64_t sample_count, std::uint64_t seed);
};

// Called with (completed samples, total samples).
using ProgressSink = std::function<void(std::uint64_t, std::uint64_t)>;

// Random pure state: i.i.d. standard complex Gaussian amplitudes, normalized.
StateVector draw_state(const BipartiteDims& dims, CounterRng& rng);

// Eigenvalues of tr_B |psi><psi|; amplitude a * n_b + b belongs to basis |a>|b>.
SchmidtSpectrum schmidt_spectrum(const StateVector& state, const BipartiteDims& dims);

// Samples are processed in fixed blocks of this size; block results are merged
// in block order, so the statistics are bit-identical for any worker count.
inline constexpr std::uint64_t sampler_block_size = 1024;

// workers == 0 selects std::thread::hardware_concurrency().
EnsembleStats sample_ensemble(const SamplerConfig& config, unsigned workers = 0,
                              const ProgressSink& progress = {});

}  // namespace schmidt
