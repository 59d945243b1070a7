#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "oracles.hpp"
#include "schmidt/linalg.hpp"
#include "schmidt/sampler.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>

using namespace schmidt;

TEST_CASE("counter rng is keyed by (seed, stream)") {
    CounterRng a(7, 3);
    CounterRng b(7, 3);
    CounterRng c(7, 4);
    CounterRng d(8, 3);
    const auto first = a.next();
    CHECK(first == b.next());
    CHECK(first != c.next());
    CHECK(first != d.next());

    CounterRng u(1, 0);
    for (int i = 0; i < 10000; ++i) {
        const double open0 = u.uniform_open0();
        CHECK(open0 > 0.0);
        CHECK(open0 <= 1.0);
        const double half_open = u.uniform();
        CHECK(half_open >= 0.0);
        CHECK(half_open < 1.0);
    }
}

TEST_CASE("box-muller draws are standard normal") {
    CounterRng rng(42, 0);
    const int pairs = 200000;
    double sum = 0.0;
    double sum2 = 0.0;
    double cross = 0.0;
    for (int i = 0; i < pairs; ++i) {
        const auto [z0, z1] = rng.gaussian_pair();
        sum += z0 + z1;
        sum2 += z0 * z0 + z1 * z1;
        cross += z0 * z1;
    }
    const double n = 2.0 * pairs;
    CHECK(std::abs(sum / n) < 4.0 / std::sqrt(n));
    CHECK(std::abs(sum2 / n - 1.0) < 4.0 * std::sqrt(2.0 / n));
    CHECK(std::abs(cross / pairs) < 4.0 / std::sqrt(pairs));
}

TEST_CASE("draw_state") {
    SUBCASE("one-dimensional space") {
        CounterRng rng(1, 0);
        const auto s = draw_state(make_dims(1, 1), rng);
        CHECK(std::abs(s.amplitudes()[0]) == doctest::Approx(1.0).epsilon(1e-15));
    }
    SUBCASE("normalized") {
        CounterRng rng(5, 9);
        const auto s = draw_state(make_dims(2, 2), rng);
        double norm2 = 0.0;
        for (const auto& z : s.amplitudes()) norm2 += std::norm(z);
        CHECK(std::abs(norm2 - 1.0) < 1e-12);
    }
    SUBCASE("distinct streams give distinct states") {
        CounterRng r0(5, 0);
        CounterRng r1(5, 1);
        const auto s0 = draw_state(make_dims(4, 4), r0);
        const auto s1 = draw_state(make_dims(4, 4), r1);
        double diff = 0.0;
        for (std::size_t i = 0; i < s0.size(); ++i) diff += std::norm(s0.amplitudes()[i] - s1.amplitudes()[i]);
        CHECK(diff > 1e-3);
    }
    SUBCASE("same stream reproduces the state") {
        CounterRng r0(5, 0);
        CounterRng r1(5, 0);
        const auto s0 = draw_state(make_dims(3, 5), r0);
        const auto s1 = draw_state(make_dims(3, 5), r1);
        CHECK(std::equal(s0.amplitudes().begin(), s0.amplitudes().end(), s1.amplitudes().begin()));
    }
}

TEST_CASE("schmidt_spectrum of simple states") {
    const auto dims = make_dims(2, 2);
    const StateVector product({{1.0, 0.0}, {0.0, 0.0}, {0.0, 0.0}, {0.0, 0.0}});
    const auto p = schmidt_spectrum(product, dims);
    CHECK(p[0] == doctest::Approx(1.0));
    CHECK(p[1] == doctest::Approx(0.0));

    const double h = 1.0 / std::sqrt(2.0);
    const StateVector bell({{h, 0.0}, {0.0, 0.0}, {0.0, 0.0}, {h, 0.0}});
    const auto b = schmidt_spectrum(bell, dims);
    CHECK(b[0] == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(b[1] == doctest::Approx(0.5).epsilon(1e-14));

    CHECK_THROWS_AS(schmidt_spectrum(bell, make_dims(2, 3)), std::invalid_argument);
}

TEST_CASE("schmidt_spectrum matches an explicit partial trace") {
    for (auto [na, nb] : {std::pair{3u, 3u}, std::pair{4u, 9u}, std::pair{5u, 5u}}) {
        const auto dims = make_dims(na, nb);
        CounterRng rng(2024, na * 100 + nb);
        const auto state = draw_state(dims, rng);
        const std::vector<Complex> psi(state.amplitudes().begin(), state.amplitudes().end());
        const auto rho = oracle::partial_trace_b(psi, na, nb);
        linalg::ComplexMatrix m(na, na, rho.a);
        // The oracle's rho is Hermitian only up to round-off; symmetrize.
        for (std::size_t r = 0; r < na; ++r)
            for (std::size_t c = 0; c < r; ++c) m(c, r) = std::conj(m(r, c));
        const auto expected = linalg::hermitian_eigenvalues_jacobi(linalg::HermitianMatrix(m));
        const auto got = schmidt_spectrum(state, dims);
        for (std::size_t i = 0; i < na; ++i) CHECK(std::abs(got[i] - expected[i]) < 1e-12);
    }
}

TEST_CASE("sample_ensemble reproduces the exact N=2 and N=3 means") {
    const auto s2 = sample_ensemble(SamplerConfig(make_dims(2, 2), 1000000, 17));
    const auto se2 = s2.standard_errors();
    CHECK(std::abs(s2.means()[0] - 7.0 / 8.0) < 3.0 * se2[0]);
    CHECK(se2[0] < 2e-4);

    const auto s3 = sample_ensemble(SamplerConfig(make_dims(3, 3), 1000000, 18));
    const auto se3 = s3.standard_errors();
    CHECK(std::abs(s3.means()[2] - 1.0 / 27.0) < 3.0 * se3[2]);
}

TEST_CASE("one-dimensional subsystem has a deterministic spectrum") {
    const auto s = sample_ensemble(SamplerConfig(make_dims(1, 6), 3000, 3));
    CHECK(s.count() == 3000);
    CHECK(s.means()[0] == 1.0);
    CHECK(s.m2()[0] == 0.0);
    CHECK(s.widths()[0] == 0.0);
}

TEST_CASE("ensemble means of every sample sum to one") {
    const auto s = sample_ensemble(SamplerConfig(make_dims(5, 11), 5000, 4));
    double sum = 0.0;
    for (double m : s.means()) sum += m;
    CHECK(std::abs(sum - 1.0) < 1e-10);
    CHECK(std::is_sorted(s.means().begin(), s.means().end(), std::greater<>()));
}

TEST_CASE("sample_ensemble is bit-identical for any worker count") {
    const SamplerConfig config(make_dims(4, 6), 5000, 99);  // not a multiple of the block size
    const auto one = sample_ensemble(config, 1);
    for (unsigned workers : {2u, 3u, 8u}) {
        const auto many = sample_ensemble(config, workers);
        CHECK(many.count() == one.count());
        CHECK(std::memcmp(many.means().data(), one.means().data(), sizeof(double) * 4) == 0);
        CHECK(std::memcmp(many.m2().data(), one.m2().data(), sizeof(double) * 4) == 0);
    }
}

TEST_CASE("independently seeded runs agree within three standard errors") {
    const auto a = sample_ensemble(SamplerConfig(make_dims(4, 8), 200000, 1));
    const auto b = sample_ensemble(SamplerConfig(make_dims(4, 8), 200000, 2));
    const auto sa = a.standard_errors();
    const auto sb = b.standard_errors();
    for (std::size_t i = 0; i < 4; ++i) {
        CHECK(std::abs(a.means()[i] - b.means()[i]) < 3.0 * std::hypot(sa[i], sb[i]));
    }
}

TEST_CASE("progress sink sees the final total") {
    std::uint64_t last = 0;
    std::uint64_t calls = 0;
    sample_ensemble(SamplerConfig(make_dims(2, 3), 3000, 1), 2, [&](std::uint64_t done, std::uint64_t total) {
        CHECK(total == 3000);
        CHECK(done <= total);
        last = std::max(last, done);
        ++calls;
    });
    CHECK(last == 3000);
    CHECK(calls == 3);
}

TEST_CASE("sampler config rejects zero samples") {
    CHECK_THROWS_AS(SamplerConfig(make_dims(2, 2), 0, 1), std::invalid_argument);
}
