#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "qnoise/error.hpp"
#include "qnoise/kernels.hpp"

using namespace qnoise;
using cplx = std::complex<double>;

namespace {

struct Reset {
    ~Reset() { kernels::reset(); }
};

std::vector<double> randoms(std::size_t n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::vector<double> v(n);
    for (double& x : v) x = u(rng);
    return v;
}

std::vector<kernels::Isa> simd_variants() {
    std::vector<kernels::Isa> v;
    for (auto isa : {kernels::Isa::avx2, kernels::Isa::neon})
        if (kernels::available(isa)) v.push_back(isa);
    return v;
}

std::vector<cplx> laplace_with(kernels::Isa isa, const std::vector<double>& f, double dt, double t0, double sigma,
                               const std::vector<double>& w) {
    kernels::force(isa);
    std::vector<cplx> out(w.size());
    kernels::laplace_sum(f.data(), f.size(), dt, t0, sigma, w.data(), w.size(), out.data());
    return out;
}

std::vector<double> memory_with(kernels::Isa isa, const std::vector<double>& kernel, const std::vector<double>& states,
                                std::size_t K) {
    kernels::force(isa);
    std::vector<double> acc = {0.1, -0.2, 0.3, 0.4};
    kernels::memory_sum(kernel.data(), states.data() + states.size() - 4, K, acc.data());
    return acc;
}

} // namespace

TEST_CASE("scalar Laplace sum against a direct trapezoid") {
    Reset r;
    const auto f = randoms(37, 1);
    const std::vector<double> w = {0.0, 0.3, -1.1, 2.9};
    const auto got = laplace_with(kernels::Isa::scalar, f, 0.1, 0.5, 0.2, w);
    for (std::size_t j = 0; j < w.size(); ++j) {
        cplx want = 0.0;
        for (std::size_t k = 0; k < f.size(); ++k) {
            const double wt = (k == 0 || k + 1 == f.size()) ? 0.5 : 1.0;
            want += wt * f[k] * std::exp(-cplx(0.2, w[j]) * (0.5 + 0.1 * k));
        }
        CHECK(std::abs(got[j] - 0.1 * want) < 1e-13);
    }
}

TEST_CASE("SIMD Laplace sum matches the scalar reference") {
    Reset r;
    const auto variants = simd_variants();
    if (variants.empty()) {
        MESSAGE("no SIMD variant on this machine; scalar only");
        return;
    }
    for (std::size_t n : {2ul, 3ul, 5ul, 255ul, 256ul, 257ul, 1000ul, 20001ul}) {
        const auto f = randoms(n, n);
        std::vector<double> w;
        for (std::size_t j = 0; j < 13; ++j) w.push_back(-3.0 + 0.47 * j);
        for (double sigma : {0.0, 0.01}) {
            const auto ref = laplace_with(kernels::Isa::scalar, f, 0.2, 1.5, sigma, w);
            double scale = 0.0;
            for (const cplx& z : ref) scale = std::max(scale, std::abs(z));
            for (auto isa : variants) {
                CAPTURE(kernels::name(isa));
                CAPTURE(n);
                const auto got = laplace_with(isa, f, 0.2, 1.5, sigma, w);
                for (std::size_t j = 0; j < w.size(); ++j) CHECK(std::abs(got[j] - ref[j]) <= 1e-12 * (scale + 1.0));
            }
        }
    }
}

TEST_CASE("scalar memory sum against a direct loop") {
    Reset r;
    const std::size_t K = 9;
    const auto kernel = randoms(16 * (K + 1), 3);
    const auto states = randoms(4 * (K + 2), 4);
    const auto got = memory_with(kernels::Isa::scalar, kernel, states, K);
    std::vector<double> want = {0.1, -0.2, 0.3, 0.4};
    const double* newest = states.data() + states.size() - 4;
    for (std::size_t k = 1; k <= K; ++k)
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) want[i] += kernel[16 * k + 4 * j + i] * newest[j - 4 * static_cast<long>(k - 1)];
    for (int i = 0; i < 4; ++i) CHECK(got[i] == doctest::Approx(want[i]).epsilon(1e-14));
}

TEST_CASE("SIMD memory sum matches the scalar reference") {
    Reset r;
    const auto variants = simd_variants();
    if (variants.empty()) return;
    for (std::size_t K : {0ul, 1ul, 2ul, 3ul, 4ul, 7ul, 64ul, 1001ul}) {
        const auto kernel = randoms(16 * (K + 1), 10 + K);
        const auto states = randoms(4 * (K + 3), 20 + K);
        const auto ref = memory_with(kernels::Isa::scalar, kernel, states, K);
        for (auto isa : variants) {
            CAPTURE(K);
            const auto got = memory_with(isa, kernel, states, K);
            for (int i = 0; i < 4; ++i) CHECK(std::abs(got[i] - ref[i]) <= 1e-12 * (1.0 + std::abs(ref[i])));
        }
    }
}

TEST_CASE("dispatch") {
    Reset r;
    CHECK(kernels::available(kernels::Isa::scalar));
    kernels::force(kernels::Isa::scalar);
    CHECK(kernels::active() == kernels::Isa::scalar);
    for (auto isa : {kernels::Isa::avx2, kernels::Isa::neon})
        if (!kernels::available(isa)) CHECK_THROWS_AS(kernels::force(isa), InvalidArgument);
    kernels::reset();
    CHECK(kernels::available(kernels::active()));
}
