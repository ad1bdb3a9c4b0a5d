#include <doctest.h>

#include <cmath>

#include "qnoise/error.hpp"
#include "qnoise/noise.hpp"

using namespace qnoise;

namespace {
const NoiseModel lor = NoiseModel::lorentzian(0.01, 2.0);
}

TEST_CASE("correlation examples") {
    CHECK(lor.correlation_at(0.0).gamma == doctest::Approx(0.01).epsilon(1e-15));
    CHECK(lor.correlation_at(-2.0).gamma == doctest::Approx(0.01 * std::exp(-1.0)).epsilon(1e-14));
    CHECK(lor.correlation_at(-2.0).gamma == doctest::Approx(0.003679).epsilon(1e-4));
    const NoiseModel om = lor.with_omega({0.003, 1.5, 0.4});
    CHECK(om.correlation_at(0.0).omega == 0.0);
    CHECK(om.correlation_at(-0.7).omega == doctest::Approx(-om.correlation_at(0.7).omega));
    CHECK(om.correlation_at(0.7).omega ==
          doctest::Approx(-0.003 * std::exp(-0.7 / 1.5) * (1.0 - std::exp(-0.7 / 0.4))).epsilon(1e-14));
}

TEST_CASE("Laplace examples") {
    CHECK(std::abs(lor.laplace_at(1.0).gamma - cplx(0.01 / 1.5)) < 1e-16);
    CHECK(lor.laplace_at(1.0).gamma.real() == doctest::Approx(0.006667).epsilon(1e-4));
    CHECK(std::abs(lor.laplace_at(cplx(0, 1)).gamma - cplx(0.004, -0.008)) < 1e-16);
    const NoiseModel w = NoiseModel::white(0.3);
    for (cplx s : {cplx(0.0), cplx(2.0, -1.0), cplx(0.0, 40.0)}) CHECK(std::abs(w.laplace_at(s).gamma - cplx(0.15)) < 1e-16);
    CHECK_THROWS_AS(lor.laplace_at(-0.5), SingularEvaluation);
}

TEST_CASE("damped-sine Omega transform") {
    const DampedSineOmega o{0.003, 1.5, 0.4};
    const NoiseModel m = lor.with_omega(o);
    const cplx s(0.2, 0.9);
    const cplx want = -o.a * (1.0 / (s + 1.0 / o.tau_c) - 1.0 / (s + 1.0 / o.tau_c + 1.0 / o.tau_r));
    CHECK(std::abs(m.laplace_at(s).omega - want) < 1e-16);
}

TEST_CASE("Fourier examples") {
    CHECK(lor.fourier_spectrum_at(0.0).gamma_ft == doctest::Approx(0.04).epsilon(1e-14));
    CHECK(lor.fourier_spectrum_at(0.5).gamma_ft == doctest::Approx(0.02).epsilon(1e-14));
    for (double w : {0.0, 0.3, -2.0}) CHECK(lor.fourier_spectrum_at(w).omega_ft == 0.0);
    CHECK(lor.phi_ft(1.0) == doctest::Approx(0.5 * 2 * 0.01 * 2 / 5.0).epsilon(1e-14));
}

TEST_CASE("modulated spectra examples") {
    const ModulatedSpectra m = modulated_at(lor.spectra(), 1.0, 0.0);
    CHECK(m.gamma_plus.real() == doctest::Approx(0.004).epsilon(1e-14));
    CHECK(std::abs(m.gamma_plus - cplx((0.01 / cplx(0.5, 1.0)).real())) < 1e-16);
    for (cplx s : {cplx(0.1), cplx(1.0, 2.0)}) {
        const ModulatedSpectra z = modulated_at(lor.spectra(), 0.0, s);
        CHECK(std::abs(z.gamma_plus - lor.laplace_at(s).gamma) < 1e-16);
        CHECK(std::abs(z.gamma_minus) < 1e-16);
    }
}

TEST_CASE("Gamma_+ equals the cosine-modulated one-sided integral") {
    const double tc = 2.0, D = 1.3;
    const cplx s(0.05, 0.2);
    // composite Simpson on [0, 40 tau_c]
    const int n = 200000;
    const double T = 40.0 * tc, h = T / n;
    cplx acc = 0.0;
    for (int k = 0; k <= n; ++k) {
        const double t = k * h;
        const double w = (k == 0 || k == n) ? 1.0 : (k % 2 ? 4.0 : 2.0);
        acc += w * std::exp(-s * t) * lor.correlation_at(t).gamma * std::cos(D * t);
    }
    acc *= h / 3.0;
    CHECK(std::abs(acc - modulated_at(lor.spectra(), D, s).gamma_plus) < 1e-6);
}

TEST_CASE("conjugate symmetry and positivity") {
    const std::vector<NoiseModel> models = {
        lor,
        NoiseModel::lorentzian_sum({{0.01, 2.0}, {0.003, 0.3}}).with_omega({0.002, 1.0, 0.5}),
        NoiseModel::one_over_f(1e-3, 1e-3, 10.0, 3),
        NoiseModel::ohmic(0.05, 4.0),
        NoiseModel::white(0.02),
    };
    for (const auto& m : models) {
        CAPTURE(to_string(m.kind()));
        for (cplx s : {cplx(0.3, 1.1), cplx(0.01, -4.0), cplx(2.0, 0.5)}) {
            const LaplacePair a = m.laplace_at(s), b = m.laplace_at(std::conj(s));
            CHECK(std::abs(b.gamma - std::conj(a.gamma)) <= 1e-14 * (1.0 + std::abs(a.gamma)));
            CHECK(std::abs(b.omega - std::conj(a.omega)) <= 1e-14 * (1.0 + std::abs(a.omega)));
        }
        for (double w = -20.0; w <= 20.0; w += 0.37) {
            CHECK(m.fourier_spectrum_at(w).gamma_ft >= 0.0);
            CHECK(m.fourier_spectrum_at(w).gamma_ft == doctest::Approx(m.fourier_spectrum_at(-w).gamma_ft));
            CHECK(m.fourier_spectrum_at(w).gamma_ft == doctest::Approx(2.0 * m.laplace_at(cplx(0, w)).gamma.real()).epsilon(1e-9));
        }
    }
}

TEST_CASE("one_over_f follows amplitude / w inside the band") {
    const NoiseModel m = NoiseModel::one_over_f(2e-3, 1e-3, 10.0, 4);
    for (double w : {1e-2, 0.1, 1.0})
        CHECK(m.fourier_spectrum_at(w).gamma_ft * w == doctest::Approx(2e-3).epsilon(0.05));
}

TEST_CASE("ohmic spectrum") {
    const NoiseModel m = NoiseModel::ohmic(0.05, 4.0);
    for (double w : {0.0, 0.5, 4.0, -9.0})
        CHECK(m.fourier_spectrum_at(w).gamma_ft == doctest::Approx(0.05 * std::abs(w) * std::exp(-std::abs(w) / 4.0)).epsilon(1e-12));
    CHECK_THROWS_AS(m.laplace_at(cplx(-0.1, 0.0)), InvalidArgument);
    CHECK_THROWS_AS(NoiseModel::ohmic(0.1, 0.0), InvalidArgument);
}

TEST_CASE("tabulated model") {
    std::vector<double> taus, g;
    for (int k = 0; k <= 400; ++k) {
        taus.push_back(0.05 * k);
        g.push_back(0.01 * std::exp(-taus.back() / 2.0));
    }
    g.back() = 0.0;
    const NoiseModel m = NoiseModel::tabulated(taus, g);
    CHECK(m.correlation_at(1.0).gamma == doctest::Approx(0.01 * std::exp(-0.5)).epsilon(1e-3));
    CHECK(m.correlation_at(-1.0).gamma == m.correlation_at(1.0).gamma);
    CHECK_THROWS_AS(m.correlation_at(25.0), InvalidArgument);
    CHECK_THROWS_AS(NoiseModel::tabulated({0.0, 1.0, 0.5}, {1.0, 0.5, 0.2}), InvalidArgument);
}

TEST_CASE("model construction rejects bad parameters") {
    CHECK_THROWS_AS(NoiseModel::lorentzian(0.01, 0.0), InvalidArgument);
    CHECK_THROWS_AS(NoiseModel::lorentzian(-1.0, 1.0), InvalidArgument);
    CHECK_THROWS_AS(NoiseModel::white(-0.1), InvalidArgument);
    CHECK_NOTHROW(NoiseModel::lorentzian(0.0, 1.0));
    CHECK(NoiseModel::lorentzian(0.0, 1.0).is_zero());
    CHECK(lor.scaled(0.5).laplace_at(1.0).gamma == 0.5 * lor.laplace_at(1.0).gamma);
}
