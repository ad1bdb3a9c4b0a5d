#include <doctest.h>

#include <cmath>
#include <numbers>

#include "qnoise/error.hpp"
#include "qnoise/parallel.hpp"
#include "qnoise/qubit.hpp"
#include "qnoise/time_sim.hpp"

using namespace qnoise;

namespace {
constexpr double pi = std::numbers::pi;

SystemSpec charge(const NoiseModel& m, double delta = 1.0) {
    return make_system(params_from_gap(delta, pi / 2), Frame::charge_basis, InitialState::zero_charge, m.spectra());
}

SystemSpec excited(const NoiseModel& m) {
    return make_system(params_from_gap(1.0, pi / 2), Frame::eigen_basis, InitialState::excited, m.spectra());
}

SimConfig cfg_of(double dt, double T) {
    SimConfig c;
    c.dt = dt;
    c.T = T;
    return c;
}

double max_q_error(const Trajectory& a, const Trajectory& ref, std::size_t ratio) {
    double e = 0.0;
    for (std::size_t i = 0; i < a.q.size(); ++i) e = std::max(e, std::abs(a.q[i] - ref.q[i * ratio]));
    return e;
}
} // namespace

TEST_CASE("free evolution") {
    const double D = 1.3;
    const NoiseModel none = NoiseModel::lorentzian(0.0, 1.0);
    const Trajectory tr = integrate_volterra(charge(none, D), none, cfg_of(2 * pi / (20 * D), 20 * 2 * pi / D));
    double err = 0.0;
    for (std::size_t i = 0; i < tr.q.size(); ++i) err = std::max(err, std::abs(tr.q[i] - 0.5 * (1 - std::cos(D * tr.times[i]))));
    CHECK(err <= 1e-6);
    for (const Vec4& v : tr.states) CHECK(v(0) == 1.0);
}

TEST_CASE("white noise follows the two-pole inversion") {
    const double D = 1.0, gw = 0.04, g = gw / 2;
    const NoiseModel w = NoiseModel::white(gw);
    const Trajectory tr = integrate_volterra(charge(w), w, cfg_of(0.01, 60.0));
    const double W = std::sqrt(D * D - g * g / 4);
    double err = 0.0;
    for (std::size_t i = 0; i < tr.q.size(); ++i) {
        const double t = tr.times[i];
        const double want = 0.5 * (1 - std::exp(-g * t / 2) * (std::cos(W * t) + g / (2 * W) * std::sin(W * t)));
        err = std::max(err, std::abs(tr.q[i] - want));
    }
    CHECK(err <= 1e-4);
}

TEST_CASE("second-order convergence in the step") {
    const NoiseModel m = NoiseModel::lorentzian(0.02, 2.0);
    const SystemSpec sys = charge(m);
    const Trajectory ref = integrate_volterra(sys, m, cfg_of(0.0125, 20.0));
    const double e1 = max_q_error(integrate_volterra(sys, m, cfg_of(0.1, 20.0)), ref, 8);
    const double e2 = max_q_error(integrate_volterra(sys, m, cfg_of(0.05, 20.0)), ref, 4);
    CHECK(e1 / e2 > 3.0);
    CHECK(e1 / e2 < 5.0);
}

TEST_CASE("Monte Carlo: zero coupling is free evolution") {
    const auto f = make_frame(params_from_gap(1.0, pi / 2), Frame::charge_basis, InitialState::zero_charge);
    const EnsembleResult r = monte_carlo_reference(f.H0, f.H1, f.v0, {0.0, 0.2}, 8, cfg_of(0.05, 20.0), 3);
    for (std::size_t i = 0; i < r.mean.q.size(); ++i) {
        CHECK(r.mean.q[i] == doctest::Approx(0.5 * (1 - std::cos(r.mean.times[i]))).epsilon(1e-6));
        CHECK(r.stderr_q[i] == doctest::Approx(0.0).epsilon(1e-12));
    }
    CHECK_THROWS_AS(monte_carlo_reference(f.H0, f.H1, f.v0, {0.01, 0.2}, 1, cfg_of(0.05, 20.0), 3), InvalidArgument);
}

TEST_CASE("Monte Carlo: determinism across workers and statistical scaling") {
    const auto f = make_frame(params_from_gap(1.0, pi / 2), Frame::charge_basis, InitialState::zero_charge);
    const OuProcess ou{0.01, 0.2};
    const SimConfig c = cfg_of(0.02, 10.0);
    set_worker_count(1);
    const EnsembleResult a = monte_carlo_reference(f.H0, f.H1, f.v0, ou, 64, c, 11);
    set_worker_count(4);
    const EnsembleResult b = monte_carlo_reference(f.H0, f.H1, f.v0, ou, 64, c, 11);
    set_worker_count(0);
    CHECK(a.mean.q == b.mean.q);
    CHECK(a.stderr_q == b.stderr_q);

    const EnsembleResult small = monte_carlo_reference(f.H0, f.H1, f.v0, ou, 400, c, 5);
    const EnsembleResult big = monte_carlo_reference(f.H0, f.H1, f.v0, ou, 800, c, 6);
    double s1 = 0.0, s2 = 0.0;
    for (std::size_t i = 0; i < small.stderr_q.size(); ++i) s1 += small.stderr_q[i], s2 += big.stderr_q[i];
    CHECK(s1 / s2 == doctest::Approx(std::sqrt(2.0)).epsilon(0.1));
}

TEST_CASE("transition rate trace") {
    const NoiseModel none = NoiseModel::lorentzian(0.0, 1.0);
    const Trajectory still = integrate_volterra(excited(none), none, cfg_of(0.1, 10.0));
    for (double r : transition_rate_trace(still)) CHECK(std::abs(r) < 1e-10);

    Trajectory line;
    const double T = 50.0;
    for (int k = 0; k <= 100; ++k) {
        const double t = 0.5 * k;
        line.times.push_back(t);
        line.states.push_back(Vec4(1, 0, 0, 1 - 2 * t / T));
        line.q.push_back(t / T);
    }
    for (double r : transition_rate_trace(line)) CHECK(r == doctest::Approx(-1.0 / T).epsilon(1e-12));

    // v3 = -exp(-gw t / 2) so (1/2) dv3/dt = (gw / 4) exp(-gw t / 2)
    const double gw = 0.02;
    const NoiseModel w = NoiseModel::white(gw);
    const Trajectory tr = integrate_volterra(excited(w), w, cfg_of(0.05, 200.0));
    const std::vector<double> rate = transition_rate_trace(tr);
    for (std::size_t i = 0; i < rate.size(); i += 100)
        CHECK(rate[i] == doctest::Approx(0.25 * gw * std::exp(-0.5 * gw * tr.times[i])).epsilon(0.02));

    Trajectory two;
    two.times = {0.0, 1.0};
    two.states = {Vec4(1, 0, 0, 1), Vec4(1, 0, 0, 1)};
    two.q = {0.0, 0.0};
    CHECK_THROWS_AS(transition_rate_trace(two), InvalidArgument);
}

TEST_CASE("configuration checks") {
    CHECK_THROWS_AS(cfg_of(0.0, 1.0).validate(), InvalidArgument);
    CHECK_THROWS_AS(cfg_of(1.0, 0.5).validate(), InvalidArgument);
    SimConfig bad = cfg_of(0.1, 1.0);
    bad.output_stride = 0;
    CHECK_THROWS_AS(bad.validate(), InvalidArgument);
    CHECK_THROWS_AS(cfg_of(0.5, 10.0).validate_for(1.0, 100.0), InvalidArgument);
    CHECK_THROWS_AS(cfg_of(0.1, 10.0).validate_for(1.0, 0.5), InvalidArgument);
    CHECK_NOTHROW(cfg_of(0.05, 10.0).validate_for(1.0, 0.5));
    CHECK(cfg_of(0.1, 1.0).steps() == 10);

    const NoiseModel m = NoiseModel::lorentzian(0.01, 2.0);
    CHECK_THROWS_AS(integrate_volterra(charge(m), m, cfg_of(1.0, 20.0)), InvalidArgument);

    std::vector<double> taus, g;
    for (int k = 0; k <= 100; ++k) taus.push_back(0.1 * k), g.push_back(0.01);
    const NoiseModel flat = NoiseModel::tabulated(taus, g);
    CHECK_THROWS_AS(integrate_volterra(charge(flat), flat, cfg_of(0.01, 5.0)), InvalidArgument);
}

TEST_CASE("SplitMix64 streams are reproducible and distinct") {
    SplitMix64 a(7, 0), b(7, 0), c(7, 1);
    const auto x = a(), y = b(), z = c();
    CHECK(x == y);
    CHECK(x != z);
}
