#include "qnoise/time_sim.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <limits>
#include <numbers>
#include <random>

#include "qnoise/kernels.hpp"
#include "qnoise/parallel.hpp"

namespace qnoise {

std::string to_string(Scheme s) {
    return s == Scheme::trapezoid_volterra ? "trapezoid-volterra" : "predictor-corrector";
}

Scheme scheme_from_string(const std::string& name) {
    if (name == "trapezoid-volterra") return Scheme::trapezoid_volterra;
    if (name == "predictor-corrector") return Scheme::predictor_corrector;
    throw InvalidArgument("unknown scheme '" + name + "'");
}

void SimConfig::validate() const {
    if (!(dt > 0.0) || !std::isfinite(dt)) throw InvalidArgument("sim: dt must be > 0");
    if (!(T >= dt) || !std::isfinite(T)) throw InvalidArgument("sim: T must be >= dt");
    if (kernel_cut && !(*kernel_cut >= 0.0)) throw InvalidArgument("sim: kernel_cut must be >= 0");
    if (output_stride < 1) throw InvalidArgument("sim: output_stride must be >= 1");
}

void SimConfig::validate_for(double delta, double correlation_time) const {
    validate();
    const double slack = 1.0 + 1e-9;
    if (delta > 0.0 && dt > slack * 2.0 * std::numbers::pi / (20.0 * delta))
        throw InvalidArgument("sim: dt = " + std::to_string(dt) + " ps does not resolve the oscillation (need dt <= 2 pi / (20 Delta) = " +
                              std::to_string(2.0 * std::numbers::pi / (20.0 * delta)) + ")");
    if (std::isfinite(correlation_time) && dt > slack * correlation_time / 10.0)
        throw InvalidArgument("sim: dt = " + std::to_string(dt) + " ps does not resolve the noise correlation time (need dt <= " +
                              std::to_string(correlation_time / 10.0) + ")");
}

std::size_t SimConfig::steps() const { return static_cast<std::size_t>(std::floor(T / dt + 1e-9)); }

double default_kernel_cut(const NoiseModel& noise) { return noise.decay_horizon(1e-8); }

std::vector<double> kernel_table(const SystemSpec& sys, const NoiseModel& noise, double dt, std::size_t K) {
    std::vector<double> table(16 * (K + 1), 0.0);
    const Mat4& L1 = sys.L1.matrix;
    const Mat4& L1p = sys.L1_plus.matrix;
    for (std::size_t k = 0; k <= K; ++k) {
        const double tau = dt * static_cast<double>(k);
        const Correlation c = noise.correlation_at(tau);
        if (c.gamma == 0.0 && c.omega == 0.0) continue;
        const Mat4 E = sys.eig0.exp(tau);
        Mat4 M = L1 * (c.gamma * E * L1 + c.omega * E * L1p);
        M.row(0).setZero();
        std::memcpy(table.data() + 16 * k, M.data(), 16 * sizeof(double));
    }
    return table;
}

namespace {

Vec4 mat_at(const std::vector<double>& table, std::size_t k, const Vec4& v) {
    return Eigen::Map<const Mat4>(table.data() + 16 * k) * v;
}

void check_tabulated_decay(const NoiseModel& noise) {
    if (noise.kind() != NoiseKind::tabulated) return;
    const auto& g = noise.table_gamma();
    const auto& o = noise.table_omega();
    const double scale = std::max(noise.gamma0(), noise.omega_max());
    const double tail = std::abs(g.back()) + (o.empty() ? 0.0 : std::abs(o.back()));
    if (scale > 0.0 && tail > 1e-3 * scale)
        throw InvalidArgument("sim: tabulated kernel has not decayed at the end of its grid");
}

} // namespace

Trajectory integrate_volterra(const SystemSpec& sys, const NoiseModel& noise, const SimConfig& cfg) {
    double delta = 0.0;
    for (const cplx& x : sys.eig0.eigenvalues) delta = std::max(delta, std::abs(x));
    cfg.validate_for(delta, noise.is_zero() ? std::numeric_limits<double>::infinity() : noise.correlation_time());
    check_tabulated_decay(noise);
    const double h = cfg.dt;
    const std::size_t N = cfg.steps();
    double cut = cfg.kernel_cut ? *cfg.kernel_cut : default_kernel_cut(noise);
    if (noise.kind() == NoiseKind::tabulated) cut = std::min(cut, noise.table_taus().back());
    const std::size_t K = std::min<std::size_t>(N, static_cast<std::size_t>(std::floor(cut / h)));
    const std::vector<double> table = kernel_table(sys, noise, h, K);

    Mat4 E = sys.eig0.exp(h);
    E.row(0) = Vec4::UnitX().transpose();
    Mat4 W = Mat4::Zero();
    if (noise.kind() == NoiseKind::white) W = 0.5 * noise.white_rate() * sys.L1.matrix * sys.L1.matrix;
    W.row(0).setZero();
    const Mat4 M0 = Eigen::Map<const Mat4>(table.data());
    const Mat4 B = W + 0.5 * h * M0;
    const Mat4 G = Mat4::Identity() - 0.5 * h * B;
    const Eigen::Matrix3d G11inv = G.block<3, 3>(1, 1).fullPivLu().inverse();
    const Vec3 G10 = G.block<3, 1>(1, 0);

    const Vec4 v0 = sys.v0.components();
    // sliding window holding the last K states contiguously
    const std::size_t cap = K + 4096;
    std::vector<double> window(4 * (cap + 1));
    std::size_t base = 0; // step index of window[0]
    std::memcpy(window.data(), v0.data(), 4 * sizeof(double));

    Trajectory traj;
    const std::size_t stride = static_cast<std::size_t>(cfg.output_stride);
    traj.times.reserve(N / stride + 1);
    traj.states.reserve(N / stride + 1);
    auto record = [&](std::size_t n, const Vec4& v) {
        if (n % stride != 0) return;
        traj.times.push_back(h * static_cast<double>(n));
        traj.states.push_back(v);
        traj.q.push_back(0.5 * (1.0 - v(3)));
    };
    record(0, v0);

    Vec4 v = v0;
    Vec4 g = W * v0;
    for (std::size_t n = 0; n < N; ++n) {
        Vec4 C = Vec4::Zero();
        const std::size_t lags = std::min(n, K);
        if (lags > 0) kernels::memory_sum(table.data(), window.data() + 4 * (n - base), lags, C.data());
        if (n + 1 <= K) C += 0.5 * mat_at(table, n + 1, v0);
        const Vec4 explicit_part = E * (v + 0.5 * h * g);
        Vec4 next;
        if (cfg.scheme == Scheme::trapezoid_volterra) {
            const Vec4 rhs = explicit_part + 0.5 * h * h * C;
            next(0) = 1.0;
            next.tail<3>() = G11inv * (rhs.tail<3>() - G10);
        } else {
            Vec4 pred = E * (v + h * g);
            pred(0) = 1.0;
            const Vec4 gp = B * pred + h * C;
            next = explicit_part + 0.5 * h * gp;
            next(0) = 1.0;
        }
        g = B * next + h * C;
        v = next;
        if (n + 1 - base > cap) {
            const std::size_t keep = K;
            const std::size_t from = n + 1 - keep - base;
            std::memmove(window.data(), window.data() + 4 * from, 4 * keep * sizeof(double));
            base += from;
        }
        std::memcpy(window.data() + 4 * (n + 1 - base), v.data(), 4 * sizeof(double));
        record(n + 1, v);
    }
    return traj;
}

SplitMix64::SplitMix64(std::uint64_t seed, std::uint64_t stream) : state_(seed) {
    state_ ^= 0x9E3779B97F4A7C15ull * (stream + 1);
    (*this)();
    state_ ^= stream;
}

SplitMix64::result_type SplitMix64::operator()() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

namespace {

Vec3 rotate(const Vec3& r, const Vec3& w) {
    const double phi = w.norm();
    if (phi == 0.0) return r;
    const Vec3 n = w / phi;
    const double c = std::cos(phi), s = std::sin(phi);
    return r * c + n.cross(r) * s + n * (n.dot(r) * (1.0 - c));
}

struct ChunkSums {
    std::vector<double> q, q2;
    std::vector<Vec4> v;
};

} // namespace

EnsembleResult monte_carlo_reference(const Mat2c& H0, const Mat2c& H1, const BlochVector& v0, const OuProcess& process,
                                     std::size_t n_traj, const SimConfig& cfg, std::uint64_t seed) {
    if (n_traj < 2) throw InvalidArgument("monte carlo: need at least 2 trajectories for error bars");
    if (!(process.g2 >= 0.0) || !(process.tau_c > 0.0)) throw InvalidArgument("monte carlo: need g2 >= 0 and tau_c > 0");
    const Superoperator L0 = commutator_superop(H0), L1 = commutator_superop(H1);
    if (!L0.is_rotation_generator() || !L1.is_rotation_generator())
        throw InvalidArgument("monte carlo: Hamiltonians must generate rotations");
    const Vec3 w0 = L0.rotation_vector(), w1 = L1.rotation_vector();
    cfg.validate_for(w0.norm(), process.g2 > 0.0 ? process.tau_c : std::numeric_limits<double>::infinity());

    const double h = cfg.dt, tau = process.tau_c, g2 = process.g2;
    const std::size_t N = cfg.steps();
    const std::size_t stride = static_cast<std::size_t>(cfg.output_stride);
    const std::size_t n_out = N / stride + 1;

    // exact joint law of (c_{k+1}, int c dt) given c_k
    const double x = h / tau;
    const double e = std::exp(-x), one_m_e = -std::expm1(-x);
    const double var_c = g2 * one_m_e * (1.0 + e);
    const double var_i = g2 * tau * tau * (2.0 * x - 3.0 + 4.0 * e - e * e);
    const double cov = g2 * tau * one_m_e * one_m_e;
    const double sd_c = std::sqrt(var_c);
    const double load = sd_c > 0.0 ? cov / sd_c : 0.0;
    const double sd_rest = std::sqrt(std::max(0.0, var_i - load * load));
    const double sd0 = std::sqrt(g2);

    const std::size_t chunk = 64;
    const std::size_t n_chunks = (n_traj + chunk - 1) / chunk;
    const unsigned wave = std::max(1u, worker_count());

    // moments of q - q_free, q_free from the noiseless rotation
    std::vector<double> q_free(n_out);
    {
        Vec3 r = v0.components().tail<3>();
        q_free[0] = 0.5 * (1.0 - r(2));
        for (std::size_t n = 1; n <= N; ++n) {
            r = rotate(r, h * w0 + 0.0 * w1);
            if (n % stride == 0) q_free[n / stride] = 0.5 * (1.0 - r(2));
        }
    }

    std::vector<double> sum_q(n_out, 0.0), sum_q2(n_out, 0.0);
    std::vector<Vec4> sum_v(n_out, Vec4::Zero());

    for (std::size_t first = 0; first < n_chunks; first += wave) {
        const std::size_t count = std::min<std::size_t>(wave, n_chunks - first);
        std::vector<ChunkSums> parts(count);
        parallel_for(count, [&](std::size_t ci) {
            ChunkSums& acc = parts[ci];
            acc.q.assign(n_out, 0.0);
            acc.q2.assign(n_out, 0.0);
            acc.v.assign(n_out, Vec4::Zero());
            const std::size_t lo = (first + ci) * chunk, hi = std::min(n_traj, lo + chunk);
            for (std::size_t t = lo; t < hi; ++t) {
                SplitMix64 rng(seed, t);
                std::normal_distribution<double> normal(0.0, 1.0);
                double c = sd0 * normal(rng);
                Vec3 r = v0.components().tail<3>();
                auto add = [&](std::size_t slot) {
                    const double d = 0.5 * (1.0 - r(2)) - q_free[slot];
                    acc.q[slot] += d;
                    acc.q2[slot] += d * d;
                    acc.v[slot].tail<3>() += r;
                    acc.v[slot](0) += 1.0;
                };
                add(0);
                for (std::size_t n = 1; n <= N; ++n) {
                    const double z1 = normal(rng), z2 = normal(rng);
                    const double integral = c * tau * one_m_e + load * z1 + sd_rest * z2;
                    c = c * e + sd_c * z1;
                    r = rotate(r, h * w0 + integral * w1);
                    if (n % stride == 0) add(n / stride);
                }
            }
        });
        for (const ChunkSums& p : parts) {
            for (std::size_t i = 0; i < n_out; ++i) {
                sum_q[i] += p.q[i];
                sum_q2[i] += p.q2[i];
                sum_v[i] += p.v[i];
            }
        }
    }

    EnsembleResult res;
    res.n_traj = n_traj;
    res.seed = seed;
    const double n = static_cast<double>(n_traj);
    for (std::size_t i = 0; i < n_out; ++i) {
        res.mean.times.push_back(h * static_cast<double>(i * stride));
        Vec4 m = sum_v[i] / n;
        m(0) = 1.0;
        res.mean.states.push_back(m);
        const double mq = sum_q[i] / n;
        res.mean.q.push_back(q_free[i] + mq);
        const double var = std::max(0.0, (sum_q2[i] - n * mq * mq) / (n - 1.0));
        res.stderr_q.push_back(std::sqrt(var / n));
    }
    return res;
}

std::vector<double> transition_rate_trace(const Trajectory& traj) {
    const std::size_t n = traj.states.size();
    if (n < 3) throw InvalidArgument("transition_rate_trace: need at least 3 samples");
    const double h = traj.times[1] - traj.times[0];
    for (std::size_t k = 1; k < n; ++k)
        if (std::abs(traj.times[k] - traj.times[k - 1] - h) > 1e-9 * h)
            throw InvalidArgument("transition_rate_trace: grid is not uniform");
    std::vector<double> rate(n);
    auto v3 = [&](std::size_t k) { return traj.states[k](3); };
    rate[0] = 0.5 * (-3.0 * v3(0) + 4.0 * v3(1) - v3(2)) / (2.0 * h);
    for (std::size_t k = 1; k + 1 < n; ++k) rate[k] = 0.5 * (v3(k + 1) - v3(k - 1)) / (2.0 * h);
    rate[n - 1] = 0.5 * (3.0 * v3(n - 1) - 4.0 * v3(n - 2) + v3(n - 3)) / (2.0 * h);
    return rate;
}

} // namespace qnoise
