#include "qnoise/expint.hpp"

#include <cmath>
#include <numbers>

#include "qnoise/error.hpp"

namespace qnoise {

namespace {

using cplx = std::complex<double>;
constexpr double euler_gamma = 0.57721566490153286061;
constexpr double pi = std::numbers::pi;

bool on_negative_axis(cplx z) { return z.imag() == 0.0 && z.real() < 0.0; }

// -gamma - log z - sum_{k>=1} (-z)^k / (k k!)
cplx e1_series(cplx z, CutSide side) {
    cplx logz;
    if (on_negative_axis(z))
        logz = cplx(std::log(-z.real()), side == CutSide::upper ? pi : -pi);
    else
        logz = std::log(z);
    cplx term = 1.0, sum = 0.0;
    for (int k = 1; k < 400; ++k) {
        term *= -z / static_cast<double>(k);
        const cplx add = term / static_cast<double>(k);
        sum += add;
        if (std::abs(add) <= 1e-17 * std::abs(sum)) break;
    }
    return -euler_gamma - logz - sum;
}

// e^z E1(z) = 1/(z+1- 1/(z+3- 4/(z+5- ...))), modified Lentz
cplx scaled_e1_cf(cplx z) {
    const double tiny = 1e-300;
    cplx f = z + 1.0;
    if (std::abs(f) < tiny) f = tiny;
    cplx C = f, D = 0.0;
    for (int n = 1; n < 5000; ++n) {
        const double a = -static_cast<double>(n) * n;
        const cplx b = z + static_cast<double>(2 * n + 1);
        D = b + a * D;
        if (std::abs(D) < tiny) D = tiny;
        C = b + a / C;
        if (std::abs(C) < tiny) C = tiny;
        D = 1.0 / D;
        const cplx delta = C * D;
        f *= delta;
        if (std::abs(delta - 1.0) < 1e-16) return 1.0 / f;
    }
    throw ConvergenceError("expint: continued fraction did not converge", {z});
}

// e^z E1(z) ~ (1/z) sum k! (-1/z)^k, truncated at the smallest term
cplx scaled_e1_asymptotic(cplx z) {
    cplx term = 1.0, sum = 1.0;
    double last = 1.0;
    for (int k = 1; k < 200; ++k) {
        const cplx next = term * (-static_cast<double>(k) / z);
        const double mag = std::abs(next);
        if (mag > last) break;
        term = next;
        sum += term;
        last = mag;
        if (mag < 1e-17 * std::abs(sum)) break;
    }
    return sum / z;
}

bool use_cf(cplx z) { return z.real() >= 0.0 || std::abs(z.imag()) >= 1.0; }

} // namespace

double expint_ei(double x) {
    if (!(x > 0.0)) throw InvalidArgument("expint_ei: argument must be positive");
    if (x < 40.0) {
        double term = 1.0, sum = 0.0;
        for (int k = 1; k < 400; ++k) {
            term *= x / k;
            const double add = term / k;
            sum += add;
            if (add <= 1e-17 * sum) break;
        }
        return euler_gamma + std::log(x) + sum;
    }
    double term = 1.0, sum = 1.0;
    for (int k = 1; k < 200; ++k) {
        const double next = term * k / x;
        if (next > term) break;
        term = next;
        sum += term;
        if (term < 1e-17 * sum) break;
    }
    return std::exp(x) / x * sum;
}

cplx expint_e1(cplx z, CutSide side) {
    if (z == cplx(0.0, 0.0)) throw SingularEvaluation("expint_e1: logarithmic singularity at 0", z);
    if (on_negative_axis(z)) {
        const double x = -z.real();
        return cplx(-expint_ei(x), side == CutSide::upper ? -pi : pi);
    }
    if (std::abs(z) <= 1.5) return e1_series(z, side);
    if (use_cf(z)) return std::exp(-z) * scaled_e1_cf(z);
    if (std::abs(z) < 40.0) return e1_series(z, side);
    return std::exp(-z) * scaled_e1_asymptotic(z);
}

cplx scaled_e1(cplx z, CutSide side) {
    if (z == cplx(0.0, 0.0)) throw SingularEvaluation("scaled_e1: logarithmic singularity at 0", z);
    if (on_negative_axis(z)) {
        const double x = -z.real();
        const double ex = std::exp(z.real());
        const double im = (side == CutSide::upper ? -pi : pi) * ex;
        if (x < 40.0) return cplx(-expint_ei(x) * ex, im);
        return cplx(scaled_e1_asymptotic(z).real(), im);
    }
    if (std::abs(z) <= 1.5) return std::exp(z) * e1_series(z, side);
    if (use_cf(z)) return scaled_e1_cf(z);
    if (std::abs(z) < 40.0) return std::exp(z) * e1_series(z, side);
    return scaled_e1_asymptotic(z);
}

} // namespace qnoise
