// Exponential integrals used by the ohmic noise transform.
#pragma once

#include <complex>

namespace qnoise {

enum class CutSide { upper, lower };

// Principal-branch E1(z). For z exactly on the negative real axis the value on
// the requested side of the cut is returned: E1(-x +/- i0) = -Ei(x) -/+ i*pi.
std::complex<double> expint_e1(std::complex<double> z, CutSide side = CutSide::upper);

// e^z E1(z), computed without overflow for large |z|.
std::complex<double> scaled_e1(std::complex<double> z, CutSide side = CutSide::upper);

// Exponential integral Ei(x) for real x > 0.
double expint_ei(double x);

} // namespace qnoise
