#include <doctest.h>

#include "qnoise/expint.hpp"

using namespace qnoise;
using cplx = std::complex<double>;

// reference values from mpmath at 30 digits
TEST_CASE("E1 against frozen high-precision values") {
    const std::pair<cplx, cplx> ref[] = {
        {cplx(0.1, 0.0), cplx(1.8229239584193906159, 0.0)},
        {cplx(1.0, 0.0), cplx(0.21938393439552027368, 0.0)},
        {cplx(2.5, 0.0), cplx(0.024914917870269735496, 0.0)},
        {cplx(10.0, 0.0), cplx(4.1569689296853242774e-6, 0.0)},
        {cplx(45.0, 0.0), cplx(6.2256908094623836431e-22, 0.0)},
        {cplx(0.5, 0.5), cplx(0.25786645713798380334, -0.39669043545581521376)},
        {cplx(-3.0, 4.0), cplx(4.1540916516426898225, 1.1528259664345642385)},
        {cplx(2.0, -7.0), cplx(-0.0056155636015454354117, 0.016702346463099350286)},
        {cplx(-20.0, 1.0), cplx(-14940241.028177593355, 20762891.660880790675)},
        {cplx(-0.7, -0.2), cplx(-1.0880142067614766444, 2.5744063847090199697)},
        {cplx(0.01, 30.0), cplx(0.032704706150876472928, -0.0039886803734822438801)},
        {cplx(-50.0, 2.0), cplx(40052650284197865658.0, 97891103047798913727.0)},
    };
    for (const auto& [z, want] : ref) {
        CAPTURE(z);
        const cplx got = expint_e1(z);
        CHECK(std::abs(got - want) <= 1e-13 * std::abs(want));
        CHECK(std::abs(scaled_e1(z) - std::exp(z) * want) <= 1e-13 * std::abs(std::exp(z) * want));
    }
}

TEST_CASE("E1 on the negative real axis picks the requested side") {
    const double ei2 = 4.9542343560018901634;
    CHECK(expint_ei(2.0) == doctest::Approx(ei2).epsilon(1e-14));
    const cplx up = expint_e1(cplx(-2.0, 0.0), CutSide::upper);
    const cplx lo = expint_e1(cplx(-2.0, 0.0), CutSide::lower);
    CHECK(up.real() == doctest::Approx(-ei2).epsilon(1e-14));
    CHECK(lo.real() == doctest::Approx(-ei2).epsilon(1e-14));
    CHECK(std::abs(up.imag() + M_PI) < 1e-14);
    CHECK(std::abs(lo.imag() - M_PI) < 1e-14);
    // continuity from each side
    CHECK(std::abs(expint_e1(cplx(-2.0, 1e-12)) - up) < 1e-10);
    CHECK(std::abs(expint_e1(cplx(-2.0, -1e-12)) - lo) < 1e-10);
}

TEST_CASE("E1 conjugate symmetry off the cut") {
    for (cplx z : {cplx(0.3, 2.0), cplx(-4.0, 0.5), cplx(12.0, -3.0), cplx(-30.0, 7.0)})
        CHECK(std::abs(expint_e1(std::conj(z)) - std::conj(expint_e1(z))) <= 1e-14 * std::abs(expint_e1(z)));
}
