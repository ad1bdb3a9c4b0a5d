#include <doctest.h>

#include <algorithm>
#include <random>

#include <Eigen/Eigenvalues>

#include "qnoise/bloch.hpp"
#include "qnoise/noise.hpp"
#include "qnoise/qubit.hpp"

using namespace qnoise;

namespace {

Mat2c ket_density(cplx a, cplx b) {
    Eigen::Vector2cd k(a, b);
    return k * k.adjoint();
}

std::vector<cplx> sorted_eigs(const Mat4c& m) {
    Eigen::ComplexEigenSolver<Mat4c> es(m);
    std::vector<cplx> v;
    for (int i = 0; i < 4; ++i) v.push_back(es.eigenvalues()(i));
    std::sort(v.begin(), v.end(), [](cplx a, cplx b) { return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag(); });
    return v;
}

void check_same_set(std::vector<cplx> got, std::vector<cplx> want, double tol) {
    auto key = [](cplx a, cplx b) { return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag(); };
    std::sort(want.begin(), want.end(), key);
    REQUIRE(got.size() == want.size());
    for (std::size_t i = 0; i < got.size(); ++i) CHECK(std::abs(got[i] - want[i]) < tol);
}

} // namespace

TEST_CASE("orthonormal basis") {
    const auto b = HermitianBasis::orthonormal();
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            const cplx t = (b.elements[i] * b.elements[j]).trace();
            CHECK(std::abs(t - cplx(i == j ? 1.0 : 0.0)) < 1e-15);
        }
    CHECK((b.elements[0] - Mat2c::Identity() / std::sqrt(2.0)).norm() < 1e-15);
    CHECK(HermitianBasis::qubit_scale() == doctest::Approx(std::sqrt(2.0)));
}

TEST_CASE("vectorize examples") {
    CHECK(vectorize(ket_density(1, 0)).components() == Vec4(1, 0, 0, 1));
    CHECK(vectorize(Mat2c::Identity() * 0.5).components() == Vec4(1, 0, 0, 0));
    const double r = 1.0 / std::sqrt(2.0);
    CHECK((vectorize(ket_density(r, r)).components() - Vec4(1, 1, 0, 0)).norm() < 1e-15);
}

TEST_CASE("vectorize rejects bad input") {
    Mat2c nh = Mat2c::Zero();
    nh(0, 0) = 1.0;
    nh(0, 1) = 0.3;
    CHECK_THROWS_AS(vectorize(nh), InvalidArgument);
    CHECK_THROWS_AS(vectorize(Mat2c::Identity()), InvalidArgument);
    CHECK_NOTHROW(vectorize(Mat2c::Identity() * 0.5 + Mat2c::Identity() * 1e-12));
}

TEST_CASE("devectorize examples") {
    CHECK((devectorize(BlochVector(0, 0, 1)) - ket_density(1, 0)).norm() < 1e-15);
    CHECK((devectorize(BlochVector(0, 0, -1)) - ket_density(0, 1)).norm() < 1e-15);
    CHECK((devectorize(BlochVector(1, 0, 0)) - (Mat2c::Identity() + pauli::x()) / 2.0).norm() < 1e-15);
    CHECK_THROWS_AS(BlochVector::from_components(Vec4(0.9, 0, 0, 1)), InvalidArgument);
}

TEST_CASE("round trips") {
    std::mt19937_64 rng(5);
    std::normal_distribution<double> g;
    for (int k = 0; k < 50; ++k) {
        Vec3 x(g(rng), g(rng), g(rng));
        x *= std::uniform_real_distribution<double>(0, 1)(rng) / x.norm();
        const BlochVector v(x(0), x(1), x(2));
        CHECK((vectorize(devectorize(v)).components() - v.components()).norm() < 1e-15);
        const Mat2c rho = devectorize(v);
        CHECK((devectorize(vectorize(rho)) - rho).norm() < 1e-14);
    }
}

TEST_CASE("commutator superoperator examples") {
    const double dp = 0.7;
    const Superoperator L = commutator_superop(dp * pauli::z());
    Mat4 want = Mat4::Zero();
    want(2, 1) = 2 * dp;
    want(1, 2) = -2 * dp;
    CHECK((L.matrix - want).norm() < 1e-15);
    CHECK(commutator_superop(Mat2c::Zero()).matrix.norm() == 0.0);
    CHECK(commutator_superop(Mat2c::Identity()).matrix.norm() == 0.0);
    Mat2c bad = Mat2c::Zero();
    bad(0, 1) = 1.0;
    CHECK_THROWS_AS(commutator_superop(bad), InvalidArgument);
}

TEST_CASE("commutator action matches -i[H, rho] and generates rotations") {
    std::mt19937_64 rng(9);
    std::normal_distribution<double> g;
    for (int k = 0; k < 20; ++k) {
        Mat2c H = g(rng) * pauli::x() + g(rng) * pauli::y() + g(rng) * pauli::z() + g(rng) * Mat2c::Identity();
        const Superoperator L = commutator_superop(H);
        CHECK(L.is_rotation_generator());
        const BlochVector v(0.3, -0.2, 0.5);
        const Vec4 w = L.apply(v.components());
        Mat2c got = Mat2c::Zero();
        for (int i = 0; i < 4; ++i) got += w(i) * pauli::all()[i] * 0.5;
        const Mat2c rho = devectorize(v);
        const Mat2c want = cplx(0, -1) * (H * rho - rho * H);
        CHECK((got - want).norm() < 1e-12);
        const auto e = decompose(L);
        for (double t : {0.1, 1.0, 7.3}) {
            const Vec4 u = e.exp(t) * v.components();
            CHECK(u(0) == doctest::Approx(1.0).epsilon(1e-14));
            CHECK(u.tail<3>().norm() == doctest::Approx(v.components().tail<3>().norm()).epsilon(1e-12));
        }
    }
}

TEST_CASE("anticommutator superoperator examples") {
    const Superoperator Z = anticommutator_superop(pauli::z());
    CHECK((Z.apply(Vec4(1, 0, 0, 1)) - Vec4(2, 0, 0, 2)).norm() < 1e-15);
    CHECK(anticommutator_superop(Mat2c::Zero()).matrix.norm() == 0.0);
    const Superoperator X = anticommutator_superop(pauli::x());
    CHECK((X.apply(Vec4(1, 0, 0, 0)) - Vec4(0, 2, 0, 0)).norm() < 1e-15);
    CHECK((X.matrix - X.matrix.transpose()).norm() < 1e-15);
    // action check
    const Mat2c H = 0.4 * pauli::x() - 1.1 * pauli::y() + 0.2 * pauli::z();
    const BlochVector v(0.1, 0.2, -0.6);
    const Vec4 w = anticommutator_superop(H).apply(v.components());
    Mat2c got = Mat2c::Zero();
    for (int i = 0; i < 4; ++i) got += w(i) * pauli::all()[i] * 0.5;
    const Mat2c rho = devectorize(v);
    CHECK((got - (H * rho + rho * H)).norm() < 1e-12);
}

TEST_CASE("eigendecomposition reconstruction over gaps 1e-3 .. 1e3") {
    for (double d : {1e-3, 1e-2, 0.5, 1.0, 37.0, 1e3})
        for (double th : {0.3, 1.0, 1.5707963267948966, 2.5}) {
            const Mat2c H0 = 0.5 * d * sigma_theta(th);
            const Superoperator L = commutator_superop(H0);
            CHECK(decompose(L).reconstruction_error(L) <= 1e-12);
            CHECK(p_theta_decomposition(d, th).reconstruction_error(L) <= 1e-12);
            CHECK(decompose_general(L).reconstruction_error(L) <= 1e-12);
        }
    const Superoperator Lz = commutator_superop(0.5 * 2.0 * pauli::z());
    const auto e = eigen_frame_decomposition(2.0);
    CHECK(e.reconstruction_error(Lz) <= 1e-12);
    CHECK(std::abs(e.eigenvalues[0]) == 0.0);
    CHECK(std::abs(e.eigenvalues[1]) == 0.0);
    CHECK(std::abs(e.eigenvalues[2] - cplx(0, 2)) < 1e-15);
    CHECK(std::abs(e.eigenvalues[3] - cplx(0, -2)) < 1e-15);
}

TEST_CASE("matrix s-function examples") {
    const double D = 1.0;
    const auto e = eigen_frame_decomposition(D);
    const Mat4c one = matrix_s_function([](cplx) { return cplx(1.0); }, e, cplx(0.3, 0.2));
    CHECK((one - Mat4c::Identity()).norm() < 1e-14);

    const Mat4c res = matrix_s_function([](cplx z) { return 1.0 / z; }, e, cplx(1.0));
    check_same_set(sorted_eigs(res), {1.0, 1.0, 1.0 / cplx(1, -D), 1.0 / cplx(1, D)}, 1e-13);
    // it is the resolvent
    const Mat4c L = commutator_superop(0.5 * D * pauli::z()).matrix.cast<cplx>();
    CHECK((res - (Mat4c::Identity() - L).inverse()).norm() < 1e-13);

    const NoiseModel lor = NoiseModel::lorentzian(0.01, 2.0);
    const Mat4c G = matrix_s_function(lor.spectra().laplace_gamma, e, cplx(0.0));
    check_same_set(sorted_eigs(G), {0.02, 0.02, 0.01 / cplx(0.5, -1), 0.01 / cplx(0.5, 1)}, 1e-14);
}

TEST_CASE("matrix s-function: poles and linearity") {
    const auto e = eigen_frame_decomposition(1.0);
    try {
        matrix_s_function([](cplx z) -> cplx { if (z == cplx(0.0)) throw SingularEvaluation("pole", z); return 1.0 / z; }, e,
                          cplx(0.0, 1.0));
        FAIL("expected a singular evaluation");
    } catch (const SingularEvaluation& ex) {
        CHECK(std::abs(ex.where()) < 1e-15);
        CHECK(std::string(ex.what()).find("x = 0.000000+1.000000i") != std::string::npos);
    }
    CHECK_THROWS_AS(matrix_s_function([](cplx z) { return 1.0 / z; }, e, cplx(0.0)), SingularEvaluation);

    auto f = [](cplx z) { return std::exp(-z) / (z + 2.0); };
    auto g = [](cplx z) { return z * z - 3.0; };
    const cplx s(0.4, -0.9);
    const Mat4c sum = matrix_s_function([&](cplx z) { return f(z) + g(z); }, e, s);
    CHECK((sum - matrix_s_function(f, e, s) - matrix_s_function(g, e, s)).norm() < 1e-13);
}
