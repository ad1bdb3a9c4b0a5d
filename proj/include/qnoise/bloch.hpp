// bloch.hpp - augmented Bloch vectors and qubit superoperators
//
// Qubit convention: rho = (v0 I + v1 sx + v2 sy + v3 sz) / 2, so v_i = Tr(rho s_i)
// and v0 == 1 for a normalized state. The strictly orthonormal basis
// M_i = s_i / sqrt(2) (Tr(M_i M_j) = delta_ij) is available from HermitianBasis;
// its coordinates are the qubit ones divided by sqrt(2).

#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <string>

#include <Eigen/Dense>

#include "qnoise/error.hpp"

namespace qnoise {

using cplx = std::complex<double>;
using Mat2c = Eigen::Matrix2cd;
using Mat4 = Eigen::Matrix4d;
using Mat4c = Eigen::Matrix4cd;
using Vec3 = Eigen::Vector3d;
using Vec4 = Eigen::Vector4d;
using Vec4c = Eigen::Vector4cd;

namespace pauli {
Mat2c identity();
Mat2c x();
Mat2c y();
Mat2c z();
// s_0 = I, s_1 = sx, s_2 = sy, s_3 = sz
const std::array<Mat2c, 4>& all();
} // namespace pauli

struct HermitianBasis {
    std::array<Mat2c, 4> elements;

    // M_i = s_i / sqrt(2); orthonormal under the trace inner product.
    static HermitianBasis orthonormal();
    // Multiply orthonormal coordinates by this to get qubit (v0 == 1) coordinates.
    static double qubit_scale() { return 1.4142135623730951; }
};

class BlochVector {
public:
    BlochVector() : v_(1.0, 0.0, 0.0, 0.0) {}
    BlochVector(double x, double y, double z) : v_(1.0, x, y, z) {}

    // Throws InvalidArgument unless v(0) == 1.
    static BlochVector from_components(const Vec4& v);

    const Vec4& components() const { return v_; }
    double operator[](int i) const { return v_(i); }
    double radius() const { return v_.tail<3>().norm(); }
    bool is_physical(double eps) const { return radius() <= 1.0 + eps; }

    static BlochVector zero_charge() { return {0.0, 0.0, 1.0}; }
    static BlochVector one_charge() { return {0.0, 0.0, -1.0}; }
    static BlochVector maximally_mixed() { return {}; }

private:
    Vec4 v_;
};

// 4x4 real matrix acting on augmented Bloch components.
struct Superoperator {
    Mat4 matrix = Mat4::Zero();

    Vec4 apply(const Vec4& v) const { return matrix * v; }
    // Rotation-generator view of a commutator superoperator: the lower-right
    // 3x3 block equals [w]x. Only meaningful when is_rotation_generator().
    Vec3 rotation_vector() const;
    bool is_rotation_generator(double tol = 1e-14) const;
};

// Columns of P are right eigenvectors: L = P * diag(eigenvalues) * P_inv.
struct SuperopEigendecomposition {
    std::array<cplx, 4> eigenvalues{};
    Mat4c P = Mat4c::Identity();
    Mat4c P_inv = Mat4c::Identity();

    Mat4c reconstruct() const;
    // ||reconstruct() - L|| / max(||L||, 1), Frobenius norms.
    double reconstruction_error(const Superoperator& L) const;
    // exp(t L) as a real matrix.
    Mat4 exp(double t) const;
};

// Bloch components Tr(X s_i) of an arbitrary 2x2 matrix (no checks).
Vec4c bloch_components(const Mat2c& X);

BlochVector vectorize(const Mat2c& rho, double tol = 1e-10);
Mat2c devectorize(const BlochVector& v);

Superoperator commutator_superop(const Mat2c& H, double tol = 1e-10);
Superoperator anticommutator_superop(const Mat2c& H, double tol = 1e-10);

// Closed-form decomposition for a rotation generator (first row/column zero,
// antisymmetric 3x3 block): eigenvalues {0, 0, +i|w|, -i|w|}.
SuperopEigendecomposition decompose_rotation(const Superoperator& L);
// General complex eigensolver; throws ConvergenceError if the reconstruction
// error exceeds tol.
SuperopEigendecomposition decompose_general(const Superoperator& L, double tol = 1e-12);
// Rotation path when applicable, general path otherwise.
SuperopEigendecomposition decompose(const Superoperator& L);

// f(sI - L) = P * diag(f(s - x_i)) * P_inv. A SingularEvaluation thrown
// by f (or a non-finite value) is rethrown naming the eigenvalue involved.
template <class F>
Mat4c matrix_s_function(F&& f, const SuperopEigendecomposition& eig, cplx s) {
    Eigen::Vector4cd d;
    for (int i = 0; i < 4; ++i) {
        const cplx x = eig.eigenvalues[static_cast<std::size_t>(i)];
        cplx value;
        try {
            value = f(s - x);
        } catch (const SingularEvaluation& e) {
            throw SingularEvaluation(std::string(e.what()) + " (at s - x with x = " +
                                         std::to_string(x.real()) + "+" +
                                         std::to_string(x.imag()) + "i)",
                                     s - x);
        }
        if (!std::isfinite(value.real()) || !std::isfinite(value.imag())) {
            throw SingularEvaluation("matrix s-function: non-finite value at eigenvalue " +
                                         std::to_string(x.real()) + "+" +
                                         std::to_string(x.imag()) + "i",
                                     s - x);
        }
        d(i) = value;
    }
    return eig.P * d.asDiagonal() * eig.P_inv;
}

} // namespace qnoise
