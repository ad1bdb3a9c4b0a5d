#include "qnoise/bloch.hpp"

#include <Eigen/Eigenvalues>

namespace qnoise {

namespace pauli {
Mat2c identity() { return Mat2c::Identity(); }
Mat2c x() {
    Mat2c m;
    m << 0, 1, 1, 0;
    return m;
}
Mat2c y() {
    Mat2c m;
    m << 0, cplx(0, -1), cplx(0, 1), 0;
    return m;
}
Mat2c z() {
    Mat2c m;
    m << 1, 0, 0, -1;
    return m;
}
const std::array<Mat2c, 4>& all() {
    static const std::array<Mat2c, 4> s{identity(), x(), y(), z()};
    return s;
}
} // namespace pauli

HermitianBasis HermitianBasis::orthonormal() {
    HermitianBasis b;
    const double r = 1.0 / std::sqrt(2.0);
    for (int i = 0; i < 4; ++i) b.elements[static_cast<std::size_t>(i)] = pauli::all()[static_cast<std::size_t>(i)] * r;
    return b;
}

BlochVector BlochVector::from_components(const Vec4& v) {
    if (v(0) != 1.0) throw InvalidArgument("bloch vector: v0 must be exactly 1, got " + std::to_string(v(0)));
    BlochVector b;
    b.v_ = v;
    return b;
}

Vec3 Superoperator::rotation_vector() const {
    return {matrix(3, 2), matrix(1, 3), matrix(2, 1)};
}

bool Superoperator::is_rotation_generator(double tol) const {
    const double scale = std::max(1.0, matrix.cwiseAbs().maxCoeff());
    for (int i = 0; i < 4; ++i) {
        if (std::abs(matrix(0, i)) > tol * scale || std::abs(matrix(i, 0)) > tol * scale) return false;
    }
    for (int i = 1; i < 4; ++i)
        for (int j = i; j < 4; ++j)
            if (std::abs(matrix(i, j) + matrix(j, i)) > tol * scale) return false;
    return true;
}

Mat4c SuperopEigendecomposition::reconstruct() const {
    Eigen::Vector4cd d;
    for (int i = 0; i < 4; ++i) d(i) = eigenvalues[static_cast<std::size_t>(i)];
    return P * d.asDiagonal() * P_inv;
}

double SuperopEigendecomposition::reconstruction_error(const Superoperator& L) const {
    const Mat4c diff = reconstruct() - L.matrix.cast<cplx>();
    return diff.norm() / std::max(L.matrix.norm(), 1.0);
}

Mat4 SuperopEigendecomposition::exp(double t) const {
    Eigen::Vector4cd d;
    for (int i = 0; i < 4; ++i) d(i) = std::exp(eigenvalues[static_cast<std::size_t>(i)] * t);
    return (P * d.asDiagonal() * P_inv).real();
}

Vec4c bloch_components(const Mat2c& X) {
    Vec4c v;
    for (int i = 0; i < 4; ++i) v(i) = (X * pauli::all()[static_cast<std::size_t>(i)]).trace();
    return v;
}

namespace {

void require_hermitian(const Mat2c& H, double tol, const char* who) {
    const double err = (H - H.adjoint()).cwiseAbs().maxCoeff();
    if (err > tol) throw InvalidArgument(std::string(who) + ": matrix is not Hermitian (deviation " + std::to_string(err) + ")");
}

template <class Op>
Superoperator superop_from(Op op) {
    Superoperator L;
    for (int j = 0; j < 4; ++j) {
        const Mat2c basis = pauli::all()[static_cast<std::size_t>(j)] * 0.5;
        L.matrix.col(j) = bloch_components(op(basis)).real();
    }
    return L;
}

} // namespace

BlochVector vectorize(const Mat2c& rho, double tol) {
    require_hermitian(rho, tol, "vectorize");
    const cplx tr = rho.trace();
    if (std::abs(tr - 1.0) > tol) throw InvalidArgument("vectorize: trace is " + std::to_string(tr.real()) + ", expected 1");
    const Vec4c c = bloch_components(rho);
    return {c(1).real(), c(2).real(), c(3).real()};
}

Mat2c devectorize(const BlochVector& v) {
    Mat2c rho = Mat2c::Zero();
    for (int i = 0; i < 4; ++i) rho += v[i] * pauli::all()[static_cast<std::size_t>(i)];
    return rho * 0.5;
}

Superoperator commutator_superop(const Mat2c& H, double tol) {
    require_hermitian(H, tol, "commutator_superop");
    const cplx mi(0, -1);
    Superoperator L = superop_from([&](const Mat2c& X) -> Mat2c { return mi * (H * X - X * H); });
    L.matrix.row(0).setZero();
    L.matrix.col(0).setZero();
    return L;
}

Superoperator anticommutator_superop(const Mat2c& H, double tol) {
    require_hermitian(H, tol, "anticommutator_superop");
    return superop_from([&](const Mat2c& X) -> Mat2c { return H * X + X * H; });
}

SuperopEigendecomposition decompose_rotation(const Superoperator& L) {
    if (!L.is_rotation_generator(1e-12)) throw InvalidArgument("decompose_rotation: not a rotation generator");
    const Vec3 w = L.rotation_vector();
    const double omega = w.norm();
    SuperopEigendecomposition e;
    if (omega == 0.0) {
        e.eigenvalues = {0.0, 0.0, 0.0, 0.0};
        return e;
    }
    const Vec3 n = w / omega;
    // any unit vector orthogonal to n, then e2 = n x e1
    Vec3 seed = std::abs(n(0)) < 0.9 ? Vec3::UnitX() : Vec3::UnitY();
    Vec3 e1 = (seed - n.dot(seed) * n).normalized();
    Vec3 e2 = n.cross(e1);
    const double r = 1.0 / std::sqrt(2.0);
    Eigen::Vector3cd up = (e1.cast<cplx>() - cplx(0, 1) * e2.cast<cplx>()) * r;
    e.P = Mat4c::Zero();
    e.P(0, 0) = 1.0;
    e.P.block<3, 1>(1, 1) = n.cast<cplx>();
    e.P.block<3, 1>(1, 2) = up;
    e.P.block<3, 1>(1, 3) = up.conjugate();
    e.P_inv = e.P.adjoint();
    e.eigenvalues = {0.0, 0.0, cplx(0, omega), cplx(0, -omega)};
    return e;
}

SuperopEigendecomposition decompose_general(const Superoperator& L, double tol) {
    Eigen::ComplexEigenSolver<Mat4c> solver(L.matrix.cast<cplx>());
    if (solver.info() != Eigen::Success) throw ConvergenceError("decompose_general: eigensolver failed", {});
    SuperopEigendecomposition e;
    e.P = solver.eigenvectors();
    Eigen::FullPivLU<Mat4c> lu(e.P);
    if (!lu.isInvertible()) throw ConvergenceError("decompose_general: superoperator is not diagonalizable", {});
    e.P_inv = lu.inverse();
    std::vector<cplx> ev;
    for (int i = 0; i < 4; ++i) {
        e.eigenvalues[static_cast<std::size_t>(i)] = solver.eigenvalues()(i);
        ev.push_back(solver.eigenvalues()(i));
    }
    const double err = e.reconstruction_error(L);
    if (err > tol)
        throw ConvergenceError("decompose_general: reconstruction error " + std::to_string(err) + " exceeds tolerance", ev);
    return e;
}

SuperopEigendecomposition decompose(const Superoperator& L) {
    if (L.is_rotation_generator(1e-12)) return decompose_rotation(L);
    return decompose_general(L);
}

} // namespace qnoise
