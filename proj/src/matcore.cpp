#include "collig/matcore.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace collig {

namespace {

constexpr Index kFullSvdLimit = 64;

double power_iteration_norm(const ComplexMatrix& z) {
    const ComplexMatrix gram = z.adjoint() * z;
    Eigen::VectorXcd v = Eigen::VectorXcd::Ones(gram.cols()) / std::sqrt(static_cast<double>(gram.cols()));
    // Perturb the start vector so it is not orthogonal to the top eigenvector.
    for (Index i = 0; i < v.size(); ++i) v(i) *= Complex(1.0, 1e-3 * static_cast<double>(i % 7));
    v.normalize();
    double lambda = 0.0;
    for (int it = 0; it < 10000; ++it) {
        Eigen::VectorXcd w = gram * v;
        const double next = w.norm();
        if (next == 0.0) return 0.0;
        v = w / next;
        if (std::abs(next - lambda) <= 1e-12 * std::max(1.0, next)) {
            lambda = next;
            break;
        }
        lambda = next;
    }
    return std::sqrt(lambda);
}

}  // namespace

void ToleranceConfig::validate() const {
    if (!(atol > 0.0) || !std::isfinite(atol)) throw InvalidArgument("atol must be positive");
    if (!(cond_cap > 1.0)) throw InvalidArgument("cond_cap must exceed 1");
}

Complex Rng::complex_normal() {
    const double re = normal();
    const double im = normal();
    return Complex(re, im) / std::sqrt(2.0);
}

Rng Rng::split(std::uint64_t salt) {
    std::seed_seq seq{static_cast<std::uint32_t>(next()), static_cast<std::uint32_t>(salt),
                      static_cast<std::uint32_t>(salt >> 32)};
    std::uint32_t words[2];
    seq.generate(words, words + 2);
    return Rng((static_cast<std::uint64_t>(words[0]) << 32) | words[1]);
}

bool all_finite(const ComplexMatrix& m) {
    for (Index c = 0; c < m.cols(); ++c)
        for (Index r = 0; r < m.rows(); ++r)
            if (!std::isfinite(m(r, c).real()) || !std::isfinite(m(r, c).imag())) return false;
    return true;
}

ComplexMatrix make_matrix(Index rows, Index cols, std::span<const Complex> row_major) {
    if (rows < 0 || cols < 0 || static_cast<std::size_t>(rows * cols) != row_major.size())
        throw DimensionMismatch("entry count " + std::to_string(row_major.size()) + " != " +
                                std::to_string(rows) + "x" + std::to_string(cols));
    ComplexMatrix m(rows, cols);
    for (Index r = 0; r < rows; ++r)
        for (Index c = 0; c < cols; ++c) {
            const Complex v = row_major[static_cast<std::size_t>(r * cols + c)];
            if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
                throw InvalidArgument("non-finite matrix entry");
            m(r, c) = v;
        }
    return m;
}

ComplexMatrix identity(Index n) { return ComplexMatrix::Identity(n, n); }

ComplexMatrix zeros(Index rows, Index cols) { return ComplexMatrix::Zero(rows, cols); }

ComplexMatrix block_diag(const ComplexMatrix& a, const ComplexMatrix& b) {
    ComplexMatrix out = ComplexMatrix::Zero(a.rows() + b.rows(), a.cols() + b.cols());
    out.topLeftCorner(a.rows(), a.cols()) = a;
    out.bottomRightCorner(b.rows(), b.cols()) = b;
    return out;
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
    const Index ar = a.rows(), ac = a.cols();
    ComplexMatrix out(ar * b.rows(), ac * b.cols());
    for (Index mu = 0; mu < b.rows(); ++mu)
        for (Index nu = 0; nu < b.cols(); ++nu) out.block(mu * ar, nu * ac, ar, ac) = b(mu, nu) * a;
    return out;
}

Eigen::VectorXd singular_values(const ComplexMatrix& z) {
    if (z.size() == 0) return Eigen::VectorXd();
    Eigen::JacobiSVD<ComplexMatrix> svd(z);
    return svd.singularValues();
}

double op_norm(const ComplexMatrix& z) {
    if (z.size() == 0) return 0.0;
    if (std::max(z.rows(), z.cols()) <= kFullSvdLimit) return singular_values(z)(0);
    return power_iteration_norm(z);
}

double unitarity_defect(const ComplexMatrix& u) {
    if (u.rows() != u.cols()) throw DimensionMismatch("unitarity check needs a square matrix");
    return op_norm(u.adjoint() * u - identity(u.rows()));
}

bool is_unitary(const ComplexMatrix& u, const ToleranceConfig& tol) {
    if (u.rows() != u.cols()) return false;
    if (u.rows() == 0) return true;
    return unitarity_defect(u) <= tol.atol * static_cast<double>(u.rows());
}

ComplexMatrix pseudo_unitary_form(Index n) {
    ComplexMatrix j = identity(2 * n);
    j.topLeftCorner(n, n) *= -1.0;
    return j;
}

bool is_pseudo_unitary(const ComplexMatrix& g, Index n, const ToleranceConfig& tol) {
    if (g.rows() != 2 * n || g.cols() != 2 * n)
        throw DimensionMismatch("pseudo-unitary check expects a " + std::to_string(2 * n) + "x" +
                                std::to_string(2 * n) + " matrix");
    if (n == 0) return true;
    const ComplexMatrix j = pseudo_unitary_form(n);
    return op_norm(g * j * g.adjoint() - j) <= tol.atol * static_cast<double>(2 * n);
}

ComplexMatrix pseudo_unitary_inverse(const ComplexMatrix& g, Index n) {
    const ComplexMatrix j = pseudo_unitary_form(n);
    return j * g.adjoint() * j;
}

ComplexMatrix ginibre(Index rows, Index cols, Rng& rng) {
    ComplexMatrix g(rows, cols);
    for (Index r = 0; r < rows; ++r)
        for (Index c = 0; c < cols; ++c) g(r, c) = rng.complex_normal();
    return g;
}

ComplexMatrix haar_unitary(Index n, Rng& rng) {
    if (n < 0) throw InvalidArgument("negative dimension");
    if (n == 0) return ComplexMatrix(0, 0);
    const ComplexMatrix z = ginibre(n, n, rng);
    Eigen::HouseholderQR<ComplexMatrix> qr(z);
    ComplexMatrix q = qr.householderQ() * identity(n);
    const ComplexMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (Index i = 0; i < n; ++i) {
        const Complex d = r(i, i);
        const double mag = std::abs(d);
        q.col(i) *= mag > 0.0 ? d / mag : Complex(1.0);
    }
    return q;
}

ComplexMatrix haar_unitary(Index n, std::uint64_t seed) {
    Rng rng(seed);
    return haar_unitary(n, rng);
}

ComplexMatrix sample_ball_point(Index m, double radius, Rng& rng) {
    if (!(radius >= 0.0 && radius < 1.0)) throw InvalidArgument("radius must lie in [0, 1)");
    if (m == 0) return ComplexMatrix(0, 0);
    const ComplexMatrix g = ginibre(m, m, rng);
    const double scale = 1.0 - rng.uniform();  // (0, 1]
    const double norm = op_norm(g);
    if (radius == 0.0 || norm == 0.0) return zeros(m, m);
    return (radius * scale / norm) * g;
}

ComplexMatrix sample_ball_point(Index m, double radius, std::uint64_t seed) {
    Rng rng(seed);
    return sample_ball_point(m, radius, rng);
}

double inverse_condition(const ComplexMatrix& m) {
    if (m.size() == 0) return 1.0;
    const Eigen::VectorXd s = singular_values(m);
    const double top = s(0);
    if (top == 0.0) return 0.0;
    return s(s.size() - 1) / top;
}

double lu_rcond(const Eigen::PartialPivLU<ComplexMatrix>& lu) {
    const ComplexMatrix& factors = lu.matrixLU();
    if (factors.rows() == 0) return 1.0;
    // Eigen's estimate is NaN-driven to 1 when a pivot is exactly zero.
    const Eigen::VectorXd pivots = factors.diagonal().cwiseAbs();
    const double largest = pivots.maxCoeff();
    if (!(largest > 0.0) || !std::isfinite(largest)) return 0.0;
    const double estimate = lu.rcond();
    const double ratio = pivots.minCoeff() / largest;
    if (!std::isfinite(estimate)) return 0.0;
    return std::min(estimate, ratio);
}

ComplexMatrix guarded_solve(const ComplexMatrix& m, const ComplexMatrix& rhs, const ToleranceConfig& tol,
                            const char* what) {
    if (m.rows() != m.cols() || m.rows() != rhs.rows())
        throw DimensionMismatch(std::string(what) + ": incompatible linear system");
    if (m.rows() == 0) return ComplexMatrix(0, rhs.cols());
    const Eigen::PartialPivLU<ComplexMatrix> lu(m);
    const double rcond = lu_rcond(lu);
    if (!(rcond * tol.cond_cap >= 1.0))
        throw SingularPivot(std::string(what) + ": condition number exceeds cap");
    // The estimate can miss exact zero pivots, which surface as inf/NaN in the solution.
    ComplexMatrix x = lu.solve(rhs);
    if (!all_finite(x)) throw SingularPivot(std::string(what) + ": singular system");
    return x;
}

ComplexMatrix hermitian_inverse_sqrt(const ComplexMatrix& m) {
    if (m.size() == 0) return m;
    const ComplexMatrix h = 0.5 * (m + m.adjoint());
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> eig(h);
    Eigen::VectorXd w = eig.eigenvalues();
    for (Index i = 0; i < w.size(); ++i) {
        const double clamped = std::max(w(i), 0.0);
        if (clamped == 0.0) throw SingularPivot("inverse square root of a singular matrix");
        w(i) = 1.0 / std::sqrt(clamped);
    }
    return eig.eigenvectors() * w.cast<Complex>().asDiagonal() * eig.eigenvectors().adjoint();
}

ComplexMatrix permutation_matrix(std::span<const Index> perm) {
    const auto n = static_cast<Index>(perm.size());
    ComplexMatrix p = zeros(n, n);
    for (Index i = 0; i < n; ++i) p(perm[static_cast<std::size_t>(i)], i) = 1.0;
    return p;
}

double distance(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) throw DimensionMismatch("distance between different shapes");
    return (a - b).norm();
}

}  // namespace collig
