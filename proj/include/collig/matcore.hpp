#pragma once

// Dense complex linear algebra shared by every other module.
//
// Tensor products follow the ordering e_1(x)f_1, ..., e_p(x)f_1, e_1(x)f_2, ...
// so kron(A, B) is the block matrix whose (mu, nu) block is B(mu, nu) * A.
// With this ordering kron(identity(j), S) is the matrix with blocks
// s_{mu nu} * 1_j used throughout the characteristic-function formulas.

#include <complex>
#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "collig/errors.hpp"

namespace collig {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using Index = Eigen::Index;

struct ToleranceConfig {
    double atol = 1e-9;
    double cond_cap = 1e12;

    /// Throws InvalidArgument unless atol > 0 and cond_cap > 1.
    void validate() const;
};

/// Seeded generator passed by value or reference; the library holds no global RNG state.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    double normal() { return normal_(engine_); }
    double uniform() { return uniform_(engine_); }  // in [0, 1)
    std::uint64_t next() { return engine_(); }
    Complex complex_normal();  // E|z|^2 = 1

    /// Independent child stream; deterministic in (parent state, salt).
    Rng split(std::uint64_t salt);

private:
    std::mt19937_64 engine_;
    std::normal_distribution<double> normal_{0.0, 1.0};
    std::uniform_real_distribution<double> uniform_{0.0, 1.0};
};

/// Builds a matrix from row-major data, rejecting non-finite entries.
ComplexMatrix make_matrix(Index rows, Index cols, std::span<const Complex> row_major);
bool all_finite(const ComplexMatrix& m);

ComplexMatrix identity(Index n);
ComplexMatrix zeros(Index rows, Index cols);
ComplexMatrix block_diag(const ComplexMatrix& a, const ComplexMatrix& b);

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

/// Largest singular value. Full SVD up to dimension 64, power iteration on z*z above.
double op_norm(const ComplexMatrix& z);
Eigen::VectorXd singular_values(const ComplexMatrix& z);  // descending

bool is_unitary(const ComplexMatrix& u, const ToleranceConfig& tol = {});
double unitarity_defect(const ComplexMatrix& u);  // op_norm(U*U - 1)

/// J = diag(-1_n, 1_n).
ComplexMatrix pseudo_unitary_form(Index n);
bool is_pseudo_unitary(const ComplexMatrix& g, Index n, const ToleranceConfig& tol = {});
/// g^{-1} = J g* J for g in U(n,n).
ComplexMatrix pseudo_unitary_inverse(const ComplexMatrix& g, Index n);

ComplexMatrix haar_unitary(Index n, Rng& rng);
ComplexMatrix haar_unitary(Index n, std::uint64_t seed);
ComplexMatrix ginibre(Index rows, Index cols, Rng& rng);

/// Random point of the matrix ball with op_norm <= radius (< 1).
ComplexMatrix sample_ball_point(Index m, double radius, Rng& rng);
ComplexMatrix sample_ball_point(Index m, double radius, std::uint64_t seed);

/// Reciprocal condition number estimate 1/cond_2 computed from singular values.
double inverse_condition(const ComplexMatrix& m);

/// Cheap reciprocal condition estimate from an LU factorization: the smaller of
/// Eigen's 1-norm estimate and min|u_ii| / max|u_ii|. Zero for exactly singular input.
double lu_rcond(const Eigen::PartialPivLU<ComplexMatrix>& lu);

/// Solves m * x = rhs. Throws SingularPivot when the estimated cond_1(m) exceeds tol.cond_cap.
ComplexMatrix guarded_solve(const ComplexMatrix& m, const ComplexMatrix& rhs,
                            const ToleranceConfig& tol, const char* what);

/// Returns m^{-1/2} for Hermitian positive definite m; eigenvalues are clamped at 0.
ComplexMatrix hermitian_inverse_sqrt(const ComplexMatrix& m);

/// Permutation matrix P with P(perm[i], i) = 1, i.e. P * e_i = e_{perm[i]}.
ComplexMatrix permutation_matrix(std::span<const Index> perm);

/// Frobenius-norm distance; used for pointwise comparisons in tests and reports.
double distance(const ComplexMatrix& a, const ComplexMatrix& b);

}  // namespace collig
