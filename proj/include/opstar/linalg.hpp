#pragma once

#include <Eigen/Dense>
#include <complex>
#include <vector>

#include "opstar/errors.hpp"

namespace opstar {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RVector = Eigen::VectorXd;

inline constexpr double kDefaultTol = 1e-9;
inline constexpr std::uint64_t kDefaultSeed = 0xC5A1;

/// Eigenvalues sorted ascending lexicographically on (re, im), together
/// with a unitary matrix of column eigenvectors.
struct EigenSystem {
    CVector eigenvalues;
    CMatrix basis;
};

// Lexicographic order on (re, im).
inline bool lex_less(const Complex& a, const Complex& b) {
    if (a.real() != b.real()) return a.real() < b.real();
    return a.imag() < b.imag();
}

bool all_finite(const CMatrix& a);

/// Operator (spectral) norm, computed as sqrt of the top eigenvalue of a*a.
double op_norm(const CMatrix& a);

/// Eigendecomposition of a Hermitian matrix, eigenvalues ascending.
EigenSystem herm_eig(const CMatrix& a, double tol = kDefaultTol);

/// Unitary diagonalization of a normal matrix via its commuting
/// Hermitian and anti-Hermitian parts, eigenvalues sorted (re, im) lex.
EigenSystem normal_diag(const CMatrix& b, double tol = kDefaultTol);

/// Number of singular values above tol times the largest one.
int eps_rank(const CMatrix& a, double tol = kDefaultTol);

/// Inverse of a well-conditioned square matrix; throws Singular otherwise.
CMatrix mat_inv(const CMatrix& a, double tol = kDefaultTol);

/// Eigenvalues of an arbitrary square matrix, sorted (re, im) lex.
CVector eigvals(const CMatrix& a);

/// Orthonormal basis of the column span of a, as matrix columns.
CMatrix range_basis(const CMatrix& a, double tol = kDefaultTol);

}  // namespace opstar
