#include "opstar/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace opstar {

bool all_finite(const CMatrix& a) {
    for (Eigen::Index j = 0; j < a.cols(); ++j)
        for (Eigen::Index i = 0; i < a.rows(); ++i)
            if (!std::isfinite(a(i, j).real()) || !std::isfinite(a(i, j).imag()))
                return false;
    return true;
}

double op_norm(const CMatrix& a) {
    if (a.size() == 0) return 0.0;
    CMatrix g = a.adjoint() * a;
    Eigen::SelfAdjointEigenSolver<CMatrix> es(g, Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success) throw NoConvergence("op_norm: eigensolver failed");
    double top = es.eigenvalues().maxCoeff();
    return top > 0.0 ? std::sqrt(top) : 0.0;
}

EigenSystem herm_eig(const CMatrix& a, double tol) {
    if (a.rows() != a.cols()) throw DimensionMismatch("herm_eig: matrix not square");
    double scale = op_norm(a);
    if (op_norm(a - a.adjoint()) > tol * std::max(scale, 1.0))
        throw NotHermitian("herm_eig: input is not Hermitian within tolerance");
    Eigen::SelfAdjointEigenSolver<CMatrix> es((a + a.adjoint()) / 2.0);
    if (es.info() != Eigen::Success) throw NoConvergence("herm_eig: eigensolver failed");
    EigenSystem out;
    out.eigenvalues = es.eigenvalues().cast<Complex>();
    out.basis = es.eigenvectors();
    return out;
}

namespace {

// Sort eigenpairs by (re, im) lex order of the eigenvalue.
void sort_pairs(EigenSystem& sys) {
    const Eigen::Index n = sys.eigenvalues.size();
    std::vector<Eigen::Index> perm(static_cast<std::size_t>(n));
    std::iota(perm.begin(), perm.end(), 0);
    std::sort(perm.begin(), perm.end(), [&](Eigen::Index i, Eigen::Index j) {
        return lex_less(sys.eigenvalues(i), sys.eigenvalues(j));
    });
    CVector vals(n);
    CMatrix basis(sys.basis.rows(), n);
    for (Eigen::Index k = 0; k < n; ++k) {
        vals(k) = sys.eigenvalues(perm[static_cast<std::size_t>(k)]);
        basis.col(k) = sys.basis.col(perm[static_cast<std::size_t>(k)]);
    }
    sys.eigenvalues = vals;
    sys.basis = basis;
}

}  // namespace

EigenSystem normal_diag(const CMatrix& b, double tol) {
    if (b.rows() != b.cols()) throw DimensionMismatch("normal_diag: matrix not square");
    const Eigen::Index n = b.rows();
    double scale = op_norm(b);
    if (op_norm(b * b.adjoint() - b.adjoint() * b) > tol * std::max(scale * scale, 1.0))
        throw NotNormal("normal_diag: input is not normal within tolerance");

    CMatrix h = (b + b.adjoint()) / 2.0;
    CMatrix k = (b - b.adjoint()) / Complex(0.0, 2.0);

    Eigen::SelfAdjointEigenSolver<CMatrix> es(h);
    if (es.info() != Eigen::Success) throw NoConvergence("normal_diag: eigensolver failed");
    RVector hvals = es.eigenvalues();
    CMatrix u = es.eigenvectors();

    // Split clusters of h-eigenvalues by the anti-Hermitian part compressed
    // to each eigenspace.
    double gap = 1e-8 * (1.0 + hvals.cwiseAbs().maxCoeff());
    EigenSystem out;
    out.eigenvalues = CVector(n);
    out.basis = CMatrix(n, n);
    Eigen::Index start = 0;
    while (start < n) {
        Eigen::Index stop = start + 1;
        while (stop < n && hvals(stop) - hvals(stop - 1) <= gap) ++stop;
        Eigen::Index m = stop - start;
        CMatrix q = u.middleCols(start, m);
        Eigen::SelfAdjointEigenSolver<CMatrix> ks(q.adjoint() * k * q);
        if (ks.info() != Eigen::Success)
            throw NoConvergence("normal_diag: cluster eigensolver failed");
        CMatrix cols = q * ks.eigenvectors();
        for (Eigen::Index j = 0; j < m; ++j) {
            CVector v = cols.col(j);
            out.basis.col(start + j) = v;
            // Rayleigh quotient of b recovers the joint eigenvalue.
            out.eigenvalues(start + j) = v.dot(b * v);
        }
        start = stop;
    }
    sort_pairs(out);
    return out;
}

int eps_rank(const CMatrix& a, double tol) {
    if (a.size() == 0) return 0;
    Eigen::JacobiSVD<CMatrix> svd(a);
    RVector sv = svd.singularValues();
    double top = sv.size() > 0 ? sv(0) : 0.0;
    if (top <= 0.0) return 0;
    int r = 0;
    for (Eigen::Index i = 0; i < sv.size(); ++i)
        if (sv(i) > tol * top) ++r;
    return r;
}

CMatrix mat_inv(const CMatrix& a, double tol) {
    if (a.rows() != a.cols()) throw DimensionMismatch("mat_inv: matrix not square");
    Eigen::JacobiSVD<CMatrix> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
    RVector sv = svd.singularValues();
    const Eigen::Index n = a.rows();
    if (n == 0) return a;
    if (sv(n - 1) <= tol * sv(0))
        throw Singular("mat_inv: matrix is singular within tolerance");
    return svd.solve(CMatrix::Identity(n, n));
}

CVector eigvals(const CMatrix& a) {
    if (a.rows() != a.cols()) throw DimensionMismatch("eigvals: matrix not square");
    if (a.rows() == 0) return CVector(0);
    Eigen::ComplexEigenSolver<CMatrix> es(a, /*computeEigenvectors=*/false);
    if (es.info() != Eigen::Success) throw NoConvergence("eigvals: eigensolver failed");
    CVector vals = es.eigenvalues();
    std::sort(vals.data(), vals.data() + vals.size(), lex_less);
    return vals;
}

CMatrix range_basis(const CMatrix& a, double tol) {
    if (a.size() == 0) return CMatrix(a.rows(), 0);
    Eigen::JacobiSVD<CMatrix> svd(a, Eigen::ComputeThinU);
    RVector sv = svd.singularValues();
    double top = sv.size() > 0 ? sv(0) : 0.0;
    int r = 0;
    for (Eigen::Index i = 0; i < sv.size(); ++i)
        if (top > 0.0 && sv(i) > tol * top) ++r;
    return svd.matrixU().leftCols(r);
}

}  // namespace opstar
