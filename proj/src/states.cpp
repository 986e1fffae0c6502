#include "opstar/states.hpp"

#include <algorithm>
#include <random>

namespace opstar {

CMatrix gram_matrix(const LinearFunctional& phi) {
    const StarAlgebra& A = *phi.algebra;
    CMatrix G(A.dim, A.dim);
    for (int i = 0; i < A.dim; ++i)
        for (int j = 0; j < A.dim; ++j) {
            Complex v = 0;
            // e_i^* = sum_k involution(i,k) e_k.
            for (int k = 0; k < A.dim; ++k) {
                if (A.involution(i, k) == Complex(0)) continue;
                v += A.involution(i, k) *
                     (A.structure[k].row(j) * phi.row.transpose()).value();
            }
            G(i, j) = v;
        }
    return G;
}

FunctionalWitness is_positive_functional(const LinearFunctional& phi, double tol) {
    CMatrix G = gram_matrix(phi);
    FunctionalWitness w;
    double scale = std::max(1.0, G.norm());
    w.hermitian_residual = (G - G.adjoint()).norm();
    auto sys = herm_eig((G + G.adjoint()) / 2.0, tol);
    w.min_eigenvalue = sys.eigenvalues(0).real();
    w.positive = w.hermitian_residual <= std::max(tol, 1e-8) * scale &&
                 w.min_eigenvalue >= -std::max(tol, 1e-8) * scale;
    return w;
}

double variation(const LinearFunctional& phi, double tol) {
    if (!is_positive_functional(phi, tol).positive)
        throw NotPositive("variation: functional is not positive");
    const StarAlgebra& A = *phi.algebra;
    if (A.has_unit()) {
        Complex v = (phi.row * A.unit_coords).value();
        return v.real();
    }
    CMatrix G = gram_matrix(phi);
    G = (G + G.adjoint()) / 2.0;
    auto sys = herm_eig(G, tol);
    double top = std::max(1.0, sys.eigenvalues(A.dim - 1).real());
    CVector r = phi.row.adjoint();  // |phi(a)|^2 = a^H r r^H a
    double v = 0, kernel_part = 0;
    for (int k = 0; k < A.dim; ++k) {
        double d = sys.eigenvalues(k).real();
        Complex comp = sys.basis.col(k).dot(r);  // <r, u_k> with Eigen's conj on left
        if (d > std::max(tol, 1e-12) * top) v += std::norm(comp) / d;
        else kernel_part += std::norm(comp);
    }
    if (kernel_part > std::max(tol, 1e-10) * (1.0 + r.squaredNorm()))
        throw Error("variation: functional does not vanish on the Gram kernel");
    return v;
}

GnsResult gns(const LinearFunctional& phi, double tol) {
    if (!is_positive_functional(phi, tol).positive)
        throw NotPositive("gns: functional is not positive");
    const StarAlgebra& A = *phi.algebra;
    CMatrix G = gram_matrix(phi);
    G = (G + G.adjoint()) / 2.0;
    auto sys = herm_eig(G, tol);
    double top = std::max(1.0, sys.eigenvalues(A.dim - 1).real());

    // Orthonormal basis of the quotient: eigenvectors above the rank
    // threshold, scaled so that q_l^H G q_k = delta_{lk}.
    std::vector<CVector> q;
    for (int k = 0; k < A.dim; ++k) {
        double d = sys.eigenvalues(k).real();
        if (d > std::max(tol, 1e-12) * top)
            q.push_back(CVector(sys.basis.col(k) / std::sqrt(d)));
    }
    const int rank = static_cast<int>(q.size());

    GnsResult out;
    out.gram_rank = rank;
    out.rep.algebra = phi.algebra;
    out.rep.space_dim = rank;
    out.rep.matrices.resize(A.dim);
    for (int i = 0; i < A.dim; ++i) {
        CVector ei = CVector::Zero(A.dim);
        ei(i) = 1.0;
        CMatrix L = A.left_mult(ei);
        CMatrix m(rank, rank);
        for (int l = 0; l < rank; ++l)
            for (int k = 0; k < rank; ++k)
                m(l, k) = (q[l].adjoint() * G * (L * q[k])).value();
        out.rep.matrices[i] = std::move(m);
    }

    // Reproducing vector: r with r^H G a = phi(a) for all a.
    CVector r;
    if (A.has_unit()) {
        r = A.unit_coords;
    } else {
        Eigen::ColPivHouseholderQR<CMatrix> qr(G);
        r = qr.solve(CVector(phi.row.adjoint()));
    }
    out.cyclic_vector.resize(rank);
    for (int l = 0; l < rank; ++l)
        out.cyclic_vector(l) = (q[l].adjoint() * G * r).value();
    out.variation = out.cyclic_vector.squaredNorm();

    for (int i = 0; i < A.dim; ++i) {
        Complex rec = out.cyclic_vector.dot(out.rep.matrices[i] * out.cyclic_vector);
        if (std::abs(phi.row(i) - rec) >
            std::max(tol, 1e-9) * (1.0 + phi.row.norm()))
            throw Error("gns: reconstruction residual too large");
    }
    return out;
}

bool is_pure(const LinearFunctional& phi, double tol) {
    double v = variation(phi, tol);
    if (std::abs(v - 1.0) > std::max(tol, 1e-7))
        throw NotAState("is_pure: variation must be 1");
    auto g = gns(phi, tol);
    return commutant(g.rep.matrices, tol).size() == 1;
}

double enveloping_seminorm(const AlgebraElement& a, double tol, std::uint64_t seed) {
    auto herm = is_hermitian_algebra(a.algebra, 25, seed);
    if (!herm.all_pass())
        throw NotHermitianAlgebra("enveloping_seminorm: algebra is not Hermitian");
    return ptak(a, tol);
}

CheckReport universal_norm_check(const AlgebraPtr& alg, int samples,
                                 std::uint64_t seed) {
    if (!alg->has_realization())
        throw NoRealization("universal_norm_check: realization required");
    std::mt19937_64 gen(seed);
    std::normal_distribution<double> dist;
    const Eigen::Index n = alg->realization[0].rows();
    CMatrix pe = alg->has_unit() ? realize(unit_element(alg))
                                 : CMatrix(CMatrix::Identity(n, n));

    double slack_linear = 0, slack_quad = 0;
    for (int t = 0; t < samples; ++t) {
        CVector c(alg->dim);
        for (int i = 0; i < alg->dim; ++i) c(i) = Complex(dist(gen), dist(gen));
        auto a = element(alg, c);
        double sn = ptak(a);

        // Vector state of the defining representation, supported on the
        // essential subspace.
        CVector x(n);
        for (Eigen::Index i = 0; i < n; ++i) x(i) = Complex(dist(gen), dist(gen));
        x = pe * x;
        if (x.norm() < 1e-12) continue;
        x /= x.norm();
        Complex psi_a = x.dot(realize(a) * x);
        double psi_sq = std::real(x.dot(realize(a).adjoint() * realize(a) * x));
        slack_linear = std::max(slack_linear, std::abs(psi_a) - sn);
        slack_quad = std::max(slack_quad, std::sqrt(std::max(psi_sq, 0.0)) - sn);
    }
    CheckReport rep;
    rep.seed = seed;
    rep.add("state_values_dominated", std::max(slack_linear, 0.0), 1e-7);
    rep.add("state_quadratic_dominated", std::max(slack_quad, 0.0), 1e-7);
    return rep;
}

std::vector<CyclicPiece> decompose_cyclic(const Representation& pi, double tol) {
    const int n = pi.space_dim;
    const int d = static_cast<int>(pi.matrices.size());
    CMatrix stacked(n, Eigen::Index(n) * d);
    for (int i = 0; i < d; ++i)
        stacked.middleCols(Eigen::Index(i) * n, n) = pi.matrices[i];
    if (eps_rank(stacked, 1e-9) < n)
        throw Degenerate("decompose_cyclic: representation is degenerate");

    std::vector<CyclicPiece> pieces;
    CMatrix covered = CMatrix::Zero(n, n);  // projection onto handled part
    for (int v = 0; v < n; ++v) {
        CVector c = CVector::Zero(n);
        c(v) = 1.0;
        c -= covered * c;
        if (c.norm() <= 1e-9) continue;
        c /= c.norm();
        CMatrix span(n, d + 1);
        span.col(0) = c;
        for (int i = 0; i < d; ++i) span.col(i + 1) = pi.matrices[i] * c;
        // Close the span under the action until stable.
        CMatrix basis = range_basis(span, 1e-9);
        for (;;) {
            CMatrix grown(n, basis.cols() * (d + 1));
            grown.leftCols(basis.cols()) = basis;
            for (int i = 0; i < d; ++i)
                grown.middleCols(basis.cols() * (i + 1), basis.cols()) =
                    pi.matrices[i] * basis;
            CMatrix next = range_basis(grown, 1e-9);
            if (next.cols() == basis.cols()) break;
            basis = next;
        }
        CMatrix p = basis * basis.adjoint();
        pieces.push_back({p, c});
        covered += p;
    }

    // Invariance, orthogonality, completeness.
    double scale = 1.0;
    for (const auto& m : pi.matrices) scale = std::max(scale, m.norm());
    if ((covered - CMatrix::Identity(n, n)).norm() > std::max(tol, 1e-8) * n)
        throw Error("decompose_cyclic: pieces do not sum to the identity");
    for (const auto& piece : pieces)
        for (int i = 0; i < d; ++i) {
            CMatrix leak = (CMatrix::Identity(n, n) - piece.projection) *
                           pi.matrices[i] * piece.projection;
            if (leak.norm() > std::max(tol, 1e-8) * scale)
                throw Error("decompose_cyclic: subspace is not invariant");
        }
    return pieces;
}

}  // namespace opstar
