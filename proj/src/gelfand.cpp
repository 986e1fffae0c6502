#include "opstar/gelfand.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

namespace opstar {

namespace {

bool is_commutative(const StarAlgebra& A, double tol) {
    // e_i e_j == e_j e_i: compare coefficient rows of the structure tensor.
    for (int i = 0; i < A.dim; ++i)
        for (int j = i + 1; j < A.dim; ++j)
            if ((A.structure[i].row(j) - A.structure[j].row(i)).norm() > tol)
                return false;
    return true;
}

/// Kernel vector of the trace form tr(L_i L_j), nonempty exactly when the
/// algebra has a radical.
CVector radical_witness(const StarAlgebra& A) {
    std::vector<CMatrix> L(A.dim);
    for (int i = 0; i < A.dim; ++i) {
        CVector ei = CVector::Zero(A.dim);
        ei(i) = 1.0;
        L[i] = A.left_mult(ei);
    }
    CMatrix T(A.dim, A.dim);
    for (int i = 0; i < A.dim; ++i)
        for (int j = 0; j < A.dim; ++j) T(i, j) = (L[i] * L[j]).trace();
    Eigen::JacobiSVD<CMatrix> svd(T, Eigen::ComputeFullV);
    auto sv = svd.singularValues();
    if (sv(A.dim - 1) > 1e-10 * std::max(sv(0), 1.0)) return CVector();
    return svd.matrixV().col(A.dim - 1);
}

}  // namespace

CharacterSet characters(const AlgebraPtr& alg, double tol, std::uint64_t seed) {
    const StarAlgebra& A = *alg;
    if (!A.has_unit()) throw NotUnital("characters: algebra must be unital");
    if (!is_commutative(A, std::max(tol, 1e-10)))
        throw NotCommutative("characters: structure constants are not symmetric");

    std::mt19937_64 gen(seed);
    std::normal_distribution<double> dist;
    for (int attempt = 0; attempt < 20; ++attempt) {
        CVector x(A.dim);
        for (int i = 0; i < A.dim; ++i) x(i) = Complex(dist(gen), dist(gen));
        CMatrix L = A.left_mult(x);
        Eigen::ComplexEigenSolver<CMatrix> es(L);
        if (es.info() != Eigen::Success) continue;
        CVector vals = es.eigenvalues();
        double maxmod = 0;
        for (int i = 0; i < A.dim; ++i) maxmod = std::max(maxmod, std::abs(vals(i)));
        double gap = std::numeric_limits<double>::infinity();
        for (int i = 0; i < A.dim; ++i)
            for (int j = i + 1; j < A.dim; ++j)
                gap = std::min(gap, std::abs(vals(i) - vals(j)));
        if (A.dim > 1 && gap <= 1e-7 * (1.0 + maxmod)) continue;  // degenerate draw

        // Each simple eigenvector of L is a joint eigenvector of every
        // basis regular-rep matrix; the eigenvalues are the character values.
        CharacterSet cs;
        cs.algebra = alg;
        bool ok = true;
        for (int k = 0; k < A.dim && ok; ++k) {
            CVector v = es.eigenvectors().col(k);
            Eigen::Index pivot;
            v.cwiseAbs().maxCoeff(&pivot);
            Eigen::RowVectorXcd row(A.dim);
            for (int i = 0; i < A.dim; ++i) {
                CVector ei = CVector::Zero(A.dim);
                ei(i) = 1.0;
                CVector w = A.left_mult(ei) * v;
                Complex lam = w(pivot) / v(pivot);
                if ((w - lam * v).norm() > 1e-6 * (1.0 + std::abs(lam)) * v.norm()) {
                    ok = false;
                    break;
                }
                row(i) = lam;
            }
            if (!ok) break;
            // Multiplicativity on all basis pairs.
            for (int i = 0; i < A.dim && ok; ++i)
                for (int j = 0; j < A.dim; ++j) {
                    Complex lhs = (A.structure[i].row(j) * row.transpose()).value();
                    if (std::abs(lhs - row(i) * row(j)) >
                        std::max(tol, 1e-8) * (1.0 + row.cwiseAbs().maxCoeff())) {
                        ok = false;
                        break;
                    }
                }
            if (!ok) break;
            if (std::abs((row * A.unit_coords).value() - 1.0) > 1e-7) {
                ok = false;
                break;
            }
            cs.characters.push_back(LinearFunctional{alg, row});
        }
        if (!ok) continue;

        std::sort(cs.characters.begin(), cs.characters.end(),
                  [](const LinearFunctional& a, const LinearFunctional& b) {
                      for (Eigen::Index i = 0; i < a.row.size(); ++i)
                          if (a.row(i) != b.row(i)) return lex_less(a.row(i), b.row(i));
                      return false;
                  });
        for (const auto& ch : cs.characters) {
            // tau(e_i^*) vs conj(tau(e_i)).
            Eigen::RowVectorXcd star_vals = ch.row * A.involution.transpose();
            cs.hermitian_flags.push_back(
                (star_vals - ch.row.conjugate()).norm() <= 1e-8 * (1.0 + ch.row.norm()));
        }
        return cs;
    }

    std::ostringstream msg;
    msg << "characters: no generic element separated the spectrum after 20 draws";
    CVector w = radical_witness(A);
    if (w.size() > 0) {
        msg << "; nilpotent witness coefficients:";
        for (int i = 0; i < A.dim; ++i)
            msg << " (" << w(i).real() << "," << w(i).imag() << ")";
    }
    throw DegenerateAfterRetries(msg.str());
}

CVector gelfand_transform(const AlgebraElement& a, const CharacterSet& cs) {
    if (a.algebra != cs.algebra)
        throw AlgebraMismatch("gelfand_transform: characters built for a different algebra");
    CVector out(static_cast<Eigen::Index>(cs.characters.size()));
    for (std::size_t j = 0; j < cs.characters.size(); ++j)
        out(static_cast<Eigen::Index>(j)) = cs.characters[j](a);
    return out;
}

Eigen::VectorXd bochner_measure(const LinearFunctional& psi, const CharacterSet& cs,
                                double tol) {
    const StarAlgebra& A = *cs.algebra;
    if (psi.algebra != cs.algebra)
        throw AlgebraMismatch("bochner_measure: functional on a different algebra");

    // State check: psi(e) = 1 and the Gram matrix psi(e_i^* e_j) is PSD.
    if (std::abs((psi.row * A.unit_coords).value() - 1.0) > tol)
        throw NotAState("bochner_measure: psi(e) != 1");
    CMatrix G(A.dim, A.dim);
    for (int i = 0; i < A.dim; ++i) {
        // e_i^* = sum_k involution(i,k) e_k, so psi(e_i^* e_j) expands
        // through the structure tensor.
        for (int j = 0; j < A.dim; ++j) {
            Complex v = 0;
            for (int k = 0; k < A.dim; ++k) {
                if (A.involution(i, k) == Complex(0)) continue;
                v += A.involution(i, k) * (A.structure[k].row(j) * psi.row.transpose()).value();
            }
            G(i, j) = v;
        }
    }
    Eigen::SelfAdjointEigenSolver<CMatrix> es((G + G.adjoint()) / 2.0);
    double scale = std::max(1.0, es.eigenvalues().cwiseAbs().maxCoeff());
    if ((G - G.adjoint()).norm() > 1e-7 * scale || es.eigenvalues()(0) < -1e-7 * scale)
        throw NotAState("bochner_measure: psi(a* a) takes negative values");

    const int m = static_cast<int>(cs.characters.size());
    CMatrix M(A.dim, m);
    for (int i = 0; i < A.dim; ++i)
        for (int j = 0; j < m; ++j) M(i, j) = cs.characters[j].row(i);
    CVector rhs = psi.row.transpose();
    Eigen::ColPivHouseholderQR<CMatrix> qr(M);
    CVector mu = qr.solve(rhs);
    if ((M * mu - rhs).norm() > tol * (1.0 + rhs.norm()))
        throw InconsistentSystem("bochner_measure: psi is not in the character simplex");

    Eigen::VectorXd out(m);
    double sum = 0;
    for (int j = 0; j < m; ++j) {
        if (std::abs(mu(j).imag()) > tol || mu(j).real() < -tol)
            throw InconsistentSystem("bochner_measure: weights are not a probability vector");
        out(j) = std::max(mu(j).real(), 0.0);
        sum += out(j);
    }
    if (std::abs(sum - 1.0) > tol)
        throw InconsistentSystem("bochner_measure: weights do not sum to one");
    return out / sum;
}

WienerResult wiener_inverse(const FourierElement& f, int n_out, double tol) {
    constexpr int N = 4096;
    const double two_pi = 2.0 * std::numbers::pi;
    std::vector<Complex> fvals(N);
    double minmod = std::numeric_limits<double>::infinity();
    for (int m = 0; m < N; ++m) {
        double t = two_pi * m / N;
        Complex v = 0;
        for (const auto& [k, c] : f.coeffs) v += c * std::polar(1.0, k * t);
        fvals[m] = v;
        minmod = std::min(minmod, std::abs(v));
    }
    if (minmod <= tol)
        throw ZeroOnTorus("wiener_inverse: f vanishes on the torus grid");

    WienerResult res;
    const int k_ext = std::min(3 * n_out, N / 2 - 1);
    std::map<long, Complex> ext;
    for (int k = -k_ext; k <= k_ext; ++k) {
        Complex g = 0;
        for (int m = 0; m < N; ++m)
            g += std::polar(1.0, -k * two_pi * m / N) / fvals[m];
        g /= double(N);
        ext[k] = g;
        if (std::abs(k) <= n_out) res.g.coeffs[k] = g;
        else res.tail_l1 += std::abs(g);
    }

    res.l1_partials.resize(n_out + 1);
    double acc = std::abs(res.g.coeffs[0]);
    res.l1_partials[0] = acc;
    for (int k = 1; k <= n_out; ++k) {
        acc += std::abs(res.g.coeffs[k]) + std::abs(res.g.coeffs[-k]);
        res.l1_partials[k] = acc;
    }

    for (int m = 0; m < N; ++m) {
        double t = two_pi * m / N;
        Complex g = 0;
        for (const auto& [k, c] : res.g.coeffs) g += c * std::polar(1.0, k * t);
        res.max_pointwise_residual =
            std::max(res.max_pointwise_residual, std::abs(fvals[m] * g - 1.0));
    }

    // Convolution residual on the window |k| <= n_out.
    for (int k = -n_out; k <= n_out; ++k) {
        Complex conv = 0;
        for (const auto& [j, c] : f.coeffs) {
            auto it = res.g.coeffs.find(k - j);
            if (it != res.g.coeffs.end()) conv += c * it->second;
        }
        res.conv_residual += std::abs(conv - (k == 0 ? Complex(1) : Complex(0)));
    }
    return res;
}

CharacterDemoReport discontinuous_character_demo(double gamma, int n_max,
                                                 std::uint64_t seed) {
    if (gamma < 2.0)
        throw PreconditionFailed("discontinuous_character_demo: gamma must be >= 2");
    std::vector<long> support;
    for (long n = -n_max; n <= n_max; ++n) support.push_back(n);
    auto alg = weighted_int_ring(support, gamma);

    // tau(a) = sum_n a(n): evaluation at the point 1 of the circle.
    Eigen::RowVectorXcd ones = Eigen::RowVectorXcd::Ones(alg->dim);
    LinearFunctional tau{alg, ones};

    CharacterDemoReport rep;
    for (int n = 1; n <= n_max; ++n) {
        auto idx = std::distance(support.begin(),
                                 std::find(support.begin(), support.end(), -long(n)));
        auto d = basis_element(alg, static_cast<int>(idx));
        CharacterDemoRow row{n, element_norm(d), std::abs(tau(d))};
        rep.checks.add("norm_delta_minus_" + std::to_string(n),
                       std::abs(row.delta_norm - std::pow(gamma, -n)), 1e-12);
        rep.checks.add("char_modulus_" + std::to_string(n),
                       std::abs(row.char_modulus - 1.0), 1e-12);
        rep.rows.push_back(row);
    }

    std::mt19937_64 gen(seed);
    std::normal_distribution<double> dist;
    for (int t = 0; t < 100; ++t) {
        CVector c = CVector::Zero(alg->dim);
        for (std::size_t i = 0; i < support.size(); ++i) {
            if (support[i] < 0) continue;
            Complex v(dist(gen), support[i] == 0 ? 0.0 : dist(gen));
            c(static_cast<Eigen::Index>(i)) = v;
            if (support[i] > 0) {
                auto neg = std::distance(support.begin(),
                                         std::find(support.begin(), support.end(),
                                                   -support[i]));
                c(static_cast<Eigen::Index>(neg)) = std::conj(v);
            }
        }
        auto h = element(alg, c);
        rep.max_hermitian_ratio =
            std::max(rep.max_hermitian_ratio, std::abs(tau(h)) / element_norm(h));
    }
    rep.checks.add("hermitian_contraction",
                   std::max(0.0, rep.max_hermitian_ratio - 1.0), 1e-12);
    rep.unbounded_ratio = rep.rows.back().char_modulus / rep.rows.back().delta_norm;
    rep.checks.add("unbounded_ratio_reaches_gamma_pow_n",
                   std::abs(rep.unbounded_ratio - std::pow(gamma, n_max)),
                   1e-9 * std::pow(gamma, n_max));
    rep.checks.seed = seed;
    return rep;
}

}  // namespace opstar
