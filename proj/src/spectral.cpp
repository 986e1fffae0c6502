#include "opstar/spectral.hpp"

#include <unsupported/Eigen/KroneckerProduct>

#include <algorithm>
#include <random>

namespace opstar {

namespace {

bool label_less(const PointLabel& a, const PointLabel& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] != b[i]) return lex_less(a[i], b[i]);
    return false;
}

bool label_close(const PointLabel& a, const PointLabel& b, double tol) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (std::abs(a[i] - b[i]) > tol) return false;
    return true;
}

void check_normal(const CMatrix& b, double tol, const char* who) {
    double scale = std::max(1.0, b.norm());
    if ((b * b.adjoint() - b.adjoint() * b).norm() > tol * scale * scale)
        throw NotNormal(std::string(who) + ": matrix is not normal");
}

struct MeasureOrder {
    bool operator()(const std::pair<PointLabel, CMatrix>& a,
                    const std::pair<PointLabel, CMatrix>& b) const {
        return label_less(a.first, b.first);
    }
};

void sort_measure(SpectralMeasure& m) {
    std::vector<std::pair<PointLabel, CMatrix>> rows;
    for (std::size_t i = 0; i < m.points.size(); ++i)
        rows.emplace_back(m.points[i], m.projections[i]);
    std::sort(rows.begin(), rows.end(), MeasureOrder{});
    for (std::size_t i = 0; i < rows.size(); ++i) {
        m.points[i] = rows[i].first;
        m.projections[i] = rows[i].second;
    }
}

}  // namespace

CheckReport validate_spectral_measure(const SpectralMeasure& P, std::uint64_t seed) {
    CheckReport rep;
    rep.seed = seed;
    const int m = static_cast<int>(P.points.size());
    const int n = P.space_dim;
    double r_proj = 0, r_herm = 0, r_orth = 0;
    CMatrix total = CMatrix::Zero(n, n);
    for (int i = 0; i < m; ++i) {
        const CMatrix& p = P.projections[i];
        r_proj = std::max(r_proj, (p * p - p).norm());
        r_herm = std::max(r_herm, (p - p.adjoint()).norm());
        total += p;
        for (int j = i + 1; j < m; ++j)
            r_orth = std::max(r_orth, (p * P.projections[j]).norm());
    }
    rep.add("projections_idempotent", r_proj, 1e-9 * n);
    rep.add("projections_hermitian", r_herm, 1e-9 * n);
    rep.add("completeness", (total - CMatrix::Identity(n, n)).norm(), 1e-9 * n);
    rep.add("pairwise_orthogonality", r_orth, 1e-9 * n);

    // P(w1 n w2) = P(w1) P(w2) over random subsets.
    std::mt19937_64 gen(seed);
    std::bernoulli_distribution coin;
    double r_int = 0;
    for (int t = 0; t < 50; ++t) {
        CMatrix p1 = CMatrix::Zero(n, n), p2 = CMatrix::Zero(n, n),
                pboth = CMatrix::Zero(n, n);
        for (int i = 0; i < m; ++i) {
            bool in1 = coin(gen), in2 = coin(gen);
            if (in1) p1 += P.projections[i];
            if (in2) p2 += P.projections[i];
            if (in1 && in2) pboth += P.projections[i];
        }
        r_int = std::max(r_int, (p1 * p2 - pboth).norm());
    }
    rep.add("intersection_multiplicativity", r_int, 1e-8 * n);
    return rep;
}

CMatrix spectral_integral(const SpectralMeasure& P, const std::vector<Complex>& values) {
    if (values.size() != P.points.size())
        throw MissingValue("spectral_integral: one value per point required");
    CMatrix out = CMatrix::Zero(P.space_dim, P.space_dim);
    for (std::size_t i = 0; i < values.size(); ++i) out += values[i] * P.projections[i];
    return out;
}

CMatrix spectral_integral(const SpectralMeasure& P,
                          const std::function<Complex(const PointLabel&)>& f) {
    std::vector<Complex> values;
    values.reserve(P.points.size());
    for (const auto& p : P.points) values.push_back(f(p));
    return spectral_integral(P, values);
}

SpectralMeasure resolution_of_normal(const CMatrix& b, double tol) {
    check_normal(b, std::max(tol, 1e-9), "resolution_of_normal");
    auto sys = normal_diag(b, tol);
    const int n = static_cast<int>(b.rows());
    double maxmod = 0;
    for (int i = 0; i < n; ++i) maxmod = std::max(maxmod, std::abs(sys.eigenvalues(i)));
    const double cluster = 1e-7 * (1.0 + maxmod);

    SpectralMeasure out;
    out.space_dim = n;
    int i = 0;
    while (i < n) {
        int j = i;
        Complex mean = 0;
        while (j < n && std::abs(sys.eigenvalues(j) - sys.eigenvalues(i)) <= cluster) {
            mean += sys.eigenvalues(j);
            ++j;
        }
        mean /= double(j - i);
        CMatrix v = sys.basis.middleCols(i, j - i);
        out.points.push_back(scalar_point(mean));
        out.projections.push_back(v * v.adjoint());
        i = j;
    }
    sort_measure(out);

    CMatrix rec = spectral_integral(out, [](const PointLabel& p) { return p[0]; });
    if ((rec - b).norm() > 1e-9 * std::max(1.0, b.norm()) * n)
        throw Error("resolution_of_normal: reconstruction residual too large");
    // {b}' and P' coincide.
    std::size_t db = commutant({b}, tol).size();
    std::size_t dp = commutant(out.projections, tol).size();
    if (db != dp) throw Error("resolution_of_normal: commutant dimensions differ");
    return out;
}

CMatrix borel_calculus(const CMatrix& b, const std::function<Complex(Complex)>& f,
                       double tol) {
    auto P = resolution_of_normal(b, tol);
    return spectral_integral(P, [&](const PointLabel& p) { return f(p[0]); });
}

CheckReport atoms_are_eigenvalues(const CMatrix& b, double tol) {
    auto P = resolution_of_normal(b, tol);
    const int n = P.space_dim;
    CheckReport rep;
    for (std::size_t i = 0; i < P.points.size(); ++i) {
        int atom_rank = eps_rank(P.projections[i], 1e-7);
        int geo = n - eps_rank(b - P.points[i][0] * CMatrix::Identity(n, n), 1e-7);
        rep.add("atom_" + std::to_string(i), std::abs(atom_rank - geo), 0.5);
    }
    return rep;
}

SpectralMeasure image_measure(const SpectralMeasure& P,
                              const std::function<PointLabel(const PointLabel&)>& f,
                              double tol) {
    SpectralMeasure out;
    out.space_dim = P.space_dim;
    for (std::size_t i = 0; i < P.points.size(); ++i) {
        PointLabel img = f(P.points[i]);
        bool merged = false;
        for (std::size_t j = 0; j < out.points.size(); ++j)
            if (label_close(out.points[j], img, std::max(tol, 1e-9))) {
                out.projections[j] += P.projections[i];
                merged = true;
                break;
            }
        if (!merged) {
            out.points.push_back(std::move(img));
            out.projections.push_back(P.projections[i]);
        }
    }
    sort_measure(out);
    return out;
}

std::vector<CMatrix> commutant(const std::vector<CMatrix>& s, double tol) {
    if (s.empty()) throw DimensionMismatch("commutant: empty generator list");
    const Eigen::Index n = s[0].rows();
    for (const auto& a : s)
        if (a.rows() != n || a.cols() != n)
            throw DimensionMismatch("commutant: generators must be square and equal-sized");

    std::vector<CMatrix> family = s;
    for (const auto& a : s) family.push_back(a.adjoint());

    CMatrix id = CMatrix::Identity(n, n);
    CMatrix sys(static_cast<Eigen::Index>(family.size()) * n * n, n * n);
    for (std::size_t k = 0; k < family.size(); ++k) {
        // vec(XA - AX) = (A^T (x) 1 - 1 (x) A) vec(X), column-major.
        const CMatrix& a = family[k];
        CMatrix block = Eigen::kroneckerProduct(a.transpose(), id) -
                        Eigen::kroneckerProduct(id, a);
        sys.middleRows(k * n * n, n * n) = block;
    }
    Eigen::JacobiSVD<CMatrix> svd(sys, Eigen::ComputeFullV);
    auto sv = svd.singularValues();
    double top = sv.size() > 0 ? sv(0) : 0.0;
    std::vector<CMatrix> basis;
    for (Eigen::Index i = 0; i < n * n; ++i) {
        double v = i < sv.size() ? sv(i) : 0.0;
        if (v <= std::max(tol, 1e-9) * std::max(top, 1.0))
            basis.push_back(svd.matrixV().col(i).reshaped(n, n));
    }
    return basis;
}

CheckReport bicommutant_check(const std::vector<CMatrix>& generators, double tol) {
    auto alg = generate_matrix_algebra(generators, std::max(tol, 1e-9));
    const std::vector<CMatrix>& basis = alg->realization;
    auto prime = commutant(basis, tol);
    auto second = commutant(prime, tol);

    CheckReport rep;
    rep.add("dimension_equal",
            std::abs(static_cast<double>(second.size()) - alg->dim), 0.5);

    // Mutual span containment under the trace inner product.
    const Eigen::Index n = basis[0].rows();
    CMatrix span_a(n * n, alg->dim), span_b(n * n, static_cast<Eigen::Index>(second.size()));
    for (int i = 0; i < alg->dim; ++i) span_a.col(i) = basis[i].reshaped();
    for (std::size_t i = 0; i < second.size(); ++i)
        span_b.col(static_cast<Eigen::Index>(i)) = second[i].reshaped();
    auto residual_onto = [](const CMatrix& space, const CMatrix& vecs) {
        Eigen::ColPivHouseholderQR<CMatrix> qr(space);
        double r = 0;
        for (Eigen::Index j = 0; j < vecs.cols(); ++j) {
            CVector x = qr.solve(vecs.col(j));
            r = std::max(r, (space * x - vecs.col(j)).norm() /
                                std::max(1.0, vecs.col(j).norm()));
        }
        return r;
    };
    rep.add("bicommutant_in_algebra", residual_onto(span_a, span_b), 1e-7);
    rep.add("algebra_in_bicommutant", residual_onto(span_b, span_a), 1e-7);
    return rep;
}

CheckReport fuglede_check(const CMatrix& n1, const CMatrix& n2, double tol) {
    check_normal(n1, std::max(tol, 1e-9), "fuglede_check");
    check_normal(n2, std::max(tol, 1e-9), "fuglede_check");
    if (n1.rows() != n2.rows())
        throw DimensionMismatch("fuglede_check: sizes differ");
    const Eigen::Index n = n1.rows();
    CMatrix id = CMatrix::Identity(n, n);
    CMatrix sys = Eigen::kroneckerProduct(n1.transpose(), id) -
                  Eigen::kroneckerProduct(id, n2);
    Eigen::JacobiSVD<CMatrix> svd(sys, Eigen::ComputeFullV);
    auto sv = svd.singularValues();
    double top = sv.size() > 0 ? sv(0) : 0.0;

    CheckReport rep;
    int dim = 0;
    double worst = 0;
    double scale = std::max({1.0, n1.norm(), n2.norm()});
    for (Eigen::Index i = 0; i < n * n; ++i) {
        double v = i < sv.size() ? sv(i) : 0.0;
        if (v > 1e-9 * std::max(top, 1.0)) continue;
        ++dim;
        CMatrix a = svd.matrixV().col(i).reshaped(n, n);
        worst = std::max(worst,
                         (a * n1.adjoint() - n2.adjoint() * a).norm() / (a.norm() * scale));
    }
    rep.add("intertwiner_dimension", dim, std::numeric_limits<double>::infinity());
    rep.add("adjoint_intertwining", worst, std::max(tol, 1e-8));
    return rep;
}

MultOperator mult_operator(const WeightedSpace& space, const std::vector<Complex>& g) {
    const int m = static_cast<int>(space.points.size());
    if (static_cast<int>(g.size()) != m)
        throw MissingValue("mult_operator: one value per point required");
    MultOperator out;
    out.op = CMatrix::Zero(m, m);
    for (int i = 0; i < m; ++i) {
        out.op(i, i) = g[i];
        if (space.weights(i) > 0) out.norm = std::max(out.norm, std::abs(g[i]));
    }
    return out;
}

SpectralMeasure resolution_of_representation(const Representation& pi, double tol) {
    const int n = pi.space_dim;
    const int d = static_cast<int>(pi.matrices.size());
    double scale = 1.0;
    for (const auto& m : pi.matrices) scale = std::max(scale, m.norm());
    for (int i = 0; i < d; ++i) {
        check_normal(pi.matrices[i], std::max(tol, 1e-8), "resolution_of_representation");
        for (int j = i + 1; j < d; ++j)
            if ((pi.matrices[i] * pi.matrices[j] - pi.matrices[j] * pi.matrices[i]).norm() >
                std::max(tol, 1e-8) * scale * scale)
                throw NotCommutative("resolution_of_representation: matrices do not commute");
    }
    // Non-degenerate: the ranges of the pi(e_i) span the whole space.
    CMatrix stacked(n, n * d);
    for (int i = 0; i < d; ++i) stacked.middleCols(i * Eigen::Index(n), n) = pi.matrices[i];
    if (eps_rank(stacked, 1e-9) < n)
        throw Degenerate("resolution_of_representation: action is degenerate");

    // Refine joint eigenspaces one generator at a time.
    std::vector<CMatrix> blocks = {CMatrix::Identity(n, n)};
    for (int i = 0; i < d; ++i) {
        std::vector<CMatrix> next;
        for (const CMatrix& b : blocks) {
            CMatrix comp = b.adjoint() * pi.matrices[i] * b;
            auto sys = normal_diag(comp, tol);
            const Eigen::Index k = comp.rows();
            double maxmod = 0;
            for (Eigen::Index t = 0; t < k; ++t)
                maxmod = std::max(maxmod, std::abs(sys.eigenvalues(t)));
            const double cluster = 1e-7 * (1.0 + maxmod);
            Eigen::Index lo = 0;
            while (lo < k) {
                Eigen::Index hi = lo;
                while (hi < k &&
                       std::abs(sys.eigenvalues(hi) - sys.eigenvalues(lo)) <= cluster)
                    ++hi;
                next.push_back(b * sys.basis.middleCols(lo, hi - lo));
                lo = hi;
            }
        }
        blocks = std::move(next);
    }

    SpectralMeasure out;
    out.space_dim = n;
    for (const CMatrix& b : blocks) {
        PointLabel label(d);
        for (int i = 0; i < d; ++i)
            label[i] = (b.adjoint() * pi.matrices[i] * b).trace() / double(b.cols());
        out.points.push_back(std::move(label));
        out.projections.push_back(b * b.adjoint());
    }
    sort_measure(out);

    for (int i = 0; i < d; ++i) {
        CMatrix rec = spectral_integral(out, [&](const PointLabel& p) { return p[i]; });
        if ((rec - pi.matrices[i]).norm() > std::max(tol, 1e-8) * scale * n)
            throw Error("resolution_of_representation: reconstruction failed");
    }
    std::size_t dpi = commutant(pi.matrices, tol).size();
    std::size_t dp = commutant(out.projections, tol).size();
    if (dpi != dp)
        throw Error("resolution_of_representation: commutant dimensions differ");
    return out;
}

SpectralRepresentation spectral_representation(const Representation& pi,
                                               const CVector& c, double tol) {
    const int n = pi.space_dim;
    if (std::abs(c.norm() - 1.0) > 1e-6)
        throw PreconditionFailed("spectral_representation: cyclic vector must be unit");
    CMatrix span(n, pi.matrices.size());
    for (std::size_t i = 0; i < pi.matrices.size(); ++i)
        span.col(static_cast<Eigen::Index>(i)) = pi.matrices[i] * c;
    if (eps_rank(span, 1e-9) < n)
        throw NotCyclic("spectral_representation: vector does not generate the space");

    auto P = resolution_of_representation(pi, tol);
    const int m = static_cast<int>(P.points.size());
    SpectralRepresentation out;
    out.space.points = P.points;
    out.mu.resize(m);
    out.v = CMatrix::Zero(m, n);
    for (int j = 0; j < m; ++j) {
        CVector pc = P.projections[j] * c;
        out.mu(j) = pc.squaredNorm();
        if (out.mu(j) <= 1e-14)
            throw NotCyclic("spectral_representation: a spectral atom misses the vector");
        out.v.row(j) = pc.adjoint() / out.mu(j);
    }
    out.space.weights = out.mu;

    // W = D^{1/2} V is unitary to the plain l2 space.
    CMatrix w = out.mu.cwiseSqrt().asDiagonal() * out.v;
    double uni = std::max((w.adjoint() * w - CMatrix::Identity(n, n)).norm(),
                          (w * w.adjoint() - CMatrix::Identity(m, m)).norm());
    if (uni > std::max(tol, 1e-8) * n)
        throw Error("spectral_representation: transform is not unitary");
    for (std::size_t i = 0; i < pi.matrices.size(); ++i) {
        std::vector<Complex> hat(m);
        for (int j = 0; j < m; ++j) hat[j] = P.points[j][i];
        CMatrix lhs = out.v * pi.matrices[i];
        CMatrix rhs = mult_operator(out.space, hat).op * out.v;
        if ((lhs - rhs).norm() > std::max(tol, 1e-7) * (1.0 + lhs.norm()))
            throw Error("spectral_representation: intertwining residual too large");
    }
    return out;
}

}  // namespace opstar
