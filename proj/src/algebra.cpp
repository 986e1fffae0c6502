#include "opstar/algebra.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <set>
#include <sstream>

namespace opstar {

namespace {

CMatrix zero_mat(int r, int c) { return CMatrix::Zero(r, c); }

void check_same_algebra(const AlgebraElement& a, const AlgebraElement& b) {
    if (a.algebra != b.algebra)
        throw AlgebraMismatch("elements belong to different algebras");
}

long z_of(const StarAlgebra& alg, int i) { return alg.z_index[static_cast<std::size_t>(i)]; }

}  // namespace

CMatrix StarAlgebra::left_mult(const CVector& coeffs) const {
    CMatrix acc = zero_mat(dim, dim);
    for (int i = 0; i < dim; ++i)
        if (coeffs(i) != Complex(0.0, 0.0)) acc += coeffs(i) * structure[static_cast<std::size_t>(i)];
    // acc(j,k) = sum_i a_i c_{ijk}; left multiplication sends b_j to sum over k.
    return acc.transpose();
}

CMatrix Representation::apply(const AlgebraElement& a) const {
    if (a.algebra.get() != algebra.get())
        throw AlgebraMismatch("representation applied to foreign element");
    CMatrix m = zero_mat(space_dim, space_dim);
    for (int i = 0; i < algebra->dim; ++i) m += a.coeffs(i) * matrices[static_cast<std::size_t>(i)];
    return m;
}

Complex LinearFunctional::operator()(const AlgebraElement& a) const {
    if (a.algebra != algebra) throw AlgebraMismatch("functional applied to foreign element");
    return (row * a.coeffs)(0, 0);
}

// ---------------------------------------------------------------------------

AlgebraPtr make_algebra(StarAlgebra data) {
    if (data.dim <= 0) throw Error("make_algebra: dimension must be positive");
    if (static_cast<int>(data.structure.size()) != data.dim)
        throw DimensionMismatch("make_algebra: structure tensor has wrong size");
    for (const auto& s : data.structure)
        if (s.rows() != data.dim || s.cols() != data.dim)
            throw DimensionMismatch("make_algebra: structure slice has wrong shape");
    if (data.involution.rows() != data.dim || data.involution.cols() != data.dim)
        throw DimensionMismatch("make_algebra: involution matrix has wrong shape");
    if (data.basis_labels.empty()) {
        for (int i = 0; i < data.dim; ++i) data.basis_labels.push_back("b" + std::to_string(i));
    }
    return std::make_shared<const StarAlgebra>(std::move(data));
}

AlgebraPtr full_matrix_algebra(int n) {
    if (n <= 0) throw Error("full_matrix_algebra: n must be positive");
    StarAlgebra a;
    a.dim = n * n;
    auto idx = [n](int i, int j) { return i * n + j; };
    a.structure.assign(static_cast<std::size_t>(a.dim), zero_mat(a.dim, a.dim));
    a.involution = zero_mat(a.dim, a.dim);
    a.unit_coords = CVector::Zero(a.dim);
    for (int i = 0; i < n; ++i) {
        a.unit_coords(idx(i, i)) = 1.0;
        for (int j = 0; j < n; ++j) {
            a.basis_labels.push_back("e" + std::to_string(i) + std::to_string(j));
            a.involution(idx(i, j), idx(j, i)) = 1.0;
            CMatrix unit = zero_mat(n, n);
            unit(i, j) = 1.0;
            a.realization.push_back(unit);
            // e_{ij} e_{kl} = [j==k] e_{il}
            for (int l = 0; l < n; ++l)
                a.structure[static_cast<std::size_t>(idx(i, j))](idx(j, l), idx(i, l)) = 1.0;
        }
    }
    a.norm = {NormKind::Operator, 2.0};
    return make_algebra(std::move(a));
}

AlgebraPtr diagonal_algebra(int n) {
    if (n <= 0) throw Error("diagonal_algebra: n must be positive");
    StarAlgebra a;
    a.dim = n;
    a.structure.assign(static_cast<std::size_t>(n), zero_mat(n, n));
    a.involution = CMatrix::Identity(n, n);
    a.unit_coords = CVector::Ones(n);
    for (int i = 0; i < n; ++i) {
        a.basis_labels.push_back("p" + std::to_string(i));
        a.structure[static_cast<std::size_t>(i)](i, i) = 1.0;
        CMatrix p = zero_mat(n, n);
        p(i, i) = 1.0;
        a.realization.push_back(p);
    }
    a.norm = {NormKind::Operator, 2.0};
    return make_algebra(std::move(a));
}

namespace {

double frob(const CMatrix& m) { return m.norm(); }

Complex trace_ip(const CMatrix& x, const CMatrix& y) {
    // <x, y> = tr(y^H x)
    return (y.adjoint() * x).trace();
}

// Gram-Schmidt insert with reorthogonalization; returns true if the
// candidate enlarged the span.
bool gs_insert(std::vector<CMatrix>& basis, CMatrix cand, double tol) {
    double scale = frob(cand);
    if (scale <= tol) return false;
    for (int pass = 0; pass < 2; ++pass)
        for (const auto& b : basis) cand -= trace_ip(cand, b) * b;
    double r = frob(cand);
    if (r <= tol * std::max(1.0, scale)) return false;
    basis.push_back(cand / r);
    return true;
}

// Expand the span basis into a StarAlgebra with trace-orthonormal basis.
AlgebraPtr algebra_from_basis(std::vector<CMatrix> basis) {
    StarAlgebra a;
    a.dim = static_cast<int>(basis.size());
    const int d = a.dim;
    a.realization = basis;
    a.structure.assign(static_cast<std::size_t>(d), zero_mat(d, d));
    a.involution = zero_mat(d, d);
    for (int i = 0; i < d; ++i) {
        a.basis_labels.push_back("b" + std::to_string(i));
        for (int k = 0; k < d; ++k)
            a.involution(i, k) = trace_ip(basis[static_cast<std::size_t>(i)].adjoint(),
                                          basis[static_cast<std::size_t>(k)]);
        for (int j = 0; j < d; ++j) {
            CMatrix prod = basis[static_cast<std::size_t>(i)] * basis[static_cast<std::size_t>(j)];
            for (int k = 0; k < d; ++k)
                a.structure[static_cast<std::size_t>(i)](j, k) =
                    trace_ip(prod, basis[static_cast<std::size_t>(k)]);
        }
    }
    a.norm = {NormKind::Operator, 2.0};

    // Two-sided unit detection by least squares on the structure constants.
    CMatrix sys = zero_mat(2 * d * d, d);
    CVector rhs = CVector::Zero(2 * d * d);
    for (int j = 0; j < d; ++j)
        for (int k = 0; k < d; ++k) {
            for (int i = 0; i < d; ++i) {
                sys(j * d + k, i) = a.structure[static_cast<std::size_t>(i)](j, k);
                sys(d * d + j * d + k, i) = a.structure[static_cast<std::size_t>(j)](i, k);
            }
            if (j == k) {
                rhs(j * d + k) = 1.0;
                rhs(d * d + j * d + k) = 1.0;
            }
        }
    Eigen::JacobiSVD<CMatrix> svd(sys, Eigen::ComputeThinU | Eigen::ComputeThinV);
    CVector u = svd.solve(rhs);
    if ((sys * u - rhs).norm() <= 1e-10 * (1.0 + rhs.norm())) a.unit_coords = u;
    return make_algebra(std::move(a));
}

}  // namespace

AlgebraPtr generate_matrix_algebra(const std::vector<CMatrix>& generators, double tol) {
    if (generators.empty()) throw EmptyGenerators("generate_matrix_algebra: no generators");
    const Eigen::Index n = generators.front().rows();
    bool any_nonzero = false;
    for (const auto& g : generators) {
        if (g.rows() != n || g.cols() != n)
            throw DimensionMismatch("generate_matrix_algebra: generators of unequal size");
        if (frob(g) > 0.0) any_nonzero = true;
    }
    if (!any_nonzero) throw EmptyGenerators("generate_matrix_algebra: all generators are zero");

    std::vector<CMatrix> basis;
    for (const auto& g : generators) {
        gs_insert(basis, g, tol);
        gs_insert(basis, g.adjoint(), tol);
    }
    const std::size_t cap = static_cast<std::size_t>(n * n);
    bool grew = true;
    while (grew) {
        grew = false;
        const std::size_t cur = basis.size();
        for (std::size_t i = 0; i < cur; ++i) {
            if (gs_insert(basis, basis[i].adjoint(), tol)) grew = true;
            for (std::size_t j = 0; j < cur; ++j)
                if (gs_insert(basis, basis[i] * basis[j], tol)) grew = true;
        }
        if (basis.size() > cap)
            throw Error("generate_matrix_algebra: closure exceeded ambient dimension");
    }
    return algebra_from_basis(std::move(basis));
}

GroupTable cyclic_group(int n) {
    GroupTable g;
    g.table.assign(static_cast<std::size_t>(n), std::vector<int>(static_cast<std::size_t>(n)));
    g.inverses.resize(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        g.inverses[static_cast<std::size_t>(i)] = (n - i) % n;
        for (int j = 0; j < n; ++j) g.table[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = (i + j) % n;
    }
    return g;
}

GroupTable symmetric_group(int n) {
    std::vector<std::vector<int>> perms;
    std::vector<int> p(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) p[static_cast<std::size_t>(i)] = i;
    do {
        perms.push_back(p);
    } while (std::next_permutation(p.begin(), p.end()));
    const int m = static_cast<int>(perms.size());
    auto find = [&](const std::vector<int>& q) {
        return static_cast<int>(std::lower_bound(perms.begin(), perms.end(), q) - perms.begin());
    };
    GroupTable g;
    g.table.assign(static_cast<std::size_t>(m), std::vector<int>(static_cast<std::size_t>(m)));
    g.inverses.resize(static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i) {
        std::vector<int> inv(static_cast<std::size_t>(n));
        for (int x = 0; x < n; ++x) inv[static_cast<std::size_t>(perms[static_cast<std::size_t>(i)][static_cast<std::size_t>(x)])] = x;
        g.inverses[static_cast<std::size_t>(i)] = find(inv);
        for (int j = 0; j < m; ++j) {
            std::vector<int> comp(static_cast<std::size_t>(n));
            for (int x = 0; x < n; ++x)
                comp[static_cast<std::size_t>(x)] =
                    perms[static_cast<std::size_t>(i)][static_cast<std::size_t>(perms[static_cast<std::size_t>(j)][static_cast<std::size_t>(x)])];
            g.table[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = find(comp);
        }
    }
    return g;
}

AlgebraPtr group_ring(const std::vector<std::vector<int>>& mult_table,
                      const std::vector<int>& inverse_table) {
    const int n = static_cast<int>(mult_table.size());
    if (n == 0) throw NotAGroup("group_ring: empty table");
    if (static_cast<int>(inverse_table.size()) != n)
        throw NotAGroup("group_ring: inverse table has wrong length");
    auto in_range = [n](int g) { return g >= 0 && g < n; };
    for (const auto& row : mult_table) {
        if (static_cast<int>(row.size()) != n) throw NotAGroup("group_ring: table not square");
        for (int g : row)
            if (!in_range(g)) throw NotAGroup("group_ring: table entry out of range");
    }
    for (int g = 0; g < n; ++g) {
        if (mult_table[0][static_cast<std::size_t>(g)] != g ||
            mult_table[static_cast<std::size_t>(g)][0] != g)
            throw NotAGroup("group_ring: index 0 is not a two-sided identity");
        int inv = inverse_table[static_cast<std::size_t>(g)];
        if (!in_range(inv) || mult_table[static_cast<std::size_t>(g)][static_cast<std::size_t>(inv)] != 0 ||
            mult_table[static_cast<std::size_t>(inv)][static_cast<std::size_t>(g)] != 0)
            throw NotAGroup("group_ring: inverse table inconsistent");
    }
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) {
                int ij = mult_table[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
                int jk = mult_table[static_cast<std::size_t>(j)][static_cast<std::size_t>(k)];
                if (mult_table[static_cast<std::size_t>(ij)][static_cast<std::size_t>(k)] !=
                    mult_table[static_cast<std::size_t>(i)][static_cast<std::size_t>(jk)])
                    throw NotAGroup("group_ring: multiplication is not associative");
            }

    StarAlgebra a;
    a.dim = n;
    a.structure.assign(static_cast<std::size_t>(n), zero_mat(n, n));
    a.involution = zero_mat(n, n);
    a.unit_coords = CVector::Zero(n);
    a.unit_coords(0) = 1.0;
    for (int g = 0; g < n; ++g) {
        a.basis_labels.push_back("d" + std::to_string(g));
        a.involution(g, inverse_table[static_cast<std::size_t>(g)]) = 1.0;
        CMatrix left = zero_mat(n, n);  // left regular representation of delta_g
        for (int h = 0; h < n; ++h) {
            int gh = mult_table[static_cast<std::size_t>(g)][static_cast<std::size_t>(h)];
            a.structure[static_cast<std::size_t>(g)](h, gh) = 1.0;
            left(gh, h) = 1.0;
        }
        a.realization.push_back(left);
    }
    a.norm = {NormKind::L1, 2.0};
    return make_algebra(std::move(a));
}

AlgebraPtr weighted_int_ring(const std::vector<long>& support, double gamma) {
    if (gamma < 1.0) throw Error("weighted_int_ring: gamma must be >= 1");
    std::vector<long> sup = support;
    std::sort(sup.begin(), sup.end());
    sup.erase(std::unique(sup.begin(), sup.end()), sup.end());
    if (sup.empty()) throw Error("weighted_int_ring: empty support");
    std::set<long> sset(sup.begin(), sup.end());
    for (long m : sup)
        if (!sset.count(-m)) throw Error("weighted_int_ring: support not closed under negation");

    const int d = static_cast<int>(sup.size());
    std::map<long, int> pos;
    for (int i = 0; i < d; ++i) pos[sup[static_cast<std::size_t>(i)]] = i;

    StarAlgebra a;
    a.dim = d;
    a.z_index = sup;
    a.structure.assign(static_cast<std::size_t>(d), zero_mat(d, d));
    a.involution = zero_mat(d, d);
    for (int i = 0; i < d; ++i) {
        long zi = sup[static_cast<std::size_t>(i)];
        a.basis_labels.push_back("d" + std::to_string(zi));
        a.involution(i, pos.at(-zi)) = 1.0;
        for (int j = 0; j < d; ++j) {
            auto it = pos.find(zi + sup[static_cast<std::size_t>(j)]);
            if (it != pos.end()) a.structure[static_cast<std::size_t>(i)](j, it->second) = 1.0;
        }
    }
    if (pos.count(0)) {
        a.unit_coords = CVector::Zero(d);
        a.unit_coords(pos.at(0)) = 1.0;
    }
    a.norm = {NormKind::Weighted, gamma};
    return make_algebra(std::move(a));
}

AlgebraPtr unitise(const AlgebraPtr& alg) {
    if (alg->has_unit()) return alg;
    const int d = alg->dim;
    StarAlgebra a;
    a.dim = d + 1;
    a.basis_labels.push_back("e");
    for (const auto& l : alg->basis_labels) a.basis_labels.push_back(l);
    a.structure.assign(static_cast<std::size_t>(d + 1), zero_mat(d + 1, d + 1));
    a.structure[0] = CMatrix::Identity(d + 1, d + 1);
    for (int i = 0; i < d; ++i) {
        auto& s = a.structure[static_cast<std::size_t>(i + 1)];
        s(0, i + 1) = 1.0;  // e_i * e = e_i
        s.block(1, 1, d, d) = alg->structure[static_cast<std::size_t>(i)];
    }
    a.involution = zero_mat(d + 1, d + 1);
    a.involution(0, 0) = 1.0;
    a.involution.block(1, 1, d, d) = alg->involution;
    a.unit_coords = CVector::Zero(d + 1);
    a.unit_coords(0) = 1.0;

    if (alg->norm.kind == NormKind::Operator && alg->has_realization()) {
        const Eigen::Index n = alg->realization.front().rows();
        a.realization.push_back(CMatrix::Identity(n, n));
        for (const auto& r : alg->realization) a.realization.push_back(r);
        a.norm = {NormKind::Operator, 2.0};
    } else {
        a.norm = {NormKind::UnitisedSum, alg->norm.gamma};
        a.unitised_inner = alg;
    }
    return make_algebra(std::move(a));
}

// ---------------------------------------------------------------------------

AlgebraElement element(const AlgebraPtr& alg, CVector coeffs) {
    if (coeffs.size() != alg->dim)
        throw DimensionMismatch("element: coefficient vector has wrong length");
    return {alg, std::move(coeffs)};
}

AlgebraElement basis_element(const AlgebraPtr& alg, int i) {
    CVector c = CVector::Zero(alg->dim);
    c(i) = 1.0;
    return {alg, std::move(c)};
}

AlgebraElement zero_element(const AlgebraPtr& alg) { return {alg, CVector::Zero(alg->dim)}; }

AlgebraElement unit_element(const AlgebraPtr& alg) {
    if (!alg->has_unit()) throw NotUnital("unit_element: algebra has no unit");
    return {alg, alg->unit_coords};
}

AlgebraElement element_mul(const AlgebraElement& a, const AlgebraElement& b) {
    check_same_algebra(a, b);
    const StarAlgebra& alg = *a.algebra;
    if (!alg.z_index.empty()) {
        // Windowed Z-ring: sparse convolution with overflow check.
        std::map<long, int> pos;
        for (int i = 0; i < alg.dim; ++i) pos[z_of(alg, i)] = i;
        CVector out = CVector::Zero(alg.dim);
        for (int i = 0; i < alg.dim; ++i) {
            if (a.coeffs(i) == Complex(0.0, 0.0)) continue;
            for (int j = 0; j < alg.dim; ++j) {
                if (b.coeffs(j) == Complex(0.0, 0.0)) continue;
                auto it = pos.find(z_of(alg, i) + z_of(alg, j));
                if (it == pos.end())
                    throw WindowOverflow("element_mul: product leaves the support window");
                out(it->second) += a.coeffs(i) * b.coeffs(j);
            }
        }
        return {a.algebra, std::move(out)};
    }
    return {a.algebra, alg.left_mult(a.coeffs) * b.coeffs};
}

AlgebraElement element_adjoint(const AlgebraElement& a) {
    return {a.algebra, a.algebra->involution.transpose() * a.coeffs.conjugate()};
}

double element_norm(const AlgebraElement& a) {
    const StarAlgebra& alg = *a.algebra;
    switch (alg.norm.kind) {
        case NormKind::Operator:
            return op_norm(realize(a));
        case NormKind::L1:
            return a.coeffs.cwiseAbs().sum();
        case NormKind::Weighted: {
            double s = 0.0;
            for (int i = 0; i < alg.dim; ++i)
                s += std::abs(a.coeffs(i)) * std::pow(alg.norm.gamma, static_cast<double>(z_of(alg, i)));
            return s;
        }
        case NormKind::Sup:
            return a.coeffs.cwiseAbs().maxCoeff();
        case NormKind::UnitisedSum: {
            AlgebraElement inner{alg.unitised_inner, a.coeffs.tail(alg.dim - 1)};
            return std::abs(a.coeffs(0)) + element_norm(inner);
        }
    }
    throw Error("element_norm: unknown norm kind");
}

AlgebraElement operator+(const AlgebraElement& a, const AlgebraElement& b) {
    check_same_algebra(a, b);
    return {a.algebra, a.coeffs + b.coeffs};
}

AlgebraElement operator-(const AlgebraElement& a, const AlgebraElement& b) {
    check_same_algebra(a, b);
    return {a.algebra, a.coeffs - b.coeffs};
}

AlgebraElement operator*(const AlgebraElement& a, const AlgebraElement& b) {
    return element_mul(a, b);
}

AlgebraElement operator*(const Complex& s, const AlgebraElement& a) {
    return {a.algebra, s * a.coeffs};
}

CMatrix realize(const AlgebraElement& a) {
    const StarAlgebra& alg = *a.algebra;
    if (!alg.has_realization()) throw NoRealization("realize: algebra has no realization");
    const Eigen::Index n = alg.realization.front().rows();
    CMatrix m = zero_mat(static_cast<int>(n), static_cast<int>(n));
    for (int i = 0; i < alg.dim; ++i) m += a.coeffs(i) * alg.realization[static_cast<std::size_t>(i)];
    return m;
}

AlgebraElement from_matrix(const AlgebraPtr& alg, const CMatrix& m, double tol) {
    if (!alg->has_realization()) throw NoRealization("from_matrix: algebra has no realization");
    const Eigen::Index n = alg->realization.front().rows();
    if (m.rows() != n || m.cols() != n)
        throw DimensionMismatch("from_matrix: matrix size does not match realization");
    CMatrix sys(n * n, alg->dim);
    for (int i = 0; i < alg->dim; ++i)
        sys.col(i) = alg->realization[static_cast<std::size_t>(i)].reshaped();
    CVector rhs = m.reshaped();
    Eigen::JacobiSVD<CMatrix> svd(sys, Eigen::ComputeThinU | Eigen::ComputeThinV);
    CVector x = svd.solve(rhs);
    if ((sys * x - rhs).norm() > tol * (1.0 + rhs.norm()))
        throw Error("from_matrix: matrix does not lie in the algebra span");
    return {alg, std::move(x)};
}

Representation regular_rep(const AlgebraPtr& alg) {
    if (!alg->has_unit()) throw NotUnital("regular_rep: algebra has no unit");
    if (!alg->z_index.empty())
        throw Error("regular_rep: not defined on a truncated support window");
    Representation rep;
    rep.algebra = alg;
    rep.space_dim = alg->dim;
    for (int i = 0; i < alg->dim; ++i) {
        rep.matrices.push_back(alg->structure[static_cast<std::size_t>(i)].transpose());
    }
    return rep;
}

// ---------------------------------------------------------------------------

CheckReport validate(const AlgebraPtr& alg, int random_samples, std::uint64_t seed) {
    const StarAlgebra& a = *alg;
    const int d = a.dim;
    CheckReport rep;
    rep.seed = seed;

    // Associativity on the structure constants.
    double assoc = 0.0;
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
            AlgebraElement ei = basis_element(alg, i), ej = basis_element(alg, j);
            for (int k = 0; k < d; ++k) {
                AlgebraElement ek = basis_element(alg, k);
                try {
                    CVector lhs = element_mul(element_mul(ei, ej), ek).coeffs;
                    CVector rhs = element_mul(ei, element_mul(ej, ek)).coeffs;
                    assoc = std::max(assoc, (lhs - rhs).norm());
                } catch (const WindowOverflow&) {
                    // Triples leaving the window carry no structure constants.
                }
            }
        }
    rep.add("associativity", assoc, 1e-12);

    // Involution: involutive and anti-multiplicative.
    double invol = 0.0;
    for (int i = 0; i < d; ++i) {
        AlgebraElement ei = basis_element(alg, i);
        invol = std::max(invol, (element_adjoint(element_adjoint(ei)).coeffs - ei.coeffs).norm());
    }
    rep.add("involution_involutive", invol, 1e-12);

    double anti = 0.0;
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
            AlgebraElement ei = basis_element(alg, i), ej = basis_element(alg, j);
            try {
                CVector lhs = element_adjoint(element_mul(ei, ej)).coeffs;
                CVector rhs = element_mul(element_adjoint(ej), element_adjoint(ei)).coeffs;
                anti = std::max(anti, (lhs - rhs).norm());
            } catch (const WindowOverflow&) {
            }
        }
    rep.add("involution_anti_multiplicative", anti, 1e-12);

    if (a.has_unit()) {
        double unit_res = 0.0;
        AlgebraElement e = unit_element(alg);
        for (int i = 0; i < d; ++i) {
            AlgebraElement ei = basis_element(alg, i);
            unit_res = std::max(unit_res, (element_mul(e, ei).coeffs - ei.coeffs).norm());
            unit_res = std::max(unit_res, (element_mul(ei, e).coeffs - ei.coeffs).norm());
        }
        rep.add("unit_axiom", unit_res, 1e-10);
    }

    if (a.has_realization()) {
        double hom = 0.0, star = 0.0;
        for (int i = 0; i < d; ++i) {
            AlgebraElement ei = basis_element(alg, i);
            star = std::max(star, (realize(element_adjoint(ei)) - realize(ei).adjoint()).norm());
            for (int j = 0; j < d; ++j) {
                AlgebraElement ej = basis_element(alg, j);
                hom = std::max(hom, (realize(ei) * realize(ej) - realize(element_mul(ei, ej))).norm());
            }
        }
        rep.add("realization_multiplicative", hom, 1e-10);
        rep.add("realization_star", star, 1e-10);
    }

    // Norm submultiplicativity on basis pairs and random pairs.
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    auto random_elem = [&]() {
        CVector c(d);
        for (int i = 0; i < d; ++i) c(i) = Complex(gauss(rng), gauss(rng));
        return element(alg, std::move(c));
    };
    double submult = 0.0;
    auto probe = [&](const AlgebraElement& x, const AlgebraElement& y) {
        try {
            double lhs = element_norm(element_mul(x, y));
            submult = std::max(submult, lhs - element_norm(x) * element_norm(y));
        } catch (const WindowOverflow&) {
        }
    };
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) probe(basis_element(alg, i), basis_element(alg, j));
    for (int s = 0; s < random_samples; ++s) probe(random_elem(), random_elem());
    rep.add("norm_submultiplicative", submult, 1e-9);

    return rep;
}

}  // namespace opstar
