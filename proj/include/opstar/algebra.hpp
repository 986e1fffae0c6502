#pragma once

#include <memory>
#include <string>
#include <vector>

#include "opstar/linalg.hpp"
#include "opstar/report.hpp"

namespace opstar {

enum class NormKind { Operator, L1, Weighted, Sup, UnitisedSum };

struct NormSpec {
    NormKind kind = NormKind::Operator;
    double gamma = 2.0;  // weight base for Weighted
};

struct StarAlgebra;
using AlgebraPtr = std::shared_ptr<const StarAlgebra>;

/// A finite-dimensional *-algebra given by structure constants, an
/// involution matrix, a norm descriptor and (optionally) a faithful
/// matrix realization.
///
/// Conventions: e_i e_j = sum_k structure[i](j,k) e_k and
/// (e_i)^* = sum_k involution(i,k) e_k.
struct StarAlgebra {
    int dim = 0;
    std::vector<std::string> basis_labels;
    std::vector<CMatrix> structure;
    CMatrix involution;
    NormSpec norm;
    std::vector<CMatrix> realization;  // empty when absent
    CVector unit_coords;               // size 0 when non-unital
    std::vector<long> z_index;         // integer grading for windowed Z-rings
    AlgebraPtr unitised_inner;         // original algebra, for UnitisedSum norms

    bool has_unit() const { return unit_coords.size() == dim && dim > 0; }
    bool has_realization() const { return !realization.empty(); }

    /// Matrix of left multiplication by the element with these coefficients,
    /// acting on coefficient vectors.
    CMatrix left_mult(const CVector& coeffs) const;
};

struct AlgebraElement {
    AlgebraPtr algebra;
    CVector coeffs;
};

/// Assignment of a square matrix to each basis element of an algebra,
/// acting on a finite-dimensional inner-product space.
struct Representation {
    AlgebraPtr algebra;
    int space_dim = 0;
    std::vector<CMatrix> matrices;

    CMatrix apply(const AlgebraElement& a) const;
};

struct LinearFunctional {
    AlgebraPtr algebra;
    Eigen::RowVectorXcd row;

    Complex operator()(const AlgebraElement& a) const;
};

// ---------------------------------------------------------------------------
// Constructors

struct GroupTable {
    std::vector<std::vector<int>> table;
    std::vector<int> inverses;
};

/// Cyclic group Z_n, identity at index 0.
GroupTable cyclic_group(int n);

/// Symmetric group S_n (permutations in lexicographic order, identity first).
GroupTable symmetric_group(int n);

/// Full matrix algebra M_n with the matrix-unit basis.
AlgebraPtr full_matrix_algebra(int n);

/// Commutative algebra C^n with the coordinate projections as basis,
/// realized as diagonal n x n matrices.
AlgebraPtr diagonal_algebra(int n);

/// Smallest *-subalgebra of N x N matrices containing the generators.
/// The basis is orthonormalized under the trace inner product.
AlgebraPtr generate_matrix_algebra(const std::vector<CMatrix>& generators,
                                   double tol = 1e-9);

/// Group ring C[G] from a multiplication table (identity at index 0), with
/// the l1 norm and the left regular representation as realization.
AlgebraPtr group_ring(const std::vector<std::vector<int>>& mult_table,
                      const std::vector<int>& inverse_table);

/// C[Z] restricted to a finite support window, with |a| = sum |a(n)| gamma^n.
/// Products leaving the window raise WindowOverflow at multiplication time.
AlgebraPtr weighted_int_ring(const std::vector<long>& support, double gamma);

/// Adjoin a unit unless the algebra already has one.
AlgebraPtr unitise(const AlgebraPtr& a);

/// Finalize a hand-built StarAlgebra (sanity checks only; use validate()
/// for the full axiom report).
AlgebraPtr make_algebra(StarAlgebra data);

// ---------------------------------------------------------------------------
// Element arithmetic

AlgebraElement element(const AlgebraPtr& alg, CVector coeffs);
AlgebraElement basis_element(const AlgebraPtr& alg, int i);
AlgebraElement zero_element(const AlgebraPtr& alg);
AlgebraElement unit_element(const AlgebraPtr& alg);

AlgebraElement element_mul(const AlgebraElement& a, const AlgebraElement& b);
AlgebraElement element_adjoint(const AlgebraElement& a);
double element_norm(const AlgebraElement& a);

AlgebraElement operator+(const AlgebraElement& a, const AlgebraElement& b);
AlgebraElement operator-(const AlgebraElement& a, const AlgebraElement& b);
AlgebraElement operator*(const AlgebraElement& a, const AlgebraElement& b);
AlgebraElement operator*(const Complex& s, const AlgebraElement& a);

/// Image of a under the algebra's realization.
CMatrix realize(const AlgebraElement& a);

/// Least-squares expansion of a matrix in the realization span; throws if
/// the matrix is not in the span within tolerance.
AlgebraElement from_matrix(const AlgebraPtr& alg, const CMatrix& m,
                           double tol = 1e-8);

/// Left regular representation of a unital algebra on its coefficient space.
Representation regular_rep(const AlgebraPtr& alg);

/// Axiom report: associativity, involution laws, unit, realization
/// homomorphism, norm submultiplicativity (basis pairs + random samples).
CheckReport validate(const AlgebraPtr& alg, int random_samples = 100,
                     std::uint64_t seed = kDefaultSeed);

}  // namespace opstar
