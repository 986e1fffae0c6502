#pragma once

#include <functional>
#include <optional>

#include "opstar/gelfand.hpp"

namespace opstar {

/// Point of a finite spectrum set: a single complex number for scalar
/// spectra, or a tuple of joint eigenvalues for representation spectra.
using PointLabel = std::vector<Complex>;

inline PointLabel scalar_point(const Complex& z) { return {z}; }

/// Projection-valued measure on a finite point set: one orthogonal
/// projection per point, summing to the identity.
struct SpectralMeasure {
    std::vector<PointLabel> points;
    std::vector<CMatrix> projections;
    int space_dim = 0;
};

/// C^{|points|} with inner product sum_j mu_j x_j conj(y_j).
struct WeightedSpace {
    std::vector<PointLabel> points;
    Eigen::VectorXd weights;
};

struct MultOperator {
    CMatrix op;
    double norm = 0;  // mu-essential sup of |g|
};

struct SpectralRepresentation {
    WeightedSpace space;
    CMatrix v;  // rows map x to the function tau -> <x, P_tau c>/mu_tau
    Eigen::VectorXd mu;
};

/// Residual report: projections, completeness, pairwise orthogonality and
/// intersection multiplicativity over random subset pairs.
CheckReport validate_spectral_measure(const SpectralMeasure& P,
                                      std::uint64_t seed = kDefaultSeed);

/// sum_omega f(omega) P({omega}); values aligned with P.points.
CMatrix spectral_integral(const SpectralMeasure& P,
                          const std::vector<Complex>& values);
CMatrix spectral_integral(const SpectralMeasure& P,
                          const std::function<Complex(const PointLabel&)>& f);

/// Eigenvalue clusters and eigenprojections of a normal matrix, with
/// reconstruction and commutant-equality checks.
SpectralMeasure resolution_of_normal(const CMatrix& b, double tol = kDefaultTol);

/// f(b) through the spectral resolution of a normal b.
CMatrix borel_calculus(const CMatrix& b, const std::function<Complex(Complex)>& f,
                       double tol = kDefaultTol);

/// Rank of each atom vs geometric multiplicity of the eigenvalue.
CheckReport atoms_are_eigenvalues(const CMatrix& b, double tol = kDefaultTol);

/// Pushforward of the measure along a map of point sets; preimages of a
/// common image point merge.
SpectralMeasure image_measure(const SpectralMeasure& P,
                              const std::function<PointLabel(const PointLabel&)>& f,
                              double tol = kDefaultTol);

/// Orthonormal (trace inner product) basis of {x : xa = ax for a in S u S*}.
std::vector<CMatrix> commutant(const std::vector<CMatrix>& s,
                               double tol = kDefaultTol);

/// A'' = A for the *-algebra generated by the given matrices.
CheckReport bicommutant_check(const std::vector<CMatrix>& generators,
                              double tol = kDefaultTol);

/// Every intertwiner a n1 = n2 a of normal matrices also intertwines the
/// adjoints.
CheckReport fuglede_check(const CMatrix& n1, const CMatrix& n2,
                          double tol = kDefaultTol);

/// Diagonal multiplication operator on a weighted space.
MultOperator mult_operator(const WeightedSpace& space,
                           const std::vector<Complex>& g);

/// Joint eigenspace resolution of a commuting normal family pi(e_i);
/// points are joint-eigenvalue tuples in lex order.
SpectralMeasure resolution_of_representation(const Representation& pi,
                                             double tol = kDefaultTol);

/// Unitary from a cyclic representation of a commutative algebra onto
/// multiplication operators on L^2(mu) over its spectrum.
SpectralRepresentation spectral_representation(const Representation& pi,
                                               const CVector& c,
                                               double tol = kDefaultTol);

}  // namespace opstar
