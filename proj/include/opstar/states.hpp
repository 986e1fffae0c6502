#pragma once

#include "opstar/spectral.hpp"

namespace opstar {

struct FunctionalWitness {
    bool positive = false;
    double min_eigenvalue = 0;   // most negative Gram eigenvalue
    double hermitian_residual = 0;
};

/// GNS data: representation on the range of the Gram matrix, the class of
/// the reproducing vector, and the variation v = ||cyclic_vector||^2.
struct GnsResult {
    Representation rep;
    CVector cyclic_vector;
    int gram_rank = 0;
    double variation = 0;
};

/// Gram matrix G(i,j) = phi(e_i^* e_j), so phi(a* a) = a^H G a.
CMatrix gram_matrix(const LinearFunctional& phi);

/// phi(a* a) >= 0 for all a, decided by the Gram spectrum.
FunctionalWitness is_positive_functional(const LinearFunctional& phi,
                                         double tol = kDefaultTol);

/// Smallest v with |phi(a)|^2 <= v phi(a* a); phi(e) for unital algebras.
double variation(const LinearFunctional& phi, double tol = kDefaultTol);

/// Cyclic representation with phi(a) = <pi(a) c, c>.
GnsResult gns(const LinearFunctional& phi, double tol = kDefaultTol);

/// A state is pure exactly when its GNS commutant is the scalars.
bool is_pure(const LinearFunctional& phi, double tol = kDefaultTol);

/// sup over states of psi(a* a)^{1/2}, equal to the Ptak function on
/// Hermitian algebras.
double enveloping_seminorm(const AlgebraElement& a, double tol = kDefaultTol,
                           std::uint64_t seed = kDefaultSeed);

/// Sampled states stay dominated by the enveloping seminorm.
CheckReport universal_norm_check(const AlgebraPtr& alg, int samples,
                                 std::uint64_t seed = kDefaultSeed);

struct CyclicPiece {
    CMatrix projection;
    CVector cyclic_vector;
};

/// Greedy splitting of a non-degenerate representation into orthogonal
/// invariant cyclic subspaces.
std::vector<CyclicPiece> decompose_cyclic(const Representation& pi,
                                          double tol = kDefaultTol);

}  // namespace opstar
