#pragma once

#include <utility>
#include <vector>

#include "opstar/algebra.hpp"

namespace opstar {

/// Deduplicated spectrum, sorted (re, im) lex.
struct SpectrumResult {
    std::vector<Complex> points;
    bool includes_zero_by_nonunitality = false;

    double max_modulus() const;
};

/// Convergence trace of the norm-limit spectral radius.
struct RadiusTrace {
    double value = 0.0;
    std::vector<std::pair<int, double>> trace;  // (n, |a^n|^{1/n})
};

/// Spectrum of an algebra element, computed from a faithful realization
/// (constructed via the regular representation of the unitisation when
/// the algebra has none). Zero is adjoined for non-unital algebras and
/// corner subalgebras whose unit is not the ambient identity.
SpectrumResult spectrum(const AlgebraElement& a, double tol = kDefaultTol);

/// min over n = 1, 2, 4, ... <= n_max of |a^n|^{1/n}, with the trace.
/// Always an upper bound for the true spectral radius.
RadiusTrace spectral_radius_limit(const AlgebraElement& a, int n_max);

/// max |lambda| over spectrum(a).
double spectral_radius(const AlgebraElement& a, double tol = kDefaultTol);

/// Ptak function r_sigma(a) = r_lambda(a* a)^{1/2}.
double ptak(const AlgebraElement& a, double tol = kDefaultTol);

/// Rational function p/q applied to a (coefficients ascending in degree);
/// returns r(a) and its spectrum, checked against r applied pointwise.
std::pair<AlgebraElement, SpectrumResult> rational_map_spectrum(
    const AlgebraElement& a, const std::vector<Complex>& num,
    const std::vector<Complex>& den, double tol = 1e-7);

/// dist(mu, sp(a)), computed both directly and as 1/r_lambda((mu e - a)^{-1}).
double resolvent_distance(const AlgebraElement& a, Complex mu,
                          double tol = 1e-7);

/// Checks real spectra of Hermitian elements and r_lambda <= r_sigma over
/// basis combinations plus random samples.
CheckReport is_hermitian_algebra(const AlgebraPtr& alg, int samples,
                                 double tol = 1e-7,
                                 std::uint64_t seed = kDefaultSeed);

/// Checks sp(a* a) >= 0 over random samples; reports the minimum
/// spectral point found.
CheckReport shirali_ford_check(const AlgebraPtr& alg, int samples,
                               double tol = 1e-7,
                               std::uint64_t seed = kDefaultSeed);

/// Cluster a list of complex values within tol, sorted (re, im) lex.
std::vector<Complex> cluster_points(std::vector<Complex> vals, double tol);

/// Inverse of an element, computed through the realization.
AlgebraElement element_inverse(const AlgebraElement& a, double tol = kDefaultTol);

}  // namespace opstar
