#pragma once

#include <utility>

#include "opstar/spectrum.hpp"

namespace opstar {

/// Polar factorisation a = u |a| of an invertible element.
struct PolarPair {
    AlgebraElement unitary_part;
    AlgebraElement positive_part;
};

struct PositivityWitness {
    bool positive = false;
    double min_spectral_point = 0.0;
    AlgebraElement sqrt_witness;  // c with a = c*c when positive
};

/// Square root via the binomial series: b with (e+b)^2 = e+a, for
/// r_lambda(a) < 1. Coefficients by the stable recurrence.
AlgebraElement sqrt_series(const AlgebraElement& a, double tol = kDefaultTol);

/// Unique positive Hermitian square root of a positive Hermitian element,
/// computed spectrally; eigenvalue dust in [-sqrt(tol)|a|, 0) is clamped.
AlgebraElement positive_sqrt(const AlgebraElement& a, double tol = kDefaultTol);

/// |a| = (a* a)^{1/2}.
AlgebraElement abs_value(const AlgebraElement& a, double tol = kDefaultTol);

/// Polar factorisation of an invertible element.
PolarPair polar(const AlgebraElement& a, double tol = kDefaultTol);

/// Positive and negative parts of a Hermitian element: a = a+ - a-,
/// a+ a- = 0.
std::pair<AlgebraElement, AlgebraElement> pos_neg_parts(const AlgebraElement& a,
                                                        double tol = kDefaultTol);

/// Hermitian with spectrum in [0, inf) within tolerance.
PositivityWitness is_positive(const AlgebraElement& a, double tol = 1e-7);

/// For 0 <= a <= b with a invertible: checks b invertible and
/// b^{-1} <= a^{-1}.
CheckReport inverse_monotone_check(const AlgebraElement& a,
                                   const AlgebraElement& b,
                                   double tol = 1e-7);

}  // namespace opstar
