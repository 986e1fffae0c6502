#pragma once

#include <functional>

#include "opstar/spectral.hpp"

namespace opstar {

/// One-parameter unitary group t -> exp(-i t a) with Hermitian generator a.
struct UnitaryPath {
    CMatrix generator;
    std::function<CMatrix(double)> evaluate;
};

/// Cayley transform u = (a - i)(a + i)^{-1} of a Hermitian matrix; unitary
/// with 1 outside its spectrum.
CMatrix cayley(const CMatrix& a, double tol = kDefaultTol);

/// a = i (1 + u)(1 - u)^{-1}; round-trips with cayley.
CMatrix inverse_cayley(const CMatrix& u, double tol = kDefaultTol);

/// f(a) through the spectral resolution; real f on a Hermitian a gives a
/// Hermitian result.
CMatrix fn_selfadjoint(const CMatrix& a, const std::function<Complex(double)>& f,
                       double tol = kDefaultTol);

UnitaryPath unitary_group(const CMatrix& a, double tol = kDefaultTol);

/// Difference-quotient recovery of the generator: for each step size h,
/// ||(U_h x - x)/(-i h) - a x|| stays within the Taylor bound.
CheckReport generator_check(const UnitaryPath& path, const CVector& x,
                            const std::vector<double>& h_list = {1e-2, 1e-3, 1e-4});

}  // namespace opstar
