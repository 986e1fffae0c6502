#pragma once

#include <map>

#include "opstar/spectrum.hpp"

namespace opstar {

/// All multiplicative linear functionals of a commutative semisimple
/// algebra, sorted lexicographically by their value tuple on the basis.
struct CharacterSet {
    AlgebraPtr algebra;
    std::vector<LinearFunctional> characters;
    std::vector<bool> hermitian_flags;  // tau(a*) == conj(tau(a))
};

/// Finitely supported coefficient sequence on Z, standing in for a
/// truncated l1(Z) element; f(t) = sum_k coeffs[k] e^{ikt}.
struct FourierElement {
    std::map<long, Complex> coeffs;
};

struct WienerResult {
    FourierElement g;
    std::vector<double> l1_partials;    // partial sums over |k| <= K
    double max_pointwise_residual = 0;  // max_t |f(t) g(t) - 1| on the grid
    double conv_residual = 0;           // ||f * g - delta_0||_1 on the window
    double tail_l1 = 0;                 // sum |g(k)| over n_out < |k| <= 3 n_out
};

struct CharacterDemoRow {
    int n = 0;
    double delta_norm = 0;    // |delta_{-n}| = gamma^{-n}
    double char_modulus = 0;  // |tau(delta_{-n})| = 1
};

struct CharacterDemoReport {
    std::vector<CharacterDemoRow> rows;
    double max_hermitian_ratio = 0;  // max |tau(h)| / |h| over random Hermitian h
    double unbounded_ratio = 0;      // |tau(delta_{-n_max})| / |delta_{-n_max}|
    CheckReport checks;
};

/// Characters via joint diagonalization of the regular representation of
/// a random generic element; retries on degenerate draws, then reports a
/// trace-form kernel vector as the nilpotent witness.
CharacterSet characters(const AlgebraPtr& alg, double tol = kDefaultTol,
                        std::uint64_t seed = kDefaultSeed);

/// a-hat: the vector (tau_0(a), ..., tau_{dim-1}(a)).
CVector gelfand_transform(const AlgebraElement& a, const CharacterSet& cs);

/// The probability weights mu on the character set with
/// psi(a) = sum_j mu_j a-hat(tau_j), from the basis linear system.
Eigen::VectorXd bochner_measure(const LinearFunctional& psi,
                                const CharacterSet& cs, double tol = 1e-7);

/// Coefficients of 1/f on the torus, truncated to |k| <= n_out, by
/// trapezoid quadrature on a 4096-point grid (exact for trigonometric
/// polynomials at this bandwidth).
WienerResult wiener_inverse(const FourierElement& f, int n_out,
                            double tol = 1e-9);

/// Weighted ring |a| = sum |a(n)| gamma^n with the evaluation character
/// tau(a) = sum a(n): contractive on Hermitian elements, yet
/// |tau(delta_{-n})| / |delta_{-n}| = gamma^n is unbounded.
CharacterDemoReport discontinuous_character_demo(double gamma, int n_max,
                                                 std::uint64_t seed = kDefaultSeed);

}  // namespace opstar
