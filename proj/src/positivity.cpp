#include "opstar/positivity.hpp"

#include <cmath>

namespace opstar {

namespace {

double elem_scale(const AlgebraElement& a) {
    return a.algebra->has_realization() ? op_norm(realize(a)) : element_norm(a);
}

bool hermitian_within(const AlgebraElement& a, double tol) {
    AlgebraElement diff = a - element_adjoint(a);
    double scale = 1.0 + elem_scale(a);
    if (a.algebra->has_realization()) return op_norm(realize(diff)) <= tol * scale;
    return diff.coeffs.norm() <= tol * scale;
}

double min_spectral_real(const AlgebraElement& a, double tol) {
    double m = std::numeric_limits<double>::infinity();
    for (const Complex& lam : spectrum(a, tol).points) m = std::min(m, lam.real());
    return m;
}

double radius_for_precheck(const AlgebraElement& a) {
    try {
        return spectral_radius(a);
    } catch (const NoRealization&) {
        try {
            return spectral_radius_limit(a, 64).value;
        } catch (const WindowOverflow&) {
            return element_norm(a);
        }
    }
}

}  // namespace

AlgebraElement sqrt_series(const AlgebraElement& a, double tol) {
    double r = radius_for_precheck(a);
    if (r >= 0.999)
        throw RadiusTooLarge("sqrt_series: spectral radius must be below 1");

    const double na = element_norm(a);
    const int cap = 10000;
    double coeff = 0.5;  // binom(1/2, 1)
    AlgebraElement power = a;
    AlgebraElement b = Complex(coeff) * a;
    int quiet = 0;
    for (int n = 1; n < cap; ++n) {
        double next_coeff = coeff * (0.5 - n) / (n + 1.0);
        power = element_mul(power, a);
        AlgebraElement term = Complex(next_coeff) * power;
        b = b + term;
        coeff = next_coeff;
        double tnorm = element_norm(term);
        if (na < 1.0) {
            // Scalar majorant tail of sum |binom(1/2,k)| t^k.
            if (std::abs(next_coeff) * std::pow(na, n + 1) / (1.0 - na) < tol) return b;
        } else {
            quiet = tnorm < tol ? quiet + 1 : 0;
            if (quiet >= 3) return b;
        }
    }
    throw NonConvergent("sqrt_series: term cap reached; rescale the input");
}

AlgebraElement positive_sqrt(const AlgebraElement& a, double tol) {
    if (!hermitian_within(a, std::max(tol, 1e-9)))
        throw NotHermitian("positive_sqrt: element is not Hermitian");
    CMatrix r = realize(a);
    double scale = op_norm(r);
    auto sys = herm_eig((r + r.adjoint()) / 2.0, 1e-7);
    double floor = -std::sqrt(std::max(tol, 1e-15)) * std::max(scale, 1.0);
    CVector vals = sys.eigenvalues;
    for (Eigen::Index i = 0; i < vals.size(); ++i) {
        double v = vals(i).real();
        if (v < floor)
            throw NotPositive("positive_sqrt: genuinely negative eigenvalue");
        vals(i) = std::sqrt(std::max(v, 0.0));
    }
    CMatrix root = sys.basis * vals.asDiagonal() * sys.basis.adjoint();
    AlgebraElement out = from_matrix(a.algebra, root, 1e-7);

    // The root must lie in the unital subalgebra generated by a: project
    // onto span{a^0, ..., a^dim} and check the residual.
    if (a.algebra->has_unit()) {
        const int d = a.algebra->dim;
        const Eigen::Index n = r.rows();
        CMatrix rn = r / std::max(scale, 1.0);  // keep power columns bounded
        CMatrix span(n * n, d + 1);
        CMatrix p = realize(unit_element(a.algebra));
        for (int k = 0; k <= d; ++k) {
            span.col(k) = p.reshaped();
            p = p * rn;
        }
        Eigen::ColPivHouseholderQR<CMatrix> qr(span);
        CVector rhs = root.reshaped();
        CVector x = qr.solve(rhs);
        if ((span * x - rhs).norm() > 1e-6 * (1.0 + rhs.norm()))
            throw Error("positive_sqrt: root is not a polynomial in the input");
    }
    return out;
}

AlgebraElement abs_value(const AlgebraElement& a, double tol) {
    return positive_sqrt(element_mul(element_adjoint(a), a), tol);
}

PolarPair polar(const AlgebraElement& a, double tol) {
    AlgebraElement mod = abs_value(a, tol);
    AlgebraElement mod_inv = element_inverse(mod, std::max(tol, 1e-12));
    AlgebraElement u = element_mul(a, mod_inv);

    double scale = 1.0 + elem_scale(a);
    AlgebraElement e = unit_element(a.algebra);
    double res_unitary = std::max(
        elem_scale(element_mul(element_adjoint(u), u) - e),
        elem_scale(element_mul(u, element_adjoint(u)) - e));
    if (res_unitary > 1e-7 * scale)
        throw NotInvertible("polar: unitary factor residual too large");
    double res_fact = elem_scale(element_mul(u, mod) - a);
    if (res_fact > 1e-7 * scale) throw Error("polar: factorisation residual too large");
    return {std::move(u), std::move(mod)};
}

std::pair<AlgebraElement, AlgebraElement> pos_neg_parts(const AlgebraElement& a,
                                                        double tol) {
    if (!hermitian_within(a, std::max(tol, 1e-9)))
        throw NotHermitian("pos_neg_parts: element is not Hermitian");
    AlgebraElement mod = abs_value(a, tol);
    AlgebraElement plus = Complex(0.5) * (mod + a);
    AlgebraElement minus = Complex(0.5) * (mod - a);
    return {std::move(plus), std::move(minus)};
}

PositivityWitness is_positive(const AlgebraElement& a, double tol) {
    PositivityWitness w{false, 0.0, zero_element(a.algebra)};
    if (!hermitian_within(a, tol)) return w;
    double scale = 1.0 + elem_scale(a);
    w.min_spectral_point = min_spectral_real(a, kDefaultTol);
    if (w.min_spectral_point >= -tol * scale) {
        w.positive = true;
        w.sqrt_witness = positive_sqrt(a, std::max(tol * tol, 1e-14));
    }
    return w;
}

CheckReport inverse_monotone_check(const AlgebraElement& a, const AlgebraElement& b,
                                   double tol) {
    double scale = 1.0 + std::max(elem_scale(a), elem_scale(b));
    if (!hermitian_within(a, tol) || !hermitian_within(b, tol))
        throw PreconditionFailed("inverse_monotone_check: inputs must be Hermitian");
    if (min_spectral_real(a, kDefaultTol) < -tol * scale)
        throw PreconditionFailed("inverse_monotone_check: a is not positive");
    if (min_spectral_real(b - a, kDefaultTol) < -tol * scale)
        throw PreconditionFailed("inverse_monotone_check: a <= b fails");
    AlgebraElement a_inv = element_inverse(a);

    CheckReport rep;
    AlgebraElement b_inv = element_inverse(b);  // throws NotInvertible on failure
    rep.add("b_invertible", 0.0, tol);
    double gap = min_spectral_real(a_inv - b_inv, kDefaultTol);
    rep.add("inverse_order_reversed", std::max(0.0, -gap), tol * scale);
    return rep;
}

}  // namespace opstar
