#include "opstar/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace opstar {

namespace {

struct Realized {
    CMatrix essential;  // compression of the element to the essential subspace
    CMatrix q;          // ONB of the essential subspace as columns
    bool adjoin_zero = false;
    AlgebraPtr algebra;  // algebra the compression was computed in
};

Realized realize_essential(const AlgebraElement& a, double tol) {
    const AlgebraPtr& alg = a.algebra;
    Realized out;
    if (alg->has_realization()) {
        CMatrix r = realize(a);
        const Eigen::Index n = r.rows();
        out.algebra = alg;
        if (alg->has_unit()) {
            CMatrix p = realize(unit_element(alg));
            if ((p - CMatrix::Identity(n, n)).norm() <= tol * std::sqrt(double(n))) {
                out.q = CMatrix::Identity(n, n);
                out.essential = r;
                return out;
            }
            out.q = range_basis(p, 0.5);
            out.adjoin_zero = true;
        } else {
            CMatrix stacked(n, n * alg->dim);
            for (int i = 0; i < alg->dim; ++i)
                stacked.middleCols(i * n, n) = alg->realization[static_cast<std::size_t>(i)];
            out.q = range_basis(stacked, 1e-10);
            out.adjoin_zero = true;
        }
        out.essential = out.q.adjoint() * r * out.q;
        return out;
    }
    // No realization: go through the regular representation of the
    // unitisation (sp is unchanged there).
    AlgebraPtr tilde = unitise(alg);
    Representation rep;
    try {
        rep = regular_rep(tilde);
    } catch (const Error&) {
        throw NoRealization("spectrum: no realization and no usable regular representation");
    }
    CVector c = CVector::Zero(tilde->dim);
    if (tilde == alg) {
        c = a.coeffs;
    } else {
        c.tail(alg->dim) = a.coeffs;
    }
    out.algebra = tilde;
    out.q = CMatrix::Identity(tilde->dim, tilde->dim);
    out.essential = rep.apply(element(tilde, std::move(c)));
    out.adjoin_zero = !alg->has_unit();
    return out;
}

double hausdorff(const std::vector<Complex>& a, const std::vector<Complex>& b) {
    auto directed = [](const std::vector<Complex>& x, const std::vector<Complex>& y) {
        double worst = 0.0;
        for (const auto& p : x) {
            double best = std::numeric_limits<double>::infinity();
            for (const auto& q : y) best = std::min(best, std::abs(p - q));
            worst = std::max(worst, best);
        }
        return worst;
    };
    if (a.empty() && b.empty()) return 0.0;
    if (a.empty() || b.empty()) return std::numeric_limits<double>::infinity();
    return std::max(directed(a, b), directed(b, a));
}

}  // namespace

double SpectrumResult::max_modulus() const {
    double m = 0.0;
    for (const auto& p : points) m = std::max(m, std::abs(p));
    return m;
}

std::vector<Complex> cluster_points(std::vector<Complex> vals, double tol) {
    std::vector<Complex> reps;
    std::vector<int> counts;
    for (const auto& v : vals) {
        bool merged = false;
        for (std::size_t c = 0; c < reps.size(); ++c) {
            if (std::abs(v - reps[c]) <= tol) {
                reps[c] = (reps[c] * double(counts[c]) + v) / double(counts[c] + 1);
                ++counts[c];
                merged = true;
                break;
            }
        }
        if (!merged) {
            reps.push_back(v);
            counts.push_back(1);
        }
    }
    std::sort(reps.begin(), reps.end(), lex_less);
    return reps;
}

SpectrumResult spectrum(const AlgebraElement& a, double tol) {
    Realized r = realize_essential(a, tol);
    CVector vals = eigvals(r.essential);
    std::vector<Complex> pts(vals.data(), vals.data() + vals.size());
    if (r.adjoin_zero) pts.push_back(Complex(0.0, 0.0));
    double maxmod = 0.0;
    for (const auto& p : pts) maxmod = std::max(maxmod, std::abs(p));
    SpectrumResult out;
    out.points = cluster_points(std::move(pts), 1e-7 * (1.0 + maxmod));
    out.includes_zero_by_nonunitality = r.adjoin_zero;
    return out;
}

RadiusTrace spectral_radius_limit(const AlgebraElement& a, int n_max) {
    if (n_max < 1) throw Error("spectral_radius_limit: n_max must be positive");
    RadiusTrace out;
    double r1 = element_norm(a);
    out.trace.emplace_back(1, r1);
    out.value = r1;
    if (r1 == 0.0 || n_max == 1) return out;

    // Repeated squaring with per-step renormalization: a^n = exp(s) * b,
    // |b| = 1 throughout, so norms never overflow the floating range.
    AlgebraElement b = (Complex(1.0 / r1)) * a;
    double s = std::log(r1);
    long n = 1;
    while (2 * n <= n_max) {
        AlgebraElement bb = element_mul(b, b);
        double m = element_norm(bb);
        n *= 2;
        if (m == 0.0) {
            out.trace.emplace_back(static_cast<int>(n), 0.0);
            out.value = 0.0;
            return out;
        }
        if (!std::isfinite(m)) throw Overflow("spectral_radius_limit: norm overflow");
        s = 2.0 * s + std::log(m);
        b = Complex(1.0 / m) * bb;
        double rn = std::exp(s / static_cast<double>(n));
        out.trace.emplace_back(static_cast<int>(n), rn);
        out.value = std::min(out.value, rn);
    }
    return out;
}

double spectral_radius(const AlgebraElement& a, double tol) {
    return spectrum(a, tol).max_modulus();
}

double ptak(const AlgebraElement& a, double tol) {
    AlgebraElement g = element_mul(element_adjoint(a), a);
    double r;
    try {
        r = spectral_radius(g, tol);
    } catch (const NoRealization&) {
        // Norm-limit fallback for purely normed algebras (e.g. windowed
        // Z-rings); stops early if powers leave the support window.
        RadiusTrace t{element_norm(g), {}};
        try {
            t = spectral_radius_limit(g, 64);
        } catch (const WindowOverflow&) {
        }
        r = t.value;
    }
    return std::sqrt(std::max(r, 0.0));
}

AlgebraElement element_inverse(const AlgebraElement& a, double tol) {
    Realized r = realize_essential(a, tol);
    if (r.algebra != a.algebra)
        throw NoRealization("element_inverse: algebra has no realization");
    CMatrix inv_ess;
    try {
        inv_ess = mat_inv(r.essential, tol);
    } catch (const Singular&) {
        throw NotInvertible("element_inverse: element is singular on the essential subspace");
    }
    return from_matrix(a.algebra, r.q * inv_ess * r.q.adjoint(), 1e-7);
}

namespace {

Complex eval_poly(const std::vector<Complex>& coeffs, Complex z) {
    Complex acc(0.0, 0.0);
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * z + *it;
    return acc;
}

CMatrix eval_poly_mat(const std::vector<Complex>& coeffs, const CMatrix& m) {
    const Eigen::Index n = m.rows();
    CMatrix acc = CMatrix::Zero(n, n);
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it)
        acc = acc * m + *it * CMatrix::Identity(n, n);
    return acc;
}

std::vector<Complex> poly_roots(const std::vector<Complex>& coeffs) {
    // Strip trailing (leading-degree) zeros.
    std::vector<Complex> c = coeffs;
    while (c.size() > 1 && std::abs(c.back()) < 1e-14) c.pop_back();
    const int deg = static_cast<int>(c.size()) - 1;
    if (deg <= 0) return {};
    CMatrix comp = CMatrix::Zero(deg, deg);
    for (int i = 1; i < deg; ++i) comp(i, i - 1) = 1.0;
    for (int i = 0; i < deg; ++i) comp(i, deg - 1) = -c[static_cast<std::size_t>(i)] / c.back();
    CVector vals = eigvals(comp);
    return std::vector<Complex>(vals.data(), vals.data() + vals.size());
}

}  // namespace

std::pair<AlgebraElement, SpectrumResult> rational_map_spectrum(
    const AlgebraElement& a, const std::vector<Complex>& num,
    const std::vector<Complex>& den, double tol) {
    if (den.empty() || std::all_of(den.begin(), den.end(), [](Complex c) {
            return std::abs(c) < 1e-14;
        }))
        throw Error("rational_map_spectrum: zero denominator");

    SpectrumResult sp_a = spectrum(a);
    double scale = 1.0 + sp_a.max_modulus();
    for (const Complex& root : poly_roots(den))
        for (const Complex& lam : sp_a.points)
            if (std::abs(root - lam) <= tol * scale)
                throw PoleOnSpectrum("rational_map_spectrum: denominator root on the spectrum");

    Realized r = realize_essential(a, kDefaultTol);
    if (r.algebra != a.algebra)
        throw NoRealization("rational_map_spectrum: algebra has no realization");
    CMatrix p_m = eval_poly_mat(num, r.essential);
    CMatrix q_m = eval_poly_mat(den, r.essential);
    CMatrix result_ess = p_m * mat_inv(q_m, 1e-12);
    AlgebraElement ra = from_matrix(a.algebra, r.q * result_ess * r.q.adjoint(), 1e-6);

    SpectrumResult sp_ra = spectrum(ra);
    std::vector<Complex> mapped;
    for (const Complex& lam : sp_a.points)
        mapped.push_back(eval_poly(num, lam) / eval_poly(den, lam));
    double mapped_max = 0.0;
    for (const Complex& m : mapped) mapped_max = std::max(mapped_max, std::abs(m));
    mapped = cluster_points(std::move(mapped), 1e-7 * (1.0 + mapped_max));

    if (hausdorff(sp_ra.points, mapped) > tol * (1.0 + mapped_max))
        throw Error("rational_map_spectrum: spectral mapping identity violated");
    return {std::move(ra), std::move(sp_ra)};
}

double resolvent_distance(const AlgebraElement& a, Complex mu, double tol) {
    SpectrumResult sp = spectrum(a);
    double dist = std::numeric_limits<double>::infinity();
    for (const Complex& lam : sp.points) dist = std::min(dist, std::abs(mu - lam));
    if (dist <= tol * (1.0 + std::abs(mu)))
        throw MuInSpectrum("resolvent_distance: mu lies in the spectrum");

    AlgebraElement res = element_inverse(mu * unit_element(a.algebra) - a);
    double r = spectral_radius(res);
    if (std::abs(1.0 / r - dist) > 1e-6 * (1.0 + dist))
        throw Error("resolvent_distance: resolvent identity violated");
    return dist;
}

CheckReport is_hermitian_algebra(const AlgebraPtr& alg, int samples, double tol,
                                 std::uint64_t seed) {
    if (!alg->has_realization())
        throw NoRealization("is_hermitian_algebra: realization required");
    CheckReport rep;
    rep.seed = seed;
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);

    double max_imag = 0.0, max_gap = 0.0;
    auto probe = [&](const AlgebraElement& h) {
        SpectrumResult sp = spectrum(h);
        double scale = 1.0 + sp.max_modulus();
        for (const Complex& lam : sp.points)
            max_imag = std::max(max_imag, std::abs(lam.imag()) / scale);
        double rl = sp.max_modulus();
        double rs = ptak(h);
        max_gap = std::max(max_gap, (rl - rs) / scale);
    };
    for (int i = 0; i < alg->dim; ++i) {
        AlgebraElement ei = basis_element(alg, i);
        probe(ei + element_adjoint(ei));
        probe(Complex(0, 1) * (ei - element_adjoint(ei)));
    }
    for (int s = 0; s < samples; ++s) {
        CVector c(alg->dim);
        for (int i = 0; i < alg->dim; ++i) c(i) = Complex(gauss(rng), gauss(rng));
        AlgebraElement x = element(alg, std::move(c));
        probe(x + element_adjoint(x));
    }
    rep.add("hermitian_spectra_real", max_imag, tol);
    rep.add("r_lambda_le_r_sigma", max_gap, tol);
    return rep;
}

CheckReport shirali_ford_check(const AlgebraPtr& alg, int samples, double tol,
                               std::uint64_t seed) {
    if (!alg->has_realization())
        throw NoRealization("shirali_ford_check: realization required");
    CheckReport rep;
    rep.seed = seed;
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);

    double worst_neg = 0.0, worst_imag = 0.0;
    for (int s = 0; s < samples; ++s) {
        CVector c(alg->dim);
        for (int i = 0; i < alg->dim; ++i) c(i) = Complex(gauss(rng), gauss(rng));
        AlgebraElement a = element(alg, std::move(c));
        SpectrumResult sp = spectrum(element_mul(element_adjoint(a), a));
        double scale = 1.0 + sp.max_modulus();
        for (const Complex& lam : sp.points) {
            worst_neg = std::max(worst_neg, -lam.real() / scale);
            worst_imag = std::max(worst_imag, std::abs(lam.imag()) / scale);
        }
    }
    rep.add("star_products_positive", worst_neg, tol);
    rep.add("star_products_real", worst_imag, tol);
    return rep;
}

}  // namespace opstar
