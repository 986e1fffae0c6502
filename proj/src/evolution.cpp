#include "opstar/evolution.hpp"

#include <cmath>

namespace opstar {

namespace {

void check_hermitian(const CMatrix& a, double tol, const char* who) {
    if ((a - a.adjoint()).norm() > std::max(tol, 1e-9) * std::max(1.0, a.norm()))
        throw NotHermitian(std::string(who) + ": matrix is not Hermitian");
}

}  // namespace

CMatrix cayley(const CMatrix& a, double tol) {
    check_hermitian(a, tol, "cayley");
    const Eigen::Index n = a.rows();
    CMatrix i1 = Complex(0, 1) * CMatrix::Identity(n, n);
    CMatrix u = (a - i1) * mat_inv(a + i1);

    double scale = std::max(1.0, u.norm());
    if ((u.adjoint() * u - CMatrix::Identity(n, n)).norm() > 1e-9 * scale * n)
        throw Error("cayley: output is not unitary");
    for (const Complex& nu : eigvals(u))
        if (std::abs(nu - 1.0) < 1e-7)
            throw Error("cayley: eigenvalue too close to 1");
    return u;
}

CMatrix inverse_cayley(const CMatrix& u, double tol) {
    const Eigen::Index n = u.rows();
    double scale = std::max(1.0, u.norm());
    if ((u.adjoint() * u - CMatrix::Identity(n, n)).norm() >
        std::max(tol, 1e-8) * scale * n)
        throw Error("inverse_cayley: input is not unitary");
    for (const Complex& nu : eigvals(u))
        if (std::abs(nu - 1.0) < 1e-7)
            throw OneInSpectrum("inverse_cayley: 1 is in the spectrum");
    CMatrix a = Complex(0, 1) * (CMatrix::Identity(n, n) + u) *
                mat_inv(CMatrix(CMatrix::Identity(n, n) - u));
    a = (a + a.adjoint()) / 2.0;  // trim the inversion dust
    if ((cayley(a, tol) - u).norm() > 1e-8 * scale * n)
        throw Error("inverse_cayley: round trip failed");
    return a;
}

CMatrix fn_selfadjoint(const CMatrix& a, const std::function<Complex(double)>& f,
                       double tol) {
    check_hermitian(a, tol, "fn_selfadjoint");
    auto sys = herm_eig((a + a.adjoint()) / 2.0, tol);
    const Eigen::Index n = a.rows();
    CVector vals(n);
    for (Eigen::Index i = 0; i < n; ++i) vals(i) = f(sys.eigenvalues(i).real());
    return sys.basis * vals.asDiagonal() * sys.basis.adjoint();
}

UnitaryPath unitary_group(const CMatrix& a, double tol) {
    check_hermitian(a, tol, "unitary_group");
    UnitaryPath path;
    path.generator = (a + a.adjoint()) / 2.0;
    CMatrix gen = path.generator;
    path.evaluate = [gen, tol](double t) {
        return fn_selfadjoint(
            gen, [t](double lam) { return std::polar(1.0, -t * lam); }, tol);
    };
    return path;
}

CheckReport generator_check(const UnitaryPath& path, const CVector& x,
                            const std::vector<double>& h_list) {
    CheckReport rep;
    const double bound_scale =
        op_norm(path.generator * path.generator) * std::max(x.norm(), 1e-30);
    double prev_err = std::numeric_limits<double>::infinity();
    bool monotone = true;
    for (double h : h_list) {
        CVector quotient = (path.evaluate(h) * x - x) / Complex(0, -h);
        double err = (quotient - path.generator * x).norm();
        rep.add("difference_quotient_h_" + std::to_string(h), err,
                std::max(bound_scale * h, 1e-12));
        if (err > prev_err + 1e-12) monotone = false;
        prev_err = err;
    }
    rep.add("errors_decrease_with_h", monotone ? 0.0 : 1.0, 0.5);
    return rep;
}

}  // namespace opstar
