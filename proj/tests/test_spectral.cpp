#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <numbers>

#include "opstar/spectral.hpp"
#include "oracles.hpp"

using namespace opstar;

namespace {

CMatrix diagm(std::initializer_list<Complex> d) {
    CMatrix m = CMatrix::Zero(d.size(), d.size());
    int i = 0;
    for (const Complex& v : d) m(i, i) = v, ++i;
    return m;
}

}  // namespace

TEST_CASE("validate_spectral_measure") {
    SUBCASE("eigenprojections of a diagonal matrix") {
        auto P = resolution_of_normal(diagm({1, 2, 3}));
        auto rep = validate_spectral_measure(P);
        CHECK(rep.all_pass());
        CHECK(rep.max_residual() < 1e-12);
    }
    SUBCASE("non-orthogonal rank-1 projections flagged") {
        CVector v1(2), v2(2);
        v1 << 1, 0;
        v2 << 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0);
        SpectralMeasure bad;
        bad.space_dim = 2;
        bad.points = {scalar_point(0.0), scalar_point(1.0)};
        bad.projections = {v1 * v1.adjoint(), v2 * v2.adjoint()};
        auto rep = validate_spectral_measure(bad);
        CHECK_FALSE(rep.all_pass());
    }
}

TEST_CASE("spectral_integral") {
    auto g = oracles::rng(97);
    CMatrix b = oracles::random_normal(g, 5);
    auto P = resolution_of_normal(b);
    CHECK((spectral_integral(P, [](const PointLabel&) { return Complex(1); }) -
           CMatrix::Identity(5, 5)).norm() < 1e-10);
    for (std::size_t k = 0; k < P.points.size(); ++k) {
        auto ind = spectral_integral(P, [&](const PointLabel& p) {
            return p == P.points[k] ? Complex(1) : Complex(0);
        });
        CHECK((ind - P.projections[k]).norm() < 1e-10);
    }
    CHECK((spectral_integral(P, [](const PointLabel& p) { return p[0]; }) - b).norm() <
          1e-9 * b.norm());
    // Contractivity with equality (no zero projections here).
    std::vector<Complex> f(P.points.size());
    double fmax = 0;
    for (std::size_t k = 0; k < f.size(); ++k) {
        f[k] = Complex(oracles::random_matrix(g, 1)(0, 0));
        fmax = std::max(fmax, std::abs(f[k]));
    }
    CHECK(op_norm(spectral_integral(P, f)) == doctest::Approx(fmax).epsilon(1e-9));
    CHECK_THROWS_AS(spectral_integral(P, std::vector<Complex>{1.0}), MissingValue);
}

TEST_CASE("resolution_of_normal") {
    SUBCASE("diag(1,1,5)") {
        auto P = resolution_of_normal(diagm({1, 1, 5}));
        REQUIRE(P.points.size() == 2);
        CHECK(eps_rank(P.projections[0]) == 2);
        CHECK(eps_rank(P.projections[1]) == 1);
        CHECK(std::abs(P.points[0][0] - Complex(1)) < 1e-10);
        CHECK(std::abs(P.points[1][0] - Complex(5)) < 1e-10);
    }
    SUBCASE("involution [[0,1],[1,0]]") {
        CMatrix s(2, 2);
        s << 0, 1, 1, 0;
        auto P = resolution_of_normal(s);
        REQUIRE(P.points.size() == 2);
        CMatrix minus = (CMatrix::Identity(2, 2) - s) / 2.0;
        CMatrix plus = (CMatrix::Identity(2, 2) + s) / 2.0;
        CHECK((P.projections[0] - minus).norm() < 1e-10);  // eigenvalue -1 first
        CHECK((P.projections[1] - plus).norm() < 1e-10);
    }
    SUBCASE("random normal 5x5 passes validation") {
        auto g = oracles::rng(101);
        for (int t = 0; t < 5; ++t) {
            auto P = resolution_of_normal(oracles::random_normal(g, 5));
            CHECK(validate_spectral_measure(P).all_pass());
        }
    }
    SUBCASE("non-normal rejected") {
        CMatrix e12 = CMatrix::Zero(2, 2);
        e12(0, 1) = 1;
        CHECK_THROWS_AS(resolution_of_normal(e12), NotNormal);
    }
}

TEST_CASE("borel_calculus") {
    auto g = oracles::rng(103);
    CMatrix b = oracles::random_normal(g, 4);
    CHECK((borel_calculus(b, [](Complex z) { return std::conj(z); }) - b.adjoint()).norm() <
          1e-9 * b.norm());
    CHECK((borel_calculus(diagm({4, 9}), [](Complex z) { return std::sqrt(z); }) -
           diagm({2, 3})).norm() < 1e-10);
    // Spectral mapping under f(z) = z^2 + 1.
    auto f = [](Complex z) { return z * z + 1.0; };
    CMatrix fb = borel_calculus(b, f);
    auto before = resolution_of_normal(b);
    auto after = resolution_of_normal(fb);
    for (const auto& p : before.points) {
        double d = std::numeric_limits<double>::infinity();
        for (const auto& q : after.points) d = std::min(d, std::abs(f(p[0]) - q[0]));
        CHECK(d < 1e-7 * (1.0 + std::abs(f(p[0]))));
    }
    // Homomorphism: (f g)(b) = f(b) g(b), conj f -> adjoint.
    auto h = [](Complex z) { return std::exp(z / 3.0); };
    auto fh = [&](Complex z) { return f(z) * h(z); };
    CHECK((borel_calculus(b, fh) - borel_calculus(b, f) * borel_calculus(b, h)).norm() <
          1e-8 * (1.0 + fb.norm()));
}

TEST_CASE("atoms_are_eigenvalues") {
    CHECK(atoms_are_eigenvalues(diagm({1, 1, 5})).all_pass());
    // Cyclic shift on C^3: three rank-1 atoms at the cube roots of unity.
    CMatrix shift = CMatrix::Zero(3, 3);
    shift(1, 0) = shift(2, 1) = shift(0, 2) = 1;
    auto P = resolution_of_normal(shift);
    REQUIRE(P.points.size() == 3);
    for (const auto& p : P.projections) CHECK(eps_rank(p) == 1);
    CHECK(atoms_are_eigenvalues(shift).all_pass());
    auto g = oracles::rng(107);
    CHECK(atoms_are_eigenvalues(oracles::random_normal(g, 5)).all_pass());
}

TEST_CASE("image_measure") {
    auto P = resolution_of_normal(diagm({-1, 1}));
    auto same = image_measure(P, [](const PointLabel& p) { return p; });
    CHECK(same.points.size() == 2);
    auto sq = image_measure(P, [](const PointLabel& p) {
        return scalar_point(p[0] * p[0]);
    });
    REQUIRE(sq.points.size() == 1);
    CHECK((sq.projections[0] - CMatrix::Identity(2, 2)).norm() < 1e-12);
    CHECK(validate_spectral_measure(sq).all_pass());
    // Transfer: integral of g against the image equals integral of g o f.
    auto g = oracles::rng(109);
    auto Q = resolution_of_normal(oracles::random_normal(g, 5));
    auto f = [](const PointLabel& p) { return scalar_point(p[0] * p[0] - p[0]); };
    auto fQ = image_measure(Q, f);
    auto gfun = [](const PointLabel& p) { return std::sin(p[0].real()) + p[0]; };
    CMatrix lhs = spectral_integral(fQ, gfun);
    CMatrix rhs = spectral_integral(Q, [&](const PointLabel& p) { return gfun(f(p)); });
    CHECK((lhs - rhs).norm() < 1e-9 * (1.0 + lhs.norm()));
}

TEST_CASE("commutant") {
    CMatrix e11 = CMatrix::Zero(2, 2), e12 = CMatrix::Zero(2, 2),
            e21 = CMatrix::Zero(2, 2), e22 = CMatrix::Zero(2, 2);
    e11(0, 0) = e12(0, 1) = e21(1, 0) = e22(1, 1) = 1;
    SUBCASE("all of M2: scalars only") {
        auto b = commutant({e11, e12, e21, e22});
        REQUIRE(b.size() == 1);
        CHECK((b[0] * b[0](0, 0) * 2.0 - b[0](0, 0) * 2.0 * b[0]).norm() < 1e-12);
        CHECK((b[0] - b[0](0, 0) / b[0](1, 1) * b[0]).norm() < 1e-9);  // multiple of 1
    }
    SUBCASE("diag(1,2): diagonal matrices") {
        auto b = commutant({diagm({1, 2})});
        CHECK(b.size() == 2);
        for (const auto& m : b) CHECK(std::abs(m(0, 1)) + std::abs(m(1, 0)) < 1e-9);
    }
    SUBCASE("single nilpotent: adjoint closure forces scalars") {
        auto b = commutant({e12});
        CHECK(b.size() == 1);
    }
    CHECK_THROWS_AS(commutant({e12, CMatrix::Zero(3, 3)}), DimensionMismatch);
}

TEST_CASE("bicommutant_check") {
    CMatrix e12 = CMatrix::Zero(2, 2), e21 = CMatrix::Zero(2, 2);
    e12(0, 1) = e21(1, 0) = 1;
    CHECK(bicommutant_check({e12, e21}).all_pass());
    CHECK(bicommutant_check({diagm({1, 0, 0}), diagm({0, 1, 0}), diagm({0, 0, 1})})
              .all_pass());
    // M2 with multiplicity two inside M4.
    CMatrix big1 = CMatrix::Zero(4, 4), big2 = CMatrix::Zero(4, 4);
    big1.topLeftCorner(2, 2) = e12;
    big1.bottomRightCorner(2, 2) = e12;
    big2.topLeftCorner(2, 2) = e21;
    big2.bottomRightCorner(2, 2) = e21;
    auto rep = bicommutant_check({big1, big2});
    CHECK(rep.all_pass());
    CHECK(generate_matrix_algebra({big1, big2})->dim == 4);
}

TEST_CASE("fuglede_check") {
    auto d12 = diagm({1, 2});
    CHECK(fuglede_check(d12, d12).all_pass());
    auto rep = fuglede_check(d12, diagm({2, 1}));
    CHECK(rep.all_pass());
    CHECK(rep.entries[0].residual == doctest::Approx(2.0));  // antidiagonal intertwiners
    auto empty = fuglede_check(d12, diagm({5, 6}));
    CHECK(empty.all_pass());
    CHECK(empty.entries[0].residual == doctest::Approx(0.0));
    auto g = oracles::rng(113);
    CHECK(fuglede_check(oracles::random_normal(g, 4), oracles::random_normal(g, 4))
              .all_pass());
    CMatrix e12 = CMatrix::Zero(2, 2);
    e12(0, 1) = 1;
    CHECK_THROWS_AS(fuglede_check(e12, d12), NotNormal);
}

TEST_CASE("mult_operator") {
    WeightedSpace sp;
    sp.points = {scalar_point(1.0), scalar_point(2.0), scalar_point(3.0)};
    sp.weights = Eigen::Vector3d(1.0 / 3, 1.0 / 3, 1.0 / 3);
    CHECK(mult_operator(sp, {1.0, 2.0, 3.0}).norm == doctest::Approx(3.0));
    sp.weights = Eigen::Vector3d(0.5, 0.5, 0.0);
    CHECK(mult_operator(sp, {1.0, 2.0, 99.0}).norm == doctest::Approx(2.0));
    auto m = mult_operator(sp, {Complex(0, 2), Complex(0, 2), Complex(0, 2)});
    CHECK((m.op - Complex(0, 2) * CMatrix::Identity(3, 3)).norm() < 1e-12);
    CHECK(m.norm == doctest::Approx(2.0));
}

TEST_CASE("resolution_of_representation") {
    SUBCASE("diagonal algebra on C^3") {
        auto P = resolution_of_representation(regular_rep(diagonal_algebra(3)));
        REQUIRE(P.points.size() == 3);
        for (const auto& p : P.projections) CHECK(eps_rank(p) == 1);
        CHECK(validate_spectral_measure(P).all_pass());
    }
    SUBCASE("C[Z2] regular representation") {
        auto g2 = cyclic_group(2);
        auto P = resolution_of_representation(regular_rep(group_ring(g2.table, g2.inverses)));
        REQUIRE(P.points.size() == 2);
        CMatrix swap = CMatrix::Zero(2, 2);
        swap(0, 1) = swap(1, 0) = 1;
        bool found_plus = false, found_minus = false;
        for (const auto& p : P.projections) {
            if ((p - (CMatrix::Identity(2, 2) + swap) / 2.0).norm() < 1e-9) found_plus = true;
            if ((p - (CMatrix::Identity(2, 2) - swap) / 2.0).norm() < 1e-9) found_minus = true;
        }
        CHECK(found_plus);
        CHECK(found_minus);
    }
    SUBCASE("multiplicity: C^2 acting as diag(a,a,b)") {
        Representation pi;
        pi.space_dim = 3;
        pi.matrices = {diagm({1, 1, 0}), diagm({0, 0, 1})};
        auto P = resolution_of_representation(pi);
        REQUIRE(P.points.size() == 2);
        bool rank2 = false;
        for (const auto& p : P.projections) rank2 |= eps_rank(p) == 2;
        CHECK(rank2);
    }
    SUBCASE("maximal commutative: diagonal algebra is its own commutant") {
        auto pi = regular_rep(diagonal_algebra(4));
        CHECK(commutant(pi.matrices).size() == 4);
    }
    SUBCASE("span and projection structure of the calculus image") {
        auto P = resolution_of_normal(diagm({1, 2}));
        // Every Hermitian idempotent in span(P) is a subset sum.
        for (int mask = 0; mask < 4; ++mask) {
            CMatrix q = CMatrix::Zero(2, 2);
            for (int i = 0; i < 2; ++i)
                if (mask & (1 << i)) q += P.projections[i];
            CHECK((q * q - q).norm() < 1e-12);
        }
        // And the range of the calculus is exactly the projection span.
        CMatrix span(4, 2);
        for (int i = 0; i < 2; ++i) span.col(i) = P.projections[i].reshaped();
        CHECK(eps_rank(span) == 2);
    }
    SUBCASE("degenerate action rejected") {
        Representation pi;
        pi.space_dim = 2;
        pi.matrices = {diagm({1, 0})};
        CHECK_THROWS_AS(resolution_of_representation(pi), Degenerate);
    }
}

TEST_CASE("parseval and positivity of the calculus") {
    auto g = oracles::rng(127);
    CMatrix b = oracles::random_normal(g, 5);
    auto P = resolution_of_normal(b);
    std::vector<Complex> f(P.points.size());
    for (auto& v : f) v = oracles::random_matrix(g, 1)(0, 0);
    CMatrix pf = spectral_integral(P, f);
    for (int t = 0; t < 5; ++t) {
        CVector x = oracles::random_matrix(g, 5, 1);
        double lhs = (pf * x).squaredNorm();
        double rhs = 0;
        for (std::size_t k = 0; k < f.size(); ++k)
            rhs += std::norm(f[k]) * (P.projections[k] * x).squaredNorm();
        CHECK(lhs == doctest::Approx(rhs).epsilon(1e-9));
    }
    // pi_P(f) >= 0 iff f >= 0 at all atoms.
    std::vector<Complex> pos(P.points.size(), 0.5), mixed(P.points.size(), 0.5);
    mixed[0] = -0.25;
    auto eig_min = [](const CMatrix& h) {
        return herm_eig(h).eigenvalues(0).real();
    };
    CHECK(eig_min(spectral_integral(P, pos)) > -1e-10);
    CHECK(eig_min(spectral_integral(P, mixed)) < -0.2);
    // Monotone chains of indicators converge to the sup.
    CMatrix acc = CMatrix::Zero(5, 5);
    for (std::size_t k = 0; k < P.points.size(); ++k) {
        acc += P.projections[k];
        std::vector<Complex> chain(P.points.size(), 0.0);
        for (std::size_t j = 0; j <= k; ++j) chain[j] = 1.0;
        CHECK((spectral_integral(P, chain) - acc).norm() < 1e-10);
    }
    CHECK((acc - CMatrix::Identity(5, 5)).norm() < 1e-10);
}

TEST_CASE("spectral_representation") {
    auto d2 = diagonal_algebra(2);
    auto pi = regular_rep(d2);
    SUBCASE("uniform weights") {
        CVector c(2);
        c << 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0);
        auto sr = spectral_representation(pi, c);
        CHECK(sr.mu(0) == doctest::Approx(0.5));
        CHECK(sr.mu(1) == doctest::Approx(0.5));
    }
    SUBCASE("biased weights") {
        CVector c(2);
        c << std::sqrt(0.9), std::sqrt(0.1);
        auto sr = spectral_representation(pi, c);
        CHECK(sr.mu.maxCoeff() == doctest::Approx(0.9));
        CHECK(sr.mu.minCoeff() == doctest::Approx(0.1));
        // <pi(a)c, c> = sum a-hat(tau) mu_tau for basis a.
        for (int i = 0; i < 2; ++i) {
            Complex lhs = c.dot(pi.matrices[i] * c);
            Complex rhs = 0;
            for (int j = 0; j < 2; ++j) rhs += sr.space.points[j][i] * sr.mu(j);
            CHECK(std::abs(lhs - rhs) < 1e-9);
        }
    }
    SUBCASE("non-cyclic vector rejected") {
        CVector c(2);
        c << 1, 0;
        CHECK_THROWS_AS(spectral_representation(pi, c), NotCyclic);
    }
}
