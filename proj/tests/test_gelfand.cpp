#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <numbers>

#include "opstar/gelfand.hpp"
#include "oracles.hpp"

using namespace opstar;

namespace {

AlgebraPtr cyclic_ring(int n) {
    auto g = cyclic_group(n);
    return group_ring(g.table, g.inverses);
}

/// Center of C[S3]: identity, transposition class sum, 3-cycle class sum,
/// as matrices of the left regular representation.
AlgebraPtr s3_center() {
    auto s3 = symmetric_group(3);
    auto alg = group_ring(s3.table, s3.inverses);
    CMatrix id = realize(unit_element(alg));
    CMatrix trans = CMatrix::Zero(6, 6), cyc = CMatrix::Zero(6, 6);
    for (int i = 1; i < 6; ++i) {
        CMatrix m = realize(basis_element(alg, i));
        if (s3.inverses[i] == i) trans += m;  // transpositions are involutions
        else cyc += m;
    }
    return generate_matrix_algebra({id, trans, cyc});
}

}  // namespace

TEST_CASE("characters: diagonal algebra gives coordinate evaluations") {
    auto alg = diagonal_algebra(3);
    auto cs = characters(alg);
    REQUIRE(cs.characters.size() == 3);
    CMatrix rows(3, 3);
    for (int j = 0; j < 3; ++j) rows.row(j) = cs.characters[j].row;
    // Up to ordering the rows are the identity matrix.
    for (int j = 0; j < 3; ++j) {
        int ones = 0;
        for (int i = 0; i < 3; ++i) {
            if (std::abs(rows(j, i) - Complex(1)) < 1e-9) ++ones;
            else CHECK(std::abs(rows(j, i)) < 1e-9);
        }
        CHECK(ones == 1);
        CHECK(cs.hermitian_flags[j]);
    }
}

TEST_CASE("characters: cyclic group rings match the DFT matrix") {
    for (int n = 2; n <= 8; ++n) {
        auto alg = cyclic_ring(n);
        auto cs = characters(alg);
        REQUIRE(static_cast<int>(cs.characters.size()) == n);
        // Each character is some DFT row tau_j(delta_k) = e^{2 pi i j k / n};
        // match rows greedily and require a bijection.
        std::vector<bool> used(n, false);
        for (const auto& ch : cs.characters) {
            bool found = false;
            for (int j = 0; j < n && !found; ++j) {
                if (used[j]) continue;
                double err = 0;
                for (int k = 0; k < n; ++k)
                    err = std::max(err,
                                   std::abs(ch.row(k) - std::polar(1.0,
                                            2.0 * std::numbers::pi * j * k / n)));
                if (err < 1e-10) {
                    used[j] = true;
                    found = true;
                }
            }
            CHECK(found);
        }
    }
}

TEST_CASE("characters: error paths") {
    CHECK_THROWS_AS(characters(full_matrix_algebra(2)), NotCommutative);

    // Unit plus a self-adjoint nilpotent line: the radical blocks every draw.
    StarAlgebra A;
    A.dim = 2;
    A.basis_labels = {"e", "n"};
    A.structure = {CMatrix::Identity(2, 2), CMatrix::Zero(2, 2)};
    A.structure[1](0, 1) = 1.0;  // n e = n; n n = 0
    A.involution = CMatrix::Identity(2, 2);
    A.norm.kind = NormKind::L1;
    A.unit_coords = CVector::Zero(2);
    A.unit_coords(0) = 1.0;
    auto alg = make_algebra(std::move(A));
    CHECK_THROWS_AS(characters(alg), DegenerateAfterRetries);
    try {
        characters(alg);
    } catch (const DegenerateAfterRetries& e) {
        CHECK(std::string(e.what()).find("witness") != std::string::npos);
    }
}

TEST_CASE("gelfand_transform basics") {
    auto alg = cyclic_ring(3);
    auto cs = characters(alg);
    auto e_hat = gelfand_transform(unit_element(alg), cs);
    for (int j = 0; j < 3; ++j) CHECK(std::abs(e_hat(j) - Complex(1)) < 1e-9);

    auto d1_hat = gelfand_transform(basis_element(alg, 1), cs);
    std::vector<bool> used(3, false);
    for (int j = 0; j < 3; ++j) {
        bool found = false;
        for (int k = 0; k < 3 && !found; ++k) {
            if (used[k]) continue;
            if (std::abs(d1_hat(j) - std::polar(1.0, 2.0 * std::numbers::pi * k / 3)) < 1e-9) {
                used[k] = true;
                found = true;
            }
        }
        CHECK(found);
    }

    auto g = oracles::rng(83);
    for (int t = 0; t < 10; ++t) {
        CVector ca(3), cb(3);
        for (int i = 0; i < 3; ++i) {
            ca(i) = Complex(oracles::random_matrix(g, 1)(0, 0));
            cb(i) = Complex(oracles::random_matrix(g, 1)(0, 0));
        }
        auto a = element(alg, ca), b = element(alg, cb);
        auto ab_hat = gelfand_transform(element_mul(a, b), cs);
        CVector pw = gelfand_transform(a, cs).cwiseProduct(gelfand_transform(b, cs));
        CHECK((ab_hat - pw).norm() < 1e-8 * (1 + pw.norm()));
        // All characters Hermitian, so the transform intertwines * and conj.
        auto astar_hat = gelfand_transform(element_adjoint(a), cs);
        CHECK((astar_hat - gelfand_transform(a, cs).conjugate()).norm() < 1e-8);
    }

    CHECK_THROWS_AS(gelfand_transform(unit_element(diagonal_algebra(3)), cs),
                    AlgebraMismatch);
}

TEST_CASE("sup of the transform equals the spectral radius") {
    auto g = oracles::rng(89);
    std::vector<AlgebraPtr> algs = {diagonal_algebra(4), cyclic_ring(3),
                                    cyclic_ring(5), cyclic_ring(8), s3_center()};
    for (const auto& alg : algs) {
        auto cs = characters(alg);
        for (int t = 0; t < 10; ++t) {
            CVector c(alg->dim);
            for (int i = 0; i < alg->dim; ++i)
                c(i) = Complex(oracles::random_matrix(g, 1)(0, 0));
            auto a = element(alg, c);
            double sup = gelfand_transform(a, cs).cwiseAbs().maxCoeff();
            CHECK(std::abs(sup - spectral_radius(a)) < 1e-8 * (1 + sup));
            // Value set of a-hat is the spectrum.
            auto sp = spectrum(a);
            auto vals = gelfand_transform(a, cs);
            for (const Complex& lam : sp.points) {
                double d = std::numeric_limits<double>::infinity();
                for (int j = 0; j < vals.size(); ++j)
                    d = std::min(d, std::abs(lam - vals(j)));
                CHECK(d < 1e-7 * (1 + std::abs(lam)));
            }
        }
    }
    // Commutative matrix *-algebras: the transform is isometric.
    auto center = s3_center();
    auto cs = characters(center);
    for (int t = 0; t < 10; ++t) {
        CVector c(center->dim);
        for (int i = 0; i < center->dim; ++i)
            c(i) = Complex(oracles::random_matrix(g, 1)(0, 0));
        auto a = element(center, c);
        double sup = gelfand_transform(a, cs).cwiseAbs().maxCoeff();
        CHECK(std::abs(sup - element_norm(a)) < 1e-9 * (1 + sup));
    }
}

TEST_CASE("bochner_measure") {
    auto d3 = diagonal_algebra(3);
    auto cs = characters(d3);
    SUBCASE("uniform average on C^3") {
        LinearFunctional psi{d3, Eigen::RowVectorXcd::Constant(3, Complex(1.0 / 3))};
        auto mu = bochner_measure(psi, cs);
        for (int j = 0; j < 3; ++j) CHECK(mu(j) == doctest::Approx(1.0 / 3));
    }
    SUBCASE("a character is a point mass") {
        auto mu = bochner_measure(cs.characters[1], cs);
        CHECK(mu(1) == doctest::Approx(1.0));
        CHECK(mu(0) + mu(2) < 1e-9);
    }
    SUBCASE("cosine-weighted state on C[Z3] vs linear-system oracle") {
        auto z3 = cyclic_ring(3);
        auto cz = characters(z3);
        Eigen::RowVectorXcd row(3);
        double wsum = 0;
        for (int k = 0; k < 3; ++k) wsum += 0.5 + 0.5 * std::cos(2 * std::numbers::pi * k / 3);
        for (int k = 0; k < 3; ++k)
            row(k) = (0.5 + 0.5 * std::cos(2 * std::numbers::pi * k / 3));
        row /= wsum;  // normalize psi(delta_0)... psi(e) = row(0) must be 1
        row *= wsum;  // keep psi(e)=1: psi(delta_k) = w_k / w_0
        row /= row(0);
        LinearFunctional psi{z3, row};
        auto mu = bochner_measure(psi, cz);
        // Oracle: direct 3x3 solve against the character table.
        CMatrix M(3, 3);
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) M(i, j) = cz.characters[j].row(i);
        CVector ref = M.colPivHouseholderQr().solve(CVector(row.transpose()));
        for (int j = 0; j < 3; ++j) CHECK(mu(j) == doctest::Approx(ref(j).real()).epsilon(1e-8));
        CHECK(std::abs(mu.sum() - 1.0) < 1e-9);
    }
    SUBCASE("non-states rejected") {
        LinearFunctional bad{d3, Eigen::RowVectorXcd::Constant(3, Complex(2.0))};
        CHECK_THROWS_AS(bochner_measure(bad, cs), NotAState);
        Eigen::RowVectorXcd row(3);
        row << 2.0, -0.5, -0.5;  // psi(e)=1 but negative on a projection
        LinearFunctional neg{d3, row};
        CHECK_THROWS_AS(bochner_measure(neg, cs), NotAState);
    }
}

TEST_CASE("wiener_inverse") {
    SUBCASE("constant") {
        FourierElement f;
        f.coeffs[0] = 2.0;
        auto res = wiener_inverse(f, 4, 1e-9);
        CHECK(std::abs(res.g.coeffs[0] - Complex(0.5)) < 1e-12);
        CHECK(res.max_pointwise_residual < 1e-12);
    }
    SUBCASE("f(t) = 2 + cos t") {
        FourierElement f;
        f.coeffs[0] = 2.0;
        f.coeffs[1] = 0.5;
        f.coeffs[-1] = 0.5;
        auto res = wiener_inverse(f, 64, 1e-9);
        double oracle = oracles::simpson(
            [](double t) { return 1.0 / (2.0 + std::cos(t)); }, 0.0,
            2.0 * std::numbers::pi) / (2.0 * std::numbers::pi);
        CHECK(std::abs(oracle - 1.0 / std::sqrt(3.0)) < 1e-10);
        CHECK(std::abs(res.g.coeffs[0] - Complex(oracle)) < 1e-8);
        CHECK(std::abs(res.g.coeffs[0] - Complex(1.0 / std::sqrt(3.0))) < 1e-8);
        CHECK(res.max_pointwise_residual <= 1e-6);
        CHECK(res.tail_l1 <= 1e-6);
        CHECK(res.conv_residual < 1e-5);
        // Geometric decay of the coefficients.
        CHECK(std::abs(res.g.coeffs[8]) < std::abs(res.g.coeffs[4]));
        CHECK(std::abs(res.g.coeffs[4]) < std::abs(res.g.coeffs[2]));
    }
    SUBCASE("cos t vanishes on the torus") {
        FourierElement f;
        f.coeffs[1] = 0.5;
        f.coeffs[-1] = 0.5;
        CHECK_THROWS_AS(wiener_inverse(f, 8, 1e-9), ZeroOnTorus);
    }
}

TEST_CASE("discontinuous character demo") {
    SUBCASE("gamma = 2, n = 3") {
        auto rep = discontinuous_character_demo(2.0, 3);
        CHECK(rep.checks.all_pass());
        CHECK(rep.rows[2].delta_norm == doctest::Approx(0.125));
        CHECK(rep.rows[2].char_modulus == doctest::Approx(1.0));
        CHECK(rep.max_hermitian_ratio <= 1.0 + 1e-12);
    }
    SUBCASE("explicit Hermitian h = delta_1 + delta_-1") {
        std::vector<long> support;
        for (long n = -3; n <= 3; ++n) support.push_back(n);
        auto alg = weighted_int_ring(support, 2.0);
        CVector c = CVector::Zero(alg->dim);
        c(2) = 1.0;  // delta_{-1}
        c(4) = 1.0;  // delta_{+1}
        auto h = element(alg, c);
        CHECK(element_norm(h) == doctest::Approx(2.5));
        Eigen::RowVectorXcd ones = Eigen::RowVectorXcd::Ones(alg->dim);
        LinearFunctional tau{alg, ones};
        CHECK(std::abs(tau(h)) == doctest::Approx(2.0));
        CHECK(std::abs(tau(h)) <= element_norm(h));
    }
    SUBCASE("gamma = 4 ratio grows as 4^n") {
        auto rep = discontinuous_character_demo(4.0, 5);
        CHECK(rep.checks.all_pass());
        CHECK(rep.unbounded_ratio == doctest::Approx(std::pow(4.0, 5)));
    }
    CHECK_THROWS_AS(discontinuous_character_demo(1.5, 3), PreconditionFailed);
}
