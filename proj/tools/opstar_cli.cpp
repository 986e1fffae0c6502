#include <chrono>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <numbers>
#include <random>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "opstar/evolution.hpp"
#include "opstar/positivity.hpp"
#include "opstar/states.hpp"

using json = nlohmann::ordered_json;
using namespace opstar;

namespace {

struct CliError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct RunReport {
    std::string command;
    std::string digest;
    std::uint64_t seed = kDefaultSeed;
    double wall_time = 0;
    json results = json::array();

    void add(const std::string& name, const json& value, double tolerance, bool pass) {
        results.push_back({{"name", name},
                           {"value", value},
                           {"tolerance", tolerance},
                           {"pass", pass}});
    }
    void check(const std::string& name, double residual, double bound) {
        add(name, residual, bound, residual <= bound);
    }
    void info(const std::string& name, const json& value) {
        add(name, value, std::numeric_limits<double>::infinity(), true);
    }
    bool all_pass() const {
        for (const auto& r : results)
            if (!r["pass"].get<bool>()) return false;
        return true;
    }
};

std::uint64_t fnv1a(const std::string& bytes, std::uint64_t h = 0xcbf29ce484222325ull) {
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    return h;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw CliError("cannot open file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

json parse_json(const std::string& text, const std::string& path) {
    try {
        return json::parse(text);
    } catch (const json::exception& e) {
        throw CliError("JSON parse error in " + path + ": " + e.what());
    }
}

Complex to_complex(const json& j) {
    if (j.is_number()) return Complex(j.get<double>(), 0.0);
    if (j.is_array() && j.size() == 2)
        return Complex(j[0].get<double>(), j[1].get<double>());
    throw CliError("complex values must be numbers or [re, im] pairs");
}

json from_complex(const Complex& z) { return json::array({z.real(), z.imag()}); }

CMatrix to_matrix(const json& j) {
    if (!j.is_array() || j.empty()) throw CliError("matrix must be an array of rows");
    const auto rows = j.size();
    const auto cols = j[0].size();
    CMatrix m(rows, cols);
    for (std::size_t r = 0; r < rows; ++r) {
        if (j[r].size() != cols) throw CliError("matrix rows have unequal lengths");
        for (std::size_t c = 0; c < cols; ++c) m(r, c) = to_complex(j[r][c]);
    }
    return m;
}

json from_matrix_json(const CMatrix& m) {
    json rows = json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        json row = json::array();
        for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(from_complex(m(r, c)));
        rows.push_back(row);
    }
    return rows;
}

json from_vector_json(const CVector& v) {
    json out = json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(from_complex(v(i)));
    return out;
}

CVector to_cvector(const json& j) {
    if (!j.is_array()) throw CliError("coefficient list must be an array");
    CVector v(static_cast<Eigen::Index>(j.size()));
    for (std::size_t i = 0; i < j.size(); ++i)
        v(static_cast<Eigen::Index>(i)) = to_complex(j[i]);
    return v;
}

NormSpec parse_norm(const json& j) {
    NormSpec norm;
    std::string type = j.value("type", "operator");
    if (type == "operator") norm.kind = NormKind::Operator;
    else if (type == "l1") norm.kind = NormKind::L1;
    else if (type == "weighted") norm.kind = NormKind::Weighted;
    else throw CliError("unknown norm type: " + type);
    norm.gamma = j.value("gamma", 2.0);
    return norm;
}

AlgebraPtr load_algebra(const std::string& path) {
    json j = parse_json(read_file(path), path);
    if (j.contains("matrix_generators")) {
        std::vector<CMatrix> gens;
        for (const auto& g : j["matrix_generators"]) gens.push_back(to_matrix(g));
        return generate_matrix_algebra(gens);
    }
    if (j.contains("group")) {
        std::vector<std::vector<int>> table =
            j["group"]["table"].get<std::vector<std::vector<int>>>();
        std::vector<int> inverses = j["group"]["inverses"].get<std::vector<int>>();
        return group_ring(table, inverses);
    }
    if (j.contains("dim")) {
        StarAlgebra A;
        A.dim = j["dim"].get<int>();
        for (const auto& s : j["structure"]) A.structure.push_back(to_matrix(s));
        A.involution = to_matrix(j["involution"]);
        if (j.contains("norm")) A.norm = parse_norm(j["norm"]);
        else A.norm.kind = NormKind::L1;
        for (int i = 0; i < A.dim; ++i) A.basis_labels.push_back("e" + std::to_string(i));
        if (j.contains("unit")) A.unit_coords = to_cvector(j["unit"]);
        return make_algebra(std::move(A));
    }
    throw CliError(path + ": expected matrix_generators, group, or dim/structure");
}

AlgebraElement load_element(const AlgebraPtr& alg, const std::string& path) {
    json j = parse_json(read_file(path), path);
    if (!j.contains("coeffs")) throw CliError(path + ": expected {\"coeffs\": [...]}");
    CVector c = to_cvector(j["coeffs"]);
    if (c.size() != alg->dim) throw CliError(path + ": coefficient count != dim");
    return element(alg, c);
}

LinearFunctional load_functional(const AlgebraPtr& alg, const std::string& path) {
    json j = parse_json(read_file(path), path);
    if (!j.contains("row")) throw CliError(path + ": expected {\"row\": [...]}");
    CVector c = to_cvector(j["row"]);
    if (c.size() != alg->dim) throw CliError(path + ": row length != dim");
    return {alg, c.transpose()};
}

FourierElement load_fourier(const std::string& path) {
    std::istringstream in(read_file(path));
    FourierElement f;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ls(line);
        long k;
        double re, im;
        if (!(ls >> k >> re >> im))
            throw CliError(path + ": expected lines \"k re im\"");
        f.coeffs[k] = Complex(re, im);
    }
    if (f.coeffs.empty()) throw CliError(path + ": no coefficients");
    return f;
}

void report_from_check(RunReport& rep, const CheckReport& cr) {
    for (const auto& e : cr.entries) rep.add(e.name, e.residual, e.bound, e.pass);
}

// -------------------------------------------------------------------------
// Commands

void cmd_validate(RunReport& rep, const std::string& path) {
    auto alg = load_algebra(path);
    rep.info("dim", alg->dim);
    report_from_check(rep, validate(alg, 100, rep.seed));
}

void cmd_spectrum(RunReport& rep, const std::string& path,
                  const std::string& element_path, int limit, double tol) {
    auto alg = load_algebra(path);
    auto a = load_element(alg, element_path);
    auto sp = spectrum(a, tol);
    json pts = json::array();
    for (const Complex& z : sp.points) pts.push_back(from_complex(z));
    rep.info("spectrum", pts);
    double r = spectral_radius(a, tol);
    rep.info("spectral_radius", r);
    auto lim = spectral_radius_limit(a, limit);
    rep.info("radius_limit", lim.value);
    rep.info("ptak", ptak(a, tol));
    rep.check("radius_methods_agree", std::abs(r - lim.value),
              0.05 * (1.0 + r) + tol);
}

void cmd_positivity(RunReport& rep, const std::string& path,
                    const std::string& element_path, const std::string& mode,
                    double tol) {
    auto alg = load_algebra(path);
    auto a = load_element(alg, element_path);
    if (mode == "sqrt") {
        auto root = positive_sqrt(a, tol);
        rep.info("sqrt_coeffs", from_vector_json(root.coeffs));
        rep.check("square_residual", element_norm(element_mul(root, root) - a),
                  1e-8 * (1.0 + element_norm(a)));
    } else if (mode == "polar") {
        auto [u, mod] = polar(a, tol);
        rep.info("unitary_coeffs", from_vector_json(u.coeffs));
        rep.info("modulus_coeffs", from_vector_json(mod.coeffs));
        rep.check("factorisation_residual", element_norm(element_mul(u, mod) - a),
                  1e-7 * (1.0 + element_norm(a)));
        rep.check("unitarity_residual",
                  element_norm(element_mul(element_adjoint(u), u) - unit_element(alg)),
                  1e-7);
    } else if (mode == "parts") {
        auto [plus, minus] = pos_neg_parts(a, tol);
        rep.info("positive_part", from_vector_json(plus.coeffs));
        rep.info("negative_part", from_vector_json(minus.coeffs));
        rep.check("difference_residual", element_norm(plus - minus - a),
                  1e-9 * (1.0 + element_norm(a)));
        rep.check("product_residual", element_norm(element_mul(plus, minus)),
                  1e-8 * (1.0 + element_norm(a)) * (1.0 + element_norm(a)));
    } else {
        throw CliError("positivity mode must be sqrt, polar, or parts");
    }
}

void cmd_gelfand(RunReport& rep, const std::string& path,
                 const std::string& bochner_path, double tol) {
    auto alg = load_algebra(path);
    auto cs = characters(alg, tol, rep.seed);
    json table = json::array();
    for (const auto& ch : cs.characters)
        table.push_back(from_vector_json(ch.row.transpose()));
    rep.info("characters", table);

    std::mt19937_64 gen(rep.seed);
    std::normal_distribution<double> dist;
    CVector c(alg->dim);
    for (int i = 0; i < alg->dim; ++i) c(i) = Complex(dist(gen), dist(gen));
    auto a = element(alg, c);
    double sup = gelfand_transform(a, cs).cwiseAbs().maxCoeff();
    rep.check("sup_transform_vs_radius", std::abs(sup - spectral_radius(a)),
              1e-8 * (1.0 + sup));

    if (!bochner_path.empty()) {
        auto psi = load_functional(alg, bochner_path);
        auto mu = bochner_measure(psi, cs);
        json weights = json::array();
        for (Eigen::Index i = 0; i < mu.size(); ++i) weights.push_back(mu(i));
        rep.info("bochner_weights", weights);
        rep.check("weights_sum_to_one", std::abs(mu.sum() - 1.0), 1e-9);
    }
}

void cmd_wiener(RunReport& rep, const std::string& path, int n_out, double tol) {
    auto f = load_fourier(path);
    auto res = wiener_inverse(f, n_out, tol);
    json coeffs = json::array();
    for (const auto& [k, v] : res.g.coeffs)
        if (std::abs(v) > 1e-14)
            coeffs.push_back({{"k", k}, {"value", from_complex(v)}});
    rep.info("g_coeffs", coeffs);
    rep.info("g_zero", from_complex(res.g.coeffs.at(0)));
    rep.check("pointwise_residual", res.max_pointwise_residual, 1e-6);
    rep.check("l1_tail", res.tail_l1, 1e-6);
    rep.info("l1_norm", res.l1_partials.back());
}

void cmd_gns(RunReport& rep, const std::string& path,
             const std::string& functional_path, double tol) {
    auto alg = load_algebra(path);
    auto phi = load_functional(alg, functional_path);
    auto w = is_positive_functional(phi, tol);
    rep.add("positive_functional", w.min_eigenvalue, 0.0, w.positive);
    if (!w.positive) return;
    auto res = gns(phi, tol);
    rep.info("gram_rank", res.gram_rank);
    rep.info("variation", res.variation);
    double worst = 0;
    for (int i = 0; i < alg->dim; ++i) {
        Complex rec = res.cyclic_vector.dot(res.rep.matrices[i] * res.cyclic_vector);
        worst = std::max(worst, std::abs(phi.row(i) - rec));
    }
    rep.check("reconstruction_residual", worst, 1e-9 * (1.0 + phi.row.norm()));
    if (std::abs(res.variation - 1.0) <= 1e-7)
        rep.info("pure", is_pure(phi, tol));
}

void cmd_spectral(RunReport& rep, const std::string& path, const std::string& mode,
                  const std::string& second_path, double tol) {
    CMatrix b = to_matrix(parse_json(read_file(path), path));
    if (mode == "resolution") {
        auto P = resolution_of_normal(b, tol);
        json pts = json::array();
        for (std::size_t i = 0; i < P.points.size(); ++i)
            pts.push_back({{"point", from_complex(P.points[i][0])},
                           {"projection", from_matrix_json(P.projections[i])}});
        rep.info("resolution", pts);
        report_from_check(rep, validate_spectral_measure(P, rep.seed));
        report_from_check(rep, atoms_are_eigenvalues(b, tol));
    } else if (mode.rfind("calculus:", 0) == 0) {
        std::string fname = mode.substr(9);
        std::function<Complex(Complex)> f;
        if (fname == "sqrt") f = [](Complex z) { return std::sqrt(z); };
        else if (fname == "exp") f = [](Complex z) { return std::exp(z); };
        else if (fname == "conj") f = [](Complex z) { return std::conj(z); };
        else if (fname == "square") f = [](Complex z) { return z * z; };
        else throw CliError("calculus function must be sqrt, exp, conj, or square");
        CMatrix fb = borel_calculus(b, f, tol);
        rep.info("result", from_matrix_json(fb));
    } else if (mode == "commutant") {
        auto basis = commutant({b}, tol);
        rep.info("commutant_dim", basis.size());
        json mats = json::array();
        for (const auto& m : basis) mats.push_back(from_matrix_json(m));
        rep.info("commutant_basis", mats);
    } else if (mode == "bicommutant") {
        report_from_check(rep, bicommutant_check({b}, tol));
    } else if (mode == "fuglede") {
        if (second_path.empty()) throw CliError("fuglede mode needs a second matrix");
        CMatrix b2 = to_matrix(parse_json(read_file(second_path), second_path));
        report_from_check(rep, fuglede_check(b, b2, tol));
    } else {
        throw CliError("spectral mode must be resolution, calculus:<f>, commutant, "
                       "bicommutant, or fuglede");
    }
}

void cmd_evolve(RunReport& rep, const std::string& path,
                const std::vector<double>& times, bool check_gen, double tol) {
    CMatrix a = to_matrix(parse_json(read_file(path), path));
    auto path_u = unitary_group(a, tol);
    const Eigen::Index n = a.rows();
    double worst_unitary = 0, worst_group = 0;
    json evals = json::array();
    for (double t : times) {
        CMatrix u = path_u.evaluate(t);
        evals.push_back({{"t", t}, {"U", from_matrix_json(u)}});
        worst_unitary = std::max(
            worst_unitary, (u.adjoint() * u - CMatrix::Identity(n, n)).norm());
        for (double s : times)
            worst_group = std::max(worst_group,
                                   (path_u.evaluate(t + s) - u * path_u.evaluate(s)).norm());
    }
    rep.info("evolution", evals);
    rep.check("unitarity", worst_unitary, 1e-9 * n);
    rep.check("group_law", worst_group, 1e-9 * n);
    if (check_gen) {
        std::mt19937_64 gen(rep.seed);
        std::normal_distribution<double> dist;
        CVector x(n);
        for (Eigen::Index i = 0; i < n; ++i) x(i) = Complex(dist(gen), dist(gen));
        x /= x.norm();
        report_from_check(rep, generator_check(path_u, x));
    }
}

void cmd_demo(RunReport& rep, const std::string& name, double tol) {
    if (name == "counterexample-30-8") {
        auto demo = discontinuous_character_demo(2.0, 20, rep.seed);
        json rows = json::array();
        for (const auto& r : demo.rows)
            rows.push_back({{"n", r.n},
                            {"delta_norm", r.delta_norm},
                            {"char_modulus", r.char_modulus}});
        rep.info("table", rows);
        rep.info("max_hermitian_ratio", demo.max_hermitian_ratio);
        rep.info("unbounded_ratio", demo.unbounded_ratio);
        report_from_check(rep, demo.checks);
    } else if (name == "wiener") {
        FourierElement f;
        f.coeffs[0] = 2.0;
        f.coeffs[1] = 0.5;
        f.coeffs[-1] = 0.5;
        auto res = wiener_inverse(f, 64, tol);
        rep.info("g_zero", from_complex(res.g.coeffs.at(0)));
        rep.check("g_zero_vs_closed_form",
                  std::abs(res.g.coeffs.at(0) - Complex(1.0 / std::sqrt(3.0))), 1e-8);
        rep.check("pointwise_residual", res.max_pointwise_residual, 1e-6);
        rep.check("l1_tail", res.tail_l1, 1e-6);
    } else if (name == "raikov") {
        auto g2 = cyclic_group(2);
        auto z2 = group_ring(g2.table, g2.inverses);
        std::mt19937_64 gen(rep.seed);
        std::normal_distribution<double> dist;
        double worst = 0;
        for (int t = 0; t < 50; ++t) {
            CVector c(2);
            c << Complex(dist(gen), dist(gen)), Complex(dist(gen), dist(gen));
            auto a = element(z2, c);
            double expect = std::max(std::abs(c(0) + c(1)), std::abs(c(0) - c(1)));
            worst = std::max(worst, std::abs(enveloping_seminorm(a) - expect));
        }
        rep.check("seminorm_matches_character_sup", worst, 1e-8);
        auto m2 = full_matrix_algebra(2);
        double worst_m = 0;
        for (int t = 0; t < 50; ++t) {
            CVector c(4);
            for (int i = 0; i < 4; ++i) c(i) = Complex(dist(gen), dist(gen));
            auto a = element(m2, c);
            worst_m = std::max(worst_m, std::abs(enveloping_seminorm(a) -
                                                 op_norm(realize(a))));
        }
        rep.check("seminorm_is_cstar_norm", worst_m, 1e-8);
    } else {
        throw CliError("demo name must be counterexample-30-8, wiener, or raikov");
    }
}

void print_human(const RunReport& rep) {
    std::cout << "command: " << rep.command << "  seed: " << rep.seed
              << "  digest: " << rep.digest << "\n";
    for (const auto& r : rep.results) {
        std::cout << "  " << (r["pass"].get<bool>() ? "[PASS] " : "[FAIL] ")
                  << r["name"].get<std::string>();
        if (r["value"].is_number())
            std::cout << " = " << r["value"].get<double>();
        if (r["tolerance"].is_number() &&
            std::isfinite(r["tolerance"].get<double>()))
            std::cout << " (bound " << r["tolerance"].get<double>() << ")";
        std::cout << "\n";
    }
}

json to_json(const RunReport& rep) {
    json out;
    out["command"] = rep.command;
    out["input_digest"] = rep.digest;
    out["seed"] = rep.seed;
    out["wall_time"] = rep.wall_time;
    out["results"] = rep.results;
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Finite-dimensional operator-algebra toolkit"};
    app.require_subcommand(1);
    double tol = kDefaultTol;
    std::uint64_t seed = kDefaultSeed;
    std::string out_path;
    app.add_option("--tol", tol, "numerical tolerance");
    app.add_option("--seed", seed, "random seed");
    app.add_option("--out", out_path, "write the JSON report to this file");

    std::string algebra_path, element_path, functional_path, mode, second_path,
        demo_name, bochner_path;
    int limit = 64, n_out = 64;
    std::vector<double> times = {0.0, 0.5, 1.0};
    bool check_gen = false;

    auto* c_validate = app.add_subcommand("validate", "algebra axiom checks");
    c_validate->add_option("algebra", algebra_path)->required();

    auto* c_spectrum = app.add_subcommand("spectrum", "spectrum and radii");
    c_spectrum->add_option("algebra", algebra_path)->required();
    c_spectrum->add_option("element", element_path)->required();
    c_spectrum->add_option("--limit", limit, "doubling steps for the norm-limit radius");

    auto* c_positivity = app.add_subcommand("positivity", "square roots and polar data");
    c_positivity->add_option("algebra", algebra_path)->required();
    c_positivity->add_option("element", element_path)->required();
    c_positivity->add_option("--mode", mode, "sqrt | polar | parts")->required();

    auto* c_gelfand = app.add_subcommand("gelfand", "characters and transform");
    c_gelfand->add_option("algebra", algebra_path)->required();
    c_gelfand->add_option("--bochner", bochner_path, "state file for the measure");

    auto* c_wiener = app.add_subcommand("wiener", "inverse on the torus");
    c_wiener->add_option("coeffs", functional_path)->required();
    c_wiener->add_option("--n-out", n_out, "output window half-width");

    auto* c_gns = app.add_subcommand("gns", "GNS construction");
    c_gns->add_option("algebra", algebra_path)->required();
    c_gns->add_option("functional", functional_path)->required();

    auto* c_spectral = app.add_subcommand("spectral", "spectral measures and commutants");
    c_spectral->add_option("matrix", algebra_path)->required();
    c_spectral->add_option("--mode", mode,
                           "resolution | calculus:<f> | commutant | bicommutant | fuglede")
        ->required();
    c_spectral->add_option("--second", second_path, "second matrix for fuglede");

    auto* c_evolve = app.add_subcommand("evolve", "one-parameter unitary groups");
    c_evolve->add_option("matrix", algebra_path)->required();
    c_evolve->add_option("--times", times, "evaluation times");
    c_evolve->add_flag("--check-generator", check_gen);

    auto* c_demo = app.add_subcommand("demo", "built-in demonstrations");
    c_demo->add_option("name", demo_name,
                       "counterexample-30-8 | wiener | raikov")->required();

    for (auto* sub : app.get_subcommands({})) sub->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    RunReport rep;
    rep.seed = seed;
    auto started = std::chrono::steady_clock::now();
    try {
        std::uint64_t digest = fnv1a("opstar");
        for (const std::string* p : {&algebra_path, &element_path, &functional_path,
                                     &second_path, &bochner_path})
            if (!p->empty()) digest = fnv1a(read_file(*p), digest);
        std::ostringstream hex;
        hex << std::hex << digest;
        rep.digest = hex.str();

        if (c_validate->parsed()) {
            rep.command = "validate";
            cmd_validate(rep, algebra_path);
        } else if (c_spectrum->parsed()) {
            rep.command = "spectrum";
            cmd_spectrum(rep, algebra_path, element_path, limit, tol);
        } else if (c_positivity->parsed()) {
            rep.command = "positivity";
            cmd_positivity(rep, algebra_path, element_path, mode, tol);
        } else if (c_gelfand->parsed()) {
            rep.command = "gelfand";
            cmd_gelfand(rep, algebra_path, bochner_path, tol);
        } else if (c_wiener->parsed()) {
            rep.command = "wiener";
            cmd_wiener(rep, functional_path, n_out, tol);
        } else if (c_gns->parsed()) {
            rep.command = "gns";
            cmd_gns(rep, algebra_path, functional_path, tol);
        } else if (c_spectral->parsed()) {
            rep.command = "spectral";
            cmd_spectral(rep, algebra_path, mode, second_path, tol);
        } else if (c_evolve->parsed()) {
            rep.command = "evolve";
            cmd_evolve(rep, algebra_path, times, check_gen, tol);
        } else if (c_demo->parsed()) {
            rep.command = "demo " + demo_name;
            cmd_demo(rep, demo_name, tol);
        }
    } catch (const CliError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << "check failed: " << e.what() << "\n";
        return 1;
    }
    rep.wall_time =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - started)
            .count();

    print_human(rep);
    if (!out_path.empty()) {
        std::ofstream out(out_path);
        out << to_json(rep).dump(2) << "\n";
    }
    if (!rep.all_pass()) {
        for (const auto& r : rep.results)
            if (!r["pass"].get<bool>())
                std::cerr << "failed: " << r["name"].get<std::string>()
                          << " residual " << r["value"].dump() << " bound "
                          << r["tolerance"].dump() << "\n";
        return 1;
    }
    return 0;
}
