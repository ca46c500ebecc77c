#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <vector>

#include <CLI11.hpp>

#include "abdeg/scenario.hpp"

namespace {

using namespace abdeg;

struct CommonFlags {
    int n_max = -1;
    double tol = -1;
    double tail_window = -1;
    std::string format = "all";  // text | csv | summary | all
    std::string out_dir;
    int jobs = 1;
};

void apply_overrides(Scenario& s, const CommonFlags& f) {
    if (f.n_max > 0) s.options.n_max = f.n_max;
    if (f.tol > 0) s.options.tol = f.tol;
    if (f.tail_window > 0) s.options.tail_window = f.tail_window;
}

std::string output_dir(const CommonFlags& f) {
    if (!f.out_dir.empty()) return f.out_dir;
    if (const char* env = std::getenv("ABDEG_OUT")) return env;
    return ".";
}

EmitOptions emit_options(const CommonFlags& f) {
    EmitOptions e;
    e.out_dir = output_dir(f);
    e.text = f.format == "all" || f.format == "text";
    e.csv = f.format == "all" || f.format == "csv";
    e.summary = f.format == "all" || f.format == "summary";
    return e;
}

int cmd_degree(const std::string& path, const CommonFlags& f) {
    Scenario s = load_scenario_file(path);
    apply_overrides(s, f);
    SpectralCertificate c = dynamical_degree(s.self_map(), s.options.tol);
    std::cout << "scenario: " << s.name << "\n";
    std::cout << "delta = " << g12(c.value) << "\n";
    std::cout << "enclosure = [" << c.lower.get_str() << ", " << c.upper.get_str() << "]\n";
    std::cout << "width <= " << g12(c.width().get_d()) << "\n";
    return 0;
}

int cmd_orbit(const std::string& path, const CommonFlags& f) {
    Scenario s = load_scenario_file(path);
    apply_overrides(s, f);
    DegreeReport r = run_scenario(s);
    std::cout << orbit_to_csv(r);
    return 0;
}

int cmd_decompose(const std::string& path, const CommonFlags& f) {
    Scenario s = load_scenario_file(path);
    apply_overrides(s, f);
    IntPoly F = charpoly(s.M);
    UnipotentSplit split = unipotent_split(F);
    std::cout << "scenario: " << s.name << "\n";
    std::cout << "charpoly: " << F.str() << "\n";
    std::cout << "unipotent split: r = " << split.r << ", F2 = " << split.f2.str() << "\n";
    if (split.r == 0) {
        std::cout << "no unipotent part; translation equation is solvable directly\n";
        auto ts = solve_translation(s.M, PointCoords(s.Q));
        if (ts)
            std::cout << "m = " << ts->m.get_str() << ", Q' = " << ts->qprime.c.str() << "\n";
        return 0;
    }
    if (split.r == s.d) {
        std::cout << "pure unipotent: (M - I)^" << split.r << " = 0\n";
        return 0;
    }
    const IntPoly f1 = IntPoly::x_minus(1).pow(static_cast<unsigned>(split.r));
    BezoutCertificate cert = bezout_certificate(f1, split.f2);
    std::cout << "bezout: g1 = " << cert.g1.str() << ", g2 = " << cert.g2.str()
              << ", rho = " << cert.rho.get_str() << "\n";
    RestrictedMapZ rm1 = restrict_map_saturated(s.M, f1);
    RestrictedMapZ rm2 = restrict_map_saturated(s.M, split.f2);
    std::cout << "factor 1 basis: " << rm1.basis.str() << ", restricted map: " << rm1.map.str()
              << "\n";
    std::cout << "factor 2 basis: " << rm2.basis.str() << ", restricted map: " << rm2.map.str()
              << "\n";
    auto [q1, q2] = split_translation(s.M, PointCoords(s.Q), split, cert);
    std::cout << "Q1 = " << q1.c.str() << "\n";
    std::cout << "Q2 = " << q2.c.str() << "\n";
    return 0;
}

int cmd_verify(const std::string& path, const CommonFlags& f, bool write_outputs) {
    Scenario s = load_scenario_file(path);
    apply_overrides(s, f);
    DegreeReport r = run_scenario(s);
    std::cout << report_to_text(s, r);
    if (write_outputs || !f.out_dir.empty()) {
        SuiteResult one;
        one.entries.emplace_back(s, r);
        (r.all_ok ? one.passed : one.failed) += 1;
        emit_outputs(one, emit_options(f));
    }
    return r.all_ok ? 0 : 1;
}

int cmd_suite(const std::string& dir, const CommonFlags& f) {
    namespace fs = std::filesystem;
    std::vector<Scenario> scenarios;
    if (!fs::is_directory(dir)) throw ScenarioError("not a directory: " + dir);
    std::vector<std::string> paths;
    for (const auto& e : fs::directory_iterator(dir))
        if (e.is_regular_file() && e.path().extension() == ".json")
            paths.push_back(e.path().string());
    std::sort(paths.begin(), paths.end());
    for (const auto& p : paths) {
        Scenario s = load_scenario_file(p);
        apply_overrides(s, f);
        scenarios.push_back(std::move(s));
    }
    SuiteResult result = run_suite(scenarios, f.jobs);
    int code = emit_outputs(result, emit_options(f));
    std::cout << "suite: " << result.entries.size() << " scenarios, " << result.passed
              << " passed, " << result.failed << " failed\n";
    return code;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"arithmetic/dynamical degree scenarios on abelian lattice models"};
    app.require_subcommand(1);

    CommonFlags flags;
    app.add_option("--n-max", flags.n_max, "override scenario iteration count");
    app.add_option("--tol", flags.tol, "override spectral tolerance");
    app.add_option("--tail-window", flags.tail_window, "override tail window fraction");
    app.add_option("--format", flags.format, "outputs to emit: text, csv, summary, all")
        ->check(CLI::IsMember({"text", "csv", "summary", "all"}));
    app.add_option("--out", flags.out_dir, "output directory (default $ABDEG_OUT or .)");
    app.add_option("--jobs", flags.jobs, "concurrent scenarios for suite")
        ->check(CLI::PositiveNumber);

    std::string path;
    auto* degree = app.add_subcommand("degree", "certified dynamical degree only");
    degree->add_option("scenario", path, "scenario file")->required();
    auto* orbit = app.add_subcommand("orbit", "exact orbit heights as CSV");
    orbit->add_option("scenario", path, "scenario file")->required();
    auto* decompose = app.add_subcommand("decompose", "decomposition certificates only");
    decompose->add_option("scenario", path, "scenario file")->required();
    auto* verify = app.add_subcommand("verify", "full verification pipeline");
    verify->add_option("scenario", path, "scenario file")->required();
    auto* suite = app.add_subcommand("suite", "run a directory of scenarios");
    suite->add_option("dir", path, "directory of scenario files")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (degree->parsed()) return cmd_degree(path, flags);
        if (orbit->parsed()) return cmd_orbit(path, flags);
        if (decompose->parsed()) return cmd_decompose(path, flags);
        if (verify->parsed()) return cmd_verify(path, flags, false);
        if (suite->parsed()) return cmd_suite(path, flags);
    } catch (const abdeg::ScenarioError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
