#include "abdeg/scenario.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <thread>

#include <json.hpp>

namespace abdeg {

using json = nlohmann::ordered_json;

VerifyOptions Scenario::verify_options() const {
    VerifyOptions v;
    v.n_max = options.n_max;
    v.tol = options.tol;
    v.tail_fraction = options.tail_window;
    v.density = density;
    return v;
}

namespace {

mpq_class parse_rational(const json& v, const std::string& field) {
    if (v.is_number_integer()) return mpq_class(v.get<long>());
    if (v.is_string()) {
        const std::string s = v.get<std::string>();
        try {
            mpq_class q(s);
            q.canonicalize();
            return q;
        } catch (const std::invalid_argument&) {
            throw ScenarioError("field " + field + ": bad rational '" + s + "'");
        }
    }
    throw ScenarioError("field " + field + ": expected integer or \"p/q\" string");
}

ZMat parse_int_matrix(const json& v, const std::string& field, int rows, int cols) {
    if (!v.is_array() || static_cast<int>(v.size()) != rows)
        throw ScenarioError("field " + field + ": expected " + std::to_string(rows) + " rows");
    ZMat m(rows, cols);
    for (int i = 0; i < rows; ++i) {
        const json& row = v[i];
        if (!row.is_array() || static_cast<int>(row.size()) != cols)
            throw ScenarioError("field " + field + ": row " + std::to_string(i) + " needs " +
                                std::to_string(cols) + " entries");
        for (int j = 0; j < cols; ++j) {
            if (!row[j].is_number_integer())
                throw ScenarioError("field " + field + ": entry (" + std::to_string(i) + "," +
                                    std::to_string(j) + ") must be an integer");
            m.at(i, j) = mpz_class(row[j].get<long>());
        }
    }
    return m;
}

QMat parse_rat_matrix(const json& v, const std::string& field, int rows, int cols) {
    if (!v.is_array() || static_cast<int>(v.size()) != rows)
        throw ScenarioError("field " + field + ": expected " + std::to_string(rows) + " rows");
    QMat m(rows, cols);
    for (int i = 0; i < rows; ++i) {
        const json& row = v[i];
        if (!row.is_array() || static_cast<int>(row.size()) != cols)
            throw ScenarioError("field " + field + ": row " + std::to_string(i) + " needs " +
                                std::to_string(cols) + " entries");
        for (int j = 0; j < cols; ++j)
            m.at(i, j) = parse_rational(row[j], field);
    }
    return m;
}

json rat_to_json(const mpq_class& q) {
    if (q.get_den() == 1 && q.get_num().fits_slong_p())
        return json(q.get_num().get_si());
    return json(q.get_str());
}

json rat_matrix_to_json(const QMat& m) {
    json rows = json::array();
    for (int i = 0; i < m.m; ++i) {
        json row = json::array();
        for (int j = 0; j < m.n; ++j) row.push_back(rat_to_json(m.at(i, j)));
        rows.push_back(row);
    }
    return rows;
}

json int_matrix_to_json(const ZMat& m) {
    json rows = json::array();
    for (int i = 0; i < m.m; ++i) {
        json row = json::array();
        for (int j = 0; j < m.n; ++j) row.push_back(m.at(i, j).get_si());
        rows.push_back(row);
    }
    return rows;
}

Density parse_density(const std::string& s) {
    if (s == "dense_by_construction") return Density::dense_by_construction;
    if (s == "non_dense") return Density::non_dense;
    if (s == "unknown") return Density::unknown;
    throw ScenarioError("field density: unknown value '" + s + "'");
}

}  // namespace

Scenario parse_scenario(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ScenarioError(std::string("document is not valid JSON: ") + e.what());
    }
    Scenario s;
    if (doc.contains("name")) s.name = doc["name"].get<std::string>();
    for (const char* f : {"d", "k", "M", "G", "Q", "P", "density"})
        if (!doc.contains(f)) throw ScenarioError(std::string("field ") + f + ": missing");
    if (!doc["d"].is_number_integer() || doc["d"].get<int>() < 1)
        throw ScenarioError("field d: must be a positive integer");
    if (!doc["k"].is_number_integer() || doc["k"].get<int>() < 1)
        throw ScenarioError("field k: must be a positive integer");
    s.d = doc["d"].get<int>();
    s.k = doc["k"].get<int>();
    s.M = parse_int_matrix(doc["M"], "M", s.d, s.d);
    s.G = parse_rat_matrix(doc["G"], "G", s.k, s.k);
    s.Q = parse_rat_matrix(doc["Q"], "Q", s.d, s.k);
    s.P = parse_rat_matrix(doc["P"], "P", s.d, s.k);
    s.density = parse_density(doc["density"].get<std::string>());
    if (doc.contains("options")) {
        const json& o = doc["options"];
        if (o.contains("n_max")) s.options.n_max = o["n_max"].get<int>();
        if (o.contains("tol")) s.options.tol = o["tol"].get<double>();
        if (o.contains("tail_window")) s.options.tail_window = o["tail_window"].get<double>();
        if (s.options.n_max < 16) throw ScenarioError("field options.n_max: must be >= 16");
        if (!(s.options.tol > 0)) throw ScenarioError("field options.tol: must be positive");
        if (!(s.options.tail_window > 0 && s.options.tail_window <= 1))
            throw ScenarioError("field options.tail_window: must be in (0, 1]");
    }

    if (det(s.M) == 0) throw ScenarioError("M singular");
    try {
        MWModel{s.k, s.G}.validate();
    } catch (const std::invalid_argument& e) {
        throw ScenarioError(e.what());
    }
    return s;
}

Scenario load_scenario_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ScenarioError("cannot open scenario file: " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    Scenario s = parse_scenario(buf.str());
    if (s.name == "scenario") s.name = std::filesystem::path(path).stem().string();
    return s;
}

std::string scenario_to_text(const Scenario& s) {
    json doc;
    doc["name"] = s.name;
    doc["d"] = s.d;
    doc["k"] = s.k;
    doc["M"] = int_matrix_to_json(s.M);
    doc["G"] = rat_matrix_to_json(s.G);
    doc["Q"] = rat_matrix_to_json(s.Q);
    doc["P"] = rat_matrix_to_json(s.P);
    doc["density"] = to_string(s.density);
    doc["options"] = {{"n_max", s.options.n_max},
                      {"tol", s.options.tol},
                      {"tail_window", s.options.tail_window}};
    return doc.dump(2) + "\n";
}

DegreeReport run_scenario(const Scenario& s) {
    return verify_theorem(s.model(), s.self_map(), PointCoords(s.P), s.verify_options());
}

SuiteResult run_suite(const std::vector<Scenario>& scenarios, int jobs) {
    SuiteResult result;
    result.entries.resize(scenarios.size());
    if (jobs < 1) jobs = 1;
    std::atomic<size_t> next{0};
    std::vector<std::string> errors(scenarios.size());
    auto worker = [&]() {
        for (;;) {
            size_t i = next.fetch_add(1);
            if (i >= scenarios.size()) break;
            try {
                result.entries[i] = {scenarios[i], run_scenario(scenarios[i])};
            } catch (const std::exception& e) {
                errors[i] = e.what();
            }
        }
    };
    if (jobs == 1 || scenarios.size() <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < jobs; ++t) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    for (size_t i = 0; i < scenarios.size(); ++i)
        if (!errors[i].empty())
            throw ScenarioError("scenario " + scenarios[i].name + ": " + errors[i]);
    std::sort(result.entries.begin(), result.entries.end(),
              [](const auto& a, const auto& b) { return a.first.name < b.first.name; });
    for (const auto& [sc, rep] : result.entries)
        (rep.all_ok ? result.passed : result.failed) += 1;
    return result;
}

std::string g12(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

std::string report_to_text(const Scenario& s, const DegreeReport& r) {
    std::ostringstream os;
    os << "scenario: " << s.name << "\n";
    os << "  d = " << s.d << ", k = " << s.k << ", density = " << to_string(r.density) << "\n";
    os << "  route: " << to_string(r.route) << "\n";
    os << "  charpoly: " << r.charpoly_f.str() << "\n";
    os << "  unipotent split: r = " << r.split.r << ", F2 = " << r.split.f2.str() << "\n";
    os << "  delta = " << g12(r.delta.value) << "  enclosure [" << r.delta.lower.get_str()
       << ", " << r.delta.upper.get_str() << "]\n";
    os << "  alpha = " << g12(r.alpha.value) << "  (" << to_string(r.alpha.mode);
    if (r.alpha.poly_degree_fit) os << ", degree " << *r.alpha.poly_degree_fit;
    os << ", residual " << g12(r.alpha.residual) << ")\n";
    os << "  relative gap |alpha-delta|/delta = " << g12(r.relative_gap) << "\n";
    os << "  verdict: "
       << (r.equality_checked ? (r.equality_ok ? "equality verified" : "EQUALITY FAILED")
                              : "inequality-only")
       << "\n";
    if (r.bezout) {
        os << "  bezout: g1 = " << r.bezout->g1.str() << ", g2 = " << r.bezout->g2.str()
           << ", rho = " << r.bezout->rho.get_str() << "\n";
    }
    for (const auto& c : r.checks)
        os << "  [" << (c.pass ? "PASS" : "FAIL") << "] " << c.name
           << (c.detail.empty() ? "" : ": " + c.detail) << "\n";
    for (size_t i = 0; i < r.factors.size(); ++i) {
        const auto& f = r.factors[i];
        os << "  factor " << (i + 1) << ": route " << to_string(f.route) << ", delta "
           << g12(f.delta.value) << ", alpha " << g12(f.alpha.value) << ", "
           << (f.all_ok ? "ok" : "FAILED") << "\n";
    }
    return os.str();
}

std::string orbit_to_csv(const DegreeReport& r) {
    std::ostringstream os;
    os << "n,hn_digits,log_hn,alpha_running\n";
    for (size_t n = 0; n < r.heights.size(); ++n) {
        const mpq_class& h = r.heights[n];
        size_t digits = mpz_class(h.get_num()).get_str().size();
        if (h.get_num() < 0) digits -= 1;  // sign is not a digit
        os << n << "," << digits << ",";
        if (h > 0)
            os << g12(log_mpq(h));
        else
            os << "-inf";
        os << "," << g12(n < r.running_alpha.size() ? r.running_alpha[n] : 1.0) << "\n";
    }
    return os.str();
}

namespace {

json certificate_to_json(const SpectralCertificate& c) {
    json j;
    j["value"] = g12(c.value);
    j["lower"] = c.lower.get_str();
    j["upper"] = c.upper.get_str();
    return j;
}

json poly_to_json(const IntPoly& p) {
    json coeffs = json::array();
    for (const auto& c : p.coeffs) coeffs.push_back(c.get_str());
    return coeffs;
}

json point_to_json(const PointCoords& p) { return rat_matrix_to_json(p.c); }

json report_to_json(const DegreeReport& r) {
    json j;
    j["route"] = to_string(r.route);
    j["density"] = to_string(r.density);
    j["delta"] = certificate_to_json(r.delta);
    j["alpha"] = {{"value", g12(r.alpha.value)},
                  {"mode", to_string(r.alpha.mode)},
                  {"n_used", r.alpha.n_used},
                  {"residual", g12(r.alpha.residual)}};
    if (r.alpha.poly_degree_fit) j["alpha"]["poly_degree_fit"] = *r.alpha.poly_degree_fit;
    j["relative_gap"] = g12(r.relative_gap);
    j["equality_checked"] = r.equality_checked;
    j["equality_ok"] = r.equality_ok;
    j["inequality_ok"] = r.inequality_ok;
    j["all_ok"] = r.all_ok;
    j["charpoly"] = poly_to_json(r.charpoly_f);
    j["unipotent_split"] = {{"r", r.split.r}, {"f2", poly_to_json(r.split.f2)}};
    if (r.bezout) {
        j["bezout"] = {{"g1", poly_to_json(r.bezout->g1)},
                       {"g2", poly_to_json(r.bezout->g2)},
                       {"rho", r.bezout->rho.get_str()}};
    }
    if (r.basis1) j["basis1"] = int_matrix_to_json(*r.basis1);
    if (r.basis2) j["basis2"] = int_matrix_to_json(*r.basis2);
    if (r.m1) j["m1"] = int_matrix_to_json(*r.m1);
    if (r.m2) j["m2"] = int_matrix_to_json(*r.m2);
    if (r.q1) j["q1"] = point_to_json(*r.q1);
    if (r.q2) j["q2"] = point_to_json(*r.q2);
    json checks = json::array();
    for (const auto& c : r.checks)
        checks.push_back({{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
    j["checks"] = checks;
    if (!r.factors.empty()) {
        json facs = json::array();
        for (const auto& f : r.factors) facs.push_back(report_to_json(f));
        j["factors"] = facs;
    }
    return j;
}

}  // namespace

std::string suite_to_summary_json(const SuiteResult& result) {
    json j;
    j["scenario_count"] = result.entries.size();
    j["passed"] = result.passed;
    j["failed"] = result.failed;
    json list = json::array();
    for (const auto& [sc, rep] : result.entries) {
        json e;
        e["name"] = sc.name;
        e["scenario"] = json::parse(scenario_to_text(sc));
        e["report"] = report_to_json(rep);
        list.push_back(e);
    }
    j["scenarios"] = list;
    return j.dump(2) + "\n";
}

int emit_outputs(const SuiteResult& result, const EmitOptions& opts) {
    namespace fs = std::filesystem;
    std::error_code ec;
    fs::create_directories(opts.out_dir, ec);
    auto write_file = [&](const std::string& name, const std::string& content) {
        const fs::path p = fs::path(opts.out_dir) / name;
        std::ofstream out(p);
        if (!out) throw ScenarioError("cannot write output file: " + p.string());
        out << content;
    };
    for (const auto& [sc, rep] : result.entries) {
        if (opts.text) write_file(sc.name + ".report.txt", report_to_text(sc, rep));
        if (opts.csv) write_file(sc.name + ".orbit.csv", orbit_to_csv(rep));
    }
    if (opts.summary) write_file("summary.json", suite_to_summary_json(result));
    return result.failed == 0 ? 0 : 1;
}

}  // namespace abdeg
