#include <doctest.h>

#include <cmath>
#include <sstream>

#include "abdeg/scenario.hpp"

using namespace abdeg;

namespace {

const char* kMinimalDoc = R"({
  "d": 1, "k": 1,
  "M": [[2]],
  "G": [[1]],
  "Q": [[0]],
  "P": [[1]],
  "density": "dense_by_construction"
})";

}  // namespace

TEST_CASE("scenario parsing and validation") {
    SUBCASE("minimal document") {
        Scenario s = parse_scenario(kMinimalDoc);
        CHECK(s.d == 1);
        CHECK(s.k == 1);
        CHECK(s.M == ZMat(1, 1, {2}));
        CHECK(s.density == Density::dense_by_construction);
        CHECK(s.options.n_max == 80);
        CHECK(s.options.tol == 1e-9);
        CHECK(s.options.tail_window == 0.25);
    }
    SUBCASE("G must be positive definite") {
        std::string doc = kMinimalDoc;
        doc.replace(doc.find("\"G\": [[1]]"), 10, "\"G\": [[0]]");
        CHECK_THROWS_WITH_AS(parse_scenario(doc), "G not positive definite", ScenarioError);
    }
    SUBCASE("M must be nonsingular") {
        const char* doc = R"({
          "d": 2, "k": 1,
          "M": [[1, 1], [1, 1]],
          "G": [[1]],
          "Q": [[0], [0]],
          "P": [[1], [0]],
          "density": "unknown"
        })";
        CHECK_THROWS_WITH_AS(parse_scenario(doc), "M singular", ScenarioError);
    }
    SUBCASE("rationals as p/q strings") {
        const char* doc = R"({
          "d": 1, "k": 2,
          "M": [[3]],
          "G": [[1, "1/2"], ["1/2", 1]],
          "Q": [["2/3", 0]],
          "P": [["-1/2", 1]],
          "density": "unknown"
        })";
        Scenario s = parse_scenario(doc);
        CHECK(s.G.at(0, 1) == mpq_class(1, 2));
        CHECK(s.Q.at(0, 0) == mpq_class(2, 3));
        CHECK(s.P.at(0, 0) == mpq_class(-1, 2));
    }
    SUBCASE("errors name the offending field") {
        std::string doc = kMinimalDoc;
        doc.replace(doc.find("\"d\": 1"), 6, "\"d\": 0");
        CHECK_THROWS_WITH_AS(parse_scenario(doc), "field d: must be a positive integer",
                             ScenarioError);
        CHECK_THROWS_AS(parse_scenario("{\"d\": 1}"), ScenarioError);
        CHECK_THROWS_AS(parse_scenario("not json"), ScenarioError);
    }
}

TEST_CASE("canonical round-trip") {
    Scenario s = parse_scenario(kMinimalDoc);
    std::string text = scenario_to_text(s);
    Scenario s2 = parse_scenario(text);
    CHECK(scenario_to_text(s2) == text);
    CHECK(s2.M == s.M);
    CHECK(s2.G == s.G);
    CHECK(s2.Q == s.Q);
    CHECK(s2.P == s.P);
    CHECK(s2.density == s.density);
}

TEST_CASE("scenario runs deterministically") {
    Scenario s = parse_scenario(kMinimalDoc);
    s.name = "doubling";
    SuiteResult r1 = run_suite({s}, 1);
    SuiteResult r2 = run_suite({s}, 2);
    CHECK(suite_to_summary_json(r1) == suite_to_summary_json(r2));
    CHECK(r1.passed == 1);
    CHECK(r1.failed == 0);
}

TEST_CASE("orbit CSV") {
    Scenario s = parse_scenario(kMinimalDoc);
    s.options.n_max = 16;
    DegreeReport rep = run_scenario(s);
    std::string csv = orbit_to_csv(rep);
    std::istringstream is(csv);
    std::string line;
    std::getline(is, line);
    CHECK(line == "n,hn_digits,log_hn,alpha_running");
    // row for n = 3: h_3 = 64, two digits, log = 3 log 4
    for (int i = 0; i < 4; ++i) std::getline(is, line);
    std::istringstream row(line);
    std::string n, digits, logh, running;
    std::getline(row, n, ',');
    std::getline(row, digits, ',');
    std::getline(row, logh, ',');
    std::getline(row, running, ',');
    CHECK(n == "3");
    CHECK(digits == "2");
    CHECK(std::abs(std::stod(logh) - 3 * std::log(4.0)) < 1e-9);
}

TEST_CASE("suite aggregation and exit codes") {
    Scenario good = parse_scenario(kMinimalDoc);
    good.name = "a_good";
    SUBCASE("empty suite exits clean") {
        SuiteResult empty = run_suite({}, 1);
        EmitOptions opts;
        opts.out_dir = "/tmp/abdeg-test-out-empty";
        CHECK(emit_outputs(empty, opts) == 0);
    }
    SUBCASE("failing invariant yields nonzero exit") {
        // doubling with P = 0 declared dense: alpha = 1 < delta = 4
        Scenario bad = good;
        bad.name = "b_bad";
        bad.P = QMat(1, 1);
        SuiteResult r = run_suite({good, bad}, 1);
        CHECK(r.passed == 1);
        CHECK(r.failed == 1);
        EmitOptions opts;
        opts.out_dir = "/tmp/abdeg-test-out";
        CHECK(emit_outputs(r, opts) == 1);
    }
    SUBCASE("unwritable path is an error") {
        SuiteResult r = run_suite({good}, 1);
        EmitOptions opts;
        opts.out_dir = "/proc/definitely/not/writable";
        CHECK_THROWS_AS(emit_outputs(r, opts), ScenarioError);
    }
}

TEST_CASE("fixed 12-significant-digit formatting") {
    CHECK(g12(4.0) == "4");
    CHECK(g12(6.8541019662496845) == "6.85410196625");
    CHECK(g12(0.001) == "0.001");
}
