#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "abdeg/degrees.hpp"

namespace abdeg {

struct ScenarioError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ScenarioOptions {
    int n_max = 80;
    double tol = 1e-9;
    double tail_window = 0.25;  // fraction of n_max
};

/* One self-map scenario: phi(P) = M P + Q on E^d carried by a rank-k
 * Mordell-Weil lattice with Gram matrix G. Parsed from a JSON document with
 * exact rationals written as "p/q" strings (or plain integers).
 */
struct Scenario {
    std::string name = "scenario";
    int d = 0, k = 0;
    ZMat M;
    QMat G;
    QMat Q, P;
    Density density = Density::unknown;
    ScenarioOptions options;

    AbelianModel model() const { return AbelianModel{d, MWModel{k, G}}; }
    SelfMap self_map() const { return SelfMap{M, PointCoords(Q)}; }
    VerifyOptions verify_options() const;
};

// Parse and fully validate; throws ScenarioError naming the offending field.
Scenario parse_scenario(const std::string& text);
Scenario load_scenario_file(const std::string& path);

// Canonical serialization; parse(scenario_to_text(s)) reproduces s exactly.
std::string scenario_to_text(const Scenario& s);

DegreeReport run_scenario(const Scenario& s);

struct SuiteResult {
    std::vector<std::pair<Scenario, DegreeReport>> entries;  // name-ordered
    int passed = 0;
    int failed = 0;
};

// Runs scenarios (concurrently when jobs > 1) and gathers results in
// deterministic name order.
SuiteResult run_suite(const std::vector<Scenario>& scenarios, int jobs = 1);

struct EmitOptions {
    bool text = true;
    bool csv = true;
    bool summary = true;
    std::string out_dir = ".";
};

// fixed 12-significant-digit float formatting used by all outputs
std::string g12(double v);

std::string report_to_text(const Scenario& s, const DegreeReport& r);
std::string orbit_to_csv(const DegreeReport& r);
std::string suite_to_summary_json(const SuiteResult& result);

/* Writes per-scenario text reports and orbit CSVs plus the machine-readable
 * summary document. Returns the suite exit code: 0 when every assertion
 * passed, 1 otherwise. Throws ScenarioError on unwritable paths.
 */
int emit_outputs(const SuiteResult& result, const EmitOptions& opts);

}  // namespace abdeg
