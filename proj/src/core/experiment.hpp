#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "core/bc_catalog.hpp"
#include "core/interface_lab.hpp"
#include "core/io.hpp"
#include "core/systems.hpp"

namespace seglab {

/// Everything needed to reproduce a run; a manifest with the same content
/// produces byte-identical outputs on one platform.
struct RunManifest {
    std::vector<std::string> bcs; // "1".."9", "line", or a path to a spec JSON
    int n = 201; // nodes per axis
    double epsilon = 1e-10;
    double delta = 0.0; // <= 0 selects auto = sqrt(epsilon)
    bool want_a = true;
    bool want_b = true;
    bool want_limit = true;
    bool want_predicted = true;
    double band = 0.0; // classification band for the prediction
    std::string out_dir; // empty: no files, report only
    int jobs = 1; // worker pool size for independent runs
    EpsSolveConfig solver; // epsilon field is overridden per manifest
};

RunManifest manifest_from_json(const std::string& json_text);
nlohmann::json manifest_to_json(const RunManifest& m);

/// One boundary configuration, fully processed.
struct BcRunData {
    std::string bc;
    std::string label;
    Grid grid;
    double delta = 0.0;
    BoundarySample sample;
    std::array<ScalarField, 3> h_ext;
    HarmonicTriple h;
    double cocycle = 0.0;
    std::array<TransversalityEntry, 3> transversality;
    TripleField limit;
    std::optional<TripleField> sys_a;
    std::optional<TripleField> sys_b;
    std::optional<PartitionMap> partition;
    std::vector<InterfaceSet> interfaces; // per source, per component

    struct Comparison {
        int component = 0;
        SourceTag a, b;
        ComparisonMetrics m;
    };
    std::vector<Comparison> comparisons;

    std::optional<Diagnostics> diag_a, diag_b;
    Diagnostics diag_limit;
    EnergyReport energy_a, energy_b, energy_limit;

    bool nonnegative = true;
    bool boundary_exact = true;
    bool passed = true;
};

/// Runs the pipeline for one boundary configuration. Throws on solver or
/// validation failures.
BcRunData run_one_bc(const RunManifest& m, const std::string& bc_token);

nlohmann::json bc_report(const BcRunData& d);

struct ExperimentResult {
    nlohmann::json report;
    bool passed = true; // every run converged and kept the hard invariants
    bool any_invariant_failure = false;
    bool any_convergence_failure = false;
    bool any_io_failure = false;
};

/// Full pipeline over all configurations in the manifest; writes artifacts
/// when out_dir is set. Per-run failures are captured in the report (and the
/// flags), not rethrown, so one bad configuration cannot hide the others.
ExperimentResult run_experiment(const RunManifest& m);

/// Re-runs the manifest once per axis value and aggregates one CSV row per
/// (value, bc). axis is "epsilon", "n" or "delta"; values must be monotone.
std::string sweep(const RunManifest& base, const std::string& axis,
                  const std::vector<double>& values);

} // namespace seglab
