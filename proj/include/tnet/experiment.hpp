#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "tnet/persistence.hpp"

namespace tnet {

enum class ScenarioKind { er_pairwise, sbm_multisample };

struct ScenarioConfig {
    ScenarioKind kind = ScenarioKind::er_pairwise;
    std::vector<double> er_probs = {0.01, 0.025, 0.05, 0.1, 0.15, 0.2, 0.25};
    std::vector<std::vector<int>> sbm_scenarios = {{2, 3, 4}, {2, 3, 5}, {2, 4, 5},
                                                   {3, 4, 5}, {2, 5, 10}};
    double p_high = 0.8;
    double p_low = 0.1;
    int m = 5;        // networks per group
    int n_min = 80;   // node count range, drawn uniformly per graph
    int n_max = 120;
    int B = 999;      // permutations
    int reps = 20;    // repetitions per cell
    uint64_t seed = 0;
    std::vector<int> orders = {0, 1};
    Convention convention = Convention::radius;
    double rho = 1.0;
    int tau = 7;
    int jobs = 0;  // 0 = hardware concurrency

    // "key = value" lines; '#' comments and [section] headers are skipped
    static ScenarioConfig parse(const std::string& text, ScenarioKind kind);
    std::string resolved_text() const;
};

// Per-order metrics of one repetition of one cell.
struct RepMetrics {
    double p_ksample = 1.0;
    double p_disco = 1.0;
    double rand_kmedoids = 0.0;
    double rand_kgroups = 0.0;
    double rand_spectral = 0.0;
};

struct CellResult {
    std::string label;                          // e.g. "p=0.05 vs p=0.25" or "{2,5,10}"
    int a = 0, b = 0;                           // ER: prob indices; SBM: scenario index in a
    std::vector<std::vector<RepMetrics>> reps;  // [order_index][rep]
};

struct RunArtifacts {
    ScenarioConfig cfg;
    std::vector<CellResult> cells;

    double mean(int cell, int order_index, double RepMetrics::* field) const;
};

// Run the scenario and write all artifact files (per-rep table, mean tables,
// descriptors, sample landscapes and distance matrices, resolved config,
// provenance) into out_dir. Work units (cell x rep) are scheduled across a
// worker pool; outputs are independent of the schedule.
RunArtifacts run_er_pairwise(const ScenarioConfig& cfg, const std::string& out_dir);
RunArtifacts run_sbm_scenarios(const ScenarioConfig& cfg, const std::string& out_dir);

void write_artifacts(const RunArtifacts& artifacts, const std::string& out_dir);

}  // namespace tnet
