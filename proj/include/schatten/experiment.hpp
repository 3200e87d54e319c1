#pragma once

#include <iosfwd>
#include <optional>
#include <vector>

#include <nlohmann/json.hpp>

#include "schatten/common.hpp"
#include "schatten/report.hpp"

namespace schatten {

enum class Task {
    SchattenTrace,
    TracePower,
    GraphEnergy,
    TraceF,
    ClockReduction,
    RegimeCheck,
    AdvantageReport,
};

std::string to_string(Task t);
Task task_from_string(const std::string& s);

// One experiment: an input (file path or inline generator spec), a task, the
// estimators to run, and the accuracy/seed parameters. The exact oracle is
// auto-included whenever the dimension permits, providing the truth column.
struct ExperimentSpec {
    Task task = Task::SchattenTrace;
    std::vector<std::string> estimators;  // subset of {exact, dqc1, walker}
    std::string input;                    // .json hamiltonian/circuit or .txt sparse
    std::optional<nlohmann::json> generator;  // degree-model spec, alternative to input

    int p = 2;
    double eps = 0.1;
    double eps_prime = 0.1;
    double fail_prob = 0.05;
    std::vector<std::uint64_t> seeds{0};
    std::string readout = "exact";       // exact | sampled (dqc1 paths)
    std::string walk_mode = "corrected"; // corrected | literal
    int samples = 30;                    // regime-check graph samples

    std::string output_csv;   // optional; empty = stdout only
    std::string output_json;  // optional

    void validate() const;
    static ExperimentSpec from_json(const nlohmann::json& j);
    static ExperimentSpec load(const std::string& path);
};

struct ExperimentResult {
    std::vector<EstimateReport> reports;
    std::string summary;  // printable table
    bool all_pass = true; // over bound-claiming estimators with known truth
};

// Deterministic given seeds; honors the SCHATTEN_SEED env override.
ExperimentResult run_experiment(const ExperimentSpec& spec, const Config& cfg = {});

// CSV columns: estimator,value,truth,bound,pass,seed,ms
void write_reports_csv(const std::vector<EstimateReport>& reports, std::ostream& os);

// Static accuracy plot: CSV of (index, x, value, truth, bound) plus an SVG with
// the values, the truth line when present, and the claimed-bound band.
void emit_plots(const std::vector<EstimateReport>& reports, const std::string& csv_path,
                const std::string& svg_path);

}  // namespace schatten
