#pragma once

#include <optional>
#include <string>

#include "dritz/metrics.hpp"
#include "dritz/strat.hpp"

namespace dritz {

// Resolved sweep description. Presets set the defaults; explicit config
// keys override them.
struct ExperimentConfig {
    DomainKind problem = DomainKind::Disk;
    std::vector<StrategyKind> strategies{StrategyKind::Naive};
    std::vector<double> lambdas{1, 5, 10, 50, 100, 500, 1000, 5000, 10000};
    std::vector<DistanceId> distances; // ExactBC; empty = both for the domain
    double lambda_pre = 1.0;
    int repetitions = 25;
    int lattice_n = 0; // 0 = per-domain default (disk/annulus 160, square 500)
    long iterations = 0; // 0 = per-strategy full-scale default, scaled by preset
    std::size_t error_samples = 1000000;
    std::uint64_t base_seed = 0;
    std::string out_dir = "results";
    std::string preset = "paper"; // paper | desk
    long monitor_every = 10;      // cmd_monitor only

    int resolved_lattice_n() const;
    std::string canonical_text() const; // key-sorted, for hashing and echo
    std::string hash() const;           // FNV-1a over canonical_text
};

// Parses the key = value config format ([sections] allowed, keys global).
// Throws std::invalid_argument naming the offending field.
ExperimentConfig parse_experiment_config(const std::string& text);
ExperimentConfig load_experiment_config(const std::string& path);

// One persisted run. Optional columns are empty when not applicable.
struct RunRecord {
    std::string problem;
    std::string strategy;
    std::optional<double> lambda;     // naive lambda / pretrain lambda_T
    std::optional<double> lambda_pre; // pretrain only
    std::string distance;             // exactbc only
    std::uint64_t seed = 0;
    long run_index = 0;
    std::optional<double> rel_l2_dirichlet;
    std::optional<double> rel_h1_dirichlet;
    std::optional<double> rel_l2_robin;
    std::optional<double> rel_h1_robin;
    std::optional<double> final_loss;
    bool failed = false;
    long iterations = 0;
    double wall_time_s = 0.0;
    std::string preset;
    std::string config_hash;
};

extern const char* const kRecordsSchemaVersion;

std::string records_to_csv(std::span<const RunRecord> records,
                           const std::string& config_hash);
std::vector<RunRecord> records_from_csv(const std::string& csv_text);
RunRecord record_from_csv_line(const std::string& line);
std::string record_to_csv_line(const RunRecord& r);

// The per-run strategy configuration the sweep uses for a given record
// slot; exposed so single runs are reproducible outside cmd_run.
StrategyConfig plan_run(const ExperimentConfig& cfg, StrategyKind strategy,
                        std::optional<double> lambda,
                        std::optional<DistanceId> distance, std::uint64_t seed);

// Executes the full sweep. Writes <out>/records.csv and <out>/config.json.
// Re-running with an unchanged config is a no-op unless force is set;
// running against a different existing config requires force. Returns the
// records (sorted by run index regardless of jobs).
std::vector<RunRecord> cmd_run(const ExperimentConfig& cfg, bool force,
                               int jobs);

struct SummaryRow {
    std::string problem;
    std::string strategy;
    std::string group; // lambda value or distance id
    std::string metric;
    double mean = 0.0;
    double sample_std = 0.0;
    std::size_t n_runs = 0;
    std::size_t n_failed = 0;
};

struct Summary {
    std::vector<SummaryRow> rows;
    // "best lambda" selections: (problem, strategy, metric) -> group with
    // minimal mean (ties broken toward the smaller lambda)
    std::vector<SummaryRow> best;
};

Summary summarize_records(std::span<const RunRecord> records);
std::string summary_to_text(const Summary& s);
std::string summary_to_csv(const Summary& s);

// Reads a records CSV, writes <out>/summary.csv and <out>/summary.txt.
Summary cmd_summarize(const std::string& records_csv_path,
                      const std::string& out_dir);

// Emits one SVG error-bar chart per (problem, strategy) plus a flat
// plot-data CSV. Also accepts a monitor CSV and then draws the
// |loss - energy| line chart.
void cmd_plot(const std::string& csv_path, const std::string& out_dir);

// Single monitored training run; writes monitor.csv and monitor.svg plus a
// divergence summary, and returns the summary.
MonitorSummary cmd_monitor(const ExperimentConfig& cfg);

// Formats "(3.14 +/- 0.82)e-02" style mean/std pairs.
std::string format_mean_std(double mean, double std);

} // namespace dritz
