// The regularizer x noise-level comparison matrix.
#ifndef SHEARSCAT_BENCHMARK_HPP
#define SHEARSCAT_BENCHMARK_HPP

#include "shearscat/config.hpp"

namespace shearscat {

struct BenchmarkRow {
    std::string method;
    double noise_level = 0.0;
    double rel_error = 0.0;
    int iterations = 0;
    double residual_hs = 0.0;
    double epsilon = 0.0;
    bool converged = false;
    std::string status = "ok"; // "ok" or the failure message
};

struct BenchmarkTable {
    std::vector<BenchmarkRow> rows;
};

// For every noise level and each of {shearlet, l1, none}: one inversion of
// the configured phantom. The noise realization at a level is shared by all
// three methods (same seed), and per-run history files land in out_dir as
// history_<method>_<level>.csv when out_dir is nonempty.
BenchmarkTable run_benchmark(const ExperimentConfig& config, bool write_outputs = true);

void save_benchmark_csv(const std::string& path, const BenchmarkTable& table);
std::string benchmark_csv(const BenchmarkTable& table);

void save_history_csv(const std::string& path, const std::vector<IterationRecord>& history);

} // namespace shearscat

#endif
