#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

namespace bk {

inline constexpr int csv_schema_version = 1;

struct ExperimentConfig {
    std::string suite = "formcalc";
    std::vector<int> n;         // empty: suite default
    std::vector<double> r;
    std::vector<double> alpha;
    int samples = 0;            // 0: suite default
    std::uint64_t seed = 20240601;
    std::string out;
    std::string json_out;
    bool timing = false;        // wall_time_ms stays 0 otherwise, so output is byte-stable
    double inject_constant = 0.0;  // converge test mode: replaces residuals when > 0
};

struct ExperimentRecord {
    std::string suite;
    int n = 0;
    double r = 0.0;
    double alpha = 0.0;
    int sample_id = 0;
    std::string quantity;
    double lhs = 0.0, rhs = 0.0, margin = 0.0, tol = 0.0;
    bool pass = false;
    double wall_time_ms = 0.0;
};

// pass <=> margin >= -tol; NaN margins fail
ExperimentRecord make_record(std::string suite, int n, double r, double alpha, int sample, std::string quantity,
                             double lhs, double rhs, double margin, double tol);

struct RunResult {
    std::vector<ExperimentRecord> records;
    int failures = 0;
    int numerical_errors = 0;
    std::vector<std::string> notes;
};

struct ConvergenceReport {
    std::vector<int> n;
    std::vector<double> residual;
    double slope = 0.0;
    bool decreasing = false;
    RunResult result;
};

const std::vector<std::string>& known_suites();
// fills suite defaults and checks ranges; throws config_error
ExperimentConfig resolved(const ExperimentConfig& c, const std::string& command);

RunResult run_verify(const ExperimentConfig& c);
RunResult run_sweep(const ExperimentConfig& c);
RunResult run_bound(const ExperimentConfig& c);
ConvergenceReport run_convergence(const ExperimentConfig& c);

// least-squares slope of log y against log x
double loglog_slope(const std::vector<double>& x, const std::vector<double>& y);

std::string csv_header();
std::string csv_row(const ExperimentRecord& r);
void write_csv(std::ostream& os, const std::vector<ExperimentRecord>& records);
void write_csv(const std::string& path, const std::vector<ExperimentRecord>& records);
nlohmann::json records_json(const ExperimentConfig& c, const RunResult& r);

// 0 pass, 1 property failure, 3 numerical error
int exit_status(const RunResult& r);

// workers from BEKENSTEIN_WORKERS, else the hardware concurrency
int worker_count();
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

} // namespace bk
