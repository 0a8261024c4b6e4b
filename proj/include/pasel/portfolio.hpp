#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

namespace pasel {

enum class SolveStatus { solved, timeout, error };

SolveStatus parse_status(const std::string& text);
std::string to_string(SolveStatus status);

// One (Essence Prime model, solver) pairing, the unit being selected.
// Rendered as "model-solver"; the model tag may not contain '-'.
struct AlgorithmId {
  std::string model_tag;
  std::string solver_tag;

  static AlgorithmId parse(const std::string& rendered);
  std::string render() const;

  bool operator==(const AlgorithmId&) const = default;
};

struct RuntimeRecord {
  std::string instance_id;
  AlgorithmId algorithm;
  SolveStatus status = SolveStatus::solved;
  double runtime_seconds = 0.0;
};

// Complete instance x algorithm grid of runtimes. Instance and algorithm
// order follow first appearance in the input records; that order is the
// tie-break order everywhere downstream.
class PerformanceMatrix {
 public:
  PerformanceMatrix(const std::vector<RuntimeRecord>& records,
                    double cutoff_seconds = 3600.0, double penalty_factor = 10.0);

  const std::vector<std::string>& instances() const { return instances_; }
  const std::vector<AlgorithmId>& algorithms() const { return algorithms_; }
  std::size_t n_instances() const { return instances_.size(); }
  std::size_t n_algorithms() const { return algorithms_.size(); }
  double cutoff_seconds() const { return cutoff_seconds_; }
  double penalty_factor() const { return penalty_factor_; }
  // score assigned to a cell that did not solve
  double penalty_seconds() const { return penalty_factor_ * cutoff_seconds_; }

  std::size_t instance_index(const std::string& instance_id) const;
  std::size_t algorithm_index(const std::string& rendered) const;

  SolveStatus status(std::size_t instance, std::size_t algorithm) const;
  double raw_runtime(std::size_t instance, std::size_t algorithm) const;
  // runtime if solved, else penalty_factor * cutoff
  double penalized_runtime(std::size_t instance, std::size_t algorithm) const;

  // index of the per-instance best algorithm (min penalized runtime,
  // ties broken by portfolio order)
  std::size_t best_algorithm(std::size_t instance) const;

  // validated index list for a subset of instance ids (preserves order,
  // rejects unknown ids and duplicates)
  std::vector<std::size_t> instance_indices(const std::vector<std::string>& subset) const;

 private:
  struct Cell {
    SolveStatus status;
    double runtime;
  };

  std::vector<std::string> instances_;
  std::vector<AlgorithmId> algorithms_;
  std::vector<Cell> cells_;  // row-major instance x algorithm
  double cutoff_seconds_;
  double penalty_factor_;
  std::unordered_map<std::string, std::size_t> instance_lookup_;
  std::unordered_map<std::string, std::size_t> algorithm_lookup_;
};

// CSV with header `instance,algorithm,status,runtime`
PerformanceMatrix ingest_runtimes(const std::string& path,
                                  double cutoff_seconds = 3600.0,
                                  double penalty_factor = 10.0);

double par10(const PerformanceMatrix& matrix, std::size_t algorithm,
             const std::vector<std::string>& instance_subset);
double par10(const PerformanceMatrix& matrix, const AlgorithmId& algorithm,
             const std::vector<std::string>& instance_subset);

// PAR10 per algorithm over the subset, in portfolio order
std::vector<double> par10_per_algorithm(const PerformanceMatrix& matrix,
                                        const std::vector<std::string>& instance_subset);

struct VbsResult {
  std::vector<std::size_t> picks;  // aligned with the subset order
  double par10 = 0.0;
};
VbsResult vbs(const PerformanceMatrix& matrix, const std::vector<std::string>& instance_subset);

std::size_t single_best_index(const PerformanceMatrix& matrix,
                              const std::vector<std::string>& instance_subset);
AlgorithmId single_best(const PerformanceMatrix& matrix,
                        const std::vector<std::string>& instance_subset);

// Binary competitiveness grid: an algorithm is competitive on an instance
// when it solved it in under abs_threshold seconds, or in under rel_factor
// times the best solved runtime on that instance. Both bounds are strict.
struct CompetitivenessLabels {
  double abs_threshold_seconds = 10.0;
  double rel_factor = 2.0;
  std::vector<std::vector<std::uint8_t>> rows;  // matrix instance x algorithm order

  const std::vector<std::uint8_t>& row(std::size_t instance) const { return rows.at(instance); }
};

CompetitivenessLabels competitiveness_labels(const PerformanceMatrix& matrix,
                                             double abs_threshold_seconds = 10.0,
                                             double rel_factor = 2.0);

struct AlgorithmStats {
  AlgorithmId algorithm;
  double par10 = 0.0;
  double win_fraction = 0.0;
  double competitive_fraction = 0.0;
};

std::vector<AlgorithmStats> portfolio_stats(const PerformanceMatrix& matrix,
                                            const CompetitivenessLabels& labels,
                                            const std::vector<std::string>& instance_subset);

void write_stats_csv(const std::vector<AlgorithmStats>& stats, const std::string& path);
void write_stats_json(const std::vector<AlgorithmStats>& stats, const std::string& path);

}  // namespace pasel
