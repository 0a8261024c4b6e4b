#include "pasel/portfolio.hpp"

#include <algorithm>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <unordered_set>

#include <json.hpp>

#include "pasel/csv.hpp"

namespace pasel {

SolveStatus parse_status(const std::string& text) {
  if (text == "solved") return SolveStatus::solved;
  if (text == "timeout") return SolveStatus::timeout;
  if (text == "error") return SolveStatus::error;
  throw std::runtime_error("unknown status '" + text + "' (expected solved, timeout or error)");
}

std::string to_string(SolveStatus status) {
  switch (status) {
    case SolveStatus::solved: return "solved";
    case SolveStatus::timeout: return "timeout";
    case SolveStatus::error: return "error";
  }
  throw std::logic_error("invalid SolveStatus");
}

AlgorithmId AlgorithmId::parse(const std::string& rendered) {
  const auto dash = rendered.find('-');
  if (dash == std::string::npos) return {rendered, ""};
  return {rendered.substr(0, dash), rendered.substr(dash + 1)};
}

std::string AlgorithmId::render() const {
  if (solver_tag.empty()) return model_tag;
  return model_tag + "-" + solver_tag;
}

PerformanceMatrix::PerformanceMatrix(const std::vector<RuntimeRecord>& records,
                                     double cutoff_seconds, double penalty_factor)
    : cutoff_seconds_(cutoff_seconds), penalty_factor_(penalty_factor) {
  if (cutoff_seconds <= 0.0) throw std::invalid_argument("PerformanceMatrix: cutoff must be positive");
  if (penalty_factor <= 0.0) throw std::invalid_argument("PerformanceMatrix: penalty factor must be positive");
  if (records.empty()) throw std::invalid_argument("PerformanceMatrix: no records");

  for (const auto& r : records) {
    if (instance_lookup_.emplace(r.instance_id, instances_.size()).second) {
      instances_.push_back(r.instance_id);
    }
    const std::string key = r.algorithm.render();
    if (algorithm_lookup_.emplace(key, algorithms_.size()).second) {
      algorithms_.push_back(r.algorithm);
    }
  }

  const std::size_t n_cells = instances_.size() * algorithms_.size();
  cells_.assign(n_cells, Cell{SolveStatus::error, -1.0});
  std::vector<bool> seen(n_cells, false);

  for (const auto& r : records) {
    const std::size_t i = instance_lookup_.at(r.instance_id);
    const std::size_t a = algorithm_lookup_.at(r.algorithm.render());
    const std::size_t cell = i * algorithms_.size() + a;
    if (seen[cell]) {
      throw std::runtime_error("duplicate cell (" + r.instance_id + ", " + r.algorithm.render() + ")");
    }
    if (r.runtime_seconds < 0.0) {
      throw std::runtime_error("negative runtime for (" + r.instance_id + ", " + r.algorithm.render() + ")");
    }
    if (r.status == SolveStatus::solved && r.runtime_seconds > cutoff_seconds_) {
      throw std::runtime_error("solved runtime exceeds cutoff for (" + r.instance_id + ", " +
                               r.algorithm.render() + "): " + fmt17(r.runtime_seconds) + " > " +
                               fmt17(cutoff_seconds_));
    }
    seen[cell] = true;
    cells_[cell] = Cell{r.status, r.runtime_seconds};
  }

  std::vector<std::string> gaps;
  for (std::size_t i = 0; i < instances_.size(); ++i) {
    for (std::size_t a = 0; a < algorithms_.size(); ++a) {
      if (!seen[i * algorithms_.size() + a]) {
        gaps.push_back("(" + instances_[i] + ", " + algorithms_[a].render() + ")");
      }
    }
  }
  if (!gaps.empty()) {
    std::ostringstream msg;
    msg << "missing " << gaps.size() << " cell" << (gaps.size() == 1 ? "" : "s") << ":";
    const std::size_t shown = std::min<std::size_t>(gaps.size(), 20);
    for (std::size_t g = 0; g < shown; ++g) msg << ' ' << gaps[g];
    if (shown < gaps.size()) msg << " ...";
    throw std::runtime_error(msg.str());
  }
}

std::size_t PerformanceMatrix::instance_index(const std::string& instance_id) const {
  const auto it = instance_lookup_.find(instance_id);
  if (it == instance_lookup_.end()) throw std::invalid_argument("unknown instance '" + instance_id + "'");
  return it->second;
}

std::size_t PerformanceMatrix::algorithm_index(const std::string& rendered) const {
  const auto it = algorithm_lookup_.find(rendered);
  if (it == algorithm_lookup_.end()) throw std::invalid_argument("unknown algorithm '" + rendered + "'");
  return it->second;
}

SolveStatus PerformanceMatrix::status(std::size_t instance, std::size_t algorithm) const {
  return cells_.at(instance * algorithms_.size() + algorithm).status;
}

double PerformanceMatrix::raw_runtime(std::size_t instance, std::size_t algorithm) const {
  return cells_.at(instance * algorithms_.size() + algorithm).runtime;
}

double PerformanceMatrix::penalized_runtime(std::size_t instance, std::size_t algorithm) const {
  const Cell& c = cells_.at(instance * algorithms_.size() + algorithm);
  return c.status == SolveStatus::solved ? c.runtime : penalty_seconds();
}

std::size_t PerformanceMatrix::best_algorithm(std::size_t instance) const {
  std::size_t best = 0;
  double best_time = penalized_runtime(instance, 0);
  for (std::size_t a = 1; a < algorithms_.size(); ++a) {
    const double t = penalized_runtime(instance, a);
    if (t < best_time) {
      best = a;
      best_time = t;
    }
  }
  return best;
}

std::vector<std::size_t> PerformanceMatrix::instance_indices(
    const std::vector<std::string>& subset) const {
  std::vector<std::size_t> idx;
  idx.reserve(subset.size());
  std::unordered_set<std::size_t> seen;
  for (const auto& id : subset) {
    const std::size_t i = instance_index(id);
    if (!seen.insert(i).second) throw std::invalid_argument("duplicate instance '" + id + "' in subset");
    idx.push_back(i);
  }
  return idx;
}

PerformanceMatrix ingest_runtimes(const std::string& path, double cutoff_seconds,
                                  double penalty_factor) {
  const auto lines = read_lines(path);
  if (lines.empty()) throw std::runtime_error(path + ": empty file");
  {
    const auto header = split(lines[0], ',');
    if (header.size() != 4 || trim(header[0]) != "instance" || trim(header[1]) != "algorithm" ||
        trim(header[2]) != "status" || trim(header[3]) != "runtime") {
      throw std::runtime_error(path + ": expected header 'instance,algorithm,status,runtime', got '" +
                               lines[0] + "'");
    }
  }
  std::vector<RuntimeRecord> records;
  records.reserve(lines.size() - 1);
  for (std::size_t ln = 1; ln < lines.size(); ++ln) {
    if (trim(lines[ln]).empty()) continue;
    const auto fields = split(lines[ln], ',');
    if (fields.size() != 4) {
      throw std::runtime_error(path + ":" + std::to_string(ln + 1) + ": expected 4 fields, got " +
                               std::to_string(fields.size()));
    }
    const std::string where = path + ":" + std::to_string(ln + 1);
    RuntimeRecord r;
    r.instance_id = std::string(trim(fields[0]));
    r.algorithm = AlgorithmId::parse(std::string(trim(fields[1])));
    r.status = parse_status(std::string(trim(fields[2])));
    r.runtime_seconds = parse_finite(fields[3], where + ": runtime");
    if (r.instance_id.empty()) throw std::runtime_error(where + ": empty instance id");
    records.push_back(std::move(r));
  }
  try {
    return PerformanceMatrix(records, cutoff_seconds, penalty_factor);
  } catch (const std::exception& e) {
    throw std::runtime_error(path + ": " + e.what());
  }
}

double par10(const PerformanceMatrix& matrix, std::size_t algorithm,
             const std::vector<std::string>& instance_subset) {
  if (algorithm >= matrix.n_algorithms()) throw std::invalid_argument("par10: algorithm index out of range");
  if (instance_subset.empty()) throw std::invalid_argument("par10: instance subset is empty");
  const auto idx = matrix.instance_indices(instance_subset);
  double sum = 0.0;
  for (const std::size_t i : idx) sum += matrix.penalized_runtime(i, algorithm);
  return sum / static_cast<double>(idx.size());
}

double par10(const PerformanceMatrix& matrix, const AlgorithmId& algorithm,
             const std::vector<std::string>& instance_subset) {
  return par10(matrix, matrix.algorithm_index(algorithm.render()), instance_subset);
}

std::vector<double> par10_per_algorithm(const PerformanceMatrix& matrix,
                                        const std::vector<std::string>& instance_subset) {
  if (instance_subset.empty()) throw std::invalid_argument("par10: instance subset is empty");
  const auto idx = matrix.instance_indices(instance_subset);
  std::vector<double> sums(matrix.n_algorithms(), 0.0);
  for (const std::size_t i : idx) {
    for (std::size_t a = 0; a < matrix.n_algorithms(); ++a) {
      sums[a] += matrix.penalized_runtime(i, a);
    }
  }
  for (auto& s : sums) s /= static_cast<double>(idx.size());
  return sums;
}

VbsResult vbs(const PerformanceMatrix& matrix, const std::vector<std::string>& instance_subset) {
  if (instance_subset.empty()) throw std::invalid_argument("vbs: instance subset is empty");
  const auto idx = matrix.instance_indices(instance_subset);
  VbsResult result;
  result.picks.reserve(idx.size());
  double sum = 0.0;
  for (const std::size_t i : idx) {
    const std::size_t best = matrix.best_algorithm(i);
    result.picks.push_back(best);
    sum += matrix.penalized_runtime(i, best);
  }
  result.par10 = sum / static_cast<double>(idx.size());
  return result;
}

std::size_t single_best_index(const PerformanceMatrix& matrix,
                              const std::vector<std::string>& instance_subset) {
  const auto scores = par10_per_algorithm(matrix, instance_subset);
  std::size_t best = 0;
  for (std::size_t a = 1; a < scores.size(); ++a) {
    if (scores[a] < scores[best]) best = a;
  }
  return best;
}

AlgorithmId single_best(const PerformanceMatrix& matrix,
                        const std::vector<std::string>& instance_subset) {
  return matrix.algorithms()[single_best_index(matrix, instance_subset)];
}

CompetitivenessLabels competitiveness_labels(const PerformanceMatrix& matrix,
                                             double abs_threshold_seconds, double rel_factor) {
  if (abs_threshold_seconds <= 0.0) {
    throw std::invalid_argument("competitiveness_labels: abs threshold must be positive");
  }
  if (rel_factor <= 1.0) {
    throw std::invalid_argument("competitiveness_labels: rel factor must exceed 1");
  }
  CompetitivenessLabels labels;
  labels.abs_threshold_seconds = abs_threshold_seconds;
  labels.rel_factor = rel_factor;
  labels.rows.resize(matrix.n_instances());
  for (std::size_t i = 0; i < matrix.n_instances(); ++i) {
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t a = 0; a < matrix.n_algorithms(); ++a) {
      if (matrix.status(i, a) == SolveStatus::solved) {
        best = std::min(best, matrix.raw_runtime(i, a));
      }
    }
    auto& row = labels.rows[i];
    row.resize(matrix.n_algorithms(), 0);
    for (std::size_t a = 0; a < matrix.n_algorithms(); ++a) {
      if (matrix.status(i, a) != SolveStatus::solved) continue;
      const double t = matrix.raw_runtime(i, a);
      row[a] = (t < abs_threshold_seconds || t < rel_factor * best) ? 1 : 0;
    }
  }
  return labels;
}

std::vector<AlgorithmStats> portfolio_stats(const PerformanceMatrix& matrix,
                                            const CompetitivenessLabels& labels,
                                            const std::vector<std::string>& instance_subset) {
  if (instance_subset.empty()) throw std::invalid_argument("portfolio_stats: instance subset is empty");
  const auto idx = matrix.instance_indices(instance_subset);
  const auto scores = par10_per_algorithm(matrix, instance_subset);

  std::vector<std::size_t> wins(matrix.n_algorithms(), 0);
  std::vector<std::size_t> competitive(matrix.n_algorithms(), 0);
  for (const std::size_t i : idx) {
    wins[matrix.best_algorithm(i)] += 1;
    const auto& row = labels.row(i);
    for (std::size_t a = 0; a < matrix.n_algorithms(); ++a) competitive[a] += row[a];
  }

  std::vector<AlgorithmStats> stats(matrix.n_algorithms());
  const double count = static_cast<double>(idx.size());
  for (std::size_t a = 0; a < matrix.n_algorithms(); ++a) {
    stats[a].algorithm = matrix.algorithms()[a];
    stats[a].par10 = scores[a];
    stats[a].win_fraction = static_cast<double>(wins[a]) / count;
    stats[a].competitive_fraction = static_cast<double>(competitive[a]) / count;
  }
  return stats;
}

void write_stats_csv(const std::vector<AlgorithmStats>& stats, const std::string& path) {
  std::ostringstream out;
  out << "algorithm,par10,win_fraction,competitive_fraction\n";
  for (const auto& s : stats) {
    out << s.algorithm.render() << ',' << fmt17(s.par10) << ',' << fmt17(s.win_fraction) << ','
        << fmt17(s.competitive_fraction) << '\n';
  }
  write_file(path, out.str());
}

void write_stats_json(const std::vector<AlgorithmStats>& stats, const std::string& path) {
  nlohmann::json algorithms = nlohmann::json::array();
  for (const auto& s : stats) {
    algorithms.push_back({{"algorithm", s.algorithm.render()},
                          {"par10", s.par10},
                          {"win_fraction", s.win_fraction},
                          {"competitive_fraction", s.competitive_fraction}});
  }
  const nlohmann::json doc = {{"algorithms", algorithms}};
  write_file(path, doc.dump(2) + "\n");
}

}  // namespace pasel
