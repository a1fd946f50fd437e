#pragma once

#include <chrono>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "qgen/generators.hpp"
#include "qgen/oracle.hpp"

namespace qgen {

// --- literature constants ------------------------------------------------------

// Bracketing constants for the random k-SAT threshold ratio m/n, with their
// sources, plus the experimentally observed crossing. Data, not derivation:
// extend the table when new rigorous bounds are published.
struct SatThresholdEntry {
  int k;
  double lower;          // rigorous lower bound on the threshold ratio
  double upper;          // rigorous upper bound
  double observed;       // empirically observed 0.5-crossing
  const char* source;
};

// Table lookup; nullptr for k outside the table.
const SatThresholdEntry* known_sat_threshold(int k);

struct RatioBounds {
  double lower = 0;
  double upper = 0;
  std::string note;
};

// Bounds on the A/E location of the true/false transition of the controlled
// family with clause width k, derived from the (k-1)-SAT entry:
// [lower(k-1)/2, upper(k-1)]. Throws std::invalid_argument naming the known
// k values when the table has no (k-1) entry.
RatioBounds controlled_crossing_bounds(int k);

// 1 - (1-p)^t: the satisfaction frequency of a t-tuple with independent
// components, each true with probability p. Requires p in [0,1], t >= 1.
double predicted_multi_frequency(double p, int t);

// --- external solvers ----------------------------------------------------------

// One row of the solver adapter table: how to invoke a solver and how to
// read its exit codes.
struct SolverAdapter {
  std::string name;
  std::string command;  // must contain the literal placeholder {file}
  std::vector<int> sat_codes{10};
  std::vector<int> unsat_codes{20};
};

// Parses the plain-text adapter table: one adapter per line,
//   name | command with {file} | sat codes | unsat codes
// codes comma-separated; '#' starts a comment. parse_error on bad rows.
std::vector<SolverAdapter> load_solver_adapters(std::string_view text);

enum class SolveStatus { Sat, Unsat, Timeout, Error };

struct SolverRun {
  SolveStatus status = SolveStatus::Error;
  double seconds = 0;
  int exit_code = -1;
  std::string detail;  // first chunk of solver output, for diagnostics
};

// Runs `adapter.command` on `file` under a wall-clock limit. The child runs
// in its own process group and is killed as a group at the deadline, so the
// call never blocks much past `timeout`. Unmapped exit codes (including 127
// for a missing binary) come back as Error with the output excerpt attached.
SolverRun run_external_solver(const SolverAdapter& adapter, const std::filesystem::path& file,
                              std::chrono::milliseconds timeout);

// --- decision backends ----------------------------------------------------------

// How a backend judged one instance. Undecided covers timeouts and resource
// refusals; those samples are excluded from frequencies.
enum class Outcome { True, False, Undecided };

class DecisionBackend {
 public:
  struct Result {
    Outcome outcome = Outcome::Undecided;
    double seconds = 0;
  };

  virtual ~DecisionBackend() = default;
  // Judges "satisfiable" (plain instances) / "true" (QBF instances). Must be
  // callable from several threads at once.
  virtual Result decide(const GenSpec& spec, const Instance& inst) = 0;
  // Whether Result::seconds carries wall time. The internal oracle reports
  // zero instead, keeping seeded runs byte-identical.
  virtual bool reports_time() const = 0;
};

// Decides with the in-process oracles (sat_decide / qbf_decide).
class OracleBackend final : public DecisionBackend {
 public:
  explicit OracleBackend(OracleLimits limits = {}) : limits_(limits) {}
  Result decide(const GenSpec& spec, const Instance& inst) override;
  bool reports_time() const override { return false; }

 private:
  OracleLimits limits_;
};

enum class WireFormat { Dimacs, Qdimacs, Aspcore };

// Serializes each instance to a temporary file and asks an external solver.
// Aspcore hands the solver the translated program, whose answer sets witness
// FALSITY of the QBF, so the verdict is inverted on that path.
class SolverBackend final : public DecisionBackend {
 public:
  SolverBackend(SolverAdapter adapter, WireFormat format, std::chrono::milliseconds timeout,
                std::filesystem::path workdir = std::filesystem::temp_directory_path());
  Result decide(const GenSpec& spec, const Instance& inst) override;
  bool reports_time() const override { return true; }

 private:
  SolverAdapter adapter_;
  WireFormat format_;
  std::chrono::milliseconds timeout_;
  std::filesystem::path workdir_;
};

// --- frequency estimation and sweeps --------------------------------------------

struct FrequencyEstimate {
  int sat_count = 0;
  int samples = 0;
  int timeouts = 0;     // undecided samples, excluded from frequency
  double frequency = 0;  // sat_count / (samples - timeouts), 0 when nothing decided
  double mean_seconds = 0;
};

// Frequency of "satisfiable/true" over `samples` instances of `spec`,
// sample i generated with instance_index = i. `jobs` > 1 decides samples
// concurrently; the aggregate is reduced in index order either way.
FrequencyEstimate estimate_frequency(const GenSpec& spec, int samples, DecisionBackend& backend,
                                     int jobs = 1);

struct SweepPoint {
  int swept = 0;       // value of the swept parameter
  double ratio = 0;    // model-specific control ratio at this point
  int sat_count = 0;
  int samples = 0;
  int timeouts = 0;
  double frequency = 0;
  double mean_seconds = 0;
};

struct SweepResult {
  std::string model;
  std::string params;  // fixed parameters, swept axis excluded
  std::string axis;
  std::vector<SweepPoint> points;
};

struct SweepConfig {
  GenSpec base;      // base.seed seeds the whole sweep; per-point streams derive from it
  std::string axis;  // parameter letter to sweep, e.g. "m" or "A"
  int from = 0, to = 0, step = 1;
  int samples = 0;
  int jobs = 1;
};

// Copy of spec with the named integer parameter replaced. Throws
// std::invalid_argument when the model has no such parameter.
GenSpec with_axis_value(const GenSpec& spec, const std::string& axis, int value);

// The control ratio experiments plot against: m/n for plain k-CNF, m/(A+E)
// for the two-block family, A/E for the controlled family, A/E^(1/h) for the
// generalized one, m/E for the smooth one.
double point_ratio(const GenSpec& spec);

// Runs estimate_frequency at each axis value from..to (inclusive, stepping
// by step). Point p uses seed derive_seed(base.seed, p), so points are
// independent and the whole sweep is reproducible from the config alone.
SweepResult sweep(const SweepConfig& config, DecisionBackend& backend);

// CSV with header
//   model,params,axis,swept,ratio,sat_count,samples,timeouts,frequency,mean_time_s
// one row per point, LF line endings; byte-identical for equal configs when
// the backend reports no wall time.
std::string to_csv(const SweepResult& result);
SweepResult parse_sweep_csv(std::string_view text);

// First 0.5-crossing of the (ratio, frequency) sequence, linearly
// interpolated; exact hits return the ratio itself. nullopt when no adjacent
// pair brackets 0.5. Points must be ordered by ratio.
std::optional<double> crossing_point(const std::vector<SweepPoint>& points);

}  // namespace qgen
