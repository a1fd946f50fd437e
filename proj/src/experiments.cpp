#include "qgen/experiments.hpp"

#include <fcntl.h>
#include <signal.h>
#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <atomic>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <mutex>
#include <stdexcept>
#include <string_view>
#include <thread>

#include "qgen/serialization.hpp"
#include "qgen/transforms.hpp"

namespace qgen {
namespace {

std::string fmt_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  size_t start = 0;
  while (true) {
    size_t pos = s.find(sep, start);
    if (pos == std::string_view::npos) {
      out.push_back(s.substr(start));
      return out;
    }
    out.push_back(s.substr(start, pos - start));
    start = pos + 1;
  }
}

}  // namespace

// --- literature constants ------------------------------------------------------

const SatThresholdEntry* known_sat_threshold(int k) {
  // Lower bound: Kaporis, Kirousis & Lalas 2006 (greedy algorithm analysis).
  // Upper bound: Dubois, Boufkhad & Mandler 2000 (first-moment refinement).
  // Observed crossing: classic large-scale experiments (Crawford & Auton and
  // successors) put the empirical 3-SAT transition near m/n = 4.26.
  static const SatThresholdEntry table[] = {
      {3, 3.52, 4.49, 4.26,
       "3-SAT: lower 3.52 (Kaporis-Kirousis-Lalas), upper 4.49 (Dubois-Boufkhad-Mandler), "
       "observed 4.26"},
  };
  for (const auto& e : table) {
    if (e.k == k) return &e;
  }
  return nullptr;
}

RatioBounds controlled_crossing_bounds(int k) {
  const SatThresholdEntry* e = known_sat_threshold(k - 1);
  if (e == nullptr) {
    throw std::invalid_argument("no threshold bounds on record for width " + std::to_string(k) +
                                " (the table covers k-1 = 3, i.e. k = 4)");
  }
  RatioBounds b;
  b.lower = e->lower / 2.0;
  b.upper = e->upper;
  b.note = "for clause width " + std::to_string(k) + ", from " + e->source;
  return b;
}

double predicted_multi_frequency(double p, int t) {
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("probability must lie in [0, 1]");
  if (t < 1) throw std::invalid_argument("component count must be >= 1");
  return 1.0 - std::pow(1.0 - p, t);
}

// --- external solvers ----------------------------------------------------------

std::vector<SolverAdapter> load_solver_adapters(std::string_view text) {
  std::vector<SolverAdapter> out;
  int line_no = 0;
  for (std::string_view raw : split(text, '\n')) {
    ++line_no;
    size_t hash = raw.find('#');
    if (hash != std::string_view::npos) raw = raw.substr(0, hash);
    raw = trim(raw);
    if (raw.empty()) continue;

    std::vector<std::string_view> fields = split(raw, '|');
    if (fields.size() != 4) {
      throw parse_error(line_no, "expected 4 '|'-separated fields (name | command | sat codes | "
                                 "unsat codes), got " + std::to_string(fields.size()));
    }
    SolverAdapter a;
    a.name = std::string(trim(fields[0]));
    a.command = std::string(trim(fields[1]));
    if (a.name.empty()) throw parse_error(line_no, "empty solver name");
    if (a.command.find("{file}") == std::string::npos) {
      throw parse_error(line_no, "command for '" + a.name + "' lacks the {file} placeholder");
    }
    auto parse_codes = [&](std::string_view field, const char* what) {
      std::vector<int> codes;
      for (std::string_view tok : split(field, ',')) {
        tok = trim(tok);
        if (tok.empty()) continue;
        char* end = nullptr;
        std::string owned(tok);
        long v = std::strtol(owned.c_str(), &end, 10);
        if (end == nullptr || *end != '\0' || v < 0 || v > 255) {
          throw parse_error(line_no, std::string("bad ") + what + " exit code '" + owned + "'");
        }
        codes.push_back(static_cast<int>(v));
      }
      if (codes.empty()) throw parse_error(line_no, std::string("no ") + what + " exit codes");
      return codes;
    };
    a.sat_codes = parse_codes(fields[2], "sat");
    a.unsat_codes = parse_codes(fields[3], "unsat");
    out.push_back(std::move(a));
  }
  return out;
}

SolverRun run_external_solver(const SolverAdapter& adapter, const std::filesystem::path& file,
                              std::chrono::milliseconds timeout) {
  std::string cmd = adapter.command;
  const std::string placeholder = "{file}";
  size_t pos = cmd.find(placeholder);
  if (pos == std::string::npos) {
    throw std::invalid_argument("solver command lacks the {file} placeholder");
  }
  const std::string file_str = file.string();
  while (pos != std::string::npos) {
    cmd.replace(pos, placeholder.size(), file_str);
    pos = cmd.find(placeholder, pos + file_str.size());
  }

  const std::string out_path = file_str + ".solver-out";
  SolverRun run;

  const auto start = std::chrono::steady_clock::now();
  const pid_t pid = fork();
  if (pid < 0) {
    run.detail = "fork failed";
    return run;
  }
  if (pid == 0) {
    // Child. Own process group so a timeout kill reaches grandchildren too;
    // stdout/stderr go to a file to avoid pipe-buffer deadlocks.
    setpgid(0, 0);
    int fd = open(out_path.c_str(), O_WRONLY | O_CREAT | O_TRUNC, 0644);
    if (fd >= 0) {
      dup2(fd, 1);
      dup2(fd, 2);
      if (fd > 2) close(fd);
    }
    execl("/bin/sh", "sh", "-c", cmd.c_str(), static_cast<char*>(nullptr));
    _exit(127);
  }
  setpgid(pid, pid);  // also from the parent, closing the startup race

  const auto deadline = start + timeout;
  int status = 0;
  bool timed_out = false;
  while (true) {
    pid_t r = waitpid(pid, &status, WNOHANG);
    if (r == pid) break;
    if (r < 0) {
      run.detail = "waitpid failed";
      return run;
    }
    if (std::chrono::steady_clock::now() >= deadline) {
      kill(-pid, SIGKILL);
      timed_out = true;
      waitpid(pid, &status, 0);
      break;
    }
    std::this_thread::sleep_for(std::chrono::milliseconds(2));
  }
  run.seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  {
    std::ifstream in(out_path, std::ios::binary);
    if (in) {
      char buf[4096];
      in.read(buf, sizeof(buf));
      run.detail.assign(buf, static_cast<size_t>(in.gcount()));
    }
    std::error_code ec;
    std::filesystem::remove(out_path, ec);
  }

  if (timed_out) {
    run.status = SolveStatus::Timeout;
    return run;
  }
  if (WIFEXITED(status)) {
    run.exit_code = WEXITSTATUS(status);
    auto has = [&](const std::vector<int>& v) {
      return std::find(v.begin(), v.end(), run.exit_code) != v.end();
    };
    if (has(adapter.sat_codes)) {
      run.status = SolveStatus::Sat;
    } else if (has(adapter.unsat_codes)) {
      run.status = SolveStatus::Unsat;
    } else {
      run.status = SolveStatus::Error;
    }
    return run;
  }
  run.status = SolveStatus::Error;
  if (WIFSIGNALED(status)) {
    run.detail = "terminated by signal " + std::to_string(WTERMSIG(status));
  }
  return run;
}

// --- decision backends -----------------------------------------------------------

DecisionBackend::Result OracleBackend::decide(const GenSpec& spec, const Instance& inst) {
  (void)spec;
  Result r;
  try {
    bool verdict;
    if (const auto* multi = std::get_if<MultiCnf>(&inst)) {
      verdict = sat_decide(*multi, limits_);
    } else {
      verdict = qbf_decide(std::get<CnfQbf>(inst), limits_);
    }
    r.outcome = verdict ? Outcome::True : Outcome::False;
  } catch (const resource_error&) {
    r.outcome = Outcome::Undecided;
  }
  r.seconds = 0;  // deliberately unreported: keeps seeded outputs byte-identical
  return r;
}

SolverBackend::SolverBackend(SolverAdapter adapter, WireFormat format,
                             std::chrono::milliseconds timeout, std::filesystem::path workdir)
    : adapter_(std::move(adapter)), format_(format), timeout_(timeout),
      workdir_(std::move(workdir)) {
  if (adapter_.command.find("{file}") == std::string::npos) {
    throw std::invalid_argument("solver command lacks the {file} placeholder");
  }
}

DecisionBackend::Result SolverBackend::decide(const GenSpec& spec, const Instance& inst) {
  std::string content;
  const char* ext = "";
  bool invert = false;
  const std::vector<std::string> comments{describe(spec)};

  switch (format_) {
    case WireFormat::Dimacs: {
      const auto* multi = std::get_if<MultiCnf>(&inst);
      if (multi == nullptr) {
        throw std::invalid_argument("dimacs output needs a plain CNF instance; "
                                    "use qdimacs or aspcore for QBF models");
      }
      content = write_dimacs(apply_selector_encoding(*multi), comments);
      ext = ".cnf";
      break;
    }
    case WireFormat::Qdimacs: {
      const auto* qbf = std::get_if<CnfQbf>(&inst);
      if (qbf == nullptr) {
        throw std::invalid_argument("qdimacs output needs a QBF instance; "
                                    "plain CNF instances are written as dimacs");
      }
      content = write_qdimacs(apply_selector_encoding(*qbf), comments);
      ext = ".qdimacs";
      break;
    }
    case WireFormat::Aspcore: {
      const auto* qbf = std::get_if<CnfQbf>(&inst);
      if (qbf == nullptr) {
        throw std::invalid_argument("aspcore output needs a QBF instance");
      }
      content = write_aspcore(qbf_to_program(*qbf));
      ext = ".lp";
      // The program has an answer set exactly when the QBF is false, so the
      // solver's verdict flips on this route.
      invert = true;
      break;
    }
  }

  static std::atomic<std::uint64_t> counter{0};
  const std::uint64_t id = counter.fetch_add(1, std::memory_order_relaxed);
  const std::filesystem::path path =
      workdir_ / ("qgen-" + std::to_string(static_cast<long>(getpid())) + "-" +
                  std::to_string(id) + ext);
  {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << content;
  }

  SolverRun sr = run_external_solver(adapter_, path, timeout_);
  {
    std::error_code ec;
    std::filesystem::remove(path, ec);
  }

  Result r;
  r.seconds = sr.seconds;
  switch (sr.status) {
    case SolveStatus::Sat:
      r.outcome = invert ? Outcome::False : Outcome::True;
      break;
    case SolveStatus::Unsat:
      r.outcome = invert ? Outcome::True : Outcome::False;
      break;
    case SolveStatus::Timeout:
      r.outcome = Outcome::Undecided;
      break;
    case SolveStatus::Error: {
      std::string msg = "solver '" + adapter_.name + "' failed on " + describe(spec);
      if (sr.exit_code >= 0) msg += " (exit code " + std::to_string(sr.exit_code) + ")";
      if (!sr.detail.empty()) msg += ": " + sr.detail.substr(0, 200);
      throw std::runtime_error(msg);
    }
  }
  return r;
}

// --- frequency estimation and sweeps ----------------------------------------------

FrequencyEstimate estimate_frequency(const GenSpec& spec, int samples, DecisionBackend& backend,
                                     int jobs) {
  if (samples < 0) throw std::invalid_argument("sample count must be >= 0");
  validate(spec);

  std::vector<DecisionBackend::Result> results(static_cast<size_t>(samples));
  std::atomic<int> next{0};
  std::atomic<bool> failed{false};
  std::exception_ptr first_error;
  std::mutex error_mutex;

  auto worker = [&]() {
    while (!failed.load(std::memory_order_relaxed)) {
      const int i = next.fetch_add(1, std::memory_order_relaxed);
      if (i >= samples) return;
      try {
        GenSpec s = spec;
        s.instance_index = static_cast<std::uint64_t>(i);
        const Instance inst = gen_instance(s);
        results[static_cast<size_t>(i)] = backend.decide(s, inst);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
        failed.store(true, std::memory_order_relaxed);
        return;
      }
    }
  };

  const int thread_count = std::max(1, std::min(jobs, samples));
  if (thread_count <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<size_t>(thread_count));
    for (int i = 0; i < thread_count; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  if (first_error) std::rethrow_exception(first_error);

  FrequencyEstimate est;
  est.samples = samples;
  double total_seconds = 0;
  for (const auto& r : results) {
    switch (r.outcome) {
      case Outcome::True: ++est.sat_count; break;
      case Outcome::False: break;
      case Outcome::Undecided: ++est.timeouts; break;
    }
    total_seconds += r.seconds;
  }
  const int decided = est.samples - est.timeouts;
  est.frequency = decided > 0 ? static_cast<double>(est.sat_count) / decided : 0.0;
  est.mean_seconds = samples > 0 ? total_seconds / samples : 0.0;
  return est;
}

GenSpec with_axis_value(const GenSpec& spec, const std::string& axis, int value) {
  GenSpec out = spec;
  if (axis == "t") {
    out.components = value;
    return out;
  }
  const bool ok = std::visit(
      [&](auto& p) -> bool {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, KcnfParams>) {
          if (axis == "k") p.k = value;
          else if (axis == "n") p.n = value;
          else if (axis == "m") p.m = value;
          else return false;
        } else if constexpr (std::is_same_v<T, ChenInterianParams>) {
          if (axis == "a") p.a = value;
          else if (axis == "e") p.e = value;
          else if (axis == "A") p.big_a = value;
          else if (axis == "E") p.big_e = value;
          else if (axis == "m") p.m = value;
          else return false;
        } else if constexpr (std::is_same_v<T, ControlledParams>) {
          if (axis == "k") p.k = value;
          else if (axis == "A") p.big_a = value;
          else if (axis == "E") p.big_e = value;
          else return false;
        } else if constexpr (std::is_same_v<T, GenControlledParams>) {
          if (axis == "h") p.h = value;
          else if (axis == "k") p.k = value;
          else if (axis == "A") p.big_a = value;
          else if (axis == "E") p.big_e = value;
          else return false;
        } else {
          static_assert(std::is_same_v<T, SmoothGctdParams>);
          if (axis == "h") p.h = value;
          else if (axis == "k") p.k = value;
          else if (axis == "E") p.big_e = value;
          else if (axis == "m") p.m = value;
          else return false;
        }
        return true;
      },
      out.model);
  if (!ok) {
    throw std::invalid_argument("model '" + model_name(spec.model) + "' has no parameter '" +
                               axis + "' (t is always accepted)");
  }
  return out;
}

double point_ratio(const GenSpec& spec) {
  return std::visit(
      [](const auto& p) -> double {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, KcnfParams>) {
          return static_cast<double>(p.m) / p.n;
        } else if constexpr (std::is_same_v<T, ChenInterianParams>) {
          return static_cast<double>(p.m) / (p.big_a + p.big_e);
        } else if constexpr (std::is_same_v<T, ControlledParams>) {
          return static_cast<double>(p.big_a) / p.big_e;
        } else if constexpr (std::is_same_v<T, GenControlledParams>) {
          return p.big_a / std::pow(static_cast<double>(p.big_e), 1.0 / p.h);
        } else {
          static_assert(std::is_same_v<T, SmoothGctdParams>);
          return static_cast<double>(p.m) / p.big_e;
        }
      },
      spec.model);
}

namespace {

// describe() minus the model tag, the swept axis, and the per-sample index:
// the sweep-invariant parameters.
std::string fixed_params_text(const GenSpec& spec, const std::string& axis) {
  const std::string described = describe(spec);  // split() returns views into this
  std::string joined;
  for (std::string_view tok : split(described, ' ')) {
    if (tok.empty()) continue;
    const size_t eq = tok.find('=');
    const std::string_view key = eq == std::string_view::npos ? tok : tok.substr(0, eq);
    if (key == "model" || key == "index" || key == axis) continue;
    if (!joined.empty()) joined += ' ';
    joined += std::string(tok);
  }
  return joined;
}

}  // namespace

SweepResult sweep(const SweepConfig& config, DecisionBackend& backend) {
  if (config.step <= 0) throw std::invalid_argument("sweep step must be positive");
  if (config.from > config.to) throw std::invalid_argument("empty sweep range");
  if (config.samples < 1) throw std::invalid_argument("sweeps need at least one sample per point");

  SweepResult result;
  result.model = model_name(config.base.model);
  result.axis = config.axis;
  result.params = fixed_params_text(config.base, config.axis);

  int point_index = 0;
  for (long v = config.from; v <= config.to; v += config.step, ++point_index) {
    GenSpec s = with_axis_value(config.base, config.axis, static_cast<int>(v));
    s.seed = derive_seed(config.base.seed, static_cast<std::uint64_t>(point_index));
    s.instance_index = 0;
    const FrequencyEstimate est = estimate_frequency(s, config.samples, backend, config.jobs);
    SweepPoint pt;
    pt.swept = static_cast<int>(v);
    pt.ratio = point_ratio(s);
    pt.sat_count = est.sat_count;
    pt.samples = est.samples;
    pt.timeouts = est.timeouts;
    pt.frequency = est.frequency;
    pt.mean_seconds = est.mean_seconds;
    result.points.push_back(pt);
  }
  return result;
}

namespace {
constexpr const char* kCsvHeader =
    "model,params,axis,swept,ratio,sat_count,samples,timeouts,frequency,mean_time_s";
}

std::string to_csv(const SweepResult& result) {
  std::string out = kCsvHeader;
  out += '\n';
  for (const SweepPoint& p : result.points) {
    out += result.model;
    out += ',';
    out += result.params;
    out += ',';
    out += result.axis;
    out += ',';
    out += std::to_string(p.swept);
    out += ',';
    out += fmt_double(p.ratio);
    out += ',';
    out += std::to_string(p.sat_count);
    out += ',';
    out += std::to_string(p.samples);
    out += ',';
    out += std::to_string(p.timeouts);
    out += ',';
    out += fmt_double(p.frequency);
    out += ',';
    out += fmt_double(p.mean_seconds);
    out += '\n';
  }
  return out;
}

SweepResult parse_sweep_csv(std::string_view text) {
  std::vector<std::string_view> lines = split(text, '\n');
  while (!lines.empty() && trim(lines.back()).empty()) lines.pop_back();
  if (lines.empty() || trim(lines.front()) != kCsvHeader) {
    throw parse_error(1, std::string("expected header '") + kCsvHeader + "'");
  }

  auto parse_int = [](std::string_view tok, int line_no, const char* what) {
    std::string owned{trim(tok)};
    char* end = nullptr;
    long v = std::strtol(owned.c_str(), &end, 10);
    if (owned.empty() || end == nullptr || *end != '\0') {
      throw parse_error(line_no, std::string("bad ") + what + " '" + owned + "'");
    }
    return static_cast<int>(v);
  };
  auto parse_double = [](std::string_view tok, int line_no, const char* what) {
    std::string owned{trim(tok)};
    char* end = nullptr;
    double v = std::strtod(owned.c_str(), &end);
    if (owned.empty() || end == nullptr || *end != '\0') {
      throw parse_error(line_no, std::string("bad ") + what + " '" + owned + "'");
    }
    return v;
  };

  SweepResult result;
  for (size_t i = 1; i < lines.size(); ++i) {
    const int line_no = static_cast<int>(i) + 1;
    std::string_view line = lines[i];
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (trim(line).empty()) continue;
    std::vector<std::string_view> f = split(line, ',');
    if (f.size() != 10) {
      throw parse_error(line_no, "expected 10 fields, got " + std::to_string(f.size()));
    }
    const std::string model{f[0]}, params{f[1]}, axis{f[2]};
    if (result.points.empty()) {
      result.model = model;
      result.params = params;
      result.axis = axis;
    } else if (model != result.model || params != result.params || axis != result.axis) {
      throw parse_error(line_no, "row belongs to a different sweep");
    }
    SweepPoint p;
    p.swept = parse_int(f[3], line_no, "swept value");
    p.ratio = parse_double(f[4], line_no, "ratio");
    p.sat_count = parse_int(f[5], line_no, "sat count");
    p.samples = parse_int(f[6], line_no, "sample count");
    p.timeouts = parse_int(f[7], line_no, "timeout count");
    if (p.samples < 0 || p.timeouts < 0 || p.timeouts > p.samples || p.sat_count < 0 ||
        p.sat_count > p.samples - p.timeouts) {
      throw parse_error(line_no, "inconsistent counts");
    }
    parse_double(f[8], line_no, "frequency");  // validated, then recomputed from the counts
    const int decided = p.samples - p.timeouts;
    p.frequency = decided > 0 ? static_cast<double>(p.sat_count) / decided : 0.0;
    p.mean_seconds = parse_double(f[9], line_no, "mean time");
    result.points.push_back(p);
  }
  return result;
}

std::optional<double> crossing_point(const std::vector<SweepPoint>& points) {
  for (size_t i = 0; i < points.size(); ++i) {
    const double d0 = points[i].frequency - 0.5;
    if (d0 == 0.0) return points[i].ratio;
    if (i + 1 < points.size()) {
      const double d1 = points[i + 1].frequency - 0.5;
      if ((d0 > 0) != (d1 > 0) && d1 != 0.0) {
        const double x0 = points[i].ratio, x1 = points[i + 1].ratio;
        return x0 + (0.5 - points[i].frequency) * (x1 - x0) /
                        (points[i + 1].frequency - points[i].frequency);
      }
    }
  }
  return std::nullopt;
}

}  // namespace qgen
