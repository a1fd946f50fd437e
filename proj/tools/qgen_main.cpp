// Command-line front end: generation, translation, evaluation, sweeps, and
// the recorded transition bounds. Exit codes: 0 ok, 1 usage or input error,
// and for eval verdicts 10 (true/satisfiable/consistent), 20 (false/
// unsatisfiable/inconsistent), 30 (out of oracle budget).

#include <atomic>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <mutex>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <variant>
#include <vector>

#include <unistd.h>

#include "CLI11.hpp"
#include "qgen/experiments.hpp"
#include "qgen/formula.hpp"
#include "qgen/generators.hpp"
#include "qgen/oracle.hpp"
#include "qgen/serialization.hpp"
#include "qgen/transforms.hpp"

namespace fs = std::filesystem;
using namespace qgen;

namespace {

// ---------------------------------------------------------------------------
// small file helpers

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Target is written whole or not at all: temp file in the same directory,
// then rename over the destination.
void atomic_write(const fs::path& path, const std::string& text) {
  fs::path tmp = path;
  tmp += ".tmp" + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    out << text;
    out.flush();
    if (!out) {
      std::error_code ec;
      fs::remove(tmp, ec);
      throw std::runtime_error("cannot write " + tmp.string());
    }
  }
  fs::rename(tmp, path);
}

// ---------------------------------------------------------------------------
// formats

std::optional<WireFormat> format_from_name(std::string name) {
  for (char& c : name) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  if (name == "dimacs") return WireFormat::Dimacs;
  if (name == "qdimacs") return WireFormat::Qdimacs;
  if (name == "aspcore") return WireFormat::Aspcore;
  return std::nullopt;
}

std::optional<WireFormat> format_from_extension(const fs::path& path) {
  std::string ext = path.extension().string();
  for (char& c : ext) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  if (ext == ".cnf" || ext == ".dimacs") return WireFormat::Dimacs;
  if (ext == ".qdimacs" || ext == ".qcnf") return WireFormat::Qdimacs;
  if (ext == ".lp" || ext == ".asp") return WireFormat::Aspcore;
  return std::nullopt;
}

const char* format_name(WireFormat f) {
  switch (f) {
    case WireFormat::Dimacs: return "dimacs";
    case WireFormat::Qdimacs: return "qdimacs";
    case WireFormat::Aspcore: return "aspcore";
  }
  return "?";
}

// Input format of `path`: the explicit flag wins, then the extension.
WireFormat resolve_input_format(const fs::path& path, const std::string& flag) {
  if (!flag.empty()) {
    if (auto f = format_from_name(flag)) return *f;
    throw CLI::ValidationError("--from", "unknown format \"" + flag + "\"");
  }
  if (auto f = format_from_extension(path)) return *f;
  throw CLI::ValidationError(
      "--input", "cannot infer the format of \"" + path.string() + "\"; pass --from");
}

// ---------------------------------------------------------------------------
// model flags shared by gen and sweep

struct ModelOpts {
  std::string model;
  int k = 0, n = 0, m = 0, a = 0, e = 0, big_a = 0, big_e = 0, h = 0;
  int t = 1;
  std::uint64_t seed = 0;
  CLI::Option *ok = nullptr, *on = nullptr, *om = nullptr, *oa = nullptr, *oe = nullptr,
              *obig_a = nullptr, *obig_e = nullptr, *oh = nullptr;
};

void add_model_flags(CLI::App* cmd, ModelOpts& o) {
  cmd->add_option("--model", o.model, "model family: kcnf | ci | ctd | gctd | sgctd")->required();
  o.ok = cmd->add_option("--k", o.k, "clause width");
  o.on = cmd->add_option("--n", o.n, "variable count (kcnf)");
  o.om = cmd->add_option("--m", o.m, "clause count (kcnf, ci, sgctd)");
  o.oa = cmd->add_option("--a", o.a, "universal literals per clause (ci)");
  o.oe = cmd->add_option("--e", o.e, "existential literals per clause (ci)");
  o.obig_a = cmd->add_option("--A", o.big_a, "universal variable count");
  o.obig_e = cmd->add_option("--E", o.big_e, "existential variable count");
  o.oh = cmd->add_option("--h", o.h, "universal literals per clause (gctd, sgctd)");
  cmd->add_option("--t", o.t, "components per instance")->capture_default_str();
  cmd->add_option("--seed", o.seed, "base PRNG seed")->capture_default_str();
}

// Exactly the flags of the chosen model, nothing else. A parameter named in
// `exempt` may be left unset (the sweep axis is filled from its range).
ModelParams build_model(const ModelOpts& o, std::string_view exempt = {}) {
  struct Flag {
    CLI::Option* opt;
    const char* name;
  };
  const std::vector<Flag> all = {{o.ok, "--k"},         {o.on, "--n"},
                                 {o.om, "--m"},         {o.oa, "--a"},
                                 {o.oe, "--e"},         {o.obig_a, "--A"},
                                 {o.obig_e, "--E"},     {o.oh, "--h"}};
  auto expect = [&](std::initializer_list<const char*> wanted) {
    for (const Flag& f : all) {
      const bool set = f.opt->count() > 0;
      bool want = false;
      for (const char* w : wanted) want |= (std::string_view(w) == f.name);
      if (want && !set && std::string_view(f.name).substr(2) != exempt) {
        throw CLI::ValidationError("--model", std::string("model ") + o.model + " requires " + f.name);
      }
      if (!want && set) {
        throw CLI::ValidationError("--model",
                                   std::string("model ") + o.model + " does not take " + f.name);
      }
    }
  };
  if (o.model == "kcnf") {
    expect({"--k", "--n", "--m"});
    return KcnfParams{o.k, o.n, o.m};
  }
  if (o.model == "ci") {
    expect({"--a", "--e", "--A", "--E", "--m"});
    return ChenInterianParams{o.a, o.e, o.big_a, o.big_e, o.m};
  }
  if (o.model == "ctd") {
    expect({"--k", "--A", "--E"});
    return ControlledParams{o.k, o.big_a, o.big_e};
  }
  if (o.model == "gctd") {
    expect({"--h", "--k", "--A", "--E"});
    return GenControlledParams{o.h, o.k, o.big_a, o.big_e};
  }
  if (o.model == "sgctd") {
    expect({"--h", "--k", "--E", "--m"});
    return SmoothGctdParams{o.h, o.k, o.big_e, o.m};
  }
  throw CLI::ValidationError("--model", "unknown model \"" + o.model + "\"");
}

GenSpec build_spec(const ModelOpts& o) {
  GenSpec spec{build_model(o), o.t, o.seed, 0};
  validate(spec);  // throws std::invalid_argument with the offending parameter
  return spec;
}

// ---------------------------------------------------------------------------
// gen

struct GenOpts {
  ModelOpts model;
  int count = 1;
  std::uint64_t start = 0;
  std::string out_dir;
  int jobs = 1;
};

int run_gen(const GenOpts& g) {
  const GenSpec base = build_spec(g.model);
  fs::create_directories(g.out_dir);

  std::vector<std::vector<std::string>> written(static_cast<std::size_t>(g.count));
  std::exception_ptr first_error;
  std::mutex error_mutex;
  std::atomic<int> next{0};

  auto worker = [&] {
    for (;;) {
      const int slot = next.fetch_add(1);
      if (slot >= g.count) return;
      try {
        GenSpec spec = base;
        spec.instance_index = g.start + static_cast<std::uint64_t>(slot);
        const Instance inst = gen_instance(spec);
        const std::string stem = model_name(spec.model) + "_" + file_tag(spec) + "_s" +
                                 std::to_string(spec.seed) + "_i" +
                                 std::to_string(spec.instance_index);
        const std::vector<std::string> provenance{describe(spec)};
        auto& out = written[static_cast<std::size_t>(slot)];
        if (const auto* mc = std::get_if<MultiCnf>(&inst)) {
          const fs::path path = fs::path(g.out_dir) / (stem + ".cnf");
          atomic_write(path, write_dimacs(apply_selector_encoding(*mc), provenance));
          out.push_back(path.string());
        } else {
          const CnfQbf& q = std::get<CnfQbf>(inst);
          const fs::path qpath = fs::path(g.out_dir) / (stem + ".qdimacs");
          atomic_write(qpath, write_qdimacs(apply_selector_encoding(q), provenance));
          out.push_back(qpath.string());
          const fs::path ppath = fs::path(g.out_dir) / (stem + ".lp");
          atomic_write(ppath, write_aspcore(qbf_to_program(q)));
          out.push_back(ppath.string());
        }
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
        return;
      }
    }
  };

  const int threads = std::max(1, std::min(g.jobs, g.count));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(threads));
    for (int i = 0; i < threads; ++i) pool.emplace_back(worker);
    for (std::thread& t : pool) t.join();
  }
  if (first_error) std::rethrow_exception(first_error);

  for (const auto& files : written) {
    for (const std::string& path : files) std::cout << path << "\n";
  }
  return 0;
}

// ---------------------------------------------------------------------------
// translate

int run_translate(const fs::path& input, const std::string& from_flag, const std::string& to_flag,
                  const std::string& output) {
  const WireFormat from = resolve_input_format(input, from_flag);
  const auto to = format_from_name(to_flag);
  if (!to) throw CLI::ValidationError("--to", "unknown format \"" + to_flag + "\"");

  const std::string text = read_file(input);
  std::string result;
  if (from == WireFormat::Dimacs && *to == WireFormat::Dimacs) {
    result = write_dimacs(parse_dimacs(text));
  } else if (from == WireFormat::Qdimacs && *to == WireFormat::Qdimacs) {
    result = write_qdimacs(parse_qdimacs(text));
  } else if (from == WireFormat::Qdimacs && *to == WireFormat::Aspcore) {
    result = write_aspcore(qbf_to_program(parse_qdimacs(text)));
  } else if (from == WireFormat::Aspcore && *to == WireFormat::Aspcore) {
    result = write_aspcore(parse_aspcore(text));
  } else {
    throw CLI::ValidationError("--to", std::string("no translation from ") + format_name(from) +
                                           " to " + format_name(*to) +
                                           " (supported: any format to itself, qdimacs to aspcore)");
  }

  if (output.empty() || output == "-") {
    std::cout << result;
  } else {
    atomic_write(output, result);
  }
  return 0;
}

// ---------------------------------------------------------------------------
// eval

struct EvalOpts {
  fs::path input;
  std::string format_flag;
  OracleLimits limits;
  long timeout_ms = 60000;
  bool times = false;
};

int run_eval(const EvalOpts& ev) {
  OracleLimits limits = ev.limits;
  limits.timeout = std::chrono::milliseconds(ev.timeout_ms);
  const WireFormat format = resolve_input_format(ev.input, ev.format_flag);
  const std::string text = read_file(ev.input);

  std::cout << "input: " << ev.input.string() << "\n";
  std::cout << "format: " << format_name(format) << "\n";

  const auto started = std::chrono::steady_clock::now();
  const char* verdict = nullptr;
  int rc = 0;
  std::string reason;
  try {
    switch (format) {
      case WireFormat::Dimacs: {
        const CnfFormula f = parse_dimacs(text);
        std::cout << "size: vars=" << f.vars().total() << " clauses=" << f.clauses().size() << "\n";
        const bool sat = sat_decide(f, limits);
        verdict = sat ? "SAT" : "UNSAT";
        rc = sat ? 10 : 20;
        break;
      }
      case WireFormat::Qdimacs: {
        const CnfQbf q = parse_qdimacs(text);
        std::cout << "size: A=" << q.universals() << " E=" << q.existentials()
                  << " clauses=" << q.matrix().components().front().clauses().size() << "\n";
        const bool truth = qbf_decide(q, limits);
        verdict = truth ? "TRUE" : "FALSE";
        rc = truth ? 10 : 20;
        break;
      }
      case WireFormat::Aspcore: {
        const DisjunctiveProgram p = parse_aspcore(text);
        std::cout << "size: atoms=" << p.atom_count() << " rules=" << p.rules().size() << "\n";
        const bool consistent = has_answer_set(p, limits);
        verdict = consistent ? "CONSISTENT" : "INCONSISTENT";
        rc = consistent ? 10 : 20;
        break;
      }
    }
  } catch (const resource_error& e) {
    verdict = "UNDECIDED";
    rc = 30;
    reason = e.what();
  }
  const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - started;

  std::cout << "verdict: " << verdict << "\n";
  if (!reason.empty()) std::cout << "reason: " << reason << "\n";
  if (ev.times) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.3f", elapsed.count());
    std::cout << "time_s: " << buf << "\n";
  }
  return rc;
}

// ---------------------------------------------------------------------------
// sweep

struct SweepOpts {
  ModelOpts model;
  std::string points;
  int samples = 100;
  int jobs = 1;
  std::string output;
  std::string backend = "oracle";
  std::string adapters_file;
  std::string wire = "auto";
  long solver_timeout_ms = 60000;
  OracleLimits limits;
  long oracle_timeout_ms = 60000;
};

// "--points m=40:120:4" -> axis plus inclusive integer range; step optional.
void parse_points(const std::string& text, std::string& axis, int& from, int& to, int& step) {
  const auto bad = [&](const std::string& why) {
    throw CLI::ValidationError("--points", "\"" + text + "\": " + why +
                                               " (expected axis=from:to[:step], e.g. m=40:120:4)");
  };
  const std::size_t eq = text.find('=');
  if (eq == std::string::npos || eq == 0) bad("missing axis name");
  axis = text.substr(0, eq);
  for (const char c : axis) {
    if (!std::isalpha(static_cast<unsigned char>(c))) bad("axis must be alphabetic");
  }
  std::vector<std::string> parts;
  std::size_t begin = eq + 1;
  for (;;) {
    const std::size_t colon = text.find(':', begin);
    parts.push_back(text.substr(begin, colon == std::string::npos ? colon : colon - begin));
    if (colon == std::string::npos) break;
    begin = colon + 1;
  }
  if (parts.size() < 2 || parts.size() > 3) bad("range needs 2 or 3 numbers");
  int values[3] = {0, 0, 1};
  for (std::size_t i = 0; i < parts.size(); ++i) {
    try {
      std::size_t used = 0;
      values[i] = std::stoi(parts[i], &used);
      if (used != parts[i].size()) throw std::invalid_argument("");
    } catch (const std::exception&) {
      bad("\"" + parts[i] + "\" is not an integer");
    }
  }
  from = values[0];
  to = values[1];
  step = values[2];
  if (step <= 0) bad("step must be positive");
  if (to < from) bad("empty range");
}

int run_sweep(const SweepOpts& so) {
  SweepConfig config;
  parse_points(so.points, config.axis, config.from, config.to, config.step);
  // The swept flag itself may be omitted; the range start stands in for it
  // (and also catches unknown axis names before any work happens).
  const GenSpec skeleton{build_model(so.model, config.axis), so.model.t, so.model.seed, 0};
  config.base = with_axis_value(skeleton, config.axis, config.from);
  validate(config.base);
  config.samples = so.samples;
  config.jobs = so.jobs;

  std::unique_ptr<DecisionBackend> backend;
  if (so.backend == "oracle") {
    OracleLimits limits = so.limits;
    limits.timeout = std::chrono::milliseconds(so.oracle_timeout_ms);
    backend = std::make_unique<OracleBackend>(limits);
  } else {
    if (so.adapters_file.empty()) {
      throw CLI::ValidationError("--backend", "external backend needs --adapters");
    }
    const std::vector<SolverAdapter> adapters = load_solver_adapters(read_file(so.adapters_file));
    const SolverAdapter* chosen = nullptr;
    for (const SolverAdapter& ad : adapters) {
      if (ad.name == so.backend) chosen = &ad;
    }
    if (!chosen) {
      throw CLI::ValidationError("--backend", "no adapter named \"" + so.backend + "\" in " +
                                                  so.adapters_file);
    }
    WireFormat wire;
    const bool plain = std::holds_alternative<KcnfParams>(config.base.model);
    if (so.wire == "auto") {
      wire = plain ? WireFormat::Dimacs : WireFormat::Qdimacs;
    } else if (auto f = format_from_name(so.wire)) {
      wire = *f;
      if (plain != (wire == WireFormat::Dimacs)) {
        throw CLI::ValidationError("--wire", std::string(format_name(wire)) +
                                                 " does not fit model " +
                                                 model_name(config.base.model));
      }
    } else {
      throw CLI::ValidationError("--wire", "unknown format \"" + so.wire + "\"");
    }
    backend = std::make_unique<SolverBackend>(*chosen, wire,
                                              std::chrono::milliseconds(so.solver_timeout_ms));
  }

  const SweepResult result = sweep(config, *backend);
  const std::string csv = to_csv(result);
  if (so.output.empty() || so.output == "-") {
    std::cout << csv;
  } else {
    atomic_write(so.output, csv);
  }
  return 0;
}

// ---------------------------------------------------------------------------
// bounds

int run_bounds(const std::string& model, int k) {
  char buf[64];
  const auto num = [&](double v) {
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return std::string(buf);
  };
  if (model == "kcnf") {
    const SatThresholdEntry* entry = known_sat_threshold(k);
    if (!entry) {
      std::cerr << "error: no recorded satisfiability threshold bounds for k = " << k << "\n";
      return 1;
    }
    std::cout << "model: kcnf k=" << k << "\n";
    std::cout << "ratio: m/n\n";
    std::cout << "lower: " << num(entry->lower) << "\n";
    std::cout << "upper: " << num(entry->upper) << "\n";
    std::cout << "observed: " << num(entry->observed) << "\n";
    std::cout << "source: " << entry->source << "\n";
    return 0;
  }
  if (model == "ctd") {
    const RatioBounds b = controlled_crossing_bounds(k);  // throws for unknown k
    std::cout << "model: ctd k=" << k << "\n";
    std::cout << "ratio: A/E\n";
    std::cout << "lower: " << num(b.lower) << "\n";
    std::cout << "upper: " << num(b.upper) << "\n";
    std::cout << "note: " << b.note << "\n";
    return 0;
  }
  throw CLI::ValidationError("--model", "bounds are recorded for kcnf and ctd only");
}

}  // namespace

// ---------------------------------------------------------------------------

int main(int argc, char** argv) {
  CLI::App app{"random formula generator suite: k-CNF, 2QBF, and disjunctive programs"};
  app.set_help_flag("--help", "print this help and exit");  // long flags only: frees -h/--h
  app.set_version_flag("--version", "qgen 1.0.0");
  app.require_subcommand(1);
  // Flags may come from an INI file with one section per subcommand, e.g.
  //   [sweep]
  //   model=kcnf
  // The flag must precede the subcommand name: qgen --config run.ini sweep
  app.set_config("--config", "", "read flags from an INI file (sections name subcommands)");
  // Subcommands inherit the long-only help flag.
  auto add_subcommand = [&app](const std::string& name, const std::string& help) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->set_help_flag("--help", "print this help and exit");
    return sub;
  };

  // gen
  GenOpts gen_opts;
  const char* env_dir = std::getenv("QGEN_OUT_DIR");
  gen_opts.out_dir = env_dir ? env_dir : ".";
  CLI::App* gen = add_subcommand("gen", "generate instances and write them as files");
  add_model_flags(gen, gen_opts.model);
  gen->add_option("--count", gen_opts.count, "instances to generate")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  gen->add_option("--start", gen_opts.start, "first instance index")->capture_default_str();
  gen->add_option("--out-dir", gen_opts.out_dir, "output directory (default: $QGEN_OUT_DIR or .)")
      ->capture_default_str();
  gen->add_option("--jobs", gen_opts.jobs, "worker threads")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();

  // translate
  std::string tr_input, tr_from, tr_to, tr_output;
  CLI::App* translate = add_subcommand("translate", "re-serialize or translate one file");
  translate->add_option("--input", tr_input, "input file")->required()->check(CLI::ExistingFile);
  translate->add_option("--from", tr_from, "input format (default: by extension)");
  translate->add_option("--to", tr_to, "output format: dimacs | qdimacs | aspcore")->required();
  translate->add_option("--output", tr_output, "output file (default: standard output)");

  // eval
  EvalOpts eval_opts;
  CLI::App* eval = add_subcommand("eval", "decide one file with the built-in oracles");
  eval->add_option("--input", eval_opts.input, "input file")->required()->check(CLI::ExistingFile);
  eval->add_option("--format", eval_opts.format_flag, "input format (default: by extension)");
  eval->add_option("--max-universals", eval_opts.limits.max_universals, "oracle budget")
      ->capture_default_str();
  eval->add_option("--max-existentials", eval_opts.limits.max_existentials, "oracle budget")
      ->capture_default_str();
  eval->add_option("--max-program-atoms", eval_opts.limits.max_program_atoms, "oracle budget")
      ->capture_default_str();
  eval->add_option("--timeout-ms", eval_opts.timeout_ms, "oracle wall-clock budget")
      ->capture_default_str();
  eval->add_flag("--times", eval_opts.times, "also print wall time (output no longer byte-stable)");

  // sweep
  SweepOpts sweep_opts;
  CLI::App* sweep_cmd = add_subcommand("sweep", "frequency sweep along one parameter axis");
  add_model_flags(sweep_cmd, sweep_opts.model);
  sweep_cmd->add_option("--points", sweep_opts.points, "axis and range, e.g. m=40:120:4")
      ->required();
  sweep_cmd->add_option("--samples", sweep_opts.samples, "samples per point")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  sweep_cmd->add_option("--jobs", sweep_opts.jobs, "worker threads")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  sweep_cmd->add_option("--output", sweep_opts.output, "CSV file (default: standard output)");
  sweep_cmd->add_option("--backend", sweep_opts.backend,
                        "\"oracle\" or an adapter name from --adapters")
      ->capture_default_str();
  sweep_cmd->add_option("--adapters", sweep_opts.adapters_file, "solver adapter table file");
  sweep_cmd->add_option("--wire", sweep_opts.wire,
                        "format handed to an external solver: auto | dimacs | qdimacs | aspcore")
      ->capture_default_str();
  sweep_cmd->add_option("--solver-timeout-ms", sweep_opts.solver_timeout_ms,
                        "per-call external solver budget")
      ->capture_default_str();
  sweep_cmd->add_option("--max-universals", sweep_opts.limits.max_universals, "oracle budget")
      ->capture_default_str();
  sweep_cmd->add_option("--max-existentials", sweep_opts.limits.max_existentials, "oracle budget")
      ->capture_default_str();
  sweep_cmd->add_option("--timeout-ms", sweep_opts.oracle_timeout_ms, "oracle wall-clock budget")
      ->capture_default_str();

  // bounds
  std::string bounds_model;
  int bounds_k = 0;
  CLI::App* bounds = add_subcommand("bounds", "recorded transition-location bounds");
  bounds->add_option("--model", bounds_model, "kcnf | ctd")->required();
  bounds->add_option("--k", bounds_k, "clause width")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (app.got_subcommand(gen)) return run_gen(gen_opts);
    if (app.got_subcommand(translate)) return run_translate(tr_input, tr_from, tr_to, tr_output);
    if (app.got_subcommand(eval)) return run_eval(eval_opts);
    if (app.got_subcommand(sweep_cmd)) return run_sweep(sweep_opts);
    if (app.got_subcommand(bounds)) return run_bounds(bounds_model, bounds_k);
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
