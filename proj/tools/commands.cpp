#include "commands.hpp"

#include <charconv>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <random>
#include <sstream>

#include <omp.h>

#include "labs/cd.hpp"
#include "labs/circuit.hpp"
#include "labs/core.hpp"
#include "labs/errors.hpp"
#include "labs/hamiltonian.hpp"
#include "labs/known_optima.hpp"
#include "labs/landscape.hpp"
#include "labs/orchestrate.hpp"
#include "labs/records.hpp"
#include "labs/stats.hpp"

namespace labsolve::cli {

using nlohmann::json;

namespace {

// Shortest round-trip text for a double.
std::string num(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

const char* axis_letter(PauliAxis a) {
  switch (a) {
    case PauliAxis::X: return "X";
    case PauliAxis::Y: return "Y";
    case PauliAxis::Z: return "Z";
  }
  return "?";
}

struct Context {
  std::ostream& out;
  std::ostream& err;
  std::string command;
  OptionSet* options;
};

json artifact_header(const Context& ctx) {
  return {{"tool", "labs"},
          {"tool_version", kToolVersion},
          {"command", ctx.command},
          {"config", ctx.options->resolved()},
          {"execution", ctx.options->execution()}};
}

void write_csv_preamble(std::ostream& os, const Context& ctx) {
  os << "# tool=labs tool_version=" << kToolVersion << " command=" << ctx.command << '\n';
  os << "# config=" << ctx.options->resolved().dump() << '\n';
  os << "# execution=" << ctx.options->execution().dump() << '\n';
}

// Writes to --out when given, else to the context stream.
class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback, bool append = false) {
    if (path.empty()) {
      os_ = &fallback;
      return;
    }
    const auto parent = std::filesystem::path(path).parent_path();
    if (!parent.empty()) std::filesystem::create_directories(parent);
    file_ = std::make_unique<std::ofstream>(path, append ? std::ios::app : std::ios::trunc);
    if (!*file_) throw std::runtime_error("cannot write " + path);
    os_ = file_.get();
  }
  std::ostream& operator*() { return *os_; }

 private:
  std::unique_ptr<std::ofstream> file_;
  std::ostream* os_ = nullptr;
};

std::size_t need_n(const OptionSet& o, std::size_t n, std::size_t min = 2) {
  if (!o.given("n")) throw UsageError("--n is required");
  if (n < min) throw UsageError("--n must be at least " + std::to_string(min));
  return n;
}

std::uint64_t resolve_seed(std::string& seed, Context& ctx) {
  if (seed.empty()) {
    std::random_device rd;
    const std::uint64_t v = (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
    seed = std::to_string(v);
    ctx.err << "labs: no --seed given; using generated seed " << seed << '\n';
    return v;
  }
  return parse_inclusive_range(seed).first;
}

void set_jobs(std::size_t jobs) {
  if (jobs > 0) omp_set_num_threads(static_cast<int>(jobs));
}

// Shot files are dcqo-sample output: a header record opens each shot set.
std::vector<ShotSet> read_shot_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open shot file " + path);
  std::vector<ShotSet> sets;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    json j;
    try {
      j = json::parse(line);
    } catch (const json::exception& e) {
      throw InvalidInput(path + ":" + std::to_string(line_no) + ": " + e.what());
    }
    if (j.value("type", "") == "header") {
      ShotSet s;
      s.n = j.value("n", std::size_t{0});
      s.rng_seed = j.value("rng_seed", std::uint64_t{0});
      sets.push_back(std::move(s));
      continue;
    }
    if (sets.empty()) sets.emplace_back();
    Shot shot{j.at("bits").get<std::string>(), j.at("energy").get<std::int64_t>()};
    const auto seq = SpinSequence::parse(shot.bits);
    if (energy(seq) != shot.energy) {
      throw InvalidInput(path + ":" + std::to_string(line_no) + ": energy does not match bits");
    }
    auto& set = sets.back();
    if (set.n == 0) set.n = seq.size();
    if (set.n != seq.size()) throw InvalidInput(path + ":" + std::to_string(line_no) + ": length mismatch");
    set.shots.push_back(std::move(shot));
  }
  std::erase_if(sets, [](const ShotSet& s) { return s.shots.empty(); });
  return sets;
}

// ---------------------------------------------------------------- commands

struct EnergyCmd {
  std::string seq;
  void setup(OptionSet& o) { o.add("seq", seq, "Sequence as +/- signs or a 0/1 bitstring"); }
  void run(Context& ctx) {
    if (seq.empty()) throw UsageError("--seq is required");
    ctx.out << energy(SpinSequence::parse(seq)) << '\n';
  }
};

struct BruteCmd {
  std::size_t n = 0, cap = kBruteForceCap, jobs = 0;
  void setup(OptionSet& o) {
    o.add("n", n, "Sequence length");
    o.add("cap", cap, "Largest N allowed for exhaustive search");
    o.add("jobs", jobs, "Worker threads (0 = all cores)", OptionSet::Scope::execution);
  }
  void run(Context& ctx) {
    need_n(*ctx.options, n);
    set_jobs(jobs);
    const auto r = brute_force_optimum(n, cap);
    json j = artifact_header(ctx);
    j["n"] = r.n;
    j["optimal_energy"] = r.optimal_energy;
    j["optimum_count"] = r.optimum_count;
    j["one_optimum"] = r.one_optimum.to_signs();
    j["states_visited"] = r.states_visited;
    ctx.out << j.dump() << '\n';
  }
};

struct HamiltonianCmd {
  std::size_t n = 0;
  std::string out;
  void setup(OptionSet& o) {
    o.add("n", n, "Sequence length");
    o.add("out", out, "Output file (default stdout)", OptionSet::Scope::execution);
  }
  void run(Context& ctx) {
    need_n(*ctx.options, n);
    const auto h = build_hamiltonian(n);
    json terms = json::array();
    for (const auto& [word, c] : h.op.terms()) {
      json w = json::array();
      for (const auto& [q, a] : word.letters()) w.push_back({q, axis_letter(a)});
      terms.push_back({{"coeff", c.real()}, {"word", std::move(w)}});
    }
    const auto counts = term_counts(n);
    json j = artifact_header(ctx);
    j["n"] = n;
    j["offset"] = h.offset;
    j["n_two"] = counts.n_two;
    j["n_four"] = counts.n_four;
    j["terms"] = std::move(terms);
    Sink sink(out, ctx.out);
    *sink << j.dump() << '\n';
  }
};

struct CdCmd {
  std::size_t n = 0, steps = 10;
  double hx = -1.0;
  std::string out;
  void setup(OptionSet& o) {
    o.add("n", n, "Sequence length");
    o.add("lambda-steps", steps, "Grid intervals on [0, 1]");
    o.add("hx", hx, "Uniform transverse field");
    o.add("out", out, "Output CSV (default stdout)", OptionSet::Scope::execution);
  }
  void run(Context& ctx) {
    need_n(*ctx.options, n, 3);
    if (steps < 1) throw UsageError("--lambda-steps must be at least 1");
    const Gamma2Structure structure(n);
    const auto fields = FieldConfig::uniform(n, hx);
    Sink sink(out, ctx.out);
    write_csv_preamble(*sink, ctx);
    *sink << "lambda,gamma1,gamma2,alpha1\n";
    for (std::size_t k = 0; k <= steps; ++k) {
      const double lambda = static_cast<double>(k) / static_cast<double>(steps);
      const auto c = alpha1(structure, fields, lambda);
      *sink << num(lambda) << ',' << num(c.gamma1) << ',' << num(c.gamma2) << ',' << num(c.alpha1) << '\n';
    }
  }
};

struct GatesCmd {
  std::size_t n = 0;
  std::string method = "dcqo";
  std::uint64_t layers = 1;
  void setup(OptionSet& o) {
    o.add("n", n, "Sequence length");
    o.add("method", method, "dcqo or qaoa");
    o.add("layers", layers, "Trotter steps (dcqo) or layers (qaoa)");
  }
  void run(Context& ctx) {
    need_n(*ctx.options, n);
    ResourceCount::Method m;
    if (method == "dcqo") {
      m = ResourceCount::Method::dcqo;
    } else if (method == "qaoa") {
      m = ResourceCount::Method::qaoa;
    } else {
      throw UsageError("--method must be dcqo or qaoa");
    }
    const auto r = resource_count(n, m, layers);
    const auto counts = term_counts(n);
    json j = artifact_header(ctx);
    j["n"] = n;
    j["method"] = method;
    j["layers"] = layers;
    j["n_two"] = counts.n_two;
    j["n_four"] = counts.n_four;
    j["entangling"] = r.entangling;
    j["single_qubit"] = r.single_qubit;
    ctx.out << j.dump() << '\n';
  }
};

struct SampleCmd {
  std::size_t n = 0, shots = 1000, trotter = 100, runs = 1, jobs = 0;
  double total_time = 1.0;
  std::string schedule = "sin_squared", seed, out;
  void setup(OptionSet& o) {
    o.add("n", n, "Sequence length");
    o.add("shots", shots, "Shots per run");
    o.add("trotter", trotter, "Trotter steps n_trot");
    o.add("total-time", total_time, "Evolution time T");
    o.add("schedule", schedule, "Annealing schedule (sin_squared)");
    o.add("runs", runs, "Independent shot sets, each with its own header");
    o.add("seed", seed, "Master seed (generated and printed when absent)");
    o.add("out", out, "Output JSONL (default stdout)", OptionSet::Scope::execution);
    o.add("jobs", jobs, "Worker threads (0 = all cores)", OptionSet::Scope::execution);
  }
  void run(Context& ctx) {
    need_n(*ctx.options, n, 3);
    if (shots < 1 || trotter < 1 || runs < 1) throw UsageError("--shots, --trotter and --runs must be positive");
    if (n > StateVector::kMaxQubits) throw UsageError("--n exceeds the statevector limit");
    const std::uint64_t master = resolve_seed(seed, ctx);
    set_jobs(jobs);
    const auto plan = build_circuit(n, Schedule::parse(schedule, total_time), trotter, FieldConfig::uniform(n));
    const auto state = simulate(plan);
    const double mean = mean_energy(state);
    Sink sink(out, ctx.out);
    for (std::size_t r = 0; r < runs; ++r) {
      const std::uint64_t run_seed = runs == 1 ? master : derive_seed(master, {r});
      const auto set = sample(state, shots, run_seed);
      json header = artifact_header(ctx);
      header["type"] = "header";
      header["n"] = n;
      header["run"] = r;
      header["rng_seed"] = run_seed;
      header["exact_mean_energy"] = mean;
      header["uniform_mean_energy"] = uniform_mean_energy(n);
      *sink << header.dump() << '\n';
      for (const auto& s : set.shots) *sink << json{{"bits", s.bits}, {"energy", s.energy}}.dump() << '\n';
    }
  }
};

struct SolveCmd {
  std::string n_text, method = "mts", target, seeds = "0:0", replicates = "0:0", shots_file, seed, out;
  std::string schedule = "sin_squared", p_mut;
  bool target_auto = false;
  std::size_t k = 100, jobs = 0, shots = 1000, trotter = 100, multirun_runs = 0, max_new_runs = 0;
  std::uint64_t gmax = 1'000'000, max_evals = 0;
  double p_comb = 0.9, total_time = 1.0;

  void setup(OptionSet& o) {
    o.add("n", n_text, "Sequence length(s): 12, 12,14 or 12:20[:step]");
    o.add("method", method, "mts, qemts or qemts-multirun (comma list allowed)");
    o.add("target", target, "Target energy; overrides the table");
    o.flag("target-auto", target_auto, "Allow brute force when N is not in the table");
    o.add("k", k, "Population size K");
    o.add("p-comb", p_comb, "Crossover probability");
    o.add("p-mut", p_mut, "Mutation probability (default 1/N)");
    o.add("gmax", gmax, "Generation limit G_max");
    o.add("max-evals", max_evals, "Evaluation limit per run (0 = none)");
    o.add("seeds", seeds, "Seed indices a:b (inclusive)");
    o.add("replicates", replicates, "Replicate indices a:b (inclusive)");
    o.add("shots-file", shots_file, "dcqo-sample JSONL file(s), comma separated", OptionSet::Scope::execution);
    o.add("shots", shots, "Shots per DCQO run when sampling internally");
    o.add("trotter", trotter, "Trotter steps when sampling internally");
    o.add("total-time", total_time, "Evolution time T when sampling internally");
    o.add("schedule", schedule, "Annealing schedule when sampling internally");
    o.add("multirun-runs", multirun_runs, "DCQO runs per replicate for qemts-multirun (0 = K)");
    o.add("seed", seed, "Master seed (generated and printed when absent)");
    o.add("out", out, "JSONL file; existing runs are kept and skipped", OptionSet::Scope::execution);
    o.add("jobs", jobs, "Parallel runs (0 = all cores)", OptionSet::Scope::execution);
    o.add("max-new-runs", max_new_runs, "Stop after this many new runs (0 = all)", OptionSet::Scope::execution);
  }

  void run(Context& ctx) {
    if (!ctx.options->given("n")) throw UsageError("--n is required");
    OrchestrateConfig cfg;
    cfg.n_values = parse_size_list(n_text);
    for (auto v : cfg.n_values) {
      if (v < 3) throw UsageError("--n must be at least 3");
    }
    cfg.methods.clear();
    for (const auto& m : split(method, ',')) cfg.methods.push_back(parse_method(m));
    const auto [s0, s1] = parse_inclusive_range(seeds);
    const auto [r0, r1] = parse_inclusive_range(replicates);
    cfg.seeds = {s0, s1 + 1};
    cfg.replicates = {r0, r1 + 1};
    cfg.params.population_size = k;
    cfg.params.p_comb = p_comb;
    if (!p_mut.empty()) cfg.params.p_mut = parse_double_list(p_mut).at(0);
    cfg.params.max_generations = gmax;
    cfg.params.max_evaluations = max_evals;
    try {
      cfg.params.validate();
    } catch (const InvalidInput& e) {
      throw UsageError(e.what());
    }
    cfg.master_seed = resolve_seed(seed, ctx);
    cfg.jobs = jobs;
    cfg.max_new_runs = max_new_runs;
    cfg.sampler.shots = shots;
    cfg.sampler.n_trot = trotter;
    cfg.sampler.schedule = Schedule::parse(schedule, total_time);
    cfg.sampler.multirun_runs = multirun_runs;

    std::optional<std::int64_t> explicit_target;
    if (!target.empty()) {
      try {
        explicit_target = std::stoll(target);
      } catch (const std::exception&) {
        throw UsageError("--target must be an integer");
      }
    }
    json sources = json::object();
    std::map<std::size_t, std::int64_t> targets;
    for (auto n : cfg.n_values) {
      ResolvedTarget t;
      try {
        t = resolve_target(n, explicit_target, target_auto);
      } catch (const InvalidInput& e) {
        throw UsageError(e.what());
      }
      if (t.warning) ctx.err << "labs: warning: N=" << n << " target " << t.energy << ": " << *t.warning << '\n';
      targets[n] = t.energy;
      json src{{"energy", t.energy}, {"source", t.source}};
      if (t.warning) src["warning"] = *t.warning;
      sources[std::to_string(n)] = std::move(src);
    }
    cfg.target_for = [targets](std::size_t n) { return targets.at(n); };

    if (!shots_file.empty()) {
      for (const auto& path : split(shots_file, ',')) {
        for (auto& set : read_shot_file(path)) cfg.shot_sets[set.n].push_back(std::move(set));
      }
    }
    if (!out.empty()) {
      cfg.output = out;
      const auto parent = std::filesystem::path(out).parent_path();
      if (!parent.empty()) std::filesystem::create_directories(parent);
    }
    cfg.metadata = {{"tool_version", kToolVersion},
                    {"command", "solve"},
                    {"config", ctx.options->resolved()},
                    {"execution", ctx.options->execution()},
                    {"targets", sources}};

    const std::size_t before = cfg.output && std::filesystem::exists(*cfg.output)
                                   ? read_run_records(*cfg.output).size()
                                   : 0;
    const TTSDataset data = orchestrate(cfg);
    if (cfg.output) {
      ctx.err << "labs: " << data.records().size() - before << " new runs, " << data.records().size()
              << " total in " << out << '\n';
    } else {
      for (const auto& r : data.records()) ctx.out << to_json(r).dump() << '\n';
    }
  }
};

struct LandscapeCmd {
  std::string n_range = "10:16:2", model = "both", seed, out;
  std::size_t instances = 10, jobs = 0;
  void setup(OptionSet& o) {
    o.add("n-range", n_range, "Lengths a:b[:step] (inclusive) or a,b,c");
    o.add("model", model, "labs, sk or both");
    o.add("instances", instances, "SK instances per N");
    o.add("seed", seed, "Master seed for SK couplings (generated and printed when absent)");
    o.add("out", out, "Output CSV (default stdout)", OptionSet::Scope::execution);
    o.add("jobs", jobs, "Worker threads (0 = all cores)", OptionSet::Scope::execution);
  }
  void run(Context& ctx) {
    const auto ns = parse_size_list(n_range);
    if (model != "labs" && model != "sk" && model != "both") throw UsageError("--model must be labs, sk or both");
    for (auto n : ns) {
      if (n < 2 || n > kLandscapeCap) throw UsageError("landscape N must lie in [2, " + std::to_string(kLandscapeCap) + "]");
    }
    const std::uint64_t master = resolve_seed(seed, ctx);
    set_jobs(jobs);
    const auto rows = landscape_report(ns, model == "labs" ? 0 : instances, master);
    Sink sink(out, ctx.out);
    write_csv_preamble(*sink, ctx);
    *sink << "n,model,instance,f_lo,minima_count\n";
    for (const auto& r : rows) {
      if (model == "sk" && r.model == LandscapeModel::labs) continue;
      *sink << r.n << ',' << to_string(r.model) << ',';
      if (r.instance_index) *sink << *r.instance_index;
      *sink << ',' << num(r.f_lo) << ',' << r.minima_count << '\n';
    }
  }
};

struct AnalyzeCmd {
  std::string in, quantiles = "0.10,0.50,0.90", fit_range, crossover_quantiles = "0.95,0.05";
  std::string crossover_methods = "qemts,mts", gap_methods = "qemts,mts", seed, out, csv_dir;
  std::size_t bootstrap = 5000, jobs = 0;
  double max_censored = 0.5;

  void setup(OptionSet& o) {
    o.add("in", in, "Run JSONL file(s), comma separated", OptionSet::Scope::execution);
    o.add("quantiles", quantiles, "Quantile levels for the fits");
    o.add("bootstrap", bootstrap, "Bootstrap draws B");
    o.add("fit-range", fit_range, "Fit only N in a:b (inclusive)");
    o.add("crossover-quantiles", crossover_quantiles, "Upper quantile of the first method, lower of the second");
    o.add("crossover-methods", crossover_methods, "Method pair for the crossover");
    o.add("gap-methods", gap_methods, "Method pair for the log-ratio gap");
    o.add("max-censored", max_censored, "Drop replicates with a larger censored fraction");
    o.add("seed", seed, "Bootstrap seed (generated and printed when absent)");
    o.add("out", out, "Report JSON (default stdout)", OptionSet::Scope::execution);
    o.add("csv-dir", csv_dir, "Directory for plot CSVs", OptionSet::Scope::execution);
    o.add("jobs", jobs, "Worker threads (0 = all cores)", OptionSet::Scope::execution);
  }

  static std::pair<Method, Method> method_pair(const std::string& text, const char* flag) {
    const auto parts = split(text, ',');
    if (parts.size() != 2) throw UsageError(std::string(flag) + " expects two methods");
    return {parse_method(parts[0]), parse_method(parts[1])};
  }

  void run(Context& ctx) {
    if (in.empty()) throw UsageError("--in is required");
    const std::uint64_t master = resolve_seed(seed, ctx);
    set_jobs(jobs);
    TTSDataset data;
    for (const auto& path : split(in, ',')) {
      for (auto& r : read_run_records(path)) data.add(std::move(r));
    }
    const GroupedTTS grouped = group_replicates(data, CensoringPolicy{max_censored});

    BootstrapConfig bc;
    bc.draws = bootstrap;
    bc.quantiles = parse_double_list(quantiles);
    bc.seed = derive_seed(master, {1});
    if (!fit_range.empty()) bc.fit_range = parse_inclusive_range(fit_range);
    const auto cq = parse_double_list(crossover_quantiles);
    if (cq.size() != 2) throw UsageError("--crossover-quantiles expects two values");
    bc.crossover_upper_p = cq[0];
    bc.crossover_lower_p = cq[1];
    std::tie(bc.crossover_upper_method, bc.crossover_lower_method) =
        method_pair(crossover_methods, "--crossover-methods");
    const auto result = two_stage_bootstrap(grouped, bc);

    json report = artifact_header(ctx);
    report["schema_version"] = std::stoi(std::string(kToolVersion).substr(0, std::string(kToolVersion).find('.')));
    report["quantile_definition"] = "linear interpolation, h = (n-1)p";
    report["fit_model"] = "ln Q_p = alpha + beta N, kappa = exp(beta)";
    report["ci_level"] = 0.95;
    report["bootstrap_draws"] = result.draws;
    json skipped = json::array();
    for (auto m : result.skipped_methods) {
      skipped.push_back(to_string(m));
      ctx.err << "labs: warning: " << to_string(m) << " has fewer than two distinct N; no fit\n";
    }
    report["skipped_methods"] = skipped;
    json excluded = json::array();
    for (const auto& [cell, rep] : grouped.excluded_replicates) {
      excluded.push_back({{"n", cell.first}, {"method", to_string(cell.second)}, {"replicate", rep}});
    }
    report["censoring"] = {{"censored_seeds", grouped.censored_seeds},
                           {"max_censored_fraction", max_censored},
                           {"excluded_replicates", excluded}};

    json table = json::array();
    for (const auto& s : result.series) {
      json pts = json::array();
      for (const auto& [n, q] : s.point_quantiles) pts.push_back({{"n", n}, {"q", q}});
      table.push_back({{"method", to_string(s.method)},
                       {"quantile", s.p},
                       {"kappa", s.point.kappa},
                       {"kappa_median", s.kappa_median},
                       {"kappa_ci", {s.kappa_ci.lower, s.kappa_ci.upper}},
                       {"r_squared", s.point.r_squared},
                       {"r_squared_ci", {s.r_squared_ci.lower, s.r_squared_ci.upper}},
                       {"alpha", s.point.alpha},
                       {"beta", s.point.beta},
                       {"degenerate", s.point.degenerate},
                       {"n_points", s.point.n_points},
                       {"points", pts}});
    }
    report["table"] = table;

    if (result.crossover) {
      const auto& c = *result.crossover;
      report["crossover"] = {
          {"upper", {{"method", to_string(bc.crossover_upper_method)}, {"quantile", bc.crossover_upper_p}}},
          {"lower", {{"method", to_string(bc.crossover_lower_method)}, {"quantile", bc.crossover_lower_p}}},
          {"median", c.median},
          {"ci", {c.ci.lower, c.ci.upper}},
          {"defined_draws", c.draws.size()},
          {"undefined_draws", c.undefined_draws}};
    } else {
      report["crossover"] = nullptr;
    }

    const auto [ga, gb] = method_pair(gap_methods, "--gap-methods");
    std::vector<GapDistribution> gaps;
    try {
      gaps = log_ratio_gap(grouped, ga, gb, bootstrap, derive_seed(master, {2}));
    } catch (const InsufficientData&) {
    }
    if (gaps.empty()) {
      report["gap"] = nullptr;
    } else {
      json g = json::array();
      for (const auto& d : gaps) {
        g.push_back({{"n", d.n}, {"point", d.point}, {"median", d.median}, {"ci", {d.ci.lower, d.ci.upper}}});
      }
      report["gap"] = {{"a", to_string(ga)}, {"b", to_string(gb)}, {"per_n", g}};
    }

    {
      Sink sink(out, ctx.out);
      *sink << report.dump(2) << '\n';
    }
    if (!csv_dir.empty()) write_csvs(ctx, data, grouped, result, gaps);
  }

  void write_csvs(Context& ctx, const TTSDataset& data, const GroupedTTS& grouped,
                  const BootstrapResult& result, const std::vector<GapDistribution>& gaps) {
    std::filesystem::create_directories(csv_dir);
    auto open = [&](const char* name) {
      auto f = std::make_unique<std::ofstream>(std::filesystem::path(csv_dir) / name);
      if (!*f) throw std::runtime_error(std::string("cannot write ") + name);
      write_csv_preamble(*f, ctx);
      return f;
    };
    {
      auto f = open("scatter.csv");
      *f << "n,method,replicate,median_tts\n";
      for (const auto& [key, m] : replicate_medians(grouped)) {
        *f << std::get<0>(key) << ',' << to_string(std::get<1>(key)) << ',' << std::get<2>(key) << ',' << num(m) << '\n';
      }
    }
    {
      auto f = open("quantiles.csv");
      *f << "n,method,p,value\n";
      for (const auto& s : result.series) {
        for (const auto& [n, q] : s.point_quantiles) {
          *f << n << ',' << to_string(s.method) << ',' << num(s.p) << ',' << num(q) << '\n';
        }
      }
    }
    {
      auto f = open("fits.csv");
      *f << "method,p,alpha,beta,kappa,kappa_median,kappa_ci_lower,kappa_ci_upper,r_squared,r_squared_ci_lower,r_squared_ci_upper,n_min,n_max\n";
      auto g = open("fit_lines.csv");
      *g << "method,p,n,fit_value\n";
      for (const auto& s : result.series) {
        const double n_min = s.point_quantiles.front().first, n_max = s.point_quantiles.back().first;
        *f << to_string(s.method) << ',' << num(s.p) << ',' << num(s.point.alpha) << ',' << num(s.point.beta)
           << ',' << num(s.point.kappa) << ',' << num(s.kappa_median) << ',' << num(s.kappa_ci.lower) << ','
           << num(s.kappa_ci.upper) << ',' << num(s.point.r_squared) << ',' << num(s.r_squared_ci.lower) << ','
           << num(s.r_squared_ci.upper) << ',' << num(n_min) << ',' << num(n_max) << '\n';
        for (double n = n_min; n <= n_max + 1e-9; n += 0.5) {
          *g << to_string(s.method) << ',' << num(s.p) << ',' << num(n) << ','
             << num(std::exp(s.point.alpha + s.point.beta * n)) << '\n';
        }
      }
    }
    if (!gaps.empty()) {
      auto f = open("gap.csv");
      *f << "n,point,median,ci_lower,ci_upper\n";
      auto g = open("gap_draws.csv");
      *g << "n,draw,gap\n";
      for (const auto& d : gaps) {
        *f << d.n << ',' << num(d.point) << ',' << num(d.median) << ',' << num(d.ci.lower) << ',' << num(d.ci.upper) << '\n';
        for (std::size_t i = 0; i < d.draws.size(); ++i) *g << d.n << ',' << i << ',' << num(d.draws[i]) << '\n';
      }
    }
    {
      // Wall-clock times go to their own file so runs.csv is reproducible.
      auto f = open("runs.csv");
      *f << "n,method,replicate,seed,found_optimum,evals_to_solution,best_energy,generations,evaluations\n";
      auto t = open("timing.csv");
      *t << "n,method,replicate,seed,wall_clock_classical,wall_clock_quantum\n";
      std::vector<RunRecord> sorted = data.records();
      std::sort(sorted.begin(), sorted.end(), [](const auto& a, const auto& b) { return a.key() < b.key(); });
      for (const auto& r : sorted) {
        *f << r.n << ',' << to_string(r.method) << ',' << r.replicate_id << ',' << r.seed << ','
           << (r.found_optimum ? "true" : "false") << ',';
        if (r.evals_to_solution) *f << *r.evals_to_solution;
        *f << ',' << r.best_energy << ',' << r.generations << ',' << r.evaluations << '\n';
        *t << r.n << ',' << to_string(r.method) << ',' << r.replicate_id << ',' << r.seed << ','
           << num(r.wall_clock_classical) << ',' << num(r.wall_clock_quantum) << '\n';
      }
    }
  }
};

// Binds a command struct to a CLI11 subcommand.
struct Command {
  std::string name;
  CLI::App* app = nullptr;
  std::unique_ptr<OptionSet> options;
  std::function<void(Context&)> run;
};

template <class Cmd>
Command make_command(CLI::App& root, const std::string& name, const std::string& help,
                     std::shared_ptr<Cmd> cmd) {
  Command c;
  c.name = name;
  c.app = root.add_subcommand(name, help);
  c.options = std::make_unique<OptionSet>(c.app);
  cmd->setup(*c.options);
  c.run = [cmd](Context& ctx) { cmd->run(ctx); };
  return c;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
            const EnvLookup& env) {
  CLI::App app{"LABS solver and benchmark suite", "labs"};
  app.set_version_flag("--version", std::string("labs ") + kToolVersion);
  app.require_subcommand(1);
  app.fallthrough();
  app.footer(std::string("Option precedence: command line > --config JSON file > environment > default.\n"
                         "Environment overrides use the prefix ") +
             kEnvPrefix + " with the option name upper-cased and dashes as underscores, e.g. LABS_SEED, "
             "LABS_P_COMB. LABS_CONFIG names a config file. Ranges a:b are inclusive.");
  std::string config_path;
  app.add_option("--config", config_path, "Flat JSON object of option names to values");

  std::vector<Command> commands;
  commands.push_back(make_command(app, "energy", "LABS energy of one sequence", std::make_shared<EnergyCmd>()));
  commands.push_back(make_command(app, "brute", "Exhaustive optimum for small N", std::make_shared<BruteCmd>()));
  commands.push_back(make_command(app, "hamiltonian", "Pauli terms of the problem Hamiltonian", std::make_shared<HamiltonianCmd>()));
  commands.push_back(make_command(app, "cd", "Counterdiabatic coefficient table", std::make_shared<CdCmd>()));
  commands.push_back(make_command(app, "gates", "Entangling and single-qubit gate counts", std::make_shared<GatesCmd>()));
  commands.push_back(make_command(app, "dcqo-sample", "Simulate DCQO and sample bitstrings", std::make_shared<SampleCmd>()));
  commands.push_back(make_command(app, "solve", "Run MTS / QE-MTS over a seed grid", std::make_shared<SolveCmd>()));
  commands.push_back(make_command(app, "landscape", "Local-minima density for LABS and SK", std::make_shared<LandscapeCmd>()));
  commands.push_back(make_command(app, "analyze", "Scaling fits, bootstrap CIs, crossover", std::make_shared<AnalyzeCmd>()));

  std::vector<std::string> argv_store{"labs"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& a : argv_store) argv.push_back(a.data());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    if (code == 0) return kOk;
    err << '\n' << app.help();
    return kUsage;
  }

  try {
    if (config_path.empty()) {
      if (auto v = env("LABS_CONFIG")) config_path = *v;
    }
    const json config_file = load_config_file(config_path);
    for (auto& c : commands) {
      if (!c.app->parsed()) continue;
      c.options->apply_layers(config_file, env);
      Context ctx{out, err, c.name, c.options.get()};
      c.run(ctx);
      out.flush();
      return kOk;
    }
    err << app.help();
    return kUsage;
  } catch (const UsageError& e) {
    err << "labs: " << e.what() << "\nRun with --help for usage.\n";
    return kUsage;
  } catch (const InvalidInput& e) {
    err << "labs: invalid input: " << e.what() << '\n';
    return kUsage;
  } catch (const CapExceeded& e) {
    err << "labs: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    err << "labs: error: " << e.what() << '\n';
    return kRuntime;
  }
}

}  // namespace labsolve::cli
