// junta-walk: command-line front end for instance generation, learning,
// sieving, exact analysis and experiment suites.

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>

#include "juntawalk/errors.hpp"
#include "juntawalk/fourier.hpp"
#include "juntawalk/harness.hpp"
#include "juntawalk/io.hpp"
#include "juntawalk/learner.hpp"
#include "juntawalk/log.hpp"
#include "juntawalk/oracle_bruteforce.hpp"
#include "juntawalk/sieve.hpp"
#include "juntawalk/walk.hpp"

namespace jw = juntawalk;

namespace {

void emit(const jw::Json& j, const std::string& out) {
  if (out.empty()) {
    std::cout << j.dump(2) << '\n';
  } else {
    jw::write_text_file(out, j.dump(2));
  }
}

jw::TruthTable load_table(const std::string& path) {
  return jw::truth_table_from_json(jw::read_json_file(path));
}

// A hypothesis file ({"J", "table"}) or a truth table ({"values"}).
jw::TruthTable load_function(const std::string& path) {
  const jw::Json j = jw::read_json_file(path);
  if (j.contains("values")) return jw::truth_table_from_json(j);
  return jw::hypothesis_from_json(j).materialize();
}

struct BudgetFlags {
  bool certified = false;
  bool exhaustive = false;
  std::size_t screen_pairs = 0;
  std::size_t estimate_blocks = 0;
  std::size_t erm_examples = 0;
  std::uint64_t max_walk_steps = std::uint64_t{1} << 31;

  void attach(CLI::App* app, bool with_erm) {
    app->add_flag("--certified", certified, "Use certified budgets");
    app->add_flag("--exhaustive", exhaustive, "Estimate every set instead of screening");
    app->add_option("--screen-pairs", screen_pairs, "Refresh pairs for screening");
    app->add_option("--estimate-blocks", estimate_blocks, "Blocks for estimation");
    if (with_erm) app->add_option("--erm-examples", erm_examples, "ERM sample size");
    app->add_option("--max-walk-steps", max_walk_steps, "Certified walk-step ceiling");
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Agnostic junta learning from random-walk examples"};
  app.require_subcommand(1);
  bool verbose = false;
  app.add_flag("-v,--verbose", verbose, "Log progress");

  // gen
  std::string spec_path, out;
  auto* gen = app.add_subcommand("gen", "Generate a corrupted junta instance");
  gen->add_option("--spec", spec_path, "InstanceSpec JSON")->required()->check(CLI::ExistingFile);
  gen->add_option("--out", out, "Output path (stdout if omitted)");

  // learn
  std::string instance;
  int k = 1;
  double eps = 0.25, delta = 0.2;
  std::uint64_t seed = 0;
  BudgetFlags learn_flags;
  auto* learn = app.add_subcommand("learn", "Learn a k-junta from walk examples");
  learn->add_option("--instance", instance, "Truth table JSON")->required()->check(CLI::ExistingFile);
  learn->add_option("-k", k, "Junta arity")->required();
  learn->add_option("--eps", eps, "Target excess error");
  learn->add_option("--delta", delta, "Failure probability");
  learn->add_option("--seed", seed, "Walk seed");
  learn->add_option("--out", out, "Output path (stdout if omitted)");
  learn_flags.attach(learn, true);

  // sieve
  double theta = 0.1;
  int level = 1;
  BudgetFlags sieve_flags;
  auto* sieve = app.add_subcommand("sieve", "List heavy low-degree Fourier coefficients");
  sieve->add_option("--instance", instance, "Truth table JSON")->required()->check(CLI::ExistingFile);
  sieve->add_option("--theta", theta, "Weight threshold")->required();
  sieve->add_option("--level", level, "Maximum set size")->required();
  sieve->add_option("--delta", delta, "Failure probability");
  sieve->add_option("--seed", seed, "Walk seed");
  sieve->add_option("--out", out, "Output path (stdout if omitted)");
  sieve_flags.attach(sieve, false);

  // wht
  auto* wht = app.add_subcommand("wht", "Exact Fourier spectrum as CSV");
  wht->add_option("--instance", instance, "Truth table JSON")->required()->check(CLI::ExistingFile);
  wht->add_option("--out", out, "Output path (stdout if omitted)");

  // opt
  bool per_subset = false;
  auto* opt = app.add_subcommand("opt", "Exact distance to the nearest k-junta");
  opt->add_option("--instance", instance, "Truth table JSON")->required()->check(CLI::ExistingFile);
  opt->add_option("-k", k, "Junta arity")->required();
  opt->add_flag("--per-subset", per_subset, "Report every k-subset");
  opt->add_option("--out", out, "Output path (stdout if omitted)");

  // verify-lemma
  std::string g_path;
  auto* lemma = app.add_subcommand("verify-lemma", "Search restrictions of g for a heavy-coefficient junta");
  lemma->add_option("--instance", instance, "Truth table JSON for f")->required()->check(CLI::ExistingFile);
  lemma->add_option("--g", g_path, "Hypothesis or table for g (default: optimal k-junta)")
      ->check(CLI::ExistingFile);
  lemma->add_option("-k", k, "Junta arity")->required();
  lemma->add_option("--eps", eps, "Correlation slack");
  lemma->add_option("--out", out, "Output path (stdout if omitted)");

  // fixtures
  auto* fixtures = app.add_subcommand("fixtures", "Exact AND-function checks");
  fixtures->add_option("-k", k, "Arity in [1, 10]")->required();

  // suite
  std::string config_path, out_dir;
  auto* suite = app.add_subcommand("suite", "Run an experiment suite");
  suite->add_option("--config", config_path, "ExperimentConfig JSON")->required()->check(CLI::ExistingFile);
  suite->add_option("--out-dir", out_dir, "Directory for trials.csv and summary.json");

  // walk
  std::size_t length = 100;
  bool lazy = false;
  auto* walk = app.add_subcommand("walk", "Dump a labeled random walk");
  walk->add_option("--instance", instance, "Truth table JSON")->required()->check(CLI::ExistingFile);
  walk->add_option("--length", length, "Number of points");
  walk->add_option("--seed", seed, "Walk seed");
  walk->add_flag("--lazy", lazy, "Resample instead of flipping");
  walk->add_option("--out", out, "Output path (stdout if omitted)");

  CLI11_PARSE(app, argc, argv);
  if (verbose) jw::set_log_level(jw::LogLevel::info);

  try {
    if (*gen) {
      const jw::InstanceSpec spec = jw::instance_spec_from_json(jw::read_json_file(spec_path));
      const jw::Instance inst = jw::make_instance(spec);
      jw::Json j = jw::to_json(inst.f);
      j["spec"] = jw::to_json(spec);
      j["planted"] = jw::to_json(inst.planted);
      j["opt"] = jw::to_json(inst.opt);
      j["flip_fraction"] = inst.flip_fraction();
      emit(j, out);
    } else if (*learn) {
      const auto f = std::make_shared<const jw::TruthTable>(load_table(instance));
      jw::LearnParams p;
      p.k = k;
      p.epsilon = eps;
      p.delta = delta;
      p.mode = learn_flags.certified ? jw::BudgetMode::certified : jw::BudgetMode::practical;
      p.strategy = learn_flags.exhaustive ? jw::SieveStrategy::exhaustive
                                          : jw::SieveStrategy::pooled;
      p.budgets = {learn_flags.screen_pairs, learn_flags.estimate_blocks,
                   learn_flags.erm_examples};
      p.max_walk_steps = learn_flags.max_walk_steps;
      jw::WalkOracle oracle(jw::LabelSource(f), jw::derive_seed(seed, 1));
      const jw::LearnResult r = jw::learn_juntas(oracle, p, jw::derive_seed(seed, 2));
      jw::Json j = jw::to_json(r.hypothesis);
      j["sample_err"] = r.err;
      j["theta"] = r.theta;
      j["pool"] = r.pool.coords();
      j["subsets_evaluated"] = r.subsets_evaluated;
      j["erm_examples"] = r.erm_examples;
      j["walk_steps"] = r.walk_steps;
      j["distance"] = jw::distance_exact(*f, r.hypothesis);
      emit(j, out);
    } else if (*sieve) {
      const auto f = std::make_shared<const jw::TruthTable>(load_table(instance));
      jw::SieveParams p;
      p.theta = theta;
      p.level = level;
      p.delta = delta;
      p.mode = sieve_flags.certified ? jw::BudgetMode::certified : jw::BudgetMode::practical;
      p.strategy = sieve_flags.exhaustive ? jw::SieveStrategy::exhaustive
                                          : jw::SieveStrategy::pooled;
      p.budgets = {sieve_flags.screen_pairs, sieve_flags.estimate_blocks};
      p.max_walk_steps = sieve_flags.max_walk_steps;
      jw::WalkOracle oracle(jw::LabelSource(f), jw::derive_seed(seed, 1));
      const jw::SieveResult r = jw::bounded_sieve(oracle, p, jw::derive_seed(seed, 2));
      emit(jw::to_json(r, theta, level), out);
    } else if (*wht) {
      const jw::Spectrum s = jw::wht(load_table(instance));
      if (out.empty()) {
        jw::write_spectrum_csv(std::cout, s);
      } else {
        std::ofstream file(out);
        if (!file) throw std::runtime_error("cannot write " + out);
        jw::write_spectrum_csv(file, s);
      }
    } else if (*opt) {
      emit(jw::to_json(jw::exact_opt(load_table(instance), k, per_subset)), out);
    } else if (*lemma) {
      const jw::TruthTable f = load_table(instance);
      const jw::TruthTable g =
          g_path.empty() ? jw::exact_opt(f, k).witness.materialize() : load_function(g_path);
      const jw::LemmaCertificate cert = jw::verify_spectrum_lemma(f, g, k, eps);
      emit(jw::to_json(cert), out);
      return cert.found ? 0 : 1;
    } else if (*fixtures) {
      const jw::FixtureReport report = jw::counterexample_fixtures(k);
      std::cout << jw::to_json(report).dump(2) << '\n';
      return report.passed() ? 0 : 1;
    } else if (*suite) {
      jw::ExperimentConfig config =
          jw::experiment_config_from_json(jw::read_json_file(config_path));
      if (!out_dir.empty()) {
        std::filesystem::create_directories(out_dir);
        config.csv_path = (std::filesystem::path(out_dir) / "trials.csv").string();
        config.json_path = (std::filesystem::path(out_dir) / "summary.json").string();
      }
      const jw::SuiteSummary summary = jw::run_suite(config);
      for (const jw::CellSummary& c : summary.cells) {
        std::cout << "cell " << c.cell << ": " << c.passed << "/" << c.trials
                  << " passed, " << c.errors << " errors, mean excess " << c.mean_excess
                  << '\n';
      }
      return summary.io_errors.empty() ? 0 : 2;
    } else if (*walk) {
      const jw::TruthTable f = load_table(instance);
      jw::WalkConfig config{f.n(), length, seed, lazy};
      const jw::LabeledWalk w = jw::generate_walk(jw::LabelSource(f), config);
      if (out.empty()) {
        jw::write_walk_dump(std::cout, w, seed);
      } else {
        std::ofstream file(out);
        if (!file) throw std::runtime_error("cannot write " + out);
        jw::write_walk_dump(file, w, seed);
      }
    }
  } catch (const std::exception& e) {
    std::cerr << "junta-walk: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
