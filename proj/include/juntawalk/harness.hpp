#pragma once

// Experiment engine: seeded instance generation with label corruption, single
// trials with exact scoring, and parallel suites with CSV/JSON reporting.

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "juntawalk/hypercube.hpp"
#include "juntawalk/learner.hpp"
#include "juntawalk/oracle_bruteforce.hpp"

namespace juntawalk {

enum class CorruptionKind { none, iid, planted };

// iid: each label flips independently with probability `rate`.
// planted: a second random k-junta from `adversary_seed` marks the region
// where it equals -1; a `rate` fraction of that region is flipped.
struct Corruption {
  CorruptionKind kind = CorruptionKind::none;
  double rate = 0.0;
  std::uint64_t adversary_seed = 0;
};

struct InstanceSpec {
  int n = 8;
  int k = 1;
  std::uint64_t junta_seed = 0;
  Corruption corruption;
  std::uint64_t instance_seed = 0;

  void validate() const;
};

struct Instance {
  TruthTable f = TruthTable::constant(1, 1);
  JuntaHypothesis planted = JuntaHypothesis::constant(1, 1);
  OptResult opt;
  std::uint64_t flipped = 0;  // labels changed by the corruption

  double flip_fraction() const;
};

// Uniform k-subset and uniform table.
JuntaHypothesis random_junta(int n, int k, std::uint64_t seed);

Instance make_instance(const InstanceSpec& spec);

struct TrialReport {
  std::string trial_id;
  InstanceSpec spec;
  LearnParams params;
  std::uint64_t seed = 0;
  double opt = 0.0;
  double delta_hf = 0.0;
  double excess = 0.0;
  bool passed = false;
  double wall_ms = 0.0;
  std::uint64_t walk_steps = 0;
  std::uint64_t sieve_steps = 0;
  std::uint64_t erm_examples = 0;
  int pool_size = 0;
  double flip_fraction = 0.0;
  IndexSet learned;  // relevant set of the hypothesis
  std::string error;  // set when the trial threw; the trial then fails

  double gamma() const { return spec.corruption.rate; }
};

// Builds the instance, learns over a fresh walk seeded from trial_seed and
// scores the hypothesis exactly. Deterministic apart from wall_ms.
TrialReport run_trial(const InstanceSpec& spec, const LearnParams& params,
                      std::uint64_t trial_seed);

struct ExperimentCell {
  InstanceSpec spec;
  LearnParams params;
};

struct ExperimentConfig {
  std::vector<ExperimentCell> cells;
  std::size_t repetitions = 1;
  std::uint64_t master_seed = 0;
  std::string csv_path;   // empty: not written
  std::string json_path;  // empty: not written
  unsigned threads = 0;   // 0: hardware concurrency, capped by JUNTA_WALK_THREADS

  void validate() const;
};

// Trial (cell, rep): trial seed derive_seed(master, cell, rep); the junta,
// instance and adversary seeds of the cell are re-derived from it so every
// repetition draws a new instance.
InstanceSpec trial_spec(const ExperimentConfig& config, std::size_t cell,
                        std::size_t repetition);

struct CellSummary {
  std::size_t cell = 0;
  std::size_t trials = 0;
  std::size_t passed = 0;
  std::size_t errors = 0;
  double pass_rate = 0.0;
  double mean_excess = 0.0;
  double max_excess = 0.0;
  double mean_wall_ms = 0.0;
};

struct SuiteSummary {
  std::vector<TrialReport> trials;  // cell-major, repetition-minor
  std::vector<CellSummary> cells;
  std::vector<std::string> io_errors;
};

unsigned worker_count(unsigned requested, std::size_t tasks);

// Runs every trial; a failing trial is recorded, never fatal. Output files are
// written after all trials finish.
SuiteSummary run_suite(const ExperimentConfig& config);

std::vector<CellSummary> summarize(const std::vector<TrialReport>& trials,
                                   std::size_t cell_count);

std::string trial_csv_header();
std::string trial_csv_row(const TrialReport& report);
void write_trial_csv(std::ostream& out, const std::vector<TrialReport>& trials);
// Reads back the CSV columns; fields without a column keep their defaults.
std::vector<TrialReport> read_trial_csv(std::istream& in);

}  // namespace juntawalk
