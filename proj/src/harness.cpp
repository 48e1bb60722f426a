#include "juntawalk/harness.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <memory>
#include <numeric>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "juntawalk/errors.hpp"
#include "juntawalk/io.hpp"
#include "juntawalk/log.hpp"

namespace juntawalk {

void InstanceSpec::validate() const {
  if (n < 1 || n > kMaxOptDim) throw CapExceeded("instance dimension outside [1, 16]");
  if (k < 0 || k > n) throw std::invalid_argument("instance k must lie in [0, n]");
  const double r = corruption.rate;
  switch (corruption.kind) {
    case CorruptionKind::none:
      break;
    case CorruptionKind::iid:
      if (!(r >= 0.0 && r <= 0.5)) {
        throw std::invalid_argument("iid corruption rate must lie in [0, 1/2]");
      }
      break;
    case CorruptionKind::planted:
      if (!(r >= 0.0 && r <= 1.0)) {
        throw std::invalid_argument("planted region fraction must lie in [0, 1]");
      }
      break;
  }
}

double Instance::flip_fraction() const {
  return std::ldexp(static_cast<double>(flipped), -f.n());
}

JuntaHypothesis random_junta(int n, int k, std::uint64_t seed) {
  if (n < 1 || n > kMaxPackedDim) throw CapExceeded("junta dimension outside [1, 63]");
  if (k < 0 || k > n || k > 30) throw std::invalid_argument("junta arity out of range");
  Rng rng(seed);
  std::vector<int> coords(n);
  std::iota(coords.begin(), coords.end(), 1);
  std::uint64_t mask = 0;
  for (int j = 0; j < k; ++j) {
    const auto pick = j + static_cast<int>(rng.below(n - j));
    std::swap(coords[j], coords[pick]);
    mask |= 1ULL << (coords[j] - 1);
  }
  std::vector<Sign> table(std::size_t{1} << k);
  for (Sign& v : table) v = rng.coin() ? Sign{-1} : Sign{1};
  return JuntaHypothesis(IndexSet{n, mask}, std::move(table));
}

Instance make_instance(const InstanceSpec& spec) {
  spec.validate();
  const int n = spec.n;
  Instance inst;
  inst.planted = random_junta(n, spec.k, spec.junta_seed);
  const TruthTable clean = inst.planted.materialize();
  std::vector<Sign> values(clean.values().begin(), clean.values().end());

  Rng rng(spec.instance_seed);
  switch (spec.corruption.kind) {
    case CorruptionKind::none:
      break;
    case CorruptionKind::iid:
      for (Sign& v : values) {
        if (rng.bernoulli(spec.corruption.rate)) {
          v = static_cast<Sign>(-v);
          ++inst.flipped;
        }
      }
      break;
    case CorruptionKind::planted: {
      const JuntaHypothesis adversary =
          random_junta(n, spec.k, spec.corruption.adversary_seed);
      std::vector<std::uint64_t> region;
      for (std::uint64_t x = 0; x < values.size(); ++x) {
        if (adversary.at(x) < 0) region.push_back(x);
      }
      for (std::size_t j = region.size(); j > 1; --j) {
        std::swap(region[j - 1], region[rng.below(j)]);
      }
      const auto count = static_cast<std::size_t>(
          std::llround(spec.corruption.rate * static_cast<double>(region.size())));
      for (std::size_t j = 0; j < count; ++j) {
        values[region[j]] = static_cast<Sign>(-values[region[j]]);
      }
      inst.flipped = count;
      break;
    }
  }
  inst.f = TruthTable(n, std::move(values));
  inst.opt = exact_opt(inst.f, spec.k);
  return inst;
}

namespace {

std::string hex_id(std::uint64_t seed) {
  char buf[24];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(seed));
  return buf;
}

}  // namespace

TrialReport run_trial(const InstanceSpec& spec, const LearnParams& params,
                      std::uint64_t trial_seed) {
  const auto start = std::chrono::steady_clock::now();
  TrialReport report;
  report.trial_id = hex_id(trial_seed);
  report.spec = spec;
  report.params = params;
  report.seed = trial_seed;

  const Instance inst = make_instance(spec);
  report.opt = inst.opt.opt();
  report.flip_fraction = inst.flip_fraction();

  WalkOracle oracle(LabelSource(std::make_shared<const TruthTable>(inst.f)),
                    derive_seed(trial_seed, 1));
  const LearnResult learned = learn_juntas(oracle, params, derive_seed(trial_seed, 2));
  report.delta_hf = distance_exact(inst.f, learned.hypothesis);
  report.excess = report.delta_hf - report.opt;
  report.passed = report.excess <= params.epsilon;
  report.walk_steps = learned.walk_steps;
  report.sieve_steps = learned.sieve_steps;
  report.erm_examples = learned.erm_examples;
  report.pool_size = learned.pool.size();
  report.learned = learned.hypothesis.relevant();
  report.wall_ms = std::chrono::duration<double, std::milli>(
                       std::chrono::steady_clock::now() - start)
                       .count();
  return report;
}

void ExperimentConfig::validate() const {
  if (repetitions < 1) throw std::invalid_argument("repetitions must be >= 1");
  for (const ExperimentCell& c : cells) {
    c.spec.validate();
    c.params.validate(c.spec.n);
  }
}

InstanceSpec trial_spec(const ExperimentConfig& config, std::size_t cell,
                        std::size_t repetition) {
  const std::uint64_t seed = derive_seed(config.master_seed, cell, repetition);
  InstanceSpec spec = config.cells.at(cell).spec;
  spec.junta_seed = derive_seed(spec.junta_seed, seed, 1);
  spec.instance_seed = derive_seed(spec.instance_seed, seed, 2);
  spec.corruption.adversary_seed =
      derive_seed(spec.corruption.adversary_seed, seed, 3);
  return spec;
}

unsigned worker_count(unsigned requested, std::size_t tasks) {
  unsigned workers = requested > 0 ? requested : std::thread::hardware_concurrency();
  if (workers == 0) workers = 1;
  if (const char* env = std::getenv("JUNTA_WALK_THREADS")) {
    unsigned cap = 0;
    const std::string_view text(env);
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), cap);
    if (ec == std::errc() && ptr == text.data() + text.size() && cap > 0) {
      workers = std::min(workers, cap);
    } else {
      log_warning("ignoring malformed JUNTA_WALK_THREADS");
    }
  }
  return static_cast<unsigned>(std::max<std::size_t>(
      1, std::min<std::size_t>(workers, std::max<std::size_t>(tasks, 1))));
}

std::vector<CellSummary> summarize(const std::vector<TrialReport>& trials,
                                   std::size_t cell_count) {
  if (cell_count == 0) return {};
  if (trials.size() % cell_count != 0) {
    throw std::invalid_argument("trials do not split evenly into cells");
  }
  const std::size_t reps = trials.size() / cell_count;
  std::vector<CellSummary> cells(cell_count);
  for (std::size_t c = 0; c < cell_count; ++c) {
    CellSummary& s = cells[c];
    s.cell = c;
    std::size_t scored = 0;
    double wall = 0.0;
    for (std::size_t r = 0; r < reps; ++r) {
      const TrialReport& t = trials[c * reps + r];
      ++s.trials;
      wall += t.wall_ms;
      if (!t.error.empty()) {
        ++s.errors;
        continue;
      }
      if (t.passed) ++s.passed;
      s.mean_excess += t.excess;
      s.max_excess = scored == 0 ? t.excess : std::max(s.max_excess, t.excess);
      ++scored;
    }
    s.pass_rate = s.trials ? static_cast<double>(s.passed) / s.trials : 0.0;
    s.mean_excess = scored ? s.mean_excess / scored : 0.0;
    s.mean_wall_ms = s.trials ? wall / s.trials : 0.0;
  }
  return cells;
}

SuiteSummary run_suite(const ExperimentConfig& config) {
  config.validate();
  const std::size_t total = config.cells.size() * config.repetitions;
  SuiteSummary summary;
  summary.trials.resize(total);

  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < total; i = next++) {
      const std::size_t cell = i / config.repetitions;
      const std::size_t rep = i % config.repetitions;
      const InstanceSpec spec = trial_spec(config, cell, rep);
      const LearnParams& params = config.cells[cell].params;
      const std::uint64_t seed = derive_seed(config.master_seed, cell, rep);
      TrialReport report;
      try {
        report = run_trial(spec, params, seed);
      } catch (const std::exception& e) {
        report.spec = spec;
        report.params = params;
        report.seed = seed;
        report.passed = false;
        report.opt = report.delta_hf = report.excess = std::nan("");
        report.error = e.what();
      }
      report.trial_id = "c" + std::to_string(cell) + "-r" + std::to_string(rep);
      summary.trials[i] = std::move(report);
    }
  };
  const unsigned workers = worker_count(config.threads, total);
  if (workers <= 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
  }

  summary.cells = summarize(summary.trials, config.cells.size());

  if (!config.csv_path.empty()) {
    std::ofstream out(config.csv_path);
    if (out) write_trial_csv(out, summary.trials);
    if (!out) summary.io_errors.push_back("cannot write " + config.csv_path);
  }
  if (!config.json_path.empty()) {
    try {
      write_text_file(config.json_path, suite_summary_json(config, summary).dump(2));
    } catch (const std::exception& e) {
      summary.io_errors.push_back(e.what());
    }
  }
  for (const std::string& e : summary.io_errors) log_warning(e);
  return summary;
}

std::string trial_csv_header() {
  return "trial_id,n,k,eps,delta,gamma,opt,delta_hf,excess,passed,seed,wall_ms,"
         "walk_steps";
}

namespace {

std::string fmt_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

double parse_double(const std::string& s) {
  if (s == "nan" || s == "-nan") return std::nan("");
  std::size_t used = 0;
  const double v = std::stod(s, &used);
  if (used != s.size()) throw std::invalid_argument("malformed number: " + s);
  return v;
}

std::uint64_t parse_u64(const std::string& s) {
  std::uint64_t v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw std::invalid_argument("malformed integer: " + s);
  }
  return v;
}

}  // namespace

std::string trial_csv_row(const TrialReport& r) {
  std::ostringstream out;
  out << r.trial_id << ',' << r.spec.n << ',' << r.spec.k << ','
      << fmt_double(r.params.epsilon) << ',' << fmt_double(r.params.delta) << ','
      << fmt_double(r.gamma()) << ',' << fmt_double(r.opt) << ','
      << fmt_double(r.delta_hf) << ',' << fmt_double(r.excess) << ','
      << (r.passed ? 1 : 0) << ',' << r.seed << ',' << fmt_double(r.wall_ms) << ','
      << r.walk_steps;
  return out.str();
}

void write_trial_csv(std::ostream& out, const std::vector<TrialReport>& trials) {
  out << trial_csv_header() << '\n';
  for (const TrialReport& t : trials) out << trial_csv_row(t) << '\n';
}

std::vector<TrialReport> read_trial_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != trial_csv_header()) {
    throw std::invalid_argument("unexpected trial CSV header");
  }
  std::vector<TrialReport> out;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> f;
    std::stringstream ss(line);
    for (std::string cell; std::getline(ss, cell, ',');) f.push_back(cell);
    if (f.size() != 13) throw std::invalid_argument("trial CSV row needs 13 fields");
    TrialReport r;
    r.trial_id = f[0];
    r.spec.n = static_cast<int>(parse_u64(f[1]));
    r.spec.k = static_cast<int>(parse_u64(f[2]));
    r.params.k = r.spec.k;
    r.params.epsilon = parse_double(f[3]);
    r.params.delta = parse_double(f[4]);
    r.spec.corruption.rate = parse_double(f[5]);
    r.opt = parse_double(f[6]);
    r.delta_hf = parse_double(f[7]);
    r.excess = parse_double(f[8]);
    r.passed = f[9] == "1";
    r.seed = parse_u64(f[10]);
    r.wall_ms = parse_double(f[11]);
    r.walk_steps = parse_u64(f[12]);
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace juntawalk
