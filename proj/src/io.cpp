#include "juntawalk/io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "juntawalk/errors.hpp"

namespace juntawalk {

std::string mask_to_hex(std::uint64_t mask) {
  char buf[24];
  std::snprintf(buf, sizeof buf, "0x%llx", static_cast<unsigned long long>(mask));
  return buf;
}

std::uint64_t mask_from_hex(const std::string& text) {
  std::uint64_t v = 0;
  const char* end = text.data() + text.size();
  if (text.size() < 3 || text[0] != '0' || (text[1] != 'x' && text[1] != 'X')) {
    throw std::invalid_argument("malformed hex mask: " + text);
  }
  const auto [ptr, ec] = std::from_chars(text.data() + 2, end, v, 16);
  if (ec != std::errc() || ptr != end) throw std::invalid_argument("malformed hex mask: " + text);
  return v;
}

Json to_json(const TruthTable& f) {
  Json values = Json::array();
  for (Sign v : f.values()) values.push_back(static_cast<int>(v));
  return Json{{"n", f.n()}, {"values", std::move(values)}};
}

TruthTable truth_table_from_json(const Json& j) {
  const int n = j.at("n").get<int>();
  TruthTable::check_table_dim(n);
  std::vector<Sign> values;
  for (const Json& v : j.at("values")) values.push_back(static_cast<Sign>(v.get<int>()));
  return TruthTable(n, std::move(values));
}

Json to_json(const JuntaHypothesis& h) {
  Json table = Json::array();
  for (Sign v : h.table()) table.push_back(static_cast<int>(v));
  return Json{{"n", h.n()}, {"J", h.relevant().coords()}, {"table", std::move(table)}};
}

JuntaHypothesis hypothesis_from_json(const Json& j) {
  const int n = j.at("n").get<int>();
  const std::vector<int> coords = j.at("J").get<std::vector<int>>();
  std::vector<Sign> table;
  for (const Json& v : j.at("table")) table.push_back(static_cast<Sign>(v.get<int>()));
  return JuntaHypothesis(IndexSet::of(n, coords), std::move(table));
}

Json to_json(const SieveResult& result, double theta, int level) {
  Json sets = Json::array();
  for (const SieveEntry& e : result.sets) {
    sets.push_back({{"mask", mask_to_hex(e.set.mask)},
                    {"subset", e.set.coords()},
                    {"estimate", e.estimate}});
  }
  const SieveDiagnostics& d = result.diagnostics;
  return Json{{"theta", theta},
              {"level", level},
              {"sets", std::move(sets)},
              {"pool", mask_to_hex(result.pool.mask)},
              {"diagnostics",
               {{"screen_pairs", d.screen_pairs},
                {"candidates", d.candidate_count},
                {"estimate_blocks", d.estimate_blocks},
                {"lag", d.lag},
                {"truncated", d.truncated},
                {"walk_steps", d.walk_steps}}}};
}

Json to_json(const OptResult& result) {
  Json j{{"n", result.n},
         {"opt", result.opt()},
         {"disagreements", result.disagreements},
         {"witness", to_json(result.witness)}};
  if (!result.per_subset.empty()) {
    Json per = Json::array();
    for (const auto& [set, err] : result.per_subset) {
      per.push_back({{"J", set.coords()}, {"disagreements", err}});
    }
    j["per_subset"] = std::move(per);
  }
  return j;
}

Json to_json(const LemmaCertificate& cert) {
  Json fixed = Json::array();
  for (const auto& [i, v] : cert.fixed) fixed.push_back({{"variable", i}, {"value", v}});
  Json witnesses = Json::array();
  for (const LemmaWitness& w : cert.witnesses) {
    witnesses.push_back({{"variable", w.variable},
                         {"set", w.set.coords()},
                         {"coefficient", w.coefficient}});
  }
  Json j{{"found", cert.found},
         {"correlation", cert.correlation},
         {"restricted_correlation", cert.restricted_correlation},
         {"bound", cert.bound},
         {"fixed", std::move(fixed)},
         {"witnesses", std::move(witnesses)},
         {"candidates_examined", cert.candidates_examined}};
  if (cert.restricted) j["restricted"] = to_json(*cert.restricted);
  return j;
}

Json to_json(const FixtureReport& report) {
  Json checks = Json::array();
  for (const FixtureCheck& c : report.checks) {
    checks.push_back({{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
  }
  return Json{{"k", report.k}, {"passed", report.passed()}, {"checks", std::move(checks)}};
}

void write_spectrum_csv(std::ostream& out, const Spectrum& s) {
  out << "mask,subset,coefficient\n";
  char buf[40];
  for (std::uint64_t mask = 0; mask < s.coeffs.size(); ++mask) {
    out << mask_to_hex(mask) << ',';
    bool first = true;
    for (int i : IndexSet{s.n, mask}.coords()) {
      out << (first ? "" : " ") << i;
      first = false;
    }
    std::snprintf(buf, sizeof buf, "%.17g", s.coeffs[mask]);
    out << ',' << buf << '\n';
  }
}

void write_walk_dump(std::ostream& out, const LabeledWalk& walk, std::uint64_t seed) {
  out << walk.n << ' ' << walk.size() << ' ' << seed << ' ' << (walk.lazy ? 1 : 0)
      << '\n';
  for (std::size_t t = 0; t < walk.size(); ++t) {
    out << mask_to_hex(walk.points[t]) << ' ' << (walk.labels[t] > 0 ? "+1" : "-1")
        << ' ' << (t == 0 ? 0 : static_cast<int>(walk.flipped[t - 1])) << '\n';
  }
}

LabeledWalk read_walk_dump(std::istream& in) {
  LabeledWalk walk;
  std::size_t length = 0;
  std::uint64_t seed = 0;
  int lazy = 0;
  if (!(in >> walk.n >> length >> seed >> lazy)) {
    throw std::invalid_argument("malformed walk dump header");
  }
  walk.lazy = lazy != 0;
  for (std::size_t t = 0; t < length; ++t) {
    std::string bits;
    int label = 0;
    int coordinate = 0;
    if (!(in >> bits >> label >> coordinate)) {
      throw std::invalid_argument("walk dump ended early");
    }
    walk.points.push_back(mask_from_hex(bits));
    walk.labels.push_back(static_cast<Sign>(label));
    if (t > 0) walk.flipped.push_back(static_cast<std::uint8_t>(coordinate));
  }
  return walk;
}

void write_refresh_pairs(std::ostream& out, const std::vector<RefreshPair>& pairs) {
  for (const RefreshPair& p : pairs) {
    out << Json{{"x", mask_to_hex(p.x)},
                {"y", mask_to_hex(p.y)},
                {"lx", p.label_x},
                {"ly", p.label_y},
                {"refreshed", mask_to_hex(p.refreshed.mask)}}
               .dump()
        << '\n';
  }
}

std::vector<RefreshPair> read_refresh_pairs(std::istream& in, int n) {
  std::vector<RefreshPair> pairs;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const Json j = Json::parse(line);
    RefreshPair p;
    p.x = mask_from_hex(j.at("x").get<std::string>());
    p.y = mask_from_hex(j.at("y").get<std::string>());
    p.label_x = static_cast<Sign>(j.at("lx").get<int>());
    p.label_y = static_cast<Sign>(j.at("ly").get<int>());
    p.refreshed = IndexSet::make(n, mask_from_hex(j.at("refreshed").get<std::string>()));
    pairs.push_back(p);
  }
  return pairs;
}

namespace {

const char* corruption_name(CorruptionKind k) {
  switch (k) {
    case CorruptionKind::iid:
      return "iid";
    case CorruptionKind::planted:
      return "planted";
    case CorruptionKind::none:
      break;
  }
  return "none";
}

CorruptionKind corruption_from_name(const std::string& s) {
  if (s == "none") return CorruptionKind::none;
  if (s == "iid") return CorruptionKind::iid;
  if (s == "planted") return CorruptionKind::planted;
  throw std::invalid_argument("unknown corruption kind: " + s);
}

}  // namespace

Json to_json(const InstanceSpec& spec) {
  return Json{{"n", spec.n},
              {"k", spec.k},
              {"junta_seed", spec.junta_seed},
              {"instance_seed", spec.instance_seed},
              {"corruption",
               {{"kind", corruption_name(spec.corruption.kind)},
                {"rate", spec.corruption.rate},
                {"adversary_seed", spec.corruption.adversary_seed}}}};
}

InstanceSpec instance_spec_from_json(const Json& j) {
  InstanceSpec spec;
  spec.n = j.at("n").get<int>();
  spec.k = j.at("k").get<int>();
  spec.junta_seed = j.value("junta_seed", std::uint64_t{0});
  spec.instance_seed = j.value("instance_seed", std::uint64_t{0});
  if (j.contains("corruption")) {
    const Json& c = j.at("corruption");
    spec.corruption.kind = corruption_from_name(c.value("kind", std::string("none")));
    spec.corruption.rate = c.value("rate", 0.0);
    spec.corruption.adversary_seed = c.value("adversary_seed", std::uint64_t{0});
  }
  spec.validate();
  return spec;
}

Json to_json(const LearnParams& p) {
  return Json{{"k", p.k},
              {"epsilon", p.epsilon},
              {"delta", p.delta},
              {"mode", p.mode == BudgetMode::certified ? "certified" : "practical"},
              {"strategy", p.strategy == SieveStrategy::pooled ? "pooled" : "exhaustive"},
              {"budgets",
               {{"screen_pairs", p.budgets.screen_pairs},
                {"estimate_blocks", p.budgets.estimate_blocks},
                {"erm_examples", p.budgets.erm_examples}}},
              {"max_walk_steps", p.max_walk_steps}};
}

LearnParams learn_params_from_json(const Json& j) {
  LearnParams p;
  p.k = j.at("k").get<int>();
  p.epsilon = j.value("epsilon", p.epsilon);
  p.delta = j.value("delta", p.delta);
  const std::string mode = j.value("mode", std::string("practical"));
  if (mode == "certified") {
    p.mode = BudgetMode::certified;
  } else if (mode == "practical") {
    p.mode = BudgetMode::practical;
  } else {
    throw std::invalid_argument("unknown budget mode: " + mode);
  }
  const std::string strategy = j.value("strategy", std::string("pooled"));
  if (strategy == "pooled") {
    p.strategy = SieveStrategy::pooled;
  } else if (strategy == "exhaustive") {
    p.strategy = SieveStrategy::exhaustive;
  } else {
    throw std::invalid_argument("unknown sieve strategy: " + strategy);
  }
  if (j.contains("budgets")) {
    const Json& b = j.at("budgets");
    p.budgets.screen_pairs = b.value("screen_pairs", std::size_t{0});
    p.budgets.estimate_blocks = b.value("estimate_blocks", std::size_t{0});
    p.budgets.erm_examples = b.value("erm_examples", std::size_t{0});
  }
  p.max_walk_steps = j.value("max_walk_steps", p.max_walk_steps);
  return p;
}

ExperimentConfig experiment_config_from_json(const Json& j) {
  ExperimentConfig config;
  for (const Json& cell : j.value("cells", Json::array())) {
    config.cells.push_back(ExperimentCell{instance_spec_from_json(cell.at("spec")),
                                          learn_params_from_json(cell.at("params"))});
  }
  config.repetitions = j.value("repetitions", std::size_t{1});
  config.master_seed = j.value("master_seed", std::uint64_t{0});
  config.csv_path = j.value("csv", std::string());
  config.json_path = j.value("json", std::string());
  config.threads = j.value("threads", 0U);
  config.validate();
  return config;
}

Json to_json(const TrialReport& r, bool include_wall_time) {
  auto num = [](double v) { return std::isnan(v) ? Json(nullptr) : Json(v); };
  Json j{{"trial_id", r.trial_id},
         {"spec", to_json(r.spec)},
         {"params", to_json(r.params)},
         {"seed", r.seed},
         {"opt", num(r.opt)},
         {"delta_hf", num(r.delta_hf)},
         {"excess", num(r.excess)},
         {"passed", r.passed},
         {"walk_steps", r.walk_steps},
         {"sieve_steps", r.sieve_steps},
         {"erm_examples", r.erm_examples},
         {"pool_size", r.pool_size},
         {"flip_fraction", r.flip_fraction},
         {"learned", r.learned.coords()}};
  if (include_wall_time) j["wall_ms"] = r.wall_ms;
  if (!r.error.empty()) j["error"] = r.error;
  return j;
}

Json suite_summary_json(const ExperimentConfig& config, const SuiteSummary& summary) {
  Json cells = Json::array();
  Json excess_vs_gamma = Json::array();
  Json pass_vs_eps = Json::array();
  for (const CellSummary& s : summary.cells) {
    const ExperimentCell& c = config.cells.at(s.cell);
    cells.push_back({{"cell", s.cell},
                     {"spec", to_json(c.spec)},
                     {"params", to_json(c.params)},
                     {"trials", s.trials},
                     {"passed", s.passed},
                     {"errors", s.errors},
                     {"pass_rate", s.pass_rate},
                     {"mean_excess", s.mean_excess},
                     {"max_excess", s.max_excess},
                     {"mean_wall_ms", s.mean_wall_ms}});
    excess_vs_gamma.push_back({{"cell", s.cell},
                               {"gamma", c.spec.corruption.rate},
                               {"mean_excess", s.mean_excess},
                               {"max_excess", s.max_excess}});
    pass_vs_eps.push_back(
        {{"cell", s.cell}, {"epsilon", c.params.epsilon}, {"pass_rate", s.pass_rate}});
  }
  Json trials = Json::array();
  for (const TrialReport& t : summary.trials) trials.push_back(to_json(t));
  return Json{{"repetitions", config.repetitions},
              {"master_seed", config.master_seed},
              {"cells", std::move(cells)},
              {"series",
               {{"excess_vs_gamma", std::move(excess_vs_gamma)},
                {"pass_rate_vs_epsilon", std::move(pass_vs_eps)}}},
              {"trials", std::move(trials)}};
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return Json::parse(in);
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text << '\n';
  if (!out) throw std::runtime_error("write failed for " + path);
}

}  // namespace juntawalk
