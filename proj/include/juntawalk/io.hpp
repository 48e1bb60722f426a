#pragma once

// JSON and text serialization of tables, hypotheses, walks and reports.
// Masks are written as "0x..." hex strings; coordinate lists are 1-based.

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "juntawalk/fourier.hpp"
#include "juntawalk/harness.hpp"
#include "juntawalk/hypercube.hpp"
#include "juntawalk/learner.hpp"
#include "juntawalk/oracle_bruteforce.hpp"
#include "juntawalk/sieve.hpp"
#include "juntawalk/walk.hpp"

namespace juntawalk {

using Json = nlohmann::json;

std::string mask_to_hex(std::uint64_t mask);
std::uint64_t mask_from_hex(const std::string& text);

Json to_json(const TruthTable& f);
TruthTable truth_table_from_json(const Json& j);

Json to_json(const JuntaHypothesis& h);  // {"n", "J": [coords], "table"}
JuntaHypothesis hypothesis_from_json(const Json& j);

Json to_json(const SieveResult& result, double theta, int level);
Json to_json(const OptResult& result);
Json to_json(const LemmaCertificate& cert);
Json to_json(const FixtureReport& report);

// Columns: mask (hex), subset (space-separated coordinates), coefficient.
void write_spectrum_csv(std::ostream& out, const Spectrum& s);

// Header line "n length seed lazy", then one line per point:
// hex bits, label (+1/-1), coordinate chosen to reach it (0 for the start).
void write_walk_dump(std::ostream& out, const LabeledWalk& walk,
                     std::uint64_t seed);
LabeledWalk read_walk_dump(std::istream& in);

// One JSON object per line: {"x", "y", "lx", "ly", "refreshed"}, masks in hex.
void write_refresh_pairs(std::ostream& out, const std::vector<RefreshPair>& pairs);
std::vector<RefreshPair> read_refresh_pairs(std::istream& in, int n);

Json to_json(const InstanceSpec& spec);
InstanceSpec instance_spec_from_json(const Json& j);

Json to_json(const LearnParams& params);
LearnParams learn_params_from_json(const Json& j);

// {"cells": [{"spec": {...}, "params": {...}}], "repetitions", "master_seed",
//  "csv", "json", "threads"}; output paths are optional.
ExperimentConfig experiment_config_from_json(const Json& j);

Json to_json(const TrialReport& report, bool include_wall_time = true);

// Cell table plus plot-ready series: excess against gamma and pass rate
// against epsilon.
Json suite_summary_json(const ExperimentConfig& config, const SuiteSummary& summary);

Json read_json_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

}  // namespace juntawalk
