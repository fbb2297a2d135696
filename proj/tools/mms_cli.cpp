#include <CLI11.hpp>
#include <json.hpp>

#include <gmp.h>
#include <mpfr.h>
#include <openssl/evp.h>

#include <chrono>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <sstream>

#include "mms/bounds.hpp"
#include "mms/config_io.hpp"
#include "mms/constructions.hpp"
#include "mms/partition.hpp"
#include "mms/reproduce.hpp"
#include "mms/solver.hpp"
#include "mms/witness.hpp"

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;
using namespace mms;

namespace {

constexpr const char* kVersion = "1.0.0";

enum Exit { kOk = 0, kCheckFailed = 1, kUsage = 2, kInputParse = 3 };

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Globals {
  std::uint64_t seed = 0;
  int workers = 0;
  std::int64_t budget = 0;  // 0: per-command default
  std::string out = ".";
  std::string format = "json";
  std::string command_line;
};

std::string now_utc() {
  const auto t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  std::ostringstream os;
  os << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return os.str();
}

std::string sha256_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  const std::string data = buf.str();
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(), nullptr);
  std::ostringstream hex;
  for (unsigned i = 0; i < len; ++i) hex << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(digest[i]);
  return hex.str();
}

// Command, seed, versions, timestamps and output digests. Lives beside the
// outputs, never inside them, so the outputs stay byte-identical across runs.
class RunManifest {
 public:
  RunManifest(const Globals& g) : globals_(g), started_(now_utc()) {}
  void add_output(const fs::path& path) { outputs_.push_back(path); }
  void write(const fs::path& path) const {
    json doc;
    doc["command_line"] = globals_.command_line;
    doc["seed"] = std::to_string(globals_.seed);
    doc["versions"] = {{"mms", kVersion}, {"gmp", gmp_version}, {"mpfr", mpfr_get_version()}};
    doc["started"] = started_;
    doc["finished"] = now_utc();
    doc["outputs"] = json::array();
    for (const auto& o : outputs_) doc["outputs"].push_back({{"path", o.string()}, {"sha256", sha256_file(o)}});
    std::ofstream(path) << doc.dump(2) << "\n";
  }

 private:
  const Globals& globals_;
  std::string started_;
  std::vector<fs::path> outputs_;
};

void write_text(const fs::path& path, const std::string& text) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
}

json rational_list(const Configuration& config) {
  json arr = json::array();
  for (const auto& v : config.values()) arr.push_back(to_string(v));
  return arr;
}

json subset_json(const KSubset& s) {
  json arr = json::array();
  for (int i : s.indices()) arr.push_back(i);
  return arr;
}

json bound_json(const BoundReport& r) {
  json params = json::object();
  for (const auto& [key, value] : r.parameters) params[key] = value;
  json doc{{"name", r.name},
           {"parameters", params},
           {"relation", r.relation},
           {"lhs", to_string(r.lhs)},
           {"rhs", to_string(r.rhs)},
           {"margin", to_string(r.margin)},
           {"holds", r.holds},
           {"precondition_ok", r.precondition_ok},
           {"cross_checked", r.cross_checked},
           {"note", r.note}};
  doc["steps"] = json::array();
  for (const auto& s : r.steps) doc["steps"].push_back(bound_json(s));
  return doc;
}

void emit(const json& doc) { std::cout << doc.dump(2) << "\n"; }

// construct --------------------------------------------------------------

struct ConstructArgs {
  std::string name;
  int n = 0;
  int k = 0;
};

int run_construct(const Globals& g, const ConstructArgs& a) {
  const auto which = parse_construction_name(a.name);
  NamedConstruction c = which == ConstructionName::mms_counterexample ? mms_counterexample(a.k)
                        : which == ConstructionName::star          ? star_config(a.n, a.k)
                                                                   : mirror_config(a.n, a.k);
  if (which == ConstructionName::mms_counterexample && a.n != 0 && a.n != c.n) {
    throw UsageError("the counterexample has n = 3k + 1 = " + std::to_string(c.n));
  }
  RunManifest manifest(g);
  const std::string stem = to_string(c.name) + "_n" + std::to_string(c.n) + "_k" + std::to_string(c.k);
  const fs::path config_path = fs::path(g.out) / (stem + (g.format == "csv" ? ".csv" : ".txt"));
  std::ostringstream text;
  write_configuration(text, c.config);
  write_text(config_path, text.str());
  json sidecar{{"name", to_string(c.name)},
               {"n", c.n},
               {"k", c.k},
               {"predicted_count", to_string(c.predicted_count)},
               {"prediction_formula", c.prediction_formula},
               {"config_path", config_path.string()}};
  const fs::path sidecar_path = fs::path(g.out) / (stem + ".json");
  write_text(sidecar_path, sidecar.dump(2) + "\n");
  manifest.add_output(config_path);
  manifest.add_output(sidecar_path);
  manifest.write(fs::path(g.out) / (stem + ".manifest.json"));
  emit(sidecar);
  return kOk;
}

// baranyai ---------------------------------------------------------------

json partition_json(const BaranyaiPartition& p) {
  json classes = json::array();
  for (const auto& pc : p.classes) {
    json blocks = json::array();
    for (const auto& b : pc.blocks) blocks.push_back(subset_json(b));
    classes.push_back(blocks);
  }
  return json{{"n", p.n}, {"k", p.k}, {"seed", std::to_string(p.seed)}, {"classes", classes}};
}

BaranyaiPartition partition_from_json(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path.string());
  json doc;
  try {
    doc = json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
  try {
    BaranyaiPartition p;
    p.n = doc.at("n").get<int>();
    p.k = doc.at("k").get<int>();
    for (const auto& cls : doc.at("classes")) {
      ParallelClass pc;
      for (const auto& block : cls) pc.blocks.emplace_back(block.get<std::vector<int>>());
      p.classes.push_back(std::move(pc));
    }
    return p;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(path.string() + ": " + e.what());
  } catch (const std::invalid_argument& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

int run_baranyai(const Globals& g, int n, int k, const std::string& validate_path) {
  if (!validate_path.empty()) {
    const auto p = partition_from_json(validate_path);
    const auto check = validate_partition(p);
    emit(json{{"valid", check.ok}, {"diagnostic", check.diagnostic}, {"classes", p.classes.size()}});
    return check.ok ? kOk : kCheckFailed;
  }
  if (n <= 0 || k <= 0) throw UsageError("baranyai needs --n and --k (or --validate)");
  emit(partition_json(baranyai_partition(n, k, g.seed)));
  return kOk;
}

// witness ----------------------------------------------------------------

struct WitnessArgs {
  int theorem = 1;
  std::string config;
  int k = 0;
  std::string mode = "auto";
  int sample = 1000;
  std::uint64_t partition_seed = 0;
};

int run_witness(const Globals& g, const WitnessArgs& a) {
  const auto config = read_configuration(fs::path(a.config));
  WitnessOptions options;
  options.mode = parse_witness_mode(a.mode);
  options.sample_size = a.sample;
  options.seed = g.seed;
  options.partition_seed = a.partition_seed;
  options.workers = g.workers;
  if (g.budget > 0) options.explicit_limit = g.budget;
  if (a.theorem != 1 && a.theorem != 2) throw UsageError("--theorem must be 1 or 2");
  const auto report = a.theorem == 1 ? extract_thm1(config, a.k, options) : extract_thm2(config, a.k, options);

  json doc{{"theorem", report.theorem},
           {"n", report.n},
           {"k", report.k},
           {"branch", to_string(report.branch)},
           {"guaranteed_count", to_string(report.guaranteed_count)},
           {"witness_count", to_string(report.witnesses.count())},
           {"target", to_string(report.target)},
           {"certified", report.certified},
           {"meets_target", report.meets_target},
           {"below_guarantee", report.below_guarantee},
           {"in_theorem_range", report.in_theorem_range},
           {"certified_members", report.certified_members}};
  json trace = json::array();
  for (const auto& t : report.trace) {
    trace.push_back({{"stage", t.stage_index},
                     {"surviving_top", t.surviving_top},
                     {"removed_bottom", t.removed_bottom},
                     {"central", t.central},
                     {"stage_set_size", t.stage_set_size}});
  }
  doc["trace"] = trace;
  json checks = json::array();
  for (const auto& c : report.checks) {
    checks.push_back({{"name", c.name}, {"lhs", to_string(c.lhs)}, {"rhs", to_string(c.rhs)}, {"holds", c.holds}});
  }
  doc["checks"] = checks;
  json parts = json::array();
  for (const auto& p : report.parts) {
    parts.push_back({{"name", p.name}, {"count", to_string(p.formula_count)}, {"explicit", p.family.is_explicit()}});
  }
  doc["parts"] = parts;
  if (report.theorem == 1) {
    doc["trimmed_size"] = report.trimmed_size;
    doc["top_zone_size"] = report.top_zone_size;
  } else {
    doc["stages"] = report.stages;
    doc["large_count"] = report.large_count;
    doc["medium_range"] = report.medium_range;
  }
  if (report.witnesses.is_explicit()) {
    RunManifest manifest(g);
    const fs::path csv = fs::path(g.out) / "witnesses.csv";
    std::ostringstream os;
    for (int i = 1; i <= report.k; ++i) os << (i > 1 ? "," : "") << "i" << i;
    os << "\n";
    for (const auto& m : report.witnesses.members()) {
      const auto& idx = m.indices();
      for (std::size_t i = 0; i < idx.size(); ++i) os << (i ? "," : "") << idx[i];
      os << "\n";
    }
    write_text(csv, os.str());
    manifest.add_output(csv);
    manifest.write(fs::path(g.out) / "witnesses.manifest.json");
    doc["witnesses_path"] = csv.string();
  }
  emit(doc);
  return report.certified ? kOk : kCheckFailed;
}

// solve / sweep ----------------------------------------------------------

int run_solve(const Globals& g, int n, int k) {
  SolverOptions options;
  options.workers = g.workers;
  if (g.budget > 0) options.budget = g.budget;
  const auto r = exact_A(n, k, options);
  json minimal = json::array();
  for (const auto& m : r.optimal_family.minimal_elements) minimal.push_back(subset_json(m));
  json doc{{"n", r.n},
           {"k", r.k},
           {"A", to_string(r.A_value)},
           {"target", to_string(binomial(n - 1, k - 1))},
           {"exact", r.exact},
           {"optimal_config", r.optimal_config ? rational_list(*r.optimal_config) : json(nullptr)},
           {"minimal_elements", minimal},
           {"nodes", r.nodes_explored},
           {"lp_solved", r.lp_solved},
           {"certificates_reused", r.certificates_reused}};
  emit(doc);
  return kOk;
}

int run_sweep(const Globals& g, int k, int n_lo, int n_hi) {
  SweepOptions options;
  options.seed = g.seed;
  options.solver.workers = g.workers;
  options.search.workers = g.workers;
  if (g.budget > 0) options.solver.budget = g.budget;
  const auto rows = verify_conjecture_range(n_lo, n_hi, k, options);
  if (g.format == "json") {
    json arr = json::array();
    for (const auto& r : rows) {
      arr.push_back({{"n", r.n},
                     {"k", r.k},
                     {"target", to_string(r.target)},
                     {"lower", to_string(r.lower)},
                     {"upper", to_string(r.upper)},
                     {"exact", r.exact_value ? json(to_string(*r.exact_value)) : json(nullptr)},
                     {"verdict", to_string(r.verdict)},
                     {"method", r.method}});
    }
    emit(arr);
  } else {
    std::cout << "n,k,target,lower,upper,exact,verdict,method\n";
    for (const auto& r : rows) {
      std::cout << r.n << "," << r.k << "," << r.target << "," << r.lower << "," << r.upper << ","
                << (r.exact_value ? to_string(*r.exact_value) : "") << "," << to_string(r.verdict) << "," << r.method
                << "\n";
    }
  }
  return kOk;
}

// check ------------------------------------------------------------------

std::map<std::string, std::string> parse_params(const std::vector<std::string>& raw) {
  std::map<std::string, std::string> out;
  for (const auto& p : raw) {
    const auto eq = p.find('=');
    if (eq == std::string::npos || eq == 0) throw UsageError("parameter '" + p + "' is not key=value");
    out[p.substr(0, eq)] = p.substr(eq + 1);
  }
  return out;
}

const std::string& need(const std::map<std::string, std::string>& params, const std::string& key) {
  const auto it = params.find(key);
  if (it == params.end()) throw UsageError("missing parameter " + key);
  return it->second;
}

long need_long(const std::map<std::string, std::string>& params, const std::string& key) {
  const auto& text = need(params, key);
  try {
    std::size_t used = 0;
    const long v = std::stol(text, &used);
    if (used != text.size()) throw std::invalid_argument(text);
    return v;
  } catch (const std::logic_error&) {
    throw UsageError("parameter " + key + " is not an integer: " + text);
  }
}

BigInt need_big(const std::map<std::string, std::string>& params, const std::string& key) {
  const auto& text = need(params, key);
  BigInt v;
  if (v.set_str(text, 10) != 0) throw UsageError("parameter " + key + " is not an integer: " + text);
  return v;
}

int run_check(const std::string& inequality, const std::vector<std::string>& raw, const std::string& suite, int k,
              long n, int workers) {
  if (!suite.empty()) {
    if (k <= 0 || n <= 0) throw UsageError("--suite needs --k and --n");
    std::vector<BoundReport> reports;
    if (suite == "thm1") {
      reports = thm1_suite(k, BigInt(n));
    } else if (suite == "thm2") {
      reports = thm2_suite(k, n, workers);
    } else {
      throw UsageError("unknown suite " + suite);
    }
    bool ok = true;
    json arr = json::array();
    for (const auto& r : reports) {
      ok = ok && r.holds;
      for (const auto& s : r.steps) ok = ok && s.holds;
      arr.push_back(bound_json(r));
    }
    emit(json{{"suite", suite}, {"k", k}, {"n", std::to_string(n)}, {"all_hold", ok}, {"reports", arr}});
    return ok ? kOk : kCheckFailed;
  }

  const auto params = parse_params(raw);
  if (inequality == "f_bound") {
    const auto v = f_bound_values(static_cast<int>(need_long(params, "k")));
    emit(json{{"k", v.k},
              {"old_bound", to_string(v.old_bound)},
              {"new_bound_lo", to_string(v.new_bound.lo())},
              {"new_bound_hi", to_string(v.new_bound.hi())},
              {"new_bound_float_approx", v.new_bound_float},
              {"comparison", v.comparison}});
    return kOk;
  }
  if (inequality == "crossover") {
    const auto c = f_bound_crossover(static_cast<int>(need_long(params, "k_max")));
    emit(json{{"crossover_k", c ? json(*c) : json(nullptr)}});
    return kOk;
  }
  if (inequality == "propagate") {
    std::set<int> verified;
    std::stringstream ss(need(params, "verified"));
    for (std::string item; std::getline(ss, item, ',');) verified.insert(std::stoi(item));
    const auto r = propagate_equality(verified, static_cast<int>(need_long(params, "k")),
                                      static_cast<int>(need_long(params, "n_max")));
    auto opt = [](const auto& o) { return o ? json(*o) : json(nullptr); };
    emit(json{{"closure", r.closure},
              {"coprime_seed", opt(r.coprime_seed)},
              {"f_upper_ge_reading", opt(r.f_upper_ge_reading)},
              {"f_upper_gt_reading", opt(r.f_upper_gt_reading)}});
    return kOk;
  }

  BoundReport r;
  if (inequality == "thm1_threshold") {
    r = thm1_threshold_check(need_big(params, "n"), static_cast<int>(need_long(params, "k")));
  } else if (inequality == "thm2_stage") {
    r = thm2_stage_check(need_big(params, "n"), static_cast<int>(need_long(params, "k")),
                         static_cast<int>(need_long(params, "p")));
  } else if (inequality == "unimodal_gap_lb") {
    r = unimodal_gap_lb(parse_rational(need(params, "p")), parse_rational(need(params, "q")),
                        static_cast<int>(need_long(params, "m")));
  } else if (inequality == "thm2_p1_binomial") {
    r = thm2_p1_binomial_check(need_long(params, "n"), static_cast<int>(need_long(params, "k")));
  } else if (inequality == "stage_binomial") {
    r = stage_binomial_check(need_long(params, "n"), static_cast<int>(need_long(params, "k")),
                             static_cast<int>(need_long(params, "p")));
  } else if (inequality == "few_negatives") {
    r = few_negatives_check(need_long(params, "n"), static_cast<int>(need_long(params, "k")));
  } else if (inequality == "two_range_count") {
    r = two_range_count_check(need_long(params, "n"), static_cast<int>(need_long(params, "k")));
  } else {
    throw UsageError("unknown inequality '" + inequality + "'");
  }
  emit(bound_json(r));
  return r.holds ? kOk : kCheckFailed;
}

// reproduce --------------------------------------------------------------

int run_reproduce(const Globals& g) {
  RunManifest manifest(g);
  ReproduceOptions options;
  options.seed = g.seed;
  options.workers = g.workers;
  const auto report = reproduce_paper(options);
  const fs::path dir = fs::path(g.out) / "report";
  const fs::path path = dir / "paper.json";
  write_text(path, report.to_json());
  manifest.add_output(path);
  manifest.write(dir / "manifest.json");
  for (const auto& c : report.checks) {
    std::cout << (c.passed ? "PASS " : "FAIL ") << c.id << "  " << c.lhs << " vs " << c.rhs << "\n";
  }
  if (!report.all_passed()) {
    std::cerr << "failing checks:";
    for (const auto& id : report.failing_ids()) std::cerr << " " << id;
    std::cerr << "\n";
    return kCheckFailed;
  }
  std::cout << report.checks.size() << " checks passed; report at " << path.string() << "\n";
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  Globals g;
  for (int i = 0; i < argc; ++i) g.command_line += (i ? " " : "") + std::string(argv[i]);
  if (const char* env = std::getenv("MMS_SEED")) {
    try {
      g.seed = std::stoull(env);
    } catch (const std::logic_error&) {
      std::cerr << "MMS_SEED is not an unsigned integer: " << env << "\n";
      return kUsage;
    }
  }

  CLI::App app{"Exact and certifying computations for non-negative k-sums"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--seed", g.seed, "random seed (default 0, or MMS_SEED)");
  app.add_option("--workers", g.workers, "worker threads (0: all cores)")->check(CLI::NonNegativeNumber);
  app.add_option("--budget", g.budget, "enumeration / search budget")->check(CLI::NonNegativeNumber);
  app.add_option("--out", g.out, "output directory");
  auto* format_opt = app.add_option("--format", g.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  app.set_version_flag("--version", kVersion);

  ConstructArgs construct;
  auto* c_cmd = app.add_subcommand("construct", "write a named configuration and its JSON sidecar");
  c_cmd->add_option("--name", construct.name, "star | mirror | counterexample")->required();
  c_cmd->add_option("--n", construct.n);
  c_cmd->add_option("--k", construct.k)->required();

  int bn = 0, bk = 0;
  std::string validate_path;
  auto* b_cmd = app.add_subcommand("baranyai", "partition [n]^(k) into parallel classes");
  b_cmd->add_option("--n", bn);
  b_cmd->add_option("--k", bk);
  b_cmd->add_option("--validate", validate_path, "re-check a partition JSON file");

  WitnessArgs witness;
  auto* w_cmd = app.add_subcommand("witness", "extract and certify non-negative k-sets");
  w_cmd->add_option("--theorem", witness.theorem)->required();
  w_cmd->add_option("--config", witness.config)->required();
  w_cmd->add_option("--k", witness.k)->required();
  w_cmd->add_option("--mode", witness.mode)->check(CLI::IsMember({"auto", "explicit", "counted"}));
  w_cmd->add_option("--sample", witness.sample);
  w_cmd->add_option("--partition-seed", witness.partition_seed);

  int sn = 0, sk = 0;
  auto* s_cmd = app.add_subcommand("solve", "exact A(n, k)");
  s_cmd->add_option("--n", sn)->required();
  s_cmd->add_option("--k", sk)->required();

  int wk = 0, n_lo = 0, n_hi = 0;
  auto* sw_cmd = app.add_subcommand("sweep", "bounds on A(n, k) over a range of n");
  sw_cmd->add_option("--k", wk)->required();
  sw_cmd->add_option("--n-lo", n_lo)->required();
  sw_cmd->add_option("--n-hi", n_hi)->required();

  std::string inequality, suite;
  std::vector<std::string> params;
  int ck = 0;
  long cn = 0;
  auto* k_cmd = app.add_subcommand("check", "exact verdicts on the inequality chains");
  k_cmd->add_option("--inequality", inequality);
  k_cmd->add_option("--params", params);
  k_cmd->add_option("--suite", suite);
  k_cmd->add_option("--k", ck);
  k_cmd->add_option("--n", cn);

  auto* r_cmd = app.add_subcommand("reproduce", "run every reproduction check and write report/paper.json");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  }
  if (sw_cmd->parsed() && format_opt->count() == 0) g.format = "csv";

  try {
    if (c_cmd->parsed()) return run_construct(g, construct);
    if (b_cmd->parsed()) return run_baranyai(g, bn, bk, validate_path);
    if (w_cmd->parsed()) return run_witness(g, witness);
    if (s_cmd->parsed()) return run_solve(g, sn, sk);
    if (sw_cmd->parsed()) return run_sweep(g, wk, n_lo, n_hi);
    if (k_cmd->parsed()) {
      if (inequality.empty() == suite.empty()) throw UsageError("check needs exactly one of --inequality or --suite");
      return run_check(inequality, params, suite, ck, cn, g.workers);
    }
    if (r_cmd->parsed()) return run_reproduce(g);
  } catch (const ParseError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kInputParse;
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const RangeInfeasible& e) {
    std::cerr << "range infeasible: " << e.what() << "\n";
    return kCheckFailed;
  } catch (const BudgetExceeded& e) {
    std::cerr << "budget exceeded: " << e.what() << "\n";
    return kCheckFailed;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::out_of_range& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
