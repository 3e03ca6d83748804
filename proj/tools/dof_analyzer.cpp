#include <CLI11.hpp>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include "dof/chain.hpp"
#include "dof/closed_form.hpp"
#include "dof/fourier_motzkin.hpp"
#include "dof/oracle.hpp"
#include "dof/proper.hpp"
#include "dof/report.hpp"

using namespace dof;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInput = 2;
constexpr int kExitInternal = 3;

// Invalid user input; maps to exit code 2.
struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Two engines disagree; maps to exit code 3.
struct InconsistencyError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string config_path;
  std::string streams;
  std::string mode = "info";
  std::size_t guard = 20;
  std::size_t chain_budget = 100000;
  std::uint64_t seed = 0;
  int restarts = 5;
  unsigned jobs = 0;
  std::string enumeration = "exhaustive";
  int chain_depth = 2;
  std::string chain_side;
  std::vector<std::string> chain_patterns;
  std::string method = "both";
  std::string vary;
  int from = 1;
  int to = 0;
  std::string out;
  std::string engine = "closedform";
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read config file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Writes through a temporary file in the same directory, then renames.
void write_atomic(const std::string& path, const std::string& text) {
  const std::filesystem::path target(path);
  std::filesystem::path tmp = target;
  tmp += ".tmp" + std::to_string(std::hash<std::thread::id>{}(std::this_thread::get_id()) % 100000);
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw InputError("cannot write '" + path + "'");
    out << text;
    out.flush();
    if (!out) throw InputError("cannot write '" + path + "'");
  }
  std::error_code ec;
  std::filesystem::rename(tmp, target, ec);
  if (ec) {
    std::filesystem::remove(tmp);
    throw InputError("cannot write '" + path + "': " + ec.message());
  }
}

unsigned resolve_jobs(unsigned flag) {
  if (flag > 0) return flag;
  if (const char* env = std::getenv("DOF_ANALYZER_JOBS")) {
    try {
      const int v = std::stoi(env);
      if (v > 0) return static_cast<unsigned>(v);
    } catch (const std::exception&) {
    }
    throw InputError("DOF_ANALYZER_JOBS must be a positive integer");
  }
  return 1;
}

ChainSettings chain_settings(const Options& o) {
  ChainSettings s;
  s.jobs = resolve_jobs(o.jobs);
  s.enumeration.budget = o.chain_budget;
  s.enumeration.guard = o.guard;
  s.enumeration.depth = o.chain_depth;
  if (o.enumeration == "induced") {
    s.enumeration.mode = EnumerationMode::kInduced;
  } else if (o.enumeration == "exhaustive") {
    s.enumeration.mode = EnumerationMode::kExhaustive;
  } else {
    throw InputError("--enum must be 'induced' or 'exhaustive'");
  }
  if (!o.chain_side.empty()) {
    if (o.chain_side == "A") {
      s.enumeration.side = ChainSide::kA;
    } else if (o.chain_side == "B") {
      s.enumeration.side = ChainSide::kB;
    } else {
      throw InputError("--chain-side must be 'A' or 'B'");
    }
  }
  return s;
}

ProperOptions proper_options(const Options& o) {
  ProperOptions p;
  p.guard = o.guard;
  return p;
}

Json settings_json(const Options& o, const ChainSettings& s) {
  Json out;
  out["enum"] = to_string(s.enumeration.mode);
  out["chain_depth"] = s.enumeration.depth;
  out["chain_budget"] = s.enumeration.budget;
  out["guard"] = o.guard;
  return out;
}

ParsedConfig load(const Options& o) { return parse_config(read_file(o.config_path)); }

StreamAllocation streams_of(const Options& o, const ParsedConfig& pc) {
  if (!o.streams.empty()) return parse_stream_list(o.streams, pc.config);
  if (pc.streams) return *pc.streams;
  throw InputError("no stream allocation: give --streams or per-user \"streams\" in the config");
}

// "(1_1,2),(1_2,2)" -> pattern over J.
ConnectionPattern parse_pattern(const std::string& text, const InterferencePairSet& pairs) {
  std::uint64_t mask = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    if (text[pos] == ' ' || text[pos] == ',') {
      ++pos;
      continue;
    }
    const std::size_t close = text.find(')', pos);
    if (text[pos] != '(' || close == std::string::npos) throw InputError("bad pattern '" + text + "'");
    const std::string body = text.substr(pos + 1, close - pos - 1);
    unsigned cell = 0, user = 0, bs = 0;
    char tail = 0;
    if (std::sscanf(body.c_str(), "%u_%u,%u%c", &cell, &user, &bs, &tail) != 3 || cell == 0 || user == 0 ||
        bs == 0) {
      throw InputError("bad pair '(" + body + ")'; expected (i_k,j)");
    }
    const auto idx = pairs.index_of(InterferencePair{UserId{cell - 1, user - 1}, BsId{bs - 1}});
    if (!idx) throw InputError("pair (" + body + ") is not an interference pair of this config");
    mask |= std::uint64_t{1} << *idx;
    pos = close + 1;
  }
  if (mask == 0) throw InputError("empty pattern");
  return ConnectionPattern(mask);
}

int cmd_analyze(const Options& o) {
  const auto pc = load(o);
  const auto alloc = streams_of(o, pc);
  const auto s = chain_settings(o);
  const auto c = classify_allocation(pc.config, alloc, s, proper_options(o));
  Json doc = report_header("analyze");
  doc["config"] = config_json(pc.config, &alloc);
  doc["settings"] = settings_json(o, s);
  doc["classification"] = to_string(c.label);
  doc["proper"] = proper_json(c.proper, interference_pair_set(pc.config));
  doc["irreducible"] = irreducible_json(c.irreducible, pc.config);
  doc["flags"] = {{"truncated", c.irreducible.truncated}, {"inconclusive", false}};
  std::cout << render(doc);
  return kExitOk;
}

int cmd_maxdof(const Options& o) {
  const auto pc = load(o);
  MaxDofMode mode;
  if (o.mode == "info") {
    mode = MaxDofMode::kInfo;
  } else if (o.mode == "linear") {
    mode = MaxDofMode::kLinear;
  } else {
    throw InputError("--mode must be 'info' or 'linear'");
  }
  const auto s = chain_settings(o);
  const auto r = max_equal_d(pc.config, mode, s, proper_options(o));
  Json doc = report_header("maxdof");
  doc["config"] = config_json(pc.config);
  doc["settings"] = settings_json(o, s);
  doc["result"] = max_dof_json(r, pc.config);
  std::optional<TwoCellClassConfig> cls;
  try {
    cls = TwoCellClassConfig::from(pc.config);
  } catch (const ConfigError&) {
  }
  if (cls) {
    const auto cf = closed_form(*cls);
    const Rational expect = mode == MaxDofMode::kInfo ? cf.d_info : cf.d_linear;
    doc["closed_form"] = closed_form_json(cf);
    doc["agreement"] = r.value == ExtendedRational(expect);
    if (!r.truncated && !(r.value == ExtendedRational(expect))) {
      std::cout << render(doc);
      throw InconsistencyError("closed form gives " + to_string(expect) + " but the chain engine gives " +
                               to_string(r.value));
    }
  } else {
    doc["closed_form"] = nullptr;
  }
  doc["flags"] = {{"truncated", r.truncated}, {"inconclusive", false}};
  std::cout << render(doc);
  return kExitOk;
}

int cmd_region(const Options& o) {
  const auto pc = load(o);
  RegionMode mode;
  if (o.mode == "info") {
    mode = RegionMode::kInfo;
  } else if (o.mode == "linear" || o.mode == "linear-info") {
    mode = RegionMode::kLinearInfo;
  } else {
    throw InputError("--mode must be 'info' or 'linear'");
  }
  Json doc = report_header("region");
  doc["config"] = config_json(pc.config);
  if (!o.chain_patterns.empty()) {
    const auto pairs = interference_pair_set(pc.config);
    PatternChain chain;
    chain.side = o.chain_side == "B" ? ChainSide::kB : ChainSide::kA;
    if (!o.chain_side.empty() && o.chain_side != "A" && o.chain_side != "B") {
      throw InputError("--chain-side must be 'A' or 'B'");
    }
    for (const auto& p : o.chain_patterns) chain.patterns.push_back(parse_pattern(p, pairs));
    try {
      chain.check_nesting();
    } catch (const NestingError& e) {
      throw InputError(e.what());
    }
    doc["chain"] = chain_json(chain, pairs);
    doc["subspaces"] = subspace_json(subspace_dims(pc.config, pairs, chain), pc.config, pairs);
    const auto region = chain_region(pc.config, chain);
    doc["region"] = region.to_json();
    doc["flags"] = {{"truncated", false}, {"inconclusive", false}};
  } else {
    const auto s = chain_settings(o);
    const auto r = dof_region(pc.config, mode, s);
    doc["settings"] = settings_json(o, s);
    doc["result"] = region_json(r);
    doc["flags"] = {{"truncated", r.truncated}, {"inconclusive", false}};
  }
  std::cout << render(doc);
  return kExitOk;
}

int cmd_closedform(const Options& o) {
  const auto pc = load(o);
  const auto cls = TwoCellClassConfig::from(pc.config);
  Json doc = report_header("closedform");
  doc["config"] = config_json(pc.config);
  doc["result"] = closed_form_json(closed_form(cls));
  std::cout << render(doc);
  return kExitOk;
}

int cmd_verify(const Options& o) {
  const auto pc = load(o);
  const auto alloc = streams_of(o, pc);
  VerifySettings vs;
  vs.seed = o.seed;
  vs.leakage.restarts = o.restarts;
  if (o.restarts < 1) throw InputError("--restarts must be at least 1");
  Json doc = report_header("verify");
  doc["config"] = config_json(pc.config, &alloc);
  doc["method"] = o.method;
  if (o.method == "both" || o.method == "jacobian") {
    vs.run_leakage = o.method == "both";
    const auto v = verify(pc.config, alloc, vs);
    doc["verdict"] = oracle_json(v, vs);
    doc["flags"] = {{"truncated", false}, {"inconclusive", v.status == OracleStatus::kInconclusive}};
  } else if (o.method == "leakage") {
    OracleVerdict v;
    vs.leakage.seed = derive_seed(vs.seed, 1000);
    v.jacobian.seed = vs.seed;
    v.jacobian.reason = "not run";
    v.leakage = leakage_minimization(pc.config, sample_channels(pc.config, vs.seed), alloc, vs.leakage);
    v.status = v.leakage->status;
    doc["verdict"] = oracle_json(v, vs);
    doc["verdict"]["jacobian"] = nullptr;
    doc["flags"] = {{"truncated", false}, {"inconclusive", v.status == OracleStatus::kInconclusive}};
  } else {
    throw InputError("--method must be 'both', 'jacobian' or 'leakage'");
  }
  std::cout << render(doc);
  return kExitOk;
}

int cmd_sweep(const Options& o) {
  const auto pc = load(o);
  TwoCellClassConfig base = TwoCellClassConfig::from(pc.config);
  if (o.vary.size() != 3 || o.vary[1] != '_' || (o.vary[2] != '1' && o.vary[2] != '2') ||
      (o.vary[0] != 'M' && o.vary[0] != 'N' && o.vary[0] != 'K')) {
    throw InputError("--vary must be one of M_1, M_2, N_1, N_2, K_1, K_2");
  }
  if (o.from < 1) throw InputError("--from must be a positive integer");
  if (o.engine != "closedform" && o.engine != "chain") throw InputError("--engine must be 'closedform' or 'chain'");
  const std::size_t idx = o.vary[2] == '1' ? 0 : 1;
  const auto s = chain_settings(o);
  ChainSettings cs = s;
  cs.cache = std::make_shared<ComponentCache>();

  std::ostringstream csv;
  csv << o.vary << ",ratio_2_over_1,ratio_1_over_2,region_1_2,region_2_1,d_info,d_linear\n";
  for (int v = o.from; v <= o.to; ++v) {
    TwoCellClassConfig cfg = base;
    auto& field = o.vary[0] == 'M' ? cfg.m : (o.vary[0] == 'N' ? cfg.n : cfg.k);
    field[idx] = v;
    const auto cf = closed_form(cfg);
    Rational info = cf.d_info;
    Rational linear = cf.d_linear;
    if (o.engine == "chain") {
      const auto r = max_equal_d(cfg.to_config(), MaxDofMode::kLinear, cs, proper_options(o));
      if (!r.info.is_finite() || !r.value.is_finite()) throw InconsistencyError("unbounded chain-engine value");
      if (!r.truncated && (r.info.value() != info || r.value.value() != linear)) {
        throw InconsistencyError("closed form and chain engine disagree at " + o.vary + " = " + std::to_string(v));
      }
      info = r.info.value();
      linear = r.value.value();
    }
    // pairs[0] is (1,2): users of cell 1 against BS 2, ratio M_2/N_1.
    csv << v << ',' << to_string(cf.pairs[0].ratio) << ',' << to_string(cf.pairs[1].ratio) << ','
        << to_string(cf.pairs[0].region) << ',' << to_string(cf.pairs[1].region) << ',' << to_string(info) << ','
        << to_string(linear) << '\n';
  }
  if (o.out.empty()) {
    std::cout << csv.str();
  } else {
    write_atomic(o.out, csv.str());
  }
  return kExitOk;
}

void add_common(CLI::App* sub, Options& o) {
  sub->add_option("config", o.config_path, "configuration JSON")->required();
  sub->add_option("--guard", o.guard, "refuse subset or chain enumeration when |J| exceeds this")
      ->capture_default_str();
  sub->add_option("--chain-budget", o.chain_budget, "maximum number of chains")->capture_default_str();
  sub->add_option("--jobs", o.jobs, "worker threads (default: $DOF_ANALYZER_JOBS or 1)");
  sub->add_option("--enum", o.enumeration, "chain enumeration: induced or exhaustive")->capture_default_str();
  sub->add_option("--chain-depth", o.chain_depth, "steps over which exhaustive chains may shrink")
      ->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"DoF bounds and IA feasibility analysis for MIMO interference broadcast channels"};
  app.require_subcommand(1);
  Options o;

  auto* analyze = app.add_subcommand("analyze", "classify a stream allocation (proper / irreducible)");
  add_common(analyze, o);
  analyze->add_option("--streams", o.streams, "per-user streams, cells separated by ';', users by ','");

  auto* maxdof = app.add_subcommand("maxdof", "largest equal per-user DoF");
  add_common(maxdof, o);
  maxdof->add_option("--mode", o.mode, "info or linear")->capture_default_str();

  auto* region = app.add_subcommand("region", "outer bound on the DoF region");
  add_common(region, o);
  region->add_option("--mode", o.mode, "info or linear")->capture_default_str();
  region->add_option("--chain-side", o.chain_side, "restrict to chain side A or B");
  region->add_option("--chain-pattern", o.chain_patterns,
                     "one chain only: its patterns in order, e.g. \"(1_1,2),(1_2,2)\"; repeat per step");

  auto* closedform = app.add_subcommand("closedform", "two-cell closed-form bounds");
  closedform->add_option("config", o.config_path, "configuration JSON")->required();

  auto* verifyc = app.add_subcommand("verify", "numerical feasibility check on random channels");
  verifyc->add_option("config", o.config_path, "configuration JSON")->required();
  verifyc->add_option("--streams", o.streams, "per-user streams, cells separated by ';', users by ','");
  verifyc->add_option("--seed", o.seed, "random seed")->capture_default_str();
  verifyc->add_option("--restarts", o.restarts, "leakage-minimization restarts")->capture_default_str();
  verifyc->add_option("--method", o.method, "both, jacobian or leakage")->capture_default_str();

  auto* sweep = app.add_subcommand("sweep", "CSV of two-cell bounds over one parameter");
  add_common(sweep, o);
  sweep->add_option("--vary", o.vary, "M_1, M_2, N_1, N_2, K_1 or K_2")->required();
  sweep->add_option("--from", o.from, "first value")->required();
  sweep->add_option("--to", o.to, "last value (below --from gives an empty table)")->required();
  sweep->add_option("--out", o.out, "CSV path (stdout when absent)");
  sweep->add_option("--engine", o.engine, "closedform or chain")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInput;
  }

  try {
    if (*analyze) return cmd_analyze(o);
    if (*maxdof) return cmd_maxdof(o);
    if (*region) return cmd_region(o);
    if (*closedform) return cmd_closedform(o);
    if (*verifyc) return cmd_verify(o);
    if (*sweep) return cmd_sweep(o);
  } catch (const InconsistencyError& e) {
    std::cerr << "internal inconsistency: " << e.what() << "\n";
    return kExitInternal;
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const ConfigError& e) {
    std::cerr << "invalid config: " << e.what() << "\n";
    return kExitInput;
  } catch (const GuardError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "invalid config: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }
  return kExitInternal;
}
