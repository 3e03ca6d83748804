#include "dof/report.hpp"

namespace dof {

Json report_header(const std::string& command) {
  Json doc;
  doc["schema"] = kReportSchemaVersion;
  doc["command"] = command;
  return doc;
}

Json config_json(const NetworkConfig& config, const StreamAllocation* streams) {
  return Json::parse(serialize_config(config, streams));
}

Json rational_json(const Rational& value) { return to_string(value); }
Json rational_json(const ExtendedRational& value) { return to_string(value); }

Json pattern_json(const ConnectionPattern& pattern, const InterferencePairSet& pairs) {
  Json out = Json::array();
  for (std::size_t p : pattern.indices()) out.push_back(pairs[p].label());
  return out;
}

Json chain_json(const PatternChain& chain, const InterferencePairSet& pairs) {
  Json out;
  out["side"] = to_string(chain.side);
  out["class"] = to_string(classify_chain(chain, pairs));
  Json patterns = Json::array();
  for (const auto& p : chain.patterns) patterns.push_back(pattern_json(p, pairs));
  out["patterns"] = std::move(patterns);
  return out;
}

Json subspace_json(const SubspaceChainState& state, const NetworkConfig& config, const InterferencePairSet& pairs) {
  Json out;
  out["side"] = to_string(state.side);
  out["last_step"] = state.last_step;
  out["n_max"] = state.n_max;
  out["terminated"] = state.terminated;
  Json eff = Json::array();
  for (const auto& p : state.effective) eff.push_back(pattern_json(p, pairs));
  out["effective_patterns"] = std::move(eff);
  Json dims = Json::array();
  for (const auto& e : state.entries) {
    Json d;
    d["step"] = e.step;
    d["node"] = e.node.label(config);
    d["dim"] = e.dim;
    dims.push_back(std::move(d));
  }
  out["dims"] = std::move(dims);
  return out;
}

Json proper_json(const ProperVerdict& verdict, const InterferencePairSet& pairs) {
  Json out;
  out["proper"] = verdict.proper;
  out["subsets_checked"] = verdict.subsets_checked;
  out["violations"] = verdict.violations;
  out["min_slack"] = rational_json(verdict.min_slack);
  out["tightest_subset"] = pattern_json(verdict.tightest, pairs);
  Json vio = Json::array();
  for (const auto& s : verdict.violating_subsets) {
    Json v;
    v["subset"] = pattern_json(s.subset, pairs);
    v["slack"] = rational_json(s.slack);
    vio.push_back(std::move(v));
  }
  out["violating_subsets"] = std::move(vio);
  return out;
}

Json irreducible_json(const IrreducibleVerdict& verdict, const NetworkConfig& config) {
  const auto pairs = interference_pair_set(config);
  Json out;
  out["feasible"] = verdict.feasible;
  out["chains_checked"] = verdict.chains_checked;
  out["nonterminating_chains_skipped"] = verdict.nonterminating;
  out["truncated"] = verdict.truncated;
  if (verdict.truncated) out["scope"] = "necessary-conditions-checked-only";
  out["base_violated"] = verdict.base_violated;
  out["genie_dimensions"] = "rational";
  if (!verdict.feasible) {
    Json w;
    if (verdict.failing_chain) w["chain"] = chain_json(*verdict.failing_chain, pairs);
    if (verdict.failing_state) w["subspaces"] = subspace_json(*verdict.failing_state, config, pairs);
    w["system"] = verdict.failing_system.constraint_strings();
    Json cert = Json::array();
    for (const auto& c : verdict.certificate) cert.push_back(rational_json(c));
    w["certificate"] = std::move(cert);
    w["certificate_text"] = verdict.certificate_text;
    out["witness"] = std::move(w);
  }
  return out;
}

Json classification_json(const Classification& c, const NetworkConfig& config) {
  Json out;
  out["classification"] = to_string(c.label);
  out["proper"] = proper_json(c.proper, interference_pair_set(config));
  out["irreducible"] = irreducible_json(c.irreducible, config);
  return out;
}

Json max_dof_json(const MaxDofResult& result, const NetworkConfig& config) {
  Json out;
  out["mode"] = to_string(result.mode);
  out["value"] = rational_json(result.value);
  out["info"] = rational_json(result.info);
  if (result.proper) out["proper"] = rational_json(*result.proper);
  out["chains"] = result.chains;
  out["nonterminating_chains_skipped"] = result.nonterminating;
  out["truncated"] = result.truncated;
  if (result.binding_chain) {
    out["binding_chain"] = chain_json(*result.binding_chain, interference_pair_set(config));
  } else {
    out["binding_chain"] = nullptr;
  }
  return out;
}

Json region_json(const RegionResult& result) {
  Json out;
  out["mode"] = to_string(result.mode);
  out["chains"] = result.chains;
  out["nonterminating_chains_skipped"] = result.nonterminating;
  out["truncated"] = result.truncated;
  out["note"] = result.note;
  out["region"] = result.region.to_json();
  return out;
}

namespace {

Json pair_json(const PairBounds& p) {
  Json out;
  out["pair"] = "(" + std::to_string(p.i + 1) + "," + std::to_string(p.j + 1) + ")";
  out["ratio"] = rational_json(p.ratio);
  out["region"] = to_string(p.region);
  out["d_decom"] = rational_json(p.decom);
  if (p.quan) {
    Json q;
    q["value"] = rational_json(p.quan->value);
    q["limit_form"] = p.quan->limit_form;
    Json branches = Json::array();
    for (const auto& b : p.quan->branches) {
      Json bj;
      bj["side"] = to_string(b.side);
      bj["n"] = b.n;
      bj["value"] = rational_json(b.value);
      branches.push_back(std::move(bj));
    }
    q["branches"] = std::move(branches);
    out["d_quan"] = std::move(q);
  } else {
    out["d_quan"] = nullptr;
  }
  out["d_prop"] = rational_json(p.prop);
  out["d_info"] = rational_json(p.info);
  out["d_linear"] = rational_json(p.linear);
  return out;
}

}  // namespace

Json closed_form_json(const ClosedFormReport& report) {
  Json out;
  Json pairs = Json::array();
  for (const auto& p : report.pairs) pairs.push_back(pair_json(p));
  out["pairs"] = std::move(pairs);
  out["d_info"] = rational_json(report.d_info);
  out["d_linear"] = rational_json(report.d_linear);
  return out;
}

Json oracle_json(const OracleVerdict& verdict, const VerifySettings& settings) {
  Json out;
  out["status"] = to_string(verdict.status);
  out["disagreement"] = verdict.disagreement;
  Json s;
  s["seed"] = settings.seed;
  s["resamples"] = settings.jacobian.resamples;
  s["rank_rel_tol"] = settings.jacobian.rank_rel_tol;
  s["desired_sv_tol"] = settings.jacobian.desired_sv_tol;
  s["restarts"] = settings.leakage.restarts;
  s["max_iters"] = settings.leakage.max_iters;
  s["leakage_tol"] = settings.leakage.tol;
  s["feasible_below"] = settings.leakage.feasible_below;
  s["infeasible_above"] = settings.leakage.infeasible_above;
  out["settings"] = std::move(s);

  const auto& j = verdict.jacobian;
  Json jj;
  jj["method"] = "jacobian";
  jj["status"] = to_string(j.status);
  jj["seed"] = j.seed;
  jj["equations"] = j.equations;
  jj["variables"] = j.variables;
  jj["required_rank"] = j.equations;
  jj["ranks"] = j.ranks;
  jj["min_desired_sv"] = j.min_desired_sv;
  jj["reason"] = j.reason;
  out["jacobian"] = std::move(jj);

  if (verdict.leakage) {
    const auto& l = *verdict.leakage;
    Json lj;
    lj["method"] = "leakage";
    lj["status"] = to_string(l.status);
    lj["normalized_leakage"] = l.normalized_leakage;
    lj["inconclusive_flag"] = l.inconclusive_flag;
    Json runs = Json::array();
    for (const auto& r : l.runs) {
      Json rj;
      rj["seed"] = r.seed;
      rj["iterations"] = r.iterations;
      rj["converged"] = r.converged;
      rj["first"] = r.first;
      rj["last"] = r.last;
      rj["min"] = r.min;
      rj["monotonicity_violations"] = r.monotonicity_violations;
      rj["max_orthonormality_error"] = r.max_orthonormality_error;
      runs.push_back(std::move(rj));
    }
    lj["runs"] = std::move(runs);
    out["leakage"] = std::move(lj);
  } else {
    out["leakage"] = nullptr;
  }
  return out;
}

std::string render(const Json& doc) { return doc.dump(2) + "\n"; }

}  // namespace dof
