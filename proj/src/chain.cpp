#include "dof/chain.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "dof/fourier_motzkin.hpp"
#include "dof/lp.hpp"
#include "parallel.hpp"

namespace dof {

std::optional<ExtendedRational> ComponentCache::find(const std::string& key) const {
  std::lock_guard<std::mutex> lock(mu_);
  auto it = map_.find(key);
  if (it == map_.end()) return std::nullopt;
  ++hits_;
  return it->second;
}

void ComponentCache::store(const std::string& key, const ExtendedRational& value) {
  std::lock_guard<std::mutex> lock(mu_);
  map_.emplace(key, value);
}

std::size_t ComponentCache::size() const {
  std::lock_guard<std::mutex> lock(mu_);
  return map_.size();
}

std::size_t ComponentCache::hits() const {
  std::lock_guard<std::mutex> lock(mu_);
  return hits_;
}

const char* to_string(RegionMode mode) { return mode == RegionMode::kInfo ? "info" : "linear-info"; }
const char* to_string(MaxDofMode mode) { return mode == MaxDofMode::kInfo ? "info" : "linear"; }

const char* to_string(AllocationClass c) {
  switch (c) {
    case AllocationClass::kImproper: return "improper";
    case AllocationClass::kProperButIrreducibleInfeasible: return "proper-but-irreducible-infeasible";
    case AllocationClass::kPassesBoth: return "passes-both";
  }
  return "?";
}

namespace {

// Rows that share genie variables, directly or through other rows.
struct Component {
  std::vector<std::size_t> rows;
};

struct Split {
  std::vector<Component> components;
  std::vector<std::size_t> direct;  // rows without genie variables
};

Split split_components(const GenieSystem& g) {
  const std::size_t ns = g.num_stream_vars();
  std::vector<std::size_t> parent(g.genies.size());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const auto& row : g.rows) {
    std::size_t first = g.genies.size();
    for (std::size_t v = ns; v < row.a.size(); ++v) {
      if (row.a[v] == 0) continue;
      if (first == g.genies.size()) {
        first = find(v - ns);
      } else {
        parent[find(v - ns)] = first;
        first = find(first);
      }
    }
  }
  Split s;
  std::vector<long> comp_of_root(g.genies.size(), -1);
  for (std::size_t r = 0; r < g.rows.size(); ++r) {
    const auto& row = g.rows[r];
    std::size_t genie = g.genies.size();
    for (std::size_t v = ns; v < row.a.size(); ++v) {
      if (row.a[v] != 0) {
        genie = v - ns;
        break;
      }
    }
    if (genie == g.genies.size()) {
      s.direct.push_back(r);
      continue;
    }
    const std::size_t root = find(genie);
    if (comp_of_root[root] < 0) {
      comp_of_root[root] = static_cast<long>(s.components.size());
      s.components.emplace_back();
    }
    s.components[static_cast<std::size_t>(comp_of_root[root])].rows.push_back(r);
  }
  return s;
}

// Canonical text of a component and the system it induces over
// [stream variables..., component genies in order of appearance].
std::pair<std::string, LinearConstraintSystem> component_system(const GenieSystem& g, const Component& c) {
  const std::size_t ns = g.num_stream_vars();
  std::vector<long> renum(g.genies.size(), -1);
  std::size_t count = 0;
  std::ostringstream key;
  for (std::size_t r : c.rows) {
    const auto& row = g.rows[r];
    for (std::size_t v = 0; v < ns; ++v) key << row.a[v] << ",";
    for (std::size_t v = ns; v < row.a.size(); ++v) {
      if (row.a[v] == 0) continue;
      if (renum[v - ns] < 0) renum[v - ns] = static_cast<long>(count++);
      key << "g" << renum[v - ns] << ":" << row.a[v] << ",";
    }
    key << "<=" << row.b << ";";
  }
  LinearConstraintSystem sys;
  for (const auto& n : g.stream_names) sys.add_variable(n);
  std::vector<std::size_t> order(count);
  for (std::size_t i = 0; i < renum.size(); ++i) {
    if (renum[i] >= 0) order[static_cast<std::size_t>(renum[i])] = i;
  }
  for (std::size_t i : order) sys.add_variable(g.genies[i].name);
  for (std::size_t r : c.rows) {
    const auto& row = g.rows[r];
    std::vector<Rational> a(ns + count);
    for (std::size_t v = 0; v < ns; ++v) a[v] = make_rational(row.a[v]);
    for (std::size_t v = ns; v < row.a.size(); ++v) {
      if (row.a[v] != 0) a[ns + static_cast<std::size_t>(renum[v - ns])] = make_rational(row.a[v]);
    }
    sys.add(std::move(a), Relation::kLe, make_rational(row.b));
  }
  return {key.str(), std::move(sys)};
}

std::shared_ptr<ComponentCache> cache_for(const ChainSettings& settings) {
  return settings.cache ? settings.cache : std::make_shared<ComponentCache>();
}

// Fixed-allocation feasibility of one chain's system, component by component.
bool chain_feasible(const GenieSystem& g, ComponentCache& cache) {
  const Split s = split_components(g);
  for (std::size_t r : s.direct) {
    if (g.rows[r].b < 0) return false;
  }
  for (const auto& c : s.components) {
    auto [key, sys] = component_system(g, c);
    key = "F|" + key;
    if (auto hit = cache.find(key)) {
      if (hit->is_infinite()) continue;
      return false;
    }
    const bool ok = lp_feasible(sys).feasible;
    cache.store(key, ok ? ExtendedRational::infinity() : ExtendedRational(Rational(0)));
    if (!ok) return false;
  }
  return true;
}

ExtendedRational shared_max(const GenieSystem& g, ComponentCache* cache) {
  ExtendedRational best = ExtendedRational::infinity();
  const Split s = split_components(g);
  for (std::size_t r : s.direct) {
    const auto& row = g.rows[r];
    if (row.a[0] > 0) {
      best = min(best, ExtendedRational(make_rational(row.b, row.a[0])));
    } else if (row.b < 0) {
      throw std::logic_error("shared-d genie system excludes d = 0");
    }
  }
  for (const auto& c : s.components) {
    auto [key, sys] = component_system(g, c);
    key = "S|" + key;
    std::optional<ExtendedRational> value;
    if (cache) value = cache->find(key);
    if (!value) {
      const MaximizeResult m = maximize(sys, std::size_t{0});
      value = m.unbounded ? ExtendedRational::infinity() : ExtendedRational(m.value);
      if (cache) cache->store(key, *value);
    }
    best = min(best, *value);
  }
  return best;
}

ExtendedRational base_equal_d(const NetworkConfig& config) {
  ExtendedRational best = ExtendedRational::infinity();
  for (const auto& u : config.users()) best = min(best, ExtendedRational(make_rational(config.user_antennas(u))));
  for (std::size_t j = 0; j < config.num_cells(); ++j) {
    best = min(best, ExtendedRational(make_rational(config.bs_antennas(j),
                                                    static_cast<std::int64_t>(config.num_users(j)))));
  }
  return best;
}

}  // namespace

ExtendedRational chain_max_equal_d(const NetworkConfig& config, const SubspaceChainState& state,
                                   ComponentCache* cache) {
  return shared_max(build_genie_system(config, state, StreamModel::shared()), cache);
}

IrreducibleVerdict irreducible_check(const NetworkConfig& config, const StreamAllocation& alloc,
                                     const ChainSettings& settings) {
  alloc.check_matches(config);
  IrreducibleVerdict v;
  const StreamModel model = StreamModel::fixed(alloc);
  for (ChainSide side : {ChainSide::kA, ChainSide::kB}) {
    GenieSystem base = base_system(config, side, model);
    for (const auto& row : base.rows) {
      if (row.b < 0) {
        v.feasible = false;
        v.base_violated = true;
        v.failing_system = base.to_system();
        const auto f = lp_feasible(v.failing_system);
        v.certificate = f.certificate;
        v.certificate_text = f.certificate_text;
        return v;
      }
    }
  }
  const ChainEnumeration chains = enumerate_chains(config, settings.enumeration, scope_for_allocation(config, alloc));
  v.truncated = chains.truncated;
  v.nonterminating = chains.nonterminating;
  auto cache = cache_for(settings);
  std::vector<char> ok(chains.chains.size(), 1);
  detail::parallel_for(chains.chains.size(), settings.jobs, [&](std::size_t i) {
    ok[i] = chain_feasible(build_genie_system(config, chains.chains[i].state, model), *cache) ? 1 : 0;
    return ok[i] != 0;
  });
  for (std::size_t i = 0; i < chains.chains.size(); ++i) {
    ++v.chains_checked;
    if (ok[i]) continue;
    const auto& c = chains.chains[i];
    v.feasible = false;
    v.failing_chain = c.chain;
    v.failing_state = c.state;
    v.failing_system = build_genie_system(config, c.state, model).to_system();
    const auto f = lp_feasible(v.failing_system);
    if (f.feasible) throw std::logic_error("component and whole-system feasibility disagree");
    v.certificate = f.certificate;
    v.certificate_text = f.certificate_text;
    break;
  }
  return v;
}

LinearConstraintSystem chain_region(const NetworkConfig& config, const PatternChain& chain, Pruning pruning) {
  const auto pairs = interference_pair_set(config);
  const SubspaceChainState st = subspace_dims(config, pairs, chain);
  if (!st.terminated) throw std::invalid_argument("the chain's subspace recursion does not terminate");
  const GenieSystem g = build_genie_system(config, st, StreamModel::per_user());
  return fm_eliminate(g.to_system(), g.genie_indices(), pruning);
}

RegionResult dof_region(const NetworkConfig& config, RegionMode mode, const ChainSettings& settings) {
  RegionResult out;
  out.mode = mode;
  const ChainEnumeration chains = enumerate_chains(config, settings.enumeration, scope_symbolic(config));
  out.truncated = chains.truncated;
  out.chains = chains.chains.size();
  out.nonterminating = chains.nonterminating;
  const auto names = stream_variable_names(config, StreamModel::per_user());
  std::vector<LinearConstraintSystem> parts(chains.chains.size());
  detail::parallel_for(chains.chains.size(), settings.jobs, [&](std::size_t i) {
    const GenieSystem g = build_genie_system(config, chains.chains[i].state, StreamModel::per_user());
    parts[i] = fm_eliminate(g.to_system(), g.genie_indices(), Pruning::kPairwise);
    return true;
  });
  LinearConstraintSystem all(names);
  for (ChainSide side : {ChainSide::kA, ChainSide::kB}) {
    const LinearConstraintSystem base = base_system(config, side, StreamModel::per_user()).to_system();
    for (const auto& c : base.constraints()) all.add(c);
  }
  for (const auto& p : parts) {
    for (const auto& c : p.constraints()) all.add(c);
  }
  out.region = canonicalize(all, Pruning::kLp);
  if (mode == RegionMode::kLinearInfo) {
    out.note =
        "outer bound on linear IA allocations: the proper condition is bilinear in the stream counts and must "
        "additionally be checked for each allocation";
  } else {
    out.note = "information-theoretic outer bound from the enumerated genie chains";
  }
  return out;
}

MaxDofResult max_equal_d(const NetworkConfig& config, MaxDofMode mode, const ChainSettings& settings,
                         const ProperOptions& proper_options) {
  MaxDofResult out;
  out.mode = mode;
  const ChainEnumeration chains = enumerate_chains(config, settings.enumeration, scope_equal_streams(config));
  out.truncated = chains.truncated;
  out.chains = chains.chains.size();
  out.nonterminating = chains.nonterminating;
  auto cache = cache_for(settings);
  std::vector<ExtendedRational> values(chains.chains.size());
  detail::parallel_for(chains.chains.size(), settings.jobs, [&](std::size_t i) {
    values[i] = chain_max_equal_d(config, chains.chains[i].state, cache.get());
    return true;
  });
  out.info = base_equal_d(config);
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (values[i] < out.info) {
      out.info = values[i];
      out.binding_chain = chains.chains[i].chain;
    }
  }
  out.value = out.info;
  if (mode == MaxDofMode::kLinear) {
    out.proper = proper_max_equal_d(config, proper_options).value;
    out.value = min(out.info, *out.proper);
  }
  return out;
}

Classification classify_allocation(const NetworkConfig& config, const StreamAllocation& alloc,
                                   const ChainSettings& settings, const ProperOptions& proper_options) {
  Classification c;
  c.proper = proper_condition_check(config, alloc, proper_options);
  c.irreducible = irreducible_check(config, alloc, settings);
  if (!c.proper.proper) {
    c.label = AllocationClass::kImproper;
  } else if (!c.irreducible.feasible) {
    c.label = AllocationClass::kProperButIrreducibleInfeasible;
  } else {
    c.label = AllocationClass::kPassesBoth;
  }
  return c;
}

}  // namespace dof
