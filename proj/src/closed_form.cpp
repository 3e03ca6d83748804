#include "dof/closed_form.hpp"

namespace dof {

std::string to_string(const CfTerm<Rational>& term) {
  switch (term.kind) {
    case CfKind::kFinite: return to_string(term.value);
    case CfKind::kInfinity: return "inf";
    case CfKind::kEnd: return "end";
  }
  return "?";
}

const char* to_string(Region region) { return region == Region::kI ? "I" : "II"; }

namespace {

// r^2 - k r + k: negative strictly between the fixed points of either recursion.
Rational fixed_point_quadratic(const Rational& r, int k) { return r * r - k * r + k; }

void check_positive(int v, const char* what) {
  if (v < 1) throw std::invalid_argument(std::string(what) + " must be a positive integer");
}

// K_j / C with C possibly infinite.
Rational kj_over(int k_j, const CfTerm<Rational>& c) {
  if (c.kind == CfKind::kInfinity) return 0;
  return Rational(k_j) / c.value;
}

}  // namespace

Region region_classify(int m_j, int n_i, int k_i) {
  check_positive(m_j, "M_j");
  check_positive(n_i, "N_i");
  check_positive(k_i, "K_i");
  if (k_i <= 3) return Region::kII;
  return sgn(fixed_point_quadratic(make_rational(m_j, n_i), k_i)) < 0 ? Region::kI : Region::kII;
}

Rational d_decom(int m_j, int n_i, int k_j) {
  check_positive(m_j, "M_j");
  check_positive(n_i, "N_i");
  check_positive(k_j, "K_j");
  return make_rational(static_cast<std::int64_t>(m_j) * n_i, m_j + static_cast<std::int64_t>(k_j) * n_i);
}

Rational d_prop(int m_j, int n_i, int k_j, int k_i) {
  check_positive(m_j, "M_j");
  check_positive(n_i, "N_i");
  check_positive(k_j, "K_j");
  check_positive(k_i, "K_i");
  const std::int64_t num = static_cast<std::int64_t>(k_j) * m_j + static_cast<std::int64_t>(k_i) * n_i;
  const std::int64_t den = static_cast<std::int64_t>(k_j) * k_j + static_cast<std::int64_t>(k_j) * k_i + k_i;
  return make_rational(num, den);
}

QuanEvaluation d_quan_detail(int m_j, int n_i, int k_j, int k) {
  check_positive(m_j, "M_j");
  check_positive(n_i, "N_i");
  check_positive(k_j, "K_j");
  check_positive(k, "K_i");
  const Rational r = make_rational(m_j, n_i);
  const Rational m(m_j);
  const Rational n(n_i);
  QuanEvaluation out;

  bool try_a = true;
  bool try_b = true;
  if (k >= 4) {
    const int q = sgn(fixed_point_quadratic(r, k));
    if (q < 0) {
      throw RegionIError("M_j/N_i = " + to_string(r) + " lies strictly between the fixed points for K_i = " +
                         std::to_string(k) + " (Region I); use the decomposition bound");
    }
    if (q == 0) {
      // Only k = 4, r = 2 has a rational fixed point; both sequences converge to it.
      const Rational c = 2;
      out.limit_form = true;
      out.value = std::min(Rational(m / (k_j + c)), Rational(n / (1 + k_j / c)));
      return out;
    }
    const bool above = r * 2 > k;
    try_a = above;
    try_b = !above;
  }

  if (try_a) {
    // C_n <= r < C_{n-1}; the sequence decreases, so the first n with C_n <= r.
    CfTerm<Rational> prev = cf_initial<Rational>(ChainSide::kA);
    for (int idx = 1;; ++idx) {
      CfTerm<Rational> cur = cf_next(ChainSide::kA, k, prev);
      if (cur.kind == CfKind::kEnd) break;
      if (cur.value <= r) {
        const Rational v = std::min(Rational(m / (k_j + cur.value)), Rational(n / (1 + kj_over(k_j, prev))));
        out.branches.push_back({ChainSide::kA, idx, v});
        break;
      }
      prev = std::move(cur);
    }
  }
  if (try_b) {
    // C_{n-1} < r <= C_n; the sequence increases, so the first n with r <= C_n.
    CfTerm<Rational> prev = cf_initial<Rational>(ChainSide::kB);
    for (int idx = 1;; ++idx) {
      CfTerm<Rational> cur = cf_next(ChainSide::kB, k, prev);
      if (cur.kind == CfKind::kEnd) break;
      if (cur.kind == CfKind::kInfinity || r <= cur.value) {
        const Rational v = std::min(Rational(m / (k_j + prev.value)), Rational(n / (1 + kj_over(k_j, cur))));
        out.branches.push_back({ChainSide::kB, idx, v});
        break;
      }
      prev = std::move(cur);
    }
  }
  if (out.branches.empty()) throw std::logic_error("no quantity-bound branch covers M_j/N_i = " + to_string(r));
  out.value = out.branches.front().value;
  for (const auto& b : out.branches) {
    if (b.value != out.value) {
      throw BranchMismatchError("quantity-bound branches disagree at M_j/N_i = " + to_string(r) + ": " +
                                to_string(out.value) + " vs " + to_string(b.value));
    }
  }
  return out;
}

Rational d_quan(int m_j, int n_i, int k_j, int k) { return d_quan_detail(m_j, n_i, k_j, k).value; }

TwoCellClassConfig TwoCellClassConfig::from(const NetworkConfig& config) {
  if (config.num_cells() != 2) {
    throw ConfigError("cells", "the closed-form bounds cover two-cell configurations only (G = " +
                                   std::to_string(config.num_cells()) + ")");
  }
  TwoCellClassConfig c;
  for (std::size_t i = 0; i < 2; ++i) {
    c.m[i] = config.bs_antennas(i);
    c.k[i] = static_cast<int>(config.num_users(i));
    c.n[i] = config.user_antennas(UserId{i, 0});
    for (std::size_t u = 1; u < config.num_users(i); ++u) {
      if (config.user_antennas(UserId{i, u}) != c.n[i]) {
        throw ConfigError("cells[" + std::to_string(i) + "].users[" + std::to_string(u) + "].antennas",
                          "the closed-form bounds need equal antenna counts for all users of a cell");
      }
    }
  }
  return c;
}

NetworkConfig TwoCellClassConfig::to_config() const {
  std::vector<CellSpec> cells(2);
  for (std::size_t i = 0; i < 2; ++i) {
    cells[i].bs_antennas = m[i];
    cells[i].users.assign(static_cast<std::size_t>(k[i]), UserSpec{n[i]});
  }
  return NetworkConfig(std::move(cells));
}

PairBounds pair_bounds(const TwoCellClassConfig& cfg, int i, int j) {
  if (i == j || i < 0 || j < 0 || i > 1 || j > 1) throw std::invalid_argument("pair indices must be (0,1) or (1,0)");
  PairBounds p;
  p.i = i;
  p.j = j;
  const int mj = cfg.m[static_cast<std::size_t>(j)];
  const int ni = cfg.n[static_cast<std::size_t>(i)];
  const int kj = cfg.k[static_cast<std::size_t>(j)];
  const int ki = cfg.k[static_cast<std::size_t>(i)];
  p.ratio = make_rational(mj, ni);
  p.region = region_classify(mj, ni, ki);
  p.decom = d_decom(mj, ni, kj);
  p.prop = d_prop(mj, ni, kj, ki);
  if (p.region == Region::kI) {
    p.info = p.decom;
  } else {
    p.quan = d_quan_detail(mj, ni, kj, ki);
    p.info = p.quan->value;
  }
  p.linear = std::min(p.prop, p.info);
  return p;
}

ClosedFormReport closed_form(const TwoCellClassConfig& cfg) {
  ClosedFormReport r;
  r.pairs[0] = pair_bounds(cfg, 0, 1);
  r.pairs[1] = pair_bounds(cfg, 1, 0);
  r.d_info = std::min(r.pairs[0].info, r.pairs[1].info);
  r.d_linear = std::min(r.pairs[0].linear, r.pairs[1].linear);
  return r;
}

Rational d_info(const TwoCellClassConfig& cfg) { return closed_form(cfg).d_info; }
Rational d_linear(const TwoCellClassConfig& cfg) { return closed_form(cfg).d_linear; }

}  // namespace dof
