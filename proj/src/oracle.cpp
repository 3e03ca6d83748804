#include "dof/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <random>

namespace dof {

const char* to_string(OracleStatus s) {
  switch (s) {
    case OracleStatus::kFeasible: return "feasible";
    case OracleStatus::kInfeasible: return "infeasible";
    case OracleStatus::kInconclusive: return "inconclusive";
  }
  return "?";
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ull * (index + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

namespace {

// Factor |R_ii| must clear the rank tolerance by, on both sides, to skip the SVD.
constexpr double kRankGap = 1e3;

CMatrix gaussian(std::mt19937_64& rng, Eigen::Index rows, Eigen::Index cols) {
  std::normal_distribution<double> nd(0.0, std::sqrt(0.5));
  CMatrix m(rows, cols);
  for (Eigen::Index c = 0; c < cols; ++c) {
    for (Eigen::Index r = 0; r < rows; ++r) {
      const double re = nd(rng);
      const double im = nd(rng);
      m(r, c) = Complex(re, im);
    }
  }
  return m;
}

// n x n unitary from the QR factorization of a Gaussian matrix.
CMatrix random_unitary(std::mt19937_64& rng, Eigen::Index n) {
  if (n == 0) return CMatrix(0, 0);
  Eigen::HouseholderQR<CMatrix> qr(gaussian(rng, n, n));
  return qr.householderQ() * CMatrix::Identity(n, n);
}

// Eigenvectors of the `count` smallest eigenvalues of a Hermitian matrix.
CMatrix least_eigvecs(const CMatrix& q, Eigen::Index count, double* eig_sum) {
  Eigen::SelfAdjointEigenSolver<CMatrix> es(q);
  if (eig_sum) *eig_sum = es.eigenvalues().head(count).sum();
  return es.eigenvectors().leftCols(count);
}

double orthonormality_error(const CMatrix& m) {
  if (m.cols() == 0) return 0;
  return (m.adjoint() * m - CMatrix::Identity(m.cols(), m.cols())).cwiseAbs().maxCoeff();
}

struct Dims {
  std::vector<int> du;  // per flat user
  std::vector<int> dj;  // per cell
  std::vector<int> offset;  // column offset of each user's streams in its BS precoder
};

Dims dims_of(const NetworkConfig& config, const StreamAllocation& alloc) {
  Dims d;
  d.dj.assign(config.num_cells(), 0);
  for (const auto& u : config.users()) {
    d.offset.push_back(d.dj[u.cell]);
    d.du.push_back(alloc.of(u));
    d.dj[u.cell] += alloc.of(u);
  }
  return d;
}

}  // namespace

ChannelSet sample_channels(const NetworkConfig& config, std::uint64_t seed) {
  ChannelSet cs;
  cs.seed = seed;
  std::mt19937_64 rng(seed);
  for (const auto& u : config.users()) {
    std::vector<CMatrix> row;
    for (std::size_t j = 0; j < config.num_cells(); ++j) {
      row.push_back(gaussian(rng, config.user_antennas(u), config.bs_antennas(j)));
    }
    cs.h.push_back(std::move(row));
  }
  return cs;
}

JacobianVerdict jacobian_feasibility(const NetworkConfig& config, const StreamAllocation& alloc, std::uint64_t seed,
                                     const JacobianSettings& settings) {
  alloc.check_matches(config);
  JacobianVerdict v;
  v.seed = seed;
  const Dims d = dims_of(config, alloc);
  const auto& users = config.users();
  for (std::size_t f = 0; f < users.size(); ++f) {
    if (d.du[f] > config.user_antennas(users[f])) {
      v.status = OracleStatus::kInfeasible;
      v.reason = "user " + users[f].label() + " has more streams than antennas";
      return v;
    }
  }
  for (std::size_t j = 0; j < config.num_cells(); ++j) {
    if (d.dj[j] > config.bs_antennas(j)) {
      v.status = OracleStatus::kInfeasible;
      v.reason = "BS " + std::to_string(j + 1) + " serves more streams than it has antennas";
      return v;
    }
  }

  // Variable offsets: receive filters first, then precoders.
  std::vector<std::size_t> uoff(users.size(), 0);
  std::vector<std::size_t> boff(config.num_cells(), 0);
  std::size_t nv = 0;
  for (std::size_t f = 0; f < users.size(); ++f) {
    uoff[f] = nv;
    nv += static_cast<std::size_t>(d.du[f]) * static_cast<std::size_t>(config.user_antennas(users[f]) - d.du[f]);
  }
  for (std::size_t j = 0; j < config.num_cells(); ++j) {
    boff[j] = nv;
    nv += static_cast<std::size_t>(d.dj[j]) * static_cast<std::size_t>(config.bs_antennas(j) - d.dj[j]);
  }
  std::size_t neq = 0;
  for (std::size_t f = 0; f < users.size(); ++f) {
    for (std::size_t j = 0; j < config.num_cells(); ++j) {
      if (j != users[f].cell) neq += static_cast<std::size_t>(d.du[f]) * static_cast<std::size_t>(d.dj[j]);
    }
  }
  v.equations = neq;
  v.variables = nv;
  v.min_desired_sv = std::numeric_limits<double>::infinity();

  for (int s = 0; s < settings.resamples; ++s) {
    std::mt19937_64 rng(derive_seed(seed, static_cast<std::uint64_t>(s)));
    std::vector<CMatrix> uf(users.size());
    std::vector<CMatrix> vf(config.num_cells());
    for (std::size_t j = 0; j < config.num_cells(); ++j) vf[j] = random_unitary(rng, config.bs_antennas(j));
    for (std::size_t f = 0; f < users.size(); ++f) uf[f] = random_unitary(rng, config.user_antennas(users[f]));

    CMatrix jac = CMatrix::Zero(static_cast<Eigen::Index>(neq), static_cast<Eigen::Index>(nv));
    Eigen::Index row = 0;
    for (std::size_t f = 0; f < users.size(); ++f) {
      const int du = d.du[f];
      if (du == 0) continue;
      const int nu = config.user_antennas(users[f]);
      const CMatrix u = uf[f].leftCols(du);
      const CMatrix up = uf[f].rightCols(nu - du);
      for (std::size_t j = 0; j < config.num_cells(); ++j) {
        const int dj = d.dj[j];
        if (j == users[f].cell)  {
          // Effective desired link of this user's own streams.
          const CMatrix h = gaussian(rng, nu, config.bs_antennas(j));
          const CMatrix eff = u.adjoint() * h * vf[j].middleCols(d.offset[f], du);
          Eigen::JacobiSVD<CMatrix> svd(eff);
          v.min_desired_sv = std::min(v.min_desired_sv, svd.singularValues().minCoeff());
          continue;
        }
        if (dj == 0) continue;
        const int mj = config.bs_antennas(j);
        const CMatrix vv = vf[j].leftCols(dj);
        const CMatrix vp = vf[j].rightCols(mj - dj);
        CMatrix h = gaussian(rng, nu, mj);
        // Move H onto the fiber over (U, V): U^H H V = 0.
        h -= u * (u.adjoint() * h * vv) * vv.adjoint();
        const CMatrix a = up.adjoint() * h * vv;  // (N - d_u) x d_j
        const CMatrix b = u.adjoint() * h * vp;   // d_u x (M - d_j)
        for (int ai = 0; ai < du; ++ai) {
          for (int bi = 0; bi < dj; ++bi) {
            for (int c = 0; c < nu - du; ++c) {
              jac(row, static_cast<Eigen::Index>(uoff[f] + static_cast<std::size_t>(ai * (nu - du) + c))) = a(c, bi);
            }
            for (int c = 0; c < mj - dj; ++c) {
              jac(row, static_cast<Eigen::Index>(boff[j] + static_cast<std::size_t>(c * dj + bi))) = b(ai, c);
            }
            ++row;
          }
        }
      }
    }
    std::size_t rank = 0;
    if (neq > 0 && nv > 0) {
      // Column-pivoted QR first; JacobiSVD when |R_ii| has no clear gap around the tolerance.
      Eigen::ColPivHouseholderQR<CMatrix> qr(jac);
      const Eigen::Index n = std::min(jac.rows(), jac.cols());
      const double scale = static_cast<double>(std::max(neq, nv)) * settings.rank_rel_tol;
      const double tol = std::abs(qr.matrixQR()(0, 0)) * scale;
      Eigen::Index r = 0;
      while (r < n && std::abs(qr.matrixQR()(r, r)) > tol) ++r;
      const bool gap_above = r == 0 || std::abs(qr.matrixQR()(r - 1, r - 1)) > tol * kRankGap;
      const bool gap_below = r == n || std::abs(qr.matrixQR()(r, r)) < tol / kRankGap;
      if (gap_above && gap_below) {
        rank = static_cast<std::size_t>(r);
      } else {
        Eigen::JacobiSVD<CMatrix> svd(jac);
        const auto& sv = svd.singularValues();
        const double svtol = sv(0) * scale;
        for (Eigen::Index k = 0; k < sv.size(); ++k) {
          if (sv(k) > svtol) ++rank;
        }
      }
    }
    v.ranks.push_back(rank);
  }
  if (!std::isfinite(v.min_desired_sv)) v.min_desired_sv = 0;

  const bool stable = std::all_of(v.ranks.begin(), v.ranks.end(), [&](std::size_t r) { return r == v.ranks.front(); });
  if (!stable) {
    v.status = OracleStatus::kInconclusive;
    v.reason = "rank differs across resampled points";
    return v;
  }
  const bool any_desired = std::any_of(d.du.begin(), d.du.end(), [](int x) { return x > 0; });
  if (any_desired && v.min_desired_sv <= settings.desired_sv_tol) {
    v.status = OracleStatus::kInconclusive;
    v.reason = "an effective desired link is rank deficient";
    return v;
  }
  if (v.ranks.empty() || v.ranks.front() == neq) {
    v.status = OracleStatus::kFeasible;
    v.reason = neq == 0 ? "no zero-forcing equations" : "linearized map is surjective";
  } else {
    v.status = OracleStatus::kInfeasible;
    v.reason = "rank " + std::to_string(v.ranks.front()) + " below the " + std::to_string(neq) + " equations";
  }
  return v;
}

LeakageResult leakage_minimization(const NetworkConfig& config, const ChannelSet& channels,
                                   const StreamAllocation& alloc, const LeakageSettings& settings) {
  alloc.check_matches(config);
  const Dims d = dims_of(config, alloc);
  const auto& users = config.users();
  const std::size_t g = config.num_cells();
  for (std::size_t f = 0; f < users.size(); ++f) {
    if (d.du[f] > config.user_antennas(users[f])) throw std::invalid_argument("more streams than user antennas");
  }
  for (std::size_t j = 0; j < g; ++j) {
    if (d.dj[j] > config.bs_antennas(j)) throw std::invalid_argument("more streams than BS antennas");
  }

  LeakageResult best;
  best.normalized_leakage = std::numeric_limits<double>::infinity();

  auto user_cov = [&](const std::vector<CMatrix>& v, std::size_t f) {
    const int nu = config.user_antennas(users[f]);
    CMatrix q = CMatrix::Zero(nu, nu);
    for (std::size_t j = 0; j < g; ++j) {
      if (j == users[f].cell || d.dj[j] == 0) continue;
      const CMatrix hv = channels.at(f, j) * v[j];
      q += hv * hv.adjoint();
    }
    return q;
  };
  auto bs_cov = [&](const std::vector<CMatrix>& u, std::size_t j) {
    const int mj = config.bs_antennas(j);
    CMatrix q = CMatrix::Zero(mj, mj);
    for (std::size_t f = 0; f < users.size(); ++f) {
      if (users[f].cell == j || d.du[f] == 0) continue;
      const CMatrix hu = channels.at(f, j).adjoint() * u[f];
      q += hu * hu.adjoint();
    }
    return q;
  };
  // Interference power of unit-norm streams spread evenly over the BS antennas.
  double reference = 0;
  for (std::size_t f = 0; f < users.size(); ++f) {
    if (d.du[f] == 0) continue;
    for (std::size_t j = 0; j < g; ++j) {
      if (j == users[f].cell || d.dj[j] == 0) continue;
      reference += channels.at(f, j).squaredNorm() * d.dj[j] / config.bs_antennas(j);
    }
  }
  if (reference <= 0) reference = 1;
  // Normalized leakage of (u, v): sum tr(U^H Q U) / sum tr(Q).
  auto normalized = [&](const std::vector<CMatrix>& u, const std::vector<CMatrix>& v, double* raw) {
    double num = 0;
    double den = 0;
    for (std::size_t f = 0; f < users.size(); ++f) {
      if (d.du[f] == 0) continue;
      const CMatrix q = user_cov(v, f);
      num += (u[f].adjoint() * q * u[f]).trace().real();
      den += q.trace().real();
    }
    if (raw) *raw = num;
    // Precoders that already null every cross link leave den at rounding level too.
    return den > 1e-14 * reference ? num / den : num / reference;
  };

  for (int restart = 0; restart < std::max(1, settings.restarts); ++restart) {
    LeakageRun run;
    run.seed = derive_seed(settings.seed, static_cast<std::uint64_t>(restart));
    std::mt19937_64 rng(run.seed);
    std::vector<CMatrix> v(g);
    std::vector<CMatrix> u(users.size());
    for (std::size_t j = 0; j < g; ++j) v[j] = random_unitary(rng, config.bs_antennas(j)).leftCols(d.dj[j]);
    for (std::size_t f = 0; f < users.size(); ++f) u[f] = CMatrix(config.user_antennas(users[f]), d.du[f]);

    double prev_raw = std::numeric_limits<double>::infinity();
    double prev_norm = std::numeric_limits<double>::infinity();
    auto monotone = [&](double now) {
      const double slack = 1e-9 * std::abs(prev_raw) + 1e-14;
      if (std::isfinite(prev_raw) && now > prev_raw + slack) ++run.monotonicity_violations;
      prev_raw = now;
    };
    for (int it = 1; it <= settings.max_iters; ++it) {
      double raw = 0;
      for (std::size_t f = 0; f < users.size(); ++f) {
        if (d.du[f] == 0) continue;
        double s = 0;
        u[f] = least_eigvecs(user_cov(v, f), d.du[f], &s);
        raw += s;
        run.max_orthonormality_error = std::max(run.max_orthonormality_error, orthonormality_error(u[f]));
      }
      monotone(raw);
      raw = 0;
      for (std::size_t j = 0; j < g; ++j) {
        if (d.dj[j] == 0) continue;
        double s = 0;
        v[j] = least_eigvecs(bs_cov(u, j), d.dj[j], &s);
        raw += s;
        run.max_orthonormality_error = std::max(run.max_orthonormality_error, orthonormality_error(v[j]));
      }
      monotone(raw);
      const double norm = normalized(u, v, nullptr);
      if (it == 1) run.first = norm;
      run.min = it == 1 ? norm : std::min(run.min, norm);
      run.last = norm;
      run.iterations = it;
      if (std::abs(prev_norm - norm) < settings.tol) {
        run.converged = true;
        break;
      }
      prev_norm = norm;
    }
    if (settings.max_iters <= 0) {
      run.first = run.last = run.min = normalized(u, v, nullptr);
    }
    if (!run.converged) best.inconclusive_flag = true;
    const bool better = run.last < best.normalized_leakage;
    best.runs.push_back(run);
    if (better) {
      best.normalized_leakage = run.last;
      best.beamformers = BeamformerSet{v, u};
    }
    if (best.normalized_leakage < settings.feasible_below) break;
  }
  if (best.normalized_leakage < settings.feasible_below) {
    best.status = OracleStatus::kFeasible;
  } else if (best.normalized_leakage > settings.infeasible_above) {
    best.status = OracleStatus::kInfeasible;
  } else {
    best.status = OracleStatus::kInconclusive;
  }
  return best;
}

OracleVerdict verify(const NetworkConfig& config, const StreamAllocation& alloc, const VerifySettings& settings) {
  OracleVerdict out;
  out.jacobian = jacobian_feasibility(config, alloc, settings.seed, settings.jacobian);
  out.status = out.jacobian.status;
  bool caps_ok = true;
  for (const auto& u : config.users()) caps_ok = caps_ok && alloc.of(u) <= config.user_antennas(u);
  for (std::size_t j = 0; j < config.num_cells(); ++j) caps_ok = caps_ok && alloc.cell_total(j) <= config.bs_antennas(j);
  if (settings.run_leakage && caps_ok) {
    LeakageSettings ls = settings.leakage;
    ls.seed = derive_seed(settings.seed, 1000);
    out.leakage = leakage_minimization(config, sample_channels(config, settings.seed), alloc, ls);
    const auto ls_status = out.leakage->status;
    if (out.status != OracleStatus::kInconclusive && ls_status != OracleStatus::kInconclusive &&
        ls_status != out.status) {
      out.disagreement = true;
      out.status = OracleStatus::kInconclusive;
    }
  }
  return out;
}

}  // namespace dof
