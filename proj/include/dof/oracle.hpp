#ifndef DOF_ORACLE_HPP
#define DOF_ORACLE_HPP

#include <Eigen/Dense>

#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "dof/network.hpp"

namespace dof {

using Complex = std::complex<double>;
using CMatrix = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic>;

// H[user][bs]: N_{i_k} x M_j, entries CN(0, 1).
struct ChannelSet {
  std::uint64_t seed = 0;
  std::vector<std::vector<CMatrix>> h;  // indexed [flat user][cell]

  const CMatrix& at(std::size_t flat_user, std::size_t bs) const { return h.at(flat_user).at(bs); }
};

ChannelSet sample_channels(const NetworkConfig& config, std::uint64_t seed);

// Independent sub-seed of (seed, index); splitmix64 finalizer.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index);

// Precoders per BS (M_j x d_j, the served users' columns side by side) and
// receive filters per user (N_{i_k} x d_{i_k}).
struct BeamformerSet {
  std::vector<CMatrix> v;
  std::vector<CMatrix> u;
};

enum class OracleStatus { kFeasible, kInfeasible, kInconclusive };

const char* to_string(OracleStatus s);

struct JacobianSettings {
  int resamples = 3;
  double rank_rel_tol = 1e-10;
  double desired_sv_tol = 1e-6;
};

struct JacobianVerdict {
  OracleStatus status = OracleStatus::kInconclusive;
  std::uint64_t seed = 0;
  std::size_t equations = 0;  // sum over J of d_{i_k} d_j
  std::size_t variables = 0;  // sum (M_j - d_j) d_j + sum (N_{i_k} - d_{i_k}) d_{i_k}
  std::vector<std::size_t> ranks;  // per resample
  double min_desired_sv = 0;       // smallest singular value over effective desired links
  std::string reason;
};

// Rank of the linearized zero-forcing map at random points of the solution variety.
JacobianVerdict jacobian_feasibility(const NetworkConfig& config, const StreamAllocation& alloc, std::uint64_t seed,
                                     const JacobianSettings& settings = {});

struct LeakageSettings {
  int max_iters = 5000;
  double tol = 1e-12;
  int restarts = 5;
  double feasible_below = 1e-8;
  double infeasible_above = 1e-3;
  std::uint64_t seed = 0;
};

struct LeakageRun {
  std::uint64_t seed = 0;
  int iterations = 0;
  double first = 0;
  double last = 0;
  double min = 0;
  bool converged = false;
  std::size_t monotonicity_violations = 0;
  double max_orthonormality_error = 0;
};

struct LeakageResult {
  OracleStatus status = OracleStatus::kInconclusive;
  double normalized_leakage = 0;  // best run
  std::vector<LeakageRun> runs;
  BeamformerSet beamformers;  // best run
  bool inconclusive_flag = false;
};

// Alternating minimization of interference leakage on fixed channels.
LeakageResult leakage_minimization(const NetworkConfig& config, const ChannelSet& channels,
                                   const StreamAllocation& alloc, const LeakageSettings& settings = {});

struct VerifySettings {
  std::uint64_t seed = 0;
  JacobianSettings jacobian;
  LeakageSettings leakage;
  bool run_leakage = true;
};

struct OracleVerdict {
  OracleStatus status = OracleStatus::kInconclusive;
  JacobianVerdict jacobian;
  std::optional<LeakageResult> leakage;
  bool disagreement = false;
};

// The Jacobian verdict decides; a conclusive leakage result that disagrees makes
// the combined verdict inconclusive.
OracleVerdict verify(const NetworkConfig& config, const StreamAllocation& alloc, const VerifySettings& settings = {});

}  // namespace dof

#endif  // DOF_ORACLE_HPP
