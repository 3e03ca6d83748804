#ifndef DOF_CLOSED_FORM_HPP
#define DOF_CLOSED_FORM_HPP

#include <array>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "dof/network.hpp"
#include "dof/pattern.hpp"
#include "dof/rational.hpp"

namespace dof {

enum class CfKind { kFinite, kInfinity, kEnd };

template <class T>
struct CfTerm {
  CfKind kind = CfKind::kEnd;
  T value{};

  static CfTerm finite(T v) { return {CfKind::kFinite, std::move(v)}; }
  static CfTerm infinity() { return {CfKind::kInfinity, T{}}; }
  static CfTerm end() { return {CfKind::kEnd, T{}}; }
  bool is_finite() const { return kind == CfKind::kFinite; }
};

// C^A_n(k) = k - k / C^A_{n-1}(k) from C^A_0 = inf; the term after one <= 0 is the end.
// C^B_n(k) = k / (k - C^B_{n-1}(k)) from C^B_0 = 0; k - C = 0 gives inf, then the end.
template <class T>
CfTerm<T> cf_next(ChainSide side, int k, const CfTerm<T>& prev) {
  const T kk = T(k);
  if (prev.kind == CfKind::kEnd) return CfTerm<T>::end();
  if (side == ChainSide::kA) {
    if (prev.kind == CfKind::kInfinity) return CfTerm<T>::finite(kk);
    if (prev.value <= T(0)) return CfTerm<T>::end();
    return CfTerm<T>::finite(T(kk - kk / prev.value));
  }
  if (prev.kind == CfKind::kInfinity) return CfTerm<T>::end();
  if (prev.value == kk) return CfTerm<T>::infinity();
  return CfTerm<T>::finite(T(kk / (kk - prev.value)));
}

template <class T>
CfTerm<T> cf_initial(ChainSide side) {
  return side == ChainSide::kA ? CfTerm<T>::infinity() : CfTerm<T>::finite(T(0));
}

// C_0 .. C_n (stops early after the end marker).
template <class T>
std::vector<CfTerm<T>> cf_sequence(ChainSide side, int k, int n) {
  if (k < 1) throw std::invalid_argument("continued-fraction parameter k must be positive");
  std::vector<CfTerm<T>> out{cf_initial<T>(side)};
  for (int i = 1; i <= n && out.back().kind != CfKind::kEnd; ++i) out.push_back(cf_next(side, k, out.back()));
  return out;
}

template <class T>
CfTerm<T> cf_value(ChainSide side, int k, int n) {
  if (n < 0) throw std::invalid_argument("continued-fraction index must be nonnegative");
  const auto seq = cf_sequence<T>(side, k, n);
  return static_cast<int>(seq.size()) > n ? seq[static_cast<std::size_t>(n)] : CfTerm<T>::end();
}

std::string to_string(const CfTerm<Rational>& term);

enum class Region { kI, kII };

const char* to_string(Region region);

// Region I iff K_i >= 4 and r^2 - K_i r + K_i < 0 at r = M_j / N_i.
Region region_classify(int m_j, int n_i, int k_i);

// M_j N_i / (M_j + K_j N_i)
Rational d_decom(int m_j, int n_i, int k_j);

class RegionIError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class BranchMismatchError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

struct QuanBranch {
  ChainSide side = ChainSide::kA;
  int n = 0;
  Rational value;
};

struct QuanEvaluation {
  Rational value;
  std::vector<QuanBranch> branches;
  // r is the rational fixed point (k = 4, r = 2) and the limit form was used.
  bool limit_form = false;
};

// Quantity bound for K_i = k. Throws RegionIError when no branch covers M_j/N_i and
// BranchMismatchError when two applicable branches disagree.
QuanEvaluation d_quan_detail(int m_j, int n_i, int k_j, int k);
Rational d_quan(int m_j, int n_i, int k_j, int k);

// (K_j M_j + K_i N_i) / (K_j^2 + K_j K_i + K_i)
Rational d_prop(int m_j, int n_i, int k_j, int k_i);

// Two cells; every user of cell i has N_i antennas.
struct TwoCellClassConfig {
  std::array<int, 2> m{};
  std::array<int, 2> n{};
  std::array<int, 2> k{};

  // Throws ConfigError for G != 2 or unequal antenna counts within a cell.
  static TwoCellClassConfig from(const NetworkConfig& config);
  NetworkConfig to_config() const;
};

// Ordered pair (i, j): users of cell i against BS j.
struct PairBounds {
  int i = 0;
  int j = 0;
  Rational ratio;  // M_j / N_i
  Region region = Region::kII;
  Rational decom;
  std::optional<QuanEvaluation> quan;  // Region II only
  Rational prop;
  Rational info;    // decom in Region I, quan in Region II
  Rational linear;  // min(prop, info)
};

struct ClosedFormReport {
  std::array<PairBounds, 2> pairs;
  Rational d_info;
  Rational d_linear;
};

PairBounds pair_bounds(const TwoCellClassConfig& cfg, int i, int j);
ClosedFormReport closed_form(const TwoCellClassConfig& cfg);
Rational d_info(const TwoCellClassConfig& cfg);
Rational d_linear(const TwoCellClassConfig& cfg);

}  // namespace dof

#endif  // DOF_CLOSED_FORM_HPP
