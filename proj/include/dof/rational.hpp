#ifndef DOF_RATIONAL_HPP
#define DOF_RATIONAL_HPP

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

namespace dof {

// Arbitrary-precision rational; GMP keeps it canonical (gcd 1, denominator > 0).
using Rational = mpq_class;
using BigInt = mpz_class;

// "p/q", or "p" when the denominator is 1.
std::string to_string(const Rational& value);

// Accepts "p", "p/q" and "-p/q"; throws std::invalid_argument otherwise.
Rational parse_rational(std::string_view text);

inline Rational make_rational(std::int64_t num, std::int64_t den = 1) {
  Rational r(BigInt(static_cast<long>(num)), BigInt(static_cast<long>(den)));
  r.canonicalize();
  return r;
}

double to_double(const Rational& value);

// A rational bound that may be +infinity (no constraint applies).
class ExtendedRational {
 public:
  ExtendedRational() : infinite_(true) {}
  ExtendedRational(Rational value) : infinite_(false), value_(std::move(value)) {}  // NOLINT

  static ExtendedRational infinity() { return ExtendedRational(); }

  bool is_infinite() const { return infinite_; }
  bool is_finite() const { return !infinite_; }
  // Precondition: is_finite().
  const Rational& value() const { return value_; }

  friend bool operator==(const ExtendedRational& a, const ExtendedRational& b) {
    if (a.infinite_ || b.infinite_) return a.infinite_ == b.infinite_;
    return a.value_ == b.value_;
  }
  friend bool operator<(const ExtendedRational& a, const ExtendedRational& b) {
    if (a.infinite_) return false;
    if (b.infinite_) return true;
    return a.value_ < b.value_;
  }
  friend bool operator<=(const ExtendedRational& a, const ExtendedRational& b) {
    return !(b < a);
  }

 private:
  bool infinite_;
  Rational value_;
};

inline const ExtendedRational& min(const ExtendedRational& a, const ExtendedRational& b) {
  return b < a ? b : a;
}

// "inf" for infinity.
std::string to_string(const ExtendedRational& value);

}  // namespace dof

#endif  // DOF_RATIONAL_HPP
