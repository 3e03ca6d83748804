#include "dof/rational.hpp"

#include <stdexcept>

namespace dof {

std::string to_string(const Rational& value) {
  if (value.get_den() == 1) return value.get_num().get_str();
  return value.get_num().get_str() + "/" + value.get_den().get_str();
}

Rational parse_rational(std::string_view text) {
  if (text.empty()) throw std::invalid_argument("empty rational");
  auto valid_int = [](std::string_view s, bool allow_sign) {
    std::size_t start = 0;
    if (allow_sign && !s.empty() && (s[0] == '-' || s[0] == '+')) start = 1;
    if (start >= s.size()) return false;
    for (std::size_t i = start; i < s.size(); ++i) {
      if (s[i] < '0' || s[i] > '9') return false;
    }
    return true;
  };
  const auto slash = text.find('/');
  std::string_view num = text.substr(0, slash);
  std::string_view den = slash == std::string_view::npos ? std::string_view("1") : text.substr(slash + 1);
  if (!valid_int(num, true) || !valid_int(den, false)) {
    throw std::invalid_argument("malformed rational: " + std::string(text));
  }
  std::string num_str(num);
  if (num_str[0] == '+') num_str.erase(0, 1);
  BigInt n(num_str, 10);
  BigInt d(std::string(den), 10);
  if (d == 0) throw std::invalid_argument("zero denominator: " + std::string(text));
  Rational r(n, d);
  r.canonicalize();
  return r;
}

double to_double(const Rational& value) { return value.get_d(); }

std::string to_string(const ExtendedRational& value) {
  return value.is_infinite() ? std::string("inf") : to_string(value.value());
}

}  // namespace dof
