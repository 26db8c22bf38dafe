#include "scarfmatch/rational.hpp"

#include <cctype>

namespace scarfmatch {

std::string to_string(const Rational& value) { return value.str(); }

namespace {

bool is_integer_token(const std::string& s, bool allow_sign) {
  if (s.empty()) return false;
  std::size_t i = 0;
  if (allow_sign && (s[0] == '-' || s[0] == '+')) i = 1;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  }
  return true;
}

}  // namespace

std::optional<Rational> parse_rational(const std::string& text) {
  const auto slash = text.find('/');
  if (slash == std::string::npos) {
    if (!is_integer_token(text, true)) return std::nullopt;
    return Rational(boost::multiprecision::cpp_int(text));
  }
  const std::string num = text.substr(0, slash);
  const std::string den = text.substr(slash + 1);
  if (!is_integer_token(num, true) || !is_integer_token(den, false)) return std::nullopt;
  boost::multiprecision::cpp_int d(den);
  if (d == 0) return std::nullopt;
  return Rational(boost::multiprecision::cpp_int(num), d);
}

bool is_integral(const Rational& value) { return boost::multiprecision::denominator(value) == 1; }

}  // namespace scarfmatch
