#include "vbg/rational.hpp"

#include <cctype>
#include <stdexcept>

namespace vbg {

std::string to_string(const Rational& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

namespace {

bool is_integer_literal(std::string_view s) {
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) s.remove_prefix(1);
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  const auto slash = text.find('/');
  const auto num = text.substr(0, slash);
  const auto den = slash == std::string_view::npos ? std::string_view{"1"}
                                                   : text.substr(slash + 1);
  if (!is_integer_literal(num) || !is_integer_literal(den) ||
      den.front() == '-' || den.front() == '+') {
    throw std::invalid_argument("malformed rational: '" + std::string(text) +
                                "'");
  }
  mpz_class n(std::string(num.front() == '+' ? num.substr(1) : num), 10);
  mpz_class d(std::string(den), 10);
  if (d == 0) {
    throw std::invalid_argument("zero denominator: '" + std::string(text) +
                                "'");
  }
  Rational q(n, d);
  q.canonicalize();
  return q;
}

}  // namespace vbg
