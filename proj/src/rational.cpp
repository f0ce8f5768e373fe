#include "qkdroute/rational.hpp"

#include <cctype>
#include <stdexcept>

namespace qkdroute {

namespace {

BigInt parse_integer(const std::string& text) {
  if (text.empty()) {
    throw std::invalid_argument("empty integer in fraction");
  }
  std::size_t start = text[0] == '-' ? 1 : 0;
  if (start == text.size()) {
    throw std::invalid_argument("sign without digits in fraction");
  }
  for (std::size_t i = start; i < text.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(text[i]))) {
      throw std::invalid_argument("non-digit character in fraction: " + text);
    }
  }
  return BigInt(text);
}

}  // namespace

std::string fraction_string(const Rational& value) {
  return numerator(value).str() + "/" + denominator(value).str();
}

Rational parse_fraction(const std::string& text) {
  const auto slash = text.find('/');
  if (slash == std::string::npos) {
    return Rational(parse_integer(text));
  }
  const BigInt num = parse_integer(text.substr(0, slash));
  const BigInt den = parse_integer(text.substr(slash + 1));
  if (den == 0) {
    throw std::invalid_argument("zero denominator in fraction: " + text);
  }
  return Rational(num, den);
}

double fraction_decimal(const Rational& value) {
  return value.convert_to<double>();
}

}  // namespace qkdroute
