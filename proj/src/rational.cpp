#include "chsh/rational.hpp"

#include "chsh/errors.hpp"

namespace chsh {

std::string to_string(const Rational& value) {
  return boost::multiprecision::numerator(value).str() + "/" + boost::multiprecision::denominator(value).str();
}

Rational parse_rational(const std::string& text) {
  using boost::multiprecision::cpp_int;
  try {
    const auto slash = text.find('/');
    if (slash == std::string::npos) return Rational(cpp_int(text));
    const cpp_int num(text.substr(0, slash));
    const cpp_int den(text.substr(slash + 1));
    if (den == 0) throw InvalidInput("zero denominator in '" + text + "'");
    return Rational(num, den);
  } catch (const std::runtime_error&) {
    throw InvalidInput("not a rational: '" + text + "'");
  }
}

}  // namespace chsh
