#include "kstar/rational.hpp"

#include <cctype>

#include "kstar/errors.hpp"

namespace kstar {

Rational rational_from_string(const std::string& text) {
  if (text.empty()) throw ParseError("empty rational literal");
  std::size_t slash = std::string::npos;
  for (std::size_t i = 0; i < text.size(); ++i) {
    char ch = text[i];
    if (ch == '/') {
      if (slash != std::string::npos) throw ParseError("two '/' in rational literal: " + text);
      slash = i;
      continue;
    }
    if (ch == '-' || ch == '+') {
      if (i != 0 && i != slash + 1) throw ParseError("misplaced sign in rational literal: " + text);
      continue;
    }
    if (!std::isdigit(static_cast<unsigned char>(ch)))
      throw ParseError("bad character in rational literal: " + text);
  }
  if (slash == 0 || slash == text.size() - 1)
    throw ParseError("missing numerator or denominator: " + text);
  Rational out;
  if (out.set_str(text, 10) != 0) throw ParseError("unparsable rational literal: " + text);
  if (out.get_den() == 0) throw ParseError("zero denominator: " + text);
  out.canonicalize();
  return out;
}

std::string rational_to_string(const Rational& value) {
  return value.get_str();
}

Rational factorial(unsigned n) {
  mpz_class z;
  mpz_fac_ui(z.get_mpz_t(), n);
  return Rational(z);
}

}  // namespace kstar
