#include "mfres/rational.hpp"

#include "mfres/error.hpp"

namespace mfres {

std::string to_string(const Rational& q) { return q.get_str(); }

Rational parse_rational(std::string_view text) {
  std::string s(text);
  if (s.empty()) throw ParseError("empty rational literal", 0);
  std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  bool seen_digit = false;
  bool seen_slash = false;
  bool digit_after_slash = false;
  for (std::size_t k = i; k < s.size(); ++k) {
    char c = s[k];
    if (c >= '0' && c <= '9') {
      seen_digit = true;
      if (seen_slash) digit_after_slash = true;
    } else if (c == '/' && !seen_slash && seen_digit) {
      seen_slash = true;
    } else {
      throw ParseError("invalid rational literal '" + s + "'", k);
    }
  }
  if (!seen_digit || (seen_slash && !digit_after_slash)) {
    throw ParseError("invalid rational literal '" + s + "'", s.size());
  }
  if (s[0] == '+') s.erase(0, 1);
  Rational q;
  if (q.set_str(s, 10) != 0) throw ParseError("invalid rational literal '" + s + "'", 0);
  if (q.get_den() == 0) throw ParseError("zero denominator in '" + s + "'", s.find('/'));
  q.canonicalize();
  return q;
}

}  // namespace mfres
