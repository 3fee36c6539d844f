#include "cantor/rational.hpp"

#include <cctype>

#include "cantor/errors.hpp"

namespace cantor {

namespace {

bool all_digits(const std::string& s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

}  // namespace

Rational parse_rational(const std::string& text) {
  std::string body = text;
  bool negative = false;
  if (!body.empty() && (body[0] == '-' || body[0] == '+')) {
    negative = body[0] == '-';
    body.erase(body.begin());
  }
  std::string num = body, den = "1";
  if (auto slash = body.find('/'); slash != std::string::npos) {
    num = body.substr(0, slash);
    den = body.substr(slash + 1);
  }
  if (!all_digits(num) || !all_digits(den))
    throw InvalidInput("malformed rational: '" + text + "'");
  mpz_class n(num), d(den);
  if (d == 0) throw InvalidInput("zero denominator in rational: '" + text + "'");
  Rational q(n, d);
  q.canonicalize();
  if (negative) q = -q;
  return q;
}

std::string rational_str(const Rational& q) { return q.get_str(); }

Rational pow2_inv(std::size_t k) {
  mpz_class den = 1;
  mpz_mul_2exp(den.get_mpz_t(), den.get_mpz_t(), k);
  return Rational(1, den);
}

}  // namespace cantor
