#include "edgestat/exact.hpp"

#include <cctype>

namespace edgestat {

Integer binomial(std::int64_t n, std::int64_t k) {
  if (n < 0 || k < 0 || k > n) return 0;
  Integer out;
  mpz_bin_uiui(out.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return out;
}

std::uint64_t binomial_u64(std::int64_t n, std::int64_t k) {
  const Integer b = binomial(n, k);
  if (!b.fits_ulong_p()) {
    throw CapExceeded("binomial coefficient C(" + std::to_string(n) + "," + std::to_string(k) +
                      ") does not fit in 64 bits");
  }
  return b.get_ui();
}

Integer falling_factorial(std::int64_t n, std::int64_t m) {
  Integer out = 1;
  for (std::int64_t i = 0; i < m; ++i) {
    if (n - i <= 0) return 0;
    out *= static_cast<unsigned long>(n - i);
  }
  return out;
}

Integer pow_int(const Integer& base, unsigned long exponent) {
  Integer out;
  mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), exponent);
  return out;
}

Rational pow_rat(const Rational& base, unsigned long exponent) {
  Rational out(pow_int(base.get_num(), exponent), pow_int(base.get_den(), exponent));
  out.canonicalize();
  return out;
}

std::string to_fraction_string(const Rational& q) {
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

Rational parse_rational(std::string_view text) {
  std::string s(text);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.pop_back();
  std::size_t start = 0;
  while (start < s.size() && std::isspace(static_cast<unsigned char>(s[start]))) ++start;
  s = s.substr(start);
  if (s.empty()) throw InputError("empty rational literal");

  const auto check_integer = [&](const std::string& part) {
    std::size_t i = (part.size() > 0 && (part[0] == '-' || part[0] == '+')) ? 1 : 0;
    if (i == part.size()) throw InputError("malformed rational literal '" + s + "'");
    for (; i < part.size(); ++i) {
      if (!std::isdigit(static_cast<unsigned char>(part[i]))) {
        throw InputError("malformed rational literal '" + s + "'");
      }
    }
  };
  const auto to_integer = [&](std::string part) {
    check_integer(part);
    if (part[0] == '+') part.erase(0, 1);
    return Integer(part, 10);
  };

  if (auto slash = s.find('/'); slash != std::string::npos) {
    Integer num = to_integer(s.substr(0, slash));
    Integer den = to_integer(s.substr(slash + 1));
    if (den == 0) throw InputError("zero denominator in '" + s + "'");
    Rational q(num, den);
    q.canonicalize();
    return q;
  }
  if (auto dot = s.find('.'); dot != std::string::npos) {
    std::string whole = s.substr(0, dot);
    std::string frac = s.substr(dot + 1);
    bool negative = !whole.empty() && whole[0] == '-';
    if (whole.empty() || whole == "-" || whole == "+") whole += "0";
    if (frac.empty()) frac = "0";
    Integer w = to_integer(whole);
    check_integer(frac);
    Integer f(frac, 10);
    Integer scale = pow_int(10, frac.size());
    Rational q(abs(w) * scale + f, scale);
    q.canonicalize();
    return negative ? Rational(-q) : q;
  }
  return Rational(to_integer(s));
}

}  // namespace edgestat
