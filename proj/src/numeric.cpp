#include <cctype>
#include <sstream>

#include "cantorqc/rational.hpp"
#include "cantorqc/real.hpp"

namespace cantorqc {

namespace mp = boost::multiprecision;

std::optional<BigInt> integer_kth_root(const BigInt& n, unsigned k) {
  if (n < 0 || k == 0) return std::nullopt;
  if (n == 0 || n == 1 || k == 1) return n;
  // Binary search on [1, n].
  BigInt lo = 1, hi = n;
  while (lo <= hi) {
    BigInt mid = (lo + hi) / 2;
    BigInt p = mp::pow(mid, k);
    if (p == n) return mid;
    if (p < n)
      lo = mid + 1;
    else
      hi = mid - 1;
  }
  return std::nullopt;
}

Rational parse_rational(const std::string& text) {
  auto bad = [&]() -> Rational {
    raise(ErrorKind::ParseError, "not a rational: '" + text + "'");
  };
  std::string s = text;
  // trim
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.erase(s.begin());
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.pop_back();
  if (s.empty()) return bad();

  auto is_int = [](const std::string& t) {
    if (t.empty()) return false;
    std::size_t i = (t[0] == '-' || t[0] == '+') ? 1 : 0;
    if (i == t.size()) return false;
    for (; i < t.size(); ++i)
      if (!std::isdigit(static_cast<unsigned char>(t[i]))) return false;
    return true;
  };

  auto slash = s.find('/');
  if (slash != std::string::npos) {
    std::string num = s.substr(0, slash), den = s.substr(slash + 1);
    if (!is_int(num) || !is_int(den)) return bad();
    BigInt d(den);
    if (d == 0) return bad();
    return Rational(BigInt(num), d);
  }
  auto dot = s.find('.');
  if (dot != std::string::npos) {
    std::string whole = s.substr(0, dot), frac = s.substr(dot + 1);
    if (whole.empty() || whole == "-" || whole == "+") whole += "0";
    if (!is_int(whole) || frac.empty()) return bad();
    for (char ch : frac)
      if (!std::isdigit(static_cast<unsigned char>(ch))) return bad();
    BigInt scale = mp::pow(BigInt(10), static_cast<unsigned>(frac.size()));
    BigInt w(whole);
    BigInt f(frac);
    bool neg = !whole.empty() && whole[0] == '-';
    BigInt numer = mp::abs(w) * scale + f;
    if (neg) numer = -numer;
    return Rational(numer, scale);
  }
  if (!is_int(s)) return bad();
  return Rational(BigInt(s));
}

std::string rat_str(const Rational& q) {
  if (mp::denominator(q) == 1) return mp::numerator(q).str();
  return mp::numerator(q).str() + "/" + mp::denominator(q).str();
}

std::string real_str(const Real& x, int digits) {
  std::ostringstream os;
  os.precision(digits);
  os << x;
  return os.str();
}

}  // namespace cantorqc
