#include "qaslopes/rational.hpp"

#include <cctype>
#include <ostream>
#include <sstream>

#include "qaslopes/errors.hpp"

namespace qaslopes {

BigInt floor_div(const BigInt& a, const BigInt& b) {
  if (b == 0) throw DomainError("floor_div: division by zero");
  BigInt q = a / b;  // truncates toward zero
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

BigInt ceil_div(const BigInt& a, const BigInt& b) { return -floor_div(-a, b); }

BigInt floor(const Rational& r) {
  return floor_div(boost::multiprecision::numerator(r), boost::multiprecision::denominator(r));
}

BigInt ceil(const Rational& r) {
  return ceil_div(boost::multiprecision::numerator(r), boost::multiprecision::denominator(r));
}

std::string to_string(const Rational& r) {
  const BigInt& den = boost::multiprecision::denominator(r);
  if (den == 1) return boost::multiprecision::numerator(r).str();
  return boost::multiprecision::numerator(r).str() + "/" + den.str();
}

Slope::Slope(BigInt p, BigInt q) : p_(std::move(p)), q_(std::move(q)) {
  if (p_ == 0 && q_ == 0) throw DomainError("slope 0/0 is not a slope");
  BigInt g = boost::multiprecision::gcd(abs(p_), abs(q_));
  p_ /= g;
  q_ /= g;
  if (q_ < 0 || (q_ == 0 && p_ < 0)) {
    p_ = -p_;
    q_ = -q_;
  }
}

Slope::Slope(const Rational& r)
    : Slope(boost::multiprecision::numerator(r), boost::multiprecision::denominator(r)) {}

Rational Slope::value() const {
  if (is_meridian()) throw DomainError("slope 1/0 has no finite value");
  return Rational(p_, q_);
}

std::string Slope::str() const { return p_.str() + "/" + q_.str(); }

std::strong_ordering operator<=>(const Slope& a, const Slope& b) {
  if (a.is_meridian() || b.is_meridian()) {
    return a.is_meridian() <=> b.is_meridian();
  }
  BigInt lhs = a.p_ * b.q_;
  BigInt rhs = b.p_ * a.q_;
  if (lhs < rhs) return std::strong_ordering::less;
  if (lhs > rhs) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

std::ostream& operator<<(std::ostream& os, const Slope& s) { return os << s.str(); }

namespace {

std::string strip(std::string_view text) {
  std::string out;
  for (char c : text) {
    if (!std::isspace(static_cast<unsigned char>(c))) out.push_back(c);
  }
  return out;
}

BigInt parse_integer(const std::string& s, std::string_view context) {
  std::size_t i = (!s.empty() && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
  if (i == s.size()) throw ParseError("expected an integer in '" + std::string(context) + "'");
  for (std::size_t j = i; j < s.size(); ++j) {
    if (!std::isdigit(static_cast<unsigned char>(s[j]))) {
      throw ParseError("expected an integer in '" + std::string(context) + "'");
    }
  }
  return BigInt(s[0] == '+' ? s.substr(1) : s);
}

}  // namespace

Slope parse_slope(std::string_view text) {
  std::string s = strip(text);
  BigInt p;
  BigInt q(1);
  if (s.size() >= 2 && s.front() == '(' && s.back() == ')') {
    auto comma = s.find(',');
    if (comma == std::string::npos) throw ParseError("slope pair needs '(p,q)': " + std::string(text));
    p = parse_integer(s.substr(1, comma - 1), text);
    q = parse_integer(s.substr(comma + 1, s.size() - comma - 2), text);
  } else if (auto slash = s.find('/'); slash != std::string::npos) {
    p = parse_integer(s.substr(0, slash), text);
    q = parse_integer(s.substr(slash + 1), text);
  } else {
    p = parse_integer(s, text);
  }
  if (p == 0 && q == 0) throw ParseError("0/0 is not a slope");
  return Slope(p, q);
}

std::strong_ordering compare(const Slope& s, const Rational& r) {
  if (s.is_meridian()) return std::strong_ordering::greater;
  Rational v = s.value();
  if (v < r) return std::strong_ordering::less;
  if (v > r) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

BigInt distance(const Slope& a, const Slope& b) { return abs(a.p() * b.q() - b.p() * a.q()); }

std::string NegCF::str() const {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    if (i) os << ',';
    os << coeffs[i];
  }
  os << "]^-";
  return os.str();
}

NegCF neg_cf_expand(const Slope& r) {
  if (r.is_meridian()) throw DomainError("negative continued fraction of 1/0 is undefined");
  if (r.p() <= r.q()) throw DomainError("negative continued fraction needs a slope > 1, got " + r.str());
  NegCF cf;
  BigInt p = r.p();
  BigInt q = r.q();
  for (;;) {
    BigInt a = ceil_div(p, q);
    cf.coeffs.push_back(a);
    BigInt rem = a * q - p;  // 0 <= rem < q
    if (rem == 0) break;
    p = q;
    q = rem;
  }
  return cf;
}

Slope neg_cf_eval(const NegCF& cf) {
  if (cf.coeffs.empty()) throw DomainError("empty continued fraction");
  for (std::size_t i = 0; i < cf.coeffs.size(); ++i) {
    const bool last = i + 1 == cf.coeffs.size();
    if (cf.coeffs[i] < 2 && !(last && cf.coeffs[i] == 1)) {
      throw DomainError("continued fraction coefficient out of range in " + cf.str());
    }
  }
  // Projective evaluation: value = num/den, a - 1/(num/den) = (a*num - den)/num.
  BigInt num = cf.coeffs.back();
  BigInt den = 1;
  for (std::size_t i = cf.coeffs.size() - 1; i-- > 0;) {
    BigInt next = cf.coeffs[i] * num - den;
    den = num;
    num = next;
  }
  return Slope(num, den);
}

NegCF collapse_trailing_one(NegCF cf) {
  if (cf.coeffs.empty() || cf.coeffs.back() != 1) return cf;
  cf.coeffs.pop_back();
  while (!cf.coeffs.empty() && cf.coeffs.back() == 2) cf.coeffs.pop_back();
  if (cf.coeffs.empty()) {
    cf.coeffs.push_back(1);
  } else {
    cf.coeffs.back() -= 1;
  }
  return cf;
}

std::pair<Slope, Slope> triad_partners(const Slope& r) {
  NegCF cf = neg_cf_expand(r);
  if (cf.length() < 2) {
    throw DomainError("integer slope " + r.str() + " has no continued-fraction triad");
  }
  NegCF truncated{std::vector<BigInt>(cf.coeffs.begin(), cf.coeffs.end() - 1)};
  NegCF decremented = cf;
  decremented.coeffs.back() -= 1;
  decremented = collapse_trailing_one(std::move(decremented));
  return {neg_cf_eval(truncated), neg_cf_eval(decremented)};
}

}  // namespace qaslopes
