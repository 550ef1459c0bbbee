#include "meyerkit/numeric.hpp"

#include <cctype>
#include <cmath>
#include <ostream>
#include <sstream>

namespace meyerkit {

bool is_squarefree(std::int64_t n) {
  if (n < 1) return false;
  for (std::int64_t p = 2; p * p <= n; ++p) {
    if (n % (p * p) == 0) return false;
  }
  return true;
}

Rational parse_rational(std::string_view text) {
  std::string s(text);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.erase(s.begin());
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.pop_back();
  if (s.empty()) throw InvalidArgument("empty rational literal");
  if (s.front() == '+') s.erase(s.begin());

  auto slash = s.find('/');
  if (slash != std::string::npos) {
    Integer num, den;
    if (num.set_str(s.substr(0, slash), 10) != 0 || den.set_str(s.substr(slash + 1), 10) != 0)
      throw InvalidArgument("malformed rational '" + std::string(text) + "'");
    if (den == 0) throw InvalidArgument("zero denominator in '" + std::string(text) + "'");
    Rational q(num, den);
    q.canonicalize();
    return q;
  }

  // Decimal with optional exponent, parsed exactly.
  bool negative = false;
  std::size_t i = 0;
  if (i < s.size() && s[i] == '-') {
    negative = true;
    ++i;
  }
  std::string digits;
  long exponent = 0;
  bool seen_dot = false;
  bool any_digit = false;
  for (; i < s.size(); ++i) {
    char ch = s[i];
    if (std::isdigit(static_cast<unsigned char>(ch))) {
      digits.push_back(ch);
      any_digit = true;
      if (seen_dot) --exponent;
    } else if (ch == '.' && !seen_dot) {
      seen_dot = true;
    } else if (ch == 'e' || ch == 'E') {
      try {
        std::size_t used = 0;
        exponent += std::stol(s.substr(i + 1), &used);
        if (i + 1 + used != s.size()) throw InvalidArgument("");
      } catch (const std::exception&) {
        throw InvalidArgument("malformed exponent in '" + std::string(text) + "'");
      }
      break;
    } else {
      throw InvalidArgument("malformed number '" + std::string(text) + "'");
    }
  }
  if (!any_digit) throw InvalidArgument("malformed number '" + std::string(text) + "'");
  Integer mantissa(digits, 10);
  Integer scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(exponent < 0 ? -exponent : exponent));
  Rational q = exponent < 0 ? Rational(mantissa, scale) : Rational(mantissa * scale);
  q.canonicalize();
  return negative ? Rational(-q) : q;
}

std::string rational_str(const Rational& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

QuadExt::QuadExt(const Rational& a, const Rational& b, std::int64_t D) : a_(a), b_(b), D_(D) {
  if (!is_squarefree(D)) throw InvalidArgument("D = " + std::to_string(D) + " is not a squarefree positive integer");
  a_.canonicalize();
  b_.canonicalize();
  if (D_ == 1) {
    a_ += b_;
    b_ = 0;
  }
  if (sgn(b_) == 0) D_ = 1;
}

QuadExt QuadExt::make(Rational a, Rational b, std::int64_t D) {
  QuadExt r;
  r.a_ = std::move(a);
  r.b_ = std::move(b);
  r.D_ = sgn(r.b_) == 0 ? 1 : D;
  return r;
}

std::int64_t QuadExt::joint_D(const QuadExt& o) const {
  if (sgn(b_) == 0) return o.D_;
  if (sgn(o.b_) == 0) return D_;
  if (D_ != o.D_)
    throw DimensionError("mixing Q(sqrt " + std::to_string(D_) + ") with Q(sqrt " + std::to_string(o.D_) + ")");
  return D_;
}

QuadExt& QuadExt::operator+=(const QuadExt& o) {
  std::int64_t D = joint_D(o);
  a_ += o.a_;
  b_ += o.b_;
  D_ = sgn(b_) == 0 ? 1 : D;
  return *this;
}

QuadExt& QuadExt::operator-=(const QuadExt& o) {
  std::int64_t D = joint_D(o);
  a_ -= o.a_;
  b_ -= o.b_;
  D_ = sgn(b_) == 0 ? 1 : D;
  return *this;
}

QuadExt& QuadExt::operator*=(const QuadExt& o) {
  std::int64_t D = joint_D(o);
  if (sgn(o.b_) == 0) {
    a_ *= o.a_;
    b_ *= o.a_;
  } else if (sgn(b_) == 0) {
    b_ = a_ * o.b_;
    a_ *= o.a_;
  } else {
    Rational na = a_ * o.a_ + b_ * o.b_ * D;
    Rational nb = a_ * o.b_ + b_ * o.a_;
    a_ = std::move(na);
    b_ = std::move(nb);
  }
  D_ = sgn(b_) == 0 ? 1 : D;
  return *this;
}

QuadExt& QuadExt::operator/=(const QuadExt& o) {
  if (o.is_zero()) throw InvalidArgument("division by zero");
  if (sgn(o.b_) == 0) {
    a_ /= o.a_;
    b_ /= o.a_;
    return *this;
  }
  Rational n = o.norm();
  QuadExt inv = make(o.a_ / n, -o.b_ / n, o.D_);
  return *this *= inv;
}

int qsign(const QuadExt& x) {
  int sa = sgn(x.a());
  int sb = sgn(x.b());
  if (sb == 0) return sa;
  if (sa == 0 || sa == sb) return sb;
  // Opposite signs: the larger of a^2 and b^2 D decides.
  int c = cmp(x.a() * x.a(), x.b() * x.b() * x.D());
  return c > 0 ? sa : sb;
}

std::strong_ordering operator<=>(const QuadExt& x, const QuadExt& y) {
  int s;
  if (sgn(x.b_) == 0 && sgn(y.b_) == 0) {
    s = cmp(x.a_, y.a_);
  } else {
    s = qsign(x - y);
  }
  if (s < 0) return std::strong_ordering::less;
  if (s > 0) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

double QuadExt::to_double() const {
  return a_.get_d() + b_.get_d() * std::sqrt(static_cast<double>(D_));
}

std::string QuadExt::str() const {
  if (sgn(b_) == 0) return rational_str(a_);
  std::string out = rational_str(a_);
  if (sgn(b_) > 0) out += "+";
  out += rational_str(b_);
  out += "√" + std::to_string(D_);
  return out;
}

namespace {

// Splits "a+b√D" at the sign that starts the radical term.
std::size_t radical_term_start(const std::string& s, std::size_t radical_pos) {
  for (std::size_t i = radical_pos; i-- > 0;) {
    char ch = s[i];
    if ((ch == '+' || ch == '-') && i > 0 && s[i - 1] != 'e' && s[i - 1] != 'E') return i;
    if ((ch == '+' || ch == '-') && i == 0) return 0;
  }
  return 0;
}

}  // namespace

QuadExt QuadExt::parse(std::string_view text) {
  std::string s;
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch))) s.push_back(ch);
  if (s.empty()) throw InvalidArgument("empty number literal");

  std::size_t radical = s.find("√");
  std::size_t radical_len = 3;
  if (radical == std::string::npos) {
    radical = s.find("sqrt");
    radical_len = 4;
  }
  if (radical == std::string::npos) return QuadExt(parse_rational(s));

  std::string d_text = s.substr(radical + radical_len);
  if (!d_text.empty() && d_text.front() == '(' && d_text.back() == ')') d_text = d_text.substr(1, d_text.size() - 2);
  std::int64_t D = 0;
  try {
    std::size_t used = 0;
    D = std::stoll(d_text, &used);
    if (used != d_text.size()) throw InvalidArgument("");
  } catch (const std::exception&) {
    throw InvalidArgument("malformed radicand in '" + std::string(text) + "'");
  }

  std::size_t start = radical_term_start(s, radical);
  std::string a_text = s.substr(0, start);
  std::string b_text = s.substr(start, radical - start);
  if (!b_text.empty() && b_text.back() == '*') b_text.pop_back();
  Rational a = a_text.empty() ? Rational(0) : parse_rational(a_text);
  Rational b;
  if (b_text.empty() || b_text == "+")
    b = 1;
  else if (b_text == "-")
    b = -1;
  else
    b = parse_rational(b_text);
  return QuadExt(a, b, D);
}

QuadExt abs(const QuadExt& x) { return qsign(x) < 0 ? -x : x; }
const QuadExt& min(const QuadExt& x, const QuadExt& y) { return y < x ? y : x; }
const QuadExt& max(const QuadExt& x, const QuadExt& y) { return x < y ? y : x; }

Integer floor(const QuadExt& x) {
  if (x.is_rational()) {
    Integer r;
    mpz_fdiv_q(r.get_mpz_t(), x.a().get_num_mpz_t(), x.a().get_den_mpz_t());
    return r;
  }
  // High-precision estimate, then exact correction.
  mpf_class root(0, 512), bf(0, 512), af(0, 512);
  root = static_cast<double>(x.D());
  root = sqrt(root);
  bf = x.b();
  af = x.a();
  mpf_class est(af + bf * root, 512);
  mpf_class fl(0, 512);
  mpf_floor(fl.get_mpf_t(), est.get_mpf_t());
  Integer k(fl);
  while (QuadExt(k) > x) --k;
  while (QuadExt(Integer(k + 1)) <= x) ++k;
  return k;
}

Integer ceil(const QuadExt& x) {
  Integer f = floor(x);
  return QuadExt(f) == x ? f : Integer(f + 1);
}

std::ostream& operator<<(std::ostream& os, const QuadExt& x) { return os << x.str(); }

std::int64_t common_field(const QVector& v) {
  std::int64_t D = 1;
  for (const auto& x : v) {
    if (x.is_rational()) continue;
    if (D == 1)
      D = x.D();
    else if (D != x.D())
      throw DimensionError("entries from different quadratic fields");
  }
  return D;
}

}  // namespace meyerkit
