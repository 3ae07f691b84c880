#include <algorithm>
#include <cctype>

#include "galdesc/error.hpp"
#include "galdesc/fields.hpp"

namespace galdesc {

QPoly::QPoly(const Rational& c) {
  if (c != 0) c_.push_back(c);
}

QPoly::QPoly(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }

QPoly QPoly::t() { return QPoly(std::vector<Rational>{0, 1}); }

void QPoly::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

QPoly QPoly::operator+(const QPoly& o) const {
  std::vector<Rational> r(std::max(c_.size(), o.c_.size()), Rational(0));
  for (std::size_t i = 0; i < c_.size(); ++i) r[i] += c_[i];
  for (std::size_t i = 0; i < o.c_.size(); ++i) r[i] += o.c_[i];
  return QPoly(std::move(r));
}

QPoly QPoly::operator-(const QPoly& o) const { return *this + (-o); }

QPoly QPoly::operator-() const {
  QPoly r = *this;
  for (auto& x : r.c_) x = -x;
  return r;
}

QPoly QPoly::operator*(const QPoly& o) const {
  if (is_zero() || o.is_zero()) return QPoly();
  std::vector<Rational> r(c_.size() + o.c_.size() - 1, Rational(0));
  for (std::size_t i = 0; i < c_.size(); ++i)
    for (std::size_t j = 0; j < o.c_.size(); ++j) r[i + j] += c_[i] * o.c_[j];
  return QPoly(std::move(r));
}

std::pair<QPoly, QPoly> QPoly::divmod(const QPoly& d) const {
  if (d.is_zero()) throw Error("DivisionByZero", "polynomial division by zero");
  std::vector<Rational> rem = c_;
  std::vector<Rational> q(c_.size() >= d.c_.size() ? c_.size() - d.c_.size() + 1 : 0, Rational(0));
  const std::size_t dd = d.c_.size() - 1;
  for (std::size_t k = rem.size(); k-- > dd;) {
    if (rem[k] == 0) continue;
    Rational f = rem[k] / d.c_.back();
    q[k - dd] = f;
    for (std::size_t i = 0; i <= dd; ++i) rem[k - dd + i] -= f * d.c_[i];
  }
  return {QPoly(std::move(q)), QPoly(std::move(rem))};
}

QPoly QPoly::monic() const {
  if (is_zero()) return *this;
  QPoly r = *this;
  Rational l = c_.back();
  for (auto& x : r.c_) x /= l;
  return r;
}

QPoly QPoly::gcd(QPoly a, QPoly b) {
  while (!b.is_zero()) {
    QPoly r = a.divmod(b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

std::string QPoly::to_string(const std::string& var) const {
  if (c_.empty()) return "0";
  std::string s;
  for (std::size_t k = c_.size(); k-- > 0;) {
    const Rational& c = c_[k];
    if (c == 0) continue;
    Rational a = abs(c);
    if (s.empty()) {
      if (c < 0) s += "-";
    } else {
      s += c < 0 ? " - " : " + ";
    }
    bool unit = a == 1;
    if (k == 0 || !unit) s += a.get_str();
    if (k > 0) {
      if (!unit) s += "*";
      s += var;
      if (k > 1) s += "^" + std::to_string(k);
    }
  }
  return s;
}

RatFunc::RatFunc(QPoly num, QPoly den) {
  if (den.is_zero()) throw Error("DivisionByZero", "rational function with zero denominator");
  if (num.is_zero()) {
    num_ = QPoly();
    den_ = QPoly(1);
    return;
  }
  QPoly g = QPoly::gcd(num, den);
  num = num.divmod(g).first;
  den = den.divmod(g).first;
  Rational l = den.leading();
  num_ = num * QPoly(1 / l);
  den_ = den * QPoly(1 / l);
}

Rational RatFunc::constant_value() const {
  if (!is_constant()) throw Error("NotConstant", "rational function " + to_string() + " is not constant");
  return num_.coeff(0);
}

RatFunc RatFunc::operator+(const RatFunc& o) const {
  if (den_ == o.den_) return RatFunc(num_ + o.num_, den_);
  return RatFunc(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
}

RatFunc RatFunc::operator-(const RatFunc& o) const { return *this + (-o); }

RatFunc RatFunc::operator*(const RatFunc& o) const {
  if (den_.degree() == 0 && o.den_.degree() == 0) {
    RatFunc r;
    r.num_ = num_ * o.num_;
    return r;
  }
  return RatFunc(num_ * o.num_, den_ * o.den_);
}

RatFunc RatFunc::operator/(const RatFunc& o) const {
  if (o.is_zero()) throw Error("DivisionByZero", "division by the zero rational function");
  return RatFunc(num_ * o.den_, den_ * o.num_);
}

RatFunc RatFunc::operator-() const {
  RatFunc r = *this;
  r.num_ = -r.num_;
  return r;
}

RatFunc RatFunc::pow(long e) const {
  RatFunc base = e < 0 ? RatFunc(1) / *this : *this;
  unsigned long n = e < 0 ? static_cast<unsigned long>(-e) : static_cast<unsigned long>(e);
  RatFunc r(1);
  while (n) {
    if (n & 1) r *= base;
    base *= base;
    n >>= 1;
  }
  return r;
}

std::string RatFunc::to_string() const {
  if (den_.degree() == 0) return num_.to_string();
  auto wrap = [](const QPoly& p) {
    std::string s = p.to_string();
    bool single = s.find(' ') == std::string::npos;
    return single ? s : "(" + s + ")";
  };
  return wrap(num_) + "/" + wrap(den_);
}

namespace {

class RatFuncParser {
 public:
  explicit RatFuncParser(const std::string& s) : s_(s) {}

  RatFunc parse() {
    RatFunc r = expr();
    skip();
    if (pos_ != s_.size()) fail();
    return r;
  }

 private:
  [[noreturn]] void fail() { throw Error("BadNumber", "cannot parse rational function '" + s_ + "'"); }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool eat(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  RatFunc expr() {
    RatFunc r = term();
    for (;;) {
      if (eat('+')) r += term();
      else if (eat('-')) r -= term();
      else return r;
    }
  }
  RatFunc term() {
    RatFunc r = factor();
    for (;;) {
      if (eat('*')) r *= factor();
      else if (eat('/')) r = r / factor();
      else return r;
    }
  }
  RatFunc factor() {
    if (eat('-')) return -factor();
    if (eat('+')) return factor();
    RatFunc base = primary();
    if (eat('^')) {
      skip();
      std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      if (start == pos_) fail();
      base = base.pow(std::stol(s_.substr(start, pos_ - start)));
    }
    return base;
  }
  RatFunc primary() {
    skip();
    if (eat('(')) {
      RatFunc r = expr();
      if (!eat(')')) fail();
      return r;
    }
    if (eat('t')) return RatFunc::t();
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) fail();
    return RatFunc(Rational(Integer(s_.substr(start, pos_ - start), 10)));
  }

  std::string s_;
  std::size_t pos_ = 0;
};

}  // namespace

RatFunc parse_ratfunc(const std::string& s) { return RatFuncParser(s).parse(); }

MPoly MPoly::constant(std::size_t nvars, const RatFunc& c) {
  MPoly p(nvars);
  p.add_term(Monomial(nvars, 0), c);
  return p;
}

MPoly MPoly::variable(std::size_t nvars, std::size_t i) {
  MPoly p(nvars);
  Monomial m(nvars, 0);
  m[i] = 1;
  p.add_term(m, RatFunc(1));
  return p;
}

RatFunc MPoly::coeff(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? RatFunc(0) : it->second;
}

void MPoly::add_term(const Monomial& m, const RatFunc& c) {
  if (m.size() != nvars_) throw Error("DimensionMismatch", "monomial arity");
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.emplace(m, c);
  if (inserted) return;
  it->second += c;
  if (it->second.is_zero()) terms_.erase(it);
}

MPoly MPoly::operator+(const MPoly& o) const {
  MPoly r = *this;
  for (const auto& [m, c] : o.terms_) r.add_term(m, c);
  return r;
}

MPoly MPoly::operator-() const {
  MPoly r(nvars_);
  for (const auto& [m, c] : terms_) r.terms_.emplace(m, -c);
  return r;
}

MPoly MPoly::operator-(const MPoly& o) const { return *this + (-o); }

MPoly MPoly::operator*(const MPoly& o) const {
  MPoly r(nvars_);
  for (const auto& [m1, c1] : terms_)
    for (const auto& [m2, c2] : o.terms_) {
      Monomial m(nvars_);
      for (std::size_t i = 0; i < nvars_; ++i) m[i] = m1[i] + m2[i];
      r.add_term(m, c1 * c2);
    }
  return r;
}

RatFunc MPoly::evaluate(const std::vector<RatFunc>& point) const {
  if (point.size() != nvars_) throw Error("DimensionMismatch", "evaluation point arity");
  RatFunc s(0);
  for (const auto& [m, c] : terms_) {
    RatFunc term = c;
    for (std::size_t i = 0; i < nvars_; ++i)
      if (m[i]) term *= point[i].pow(m[i]);
    s += term;
  }
  return s;
}

std::string MPoly::to_string(const std::vector<std::string>& names) const {
  if (names.size() != nvars_) throw Error("DimensionMismatch", "variable name count");
  if (terms_.empty()) return "0";
  std::string s;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [m, c] = *it;
    bool negative = c.den().degree() == 0 && c.num().leading() < 0 &&
                    std::count_if(c.num().coeffs().begin(), c.num().coeffs().end(),
                                  [](const Rational& x) { return x != 0; }) == 1;
    RatFunc a = negative ? -c : c;
    std::string mono;
    for (std::size_t i = 0; i < nvars_; ++i) {
      if (!m[i]) continue;
      if (!mono.empty()) mono += "*";
      mono += names[i];
      if (m[i] > 1) mono += "^" + std::to_string(m[i]);
    }
    std::string cs = a.to_string();
    if (cs.find(' ') != std::string::npos) cs = "(" + cs + ")";
    std::string term;
    if (mono.empty()) term = cs;
    else if (a == RatFunc(1)) term = mono;
    else term = cs + "*" + mono;
    if (s.empty()) s = negative ? "-" + term : term;
    else s += (negative ? " - " : " + ") + term;
  }
  return s;
}

}  // namespace galdesc
