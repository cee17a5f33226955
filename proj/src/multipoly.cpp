#include "tclab/multipoly.hpp"

#include <cctype>

namespace tclab {

Rational MultiPoly::content() const {
  if (terms_.empty()) return Rational(0);
  BigInt den_lcm = 1;
  for (const auto& [e, c] : terms_) den_lcm = boost::multiprecision::lcm(den_lcm, rat_den(c));
  BigInt num_gcd = 0;
  for (const auto& [e, c] : terms_)
    num_gcd = boost::multiprecision::gcd(num_gcd, BigInt(rat_num(c) * (den_lcm / rat_den(c))));
  return Rational(num_gcd, den_lcm);
}

MultiRatFunc::MultiRatFunc(MultiPoly num, MultiPoly den)
    : num_(std::move(num)), den_(std::move(den)) {
  if (num_.nvars() != den_.nvars()) throw std::invalid_argument("arity mismatch in rational function");
  if (den_.is_zero()) throw std::domain_error("rational function with zero denominator");
  if (num_.is_zero()) {
    den_ = MultiPoly::constant(num_.nvars(), 1);
    return;
  }
  Rational scale = den_.content();
  // Lex-leading coefficient of the denominator kept positive.
  if (den_.terms().rbegin()->second < 0) scale = -scale;
  Rational inv = 1 / scale;
  num_ = inv * num_;
  den_ = inv * den_;
  Rational nc = num_.content();
  if (rat_den(nc) != 1) {
    // Keep numerator integral too when that only rescales both parts
    // is impossible (den already normalized); tolerate rational numerator
    // content instead of disturbing the denominator normalization.
  }
}

std::string MultiPoly::to_string(const std::vector<std::string>& names) const {
  if (terms_.empty()) return "0";
  auto var_name = [&](size_t i) {
    if (i < names.size()) return names[i];
    return "x" + std::to_string(i + 1);
  };
  std::string out;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [e, c] = *it;
    std::string term;
    bool has_var = false;
    for (size_t i = 0; i < e.size(); ++i)
      if (e[i] > 0) has_var = true;
    std::string coeff = rat_to_string(c);
    if (has_var && coeff == "1") coeff.clear();
    else if (has_var && coeff == "-1") coeff = "-";
    term = coeff;
    bool first_var = true;
    for (size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      if (!term.empty() && term != "-" && !first_var) term += "*";
      else if (!term.empty() && term != "-" && first_var && !coeff.empty()) term += "*";
      term += var_name(i);
      if (e[i] > 1) term += "^" + std::to_string(e[i]);
      first_var = false;
    }
    if (term.empty() || term == "-") term += "1";
    if (!out.empty() && term[0] != '-') out += "+";
    out += term;
  }
  return out;
}

std::string MultiRatFunc::to_string(const std::vector<std::string>& names) const {
  if (den_.is_constant() && den_.constant_value() == 1) return num_.to_string(names);
  return "(" + num_.to_string(names) + ")/(" + den_.to_string(names) + ")";
}

namespace {

struct Parser {
  const std::string& s;
  size_t pos = 0;
  size_t nvars;

  void skip_ws() {
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
  }
  bool eat(char c) {
    skip_ws();
    if (pos < s.size() && s[pos] == c) {
      ++pos;
      return true;
    }
    return false;
  }
  [[noreturn]] void fail(const std::string& what) {
    throw std::invalid_argument("parse error at position " + std::to_string(pos) + ": " + what);
  }

  MultiRatFunc expr() {
    MultiRatFunc acc = term();
    for (;;) {
      if (eat('+')) acc = acc + term();
      else if (eat('-')) acc = acc - term();
      else return acc;
    }
  }
  MultiRatFunc term() {
    MultiRatFunc acc = factor();
    for (;;) {
      if (eat('*')) acc = acc * factor();
      else if (eat('/')) acc = acc / factor();
      else return acc;
    }
  }
  MultiRatFunc factor() {
    skip_ws();
    if (eat('-')) return -factor();
    if (eat('+')) return factor();
    MultiRatFunc base = atom();
    skip_ws();
    if (eat('^')) {
      skip_ws();
      size_t start = pos;
      while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
      if (start == pos) fail("expected integer exponent");
      int e = std::stoi(s.substr(start, pos - start));
      MultiRatFunc acc = MultiRatFunc::constant(nvars, 1);
      for (int i = 0; i < e; ++i) acc = acc * base;
      return acc;
    }
    return base;
  }
  MultiRatFunc atom() {
    skip_ws();
    if (pos >= s.size()) fail("unexpected end of input");
    if (eat('(')) {
      MultiRatFunc inner = expr();
      if (!eat(')')) fail("expected ')'");
      return inner;
    }
    char c = s[pos];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      size_t start = pos;
      while (pos < s.size() &&
             (std::isdigit(static_cast<unsigned char>(s[pos])) || s[pos] == '.'))
        ++pos;
      auto q = rat_parse(s.substr(start, pos - start));
      if (!q) fail("bad number");
      return MultiRatFunc::constant(nvars, *q);
    }
    if (c == 'x' || c == 'y' || c == 'z') {
      ++pos;
      size_t index = 0;
      if (c == 'y') index = 1;
      else if (c == 'z') index = 2;
      if (c == 'x' && pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) {
        size_t start = pos;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
        index = std::stoul(s.substr(start, pos - start)) - 1;
      }
      if (index >= nvars) fail("variable index out of range");
      return MultiRatFunc::variable(nvars, index);
    }
    fail(std::string("unexpected character '") + c + "'");
  }
};

}  // namespace

MultiRatFunc parse_ratfunc(const std::string& text, size_t nvars) {
  Parser p{text, 0, nvars};
  MultiRatFunc r = p.expr();
  p.skip_ws();
  if (p.pos != text.size()) p.fail("trailing input");
  return r;
}

}  // namespace tclab
