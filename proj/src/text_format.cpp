#include "mustafin/text_format.hpp"

#include <cctype>
#include <sstream>

#include "mustafin/errors.hpp"

namespace mustafin {

namespace {

class Parser {
 public:
  Parser(std::string_view text, const RingPtr& ring) : text_(text), ring_(ring) {}

  Polynomial parse() {
    Polynomial p = expression();
    skip_space();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return p;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError("parse error at position " + std::to_string(pos_) + ": " + what + " in \"" +
                     std::string(text_) + "\"");
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  Polynomial expression() {
    skip_space();
    bool negate = false;
    if (accept('-')) {
      negate = true;
    } else {
      accept('+');
    }
    Polynomial acc = term();
    if (negate) acc = -acc;
    for (;;) {
      if (accept('+')) {
        acc += term();
      } else if (accept('-')) {
        acc -= term();
      } else {
        return acc;
      }
    }
  }

  Polynomial term() {
    Polynomial acc = power();
    while (accept('*')) acc *= power();
    return acc;
  }

  Polynomial power() {
    Polynomial base = atom();
    if (accept('^')) {
      skip_space();
      std::string digits = read_digits();
      if (digits.empty()) fail("expected exponent");
      if (digits.size() > 5) fail("exponent too large");
      base = base.pow(static_cast<unsigned>(std::stoul(digits)));
    }
    return base;
  }

  std::string read_digits() {
    std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    return std::string(text_.substr(start, pos_ - start));
  }

  Polynomial atom() {
    skip_space();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      Polynomial inner = expression();
      if (!accept(')')) fail("expected ')'");
      return inner;
    }
    if (c == '-') {
      ++pos_;
      return -power();
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::string num = read_digits();
      std::string den = "1";
      std::size_t save = pos_;
      skip_space();
      if (pos_ < text_.size() && text_[pos_] == '/') {
        ++pos_;
        skip_space();
        den = read_digits();
        if (den.empty()) fail("expected denominator");
      } else {
        pos_ = save;
      }
      mpq_class q(mpz_class(num, 10), mpz_class(den, 10));
      if (q.get_den() == 0) fail("zero denominator");
      q.canonicalize();
      return Polynomial::constant(ring_, ring_->field().from_rational(q));
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
        ++pos_;
      }
      std::string name(text_.substr(start, pos_ - start));
      auto v = ring_->find_variable(name);
      if (!v) {
        pos_ = start;
        fail("unknown variable '" + name + "'");
      }
      return Polynomial::variable(ring_, *v);
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }

  std::string_view text_;
  const RingPtr& ring_;
  std::size_t pos_ = 0;
};

}  // namespace

Polynomial parse_polynomial(std::string_view text, const RingPtr& ring) {
  return Parser(text, ring).parse();
}

std::string Polynomial::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream out;
  const std::size_t nv = ring_->num_variables();
  bool first = true;
  for (const auto& term : terms_) {
    std::string coeff = term.coefficient.to_string();
    bool negative = !coeff.empty() && coeff[0] == '-';
    if (negative) coeff.erase(0, 1);
    if (first) {
      if (negative) out << "-";
    } else {
      out << (negative ? " - " : " + ");
    }
    first = false;
    bool unit = coeff == "1";
    bool wrote = false;
    if (!unit || term.monomial.is_one()) {
      out << coeff;
      wrote = true;
    }
    for (std::size_t v = 0; v < nv; ++v) {
      unsigned e = term.monomial[v];
      if (e == 0) continue;
      if (wrote) out << "*";
      out << ring_->variable_name(v);
      if (e > 1) out << "^" << e;
      wrote = true;
    }
  }
  return out.str();
}

std::string format_polynomial(const Polynomial& p) { return p.to_string(); }

std::vector<std::string> format_polynomials(const std::vector<Polynomial>& ps) {
  std::vector<std::string> out;
  out.reserve(ps.size());
  for (const auto& p : ps) out.push_back(p.to_string());
  return out;
}

bool is_grammar_variable(std::string_view name) {
  auto digits = [](std::string_view s) {
    if (s.empty()) return false;
    for (char c : s) {
      if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    }
    return true;
  };
  if (name == "t") return true;
  if (name.size() < 2) return false;
  char head = name[0];
  std::string_view rest = name.substr(1);
  if (head == 'x') {
    auto us = rest.find('_');
    if (us == std::string_view::npos) return digits(rest);
    return digits(rest.substr(0, us)) && digits(rest.substr(us + 1));
  }
  return (head == 'u' || head == 'y' || head == 'e' || head == 'w') && digits(rest);
}

}  // namespace mustafin
