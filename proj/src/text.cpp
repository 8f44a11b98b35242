#include "arclift/text.hpp"

#include <cctype>
#include <optional>

#include "arclift/error.hpp"

namespace arclift {

namespace {

class Parser {
 public:
  Parser(std::string_view text, const BaseRing& ring, const VarSpace& space, bool allow_order_term)
      : text_(text), ring_(ring), space_(space), allow_order_term_(allow_order_term) {}

  Poly parse() {
    Poly out(ring_, space_.n);
    skip_ws();
    if (at_end()) fail("empty expression");
    bool first = true;
    while (!at_end()) {
      bool negative = false;
      if (peek() == '+' || peek() == '-') {
        negative = peek() == '-';
        ++pos_;
        skip_ws();
      } else if (!first) {
        fail("expected '+' or '-'");
      }
      first = false;
      if (allow_order_term_ && looking_at_order_term()) {
        if (negative) fail("O-term must be added");
        parse_order_term();
        skip_ws();
        if (!at_end()) fail("O-term must come last");
        break;
      }
      parse_term(out, negative);
      skip_ws();
    }
    return out;
  }

  std::optional<int> order_term() const { return order_; }

 private:
  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return at_end() ? '\0' : text_[pos_]; }

  void skip_ws() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(peek()))) ++pos_;
  }

  [[noreturn]] void fail(const std::string& message) const {
    throw Error(ErrorKind::ParseError,
                message + " at position " + std::to_string(pos_) + " in '" + std::string(text_) + "'");
  }

  mpz_class parse_int() {
    skip_ws();
    std::size_t start = pos_;
    while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
    if (start == pos_) fail("expected an integer");
    return mpz_class(std::string(text_.substr(start, pos_ - start)));
  }

  std::uint32_t parse_exponent() {
    mpz_class e = parse_int();
    if (e > 100000) fail("exponent too large");
    return static_cast<std::uint32_t>(e.get_ui());
  }

  bool looking_at_order_term() const { return peek() == 'O'; }

  void parse_order_term() {
    ++pos_;
    skip_ws();
    if (peek() != '(') fail("expected '(' after O");
    ++pos_;
    skip_ws();
    if (peek() != 'x') fail("expected x inside O(...)");
    ++pos_;
    skip_ws();
    int k = 1;
    if (peek() == '^') {
      ++pos_;
      k = static_cast<int>(parse_exponent());
    }
    skip_ws();
    if (peek() != ')') fail("expected ')'");
    ++pos_;
    order_ = k;
  }

  void parse_term(Poly& out, bool negative) {
    mpz_class num = negative ? -1 : 1;
    mpz_class den = 1;
    int x_exp = 0;
    Exponents e(static_cast<std::size_t>(2 * space_.n), 0);
    parse_factor(num, x_exp, e);
    while (true) {
      skip_ws();
      if (peek() == '*') {
        ++pos_;
        skip_ws();
        parse_factor(num, x_exp, e);
      } else if (peek() == '/') {
        ++pos_;
        mpz_class d = parse_int();
        if (d == 0) fail("division by zero");
        den *= d;
      } else {
        break;
      }
    }
    Scalar coeff;
    try {
      coeff = Scalar::from_fraction(ring_.field, num, den);
    } catch (const Error&) {
      fail("denominator not invertible in " + ring_.field.name());
    }
    out.add_term(e, Series::monomial(ring_, coeff, x_exp));
  }

  void parse_factor(mpz_class& num, int& x_exp, Exponents& e) {
    skip_ws();
    char c = peek();
    if (std::isdigit(static_cast<unsigned char>(c))) {
      num *= parse_int();
      return;
    }
    std::size_t start = pos_;
    if (c == 'x') {
      ++pos_;
      if (!space_.allow_x) {
        pos_ = start;
        throw Error(ErrorKind::UnknownVariable, "x not allowed here in '" + std::string(text_) + "'");
      }
      x_exp += static_cast<int>(parse_power());
      return;
    }
    if (c == 'Y' || c == 'T') {
      ++pos_;
      std::size_t digits = pos_;
      while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
      if (digits == pos_) fail("expected variable index");
      long index = std::stol(std::string(text_.substr(digits, pos_ - digits)));
      bool allowed = (c == 'Y') ? space_.allow_y : space_.allow_t;
      if (!allowed || index < 1 || index > space_.n) {
        throw Error(ErrorKind::UnknownVariable,
                    std::string(text_.substr(start, pos_ - start)) + " in '" + std::string(text_) + "'");
      }
      Var v = (c == 'Y') ? Var::y(static_cast<int>(index)) : Var::t(static_cast<int>(index));
      e[v.slot(space_.n)] += parse_power();
      return;
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      while (!at_end() && std::isalnum(static_cast<unsigned char>(peek()))) ++pos_;
      throw Error(ErrorKind::UnknownVariable,
                  std::string(text_.substr(start, pos_ - start)) + " in '" + std::string(text_) + "'");
    }
    fail("expected a number or variable");
  }

  std::uint32_t parse_power() {
    skip_ws();
    if (peek() != '^') return 1;
    ++pos_;
    skip_ws();
    if (!std::isdigit(static_cast<unsigned char>(peek()))) fail("expected exponent after '^'");
    return parse_exponent();
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  const BaseRing& ring_;
  VarSpace space_;
  bool allow_order_term_;
  std::optional<int> order_;
};

}  // namespace

Poly parse_poly(std::string_view text, const BaseRing& ring, const VarSpace& space) {
  return Parser(text, ring, space, false).parse();
}

Series parse_series(std::string_view text, const BaseRing& ring, int default_prec) {
  VarSpace only_x{1, false, false, true};
  Parser parser(text, ring, only_x, true);
  Poly p = parser.parse();
  int prec = parser.order_term().value_or(default_prec < 0 ? ring.n_work : default_prec);
  Series value = p.constant_term();
  if (parser.order_term() && value.size() > prec) {
    throw Error(ErrorKind::ParseError, "terms beyond the declared O(x^" + std::to_string(prec) + ") in '" +
                                           std::string(text) + "'");
  }
  return value.truncated(prec);
}

std::vector<Series> parse_series_list(std::string_view text, const BaseRing& ring) {
  std::vector<Series> out;
  std::size_t start = 0;
  while (true) {
    std::size_t comma = text.find(',', start);
    out.push_back(parse_series(text.substr(start, comma == std::string_view::npos ? comma : comma - start), ring));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

}  // namespace arclift
