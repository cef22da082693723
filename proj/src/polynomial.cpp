#include "colevel/polynomial.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <numeric>

#include "colevel/error.hpp"

namespace colevel {

unsigned Term::degree() const { return std::accumulate(exponents.begin(), exponents.end(), 0u); }

bool operator==(const Term& a, const Term& b) { return a.exponents == b.exponents && a.coef == b.coef; }

bool operator==(const MultiPoly& a, const MultiPoly& b) {
  return a.num_vars_ == b.num_vars_ && a.terms_ == b.terms_;
}

MultiPoly::MultiPoly(std::size_t num_vars, std::vector<Term> terms) : num_vars_(num_vars), terms_(std::move(terms)) {
  for (const auto& t : terms_)
    if (t.exponents.size() != num_vars_) throw InputError("term has wrong number of exponents");
  canonicalize();
}

MultiPoly MultiPoly::constant(std::size_t num_vars, const mpz_class& c) {
  return MultiPoly(num_vars, {Term{Exponents(num_vars, 0), c}});
}

MultiPoly MultiPoly::variable(std::size_t num_vars, std::size_t index) {
  Exponents e(num_vars, 0);
  e.at(index) = 1;
  return MultiPoly(num_vars, {Term{std::move(e), 1}});
}

void MultiPoly::canonicalize() {
  std::map<Exponents, mpz_class> merged;
  for (auto& t : terms_) merged[t.exponents] += t.coef;
  terms_.clear();
  for (auto& [e, c] : merged)
    if (c != 0) terms_.push_back(Term{e, c});
  std::sort(terms_.begin(), terms_.end(), [](const Term& a, const Term& b) {
    const unsigned da = a.degree(), db = b.degree();
    if (da != db) return da > db;
    return a.exponents > b.exponents;
  });
}

unsigned MultiPoly::total_degree() const {
  unsigned d = 0;
  for (const auto& t : terms_) d = std::max(d, t.degree());
  return d;
}

bool MultiPoly::is_homogeneous() const {
  if (terms_.empty()) return true;
  const unsigned d = terms_.front().degree();
  return std::all_of(terms_.begin(), terms_.end(), [d](const Term& t) { return t.degree() == d; });
}

MultiPoly MultiPoly::operator+(const MultiPoly& other) const {
  if (other.num_vars_ != num_vars_) throw InputError("variable count mismatch");
  std::vector<Term> all = terms_;
  all.insert(all.end(), other.terms_.begin(), other.terms_.end());
  return MultiPoly(num_vars_, std::move(all));
}

MultiPoly MultiPoly::operator-() const {
  std::vector<Term> all = terms_;
  for (auto& t : all) t.coef = -t.coef;
  return MultiPoly(num_vars_, std::move(all));
}

MultiPoly MultiPoly::operator-(const MultiPoly& other) const { return *this + (-other); }

MultiPoly MultiPoly::operator*(const MultiPoly& other) const {
  if (other.num_vars_ != num_vars_) throw InputError("variable count mismatch");
  std::vector<Term> all;
  all.reserve(terms_.size() * other.terms_.size());
  for (const auto& a : terms_) {
    for (const auto& b : other.terms_) {
      Exponents e(num_vars_);
      for (std::size_t i = 0; i < num_vars_; ++i) e[i] = a.exponents[i] + b.exponents[i];
      all.push_back(Term{std::move(e), a.coef * b.coef});
    }
  }
  return MultiPoly(num_vars_, std::move(all));
}

MultiPoly MultiPoly::pow(unsigned e) const {
  MultiPoly result = constant(num_vars_, 1);
  MultiPoly base = *this;
  while (e) {
    if (e & 1) result = result * base;
    e >>= 1;
    if (e) base = base * base;
  }
  return result;
}

namespace {

constexpr unsigned kMaxExponent = 1u << 16;

class Parser {
 public:
  Parser(const std::string& text, const std::vector<std::string>& vars) : text_(text), vars_(vars) {}

  MultiPoly parse() {
    MultiPoly p = expr();
    skip_space();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return p;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw InputError("polynomial parse error at position " + std::to_string(pos_) + ": " + what + " in \"" + text_ +
                     "\"");
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

  MultiPoly expr() {
    MultiPoly acc = term();
    for (;;) {
      if (accept('+'))
        acc = acc + term();
      else if (accept('-'))
        acc = acc - term();
      else
        return acc;
    }
  }

  MultiPoly term() {
    MultiPoly acc = unary();
    while (accept('*')) acc = acc * unary();
    return acc;
  }

  MultiPoly unary() {
    if (accept('-')) return -unary();
    if (accept('+')) return unary();
    return power();
  }

  MultiPoly power() {
    MultiPoly base = primary();
    if (accept('^')) {
      skip_space();
      std::size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      if (start == pos_) fail("exponent must be a non-negative integer literal");
      const std::string digits = text_.substr(start, pos_ - start);
      if (digits.size() > 6 || std::stoul(digits) > kMaxExponent) fail("exponent too large");
      return base.pow(static_cast<unsigned>(std::stoul(digits)));
    }
    return base;
  }

  MultiPoly primary() {
    skip_space();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      MultiPoly inner = expr();
      if (!accept(')')) fail("expected ')'");
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      return MultiPoly::constant(vars_.size(), mpz_class(text_.substr(start, pos_ - start)));
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (pos_ < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
        ++pos_;
      const std::string name = text_.substr(start, pos_ - start);
      auto it = std::find(vars_.begin(), vars_.end(), name);
      if (it == vars_.end()) {
        pos_ = start;
        fail("unknown identifier '" + name + "'");
      }
      return MultiPoly::variable(vars_.size(), static_cast<std::size_t>(it - vars_.begin()));
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }

  const std::string& text_;
  const std::vector<std::string>& vars_;
  std::size_t pos_ = 0;
};

}  // namespace

MultiPoly parse_polynomial(const std::string& text, const std::vector<std::string>& variables) {
  return Parser(text, variables).parse();
}

std::string to_string(const MultiPoly& poly, const std::vector<std::string>& variables) {
  if (poly.is_zero()) return "0";
  std::string out;
  for (const auto& t : poly.terms()) {
    mpz_class c = t.coef;
    if (out.empty()) {
      if (c < 0) out += "-";
    } else {
      out += c < 0 ? " - " : " + ";
    }
    c = abs(c);
    std::string mono;
    for (std::size_t i = 0; i < t.exponents.size(); ++i) {
      if (t.exponents[i] == 0) continue;
      if (!mono.empty()) mono += "*";
      mono += variables.at(i);
      if (t.exponents[i] > 1) mono += "^" + std::to_string(t.exponents[i]);
    }
    if (mono.empty())
      out += c.get_str();
    else if (c == 1)
      out += mono;
    else
      out += c.get_str() + "*" + mono;
  }
  return out;
}

nlohmann::json to_json(const MultiPoly& poly, const std::vector<std::string>& variables) {
  nlohmann::json terms = nlohmann::json::array();
  for (const auto& t : poly.terms()) terms.push_back({{"exp", t.exponents}, {"coef", t.coef.get_str()}});
  return {{"vars", variables}, {"terms", terms}};
}

MultiPoly poly_from_json(const nlohmann::json& j, const std::vector<std::string>& variables) {
  if (j.is_string()) return parse_polynomial(j.get<std::string>(), variables);
  if (!j.is_object() || !j.contains("terms")) throw InputError("polynomial must be a string or a term-list object");
  if (j.contains("vars") && j.at("vars").get<std::vector<std::string>>() != variables)
    throw InputError("term-list variables do not match the variety's variables");
  std::vector<Term> terms;
  for (const auto& t : j.at("terms")) {
    Term term;
    term.exponents = t.at("exp").get<Exponents>();
    if (term.exponents.size() != variables.size()) throw InputError("exponent vector has wrong length");
    const auto& coef = t.at("coef");
    if (coef.is_string()) {
      if (term.coef.set_str(coef.get<std::string>(), 10) != 0) throw InputError("bad coefficient string");
    } else {
      term.coef = mpz_class(std::to_string(coef.get<long long>()));
    }
    terms.push_back(std::move(term));
  }
  return MultiPoly(variables.size(), std::move(terms));
}

ReducedPoly reduce_mod(const MultiPoly& poly, std::uint32_t p) {
  ReducedPoly out;
  out.num_vars = poly.num_vars();
  out.p = p;
  for (const auto& t : poly.terms()) {
    mpz_class r = t.coef % p;
    if (r < 0) r += p;
    if (r != 0) out.terms.push_back(ReducedTerm{t.exponents, static_cast<std::uint32_t>(r.get_ui())});
  }
  return out;
}

namespace {

template <typename Terms, typename CoefFn>
Element evaluate_terms(const Terms& terms, std::size_t num_vars, std::span<const Element> point, const Field& field,
                       CoefFn coef_of) {
  if (point.size() != num_vars)
    throw InputError("point has " + std::to_string(point.size()) + " coordinates, expected " +
                     std::to_string(num_vars));
  // ladders[v][k] = point[v]^k, extended lazily
  std::vector<std::vector<Element>> ladders(num_vars);
  auto power = [&](std::size_t v, std::uint32_t k) -> const Element& {
    auto& ladder = ladders[v];
    if (ladder.empty()) ladder.push_back(field.one());
    while (ladder.size() <= k) ladder.push_back(field.mul(ladder.back(), point[v]));
    return ladder[k];
  };
  Element acc = field.zero();
  for (const auto& t : terms) {
    Element value = coef_of(t);
    for (std::size_t v = 0; v < num_vars; ++v)
      if (t.exponents[v] != 0) value = field.mul(value, power(v, t.exponents[v]));
    acc = field.add(acc, value);
  }
  return acc;
}

}  // namespace

Element evaluate(const MultiPoly& poly, std::span<const Element> point, const Field& field) {
  return evaluate_terms(poly.terms(), poly.num_vars(), point, field,
                        [&](const Term& t) { return field.from_integer(t.coef); });
}

Element evaluate(const ReducedPoly& poly, std::span<const Element> point, const Field& field) {
  if (poly.p != field.characteristic()) throw InputError("polynomial reduced modulo a different prime");
  return evaluate_terms(poly.terms, poly.num_vars, point, field,
                        [&](const ReducedTerm& t) { return field.from_integer(mpz_class(t.coef)); });
}

}  // namespace colevel
