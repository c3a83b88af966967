#include "sgv/parse.hpp"

#include <algorithm>
#include <cctype>

namespace sgv {

namespace {

constexpr std::uint64_t kMaxExponent = 4096;

class Parser {
 public:
  Parser(std::string_view s, FieldPtr k) : s_(s), k_(std::move(k)) {}

  RationalFunc run() {
    RationalFunc r = expr(true);
    skip();
    if (pos_ != s_.size()) err("unexpected '" + std::string(1, s_[pos_]) + "'");
    return r;
  }

 private:
  [[noreturn]] void err(const std::string& msg) const { throw ParseError(pos_, msg); }

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

  RationalFunc expr(bool top) {
    RationalFunc acc = term(top);
    while (true) {
      if (eat('+')) {
        acc = add(acc, term(top), false);
      } else if (eat('-')) {
        acc = add(acc, term(top), true);
      } else {
        return acc;
      }
    }
  }

  static RationalFunc add(const RationalFunc& a, const RationalFunc& b, bool negate) {
    const UniPoly right = b.num() * a.den();
    return RationalFunc(a.num() * b.den() + (negate ? -right : right), a.den() * b.den());
  }

  RationalFunc term(bool top) {
    RationalFunc acc = unary(top);
    while (true) {
      skip();
      const std::size_t at = pos_;
      if (eat('*')) {
        acc = acc * unary(top);
      } else if (eat('/')) {
        if (top && ++top_divisions_ > 1) {
          pos_ = at;
          err("more than one top-level '/'");
        }
        const RationalFunc d = unary(top);
        if (d.num().is_zero()) {
          pos_ = at;
          fail(ErrorKind::ZeroDenominator, "division by zero at offset " + std::to_string(at));
        }
        acc = RationalFunc(acc.num() * d.den(), acc.den() * d.num());
      } else {
        return acc;
      }
    }
  }

  RationalFunc unary(bool top) {
    if (eat('-')) {
      const RationalFunc r = unary(top);
      return RationalFunc(-r.num(), r.den());
    }
    if (eat('+')) return unary(top);
    return power();
  }

  RationalFunc power() {
    RationalFunc base = atom();
    if (!eat('^')) return base;
    skip();
    const std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (pos_ == start) err("expected a nonnegative integer exponent");
    if (pos_ - start > 6) err("exponent too large");
    const std::uint64_t e = std::stoull(std::string(s_.substr(start, pos_ - start)));
    if (e > kMaxExponent) {
      pos_ = start;
      err("exponent too large");
    }
    return base.pow(e);
  }

  RationalFunc atom() {
    skip();
    if (pos_ >= s_.size()) err("unexpected end of input");
    const char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      RationalFunc r = expr(false);
      if (!eat(')')) err("expected ')'");
      return r;
    }
    if (c == 'x' || c == 'X') {
      ++pos_;
      return RationalFunc::polynomial(UniPoly::x(k_));
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      const std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      const BigInt v(std::string(s_.substr(start, pos_ - start)));
      return RationalFunc::polynomial(UniPoly::constant(k_, k_->from_big(v)));
    }
    err("unexpected '" + std::string(1, c) + "'");
  }

  std::string_view s_;
  FieldPtr k_;
  std::size_t pos_ = 0;
  int top_divisions_ = 0;
};

}  // namespace

RationalFunc parse_poly_expr(std::string_view text, const FieldPtr& field) { return Parser(text, field).run(); }

RationalFunc parse_poly_expr(std::string_view text, std::uint64_t p) { return parse_poly_expr(text, FieldCtx::prime(p)); }

namespace {

void add_into(IntBiPoly& acc, const IntBiPoly& b, int sign) {
  for (const auto& [ij, c] : b) {
    BigInt& slot = acc[ij];
    slot += sign * c;
    if (slot == 0) acc.erase(ij);
  }
}

IntBiPoly mul(const IntBiPoly& a, const IntBiPoly& b) {
  IntBiPoly out;
  for (const auto& [ij, c] : a)
    for (const auto& [kl, d] : b) add_into(out, IntBiPoly{{{ij.first + kl.first, ij.second + kl.second}, c * d}}, 1);
  return out;
}

constexpr std::uint64_t kMaxIntExponent = 64;

class IntParser {
 public:
  explicit IntParser(std::string_view s) : s_(s) {}

  IntBiPoly run() {
    IntBiPoly r = expr();
    skip();
    if (pos_ != s_.size()) err("unexpected '" + std::string(1, s_[pos_]) + "'");
    return r;
  }

 private:
  [[noreturn]] void err(const std::string& msg) const { throw ParseError(pos_, msg); }

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

  IntBiPoly expr() {
    IntBiPoly acc = term();
    while (true) {
      if (eat('+')) {
        add_into(acc, term(), 1);
      } else if (eat('-')) {
        add_into(acc, term(), -1);
      } else {
        return acc;
      }
    }
  }

  IntBiPoly term() {
    IntBiPoly acc = unary();
    while (eat('*')) acc = mul(acc, unary());
    return acc;
  }

  IntBiPoly unary() {
    if (eat('-')) {
      IntBiPoly r;
      add_into(r, unary(), -1);
      return r;
    }
    if (eat('+')) return unary();
    return power();
  }

  IntBiPoly power() {
    IntBiPoly base = atom();
    if (!eat('^')) return base;
    skip();
    const std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (pos_ == start) err("expected a nonnegative integer exponent");
    if (pos_ - start > 6 || std::stoull(std::string(s_.substr(start, pos_ - start))) > kMaxIntExponent) {
      pos_ = start;
      err("exponent too large");
    }
    const auto e = std::stoull(std::string(s_.substr(start, pos_ - start)));
    IntBiPoly r{{{0, 0}, 1}};
    for (std::uint64_t i = 0; i < e; ++i) r = mul(r, base);
    return r;
  }

  IntBiPoly atom() {
    skip();
    if (pos_ >= s_.size()) err("unexpected end of input");
    const char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      IntBiPoly r = expr();
      if (!eat(')')) err("expected ')'");
      return r;
    }
    if (c == 'x' || c == 'X') {
      ++pos_;
      return {{{1, 0}, 1}};
    }
    if (c == 'y' || c == 'Y') {
      ++pos_;
      return {{{0, 1}, 1}};
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      const std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      const BigInt v(std::string(s_.substr(start, pos_ - start)));
      if (v == 0) return {};
      return {{{0, 0}, v}};
    }
    err("unexpected '" + std::string(1, c) + "'");
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

}  // namespace

IntBiPoly parse_int_bipoly(std::string_view text) { return IntParser(text).run(); }

std::string to_string(const IntBiPoly& F) {
  if (F.empty()) return "0";
  std::string out;
  // Highest total degree first, then higher powers of x.
  std::vector<std::pair<std::pair<int, int>, BigInt>> terms(F.begin(), F.end());
  std::sort(terms.begin(), terms.end(), [](const auto& a, const auto& b) {
    const int da = a.first.first + a.first.second, db = b.first.first + b.first.second;
    return da != db ? da > db : a.first.first > b.first.first;
  });
  for (const auto& [ij, c] : terms) {
    const bool neg = c < 0;
    const BigInt mag = neg ? BigInt(-c) : c;
    if (out.empty()) {
      if (neg) out += "-";
    } else {
      out += neg ? " - " : " + ";
    }
    std::string mono;
    auto var = [&](char v, int e) {
      if (e == 0) return;
      if (!mono.empty()) mono += "*";
      mono += v;
      if (e > 1) mono += "^" + std::to_string(e);
    };
    var('x', ij.first);
    var('y', ij.second);
    if (mono.empty()) {
      out += mag.str();
    } else {
      out += mag == 1 ? mono : mag.str() + "*" + mono;
    }
  }
  return out;
}

}  // namespace sgv
