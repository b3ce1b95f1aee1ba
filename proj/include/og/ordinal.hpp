#pragma once

// Countable ordinals below epsilon_0 in Cantor normal form.

#include <compare>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "og/error.hpp"

namespace og {

struct term;

class ordinal {
 public:
  ordinal() = default;  // zero
  ordinal(std::uint64_t n);  // NOLINT: naturals convert implicitly

  static ordinal omega();
  // omega^e * c, c >= 1
  static ordinal monomial(const ordinal& e, std::uint64_t c = 1);

  const std::vector<term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_finite() const;
  bool is_limit() const;
  bool is_successor() const { return !is_zero() && !is_limit(); }
  // finite part (coefficient of omega^0)
  std::uint64_t finite_part() const;
  // value as a natural number; throws unless finite
  std::uint64_t to_nat() const;
  // nesting depth of exponents: 0 for naturals, 1 below omega^omega, ...
  int height() const;

  std::string str() const;

  friend int compare(const ordinal& a, const ordinal& b);
  friend bool operator==(const ordinal& a, const ordinal& b) { return compare(a, b) == 0; }
  friend std::strong_ordering operator<=>(const ordinal& a, const ordinal& b) {
    int c = compare(a, b);
    return c < 0 ? std::strong_ordering::less
                 : c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal;
  }

 private:
  friend ordinal add(const ordinal& a, const ordinal& b);
  friend class ordinal_parser;
  std::vector<term> terms_;
};

struct term {
  ordinal exp;
  std::uint64_t coef = 1;
};

enum class cmp { less, equal, greater };

inline const char* cmp_name(cmp c) {
  return c == cmp::less ? "less" : c == cmp::equal ? "equal" : "greater";
}

// Parse rejects exponent towers deeper than this.
inline constexpr int max_ordinal_height = 8;

namespace detail {
inline std::uint64_t checked_add(std::uint64_t a, std::uint64_t b) {
  if (a > std::numeric_limits<std::uint64_t>::max() - b)
    throw error(errc::out_of_range, "ordinal coefficient overflow");
  return a + b;
}
}  // namespace detail

inline ordinal::ordinal(std::uint64_t n) {
  if (n) terms_.push_back(term{ordinal{}, n});
}

inline ordinal ordinal::omega() { return monomial(ordinal(1)); }

inline ordinal ordinal::monomial(const ordinal& e, std::uint64_t c) {
  if (c == 0) throw error(errc::invalid_argument, "monomial coefficient must be positive");
  ordinal r;
  r.terms_.push_back(term{e, c});
  return r;
}

inline bool ordinal::is_finite() const { return terms_.empty() || terms_.front().exp.is_zero(); }

inline bool ordinal::is_limit() const { return !terms_.empty() && !terms_.back().exp.is_zero(); }

inline std::uint64_t ordinal::finite_part() const {
  return (!terms_.empty() && terms_.back().exp.is_zero()) ? terms_.back().coef : 0;
}

inline std::uint64_t ordinal::to_nat() const {
  if (!is_finite()) throw error(errc::out_of_range, "ordinal " + str() + " is not finite");
  return finite_part();
}

inline int ordinal::height() const {
  int h = 0;
  for (const auto& t : terms_)
    if (!t.exp.is_zero()) h = std::max(h, 1 + t.exp.height());
  return h;
}

inline int compare(const ordinal& a, const ordinal& b) {
  std::size_t n = std::min(a.terms_.size(), b.terms_.size());
  for (std::size_t i = 0; i < n; ++i) {
    int c = compare(a.terms_[i].exp, b.terms_[i].exp);
    if (c) return c;
    if (a.terms_[i].coef != b.terms_[i].coef) return a.terms_[i].coef < b.terms_[i].coef ? -1 : 1;
  }
  if (a.terms_.size() == b.terms_.size()) return 0;
  return a.terms_.size() < b.terms_.size() ? -1 : 1;
}

inline cmp compare3(const ordinal& a, const ordinal& b) {
  int c = compare(a, b);
  return c < 0 ? cmp::less : c > 0 ? cmp::greater : cmp::equal;
}

// Ordinal sum: terms of a below b's leading exponent are absorbed.
inline ordinal add(const ordinal& a, const ordinal& b) {
  if (b.is_zero()) return a;
  const ordinal& lead = b.terms_.front().exp;
  ordinal r;
  for (const auto& t : a.terms_) {
    int c = compare(t.exp, lead);
    if (c > 0) {
      r.terms_.push_back(t);
    } else {
      if (c == 0) {
        r.terms_.push_back(term{lead, detail::checked_add(t.coef, b.terms_.front().coef)});
        r.terms_.insert(r.terms_.end(), b.terms_.begin() + 1, b.terms_.end());
        return r;
      }
      break;
    }
  }
  r.terms_.insert(r.terms_.end(), b.terms_.begin(), b.terms_.end());
  return r;
}

inline ordinal operator+(const ordinal& a, const ordinal& b) { return add(a, b); }

inline ordinal successor(const ordinal& a) { return add(a, ordinal(1)); }

inline bool is_limit(const ordinal& a) { return a.is_limit(); }

inline ordinal sup_finite(const std::vector<ordinal>& xs) {
  if (xs.empty()) throw error(errc::invalid_argument, "sup of an empty list");
  const ordinal* best = &xs.front();
  for (const auto& x : xs)
    if (compare(x, *best) > 0) best = &x;
  return *best;
}

// Predecessor of a successor ordinal.
inline ordinal predecessor(const ordinal& a) {
  if (!a.is_successor()) throw error(errc::invalid_argument, a.str() + " has no predecessor");
  std::vector<term> ts = a.terms();
  if (--ts.back().coef == 0) ts.pop_back();
  ordinal r;
  for (const auto& t : ts) r = add(r, ordinal::monomial(t.exp, t.coef));
  return r;
}

inline std::string ordinal::str() const {
  if (terms_.empty()) return "0";
  std::string out;
  for (const auto& t : terms_) {
    if (!out.empty()) out += '+';
    if (t.exp.is_zero()) {
      out += std::to_string(t.coef);
      continue;
    }
    out += 'w';
    const ordinal& e = t.exp;
    if (e == ordinal(1)) {
    } else if (e.is_finite() || e == ordinal::omega()) {
      out += '^' + e.str();
    } else {
      out += "^(" + e.str() + ")";
    }
    if (t.coef > 1) out += '*' + std::to_string(t.coef);
  }
  return out;
}

// Recursive-descent parser for
//   expr := term ('+' term)*
//   term := 'w' ('^' atom)? ('*' nat)? | nat
//   atom := nat | 'w' | '(' expr ')'
// 'ω' is accepted for 'w'. With a bound variable, 'n' stands for a natural
// and zero coefficients are allowed (they drop out).
class ordinal_parser {
 public:
  explicit ordinal_parser(std::string_view s, std::optional<std::uint64_t> n = std::nullopt)
      : s_(s), n_(n) {}

  ordinal parse() {
    ordinal r = expr(0);
    skip();
    if (i_ != s_.size()) fail("unexpected character");
    return r;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw error(errc::syntax, msg + " at position " + std::to_string(i_) + " in \"" +
                                  std::string(s_) + "\"");
  }
  void skip() {
    while (i_ < s_.size() && (s_[i_] == ' ' || s_[i_] == '\t')) ++i_;
  }
  bool eat(char c) {
    skip();
    if (i_ < s_.size() && s_[i_] == c) {
      ++i_;
      return true;
    }
    return false;
  }
  bool eat_omega() {
    skip();
    if (i_ < s_.size() && s_[i_] == 'w') {
      ++i_;
      return true;
    }
    if (s_.substr(i_, 2) == "\xCF\x89") {
      i_ += 2;
      return true;
    }
    return false;
  }
  bool peek_nat() {
    skip();
    return i_ < s_.size() && ((s_[i_] >= '0' && s_[i_] <= '9') || (n_ && s_[i_] == 'n'));
  }
  std::uint64_t nat() {
    skip();
    if (n_ && i_ < s_.size() && s_[i_] == 'n') {
      ++i_;
      return *n_;
    }
    if (i_ >= s_.size() || s_[i_] < '0' || s_[i_] > '9') fail("expected a natural number");
    std::uint64_t v = 0;
    while (i_ < s_.size() && s_[i_] >= '0' && s_[i_] <= '9') {
      std::uint64_t d = static_cast<std::uint64_t>(s_[i_] - '0');
      if (v > (std::numeric_limits<std::uint64_t>::max() - d) / 10) fail("number too large");
      v = v * 10 + d;
      ++i_;
    }
    return v;
  }
  std::uint64_t coefficient() {
    std::size_t at = i_;
    std::uint64_t c = nat();
    if (c == 0 && !n_) {
      i_ = at;
      fail("coefficient 0 is not allowed");
    }
    return c;
  }
  ordinal expr(int depth) {
    if (depth > max_ordinal_height)
      fail("exponent nesting deeper than " + std::to_string(max_ordinal_height) +
           " is not supported (representation is capped below epsilon_0)");
    ordinal r = term_(depth);
    while (eat('+')) r = add(r, term_(depth));
    return r;
  }
  ordinal atom(int depth) {
    if (eat('(')) {
      ordinal e = expr(depth + 1);
      if (!eat(')')) fail("expected ')'");
      return e;
    }
    if (eat_omega()) return ordinal::omega();
    if (peek_nat()) return ordinal(nat());
    fail("expected an exponent");
  }
  ordinal term_(int depth) {
    if (eat_omega()) {
      ordinal e(1);
      if (eat('^')) e = atom(depth);
      std::uint64_t c = 1;
      if (eat('*')) c = coefficient();
      if (c == 0) return ordinal{};
      ordinal r;
      r.terms_.push_back(term{e, c});
      if (r.height() > max_ordinal_height) fail("exponent nesting too deep");
      return r;
    }
    if (peek_nat()) {
      std::size_t at = i_;
      std::uint64_t v = nat();
      if (eat('*')) {
        i_ = at;
        fail("multiplication is only supported as w^e*c");
      }
      return ordinal(v);
    }
    fail("expected 'w' or a natural number");
  }

  std::string_view s_;
  std::optional<std::uint64_t> n_;
  std::size_t i_ = 0;
};

inline ordinal parse_ordinal(std::string_view text) { return ordinal_parser(text).parse(); }

// Evaluates a pattern such as "w*2+n" or "w^(n)" at a natural n.
inline ordinal eval_pattern(std::string_view pattern, std::uint64_t n) {
  return ordinal_parser(pattern, n).parse();
}

// Canonical fundamental sequence of a limit ordinal, as a pattern in n.
// Last term w^e: if e = e'+1 the sequence steps through w^e' * n,
// if e is a limit it recurses into the exponent.
inline std::string fundamental_pattern(const ordinal& a) {
  if (!a.is_limit()) throw error(errc::invalid_argument, a.str() + " is not a limit ordinal");
  std::vector<term> ts = a.terms();
  term last = ts.back();
  ts.pop_back();
  if (last.coef > 1) ts.push_back(term{last.exp, last.coef - 1});
  std::string prefix;
  for (const auto& t : ts) prefix += ordinal::monomial(t.exp, t.coef).str() + "+";
  const ordinal& e = last.exp;
  if (e.is_successor()) {
    ordinal ep = predecessor(e);
    if (ep.is_zero()) return prefix + "n";
    std::string es = ordinal::monomial(ep).str();  // "w", "w^2", "w^(w+1)"...
    return prefix + es + "*n";
  }
  return prefix + "w^(" + fundamental_pattern(e) + ")";
}

inline ordinal fundamental_element(const ordinal& a, std::uint64_t n) {
  return eval_pattern(fundamental_pattern(a), n);
}

}  // namespace og
