#pragma once

// Polynomials in the free superalgebra F<Y u Z>: rational combinations of
// words in even variables y_i, odd variables z_j, and ungraded x_k.
//
// Text form: "3/2 * y1 z2 y1 - z1 z2 + 1". The parser also accepts
// parentheses and left-normed brackets "[a, b, c]" as factors; the printer
// always writes the expanded form, and parse(print(p)) == p.

#include <algorithm>
#include <cctype>
#include <compare>
#include <map>
#include <ostream>
#include <numeric>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "supergrass/errors.hpp"
#include "supergrass/scalar.hpp"

namespace supergrass {

enum class Sort { Y, Z, X };

struct Variable {
  Sort sort = Sort::X;
  int index = 1;

  static Variable y(int i) { return {Sort::Y, i}; }
  static Variable z(int i) { return {Sort::Z, i}; }
  static Variable x(int i) { return {Sort::X, i}; }

  // Required degree of a substituted value; -1 for ungraded.
  int parity() const { return sort == Sort::Y ? 0 : sort == Sort::Z ? 1 : -1; }

  friend auto operator<=>(const Variable&, const Variable&) = default;
};

inline std::string to_string(Variable v) {
  const char c = v.sort == Sort::Y ? 'y' : v.sort == Sort::Z ? 'z' : 'x';
  return c + std::to_string(v.index);
}

using Word = std::vector<Variable>;

class SuperPolynomial {
 public:
  SuperPolynomial() = default;

  static SuperPolynomial constant(Scalar c) { return term(Word{}, std::move(c)); }
  static SuperPolynomial variable(Variable v) { return term(Word{v}); }
  static SuperPolynomial term(Word w, Scalar c = Scalar(1)) {
    SuperPolynomial p;
    if (c != 0) p.terms_.emplace(std::move(w), std::move(c));
    return p;
  }

  const std::map<Word, Scalar>& terms() const& { return terms_; }
  std::map<Word, Scalar> terms() && { return std::move(terms_); }
  bool is_zero() const { return terms_.empty(); }

  std::set<Variable> variables() const {
    std::set<Variable> out;
    for (const auto& [w, c] : terms_) out.insert(w.begin(), w.end());
    return out;
  }

  // Longest word length.
  int degree() const {
    std::size_t d = 0;
    for (const auto& [w, c] : terms_) d = std::max(d, w.size());
    return static_cast<int>(d);
  }

  int degree_in(Variable v) const {
    long d = 0;
    for (const auto& [w, c] : terms_) d = std::max(d, static_cast<long>(std::count(w.begin(), w.end(), v)));
    return static_cast<int>(d);
  }

  // Each word uses every variable of the polynomial exactly once.
  bool is_multilinear() const {
    const auto vars = variables();
    for (const auto& [w, c] : terms_) {
      if (w.size() != vars.size()) return false;
      if (std::set<Variable>(w.begin(), w.end()).size() != w.size()) return false;
    }
    return true;
  }

  SuperPolynomial& operator+=(const SuperPolynomial& rhs) {
    for (const auto& [w, c] : rhs.terms_) add_term(w, c);
    return *this;
  }
  SuperPolynomial& operator-=(const SuperPolynomial& rhs) {
    for (const auto& [w, c] : rhs.terms_) add_term(w, -c);
    return *this;
  }
  friend SuperPolynomial operator+(SuperPolynomial a, const SuperPolynomial& b) { return a += b; }
  friend SuperPolynomial operator-(SuperPolynomial a, const SuperPolynomial& b) { return a -= b; }
  friend SuperPolynomial operator-(const SuperPolynomial& a) { return SuperPolynomial() - a; }
  friend SuperPolynomial operator*(const Scalar& c, const SuperPolynomial& a) {
    SuperPolynomial out;
    if (c == 0) return out;
    for (const auto& [w, coef] : a.terms_) out.terms_.emplace(w, coef * c);
    return out;
  }
  friend SuperPolynomial operator*(const SuperPolynomial& a, const SuperPolynomial& b) {
    SuperPolynomial out;
    for (const auto& [u, cu] : a.terms_)
      for (const auto& [v, cv] : b.terms_) {
        Word w = u;
        w.insert(w.end(), v.begin(), v.end());
        out.add_term(w, cu * cv);
      }
    return out;
  }
  friend bool operator==(const SuperPolynomial&, const SuperPolynomial&) = default;

  void add_term(const Word& w, const Scalar& c) {
    if (c == 0) return;
    auto [it, inserted] = terms_.emplace(w, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

 private:
  std::map<Word, Scalar> terms_;
};

inline SuperPolynomial commutator(const SuperPolynomial& a, const SuperPolynomial& b) { return a * b - b * a; }

inline SuperPolynomial left_normed(std::span<const SuperPolynomial> xs) {
  if (xs.size() < 2) throw InvalidArgument("left_normed needs at least two arguments");
  SuperPolynomial acc = commutator(xs[0], xs[1]);
  for (std::size_t i = 2; i < xs.size(); ++i) acc = commutator(acc, xs[i]);
  return acc;
}

inline std::string to_string(const SuperPolynomial& p) {
  if (p.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [w, c] : p.terms()) {
    Scalar mag = c < 0 ? Scalar(-c) : c;
    if (first)
      out += c < 0 ? "-" : "";
    else
      out += c < 0 ? " - " : " + ";
    first = false;
    if (w.empty()) {
      out += to_string(mag);
      continue;
    }
    if (mag != 1) out += to_string(mag) + " * ";
    for (std::size_t i = 0; i < w.size(); ++i) {
      if (i) out += " ";
      out += to_string(w[i]);
    }
  }
  return out;
}

inline std::ostream& operator<<(std::ostream& os, const SuperPolynomial& p) { return os << to_string(p); }
inline std::ostream& operator<<(std::ostream& os, Variable v) { return os << to_string(v); }

namespace detail {

class PolyParser {
 public:
  explicit PolyParser(std::string_view text) : text_(text) {}

  SuperPolynomial parse() {
    SuperPolynomial p = sum();
    skip_space();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return p;
  }

 private:
  SuperPolynomial sum() {
    SuperPolynomial acc;
    bool negate = false;
    skip_space();
    if (consume_sign(negate)) skip_space();
    acc = negate ? -product() : product();
    while (true) {
      skip_space();
      bool neg = false;
      if (!consume_sign(neg)) break;
      SuperPolynomial t = product();
      acc = neg ? acc - t : acc + t;
    }
    return acc;
  }

  // Optional leading rational (with optional '*'), then factors.
  SuperPolynomial product() {
    skip_space();
    SuperPolynomial acc = SuperPolynomial::constant(Scalar(1));
    bool any = false;
    if (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      acc = SuperPolynomial::constant(rational());
      any = true;
      skip_space();
      if (peek('*')) {
        ++pos_;
        skip_space();
        acc = acc * factor();
      }
    }
    while (true) {
      skip_space();
      if (pos_ >= text_.size()) break;
      const char c = text_[pos_];
      if (c == 'x' || c == 'y' || c == 'z' || c == '[' || c == '(') {
        acc = acc * factor();
        any = true;
        skip_space();
        if (peek('*')) {
          ++pos_;
          skip_space();
        }
      } else {
        break;
      }
    }
    if (!any) fail("expected a term");
    return acc;
  }

  SuperPolynomial factor() {
    skip_space();
    if (pos_ >= text_.size()) fail("expected a factor");
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      SuperPolynomial inner = sum();
      expect(')');
      return inner;
    }
    if (c == '[') {
      ++pos_;
      std::vector<SuperPolynomial> parts{sum()};
      skip_space();
      while (peek(',')) {
        ++pos_;
        parts.push_back(sum());
        skip_space();
      }
      expect(']');
      if (parts.size() < 2) fail("a bracket needs at least two entries");
      return left_normed(parts);
    }
    if (c == 'x' || c == 'y' || c == 'z') {
      ++pos_;
      const std::size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      if (start == pos_) fail("variable needs an index");
      const int index = std::stoi(std::string(text_.substr(start, pos_ - start)));
      if (index < 1) fail("variable index must be positive");
      const Sort sort = c == 'y' ? Sort::Y : c == 'z' ? Sort::Z : Sort::X;
      return SuperPolynomial::variable(Variable{sort, index});
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }

  Scalar rational() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() && (std::isdigit(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '/')) ++pos_;
    try {
      return parse_scalar(text_.substr(start, pos_ - start));
    } catch (const ParseError& e) {
      fail(e.what());
    }
  }

  bool consume_sign(bool& negate) {
    if (peek('+')) {
      ++pos_;
      negate = false;
      return true;
    }
    if (peek('-')) {
      ++pos_;
      negate = true;
      return true;
    }
    // U+2212 MINUS SIGN
    if (text_.substr(pos_, 3) == "\xE2\x88\x92") {
      pos_ += 3;
      negate = true;
      return true;
    }
    return false;
  }

  bool peek(char c) const { return pos_ < text_.size() && text_[pos_] == c; }
  void expect(char c) {
    skip_space();
    if (!peek(c)) fail(std::string("expected '") + c + "'");
    ++pos_;
  }
  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError("poly@" + std::to_string(pos_), msg);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace detail

inline SuperPolynomial parse_polynomial(std::string_view text) { return detail::PolyParser(text).parse(); }

// z1 z2 ... zm
inline SuperPolynomial product_identity(int m) {
  if (m < 1) throw InvalidArgument("product_identity needs m >= 1");
  Word w;
  for (int i = 1; i <= m; ++i) w.push_back(Variable::z(i));
  return SuperPolynomial::term(std::move(w));
}

// [[v1, v2], v3] with slot i even (y_i) or odd (z_i) as requested.
inline SuperPolynomial graded_triple_commutator(int p1, int p2, int p3) {
  const int parities[3] = {p1, p2, p3};
  std::vector<SuperPolynomial> slots;
  for (int i = 0; i < 3; ++i) {
    if (parities[i] != 0 && parities[i] != 1) throw InvalidArgument("slot parity must be 0 or 1");
    slots.push_back(SuperPolynomial::variable(parities[i] == 0 ? Variable::y(i + 1) : Variable::z(i + 1)));
  }
  return left_normed(slots);
}

// The eight parity patterns of the triple commutator, (0,0,0) first.
inline std::vector<SuperPolynomial> all_graded_triple_commutators() {
  std::vector<SuperPolynomial> out;
  for (int mask = 0; mask < 8; ++mask)
    out.push_back(graded_triple_commutator((mask >> 2) & 1, (mask >> 1) & 1, mask & 1));
  return out;
}

// s_n = sum over permutations of sgn(sigma) x_{sigma(1)} ... x_{sigma(n)}.
inline SuperPolynomial standard_polynomial(int n) {
  if (n < 2) throw InvalidArgument("standard_polynomial needs n >= 2");
  std::vector<int> perm(static_cast<std::size_t>(n));
  std::iota(perm.begin(), perm.end(), 1);
  SuperPolynomial out;
  do {
    int inversions = 0;
    for (std::size_t i = 0; i < perm.size(); ++i)
      for (std::size_t j = i + 1; j < perm.size(); ++j)
        if (perm[i] > perm[j]) ++inversions;
    Word w;
    for (int i : perm) w.push_back(Variable::x(i));
    out.add_term(w, Scalar(inversions % 2 == 0 ? 1 : -1));
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

// Multihomogeneous components of p, keyed by degree in each variable.
inline std::map<std::map<Variable, int>, SuperPolynomial> multihomogeneous_components(const SuperPolynomial& p) {
  std::map<std::map<Variable, int>, SuperPolynomial> out;
  for (const auto& [w, c] : p.terms()) {
    std::map<Variable, int> degree;
    for (Variable v : w) ++degree[v];
    out[degree].add_term(w, c);
  }
  return out;
}

struct Linearization {
  SuperPolynomial original_component;
  SuperPolynomial multilinear;
  // Fresh variable -> the original variable it replaces.
  std::map<Variable, Variable> origin;
};

// Full polarization of a multihomogeneous polynomial: each variable of degree
// d becomes d fresh variables of the same sort, summed over every assignment
// of copies to occurrences. Fresh indices are allocated per sort in order of
// (original variable, copy number).
inline Linearization linearize_component(const SuperPolynomial& component) {
  std::map<Variable, int> degree;
  for (const auto& [w, c] : component.terms()) {
    std::map<Variable, int> local;
    for (Variable v : w) ++local[v];
    for (auto [v, d] : local) degree[v] = std::max(degree[v], d);
  }
  std::map<Variable, std::vector<Variable>> copies;
  std::map<Variable, Variable> origin;
  std::map<Sort, int> next_index;
  for (const auto& [v, d] : degree)
    for (int c = 0; c < d; ++c) {
      Variable fresh{v.sort, ++next_index[v.sort]};
      copies[v].push_back(fresh);
      origin.emplace(fresh, v);
    }

  SuperPolynomial result;
  for (const auto& [w, c] : component.terms()) {
    std::map<Variable, std::vector<std::size_t>> positions;
    for (std::size_t i = 0; i < w.size(); ++i) positions[w[i]].push_back(i);
    std::vector<std::pair<Variable, std::vector<std::size_t>>> groups(positions.begin(), positions.end());
    std::vector<std::vector<std::size_t>> perms;
    for (const auto& [v, pos] : groups) {
      std::vector<std::size_t> perm(pos.size());
      std::iota(perm.begin(), perm.end(), 0);
      perms.push_back(perm);
    }
    // Odometer over the product of per-variable permutations.
    while (true) {
      Word out = w;
      for (std::size_t g = 0; g < groups.size(); ++g) {
        const auto& [v, pos] = groups[g];
        for (std::size_t i = 0; i < pos.size(); ++i) out[pos[i]] = copies[v][perms[g][i]];
      }
      result.add_term(out, c);
      std::size_t g = 0;
      for (; g < perms.size(); ++g) {
        if (std::next_permutation(perms[g].begin(), perms[g].end())) break;
      }
      if (g == perms.size()) break;
    }
  }
  return Linearization{component, result, origin};
}

// Multilinear polynomials whose simultaneous vanishing on a superalgebra is
// equivalent to p being an identity there (characteristic zero).
inline std::vector<Linearization> multilinearize_detailed(const SuperPolynomial& p) {
  std::vector<Linearization> out;
  for (const auto& [degree, component] : multihomogeneous_components(p)) {
    Linearization lin = linearize_component(component);
    if (!lin.multilinear.is_zero()) out.push_back(std::move(lin));
  }
  return out;
}

inline std::vector<SuperPolynomial> multilinearize(const SuperPolynomial& p) {
  std::vector<SuperPolynomial> out;
  for (auto& lin : multilinearize_detailed(p)) out.push_back(std::move(lin.multilinear));
  return out;
}

}  // namespace supergrass
