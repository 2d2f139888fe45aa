#pragma once

// Exact arithmetic in the truncated Grassmann algebra E_N over Q.
//
// Generators e_1..e_N anticommute and square to zero. A basis word
// e_{i1}...e_{ik} with i1 < ... < ik is stored as a 64-bit mask (e_i <-> bit
// i-1), so N is limited to 64. Elements are sparse, sorted, zero-free term
// lists; structural equality is algebraic equality.
//
// Truncation contract: E_N has central elements near the top degree that the
// infinite algebra does not (any m with m*e_i = 0 for every i outside m).
// Code that uses E_N as a stand-in for E must keep N >= (largest degree in
// play) + 2; see has_truncation_slack. The kernel itself does not enforce
// this.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <ostream>
#include <span>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "supergrass/errors.hpp"
#include "supergrass/scalar.hpp"

namespace supergrass {

inline constexpr int kMaxGenerators = 64;

constexpr bool has_truncation_slack(int max_degree, int n) { return n >= max_degree + 2; }

inline void check_truncation(int n) {
  if (n < 1 || n > kMaxGenerators)
    throw InvalidArgument("truncation N must lie in 1.." + std::to_string(kMaxGenerators) +
                          ", got " + std::to_string(n));
}

inline void check_generator(int index, int n) {
  if (index < 1 || index > n)
    throw IndexOutOfRange("generator index " + std::to_string(index) + " outside 1.." +
                          std::to_string(n));
}

class Monomial {
 public:
  constexpr Monomial() = default;

  static constexpr Monomial from_bits(std::uint64_t bits) { return Monomial(bits); }

  static Monomial generator(int index) {
    check_generator(index, kMaxGenerators);
    return Monomial(std::uint64_t{1} << (index - 1));
  }

  // Indices must be strictly increasing.
  static Monomial of(std::span<const int> indices) {
    std::uint64_t bits = 0;
    int previous = 0;
    for (int i : indices) {
      check_generator(i, kMaxGenerators);
      if (i <= previous) throw InvalidArgument("monomial indices must be strictly increasing");
      bits |= std::uint64_t{1} << (i - 1);
      previous = i;
    }
    return Monomial(bits);
  }
  static Monomial of(std::initializer_list<int> indices) {
    return of(std::span<const int>(indices.begin(), indices.size()));
  }

  // e_1 e_2 ... e_n
  static constexpr Monomial prefix(int n) {
    return Monomial(n >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1);
  }

  constexpr std::uint64_t bits() const { return bits_; }
  constexpr int length() const { return std::popcount(bits_); }
  constexpr int parity() const { return length() & 1; }
  constexpr bool is_unit() const { return bits_ == 0; }
  constexpr bool contains(int index) const { return (bits_ >> (index - 1)) & 1U; }
  constexpr bool disjoint(Monomial other) const { return (bits_ & other.bits_) == 0; }
  constexpr int max_index() const { return bits_ == 0 ? 0 : 64 - std::countl_zero(bits_); }
  constexpr int min_index() const { return bits_ == 0 ? 0 : std::countr_zero(bits_) + 1; }

  std::vector<int> indices() const {
    std::vector<int> out;
    out.reserve(static_cast<std::size_t>(length()));
    for (std::uint64_t b = bits_; b != 0; b &= b - 1) out.push_back(std::countr_zero(b) + 1);
    return out;
  }

  constexpr Monomial with(int index) const { return Monomial(bits_ | (std::uint64_t{1} << (index - 1))); }
  constexpr Monomial without(int index) const {
    return Monomial(bits_ & ~(std::uint64_t{1} << (index - 1)));
  }

  friend constexpr bool operator==(Monomial, Monomial) = default;

  // Lexicographic order on the index sequence; a proper prefix sorts first,
  // so the unit is the least monomial.
  friend constexpr bool operator<(Monomial a, Monomial b) {
    const std::uint64_t diff = a.bits_ ^ b.bits_;
    if (diff == 0) return false;
    const int d = std::countr_zero(diff);
    const std::uint64_t above = d == 63 ? 0 : ~((std::uint64_t{2} << d) - 1);
    if ((a.bits_ >> d) & 1U) return (b.bits_ & above) != 0;
    return (a.bits_ & above) == 0;
  }
  friend constexpr bool operator>(Monomial a, Monomial b) { return b < a; }

 private:
  constexpr explicit Monomial(std::uint64_t bits) : bits_(bits) {}
  std::uint64_t bits_ = 0;
};

// Reordering sign of a*b: (-1)^#{(i in a, j in b) : i > j}.
constexpr int reorder_sign(Monomial a, Monomial b) {
  unsigned crossings = 0;
  for (std::uint64_t rest = b.bits(); rest != 0; rest &= rest - 1) {
    const int j = std::countr_zero(rest);
    crossings += static_cast<unsigned>(std::popcount(j == 63 ? 0 : a.bits() >> (j + 1)));
  }
  return (crossings & 1U) ? -1 : 1;
}

struct SignedMonomial {
  int sign;
  Monomial monomial;
  friend bool operator==(const SignedMonomial&, const SignedMonomial&) = default;
};

// Empty result means the product vanishes (shared generator).
constexpr std::optional<SignedMonomial> mono_mul(Monomial a, Monomial b) {
  if (!a.disjoint(b)) return std::nullopt;
  return SignedMonomial{reorder_sign(a, b), Monomial::from_bits(a.bits() | b.bits())};
}

inline std::string to_string(Monomial m) {
  if (m.is_unit()) return "1";
  std::string out;
  for (int i : m.indices()) out += "e" + std::to_string(i);
  return out;
}

struct Term {
  Monomial monomial;
  Scalar coef;
  friend bool operator==(const Term&, const Term&) = default;
};

class Element {
 public:
  explicit Element(int n) : n_(n) { check_truncation(n); }

  static Element zero(int n) { return Element(n); }
  static Element constant(int n, Scalar c) { return monomial(n, Monomial{}, std::move(c)); }
  static Element one(int n) { return constant(n, Scalar(1)); }
  static Element generator(int n, int index) {
    check_truncation(n);
    check_generator(index, n);
    return monomial(n, Monomial::generator(index));
  }
  static Element monomial(int n, Monomial m, Scalar c = Scalar(1)) {
    Element out(n);
    if (m.max_index() > n)
      throw IndexOutOfRange("monomial " + to_string(m) + " exceeds truncation N=" + std::to_string(n));
    if (c != 0) out.terms_.push_back(Term{m, std::move(c)});
    return out;
  }
  // Sorts, merges duplicates and drops zeros.
  static Element from_terms(int n, std::vector<Term> terms) {
    Element out(n);
    for (const Term& t : terms)
      if (t.monomial.max_index() > n)
        throw IndexOutOfRange("monomial " + to_string(t.monomial) + " exceeds truncation N=" +
                              std::to_string(n));
    out.terms_ = std::move(terms);
    out.canonicalize();
    return out;
  }

  int n() const { return n_; }
  const std::vector<Term>& terms() const& { return terms_; }
  std::vector<Term> terms() && { return std::move(terms_); }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }

  Scalar coefficient(Monomial m) const {
    auto it = std::lower_bound(terms_.begin(), terms_.end(), m,
                               [](const Term& t, Monomial key) { return t.monomial < key; });
    if (it != terms_.end() && it->monomial == m) return it->coef;
    return Scalar(0);
  }
  Scalar constant_term() const { return coefficient(Monomial{}); }

  template <class Pred>
  Element filter(Pred keep) const {
    Element out(n_);
    for (const Term& t : terms_)
      if (keep(t.monomial)) out.terms_.push_back(t);
    return out;
  }
  Element part_of_length(int len) const {
    return filter([len](Monomial m) { return m.length() == len; });
  }
  // Smallest length with a nonzero coefficient; -1 for zero.
  int min_length() const {
    int best = -1;
    for (const Term& t : terms_)
      if (best < 0 || t.monomial.length() < best) best = t.monomial.length();
    return best;
  }
  int max_length() const {
    int best = -1;
    for (const Term& t : terms_) best = std::max(best, t.monomial.length());
    return best;
  }

  Element& operator+=(const Element& rhs) {
    require_same(rhs);
    std::vector<Term> merged;
    merged.reserve(terms_.size() + rhs.terms_.size());
    auto a = terms_.begin();
    auto b = rhs.terms_.begin();
    while (a != terms_.end() || b != rhs.terms_.end()) {
      if (b == rhs.terms_.end() || (a != terms_.end() && a->monomial < b->monomial)) {
        merged.push_back(std::move(*a++));
      } else if (a == terms_.end() || b->monomial < a->monomial) {
        merged.push_back(*b++);
      } else {
        Scalar c = a->coef + b->coef;
        if (c != 0) merged.push_back(Term{a->monomial, std::move(c)});
        ++a;
        ++b;
      }
    }
    terms_ = std::move(merged);
    return *this;
  }
  Element& operator-=(const Element& rhs) { return *this += -rhs; }
  Element& operator*=(const Scalar& c) {
    if (c == 0) {
      terms_.clear();
    } else {
      for (Term& t : terms_) t.coef *= c;
    }
    return *this;
  }

  friend Element operator+(Element a, const Element& b) { return a += b; }
  friend Element operator-(Element a, const Element& b) { return a -= b; }
  friend Element operator-(Element a) {
    for (Term& t : a.terms_) t.coef = -t.coef;
    return a;
  }
  friend Element operator*(const Scalar& c, Element a) { return a *= c; }
  friend Element operator*(Element a, const Scalar& c) { return a *= c; }

  friend Element operator*(const Element& a, const Element& b) {
    a.require_same(b);
    Element out(a.n_);
    if (a.is_zero() || b.is_zero()) return out;
    out.terms_.reserve(a.terms_.size() * b.terms_.size());
    for (const Term& x : a.terms_)
      for (const Term& y : b.terms_)
        if (auto p = mono_mul(x.monomial, y.monomial))
          out.terms_.push_back(Term{p->monomial, p->sign > 0 ? x.coef * y.coef : -(x.coef * y.coef)});
    out.canonicalize();
    return out;
  }

  friend bool operator==(const Element& a, const Element& b) {
    return a.n_ == b.n_ && a.terms_ == b.terms_;
  }

  void require_same(const Element& other) const {
    if (n_ != other.n_) throw TruncationMismatch(n_, other.n_);
  }

 private:
  void canonicalize() {
    std::sort(terms_.begin(), terms_.end(),
              [](const Term& x, const Term& y) { return x.monomial < y.monomial; });
    std::size_t out = 0;
    for (std::size_t i = 0; i < terms_.size();) {
      Monomial m = terms_[i].monomial;
      Scalar c = std::move(terms_[i].coef);
      std::size_t j = i + 1;
      for (; j < terms_.size() && terms_[j].monomial == m; ++j) c += terms_[j].coef;
      if (c != 0) terms_[out++] = Term{m, std::move(c)};
      i = j;
    }
    terms_.resize(out);
  }

  int n_;
  std::vector<Term> terms_;
};

inline Element add(const Element& a, const Element& b) { return a + b; }
inline Element neg(const Element& a) { return -a; }
inline Element scale(const Scalar& c, const Element& a) { return c * a; }
inline Element mul(const Element& a, const Element& b) { return a * b; }

inline Element commutator(const Element& a, const Element& b) { return a * b - b * a; }

// [[x1, x2], x3], ... folded left to right.
inline Element left_normed(std::span<const Element> xs) {
  if (xs.size() < 2) throw InvalidArgument("left_normed needs at least two arguments");
  Element acc = commutator(xs[0], xs[1]);
  for (std::size_t i = 2; i < xs.size(); ++i) acc = commutator(acc, xs[i]);
  return acc;
}
inline Element left_normed(std::initializer_list<Element> xs) {
  return left_normed(std::span<const Element>(xs.begin(), xs.size()));
}

struct ParityParts {
  Element even;
  Element odd;
};

// Split by monomial length: the canonical grading E_(0) + E_(1).
inline ParityParts parity_split(const Element& a) {
  return {a.filter([](Monomial m) { return m.parity() == 0; }),
          a.filter([](Monomial m) { return m.parity() == 1; })};
}

inline Monomial support_mask(const Element& a) {
  std::uint64_t bits = 0;
  for (const Term& t : a.terms()) bits |= t.monomial.bits();
  return Monomial::from_bits(bits);
}

inline std::vector<int> support(const Element& a) { return support_mask(a).indices(); }

// Human-readable form, e.g. "-e1 + 2*e2e3e4".
inline std::string to_string(const Element& a) {
  if (a.is_zero()) return "0";
  std::ostringstream out;
  bool first = true;
  for (const Term& t : a.terms()) {
    Scalar c = t.coef;
    if (first) {
      if (c < 0) {
        out << "-";
        c = -c;
      }
    } else {
      out << (c < 0 ? " - " : " + ");
      if (c < 0) c = -c;
    }
    first = false;
    if (t.monomial.is_unit()) {
      out << to_string(c);
    } else {
      if (c != 1) out << to_string(c) << "*";
      out << to_string(t.monomial);
    }
  }
  return out.str();
}

inline std::ostream& operator<<(std::ostream& os, const Element& a) { return os << to_string(a); }
inline std::ostream& operator<<(std::ostream& os, Monomial m) { return os << to_string(m); }

}  // namespace supergrass
