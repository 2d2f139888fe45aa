#pragma once

// Evaluation of superpolynomials on gradings of E_N and graded identity
// checking.
//
// Exhaustive mode multilinearizes and substitutes every tuple of spanning-set
// vectors of the matching parities. Tuples are enumerated in lexicographic
// order by slot; after each slot is fixed the partially evaluated polynomial
// is kept as a canonical tensor (pattern of remaining variables, monomial
// chunks between them), and a subtree is skipped when that tensor is zero.
// Skipped tuples all evaluate to zero, so the first witness found is the
// lexicographically first nonzero tuple.

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "supergrass/errors.hpp"
#include "supergrass/exterior.hpp"
#include "supergrass/grading.hpp"
#include "supergrass/superpoly.hpp"

namespace supergrass {

using Assignment = std::map<Variable, Element>;

class MissingAssignment : public Error {
 public:
  explicit MissingAssignment(Variable v) : Error("no value assigned to " + to_string(v)) {}
};

class ParityMismatch : public Error {
 public:
  ParityMismatch(Variable v, Degree got)
      : Error(to_string(v) + " needs a value of degree " + std::to_string(v.parity()) + ", got degree " +
              to_string(got)) {}
};

namespace detail {

inline Element evaluate_unchecked(const SuperPolynomial& p, const Assignment& assignment, int n) {
  Element total = Element::zero(n);
  for (const auto& [word, coef] : p.terms()) {
    Element product = Element::constant(n, coef);
    for (Variable v : word) {
      auto it = assignment.find(v);
      if (it == assignment.end()) throw MissingAssignment(v);
      if (it->second.n() != n) throw TruncationMismatch(n, it->second.n());
      if (product.is_zero()) continue;
      product = product * it->second;
    }
    total += product;
  }
  return total;
}

}  // namespace detail

// Plain substitution; X, Y and Z variables are all unrestricted.
inline Element evaluate(const SuperPolynomial& p, const Assignment& assignment, int n) {
  check_truncation(n);
  for (Variable v : p.variables())
    if (!assignment.count(v)) throw MissingAssignment(v);
  return detail::evaluate_unchecked(p, assignment, n);
}

// Graded substitution: y-values must be even and z-values odd in g (zero is
// allowed for either); x-values are unrestricted.
inline Element evaluate(const SuperPolynomial& p, const Assignment& assignment, const Grading& g) {
  for (Variable v : p.variables()) {
    auto it = assignment.find(v);
    if (it == assignment.end()) throw MissingAssignment(v);
    if (it->second.n() != g.n()) throw TruncationMismatch(g.n(), it->second.n());
    if (v.parity() < 0 || it->second.is_zero()) continue;
    const Degree d = degree_of(g, it->second);
    if (d != static_cast<Degree>(v.parity())) throw ParityMismatch(v, d);
  }
  return detail::evaluate_unchecked(p, assignment, g.n());
}

enum class Mode { ExhaustiveMultilinear, Randomized };

inline std::string to_string(Mode m) { return m == Mode::ExhaustiveMultilinear ? "exhaustive_multilinear" : "randomized"; }

struct Witness {
  // The polynomial the assignment is for: the checked polynomial itself, or
  // one of its multilinear components when lifting back was not attempted.
  SuperPolynomial polynomial;
  Assignment assignment;
  Element value;
};

struct IdentityOptions {
  int max_len = 0;
  Mode mode = Mode::ExhaustiveMultilinear;
  int trials = 100;
  std::uint64_t seed = 0;
};

struct Verdict {
  SuperPolynomial polynomial;
  bool holds = true;
  // Only exhaustive verdicts (and every failing verdict) are authoritative.
  bool authoritative = true;
  Mode mode = Mode::ExhaustiveMultilinear;
  int n = 0;
  int max_len = 0;
  int trials = 0;
  std::uint64_t seed = 0;
  // max_len * degree + 2 <= N: the truncation leaves room for every product.
  bool slack_ok = false;
  std::uint64_t evaluations = 0;
  std::optional<Witness> witness;
};

namespace detail {

// Candidate substitutions for a variable: the spanning set of its parity, or
// all basis monomials up to max_len for ungraded variables.
inline std::vector<Element> candidates_for(Variable v, const Grading& g, int max_len) {
  if (v.parity() >= 0) return homogeneous_spanning_set(g, v.parity(), max_len);
  std::vector<Element> out;
  for (Monomial m : monomials_up_to(g.n(), max_len)) out.push_back(Element::monomial(g.n(), m));
  return out;
}

class MultilinearSearch {
 public:
  struct Result {
    std::vector<std::size_t> tuple;
    Element value;
  };

  MultilinearSearch(const SuperPolynomial& q, std::vector<Variable> slots, std::vector<std::vector<Element>> candidates,
                    int n)
      : slots_(std::move(slots)), candidates_(std::move(candidates)), n_(n) {
    if (slots_.size() > 64) throw InvalidArgument("exhaustive search supports at most 64 variables");
    std::map<Variable, std::uint8_t> slot_of;
    for (std::size_t i = 0; i < slots_.size(); ++i) slot_of.emplace(slots_[i], static_cast<std::uint8_t>(i));
    State initial;
    for (const auto& [word, coef] : q.terms()) {
      Partial p;
      for (Variable v : word) p.pattern.push_back(slot_of.at(v));
      p.chunks.assign(word.size() + 1, Monomial{});
      p.coef = coef;
      initial.push_back(std::move(p));
    }
    canonicalize(initial);
    initial_ = std::move(initial);
  }

  std::optional<Result> run() {
    std::vector<std::size_t> tuple;
    if (initial_.empty()) return std::nullopt;
    return descend(initial_, tuple);
  }

  std::uint64_t evaluations() const { return evaluations_; }

 private:
  struct Partial {
    std::vector<std::uint8_t> pattern;
    std::vector<Monomial> chunks;
    Scalar coef;
  };
  using State = std::vector<Partial>;

  static bool key_less(const Partial& a, const Partial& b) {
    if (a.pattern != b.pattern) return a.pattern < b.pattern;
    for (std::size_t i = 0; i < a.chunks.size(); ++i)
      if (a.chunks[i] != b.chunks[i]) return a.chunks[i].bits() < b.chunks[i].bits();
    return false;
  }
  static bool key_equal(const Partial& a, const Partial& b) { return a.pattern == b.pattern && a.chunks == b.chunks; }

  static void canonicalize(State& s) {
    std::sort(s.begin(), s.end(), key_less);
    std::size_t out = 0;
    for (std::size_t i = 0; i < s.size();) {
      std::size_t j = i + 1;
      Scalar c = s[i].coef;
      for (; j < s.size() && key_equal(s[i], s[j]); ++j) c += s[j].coef;
      if (c != 0) {
        s[i].coef = std::move(c);
        if (out != i) s[out] = std::move(s[i]);
        ++out;
      }
      i = j;
    }
    s.resize(out);
  }

  State assign(const State& state, std::uint8_t slot, const Element& value) const {
    State next;
    for (const Partial& p : state) {
      const auto pos = static_cast<std::size_t>(std::find(p.pattern.begin(), p.pattern.end(), slot) - p.pattern.begin());
      const Monomial left = p.chunks[pos];
      const Monomial right = p.chunks[pos + 1];
      for (const Term& t : value.terms()) {
        auto lm = mono_mul(left, t.monomial);
        if (!lm) continue;
        auto lmr = mono_mul(lm->monomial, right);
        if (!lmr) continue;
        Partial q;
        q.pattern = p.pattern;
        q.pattern.erase(q.pattern.begin() + static_cast<std::ptrdiff_t>(pos));
        q.chunks.reserve(p.chunks.size() - 1);
        q.chunks.insert(q.chunks.end(), p.chunks.begin(), p.chunks.begin() + static_cast<std::ptrdiff_t>(pos));
        q.chunks.push_back(lmr->monomial);
        q.chunks.insert(q.chunks.end(), p.chunks.begin() + static_cast<std::ptrdiff_t>(pos) + 2, p.chunks.end());
        q.coef = p.coef * t.coef;
        if (lm->sign * lmr->sign < 0) q.coef = -q.coef;
        next.push_back(std::move(q));
      }
    }
    canonicalize(next);
    return next;
  }

  std::optional<Result> descend(const State& state, std::vector<std::size_t>& tuple) {
    const std::size_t depth = tuple.size();
    if (depth == slots_.size()) {
      ++evaluations_;
      std::vector<Term> terms;
      for (const Partial& p : state) terms.push_back(Term{p.chunks.front(), p.coef});
      Element value = Element::from_terms(n_, std::move(terms));
      if (value.is_zero()) return std::nullopt;
      return Result{tuple, std::move(value)};
    }
    const auto& options = candidates_[depth];
    for (std::size_t i = 0; i < options.size(); ++i) {
      State next = assign(state, static_cast<std::uint8_t>(depth), options[i]);
      if (next.empty()) {
        evaluations_ += pruned_leaves(depth + 1);
        continue;
      }
      tuple.push_back(i);
      auto found = descend(next, tuple);
      tuple.pop_back();
      if (found) return found;
    }
    return std::nullopt;
  }

  std::uint64_t pruned_leaves(std::size_t from_depth) const {
    std::uint64_t count = 1;
    for (std::size_t d = from_depth; d < candidates_.size(); ++d) count *= candidates_[d].size();
    return count;
  }

  std::vector<Variable> slots_;
  std::vector<std::vector<Element>> candidates_;
  int n_;
  State initial_;
  std::uint64_t evaluations_ = 0;
};

// Turns a nonzero value of a full linearization back into a substitution
// for the original polynomial: sums of subsets of the copies of each
// variable, scaled by small integers, always contain a nonzero point.
inline std::optional<Witness> lift_witness(const SuperPolynomial& p, const Linearization& lin,
                                           const Assignment& multilinear_values, int n) {
  std::map<Variable, std::vector<Variable>> copies;
  for (const auto& [fresh, orig] : lin.origin) copies[orig].push_back(fresh);
  std::vector<Variable> originals;
  for (const auto& [orig, list] : copies) originals.push_back(orig);

  std::vector<std::uint64_t> subset_counts;
  std::vector<int> scale_counts;
  double space = 1;
  for (Variable v : originals) {
    subset_counts.push_back((std::uint64_t{1} << copies[v].size()) - 1);
    scale_counts.push_back(p.degree_in(v) + 1);
    space *= static_cast<double>(subset_counts.back()) * scale_counts.back();
  }
  if (space > 200000) return std::nullopt;

  std::vector<std::uint64_t> subset(originals.size(), 1);
  std::vector<int> scale(originals.size(), 1);
  while (true) {
    Assignment candidate;
    for (std::size_t i = 0; i < originals.size(); ++i) {
      Element value = Element::zero(n);
      const auto& list = copies[originals[i]];
      for (std::size_t c = 0; c < list.size(); ++c)
        if ((subset[i] >> c) & 1U) value += multilinear_values.at(list[c]);
      candidate.emplace(originals[i], Scalar(scale[i]) * value);
    }
    Element value = detail::evaluate_unchecked(p, candidate, n);
    if (!value.is_zero()) return Witness{p, std::move(candidate), std::move(value)};
    std::size_t i = 0;
    for (; i < originals.size(); ++i) {
      if (scale[i] < scale_counts[i]) {
        ++scale[i];
        break;
      }
      scale[i] = 1;
      if (subset[i] < subset_counts[i]) {
        ++subset[i];
        break;
      }
      subset[i] = 1;
    }
    if (i == originals.size()) return std::nullopt;
  }
}

}  // namespace detail

inline Verdict is_identity(const SuperPolynomial& p, const Grading& g, const IdentityOptions& options) {
  const int n = g.n();
  if (options.max_len < 0 || options.max_len > n)
    throw InvalidArgument("max_len " + std::to_string(options.max_len) + " exceeds truncation N=" + std::to_string(n));
  if (options.mode == Mode::Randomized && options.trials < 1) throw InvalidArgument("randomized mode needs trials >= 1");

  Verdict verdict;
  verdict.polynomial = p;
  verdict.mode = options.mode;
  verdict.n = n;
  verdict.max_len = options.max_len;
  verdict.trials = options.mode == Mode::Randomized ? options.trials : 0;
  verdict.seed = options.seed;
  verdict.slack_ok = options.max_len * p.degree() + 2 <= n;

  if (options.mode == Mode::ExhaustiveMultilinear) {
    for (const Linearization& lin : multilinearize_detailed(p)) {
      const auto vars = lin.multilinear.variables();
      std::vector<Variable> slots(vars.begin(), vars.end());
      std::vector<std::vector<Element>> candidates;
      for (Variable v : slots) candidates.push_back(detail::candidates_for(v, g, options.max_len));
      detail::MultilinearSearch search(lin.multilinear, slots, candidates, n);
      auto found = search.run();
      verdict.evaluations += search.evaluations();
      if (!found) continue;

      Assignment values;
      for (std::size_t i = 0; i < slots.size(); ++i) values.emplace(slots[i], candidates[i][found->tuple[i]]);
      verdict.holds = false;
      verdict.witness = detail::lift_witness(p, lin, values, n);
      if (!verdict.witness) verdict.witness = Witness{lin.multilinear, std::move(values), std::move(found->value)};
      return verdict;
    }
    verdict.holds = true;
    return verdict;
  }

  std::mt19937_64 rng(options.seed);
  std::map<Variable, std::vector<Element>> pools;
  for (Variable v : p.variables()) pools.emplace(v, detail::candidates_for(v, g, options.max_len));
  std::uniform_int_distribution<int> coef_dist(-2, 2);
  std::uniform_int_distribution<int> count_dist(1, 4);
  for (int trial = 0; trial < options.trials; ++trial) {
    Assignment assignment;
    for (const auto& [v, pool] : pools) {
      Element value = Element::zero(n);
      if (!pool.empty()) {
        std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
        const int count = count_dist(rng);
        for (int c = 0; c < count; ++c) {
          const std::size_t idx = pick(rng);
          value += Scalar(coef_dist(rng)) * pool[idx];
        }
      }
      assignment.emplace(v, std::move(value));
    }
    ++verdict.evaluations;
    Element value = detail::evaluate_unchecked(p, assignment, n);
    if (!value.is_zero()) {
      verdict.holds = false;
      verdict.authoritative = true;
      verdict.witness = Witness{p, std::move(assignment), std::move(value)};
      return verdict;
    }
  }
  verdict.holds = true;
  verdict.authoritative = false;
  return verdict;
}

struct InclusionReport {
  std::vector<Verdict> verdicts;
  bool all_hold = true;
};

// One-sided evidence: every generator is an identity of g at this truncation.
// Says nothing about the reverse inclusion.
inline InclusionReport inclusion_evidence(const std::vector<SuperPolynomial>& generators, const Grading& g,
                                          const IdentityOptions& options) {
  InclusionReport report;
  for (const SuperPolynomial& p : generators) {
    report.verdicts.push_back(is_identity(p, g, options));
    report.all_hold = report.all_hold && report.verdicts.back().holds;
  }
  return report;
}

}  // namespace supergrass
