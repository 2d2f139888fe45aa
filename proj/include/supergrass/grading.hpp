#pragma once

// The Z2-grading E_phi = E_{0,phi} + E_{1,phi} induced by a verified
// involution phi: the +1 and -1 eigenspaces.

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "supergrass/errors.hpp"
#include "supergrass/exterior.hpp"
#include "supergrass/linear_algebra.hpp"
#include "supergrass/linmap.hpp"
#include "supergrass/model.hpp"

namespace supergrass {

enum class Degree { Even = 0, Odd = 1, Mixed = 2 };

inline std::string to_string(Degree d) {
  switch (d) {
    case Degree::Even:
      return "0";
    case Degree::Odd:
      return "1";
    case Degree::Mixed:
      return "mixed";
  }
  return "mixed";
}

// Indices <= N that belong, plus whether every index past the explicit range
// belongs too. The set is infinite iff tail_membership holds.
struct IndexSetDescriptor {
  std::vector<int> explicit_part;
  bool tail_membership = false;

  bool infinite() const { return tail_membership; }
  bool empty() const { return explicit_part.empty() && !tail_membership; }
  friend bool operator==(const IndexSetDescriptor&, const IndexSetDescriptor&) = default;
};

enum class GradingType { One, Two, Three, EmptyInBasis };
enum class SCase { S1, S2, S3, S4, S5 };

inline std::string to_string(GradingType t) {
  switch (t) {
    case GradingType::One:
      return "1";
    case GradingType::Two:
      return "2";
    case GradingType::Three:
      return "3";
    case GradingType::EmptyInBasis:
      return "empty_in_basis";
  }
  return "empty_in_basis";
}

inline std::string to_string(SCase s) { return "S" + std::to_string(static_cast<int>(s) + 1); }

struct ClassificationReport {
  IndexSetDescriptor i_plus;
  IndexSetDescriptor i_minus;
  IndexSetDescriptor j;
  GradingType type = GradingType::One;
  std::optional<SCase> s_case;
  bool canonical = false;
};

class Grading;
ClassificationReport classify_in_basis(const Grading& g);

class Grading {
 public:
  const Endomorphism& phi() const { return phi_; }
  const InvariantFamily& invariants() const { return inv_; }
  int n() const { return phi_.n(); }
  const std::optional<Construction>& construction() const { return construction_; }

  std::optional<HomogeneousModel> model_tag() const {
    if (construction_)
      if (const auto* m = std::get_if<HomogeneousModel>(&*construction_)) return *m;
    return std::nullopt;
  }

  // Computed once; copies share the cache.
  const ClassificationReport& classification() const& {
    std::call_once(cache_->classified, [this] { cache_->report = classify_in_basis(*this); });
    return *cache_->report;
  }
  // Temporaries return a copy so the report outlives the grading.
  ClassificationReport classification() const&& { return static_cast<const Grading&>(*this).classification(); }

  // Memoised homogeneous_spanning_set results keyed by (parity, max_len).
  template <class Compute>
  const std::vector<Element>& cached_spanning_set(int parity, int max_len, Compute compute) const {
    std::lock_guard lock(cache_->mutex);
    auto key = std::make_pair(parity, max_len);
    auto it = cache_->spanning.find(key);
    if (it == cache_->spanning.end()) it = cache_->spanning.emplace(key, compute()).first;
    return it->second;
  }

  friend Grading from_involution(const Endomorphism& phi, std::optional<Construction> construction);

 private:
  struct Cache {
    std::once_flag classified;
    std::optional<ClassificationReport> report;
    std::mutex mutex;
    std::map<std::pair<int, int>, std::vector<Element>> spanning;
  };

  Grading(Endomorphism phi, InvariantFamily inv, std::optional<Construction> construction)
      : phi_(std::move(phi)),
        inv_(std::move(inv)),
        construction_(std::move(construction)),
        cache_(std::make_shared<Cache>()) {}

  Endomorphism phi_;
  InvariantFamily inv_;
  std::optional<Construction> construction_;
  std::shared_ptr<Cache> cache_;
};

inline Grading from_involution(const Endomorphism& phi, std::optional<Construction> construction = std::nullopt) {
  if (!phi.verified()) throw UnverifiedMap();
  if (auto bad = involution_failure(phi)) throw NotAnInvolution(*bad);
  return Grading(phi, invariant_family(phi), std::move(construction));
}

// parity 0: (a + phi(a)) / 2, parity 1: (a - phi(a)) / 2.
inline Element project(const Grading& g, const Element& a, int parity) {
  if (a.n() != g.n()) throw TruncationMismatch(g.n(), a.n());
  if (parity != 0 && parity != 1) throw InvalidArgument("parity must be 0 or 1");
  const Element image = apply(g.phi(), a);
  const Scalar half = Scalar(1) / 2;
  return parity == 0 ? half * (a + image) : half * (a - image);
}

// Zero counts as even.
inline Degree degree_of(const Grading& g, const Element& a) {
  if (a.n() != g.n()) throw TruncationMismatch(g.n(), a.n());
  if (a.is_zero()) return Degree::Even;
  const Element image = apply(g.phi(), a);
  if (image == a) return Degree::Even;
  if (image == -a) return Degree::Odd;
  return Degree::Mixed;
}

// Basis monomials of length <= max_len, shortest first, lexicographic within
// a length.
inline std::vector<Monomial> monomials_up_to(int n, int max_len) {
  std::vector<Monomial> out;
  for (int len = 0; len <= std::min(max_len, n); ++len) {
    std::vector<int> idx(static_cast<std::size_t>(len));
    for (int i = 0; i < len; ++i) idx[static_cast<std::size_t>(i)] = i + 1;
    while (true) {
      out.push_back(Monomial::of(std::span<const int>(idx)));
      int pos = len - 1;
      while (pos >= 0 && idx[static_cast<std::size_t>(pos)] == n - (len - 1 - pos)) --pos;
      if (pos < 0) break;
      ++idx[static_cast<std::size_t>(pos)];
      for (int q = pos + 1; q < len; ++q) idx[static_cast<std::size_t>(q)] = idx[static_cast<std::size_t>(q - 1)] + 1;
    }
  }
  return out;
}

// Projections of the basis monomials of length <= max_len onto one parity,
// keeping each projection that is independent of the ones kept before it.
inline std::vector<Element> homogeneous_spanning_set(const Grading& g, int parity, int max_len) {
  if (max_len < 0 || max_len > g.n())
    throw InvalidArgument("max_len must lie in 0..N, got " + std::to_string(max_len));
  if (parity != 0 && parity != 1) throw InvalidArgument("parity must be 0 or 1");
  return g.cached_spanning_set(parity, max_len, [&] {
    std::vector<Element> out;
    EchelonBasis basis(g.n());
    for (Monomial m : monomials_up_to(g.n(), max_len)) {
      Element v = project(g, Element::monomial(g.n(), m), parity);
      if (basis.insert(v)) out.push_back(std::move(v));
    }
    return out;
  });
}

inline bool tail_pattern_is_odd(const TailRule& tail) {
  if (tail.kind == TailKind::PrefixNegation && !tail.prefix.is_unit())
    return (tail.prefix.length() + 1) % 2 == 1;
  return true;
}

// Every a_i lies in the odd-length span E_(1).
inline bool is_canonical_type(const Grading& g) {
  for (const Element& a : g.invariants().a)
    if (!parity_split(a).even.is_zero()) return false;
  return tail_pattern_is_odd(g.phi().tail());
}

inline ClassificationReport classify_in_basis(const Grading& g) {
  const Endomorphism& phi = g.phi();
  ClassificationReport report;
  for (int i = 1; i <= g.n(); ++i) {
    const Element e = Element::generator(g.n(), i);
    if (phi.image(i) == e)
      report.i_plus.explicit_part.push_back(i);
    else if (phi.image(i) == -e)
      report.i_minus.explicit_part.push_back(i);
    else
      report.j.explicit_part.push_back(i);
  }
  switch (phi.tail().kind) {
    case TailKind::Identity:
      report.i_plus.tail_membership = true;
      break;
    case TailKind::Negation:
      report.i_minus.tail_membership = true;
      break;
    case TailKind::ParitySign:
      report.i_plus.tail_membership = true;
      report.i_minus.tail_membership = true;
      break;
    case TailKind::PrefixNegation:
      (phi.tail().prefix.is_unit() ? report.i_plus : report.j).tail_membership = true;
      break;
    case TailKind::PairSwap:
      report.j.tail_membership = true;
      break;
  }

  const bool i_empty = report.i_plus.empty() && report.i_minus.empty();
  const bool i_infinite = report.i_plus.infinite() || report.i_minus.infinite();
  if (report.j.empty())
    report.type = GradingType::One;
  else if (i_empty)
    report.type = GradingType::EmptyInBasis;
  else if (i_infinite)
    report.type = GradingType::Two;
  else
    report.type = GradingType::Three;

  if (report.type == GradingType::Two) {
    const bool plus_inf = report.i_plus.infinite();
    const bool minus_inf = report.i_minus.infinite();
    const bool j_inf = report.j.infinite();
    if (plus_inf && minus_inf)
      report.s_case = SCase::S1;
    else if (plus_inf)
      report.s_case = j_inf ? SCase::S3 : SCase::S2;
    else
      report.s_case = j_inf ? SCase::S5 : SCase::S4;
  }
  report.canonical = is_canonical_type(g);
  return report;
}

struct HomogeneousGenerators {
  std::vector<Element> plus;   // basis of L intersected with E(+1)
  std::vector<Element> minus;  // basis of L intersected with E(-1)
};

// Solves phi(v) = +-v exactly for v = sum c_i e_i, comparing the full image
// (all degrees), not just the linear part.
inline HomogeneousGenerators find_homogeneous_generators(const Grading& g) {
  const int n = g.n();
  std::map<Monomial, std::size_t> row_of;
  for (int j = 1; j <= n; ++j) {
    row_of.emplace(Monomial::generator(j), 0);
    for (const Term& t : g.phi().image(j).terms()) row_of.emplace(t.monomial, 0);
  }
  std::size_t next = 0;
  for (auto& [m, r] : row_of) r = next++;

  auto solve = [&](int sign) {
    DenseMatrix a(row_of.size(), std::vector<Scalar>(static_cast<std::size_t>(n), Scalar(0)));
    for (int j = 1; j <= n; ++j) {
      const auto col = static_cast<std::size_t>(j - 1);
      for (const Term& t : g.phi().image(j).terms()) a[row_of.at(t.monomial)][col] += t.coef;
      a[row_of.at(Monomial::generator(j))][col] -= sign;
    }
    std::vector<Element> basis;
    for (const auto& v : nullspace(std::move(a), static_cast<std::size_t>(n))) {
      std::vector<Term> terms;
      for (int j = 1; j <= n; ++j)
        terms.push_back(Term{Monomial::generator(j), v[static_cast<std::size_t>(j - 1)]});
      basis.push_back(Element::from_terms(n, std::move(terms)));
    }
    return basis;
  };
  return {solve(1), solve(-1)};
}

}  // namespace supergrass
