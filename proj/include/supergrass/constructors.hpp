#pragma once

// Named gradings and automorphisms: homogeneous models, method 1, method 2,
// triangular automorphisms and the group they generate, the prefix-negation
// and pair-swap examples, and the checker for the type-3 relation
//   e_1...e_k (V_p e_r + V_r e_p) = 2 e_1...e_k (V_p W_r + V_r W_p).

#include <algorithm>
#include <cstdint>
#include <map>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "supergrass/errors.hpp"
#include "supergrass/exterior.hpp"
#include "supergrass/grading.hpp"
#include "supergrass/linmap.hpp"
#include "supergrass/model.hpp"

namespace supergrass {

// Sign involution phi(e_i) = (-1)^{deg e_i} e_i for the model's degree table.
inline Endomorphism homogeneous_map(const HomogeneousModel& model, int n) {
  check_truncation(n);
  std::map<int, Element> images;
  TailRule tail = TailRule::identity();
  switch (model.kind) {
    case ModelKind::Ek:
      if (model.k < 0 || model.k > n)
        throw InvalidArgument("E_k needs 0 <= k <= N, got k=" + std::to_string(model.k));
      for (int i = 1; i <= model.k; ++i) images.emplace(i, Element::generator(n, i));
      tail = TailRule::negation();
      break;
    case ModelKind::EkStar:
      if (model.k < 0 || model.k > n)
        throw InvalidArgument("E_k* needs 0 <= k <= N, got k=" + std::to_string(model.k));
      for (int i = 1; i <= model.k; ++i) images.emplace(i, -Element::generator(n, i));
      break;
    case ModelKind::EInf:
      tail = TailRule::parity_sign();
      break;
    case ModelKind::ECan:
      tail = TailRule::negation();
      break;
  }
  return verify_relations(make_endomorphism(std::move(images), tail, n));
}

inline Grading homogeneous(const HomogeneousModel& model, int n) {
  return from_involution(homogeneous_map(model, n), Construction{model});
}

namespace detail {

inline void require_disjoint_ranges(const Method1Spec& spec, int n) {
  std::set<int> seen;
  auto claim = [&](int i, const char* set_name) {
    check_generator(i, n);
    if (!seen.insert(i).second)
      throw SpecViolation("disjoint", "index " + std::to_string(i) + " listed twice (" + set_name + ")");
  };
  for (int i : spec.i_plus) claim(i, "I+");
  for (int i : spec.i_minus) claim(i, "I-");
  for (const auto& [j, d] : spec.d) claim(j, "J");
}

}  // namespace detail

// Validates the three conditions on each d_j:
//   (1) d_j is a combination of odd-length monomials,
//   (2) every factor has index in I,
//   (3) every monomial has an even number of factors in I-.
// Unlisted indices join I+ (identity tail) or I- (negation tail).
inline void check_method1_spec(const Method1Spec& spec, int n, TailKind tail) {
  check_truncation(n);
  if (tail != TailKind::Identity && tail != TailKind::Negation)
    throw SpecViolation("tail", "method 1 accepts only identity or negation tails");
  detail::require_disjoint_ranges(spec, n);

  std::uint64_t j_mask = 0;
  std::uint64_t minus_mask = 0;
  for (const auto& [j, d] : spec.d) j_mask |= Monomial::generator(j).bits();
  for (int i : spec.i_minus) minus_mask |= Monomial::generator(i).bits();
  if (tail == TailKind::Negation) {
    std::uint64_t listed = j_mask | minus_mask;
    for (int i : spec.i_plus) listed |= Monomial::generator(i).bits();
    minus_mask |= Monomial::prefix(n).bits() & ~listed;
  }

  for (const auto& [j, d] : spec.d) {
    if (d.n() != n) throw TruncationMismatch(n, d.n());
    const std::string where = "d_" + std::to_string(j);
    for (const Term& t : d.terms()) {
      if (t.monomial.parity() != 1)
        throw SpecViolation("1", where + " has even-length monomial " + to_string(t.monomial));
      if ((t.monomial.bits() & j_mask) != 0)
        throw SpecViolation("2", where + " monomial " + to_string(t.monomial) + " uses an index in J");
      if (std::popcount(t.monomial.bits() & minus_mask) % 2 != 0)
        throw SpecViolation("3", where + " monomial " + to_string(t.monomial) +
                                     " has an odd number of factors in I-");
    }
  }
}

inline Grading method1(const Method1Spec& spec, int n, TailKind tail = TailKind::Identity) {
  check_method1_spec(spec, n, tail);
  std::map<int, Element> images;
  for (int i : spec.i_plus) images.emplace(i, Element::generator(n, i));
  for (int i : spec.i_minus) images.emplace(i, -Element::generator(n, i));
  for (const auto& [j, d] : spec.d) images.emplace(j, -Element::generator(n, j) + Scalar(2) * d);
  const TailRule rule = tail == TailKind::Identity ? TailRule::identity() : TailRule::negation();
  Endomorphism phi = verify_relations(make_endomorphism(std::move(images), rule, n));
  return from_involution(phi, Construction{Method1Construction{spec, tail}});
}

inline Grading method2(int k, int t, int n) {
  check_truncation(n);
  if (k < 0) throw InvalidArgument("method 2 needs k >= 0");
  if (t < 1 || t % 2 == 0) throw InvalidArgument("method 2 needs an odd t >= 1, got t=" + std::to_string(t));
  if (k + t >= n) throw InvalidArgument("method 2 needs k + t < N");
  std::map<int, Element> images;
  for (int i = 1; i <= k; ++i) images.emplace(i, Element::generator(n, i));
  for (int i = k + 1; i <= k + t; ++i) images.emplace(i, -Element::generator(n, i));
  Endomorphism phi =
      verify_relations(make_endomorphism(std::move(images), TailRule::prefix_negation(Monomial::prefix(k + t)), n));
  return from_involution(phi, Construction{Method2Params{k, t}});
}

// phi(e_1) = -e_1, phi(e_n) = -e_n + 2 e_1 e_n; method 2 with k = 0, t = 1.
inline Grading prop_minus(int n) { return method2(0, 1, n); }

inline void check_triangular_spec(const TriangularSpec& spec, int n, int support_floor) {
  check_truncation(n);
  check_generator(spec.n, n);
  if (spec.p.n() != n) throw TruncationMismatch(n, spec.p.n());
  if (!parity_split(spec.p).even.is_zero())
    throw SpecViolation("parity", "P for T_" + std::to_string(spec.n) + " must lie in E_(1)");
  if ((support_mask(spec.p).bits() & Monomial::prefix(support_floor).bits()) != 0)
    throw SpecViolation("support", "P for T_" + std::to_string(spec.n) + " uses a generator among e_1..e_" +
                                       std::to_string(support_floor));
}

// T_n(e_n) = -e_n + 2P with P odd and free of e_1..e_n; identity elsewhere.
inline Endomorphism triangular(const TriangularSpec& spec, int n) {
  check_triangular_spec(spec, n, spec.n);
  std::map<int, Element> images;
  images.emplace(spec.n, -Element::generator(n, spec.n) + Scalar(2) * spec.p);
  return verify_relations(make_endomorphism(std::move(images), TailRule::identity(), n));
}

inline Grading triangular_grading(const TriangularSpec& spec, int n) {
  return from_involution(triangular(spec, n), Construction{TriangularComposite{{spec}}});
}

struct TauElement {
  std::uint32_t mask;  // bit j-1 set iff T_j is a factor
  std::vector<TriangularSpec> factors;
  Endomorphism map;

  Grading grading() const { return from_involution(map, Construction{TriangularComposite{factors}}); }
};

// All 2^M products of the triangular generators T_1..T_M, in subset-mask
// order. Every P_j must avoid e_1..e_M.
inline std::vector<TauElement> tau_group(std::span<const TriangularSpec> specs, int n) {
  const int m = static_cast<int>(specs.size());
  if (m > 20) throw InvalidArgument("tau_group supports at most 20 generators");
  std::set<int> indices;
  for (const TriangularSpec& s : specs) {
    if (s.n < 1 || s.n > m)
      throw SpecViolation("index", "triangular generator index " + std::to_string(s.n) + " outside 1.." +
                                       std::to_string(m));
    if (!indices.insert(s.n).second)
      throw SpecViolation("index", "triangular generator index " + std::to_string(s.n) + " repeated");
    check_triangular_spec(s, n, m);
  }
  std::vector<Endomorphism> generators;
  for (const TriangularSpec& s : specs) generators.push_back(triangular(s, n));

  std::vector<TauElement> out;
  for (std::uint32_t mask = 0; mask < (std::uint32_t{1} << m); ++mask) {
    std::vector<std::pair<int, std::size_t>> chosen;
    for (std::size_t g = 0; g < specs.size(); ++g)
      if ((mask >> (specs[g].n - 1)) & 1U) chosen.emplace_back(specs[g].n, g);
    std::sort(chosen.begin(), chosen.end());
    Endomorphism phi = verify_relations(identity_map(n));
    std::vector<TriangularSpec> factors;
    for (const auto& [index, g] : chosen) {
      phi = compose(phi, generators[g]);
      factors.push_back(specs[g]);
    }
    out.push_back(TauElement{mask, std::move(factors), std::move(phi)});
  }
  return out;
}

// e_{2i-1} <-> e_{2i}.
inline Endomorphism swap_example(int n) {
  check_truncation(n);
  if (n % 2 != 0) throw InvalidArgument("swap example needs an even N");
  std::map<int, Element> images;
  for (int i = 1; i <= n; ++i) images.emplace(i, Element::generator(n, i % 2 == 1 ? i + 1 : i - 1));
  return verify_relations(make_endomorphism(std::move(images), TailRule::pair_swap(), n));
}

// phi(e_1) = -e_1 + 2 e_2 e_3 e_4, identity elsewhere.
inline Grading example_3_1(int n) {
  if (n < 4) throw InvalidArgument("example 3.1 needs N >= 4");
  Method1Spec spec;
  for (int i = 2; i <= n; ++i) spec.i_plus.push_back(i);
  spec.d.emplace(1, Element::monomial(n, Monomial::of({2, 3, 4})));
  return method1(spec, n);
}

// psi(e_1) = -e_1 + 2 (e_2 + e_3 + e_4 e_5 e_6 + e_3 e_4 e_7 e_8 e_9).
inline Grading example_3_1_psi(int n) {
  if (n < 9) throw InvalidArgument("the psi example needs N >= 9");
  Method1Spec spec;
  for (int i = 2; i <= n; ++i) spec.i_plus.push_back(i);
  spec.d.emplace(1, Element::generator(n, 2) + Element::generator(n, 3) +
                        Element::monomial(n, Monomial::of({4, 5, 6})) +
                        Element::monomial(n, Monomial::of({3, 4, 7, 8, 9})));
  return method1(spec, n);
}

struct Type3RelationInstance {
  int k = 0;
  std::map<int, Element> v;
  std::map<int, Element> w;
};

inline void check_type3_instance(const Type3RelationInstance& inst, int n) {
  if (inst.k < 0 || inst.k > n) throw InvalidArgument("type-3 instance needs 0 <= k <= N");
  for (const auto& [index, v] : inst.v) {
    if (v.n() != n) throw TruncationMismatch(n, v.n());
    if ((support_mask(v).bits() & Monomial::prefix(inst.k).bits()) != 0)
      throw SpecViolation("V", "V_" + std::to_string(index) + " has a factor among e_1..e_k");
  }
  for (const auto& [index, w] : inst.w) {
    if (w.n() != n) throw TruncationMismatch(n, w.n());
    if (!parity_split(w).even.is_zero())
      throw SpecViolation("W", "W_" + std::to_string(index) + " must be odd");
  }
}

// Evaluates both sides exactly for every listed pair; missing V or W entries
// count as zero.
inline bool verify_eq1(const Type3RelationInstance& inst, std::span<const std::pair<int, int>> pairs, int n) {
  check_type3_instance(inst, n);
  auto lookup = [n](const std::map<int, Element>& m, int i) {
    auto it = m.find(i);
    return it == m.end() ? Element::zero(n) : it->second;
  };
  const Element prefix = Element::monomial(n, Monomial::prefix(inst.k));
  for (const auto& [p, r] : pairs) {
    if (p <= inst.k || r <= inst.k) throw InvalidArgument("verify_eq1 needs p, r > k");
    check_generator(p, n);
    check_generator(r, n);
    const Element vp = lookup(inst.v, p);
    const Element vr = lookup(inst.v, r);
    const Element wp = lookup(inst.w, p);
    const Element wr = lookup(inst.w, r);
    const Element lhs = prefix * (vp * Element::generator(n, r) + vr * Element::generator(n, p));
    const Element rhs = Scalar(2) * prefix * (vp * wr + vr * wp);
    if (lhs != rhs) return false;
  }
  return true;
}

}  // namespace supergrass
