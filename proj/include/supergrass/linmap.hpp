#pragma once

// Endomorphisms of E_N given by generator images.
//
// An Endomorphism stores finitely many explicit images plus an eventually
// uniform TailRule for every other index. Arithmetic only ever touches
// indices 1..N; the tail exists so that classification can report whether an
// index set is finite or infinite in the untruncated algebra.

#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "supergrass/errors.hpp"
#include "supergrass/exterior.hpp"

namespace supergrass {

enum class TailKind {
  Identity,        // e_n -> e_n
  Negation,        // e_n -> -e_n
  PrefixNegation,  // e_n -> -e_n + 2 m e_n
  ParitySign,      // e_n -> e_n for even n, -e_n for odd n
  PairSwap,        // e_{2i-1} <-> e_{2i}
};

struct TailRule {
  TailKind kind = TailKind::Identity;
  Monomial prefix;  // only meaningful for PrefixNegation

  static TailRule identity() { return {TailKind::Identity, {}}; }
  static TailRule negation() { return {TailKind::Negation, {}}; }
  static TailRule prefix_negation(Monomial m) { return {TailKind::PrefixNegation, m}; }
  static TailRule parity_sign() { return {TailKind::ParitySign, {}}; }
  static TailRule pair_swap() { return {TailKind::PairSwap, {}}; }

  // Image of e_index in E_n under the tail pattern.
  Element image(int index, int n) const {
    const Element e = Element::generator(n, index);
    switch (kind) {
      case TailKind::Identity:
        return e;
      case TailKind::Negation:
        return -e;
      case TailKind::PrefixNegation:
        return -e + Scalar(2) * Element::monomial(n, prefix) * e;
      case TailKind::ParitySign:
        return index % 2 == 0 ? e : -e;
      case TailKind::PairSwap: {
        const int partner = index % 2 == 1 ? index + 1 : index - 1;
        if (partner > n)
          throw InvalidArgument("pair_swap tail needs e" + std::to_string(partner) +
                                ", outside N=" + std::to_string(n));
        return Element::generator(n, partner);
      }
    }
    return e;
  }

  friend bool operator==(const TailRule&, const TailRule&) = default;
};

inline std::string to_string(TailKind kind) {
  switch (kind) {
    case TailKind::Identity:
      return "identity";
    case TailKind::Negation:
      return "negation";
    case TailKind::PrefixNegation:
      return "prefix_negation";
    case TailKind::ParitySign:
      return "parity_sign";
    case TailKind::PairSwap:
      return "pair_swap";
  }
  return "identity";
}

namespace detail {

// Multiplicative-linear extension of generator images (images[i-1] = f(e_i)).
inline Element apply_images(std::span<const Element> images, int n, const Element& a) {
  if (a.n() != n) throw TruncationMismatch(n, a.n());
  Element out = Element::zero(n);
  for (const Term& t : a.terms()) {
    Element product = Element::constant(n, t.coef);
    for (std::uint64_t rest = t.monomial.bits(); rest != 0 && !product.is_zero(); rest &= rest - 1)
      product = product * images[static_cast<std::size_t>(std::countr_zero(rest))];
    out += product;
  }
  return out;
}

// First (i, j) with i <= j where f(e_i) f(e_j) + f(e_j) f(e_i) != 0.
struct RelationResidual {
  int i;
  int j;
  Element residual;
};

inline std::optional<RelationResidual> first_relation_failure(std::span<const Element> images) {
  for (std::size_t i = 0; i < images.size(); ++i)
    for (std::size_t j = i; j < images.size(); ++j) {
      Element r = images[i] * images[j] + images[j] * images[i];
      if (!r.is_zero())
        return RelationResidual{static_cast<int>(i + 1), static_cast<int>(j + 1), std::move(r)};
    }
  return std::nullopt;
}

}  // namespace detail

class RelationViolation : public Error {
 public:
  RelationViolation(int i, int j, Element residual)
      : Error("relation e" + std::to_string(i) + "e" + std::to_string(j) + " + e" +
              std::to_string(j) + "e" + std::to_string(i) + " = 0 not preserved: residual " +
              to_string(residual)),
        i_(i),
        j_(j),
        residual_(std::move(residual)) {}
  int i() const noexcept { return i_; }
  int j() const noexcept { return j_; }
  const Element& residual() const noexcept { return residual_; }

 private:
  int i_;
  int j_;
  Element residual_;
};

class Endomorphism {
 public:
  int n() const { return n_; }
  const std::map<int, Element>& explicit_images() const { return explicit_; }
  const TailRule& tail() const { return tail_; }
  bool verified() const { return verified_; }
  bool is_explicit(int index) const { return explicit_.count(index) != 0; }

  const Element& image(int index) const {
    check_generator(index, n_);
    return images_[static_cast<std::size_t>(index - 1)];
  }
  std::span<const Element> images() const { return images_; }

  friend Endomorphism make_endomorphism(std::map<int, Element> explicit_images, TailRule tail, int n);
  friend Endomorphism verify_relations(const Endomorphism& phi);

 private:
  Endomorphism(int n, std::map<int, Element> explicit_images, TailRule tail, std::vector<Element> images)
      : n_(n), explicit_(std::move(explicit_images)), tail_(tail), images_(std::move(images)) {}

  int n_;
  std::map<int, Element> explicit_;
  TailRule tail_;
  std::vector<Element> images_;
  bool verified_ = false;
};

// Unverified endomorphism; every image must lie in E_n and have zero constant
// term.
inline Endomorphism make_endomorphism(std::map<int, Element> explicit_images, TailRule tail, int n) {
  check_truncation(n);
  for (const auto& [index, img] : explicit_images) {
    check_generator(index, n);
    if (img.n() != n) throw TruncationMismatch(n, img.n());
    if (img.constant_term() != 0)
      throw InvalidArgument("image of e" + std::to_string(index) + " has a nonzero constant term");
  }
  if (tail.kind == TailKind::PrefixNegation) {
    if (tail.prefix.max_index() > n)
      throw IndexOutOfRange("tail prefix " + to_string(tail.prefix) + " exceeds N=" + std::to_string(n));
    for (int i = 1; i <= n; ++i)
      if (!explicit_images.count(i) && i <= tail.prefix.max_index())
        throw InvalidArgument("tail prefix " + to_string(tail.prefix) + " overlaps tail index " +
                              std::to_string(i));
  }
  std::vector<Element> images;
  images.reserve(static_cast<std::size_t>(n));
  for (int i = 1; i <= n; ++i) {
    auto it = explicit_images.find(i);
    images.push_back(it != explicit_images.end() ? it->second : tail.image(i, n));
  }
  return Endomorphism(n, std::move(explicit_images), tail, std::move(images));
}

inline Endomorphism identity_map(int n) { return make_endomorphism({}, TailRule::identity(), n); }

// Checks phi(e_i) phi(e_j) + phi(e_j) phi(e_i) = 0 for all i <= j; the
// diagonal covers phi(e_i)^2 = 0.
inline Endomorphism verify_relations(const Endomorphism& phi) {
  if (auto failure = detail::first_relation_failure(phi.images()))
    throw RelationViolation(failure->i, failure->j, std::move(failure->residual));
  Endomorphism out = phi;
  out.verified_ = true;
  return out;
}

inline Element apply(const Endomorphism& phi, const Element& a) {
  if (!phi.verified()) throw UnverifiedMap();
  return detail::apply_images(phi.images(), phi.n(), a);
}

// Image of e_i is phi(psi(e_i)); all of 1..N explicit, identity tail.
inline Endomorphism compose(const Endomorphism& phi, const Endomorphism& psi) {
  if (phi.n() != psi.n()) throw TruncationMismatch(phi.n(), psi.n());
  if (!phi.verified() || !psi.verified()) throw UnverifiedMap();
  std::map<int, Element> images;
  for (int i = 1; i <= phi.n(); ++i) images.emplace(i, apply(phi, psi.image(i)));
  return verify_relations(make_endomorphism(std::move(images), TailRule::identity(), phi.n()));
}

// Extensional on 1..N.
inline bool equal(const Endomorphism& phi, const Endomorphism& psi) {
  if (phi.n() != psi.n()) throw TruncationMismatch(phi.n(), psi.n());
  for (int i = 1; i <= phi.n(); ++i)
    if (phi.image(i) != psi.image(i)) return false;
  return true;
}

// First index with phi(phi(e_i)) != e_i, if any.
inline std::optional<int> involution_failure(const Endomorphism& phi) {
  for (int i = 1; i <= phi.n(); ++i)
    if (apply(phi, phi.image(i)) != Element::generator(phi.n(), i)) return i;
  return std::nullopt;
}

inline bool is_involution(const Endomorphism& phi) {
  if (!phi.verified()) throw UnverifiedMap();
  return !involution_failure(phi).has_value();
}

// a_i = (e_i + phi(e_i)) / 2, the phi-fixed half of each generator.
// b(i) = a_i is the even-degree part of e_i in E_phi, c(i) = e_i - a_i the odd one.
struct InvariantFamily {
  int n;
  std::vector<Element> a;  // a[i-1] = a_i

  const Element& b(int i) const { return a.at(static_cast<std::size_t>(i - 1)); }
  Element c(int i) const { return Element::generator(n, i) - b(i); }
};

inline InvariantFamily invariant_family(const Endomorphism& phi) {
  if (auto bad = involution_failure(phi)) throw NotAnInvolution(*bad);
  InvariantFamily family{phi.n(), {}};
  family.a.reserve(static_cast<std::size_t>(phi.n()));
  const Scalar half = Scalar(1) / 2;
  for (int i = 1; i <= phi.n(); ++i) {
    Element a = half * (Element::generator(phi.n(), i) + phi.image(i));
    if (apply(phi, a) != a) throw Error("a_" + std::to_string(i) + " is not fixed by phi");
    family.a.push_back(std::move(a));
  }
  return family;
}

inline TailRule linearize(const TailRule& tail) {
  if (tail.kind == TailKind::PrefixNegation)
    return tail.prefix.is_unit() ? TailRule::identity() : TailRule::negation();
  return tail;
}

// Keeps the degree-1 part of every generator image.
inline Endomorphism linearize(const Endomorphism& phi) {
  if (!phi.verified()) throw UnverifiedMap();
  std::map<int, Element> images;
  for (const auto& [index, img] : phi.explicit_images()) images.emplace(index, img.part_of_length(1));
  return verify_relations(make_endomorphism(std::move(images), linearize(phi.tail()), phi.n()));
}

}  // namespace supergrass
