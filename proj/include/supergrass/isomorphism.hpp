#pragma once

// Graded homomorphisms between gradings of E_N given by generator images,
// and explicit equivalence certificates for the constructed families.

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>
#include <span>
#include <utility>
#include <variant>
#include <vector>

#include "supergrass/constructors.hpp"
#include "supergrass/errors.hpp"
#include "supergrass/exterior.hpp"
#include "supergrass/grading.hpp"
#include "supergrass/linmap.hpp"
#include "supergrass/model.hpp"

namespace supergrass {

class GradedMap {
 public:
  const Grading& source() const { return source_; }
  const Grading& target() const { return target_; }
  int n() const { return source_.n(); }
  std::span<const Element> images() const { return images_; }
  const Element& image(int index) const {
    check_generator(index, n());
    return images_[static_cast<std::size_t>(index - 1)];
  }

  Element operator()(const Element& a) const { return detail::apply_images(images_, n(), a); }

  friend GradedMap graded_map(const Grading& source, const Grading& target, std::vector<Element> images);

 private:
  GradedMap(Grading source, Grading target, std::vector<Element> images)
      : source_(std::move(source)), target_(std::move(target)), images_(std::move(images)) {}

  Grading source_;
  Grading target_;
  std::vector<Element> images_;
};

// images[i-1] is the image of e_i. The images must anticommute pairwise and
// square to zero so that the map extends to an algebra homomorphism.
inline GradedMap graded_map(const Grading& source, const Grading& target, std::vector<Element> images) {
  if (source.n() != target.n()) throw TruncationMismatch(source.n(), target.n());
  if (images.size() != static_cast<std::size_t>(source.n()))
    throw InvalidArgument("graded map needs exactly N generator images");
  for (const Element& img : images)
    if (img.n() != source.n()) throw TruncationMismatch(source.n(), img.n());
  if (auto failure = detail::first_relation_failure(images))
    throw RelationViolation(failure->i, failure->j, std::move(failure->residual));
  return GradedMap(source, target, std::move(images));
}

inline GradedMap graded_map(const Grading& source, const Grading& target, const std::map<int, Element>& images) {
  std::vector<Element> dense;
  for (int i = 1; i <= source.n(); ++i) {
    auto it = images.find(i);
    dense.push_back(it != images.end() ? it->second : Element::generator(source.n(), i));
  }
  return graded_map(source, target, std::move(dense));
}

// f(A_p) within B_p, checked on a basis of each homogeneous component of the
// source (all lengths up to N).
inline bool preserves_degree(const GradedMap& f) {
  for (int parity : {0, 1})
    for (const Element& v : homogeneous_spanning_set(f.source(), parity, f.n())) {
      const Element image = f(v);
      if (image.is_zero()) continue;
      if (degree_of(f.target(), image) != static_cast<Degree>(parity)) return false;
    }
  return true;
}

// f: A -> B and g: B -> A are mutually inverse and both degree preserving.
inline bool is_graded_iso(const GradedMap& f, const GradedMap& g) {
  if (f.n() != g.n()) throw TruncationMismatch(f.n(), g.n());
  if (!equal(f.source().phi(), g.target().phi()) || !equal(f.target().phi(), g.source().phi()))
    throw InvalidArgument("is_graded_iso needs f: A -> B and g: B -> A");
  for (int i = 1; i <= f.n(); ++i) {
    const Element e = Element::generator(f.n(), i);
    if (g(f.image(i)) != e || f(g.image(i)) != e) return false;
  }
  return preserves_degree(f) && preserves_degree(g);
}

struct Certificate {
  HomogeneousModel model;
  GradedMap f;  // model -> grading
  GradedMap g;  // grading -> model
  bool verified = false;
};

namespace detail {

// Model index i is sent to actual index perm[i-1].
inline Certificate certificate_from_shift(const Grading& grading, HomogeneousModel model, const std::vector<int>& perm,
                                          const std::map<int, Element>& shift) {
  const int n = grading.n();
  std::vector<int> inverse(static_cast<std::size_t>(n));
  for (int i = 1; i <= n; ++i) inverse[static_cast<std::size_t>(perm[static_cast<std::size_t>(i - 1)] - 1)] = i;

  std::vector<Element> relabel;
  for (int m = 1; m <= n; ++m) relabel.push_back(Element::generator(n, inverse[static_cast<std::size_t>(m - 1)]));

  // f_phi(e_m) = e_m - s_m, g_phi(e_m) = e_m + s_m.
  std::vector<Element> f_images;
  for (int i = 1; i <= n; ++i) {
    const int m = perm[static_cast<std::size_t>(i - 1)];
    Element img = Element::generator(n, m);
    if (auto it = shift.find(m); it != shift.end()) img -= it->second;
    f_images.push_back(std::move(img));
  }
  std::vector<Element> g_images;
  for (int m = 1; m <= n; ++m) {
    Element img = Element::generator(n, m);
    if (auto it = shift.find(m); it != shift.end()) img += it->second;
    g_images.push_back(apply_images(relabel, n, img));
  }

  const HomogeneousModel reported =
      model.kind == ModelKind::Ek && model.k == 0 ? HomogeneousModel::e_can() : model;
  Grading source = homogeneous(model, n);
  GradedMap f = graded_map(source, grading, std::move(f_images));
  GradedMap g = graded_map(grading, source, std::move(g_images));
  const bool ok = is_graded_iso(f, g);
  if (!ok) throw Error("equivalence certificate for " + to_string(reported) + " failed verification");
  return Certificate{reported, std::move(f), std::move(g), ok};
}

inline Certificate method1_certificate(const Grading& grading, const Method1Spec& spec, TailKind tail) {
  const int n = grading.n();
  std::vector<bool> even(static_cast<std::size_t>(n) + 1, tail == TailKind::Identity);
  for (int i : spec.i_plus) even[static_cast<std::size_t>(i)] = true;
  for (int i : spec.i_minus) even[static_cast<std::size_t>(i)] = false;
  for (const auto& [j, d] : spec.d) even[static_cast<std::size_t>(j)] = false;

  std::vector<int> evens;
  std::vector<int> odds;
  for (int i = 1; i <= n; ++i) (even[static_cast<std::size_t>(i)] ? evens : odds).push_back(i);

  std::vector<int> perm;
  HomogeneousModel model;
  if (tail == TailKind::Identity) {
    model = HomogeneousModel::e_kstar(static_cast<int>(odds.size()));
    perm = odds;
    perm.insert(perm.end(), evens.begin(), evens.end());
  } else {
    model = HomogeneousModel::e_k(static_cast<int>(evens.size()));
    perm = evens;
    perm.insert(perm.end(), odds.begin(), odds.end());
  }
  return certificate_from_shift(grading, model, perm, spec.d);
}

}  // namespace detail

// Certificate of equivalence with a homogeneous model, rebuilt from the
// grading's construction recipe. Gradings without a recipe get nothing: no
// general decision procedure is attempted.
inline std::optional<Certificate> standard_equivalence(const Grading& grading) {
  if (!grading.construction()) return std::nullopt;
  const int n = grading.n();
  std::vector<int> identity_perm(static_cast<std::size_t>(n));
  std::iota(identity_perm.begin(), identity_perm.end(), 1);

  return std::visit(
      [&](const auto& recipe) -> std::optional<Certificate> {
        using T = std::decay_t<decltype(recipe)>;
        if constexpr (std::is_same_v<T, HomogeneousModel>) {
          return detail::certificate_from_shift(grading, recipe, identity_perm, {});
        } else if constexpr (std::is_same_v<T, Method1Construction>) {
          return detail::method1_certificate(grading, recipe.spec, recipe.tail);
        } else if constexpr (std::is_same_v<T, Method2Params>) {
          std::map<int, Element> shift;
          const Element prefix = Element::monomial(n, Monomial::prefix(recipe.k + recipe.t));
          for (int m = recipe.k + recipe.t + 1; m <= n; ++m) shift.emplace(m, prefix * Element::generator(n, m));
          return detail::certificate_from_shift(grading, HomogeneousModel::e_k(recipe.k), identity_perm, shift);
        } else {
          Method1Spec spec;
          std::vector<bool> in_j(static_cast<std::size_t>(n) + 1, false);
          for (const TriangularSpec& t : recipe.factors) {
            spec.d.emplace(t.n, t.p);
            in_j[static_cast<std::size_t>(t.n)] = true;
          }
          for (int i = 1; i <= n; ++i)
            if (!in_j[static_cast<std::size_t>(i)]) spec.i_plus.push_back(i);
          return detail::method1_certificate(grading, spec, TailKind::Identity);
        }
      },
      *grading.construction());
}

}  // namespace supergrass
