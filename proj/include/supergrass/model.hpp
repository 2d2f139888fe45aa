#pragma once

// Parameter types for the named constructions. A Grading remembers which
// recipe produced it so that isomorphism certificates can be rebuilt.

#include <map>
#include <string>
#include <variant>
#include <vector>

#include "supergrass/exterior.hpp"
#include "supergrass/linmap.hpp"

namespace supergrass {

enum class ModelKind { Ek, EkStar, EInf, ECan };

// Homogeneous gradings: every generator e_i has a fixed degree.
//   E_k:     e_1..e_k even, the rest odd
//   E_{k*}:  e_1..e_k odd, the rest even
//   E_inf:   even-indexed generators even, odd-indexed odd
//   E_can:   every generator odd
struct HomogeneousModel {
  ModelKind kind = ModelKind::ECan;
  int k = 0;

  static HomogeneousModel e_k(int k) { return {ModelKind::Ek, k}; }
  static HomogeneousModel e_kstar(int k) { return {ModelKind::EkStar, k}; }
  static HomogeneousModel e_inf() { return {ModelKind::EInf, 0}; }
  static HomogeneousModel e_can() { return {ModelKind::ECan, 0}; }

  int degree_of_generator(int i) const {
    switch (kind) {
      case ModelKind::Ek:
        return i <= k ? 0 : 1;
      case ModelKind::EkStar:
        return i <= k ? 1 : 0;
      case ModelKind::EInf:
        return i % 2 == 0 ? 0 : 1;
      case ModelKind::ECan:
        return 1;
    }
    return 1;
  }

  friend bool operator==(const HomogeneousModel&, const HomogeneousModel&) = default;
};

inline std::string to_string(const HomogeneousModel& m) {
  switch (m.kind) {
    case ModelKind::Ek:
      return "E_" + std::to_string(m.k);
    case ModelKind::EkStar:
      return "E_" + std::to_string(m.k) + "*";
    case ModelKind::EInf:
      return "E_inf";
    case ModelKind::ECan:
      return "E_can";
  }
  return "E_can";
}

// phi(e_i) = e_i on I+, -e_i on I-, -e_j + 2 d_j on J. Indices listed in none
// of the three follow the tail (identity or negation).
struct Method1Spec {
  std::vector<int> i_plus;
  std::vector<int> i_minus;
  std::map<int, Element> d;
};

struct Method1Construction {
  Method1Spec spec;
  TailKind tail = TailKind::Identity;
};

// phi(e_n) = e_n (n <= k), -e_n (k < n <= k+t), -e_n + 2 e_1...e_{k+t} e_n.
struct Method2Params {
  int k = 0;
  int t = 1;
};

// T_n(e_n) = -e_n + 2P, identity elsewhere.
struct TriangularSpec {
  int n = 1;
  Element p = Element::zero(1);
};

// One or more commuting triangular automorphisms composed together.
struct TriangularComposite {
  std::vector<TriangularSpec> factors;
};

using Construction = std::variant<HomogeneousModel, Method1Construction, Method2Params, TriangularComposite>;

}  // namespace supergrass
