#pragma once

// Exact Gaussian elimination over Q, in two flavours: an incremental echelon
// basis over sparse Elements (coefficient vectors in the monomial basis), and
// a dense RREF nullspace solver for small systems.

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "supergrass/exterior.hpp"

namespace supergrass {

// Rows are kept with distinct leading monomials (the lexicographically
// smallest monomial of each row is its pivot).
class EchelonBasis {
 public:
  explicit EchelonBasis(int n) : n_(n) {}

  int n() const { return n_; }
  std::size_t rank() const { return rows_.size(); }

  Element reduce(Element v) const {
    if (v.n() != n_) throw TruncationMismatch(n_, v.n());
    while (!v.is_zero()) {
      const Term& lead = v.terms().front();
      auto it = rows_.find(lead.monomial);
      if (it == rows_.end()) break;
      v -= lead.coef * it->second;
    }
    return v;
  }

  // Reduces v fully against the basis and adds it when independent.
  bool insert(const Element& v) {
    Element r = reduce(v);
    if (r.is_zero()) return false;
    const Scalar lead = r.terms().front().coef;
    r *= Scalar(1) / lead;
    const Monomial pivot = r.terms().front().monomial;
    rows_.emplace(pivot, std::move(r));
    return true;
  }

  bool contains(const Element& v) const { return reduce(v).is_zero(); }

 private:
  int n_;
  std::map<Monomial, Element> rows_;
};

// True iff the list is linearly independent over Q. The empty list is.
inline bool check_independent(std::span<const Element> vs) {
  if (vs.empty()) return true;
  EchelonBasis basis(vs.front().n());
  for (const Element& v : vs) {
    vs.front().require_same(v);
    if (!basis.insert(v)) return false;
  }
  return true;
}

inline std::size_t rank_of(std::span<const Element> vs) {
  if (vs.empty()) return 0;
  EchelonBasis basis(vs.front().n());
  for (const Element& v : vs) basis.insert(v);
  return basis.rank();
}

// span(a) == span(b), decided by ranks.
inline bool same_span(std::span<const Element> a, std::span<const Element> b) {
  std::vector<Element> both(a.begin(), a.end());
  both.insert(both.end(), b.begin(), b.end());
  const std::size_t r = rank_of(both);
  return r == rank_of(a) && r == rank_of(b);
}

using DenseMatrix = std::vector<std::vector<Scalar>>;

// Basis of {x : A x = 0}; one vector per free column of the RREF, with a 1 in
// that column.
inline std::vector<std::vector<Scalar>> nullspace(DenseMatrix a, std::size_t cols) {
  std::vector<std::size_t> pivot_cols;
  std::size_t row = 0;
  for (std::size_t col = 0; col < cols && row < a.size(); ++col) {
    std::optional<std::size_t> found;
    for (std::size_t r = row; r < a.size(); ++r)
      if (a[r][col] != 0) {
        found = r;
        break;
      }
    if (!found) continue;
    std::swap(a[row], a[*found]);
    const Scalar inv = Scalar(1) / a[row][col];
    for (auto& x : a[row]) x *= inv;
    for (std::size_t r = 0; r < a.size(); ++r) {
      if (r == row || a[r][col] == 0) continue;
      const Scalar factor = a[r][col];
      for (std::size_t c = col; c < cols; ++c) a[r][c] -= factor * a[row][c];
    }
    pivot_cols.push_back(col);
    ++row;
  }
  std::vector<bool> is_pivot(cols, false);
  for (auto c : pivot_cols) is_pivot[c] = true;
  std::vector<std::vector<Scalar>> basis;
  for (std::size_t free = 0; free < cols; ++free) {
    if (is_pivot[free]) continue;
    std::vector<Scalar> v(cols, Scalar(0));
    v[free] = 1;
    for (std::size_t r = 0; r < pivot_cols.size(); ++r) v[pivot_cols[r]] = -a[r][free];
    basis.push_back(std::move(v));
  }
  return basis;
}

}  // namespace supergrass
