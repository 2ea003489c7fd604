#ifndef SUBCAP_SUBSPACE_HPP
#define SUBCAP_SUBSPACE_HPP

#include <compare>
#include <cstddef>
#include <functional>
#include <vector>

#include "subcap/matrix.hpp"

namespace subcap {

/// A subspace of F_q^T held by its canonical RREF basis (no zero rows;
/// the zero subspace has an empty 0-row basis). Two Subspace values are
/// equal iff their bases are entry-wise identical.
class Subspace {
 public:
  static Subspace zero(const Field& f, unsigned ambient);
  static Subspace full(const Field& f, unsigned ambient);

  /// Canonical subspace spanned by the rows of x.
  static Subspace span_of(const Matrix& x);

  unsigned dim() const { return basis_.rows(); }
  unsigned ambient() const { return basis_.cols(); }
  const Matrix& basis() const { return basis_; }
  const Field& field() const { return basis_.field(); }

  /// True iff other is a subspace of *this.
  bool contains(const Subspace& other) const;

  friend bool operator==(const Subspace& a, const Subspace& b) { return a.basis_ == b.basis_; }
  friend bool operator!=(const Subspace& a, const Subspace& b) { return !(a == b); }

  /// Total order (dim, then basis entries); subspaces of one ambient
  /// space sort in the enumeration order of grassmannian().
  std::strong_ordering operator<=>(const Subspace& other) const;

  std::size_t hash() const;

 private:
  explicit Subspace(Matrix basis) : basis_(std::move(basis)) {}
  Matrix basis_;
};

struct SubspaceHash {
  std::size_t operator()(const Subspace& s) const { return s.hash(); }
};

/// Smallest subspace containing both a and b.
Subspace sum(const Subspace& a, const Subspace& b);

/// a intersect b, via the kernel of the stacked-basis system.
Subspace intersection(const Subspace& a, const Subspace& b);

/// All d-dimensional subspaces of F_q^T, each exactly once, in a fixed
/// canonical order: RREF pivot-column sets ascending lexicographically,
/// then free entries counting up in row-major base-q. Guarded to
/// q^T <= 2^20.
std::vector<Subspace> grassmannian(const Field& f, unsigned T, unsigned d);

/// Sp(T, m): all subspaces of dimension at most min(m, T), dims ascending.
std::vector<Subspace> sphere(const Field& f, unsigned T, unsigned m);

/// Uniform over Gr(T, d) (span of a uniform full-rank d x T matrix).
Subspace random_subspace(const Field& f, unsigned T, unsigned d, Rng& rng);

}  // namespace subcap

#endif
