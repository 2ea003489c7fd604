#include "subcap/subspace.hpp"

#include <stdexcept>

namespace subcap {

Subspace Subspace::zero(const Field& f, unsigned ambient) { return Subspace(Matrix(f, 0, ambient)); }

Subspace Subspace::full(const Field& f, unsigned ambient) {
  return Subspace(Matrix::identity(f, ambient));
}

Subspace Subspace::span_of(const Matrix& x) {
  RrefResult rr = rref(x);
  Matrix basis(x.field(), rr.rank, x.cols());
  for (unsigned i = 0; i < rr.rank; ++i)
    for (unsigned j = 0; j < x.cols(); ++j) basis(i, j) = rr.mat(i, j);
  return Subspace(std::move(basis));
}

bool Subspace::contains(const Subspace& other) const {
  if (ambient() != other.ambient() || field() != other.field())
    throw std::invalid_argument("containment test across different ambient spaces");
  if (other.dim() > dim()) return false;
  const Field& f = field();
  // Pivot columns of an RREF basis are the columns of its leading ones.
  std::vector<unsigned> pivots(dim());
  for (unsigned i = 0; i < dim(); ++i) {
    unsigned c = 0;
    while (basis_(i, c) == 0) ++c;
    pivots[i] = c;
  }
  for (unsigned r = 0; r < other.dim(); ++r) {
    std::vector<Elem> v(ambient());
    for (unsigned j = 0; j < ambient(); ++j) v[j] = other.basis_(r, j);
    for (unsigned i = 0; i < dim(); ++i) {
      const Elem coef = v[pivots[i]];
      if (coef == 0) continue;
      for (unsigned j = 0; j < ambient(); ++j) v[j] = f.sub(v[j], f.mul(coef, basis_(i, j)));
    }
    for (Elem e : v)
      if (e != 0) return false;
  }
  return true;
}

std::strong_ordering Subspace::operator<=>(const Subspace& other) const {
  if (auto c = ambient() <=> other.ambient(); c != 0) return c;
  if (auto c = dim() <=> other.dim(); c != 0) return c;
  const auto& a = basis_.data();
  const auto& b = other.basis_.data();
  for (std::size_t i = 0; i < a.size(); ++i)
    if (auto c = a[i] <=> b[i]; c != 0) return c;
  return std::strong_ordering::equal;
}

std::size_t Subspace::hash() const {
  std::size_t h = 1469598103934665603ull;
  auto mix = [&h](std::size_t v) {
    h ^= v;
    h *= 1099511628211ull;
  };
  mix(ambient());
  mix(dim());
  for (Elem e : basis_.data()) mix(e);
  return h;
}

Subspace sum(const Subspace& a, const Subspace& b) {
  if (a.ambient() != b.ambient() || a.field() != b.field())
    throw std::invalid_argument("subspace sum across different ambient spaces");
  return Subspace::span_of(stack_rows(a.basis(), b.basis()));
}

Subspace intersection(const Subspace& a, const Subspace& b) {
  if (a.ambient() != b.ambient() || a.field() != b.field())
    throw std::invalid_argument("subspace intersection across different ambient spaces");
  const Field& f = a.field();
  const unsigned da = a.dim(), db = b.dim(), T = a.ambient();
  if (da == 0 || db == 0) return Subspace::zero(f, T);
  // Left kernel of [A; B]: coefficient vectors (u, v) with uA + vB = 0,
  // i.e. uA = -vB lies in both spans.
  const Matrix stacked = stack_rows(a.basis(), b.basis());
  const Matrix kernel = nullspace(transpose(stacked));
  Matrix vectors(f, kernel.rows(), T);
  for (unsigned r = 0; r < kernel.rows(); ++r)
    for (unsigned j = 0; j < T; ++j) {
      Elem acc = 0;
      for (unsigned i = 0; i < da; ++i) acc = f.add(acc, f.mul(kernel(r, i), a.basis()(i, j)));
      vectors(r, j) = acc;
    }
  return Subspace::span_of(vectors);
}

std::vector<Subspace> grassmannian(const Field& f, unsigned T, unsigned d) {
  if (d > T) return {};
  double size = 1;
  for (unsigned i = 0; i < T; ++i) size *= f.q();
  if (size > double(1 << 20)) throw std::invalid_argument("grassmannian enumeration guard exceeded (q^T > 2^20)");

  std::vector<Subspace> out;
  if (d == 0) {
    out.push_back(Subspace::zero(f, T));
    return out;
  }

  // March over pivot-column combinations in lexicographic order.
  std::vector<unsigned> piv(d);
  for (unsigned i = 0; i < d; ++i) piv[i] = i;
  const unsigned q = f.q();
  for (;;) {
    // Free positions: entries right of each pivot, outside pivot columns.
    std::vector<bool> is_pivot(T, false);
    for (unsigned c : piv) is_pivot[c] = true;
    std::vector<std::pair<unsigned, unsigned>> free_pos;  // (row, col), row-major
    for (unsigned i = 0; i < d; ++i)
      for (unsigned c = piv[i] + 1; c < T; ++c)
        if (!is_pivot[c]) free_pos.emplace_back(i, c);

    std::vector<Elem> digits(free_pos.size(), 0);
    for (;;) {
      Matrix m(f, d, T);
      for (unsigned i = 0; i < d; ++i) m(i, piv[i]) = 1;
      for (std::size_t i = 0; i < free_pos.size(); ++i) m(free_pos[i].first, free_pos[i].second) = digits[i];
      out.push_back(Subspace::span_of(m));
      // Row-major counter, last position fastest.
      bool wrapped = true;
      for (std::size_t pos = digits.size(); pos-- > 0;) {
        if (++digits[pos] < q) {
          wrapped = false;
          break;
        }
        digits[pos] = 0;
      }
      if (wrapped) break;
    }

    // Next pivot combination.
    int i = int(d) - 1;
    while (i >= 0 && piv[i] == T - d + i) --i;
    if (i < 0) break;
    ++piv[i];
    for (unsigned j = i + 1; j < d; ++j) piv[j] = piv[j - 1] + 1;
  }
  return out;
}

std::vector<Subspace> sphere(const Field& f, unsigned T, unsigned m) {
  std::vector<Subspace> out;
  const unsigned dmax = m < T ? m : T;
  for (unsigned d = 0; d <= dmax; ++d) {
    auto g = grassmannian(f, T, d);
    out.insert(out.end(), g.begin(), g.end());
  }
  return out;
}

Subspace random_subspace(const Field& f, unsigned T, unsigned d, Rng& rng) {
  if (d > T) throw std::invalid_argument("subspace dimension exceeds ambient dimension");
  return Subspace::span_of(random_full_rank(d, T, f, rng));
}

}  // namespace subcap
