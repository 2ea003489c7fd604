#include "subcap/matrix.hpp"

#include <stdexcept>

namespace subcap {

Matrix Matrix::identity(const Field& f, unsigned n) {
  Matrix m(f, n, n);
  for (unsigned i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

void Matrix::set_checked(unsigned r, unsigned c, Elem v) {
  if (r >= rows_ || c >= cols_) throw std::invalid_argument("matrix index out of range");
  field_.check(v);
  (*this)(r, c) = v;
}

bool Matrix::is_zero() const {
  for (Elem e : a_)
    if (e != 0) return false;
  return true;
}

Matrix mul(const Matrix& a, const Matrix& b) {
  if (a.field() != b.field()) throw std::invalid_argument("matrix product over mixed fields");
  if (a.cols() != b.rows()) throw std::invalid_argument("matrix product shape mismatch");
  const Field& f = a.field();
  Matrix out(f, a.rows(), b.cols());
  for (unsigned i = 0; i < a.rows(); ++i)
    for (unsigned k = 0; k < a.cols(); ++k) {
      const Elem aik = a(i, k);
      if (aik == 0) continue;
      for (unsigned j = 0; j < b.cols(); ++j)
        out(i, j) = f.add(out(i, j), f.mul(aik, b(k, j)));
    }
  return out;
}

Matrix add(const Matrix& a, const Matrix& b) {
  if (a.field() != b.field() || a.rows() != b.rows() || a.cols() != b.cols())
    throw std::invalid_argument("matrix sum shape mismatch");
  const Field& f = a.field();
  Matrix out(f, a.rows(), a.cols());
  for (unsigned i = 0; i < a.rows(); ++i)
    for (unsigned j = 0; j < a.cols(); ++j) out(i, j) = f.add(a(i, j), b(i, j));
  return out;
}

Matrix stack_rows(const Matrix& top, const Matrix& bottom) {
  if (top.field() != bottom.field() || top.cols() != bottom.cols())
    throw std::invalid_argument("row stack shape mismatch");
  Matrix out(top.field(), top.rows() + bottom.rows(), top.cols());
  for (unsigned i = 0; i < top.rows(); ++i)
    for (unsigned j = 0; j < top.cols(); ++j) out(i, j) = top(i, j);
  for (unsigned i = 0; i < bottom.rows(); ++i)
    for (unsigned j = 0; j < bottom.cols(); ++j) out(top.rows() + i, j) = bottom(i, j);
  return out;
}

Matrix transpose(const Matrix& a) {
  Matrix out(a.field(), a.cols(), a.rows());
  for (unsigned i = 0; i < a.rows(); ++i)
    for (unsigned j = 0; j < a.cols(); ++j) out(j, i) = a(i, j);
  return out;
}

RrefResult rref(const Matrix& x) {
  const Field& f = x.field();
  Matrix m = x;
  std::vector<unsigned> pivots;
  unsigned r = 0;
  for (unsigned c = 0; c < m.cols() && r < m.rows(); ++c) {
    unsigned pr = r;
    while (pr < m.rows() && m(pr, c) == 0) ++pr;
    if (pr == m.rows()) continue;
    if (pr != r)
      for (unsigned j = 0; j < m.cols(); ++j) std::swap(m(pr, j), m(r, j));
    const Elem piv_inv = f.inv(m(r, c));
    for (unsigned j = c; j < m.cols(); ++j) m(r, j) = f.mul(m(r, j), piv_inv);
    for (unsigned i = 0; i < m.rows(); ++i) {
      if (i == r || m(i, c) == 0) continue;
      const Elem factor = m(i, c);
      for (unsigned j = c; j < m.cols(); ++j)
        m(i, j) = f.sub(m(i, j), f.mul(factor, m(r, j)));
    }
    pivots.push_back(c);
    ++r;
  }
  return RrefResult{std::move(m), r, std::move(pivots)};
}

unsigned rank(const Matrix& x) { return rref(x).rank; }

Matrix nullspace(const Matrix& x) {
  const Field& f = x.field();
  const RrefResult rr = rref(x);
  const unsigned n = x.cols();
  std::vector<bool> is_pivot(n, false);
  for (unsigned c : rr.pivot_cols) is_pivot[c] = true;
  Matrix out(f, n - rr.rank, n);
  unsigned row = 0;
  for (unsigned free_c = 0; free_c < n; ++free_c) {
    if (is_pivot[free_c]) continue;
    out(row, free_c) = 1;
    for (unsigned i = 0; i < rr.rank; ++i)
      out(row, rr.pivot_cols[i]) = f.neg(rr.mat(i, free_c));
    ++row;
  }
  return out;
}

Matrix random_matrix(unsigned rows, unsigned cols, const Field& f, Rng& rng) {
  Matrix m(f, rows, cols);
  for (unsigned i = 0; i < rows; ++i)
    for (unsigned j = 0; j < cols; ++j) m(i, j) = static_cast<Elem>(rng.uniform_below(f.q()));
  return m;
}

Matrix random_full_rank(unsigned rows, unsigned cols, const Field& f, Rng& rng) {
  const unsigned target = rows < cols ? rows : cols;
  if (target == 0) return Matrix(f, rows, cols);
  for (;;) {
    Matrix m = random_matrix(rows, cols, f, rng);
    if (rank(m) == target) return m;
  }
}

}  // namespace subcap
