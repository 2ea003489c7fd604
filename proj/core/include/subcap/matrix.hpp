#ifndef SUBCAP_MATRIX_HPP
#define SUBCAP_MATRIX_HPP

#include <cstdint>
#include <vector>

#include "subcap/field.hpp"
#include "subcap/rng.hpp"

namespace subcap {

/// Dense row-major matrix over GF(q). Shapes with zero rows or columns
/// are legal (the zero subspace has a 0 x T basis).
class Matrix {
 public:
  Matrix(Field field, unsigned rows, unsigned cols)
      : field_(std::move(field)), rows_(rows), cols_(cols), a_(std::size_t(rows) * cols, 0) {}

  static Matrix identity(const Field& f, unsigned n);

  const Field& field() const { return field_; }
  unsigned rows() const { return rows_; }
  unsigned cols() const { return cols_; }

  Elem operator()(unsigned r, unsigned c) const { return a_[std::size_t(r) * cols_ + c]; }
  Elem& operator()(unsigned r, unsigned c) { return a_[std::size_t(r) * cols_ + c]; }
  const std::vector<Elem>& data() const { return a_; }

  void set_checked(unsigned r, unsigned c, Elem v);

  bool is_zero() const;

  friend bool operator==(const Matrix& x, const Matrix& y) {
    return x.field_ == y.field_ && x.rows_ == y.rows_ && x.cols_ == y.cols_ && x.a_ == y.a_;
  }
  friend bool operator!=(const Matrix& x, const Matrix& y) { return !(x == y); }

 private:
  Field field_;
  unsigned rows_, cols_;
  std::vector<Elem> a_;
};

Matrix mul(const Matrix& a, const Matrix& b);
Matrix add(const Matrix& a, const Matrix& b);
Matrix stack_rows(const Matrix& top, const Matrix& bottom);
Matrix transpose(const Matrix& a);

struct RrefResult {
  Matrix mat;
  unsigned rank;
  std::vector<unsigned> pivot_cols;  // one per nonzero row
};

/// Unique reduced row echelon form; span-preserving.
RrefResult rref(const Matrix& x);

unsigned rank(const Matrix& x);

/// Basis of {v : x v^T = 0}, returned as rows of a (cols - rank) x cols
/// matrix (the right null space of x).
Matrix nullspace(const Matrix& x);

Matrix random_matrix(unsigned rows, unsigned cols, const Field& f, Rng& rng);

/// Uniform over matrices of rank min(rows, cols), by rejection.
Matrix random_full_rank(unsigned rows, unsigned cols, const Field& f, Rng& rng);

}  // namespace subcap

#endif
