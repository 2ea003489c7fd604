#ifndef SUBCAP_QCOUNT_HPP
#define SUBCAP_QCOUNT_HPP

#include <gmpxx.h>

#include <cstdint>
#include <string>

namespace subcap {

/// A nonnegative count carried in two representations at once: exact
/// (arbitrary precision) and log2 (double, -inf for zero). The log value
/// is accumulated from log2(q^a - q^b) terms, never by converting the
/// exact integer, so it stays accurate for q far beyond what a double
/// mantissa could hold.
struct QCount {
  mpz_class exact;
  double log2;

  static QCount zero();
  static QCount one();

  bool is_zero() const { return exact == 0; }
  std::string exact_str() const { return exact.get_str(); }
};

QCount qc_mul(const QCount& a, const QCount& b);
QCount qc_add(const QCount& a, const QCount& b);
/// Exact division; b must divide a (checked).
QCount qc_div_exact(const QCount& a, const QCount& b);

/// log2(q^a - q^b) for a > b >= 0, without overflow.
double log2_qpow_diff(std::uint64_t q, std::uint64_t a, std::uint64_t b);
/// log2(q^a - 1) for a >= 1.
double log2_qpow_minus_one(std::uint64_t q, std::uint64_t a);

/// Gaussian binomial coefficient [T choose d]_q = |Gr(T, d)_q|.
/// 0 for d > T or d < 0-equivalent inputs; 1 for d in {0, T}.
QCount gaussian(long long T, long long d, std::uint64_t q);

/// psi(n, d) = prod_{i=0}^{d-1} (q^n - q^i): the number of n x T
/// matrices whose rows span a fixed d-dimensional subspace. 1 for d = 0,
/// 0 for d > n; independent of T.
QCount psi(long long n, long long d, std::uint64_t q);

/// |Sp(T, m)_q| = sum_{d=0}^{min(m,T)} [T choose d]_q.
QCount sphere_size(long long T, long long m, std::uint64_t q);

struct CountAndExponent {
  QCount count;
  long long exponent;  // large-q growth rate: count ~ q^exponent
};

/// n(d1, d2, d12): subspaces of dimension d2 meeting a fixed
/// d1-dimensional subspace of F_q^T in exactly d12 dimensions.
CountAndExponent intersect_count(long long T, long long d1, long long d2, long long d12,
                                 std::uint64_t q);

/// a(d1, d2, d12): subspaces pi2' of dimension d2 with
/// pi1 + pi2' = pi1 + pi2, where dim(pi1 cap pi2) = d12. Equals the
/// intersect count evaluated in the ambient space pi1 + pi2 itself.
CountAndExponent samesum_count(long long T, long long d1, long long d2, long long d12,
                               std::uint64_t q);

/// Subspaces of dimension dx containing a fixed dy-dimensional subspace:
/// [T-dy choose dx-dy]_q. 0 for dy > dx.
QCount contain_count(long long T, long long dx, long long dy, std::uint64_t q);

}  // namespace subcap

#endif
