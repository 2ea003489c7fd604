#include "subcap/qcount.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace subcap {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();
const double kInvLn2 = 1.0 / std::log(2.0);

mpz_class mpz_qpow(std::uint64_t q, std::uint64_t e) {
  mpz_class base(static_cast<unsigned long>(q)), out;
  mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), static_cast<unsigned long>(e));
  return out;
}

double log2_add(double a, double b) {
  if (a == kNegInf) return b;
  if (b == kNegInf) return a;
  const double hi = a > b ? a : b;
  const double lo = a > b ? b : a;
  return hi + std::log1p(std::exp2(lo - hi)) * kInvLn2;
}

}  // namespace

QCount QCount::zero() { return QCount{mpz_class(0), kNegInf}; }
QCount QCount::one() { return QCount{mpz_class(1), 0.0}; }

QCount qc_mul(const QCount& a, const QCount& b) {
  if (a.is_zero() || b.is_zero()) return QCount::zero();
  return QCount{a.exact * b.exact, a.log2 + b.log2};
}

QCount qc_add(const QCount& a, const QCount& b) {
  return QCount{a.exact + b.exact, log2_add(a.log2, b.log2)};
}

QCount qc_div_exact(const QCount& a, const QCount& b) {
  if (b.is_zero()) throw std::invalid_argument("exact division by zero count");
  if (a.is_zero()) return QCount::zero();
  if (!mpz_divisible_p(a.exact.get_mpz_t(), b.exact.get_mpz_t()))
    throw std::logic_error("count division is not exact");
  mpz_class quot;
  mpz_divexact(quot.get_mpz_t(), a.exact.get_mpz_t(), b.exact.get_mpz_t());
  return QCount{std::move(quot), a.log2 - b.log2};
}

double log2_qpow_diff(std::uint64_t q, std::uint64_t a, std::uint64_t b) {
  if (b >= a) throw std::invalid_argument("log2_qpow_diff needs a > b");
  const double lq = std::log2(double(q));
  // q^a - q^b = q^a (1 - q^{b-a})
  return double(a) * lq + std::log1p(-std::exp2(-double(a - b) * lq)) * kInvLn2;
}

double log2_qpow_minus_one(std::uint64_t q, std::uint64_t a) {
  const double lq = std::log2(double(q));
  return double(a) * lq + std::log1p(-std::exp2(-double(a) * lq)) * kInvLn2;
}

QCount gaussian(long long T, long long d, std::uint64_t q) {
  if (q < 2) throw std::invalid_argument("field order must be >= 2");
  if (d < 0 || T < 0 || d > T) return QCount::zero();
  if (d == 0 || d == T) return QCount::one();
  mpz_class num(1), den(1);
  double lg = 0.0;
  for (long long i = 0; i < d; ++i) {
    num *= mpz_qpow(q, T - i) - 1;
    den *= mpz_qpow(q, d - i) - 1;
    lg += log2_qpow_minus_one(q, T - i) - log2_qpow_minus_one(q, d - i);
  }
  mpz_class quot;
  mpz_divexact(quot.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
  return QCount{std::move(quot), lg};
}

QCount psi(long long n, long long d, std::uint64_t q) {
  if (q < 2) throw std::invalid_argument("field order must be >= 2");
  if (d < 0 || n < 0) return QCount::zero();
  if (d == 0) return QCount::one();
  if (d > n) return QCount::zero();
  mpz_class prod(1);
  double lg = 0.0;
  for (long long i = 0; i < d; ++i) {
    prod *= mpz_qpow(q, n) - mpz_qpow(q, i);
    lg += log2_qpow_diff(q, n, i);
  }
  return QCount{std::move(prod), lg};
}

QCount sphere_size(long long T, long long m, std::uint64_t q) {
  if (T < 0 || m < 0) return QCount::zero();
  QCount acc = QCount::zero();
  const long long dmax = m < T ? m : T;
  for (long long d = 0; d <= dmax; ++d) acc = qc_add(acc, gaussian(T, d, q));
  return acc;
}

CountAndExponent intersect_count(long long T, long long d1, long long d2, long long d12,
                                 std::uint64_t q) {
  const long long exponent = d12 * (d1 - d12) + (d2 - d12) * (T - d2);
  if (d12 < 0 || d12 > d1 || d12 > d2 || d1 > T || d2 > T || d1 < 0 || d2 < 0)
    return {QCount::zero(), exponent};
  if (d1 + d2 - d12 > T) return {QCount::zero(), exponent};

  // Choices of the intersection inside pi1, times choices of the
  // remaining d2 - d12 basis vectors outside pi1.
  QCount count = gaussian(d1, d12, q);
  mpz_class num(1), den(1);
  double lg = 0.0;
  for (long long i = 0; i < d2 - d12; ++i) {
    num *= mpz_qpow(q, T) - mpz_qpow(q, d1 + i);
    den *= mpz_qpow(q, d2) - mpz_qpow(q, d12 + i);
    lg += log2_qpow_diff(q, T, d1 + i) - log2_qpow_diff(q, d2, d12 + i);
  }
  if (!mpz_divisible_p(num.get_mpz_t(), den.get_mpz_t()))
    throw std::logic_error("intersect count product is not integral");
  mpz_class quot;
  mpz_divexact(quot.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
  return {qc_mul(count, QCount{std::move(quot), lg}), exponent};
}

CountAndExponent samesum_count(long long T, long long d1, long long d2, long long d12,
                               std::uint64_t q) {
  const long long exponent = d2 * (d1 - d12);
  if (d12 < 0 || d12 > d1 || d12 > d2 || d1 > T || d2 > T || d1 < 0 || d2 < 0)
    return {QCount::zero(), exponent};
  const long long d = d1 + d2 - d12;  // dim(pi1 + pi2)
  if (d > T) return {QCount::zero(), exponent};
  return {intersect_count(d, d1, d2, d12, q).count, exponent};
}

QCount contain_count(long long T, long long dx, long long dy, std::uint64_t q) {
  if (dy > dx || dy < 0 || dx > T) return QCount::zero();
  return gaussian(T - dy, dx - dy, q);
}

}  // namespace subcap
