#include "doctest.h"
#include "oracles.hpp"
#include "subcap/qcount.hpp"
#include "subcap/subspace.hpp"

#include <cmath>

using namespace subcap;

TEST_SUITE_BEGIN("qcount");

namespace {

Subspace unit_span(const Field& f, unsigned T, unsigned first, unsigned count) {
  Matrix m(f, count, T);
  for (unsigned i = 0; i < count; ++i) m(i, first + i) = 1;
  return Subspace::span_of(m);
}

bool log_matches(const QCount& c) {
  if (c.is_zero()) return c.log2 == -std::numeric_limits<double>::infinity();
  const double ref = std::log2(c.exact.get_d());
  return std::abs(c.log2 - ref) <= 1e-9 * std::max(1.0, std::abs(ref));
}

}  // namespace

TEST_CASE("gaussian basics") {
  CHECK(gaussian(5, 0, 2).exact == 1);
  CHECK(gaussian(5, 5, 2).exact == 1);
  CHECK(gaussian(5, 6, 2).exact == 0);
  CHECK(gaussian(4, 2, 2).exact == 35);
  CHECK(gaussian(3, 1, 3).exact == 13);
  CHECK(log_matches(gaussian(4, 2, 2)));
  CHECK(log_matches(gaussian(12, 5, 16)));
}

TEST_CASE("psi basics") {
  CHECK(psi(3, 0, 2).exact == 1);
  CHECK(psi(2, 1, 2).exact == 3);
  CHECK(psi(3, 2, 2).exact == 42);
  CHECK(psi(2, 3, 2).exact == 0);
  CHECK(log_matches(psi(3, 2, 2)));
}

TEST_CASE("psi counts spanning matrices") {
  // 3 x T matrices spanning a fixed 2-dim subspace of F_2^3.
  const Field f(2, 1);
  const Subspace pi = unit_span(f, 3, 0, 2);
  CHECK(test::count_spanning_matrices(pi, 3) == 42);
}

TEST_CASE("sphere size") {
  CHECK(sphere_size(2, 1, 2).exact == 4);
  CHECK(sphere_size(7, 0, 2).exact == 1);
  CHECK(sphere_size(2, 2, 2).exact == 5);
  CHECK(sphere_size(2, 9, 2).exact == 5);  // dimension caps at T
}

TEST_CASE("intersect count examples") {
  CHECK(intersect_count(3, 1, 1, 0, 2).count.exact == 6);
  CHECK(intersect_count(3, 1, 1, 0, 2).exponent == 2);
  CHECK(intersect_count(4, 2, 2, 2, 2).count.exact == gaussian(2, 2, 2).exact);
  CHECK(intersect_count(5, 3, 2, 2, 2).count.exact == gaussian(3, 2, 2).exact);
  CHECK(intersect_count(3, 1, 1, 1, 2).count.exact == 1);
  CHECK(intersect_count(3, 2, 2, 0, 2).count.exact == 0);  // sum would exceed T
}

TEST_CASE("samesum count examples") {
  CHECK(samesum_count(3, 1, 1, 0, 2).count.exact == 2);
  CHECK(samesum_count(2, 1, 1, 1, 2).count.exact == 1);
  CHECK(samesum_count(9, 2, 2, 1, 3).exponent == 2);
}

TEST_CASE("contain count") {
  CHECK(contain_count(3, 2, 1, 2).exact == 3);
  CHECK(contain_count(5, 2, 2, 2).exact == 1);
  CHECK(contain_count(6, 6, 3, 2).exact == 1);
  CHECK(contain_count(4, 1, 2, 2).exact == 0);
}

TEST_CASE("rank partition identity") {
  for (unsigned q : {2u, 3u, 4u})
    for (long long n = 1; n <= 5; ++n)
      for (long long T = 1; T <= 5; ++T) {
        mpz_class total = 0;
        const long long top = n < T ? n : T;
        for (long long d = 0; d <= top; ++d)
          total += psi(n, d, q).exact * gaussian(T, d, q).exact;
        mpz_class expect;
        mpz_ui_pow_ui(expect.get_mpz_t(), q, static_cast<unsigned long>(n * T));
        CHECK(total == expect);
      }
}

TEST_CASE("gaussian bounds") {
  for (unsigned q : {2u, 3u, 4u, 5u, 7u, 8u, 9u, 11u, 13u, 16u})
    for (long long T = 2; T <= 12; ++T)
      for (long long d = 1; d < T; ++d) {
        mpz_class qd;
        mpz_ui_pow_ui(qd.get_mpz_t(), q, static_cast<unsigned long>(d * (T - d)));
        const mpz_class g = gaussian(T, d, q).exact;
        CHECK(qd < g);
        CHECK(g < 4 * qd);
      }
}

TEST_CASE("psi bounds") {
  for (unsigned q : {2u, 3u, 4u, 5u, 7u, 8u, 9u, 11u, 13u, 16u})
    for (long long n = 1; n <= 12; ++n)
      for (long long d = 1; d <= n; ++d) {
        mpz_class qnd;
        mpz_ui_pow_ui(qnd.get_mpz_t(), q, static_cast<unsigned long>(n * d));
        const mpz_class p = psi(n, d, q).exact;
        CHECK(p < qnd);
        // (1 - d q^{-n+d-1}) <= psi / q^{nd}, cross-multiplied exactly.
        // Equality holds at d = 1, strictness from d = 2 on.
        mpz_class qpow;
        mpz_ui_pow_ui(qpow.get_mpz_t(), q, static_cast<unsigned long>(n - d + 1));
        if (d == 1)
          CHECK((qpow - static_cast<long>(d)) * qnd == p * qpow);
        else
          CHECK((qpow - static_cast<long>(d)) * qnd < p * qpow);
      }
}

TEST_CASE("product identity for nested gaussians") {
  for (unsigned q : {2u, 3u, 5u})
    for (long long T = 0; T <= 8; ++T)
      for (long long dx = 0; dx <= T; ++dx)
        for (long long dy = 0; dy <= dx; ++dy) {
          CHECK(gaussian(T - dy, dx - dy, q).exact * gaussian(T, dy, q).exact ==
                gaussian(T, dx, q).exact * gaussian(dx, dy, q).exact);
        }
}

TEST_CASE("intersect counts partition the grassmannian") {
  for (unsigned q : {2u, 3u})
    for (long long T = 1; T <= 5; ++T)
      for (long long d1 = 0; d1 <= T; ++d1)
        for (long long d2 = 0; d2 <= T; ++d2) {
          mpz_class total = 0;
          for (long long d12 = 0; d12 <= std::min(d1, d2); ++d12)
            total += intersect_count(T, d1, d2, d12, q).count.exact;
          CHECK(total == gaussian(T, d2, q).exact);
        }
}

TEST_CASE("counts agree with exhaustive enumeration") {
  for (unsigned q : {2u, 3u}) {
    const Field f = Field::of_order(q);
    for (unsigned T = 1; T <= 4; ++T) {
      for (unsigned d = 0; d <= T; ++d)
        CHECK(gaussian(T, d, q).exact == test::count_grassmannian(f, T, d));
      for (unsigned d1 = 0; d1 <= T; ++d1) {
        const Subspace pi1 = unit_span(f, T, 0, d1);
        for (unsigned d2 = 0; d2 <= T; ++d2) {
          for (unsigned d12 = 0; d12 <= std::min(d1, d2); ++d12) {
            CHECK(intersect_count(T, d1, d2, d12, q).count.exact ==
                  test::count_intersecting(pi1, d2, d12));
            if (d1 + d2 - d12 <= T && d12 + (d1 - d12) <= T) {
              // pi2 overlapping pi1 in its last d12 coordinates.
              const Subspace pi2 = unit_span(f, T, d1 - d12, d2);
              CHECK(samesum_count(T, d1, d2, d12, q).count.exact ==
                    test::count_same_sum(pi1, pi2, d2));
            }
          }
          if (d2 <= d1) {
            const Subspace piy = unit_span(f, T, 0, d2);
            CHECK(contain_count(T, d1, d2, q).exact == test::count_containing(piy, d1));
          }
        }
      }
    }
  }
}

TEST_CASE("log domain survives large q") {
  const QCount g = gaussian(14, 7, 1 << 16);
  CHECK(g.log2 == doctest::Approx(std::log2(g.exact.get_d())).epsilon(1e-12));
  const double expect = 7.0 * 7.0 * 16.0;  // d(T-d) log2 q
  CHECK(g.log2 > expect);
  CHECK(g.log2 < expect + 2.0);
}

TEST_SUITE_END();
