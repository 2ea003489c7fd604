#ifndef SUBCAP_FIELD_HPP
#define SUBCAP_FIELD_HPP

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace subcap {

/// Element of a finite field, encoded as an integer in [0, q).
/// For extension fields the encoding packs the base-p digit vector:
/// a = sum a_i x^i  <->  value = sum a_i p^i.
using Elem = std::uint16_t;

bool is_prime(unsigned n);

/// Factors q into (p, k) with q = p^k, p prime. Empty if q is not a
/// prime power or q < 2.
std::optional<std::pair<unsigned, unsigned>> factor_prime_power(std::uint64_t q);

/// GF(p^k) for p^k <= 256. Immutable after construction; handles are
/// cheap to copy and safe to share across threads.
///
/// The reduction polynomial for k > 1 is the lexicographically smallest
/// monic irreducible of degree k over GF(p), i.e. the one whose packed
/// integer encoding sum c_i p^i (with c_k = 1) is minimal. The chosen
/// polynomials are listed in docs/fields.md and pinned by tests so that
/// element encodings stay stable across builds.
class Field {
 public:
  Field(unsigned p, unsigned k);

  /// Builds the field of order q, factoring q = p^k internally.
  static Field of_order(std::uint64_t q);

  unsigned p() const { return impl_->p; }
  unsigned k() const { return impl_->k; }
  unsigned q() const { return impl_->q; }

  /// Coefficients c_0..c_k of the reduction polynomial (c_k = 1).
  /// For k = 1 this is {0, 1}, i.e. the polynomial x.
  const std::vector<unsigned>& reduction_polynomial() const {
    return impl_->reduction_poly;
  }

  Elem add(Elem a, Elem b) const;
  Elem sub(Elem a, Elem b) const;
  Elem neg(Elem a) const;
  Elem mul(Elem a, Elem b) const;
  Elem div(Elem a, Elem b) const;  // throws on b == 0
  Elem inv(Elem a) const;          // throws on a == 0

  Elem pow(Elem a, std::uint64_t e) const;

  bool valid(Elem a) const { return a < impl_->q; }
  void check(Elem a) const;  // throws if a >= q

  /// Discrete-log tables: exp_table()[i] = g^i for the fixed generator g,
  /// i in [0, q-1); log_table()[e] defined for nonzero e.
  const std::vector<Elem>& exp_table() const { return impl_->exp_tab; }
  const std::vector<Elem>& log_table() const { return impl_->log_tab; }
  Elem generator() const { return impl_->gen; }

  friend bool operator==(const Field& a, const Field& b) {
    return a.impl_->p == b.impl_->p && a.impl_->k == b.impl_->k;
  }
  friend bool operator!=(const Field& a, const Field& b) { return !(a == b); }

 private:
  struct Impl {
    unsigned p, k, q;
    Elem gen;
    std::vector<unsigned> reduction_poly;  // c_0..c_k
    std::vector<Elem> exp_tab;             // size q-1
    std::vector<Elem> log_tab;             // size q, log_tab[0] unused
    std::vector<Elem> add_tab;             // q*q, row-major
    std::vector<Elem> mul_tab;             // q*q, row-major
  };
  std::shared_ptr<const Impl> impl_;
};

}  // namespace subcap

#endif
