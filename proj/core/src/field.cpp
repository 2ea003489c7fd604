#include "subcap/field.hpp"

#include <map>
#include <mutex>
#include <stdexcept>

namespace subcap {

namespace {

// Polynomials over GF(p) as coefficient vectors c_0..c_deg, c_deg != 0
// (except the zero polynomial, represented as an empty vector).

void poly_trim(std::vector<unsigned>& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

// Remainder of a mod b, coefficient arithmetic mod p. b must be monic.
std::vector<unsigned> poly_rem(std::vector<unsigned> a, const std::vector<unsigned>& b, unsigned p) {
  poly_trim(a);
  const std::size_t db = b.size() - 1;
  while (a.size() > db) {
    const unsigned lead = a.back();  // nonzero after trim
    const std::size_t shift = a.size() - 1 - db;
    for (std::size_t i = 0; i <= db; ++i) {
      unsigned& c = a[shift + i];
      c = (c + p - (lead * b[i]) % p) % p;
    }
    a.pop_back();
    poly_trim(a);
  }
  return a;
}

bool poly_is_zero(const std::vector<unsigned>& a) {
  for (unsigned c : a)
    if (c != 0) return false;
  return true;
}

// Decodes n = sum c_i p^i into coefficients c_0..c_deg.
std::vector<unsigned> poly_from_int(unsigned n, unsigned p) {
  std::vector<unsigned> c;
  while (n > 0) {
    c.push_back(n % p);
    n /= p;
  }
  return c;
}

bool is_irreducible(const std::vector<unsigned>& f, unsigned p) {
  const std::size_t k = f.size() - 1;
  if (k == 0) return false;
  if (f[0] == 0) return k == 1;  // divisible by x
  // Trial division by every monic polynomial of degree 1..k/2.
  for (std::size_t d = 1; 2 * d <= k; ++d) {
    unsigned count = 1;
    for (std::size_t i = 0; i < d; ++i) count *= p;  // p^d monic candidates
    for (unsigned n = 0; n < count; ++n) {
      std::vector<unsigned> g = poly_from_int(n, p);
      g.resize(d + 1, 0);
      g[d] = 1;
      if (poly_is_zero(poly_rem(f, g, p))) return false;
    }
  }
  return true;
}

std::vector<unsigned> elem_to_poly(Elem a, unsigned p) { return poly_from_int(a, p); }

Elem poly_to_elem(const std::vector<unsigned>& c, unsigned p) {
  unsigned v = 0;
  for (std::size_t i = c.size(); i-- > 0;) v = v * p + c[i];
  return static_cast<Elem>(v);
}

Elem mul_poly(Elem a, Elem b, const std::vector<unsigned>& red, unsigned p) {
  if (a == 0 || b == 0) return 0;
  const auto pa = elem_to_poly(a, p);
  const auto pb = elem_to_poly(b, p);
  std::vector<unsigned> prod(pa.size() + pb.size() - 1, 0);
  for (std::size_t i = 0; i < pa.size(); ++i)
    for (std::size_t j = 0; j < pb.size(); ++j)
      prod[i + j] = (prod[i + j] + pa[i] * pb[j]) % p;
  return poly_to_elem(poly_rem(std::move(prod), red, p), p);
}

Elem add_digits(Elem a, Elem b, unsigned p, unsigned k, bool subtract) {
  if (k == 1) return static_cast<Elem>(subtract ? (a + p - b % p) % p : (a + b) % p);
  unsigned out = 0, mult = 1;
  for (unsigned i = 0; i < k; ++i) {
    const unsigned da = a % p, db = b % p;
    a /= p;
    b /= p;
    const unsigned d = subtract ? (da + p - db) % p : (da + db) % p;
    out += d * mult;
    mult *= p;
  }
  return static_cast<Elem>(out);
}

}  // namespace

bool is_prime(unsigned n) {
  if (n < 2) return false;
  for (unsigned d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

std::optional<std::pair<unsigned, unsigned>> factor_prime_power(std::uint64_t q) {
  if (q < 2) return std::nullopt;
  std::uint64_t p = 2;
  while (q % p != 0) {
    ++p;
    if (p * p > q) {
      p = q;
      break;
    }
  }
  unsigned k = 0;
  std::uint64_t v = q;
  while (v % p == 0) {
    v /= p;
    ++k;
  }
  if (v != 1) return std::nullopt;
  if (p > 0xFFFFFFFFull || !is_prime(static_cast<unsigned>(p))) return std::nullopt;
  return std::make_pair(static_cast<unsigned>(p), k);
}

Field::Field(unsigned p, unsigned k) {
  if (!is_prime(p)) throw std::invalid_argument("field characteristic must be prime, got " + std::to_string(p));
  if (k < 1) throw std::invalid_argument("extension degree must be >= 1");
  std::uint64_t q = 1;
  for (unsigned i = 0; i < k; ++i) {
    q *= p;
    if (q > 256) throw std::invalid_argument("field order exceeds 256");
  }

  // Construction is deterministic per (p, k), so instances are shared
  // process-wide; the tables are immutable once built.
  static std::mutex cache_mutex;
  static std::map<std::pair<unsigned, unsigned>, std::shared_ptr<const Impl>> cache;
  {
    std::lock_guard<std::mutex> lock(cache_mutex);
    const auto it = cache.find({p, k});
    if (it != cache.end()) {
      impl_ = it->second;
      return;
    }
  }

  auto impl = std::make_shared<Impl>();
  impl->p = p;
  impl->k = k;
  impl->q = static_cast<unsigned>(q);

  if (k == 1) {
    impl->reduction_poly = {0, 1};  // x
  } else {
    // Smallest monic irreducible of degree k, scanning packed encodings.
    unsigned lo = 1;
    for (unsigned i = 0; i < k; ++i) lo *= p;
    unsigned found = 0;
    for (unsigned n = lo; n < 2 * lo; ++n) {
      if (is_irreducible(poly_from_int(n, p), p)) {
        found = n;
        break;
      }
    }
    impl->reduction_poly = poly_from_int(found, p);
  }

  const unsigned Q = impl->q;
  auto raw_mul = [&](Elem a, Elem b) -> Elem {
    if (k == 1) return static_cast<Elem>((unsigned(a) * unsigned(b)) % p);
    return mul_poly(a, b, impl->reduction_poly, p);
  };

  // Smallest generator of the multiplicative group.
  impl->gen = 0;
  for (Elem g = 1; g < Q; ++g) {
    Elem x = 1;
    unsigned order = 0;
    do {
      x = raw_mul(x, g);
      ++order;
    } while (x != 1);
    if (order == Q - 1) {
      impl->gen = g;
      break;
    }
  }

  impl->exp_tab.resize(Q - 1);
  impl->log_tab.assign(Q, 0);
  Elem x = 1;
  for (unsigned i = 0; i < Q - 1; ++i) {
    impl->exp_tab[i] = x;
    impl->log_tab[x] = static_cast<Elem>(i);
    x = raw_mul(x, impl->gen);
  }
  if (x != 1) throw std::logic_error("generator order mismatch while building tables");

  impl->add_tab.resize(std::size_t(Q) * Q);
  impl->mul_tab.resize(std::size_t(Q) * Q);
  for (unsigned a = 0; a < Q; ++a)
    for (unsigned b = 0; b < Q; ++b) {
      impl->add_tab[std::size_t(a) * Q + b] = add_digits(Elem(a), Elem(b), p, k, false);
      impl->mul_tab[std::size_t(a) * Q + b] = raw_mul(Elem(a), Elem(b));
    }

  {
    std::lock_guard<std::mutex> lock(cache_mutex);
    const auto [it, inserted] = cache.emplace(std::make_pair(p, k), std::move(impl));
    impl_ = it->second;
  }
}

Field Field::of_order(std::uint64_t q) {
  auto pk = factor_prime_power(q);
  if (!pk || q > 256) throw std::invalid_argument("field order must be a prime power <= 256, got " + std::to_string(q));
  return Field(pk->first, pk->second);
}

void Field::check(Elem a) const {
  if (!valid(a)) throw std::invalid_argument("element " + std::to_string(a) + " out of range for GF(" + std::to_string(q()) + ")");
}

Elem Field::add(Elem a, Elem b) const { return impl_->add_tab[std::size_t(a) * impl_->q + b]; }

Elem Field::neg(Elem a) const { return add_digits(0, a, impl_->p, impl_->k, true); }

Elem Field::sub(Elem a, Elem b) const { return add_digits(a, b, impl_->p, impl_->k, true); }

Elem Field::mul(Elem a, Elem b) const { return impl_->mul_tab[std::size_t(a) * impl_->q + b]; }

Elem Field::inv(Elem a) const {
  if (a == 0) throw std::invalid_argument("inversion of zero");
  const unsigned ord = impl_->q - 1;
  return impl_->exp_tab[(ord - impl_->log_tab[a]) % ord];
}

Elem Field::div(Elem a, Elem b) const {
  if (b == 0) throw std::invalid_argument("division by zero");
  return mul(a, inv(b));
}

Elem Field::pow(Elem a, std::uint64_t e) const {
  if (e == 0) return 1;
  if (a == 0) return 0;
  const unsigned ord = impl_->q - 1;
  return impl_->exp_tab[(std::uint64_t(impl_->log_tab[a]) * (e % ord)) % ord];
}

}  // namespace subcap
