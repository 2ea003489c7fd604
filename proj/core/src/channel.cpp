#include "subcap/channel.hpp"

#include <cmath>
#include <stdexcept>

#include "subcap/qcount.hpp"

namespace subcap {

namespace {
constexpr double kNegInf = -std::numeric_limits<double>::infinity();
}

void ChannelParams::validate() const {
  if (!factor_prime_power(q)) throw std::invalid_argument("q must be a prime power >= 2");
  if (T < 1) throw std::invalid_argument("packet length T must be >= 1");
}

Field ChannelParams::field() const {
  validate();
  return Field::of_order(q);
}

unsigned ChannelParams::i_star() const {
  unsigned i = m < n ? m : n;
  return i < T / 2 ? i : T / 2;
}

void MacParams::validate() const {
  if (!factor_prime_power(q)) throw std::invalid_argument("q must be a prime power >= 2");
  if (T < 1) throw std::invalid_argument("packet length T must be >= 1");
}

Field MacParams::field() const {
  validate();
  return Field::of_order(q);
}

ErasureDist::ErasureDist(std::vector<double> probs) : p_(std::move(probs)) {
  if (p_.empty()) throw std::invalid_argument("erasure distribution must cover N = 0..m");
  double sum = 0;
  for (double v : p_) {
    if (v < 0) throw std::invalid_argument("erasure distribution entries must be nonnegative");
    sum += v;
  }
  if (std::abs(sum - 1.0) > 1e-12)
    throw std::invalid_argument("erasure distribution must sum to 1");
}

double ErasureDist::mean() const {
  double mu = 0;
  for (std::size_t i = 0; i < p_.size(); ++i) mu += double(i) * p_[i];
  return mu;
}

double ErasureDist::second_moment() const {
  double mu2 = 0;
  for (std::size_t i = 0; i < p_.size(); ++i) mu2 += double(i) * double(i) * p_[i];
  return mu2;
}

unsigned ErasureDist::sample(Rng& rng) const {
  const double u = rng.uniform01();
  double acc = 0;
  for (std::size_t i = 0; i < p_.size(); ++i) {
    acc += p_[i];
    if (u < acc) return static_cast<unsigned>(i);
  }
  return max_packets();
}

Matrix matrix_channel_step(const Matrix& x, const ChannelParams& params, Rng& rng) {
  const Field f = params.field();
  if (x.field() != f || x.rows() != params.m || x.cols() != params.T)
    throw std::invalid_argument("channel input must be m x T over GF(q)");
  const Matrix g = random_matrix(params.n, params.m, f, rng);
  return mul(g, x);
}

TransProb subspace_transition_prob(const Subspace& pi_x, const Subspace& pi_y,
                                   const ChannelParams& params) {
  if (pi_x.ambient() != params.T || pi_y.ambient() != params.T)
    throw std::invalid_argument("subspace ambient dimension must equal T");
  if (!pi_x.contains(pi_y)) return {kNegInf, 0.0};
  const double lq = std::log2(double(params.q));
  const double lp =
      psi(params.n, pi_y.dim(), params.q).log2 - double(params.n) * pi_x.dim() * lq;
  return {lp, std::exp2(lp)};
}

Matrix mac_channel_step(const Matrix& x1, const Matrix& x2, const MacParams& params, Rng& rng) {
  const Field f = params.field();
  if (x1.field() != f || x1.rows() != params.m1 || x1.cols() != params.T)
    throw std::invalid_argument("first MAC input must be m1 x T over GF(q)");
  if (x2.field() != f || x2.rows() != params.m2 || x2.cols() != params.T)
    throw std::invalid_argument("second MAC input must be m2 x T over GF(q)");
  const Matrix g1 = random_matrix(params.n, params.m1, f, rng);
  const Matrix g2 = random_matrix(params.n, params.m2, f, rng);
  return add(mul(g1, x1), mul(g2, x2));
}

TransProb mac_transition_prob(const Subspace& pi_1, const Subspace& pi_2, const Subspace& pi_y,
                              const MacParams& params) {
  const ChannelParams single{params.q, params.T, params.m1 + params.m2, params.n};
  return subspace_transition_prob(sum(pi_1, pi_2), pi_y, single);
}

ErasureStep erasure_channel_step(const Matrix& x, const ErasureDist& edist,
                                 const ChannelParams& params, Rng& rng) {
  const Field f = params.field();
  if (params.m > params.T / 2)
    throw std::invalid_argument("erasure model requires m <= floor(T/2)");
  if (params.n != params.m)
    throw std::invalid_argument("erasure model uses a square channel matrix (n == m)");
  if (x.field() != f || x.rows() != params.m || x.cols() != params.T)
    throw std::invalid_argument("channel input must be m x T over GF(q)");
  if (edist.max_packets() != params.m)
    throw std::invalid_argument("erasure distribution must range over 0..m");

  const unsigned received = edist.sample(rng);
  const Matrix g = random_full_rank(params.m, params.m, f, rng);
  Matrix y = mul(g, x);

  // Uniform choice of which m - N rows get erased (partial Fisher-Yates).
  std::vector<unsigned> rows(params.m);
  for (unsigned i = 0; i < params.m; ++i) rows[i] = i;
  for (unsigned i = 0; i < received; ++i) {
    const unsigned j = i + rng.uniform_below(params.m - i);
    std::swap(rows[i], rows[j]);
  }
  for (unsigned i = received; i < params.m; ++i)
    for (unsigned c = 0; c < params.T; ++c) y(rows[i], c) = 0;

  return {std::move(y), received};
}

}  // namespace subcap
