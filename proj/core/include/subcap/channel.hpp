#ifndef SUBCAP_CHANNEL_HPP
#define SUBCAP_CHANNEL_HPP

#include <cstdint>
#include <vector>

#include "subcap/field.hpp"
#include "subcap/matrix.hpp"
#include "subcap/rng.hpp"
#include "subcap/subspace.hpp"

namespace subcap {

/// Single-source channel Y = G X: the source injects m packets of T
/// symbols per slot, the receiver collects n random linear combinations.
/// q only needs to be a prime power (capacity formulas accept orders far
/// beyond the element-arithmetic cap of 256; field() enforces the cap
/// when sampling is requested).
struct ChannelParams {
  std::uint64_t q = 2;
  unsigned T = 1;
  unsigned m = 1;
  unsigned n = 1;

  void validate() const;       // q prime power >= 2; T >= 1
  Field field() const;         // throws if q > 256
  unsigned i_star() const;     // min(m, n, floor(T/2))
  unsigned delta() const { return m < T ? m : T; }  // max input dimension
};

/// Two-source multiple access channel Y = G1 X1 + G2 X2.
struct MacParams {
  std::uint64_t q = 2;
  unsigned T = 1;
  unsigned n = 1;
  unsigned m1 = 1;
  unsigned m2 = 1;

  void validate() const;
  Field field() const;
  ChannelParams cooperative() const {  // both sources as one super-source
    return ChannelParams{q, T, m1 + m2, n};
  }
};

/// Distribution of the number of received packets N in the erasure
/// model, over {0, ..., m}.
class ErasureDist {
 public:
  explicit ErasureDist(std::vector<double> probs);
  const std::vector<double>& probs() const { return p_; }
  unsigned max_packets() const { return static_cast<unsigned>(p_.size() - 1); }
  double mean() const;            // E[N]
  double second_moment() const;   // E[N^2]
  unsigned sample(Rng& rng) const;

 private:
  std::vector<double> p_;
};

/// One use of the matrix channel: Y = G x with G uniform n x m.
Matrix matrix_channel_step(const Matrix& x, const ChannelParams& params, Rng& rng);

struct TransProb {
  double log2_prob;  // -inf for impossible transitions
  double prob;       // exp2(log2_prob), 0 when it underflows
};

/// P(pi_y | pi_x) = psi(n, dim pi_y) q^{-n dim pi_x} for pi_y inside
/// pi_x, else 0.
TransProb subspace_transition_prob(const Subspace& pi_x, const Subspace& pi_y,
                                   const ChannelParams& params);

Matrix mac_channel_step(const Matrix& x1, const Matrix& x2, const MacParams& params, Rng& rng);

/// Depends on (pi_1, pi_2) only through pi_1 + pi_2; evaluated as the
/// single-source law at that sum.
TransProb mac_transition_prob(const Subspace& pi_1, const Subspace& pi_2, const Subspace& pi_y,
                              const MacParams& params);

struct ErasureStep {
  Matrix y;
  unsigned n_received;
};

/// One use of the erasure channel Y = E G x with G uniform full-rank
/// m x m and E diagonal 0/1 with N ones placed uniformly. Requires the
/// model's regime m <= floor(T/2) and a square channel (params.n == m).
ErasureStep erasure_channel_step(const Matrix& x, const ErasureDist& edist,
                                 const ChannelParams& params, Rng& rng);

}  // namespace subcap

#endif
