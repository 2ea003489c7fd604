#ifndef SUBCAP_CAPACITY_HPP
#define SUBCAP_CAPACITY_HPP

#include <span>
#include <vector>

#include "subcap/channel.hpp"

namespace subcap {

/// Probability vector over input subspace dimensions 0..min(m, T). The
/// channel symmetry makes this the whole optimization variable: the
/// optimal input is uniform over subspaces of equal dimension.
class DimDist {
 public:
  explicit DimDist(std::vector<double> alpha);
  static DimDist point_mass(unsigned dim, unsigned size);
  static DimDist uniform(unsigned size);

  const std::vector<double>& alpha() const { return a_; }
  double operator[](unsigned i) const { return a_[i]; }
  unsigned size() const { return static_cast<unsigned>(a_.size()); }

 private:
  std::vector<double> a_;
};

/// log2 f(d_y) where f(d_y) = P(Pi_Y = pi_y) / psi(n, d_y) for any pi_y
/// of dimension d_y; -inf when no input mass can reach d_y.
double log_f(unsigned d_y, std::span<const double> alpha, const ChannelParams& params);

/// I(Pi_X; Pi_Y) in bits under the dimension-uniform input with weights
/// alpha. alpha need not be normalized here; the formula is evaluated
/// coordinate-wise (gradients are taken against free coordinates).
double mutual_info(std::span<const double> alpha, const ChannelParams& params);

/// Partial derivatives dI/d alpha_k, k = 0..min(m, T), in bits.
std::vector<double> mutual_info_gradient(std::span<const double> alpha,
                                         const ChannelParams& params);

struct CapacityResult {
  double capacity_bits = 0;
  std::vector<double> alpha_star;
  double kt_lambda = 0;    // common derivative value on the support
  double kt_residual = 0;  // max KT violation at the returned point
  int iterations = 0;
  bool converged = false;
};

/// Maximizes mutual_info over the simplex by exponentiated-gradient
/// ascent with backtracking, then a Newton polish on the active set.
/// Converged means the Kuhn-Tucker residual
///   max( max_{alpha_k > eps} |I'_k - lambda|,
///        max_{alpha_k <= eps} (I'_k - lambda)^+ )
/// dropped below tol, with lambda = sum_k alpha_k I'_k.
CapacityResult optimize_capacity(const ChannelParams& params, double tol = 1e-9,
                                 int max_iterations = 100000);

/// Numerical support of a dimension distribution at a threshold.
std::vector<unsigned> numeric_support(std::span<const double> alpha, double threshold = 1e-6);

/// I(X; Y) of the raw matrix channel for an arbitrary input assignment
/// over all q^{mT} matrices (index: entries row-major, first entry least
/// significant base-q digit). Full enumeration; guarded to
/// q^{mT} <= 2^20 and q^{nT} <= 2^20.
double brute_mutual_info(std::span<const double> px, const ChannelParams& params);

std::uint64_t matrix_index(const Matrix& x);
Matrix matrix_from_index(std::uint64_t index, unsigned rows, unsigned cols, const Field& f);

struct AsymptoticCapacity {
  double bits;
  unsigned i_star;
};

/// i*(T - i*) log2 q with i* = min(m, n, floor(T/2)).
AsymptoticCapacity asymptotic_capacity(const ChannelParams& params);

/// The dimensions carrying mass at large q:
/// { min[(T-n)^+, m, n, T], ..., min[m, n, T] }.
std::vector<unsigned> support_set(const ChannelParams& params);

struct ExactCapacity {
  double capacity_bits;
  double second_order_bits;  // i*(T-i*) log2 q - 1{n<=m}(T-i*) log2(q)/q + 1/q
};

/// Closed-form capacity for T > n + min(m, n) and q at least the regime
/// threshold; evaluates the exact sum, not the expansion.
ExactCapacity exact_capacity_large_T(const ChannelParams& params);

/// Error term of the derivative expansion at dimension k, in bits,
/// under the point-mass-at-i* input (valid for T > n + min(m, n)).
double epsilon_q(unsigned k, const ChannelParams& params);

/// Smallest prime power satisfying the two epsilon-based inequality
/// families; falls back to the asymptotic sufficient bound
/// (q^{n-m+1} >= 5 m^2 when m <= n, q >= nT otherwise) if the scan
/// exhausts its range.
std::uint64_t q0_sufficient(const ChannelParams& params);

/// Coding-vector rate R_cv = P(rank(G_k) = k) k (T-k) log2 q.
double coding_vector_rate(const ChannelParams& params, unsigned k);

/// Capacity minus R_cv at k = i*, capacity from the closed form when
/// T > n + min(m, n) and from the optimizer otherwise.
double cv_gap(const ChannelParams& params);

struct ErasureBounds {
  double lower_bits;
  double upper_bits;
};

/// mu1 (T - m) log2 q <= C_e <= (mu1 T - mu2) log2 q for m <= floor(T/2).
ErasureBounds erasure_bounds(const ChannelParams& params, const ErasureDist& edist);

}  // namespace subcap

#endif
