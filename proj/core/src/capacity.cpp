#include "subcap/capacity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "subcap/qcount.hpp"

namespace subcap {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();
const double kLog2E = 1.0 / std::log(2.0);

std::uint64_t ipow_checked(std::uint64_t base, unsigned exp, std::uint64_t limit) {
  std::uint64_t v = 1;
  for (unsigned i = 0; i < exp; ++i) {
    if (v > limit / base) throw std::invalid_argument("enumeration guard exceeded");
    v *= base;
  }
  return v;
}

/// Log-domain counting tables shared by every evaluation against one
/// parameter set. w[dx][dy] = psi(n,dy) [dx dy] q^{-n dx} is the
/// probability that an input of dimension dx produces an output of
/// dimension dy; it lives in [0, 1].
class MiEvaluator {
 public:
  explicit MiEvaluator(const ChannelParams& p) : n_(p.n), lq_(std::log2(double(p.q))) {
    p.validate();
    delta_ = p.delta();
    dymax_ = std::min(p.n, delta_);
    lg_T_.resize(dymax_ + 1);
    lpsi_.resize(dymax_ + 1);
    for (unsigned dy = 0; dy <= dymax_; ++dy) {
      lg_T_[dy] = gaussian(p.T, dy, p.q).log2;
      lpsi_[dy] = psi(p.n, dy, p.q).log2;
    }
    lgdx_.assign(delta_ + 1, {});
    lw_.assign(delta_ + 1, {});
    w_.assign(delta_ + 1, {});
    for (unsigned dx = 0; dx <= delta_; ++dx) {
      const unsigned top = std::min(n_, dx);
      lgdx_[dx].resize(top + 1);
      lw_[dx].resize(top + 1);
      w_[dx].resize(top + 1);
      for (unsigned dy = 0; dy <= top; ++dy) {
        lgdx_[dx][dy] = gaussian(dx, dy, p.q).log2;
        lw_[dx][dy] = lpsi_[dy] + lgdx_[dx][dy] - double(n_) * dx * lq_;
        w_[dx][dy] = std::exp2(lw_[dx][dy]);
      }
    }
  }

  unsigned dims() const { return delta_ + 1; }
  unsigned dymax() const { return dymax_; }
  double lq() const { return lq_; }

  double log_f(unsigned dy, std::span<const double> alpha) const {
    double hi = kNegInf;
    for (unsigned dx = dy; dx <= delta_; ++dx) {
      if (alpha[dx] <= 0) continue;
      const double t = lgdx_[dx][dy] - double(n_) * dx * lq_ + std::log2(alpha[dx]);
      if (t > hi) hi = t;
    }
    if (hi == kNegInf) return kNegInf;
    double s = 0;
    for (unsigned dx = dy; dx <= delta_; ++dx) {
      if (alpha[dx] <= 0) continue;
      s += std::exp2(lgdx_[dx][dy] - double(n_) * dx * lq_ + std::log2(alpha[dx]) - hi);
    }
    return hi + std::log2(s) - lg_T_[dy];
  }

  std::vector<double> log_f_all(std::span<const double> alpha) const {
    std::vector<double> lf(dymax_ + 1);
    for (unsigned dy = 0; dy <= dymax_; ++dy) lf[dy] = log_f(dy, alpha);
    return lf;
  }

  double mi(std::span<const double> alpha, const std::vector<double>& lf) const {
    double total = 0;
    for (unsigned dx = 0; dx <= delta_; ++dx) {
      if (alpha[dx] <= 0) continue;
      double inner = double(n_) * dx * lq_;
      for (unsigned dy = 0; dy <= std::min(n_, dx); ++dy) {
        if (w_[dx][dy] == 0 || lf[dy] == kNegInf) continue;  // x log x -> 0 limit
        inner += w_[dx][dy] * lf[dy];
      }
      total -= alpha[dx] * inner;
    }
    return total;
  }

  std::vector<double> grad(const std::vector<double>& lf) const {
    std::vector<double> g(delta_ + 1);
    for (unsigned k = 0; k <= delta_; ++k) {
      double acc = -double(n_) * k * lq_ - kLog2E;
      for (unsigned dy = 0; dy <= std::min(n_, k); ++dy) {
        if (w_[k][dy] == 0 || lf[dy] == kNegInf) continue;
        acc -= w_[k][dy] * lf[dy];
      }
      g[k] = acc;
    }
    return g;
  }

  /// Hessian d2 I / d alpha_k d alpha_j, restricted to index set "act".
  std::vector<std::vector<double>> hessian(const std::vector<unsigned>& act,
                                           const std::vector<double>& lf) const {
    const std::size_t s = act.size();
    std::vector<std::vector<double>> h(s, std::vector<double>(s, 0.0));
    for (std::size_t a = 0; a < s; ++a)
      for (std::size_t b = a; b < s; ++b) {
        const unsigned k = act[a], j = act[b];
        const unsigned top = std::min({n_, k, j});
        double acc = 0;
        for (unsigned dy = 0; dy <= top; ++dy) {
          if (lf[dy] == kNegInf) continue;
          acc += std::exp2(lw_[k][dy] + lw_[j][dy] - lpsi_[dy] - lg_T_[dy] - lf[dy]);
        }
        h[a][b] = h[b][a] = -kLog2E * acc;
      }
    return h;
  }

 private:
  unsigned n_, delta_, dymax_;
  double lq_;
  std::vector<double> lg_T_, lpsi_;
  std::vector<std::vector<double>> lgdx_, lw_, w_;
};

double kt_residual(std::span<const double> alpha, const std::vector<double>& g, double lambda,
                   double active_eps) {
  double r = 0;
  for (std::size_t k = 0; k < g.size(); ++k) {
    const double v = alpha[k] > active_eps ? std::abs(g[k] - lambda)
                                           : std::max(g[k] - lambda, 0.0);
    r = std::max(r, v);
  }
  return r;
}

/// Dense linear solve with partial pivoting; returns false if singular.
bool solve_linear(std::vector<std::vector<double>> a, std::vector<double> b,
                  std::vector<double>& x) {
  const std::size_t n = b.size();
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    for (std::size_t r = c + 1; r < n; ++r)
      if (std::abs(a[r][c]) > std::abs(a[piv][c])) piv = r;
    if (std::abs(a[piv][c]) < 1e-300) return false;
    std::swap(a[piv], a[c]);
    std::swap(b[piv], b[c]);
    for (std::size_t r = c + 1; r < n; ++r) {
      const double f = a[r][c] / a[c][c];
      if (f == 0) continue;
      for (std::size_t j = c; j < n; ++j) a[r][j] -= f * a[c][j];
      b[r] -= f * b[c];
    }
  }
  x.assign(n, 0.0);
  for (std::size_t r = n; r-- > 0;) {
    double s = b[r];
    for (std::size_t j = r + 1; j < n; ++j) s -= a[r][j] * x[j];
    x[r] = s / a[r][r];
  }
  return true;
}

}  // namespace

DimDist::DimDist(std::vector<double> alpha) : a_(std::move(alpha)) {
  if (a_.empty()) throw std::invalid_argument("dimension distribution must be nonempty");
  double sum = 0;
  for (double v : a_) {
    if (v < 0) throw std::invalid_argument("dimension distribution entries must be nonnegative");
    sum += v;
  }
  if (std::abs(sum - 1.0) > 1e-12)
    throw std::invalid_argument("dimension distribution must sum to 1");
}

DimDist DimDist::point_mass(unsigned dim, unsigned size) {
  std::vector<double> a(size, 0.0);
  a.at(dim) = 1.0;
  return DimDist(std::move(a));
}

DimDist DimDist::uniform(unsigned size) {
  return DimDist(std::vector<double>(size, 1.0 / size));
}

double log_f(unsigned d_y, std::span<const double> alpha, const ChannelParams& params) {
  MiEvaluator ev(params);
  if (d_y > ev.dymax()) throw std::invalid_argument("d_y exceeds min(n, T)");
  if (alpha.size() != ev.dims()) throw std::invalid_argument("alpha must have min(m,T)+1 entries");
  return ev.log_f(d_y, alpha);
}

double mutual_info(std::span<const double> alpha, const ChannelParams& params) {
  MiEvaluator ev(params);
  if (alpha.size() != ev.dims()) throw std::invalid_argument("alpha must have min(m,T)+1 entries");
  return ev.mi(alpha, ev.log_f_all(alpha));
}

std::vector<double> mutual_info_gradient(std::span<const double> alpha,
                                         const ChannelParams& params) {
  MiEvaluator ev(params);
  if (alpha.size() != ev.dims()) throw std::invalid_argument("alpha must have min(m,T)+1 entries");
  return ev.grad(ev.log_f_all(alpha));
}

std::vector<unsigned> numeric_support(std::span<const double> alpha, double threshold) {
  std::vector<unsigned> s;
  for (std::size_t k = 0; k < alpha.size(); ++k)
    if (alpha[k] > threshold) s.push_back(static_cast<unsigned>(k));
  return s;
}

CapacityResult optimize_capacity(const ChannelParams& params, double tol, int max_iterations) {
  if (tol <= 0) throw std::invalid_argument("tolerance must be positive");
  const MiEvaluator ev(params);
  const unsigned nv = ev.dims();
  constexpr double kActiveEps = 1e-12;

  std::vector<double> alpha(nv, 1.0 / nv);
  double eta = 0.5;

  CapacityResult best;
  best.kt_residual = std::numeric_limits<double>::infinity();
  best.alpha_star = alpha;

  auto record = [&](std::span<const double> a, double mi_val, double lambda, double resid,
                    int it) {
    if (resid < best.kt_residual) {
      best.capacity_bits = mi_val;
      best.alpha_star.assign(a.begin(), a.end());
      best.kt_lambda = lambda;
      best.kt_residual = resid;
      best.iterations = it;
    }
  };

  int it = 0;
  while (it < max_iterations) {
    ++it;
    const auto lf = ev.log_f_all(alpha);
    const double mi_val = ev.mi(alpha, lf);
    const auto g = ev.grad(lf);
    double lambda = 0;
    for (unsigned k = 0; k < nv; ++k) lambda += alpha[k] * g[k];
    const double resid = kt_residual(alpha, g, lambda, kActiveEps);
    record(alpha, mi_val, lambda, resid, it);
    if (resid < tol) break;

    // Newton polish on the active set once the iterate is close.
    if (resid < 1e-4) {
      std::vector<unsigned> act;
      for (unsigned k = 0; k < nv; ++k)
        if (alpha[k] > kActiveEps) act.push_back(k);
      const std::size_t s = act.size();
      auto h = ev.hessian(act, lf);
      // KKT system: [H -1; 1^T 0] [d; dl] = [lambda - g; 0]
      std::vector<std::vector<double>> mat(s + 1, std::vector<double>(s + 1, 0.0));
      std::vector<double> rhs(s + 1, 0.0);
      for (std::size_t a = 0; a < s; ++a) {
        for (std::size_t b = 0; b < s; ++b) mat[a][b] = h[a][b];
        mat[a][s] = -1.0;
        mat[s][a] = 1.0;
        rhs[a] = lambda - g[act[a]];
      }
      std::vector<double> step;
      if (solve_linear(mat, rhs, step)) {
        double t = 1.0;
        bool accepted = false;
        for (int bt = 0; bt < 30 && !accepted; ++bt, t *= 0.5) {
          std::vector<double> cand = alpha;
          bool feasible = true;
          for (std::size_t a = 0; a < s; ++a) {
            cand[act[a]] += t * step[a];
            if (cand[act[a]] <= 0) {
              feasible = false;
              break;
            }
          }
          if (!feasible) continue;
          double norm = 0;
          for (double v : cand) norm += v;
          for (double& v : cand) v /= norm;
          const auto lf2 = ev.log_f_all(cand);
          const auto g2 = ev.grad(lf2);
          double l2 = 0;
          for (unsigned k = 0; k < nv; ++k) l2 += cand[k] * g2[k];
          const double r2 = kt_residual(cand, g2, l2, kActiveEps);
          if (r2 < resid) {
            alpha = std::move(cand);
            accepted = true;
          }
        }
        if (accepted) continue;
      }
    }

    // Exponentiated-gradient ascent step with backtracking on I.
    bool stepped = false;
    for (int bt = 0; bt < 60; ++bt) {
      std::vector<double> lb(nv);
      double hi = kNegInf;
      for (unsigned k = 0; k < nv; ++k) {
        const double base = alpha[k] > 0 ? std::log2(alpha[k]) : kNegInf;
        double bump = eta * (g[k] - lambda);
        bump = std::clamp(bump, -500.0, 500.0);
        lb[k] = base + bump;
        hi = std::max(hi, lb[k]);
      }
      std::vector<double> cand(nv);
      double norm = 0;
      for (unsigned k = 0; k < nv; ++k) {
        cand[k] = lb[k] == kNegInf ? 0.0 : std::exp2(lb[k] - hi);
        norm += cand[k];
      }
      for (double& v : cand) v /= norm;
      const double mi_new = ev.mi(cand, ev.log_f_all(cand));
      if (mi_new >= mi_val - 1e-13) {
        alpha = std::move(cand);
        eta = std::min(eta * 1.3, 1e9);
        stepped = true;
        break;
      }
      eta *= 0.5;
    }
    if (!stepped) break;  // step size exhausted; return best certificate
  }

  double norm = 0;
  for (double v : best.alpha_star) norm += v;
  for (double& v : best.alpha_star) v /= norm;
  best.converged = best.kt_residual < tol;
  return best;
}

std::uint64_t matrix_index(const Matrix& x) {
  const std::uint64_t q = x.field().q();
  std::uint64_t idx = 0, mult = 1;
  for (unsigned r = 0; r < x.rows(); ++r)
    for (unsigned c = 0; c < x.cols(); ++c) {
      idx += mult * x(r, c);
      mult *= q;
    }
  return idx;
}

Matrix matrix_from_index(std::uint64_t index, unsigned rows, unsigned cols, const Field& f) {
  Matrix m(f, rows, cols);
  const std::uint64_t q = f.q();
  for (unsigned r = 0; r < rows; ++r)
    for (unsigned c = 0; c < cols; ++c) {
      m(r, c) = static_cast<Elem>(index % q);
      index /= q;
    }
  return m;
}

double brute_mutual_info(std::span<const double> px, const ChannelParams& params) {
  const Field f = params.field();
  const std::uint64_t q = params.q;
  const double lq = std::log2(double(q));
  const std::uint64_t nx = ipow_checked(q, params.m * params.T, 1ull << 20);
  const std::uint64_t ny = ipow_checked(q, params.n * params.T, 1ull << 20);
  if (px.size() != nx)
    throw std::invalid_argument("input assignment must cover all q^{mT} matrices");
  double total_mass = 0;
  for (double v : px) {
    if (v < 0) throw std::invalid_argument("input probabilities must be nonnegative");
    total_mass += v;
  }
  if (std::abs(total_mass - 1.0) > 1e-9)
    throw std::invalid_argument("input probabilities must sum to 1");

  std::vector<std::uint64_t> pow_q_t(params.n + 1, 1);
  for (unsigned i = 1; i <= params.n; ++i)
    pow_q_t[i] = pow_q_t[i - 1] * ipow_checked(q, params.T, 1ull << 20);

  // Packed codes of every vector in the row span of x.
  auto span_codes = [&](const Matrix& x) {
    const RrefResult rr = rref(x);
    std::vector<std::uint64_t> codes;
    codes.reserve(std::size_t(1) << rr.rank);
    std::vector<Elem> combo(rr.rank, 0);
    for (;;) {
      std::uint64_t code = 0, mult = 1;
      for (unsigned c = 0; c < params.T; ++c) {
        Elem acc = 0;
        for (unsigned i = 0; i < rr.rank; ++i)
          acc = f.add(acc, f.mul(combo[i], rr.mat(i, c)));
        code += mult * acc;
        mult *= q;
      }
      codes.push_back(code);
      bool wrapped = true;
      for (std::size_t pos = combo.size(); pos-- > 0;) {
        if (++combo[pos] < q) {
          wrapped = false;
          break;
        }
        combo[pos] = 0;
      }
      if (wrapped) break;
    }
    return std::make_pair(std::move(codes), rr.rank);
  };

  // Every y whose rows lie in span(x), as indices into the output space.
  auto for_each_y = [&](const std::vector<std::uint64_t>& codes, auto&& fn) {
    std::vector<std::size_t> pick(params.n, 0);
    for (;;) {
      std::uint64_t yidx = 0;
      for (unsigned i = 0; i < params.n; ++i) yidx += codes[pick[i]] * pow_q_t[i];
      fn(yidx);
      bool wrapped = true;
      for (std::size_t pos = pick.size(); pos-- > 0;) {
        if (++pick[pos] < codes.size()) {
          wrapped = false;
          break;
        }
        pick[pos] = 0;
      }
      if (wrapped) break;
    }
  };

  std::vector<double> py(ny, 0.0);
  for (std::uint64_t xi = 0; xi < nx; ++xi) {
    if (px[xi] <= 0) continue;
    const auto [codes, r] = span_codes(matrix_from_index(xi, params.m, params.T, f));
    const double pyx = std::exp2(-double(params.n) * r * lq);
    for_each_y(codes, [&](std::uint64_t yidx) { py[yidx] += px[xi] * pyx; });
  }

  double info = 0;
  for (std::uint64_t xi = 0; xi < nx; ++xi) {
    if (px[xi] <= 0) continue;
    const auto [codes, r] = span_codes(matrix_from_index(xi, params.m, params.T, f));
    const double lpyx = -double(params.n) * r * lq;
    const double pyx = std::exp2(lpyx);
    double acc = 0;
    for_each_y(codes, [&](std::uint64_t yidx) { acc += lpyx - std::log2(py[yidx]); });
    info += px[xi] * pyx * acc;
  }
  return info;
}

AsymptoticCapacity asymptotic_capacity(const ChannelParams& params) {
  params.validate();
  const unsigned i = params.i_star();
  return {double(i) * (params.T - i) * std::log2(double(params.q)), i};
}

std::vector<unsigned> support_set(const ChannelParams& params) {
  params.validate();
  const unsigned upper = std::min({params.m, params.n, params.T});
  const unsigned t_minus_n = params.T > params.n ? params.T - params.n : 0;
  const unsigned lower = std::min({t_minus_n, params.m, params.n, params.T});
  std::vector<unsigned> s;
  for (unsigned i = lower; i <= upper; ++i) s.push_back(i);
  return s;
}

ExactCapacity exact_capacity_large_T(const ChannelParams& params) {
  params.validate();
  const unsigned i_star = std::min(params.m, params.n);
  if (params.T <= params.n + i_star)
    throw std::invalid_argument("closed-form capacity requires T > n + min(m, n)");
  const double lq = std::log2(double(params.q));
  double c = 0;
  for (unsigned l = 0; l <= i_star; ++l) {
    const double lw = psi(params.n, l, params.q).log2 + gaussian(i_star, l, params.q).log2 -
                      double(params.n) * i_star * lq;
    c += std::exp2(lw) * (gaussian(params.T, l, params.q).log2 - gaussian(i_star, l, params.q).log2);
  }
  double second = double(i_star) * (params.T - i_star) * lq + 1.0 / double(params.q);
  if (params.n <= params.m) second -= double(params.T - i_star) * lq / double(params.q);
  return {c, second};
}

double epsilon_q(unsigned k, const ChannelParams& params) {
  params.validate();
  const unsigned i_star = std::min(params.m, params.n);
  if (params.T <= params.n + i_star)
    throw std::invalid_argument("epsilon_q requires T > n + min(m, n)");
  const double lq = std::log2(double(params.q));
  const unsigned r = std::min(params.n, k);
  double eps = -double(r) * (params.T - i_star) * lq;
  for (unsigned dy = 0; dy <= r; ++dy) {
    const double lw = psi(params.n, dy, params.q).log2 + gaussian(k, dy, params.q).log2 -
                      double(params.n) * k * lq;
    eps += std::exp2(lw) *
           (gaussian(params.T, dy, params.q).log2 - gaussian(i_star, dy, params.q).log2);
  }
  return eps;
}

std::uint64_t q0_sufficient(const ChannelParams& params) {
  params.validate();
  const unsigned i_star = std::min(params.m, params.n);
  if (params.T <= params.n + i_star)
    throw std::invalid_argument("q0 search requires T > n + min(m, n)");
  for (std::uint64_t cand = 2; cand <= (1ull << 20); ++cand) {
    if (!factor_prime_power(cand)) continue;
    const ChannelParams at{cand, params.T, params.m, params.n};
    const double lq = std::log2(double(cand));
    std::vector<double> eps(params.m + 1);
    for (unsigned l = 0; l <= params.m; ++l) eps[l] = epsilon_q(l, at);
    bool ok = true;
    for (unsigned l = 0; ok && l < i_star; ++l)
      if (eps[l] - eps[i_star] >
          double(params.T - params.n - i_star) * (i_star - l) * lq + 1e-12)
        ok = false;
    for (unsigned l = i_star + 1; ok && l <= params.m; ++l)
      if (eps[l] - eps[i_star] > double(i_star) * (l - i_star) * lq + 1e-12) ok = false;
    if (ok) return cand;
  }
  // Asymptotic sufficient bound.
  if (params.m <= params.n) {
    const double target = 5.0 * params.m * params.m;
    for (std::uint64_t cand = 2;; ++cand) {
      if (!factor_prime_power(cand)) continue;
      if (std::pow(double(cand), double(params.n - params.m + 1)) >= target) return cand;
    }
  }
  for (std::uint64_t cand = std::uint64_t(params.n) * params.T;; ++cand)
    if (factor_prime_power(cand)) return cand;
}

double coding_vector_rate(const ChannelParams& params, unsigned k) {
  params.validate();
  if (k == 0 || k > params.m)
    throw std::invalid_argument("coding-vector generation size must satisfy 0 < k <= m");
  const double lq = std::log2(double(params.q));
  double log_prob = 0;
  for (unsigned j = 1; j <= k; ++j) log_prob += std::log1p(-std::exp2(-double(j) * lq));
  return std::exp(log_prob) * double(k) * (params.T - k) * lq;
}

double cv_gap(const ChannelParams& params) {
  params.validate();
  const unsigned i_star = params.i_star();
  if (i_star == 0) throw std::invalid_argument("cv_gap undefined for i* = 0");
  double capacity;
  if (params.T > params.n + std::min(params.m, params.n)) {
    capacity = exact_capacity_large_T(params).capacity_bits;
  } else {
    const CapacityResult res = optimize_capacity(params);
    if (!res.converged) throw std::runtime_error("capacity optimization did not converge");
    capacity = res.capacity_bits;
  }
  return capacity - coding_vector_rate(params, i_star);
}

ErasureBounds erasure_bounds(const ChannelParams& params, const ErasureDist& edist) {
  params.validate();
  if (params.m > params.T / 2)
    throw std::invalid_argument("erasure bounds require m <= floor(T/2)");
  if (edist.max_packets() != params.m)
    throw std::invalid_argument("erasure distribution must range over 0..m");
  const double lq = std::log2(double(params.q));
  const double mu1 = edist.mean();
  if (mu1 == 0) return {0.0, 0.0};
  const double mu2 = edist.second_moment();
  return {mu1 * double(params.T - params.m) * lq, (mu1 * params.T - mu2) * lq};
}

}  // namespace subcap
