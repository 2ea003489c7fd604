#ifndef SUBCAP_MAC_REGION_HPP
#define SUBCAP_MAC_REGION_HPP

#include <cstdint>
#include <vector>

#include "subcap/channel.hpp"
#include "subcap/subspace.hpp"

namespace subcap {

/// A rate pair stored as integer coefficients of log2 q bits/symbol.
struct RatePoint {
  long long r1 = 0;
  long long r2 = 0;
  friend bool operator==(const RatePoint&, const RatePoint&) = default;
};

struct RegionCorner {
  RatePoint pt;
  unsigned d1 = 0, d2 = 0;  // the (d1, d2) pair that produced this corner
};

/// A down-closed convex rate region: the hull of the stored corners and
/// their axis projections. Corners are sorted by R1 ascending with
/// strictly decreasing boundary slopes (collinear points removed), so
/// two regions are equal iff their corner lists are.
struct RateRegion {
  std::vector<RegionCorner> corners;
  bool regime_ok = true;

  std::vector<RatePoint> corner_points() const;
};

/// Exact hull canonicalization of a point cloud: the northeast boundary
/// chain, computed with integer cross products.
std::vector<RegionCorner> hull_corners(std::vector<RegionCorner> points);

/// The two-source rate region: hull of R(d1, d2) over
/// D* = { 0 <= d_i <= min(n, m_i), d1 + d2 <= min(n, m1 + m2) } with
/// R_i = d_i (T - d1 - d2). regime_ok flags T/2 > m1 + m2.
RateRegion rate_region_star(const MacParams& params);

/// Closed-form number of corners of rate_region_star, origin excluded:
/// min[m1, (n-m2)^+] + min[m2, (n-m1)^+] + 2 - 1{n >= m1+m2}.
unsigned corner_count(const MacParams& params);

/// Super-source bound R1 + R2 <= k (T - k) log2 q, k = min(m1+m2, n).
/// regime_ok flags T/2 >= m1 + m2.
RateRegion coop_bound(const MacParams& params);

/// Distinguishable-pair bound: hull of R(d1, d2) over the full grid
/// {0..m1} x {0..m2}. regime_ok flags T >= 2 (m1 + m2), the regime its
/// derivation uses.
RateRegion coloring_bound(const MacParams& params);

/// Exact polytope intersection of two regions; returns the canonical
/// corner list. All intersection vertices must land on integer points
/// (they do whenever the regions come from the bounds above); a
/// non-integer vertex throws.
std::vector<RatePoint> region_intersection_corners(const RateRegion& a, const RateRegion& b);

/// Cell (i, j) is colored by the canonical subspace c1[i] + c2[j]; two
/// cells share a color iff their sums coincide, which is exactly when
/// the receiver cannot distinguish them.
struct ColorTable {
  unsigned n_rows = 0, n_cols = 0;
  std::vector<std::uint32_t> color;  // row-major color ids
  std::uint32_t distinct_colors = 0;
  std::vector<std::uint32_t> row_distinct, col_distinct;
  std::uint32_t max_row_distinct = 0, max_col_distinct = 0;

  std::uint32_t at(unsigned i, unsigned j) const { return color[std::size_t(i) * n_cols + j]; }
};

/// Builds the coloring table; guarded to 2^22 cells.
ColorTable build_color_table(const std::vector<Subspace>& c1, const std::vector<Subspace>& c2);

/// Monte-Carlo success rate of the corner-point scheme: identity-block
/// codewords carrying uniform payloads U1, U2, decoded by solving
/// [H1 H2] [V1; V2] = Z from the received block structure. A trial
/// succeeds iff [H1 H2] has full column rank and the recovered payloads
/// match.
double achievability_sim(unsigned d1, unsigned d2, const MacParams& params, unsigned trials,
                         Rng& rng);

}  // namespace subcap

#endif
