#include "subcap/mac_region.hpp"

#include <gmpxx.h>

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

namespace subcap {

namespace {

long long cross(const RatePoint& o, const RatePoint& a, const RatePoint& b) {
  return (a.r1 - o.r1) * (b.r2 - o.r2) - (a.r2 - o.r2) * (b.r1 - o.r1);
}

}  // namespace

std::vector<RatePoint> RateRegion::corner_points() const {
  std::vector<RatePoint> p;
  p.reserve(corners.size());
  for (const auto& c : corners) p.push_back(c.pt);
  return p;
}

std::vector<RegionCorner> hull_corners(std::vector<RegionCorner> points) {
  if (points.empty()) return {};
  std::sort(points.begin(), points.end(), [](const RegionCorner& a, const RegionCorner& b) {
    if (a.pt.r1 != b.pt.r1) return a.pt.r1 < b.pt.r1;
    return a.pt.r2 > b.pt.r2;
  });
  // Keep only the highest point at each R1.
  std::vector<RegionCorner> filtered;
  for (const auto& p : points)
    if (filtered.empty() || filtered.back().pt.r1 != p.pt.r1) filtered.push_back(p);

  if (filtered.size() == 1) return filtered;

  // Upper hull, left to right; collinear middle points dropped.
  std::vector<RegionCorner> chain;
  for (const auto& p : filtered) {
    while (chain.size() >= 2 &&
           cross(chain[chain.size() - 2].pt, chain.back().pt, p.pt) >= 0)
      chain.pop_back();
    chain.push_back(p);
  }
  // Trailing points dominated in R2 by an earlier corner are not part of
  // the northeast boundary unless they extend R1 with R2 >= 0; the upper
  // hull already guarantees decreasing R2, so nothing else to trim.
  // Degenerate all-origin cloud collapses to a single (0,0).
  if (chain.size() > 1 && chain.front().pt.r1 == 0 && chain.front().pt.r2 == 0)
    chain.erase(chain.begin());
  return chain;
}

RateRegion rate_region_star(const MacParams& params) {
  params.validate();
  RateRegion out;
  out.regime_ok = params.T > 2 * (params.m1 + params.m2);
  const unsigned b1 = std::min(params.n, params.m1);
  const unsigned b2 = std::min(params.n, params.m2);
  const unsigned bsum = std::min(params.n, params.m1 + params.m2);
  std::vector<RegionCorner> pts;
  for (unsigned d1 = 0; d1 <= b1; ++d1)
    for (unsigned d2 = 0; d2 <= b2; ++d2) {
      if (d1 + d2 > bsum || d1 + d2 > params.T) continue;
      const long long rem = (long long)params.T - d1 - d2;
      pts.push_back({{d1 * rem, d2 * rem}, d1, d2});
    }
  out.corners = hull_corners(std::move(pts));
  return out;
}

unsigned corner_count(const MacParams& params) {
  params.validate();
  const unsigned a =
      std::min(params.m1, params.n > params.m2 ? params.n - params.m2 : 0u);
  const unsigned b =
      std::min(params.m2, params.n > params.m1 ? params.n - params.m1 : 0u);
  return a + b + 2 - (params.n >= params.m1 + params.m2 ? 1 : 0);
}

RateRegion coop_bound(const MacParams& params) {
  params.validate();
  RateRegion out;
  out.regime_ok = params.T >= 2 * (params.m1 + params.m2);
  const unsigned k = std::min(params.m1 + params.m2, params.n);
  const long long cap = (long long)k * ((long long)params.T - k);
  if (cap <= 0) {
    out.corners = {{{0, 0}, 0, 0}};
    return out;
  }
  out.corners = {{{0, cap}, 0, k}, {{cap, 0}, k, 0}};
  return out;
}

RateRegion coloring_bound(const MacParams& params) {
  params.validate();
  RateRegion out;
  out.regime_ok = params.T >= 2 * (params.m1 + params.m2);
  std::vector<RegionCorner> pts;
  for (unsigned d1 = 0; d1 <= params.m1; ++d1)
    for (unsigned d2 = 0; d2 <= params.m2; ++d2) {
      if (d1 + d2 > params.T) continue;
      const long long rem = (long long)params.T - d1 - d2;
      pts.push_back({{d1 * rem, d2 * rem}, d1, d2});
    }
  out.corners = hull_corners(std::move(pts));
  return out;
}

namespace {

using RatQ = std::pair<mpq_class, mpq_class>;

std::vector<RatQ> region_polygon(const RateRegion& r) {
  std::vector<RatQ> poly;
  poly.emplace_back(0, 0);
  for (const auto& c : r.corners)
    if (!(c.pt.r1 == 0 && c.pt.r2 == 0))
      poly.emplace_back(mpq_class(static_cast<long>(c.pt.r1)),
                        mpq_class(static_cast<long>(c.pt.r2)));
  return poly;
}

mpq_class cross_q(const RatQ& o, const RatQ& a, const RatQ& b) {
  return (a.first - o.first) * (b.second - o.second) -
         (a.second - o.second) * (b.first - o.first);
}

// Clockwise polygons; the interior lies to the right of each edge.
std::vector<RatQ> clip_halfplane(const std::vector<RatQ>& poly, const RatQ& p, const RatQ& q) {
  auto inside = [&](const RatQ& z) { return cross_q(p, q, z) <= 0; };
  auto intersect = [&](const RatQ& s, const RatQ& e) {
    // Line p->q hit by segment s->e.
    const mpq_class num = cross_q(p, q, s);
    const mpq_class den = num - cross_q(p, q, e);
    const mpq_class t = num / den;
    return RatQ{mpq_class(s.first + t * (e.first - s.first)),
                mpq_class(s.second + t * (e.second - s.second))};
  };
  std::vector<RatQ> out;
  for (std::size_t i = 0; i < poly.size(); ++i) {
    const RatQ& s = poly[i];
    const RatQ& e = poly[(i + 1) % poly.size()];
    const bool si = inside(s), ei = inside(e);
    if (ei) {
      if (!si) out.push_back(intersect(s, e));
      out.push_back(e);
    } else if (si) {
      out.push_back(intersect(s, e));
    }
  }
  return out;
}

}  // namespace

std::vector<RatePoint> region_intersection_corners(const RateRegion& a, const RateRegion& b) {
  std::vector<RatQ> poly = region_polygon(a);
  const std::vector<RatQ> clip = region_polygon(b);
  if (poly.size() < 3 || clip.size() < 3) {
    // One of the regions is degenerate; the intersection is too.
    return {{0, 0}};
  }
  for (std::size_t i = 0; i < clip.size() && !poly.empty(); ++i)
    poly = clip_halfplane(poly, clip[i], clip[(i + 1) % clip.size()]);
  if (poly.empty()) return {{0, 0}};

  // Drop duplicate and collinear vertices.
  std::vector<RatQ> dedup;
  for (const auto& v : poly)
    if (dedup.empty() || !(dedup.back() == v)) dedup.push_back(v);
  while (dedup.size() > 1 && dedup.front() == dedup.back()) dedup.pop_back();
  std::vector<RatQ> clean;
  const std::size_t nn = dedup.size();
  for (std::size_t i = 0; i < nn; ++i) {
    const RatQ& prev = dedup[(i + nn - 1) % nn];
    const RatQ& cur = dedup[i];
    const RatQ& next = dedup[(i + 1) % nn];
    if (nn >= 3 && cross_q(prev, cur, next) == 0) continue;
    clean.push_back(cur);
  }

  std::vector<RatePoint> corners;
  for (const auto& v : clean) {
    if (v.first == 0 && v.second == 0) continue;
    mpq_class x = v.first, y = v.second;
    x.canonicalize();
    y.canonicalize();
    if (x.get_den() != 1 || y.get_den() != 1)
      throw std::logic_error("region intersection produced a non-integer vertex");
    corners.push_back({x.get_num().get_si(), y.get_num().get_si()});
  }
  std::sort(corners.begin(), corners.end(), [](const RatePoint& l, const RatePoint& r) {
    if (l.r1 != r.r1) return l.r1 < r.r1;
    return l.r2 > r.r2;
  });
  if (corners.empty()) corners.push_back({0, 0});
  return corners;
}

ColorTable build_color_table(const std::vector<Subspace>& c1, const std::vector<Subspace>& c2) {
  if (c1.empty() || c2.empty()) throw std::invalid_argument("color table needs nonempty code-books");
  if (std::size_t(c1.size()) * c2.size() > (std::size_t(1) << 22))
    throw std::invalid_argument("color table guard exceeded (more than 2^22 cells)");
  const unsigned T = c1.front().ambient();
  for (const auto& s : c1)
    if (s.ambient() != T) throw std::invalid_argument("code-book ambient dimensions differ");
  for (const auto& s : c2)
    if (s.ambient() != T) throw std::invalid_argument("code-book ambient dimensions differ");

  ColorTable table;
  table.n_rows = static_cast<unsigned>(c1.size());
  table.n_cols = static_cast<unsigned>(c2.size());
  table.color.resize(std::size_t(table.n_rows) * table.n_cols);

  std::map<Subspace, std::uint32_t> ids;
  for (unsigned i = 0; i < table.n_rows; ++i)
    for (unsigned j = 0; j < table.n_cols; ++j) {
      const Subspace s = sum(c1[i], c2[j]);
      const auto [it, inserted] = ids.emplace(s, static_cast<std::uint32_t>(ids.size()));
      table.color[std::size_t(i) * table.n_cols + j] = it->second;
    }
  table.distinct_colors = static_cast<std::uint32_t>(ids.size());

  table.row_distinct.resize(table.n_rows);
  table.col_distinct.assign(table.n_cols, 0);
  std::vector<std::set<std::uint32_t>> col_sets(table.n_cols);
  for (unsigned i = 0; i < table.n_rows; ++i) {
    std::set<std::uint32_t> row_set;
    for (unsigned j = 0; j < table.n_cols; ++j) {
      const std::uint32_t c = table.at(i, j);
      row_set.insert(c);
      col_sets[j].insert(c);
    }
    table.row_distinct[i] = static_cast<std::uint32_t>(row_set.size());
    table.max_row_distinct = std::max(table.max_row_distinct, table.row_distinct[i]);
  }
  for (unsigned j = 0; j < table.n_cols; ++j) {
    table.col_distinct[j] = static_cast<std::uint32_t>(col_sets[j].size());
    table.max_col_distinct = std::max(table.max_col_distinct, table.col_distinct[j]);
  }
  return table;
}

double achievability_sim(unsigned d1, unsigned d2, const MacParams& params, unsigned trials,
                         Rng& rng) {
  params.validate();
  const Field f = params.field();
  if (d1 > params.m1 || d2 > params.m2)
    throw std::invalid_argument("codeword dimensions must satisfy d_i <= m_i");
  if (d1 + d2 > std::min(params.n, params.T))
    throw std::invalid_argument("decoding requires d1 + d2 <= min(n, T)");
  if (trials == 0) throw std::invalid_argument("trial count must be positive");

  const unsigned dsum = d1 + d2;
  const unsigned payload = params.T - dsum;
  unsigned successes = 0;
  for (unsigned t = 0; t < trials; ++t) {
    const Matrix u1 = random_matrix(d1, payload, f, rng);
    const Matrix u2 = random_matrix(d2, payload, f, rng);

    Matrix x1(f, params.m1, params.T);
    for (unsigned i = 0; i < d1; ++i) {
      x1(i, i) = 1;
      for (unsigned c = 0; c < payload; ++c) x1(i, dsum + c) = u1(i, c);
    }
    Matrix x2(f, params.m2, params.T);
    for (unsigned i = 0; i < d2; ++i) {
      x2(i, d1 + i) = 1;
      for (unsigned c = 0; c < payload; ++c) x2(i, dsum + c) = u2(i, c);
    }

    const Matrix y = mac_channel_step(x1, x2, params, rng);
    if (dsum == 0) {
      ++successes;  // empty message, nothing to decode
      continue;
    }

    // Reduce [H | Z] where H = first d1+d2 columns of y.
    const RrefResult rr = rref(y);
    bool full_rank = rr.rank >= dsum;
    for (unsigned i = 0; full_rank && i < dsum; ++i)
      if (i >= rr.pivot_cols.size() || rr.pivot_cols[i] != i) full_rank = false;
    if (!full_rank) continue;

    bool match = true;
    for (unsigned i = 0; match && i < d1; ++i)
      for (unsigned c = 0; match && c < payload; ++c)
        if (rr.mat(i, dsum + c) != u1(i, c)) match = false;
    for (unsigned i = 0; match && i < d2; ++i)
      for (unsigned c = 0; match && c < payload; ++c)
        if (rr.mat(d1 + i, dsum + c) != u2(i, c)) match = false;
    if (match) ++successes;
  }
  return double(successes) / trials;
}

}  // namespace subcap
