// subcap: capacities, rate regions, and oracles for the non-coherent
// random linear network coding channel. Every subcommand emits JSON or
// CSV with an embedded run manifest; identical manifests produce
// byte-identical output.

#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <future>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "subcap/capacity.hpp"
#include "subcap/channel.hpp"
#include "subcap/mac_region.hpp"
#include "subcap/qcount.hpp"
#include "subcap/subspace.hpp"

using json = nlohmann::ordered_json;
using namespace subcap;

namespace {

constexpr std::uint64_t kDefaultSeed = 0xC0FFEE;  // documented fixed default

std::string iso_timestamp() {
  std::time_t t;
  if (const char* epoch = std::getenv("SOURCE_DATE_EPOCH")) {
    t = static_cast<std::time_t>(std::strtoll(epoch, nullptr, 10));
  } else {
    t = std::time(nullptr);
  }
  char buf[32];
  std::tm tm_utc{};
  gmtime_r(&t, &tm_utc);
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm_utc);
  return buf;
}

json make_manifest(const std::string& command, json params, std::uint64_t seed) {
  json m;
  m["command"] = command;
  m["params"] = std::move(params);
  m["seed"] = seed;
  m["version"] = SUBCAP_VERSION;
  m["timestamp"] = iso_timestamp();
  return m;
}

void write_output(const std::string& path, const std::string& content) {
  if (path.empty()) {
    std::cout << content;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::invalid_argument("cannot open output file: " + path);
  out << content;
}

void emit_json(const std::string& path, const json& doc) {
  write_output(path, doc.dump(2) + "\n");
}

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::vector<std::uint64_t> parse_qlist(const std::string& text) {
  std::vector<std::uint64_t> out;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (tok.empty()) continue;
    out.push_back(std::stoull(tok));
  }
  if (out.empty()) throw std::invalid_argument("empty q list");
  return out;
}

ErasureDist parse_erasure_dist(const std::string& text, unsigned m) {
  std::vector<double> p(m + 1, 0.0);
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    const auto colon = tok.find(':');
    if (colon == std::string::npos)
      throw std::invalid_argument("erasure dist entries look like value:prob");
    const unsigned long v = std::stoul(tok.substr(0, colon));
    if (v > m) throw std::invalid_argument("erasure dist value exceeds m");
    p[v] += std::stod(tok.substr(colon + 1));
  }
  return ErasureDist(std::move(p));
}

Matrix read_matrix_text(std::istream& in) {
  std::uint64_t q;
  unsigned T, rows;
  if (!(in >> q >> T >> rows)) throw std::invalid_argument("matrix header must be: q T rows");
  const Field f = Field::of_order(q);
  Matrix m(f, rows, T);
  for (unsigned r = 0; r < rows; ++r)
    for (unsigned c = 0; c < T; ++c) {
      long long v;
      if (!(in >> v)) throw std::invalid_argument("matrix body ended early");
      if (v < 0 || static_cast<std::uint64_t>(v) >= q)
        throw std::invalid_argument("matrix entry out of field range");
      m(r, c) = static_cast<Elem>(v);
    }
  return m;
}

std::string matrix_text(const Matrix& m) {
  std::ostringstream out;
  out << m.field().q() << ' ' << m.cols() << ' ' << m.rows() << '\n';
  for (unsigned r = 0; r < m.rows(); ++r) {
    for (unsigned c = 0; c < m.cols(); ++c) out << (c ? " " : "") << m(r, c);
    out << '\n';
  }
  return out.str();
}

unsigned thread_count() {
  if (const char* env = std::getenv("SUBCAP_THREADS")) {
    const long n = std::strtol(env, nullptr, 10);
    if (n >= 1) return static_cast<unsigned>(n);
  }
  return 1;
}

struct NonConvergence : std::runtime_error {
  using std::runtime_error::runtime_error;
};

CapacityResult optimize_or_throw(const ChannelParams& p, double tol) {
  CapacityResult res = optimize_capacity(p, tol);
  if (!res.converged)
    throw NonConvergence("optimizer did not converge: kt_residual=" + fmt17(res.kt_residual));
  return res;
}

// ---------------------------------------------------------------------------
// capacity

int run_capacity(std::uint64_t q, unsigned T, unsigned m, unsigned n, double tol,
                 const std::string& method, const std::string& out) {
  const ChannelParams p{q, T, m, n};
  json params = {{"q", q}, {"T", T}, {"m", m}, {"n", n}, {"tol", tol}, {"method", method}};
  json doc;
  doc["manifest"] = make_manifest("capacity", params, kDefaultSeed);
  doc["method"] = method;
  const double lq = std::log2(double(q));

  if (method == "optimize") {
    const CapacityResult res = optimize_or_throw(p, tol);
    doc["capacity_bits"] = res.capacity_bits;
    doc["capacity_per_log2q"] = res.capacity_bits / lq;
    doc["alpha_star"] = res.alpha_star;
    doc["kt_lambda"] = res.kt_lambda;
    doc["kt_residual"] = res.kt_residual;
    doc["iterations"] = res.iterations;
    doc["converged"] = res.converged;
    doc["support"] = numeric_support(res.alpha_star);
  } else if (method == "exactT") {
    const ExactCapacity exact = exact_capacity_large_T(p);
    std::vector<double> alpha(p.delta() + 1, 0.0);
    alpha[std::min(m, n)] = 1.0;
    doc["capacity_bits"] = exact.capacity_bits;
    doc["capacity_per_log2q"] = exact.capacity_bits / lq;
    doc["alpha_star"] = alpha;
    doc["kt_lambda"] = nullptr;
    doc["kt_residual"] = nullptr;
    doc["second_order_bits"] = exact.second_order_bits;
    doc["support"] = support_set(p);
  } else if (method == "asymptotic") {
    const auto asym = asymptotic_capacity(p);
    doc["capacity_bits"] = asym.bits;
    doc["capacity_per_log2q"] = asym.bits / lq;
    doc["alpha_star"] = nullptr;
    doc["kt_lambda"] = nullptr;
    doc["kt_residual"] = nullptr;
    doc["i_star"] = asym.i_star;
    doc["support"] = support_set(p);
  } else {
    throw std::invalid_argument("method must be optimize, exactT, or asymptotic");
  }
  emit_json(out, doc);
  return 0;
}

// ---------------------------------------------------------------------------
// sweep: capacity trend across field orders

int run_sweep(unsigned m, unsigned n, unsigned T, const std::string& qlist, double tol,
              const std::string& out) {
  const auto qs = parse_qlist(qlist);
  json params = {{"m", m}, {"n", n}, {"T", T}, {"qlist", qlist}, {"tol", tol}};
  const json manifest = make_manifest("sweep", params, kDefaultSeed);

  std::vector<double> per(qs.size());
  const unsigned workers = std::min<unsigned>(thread_count(), qs.size());
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= qs.size()) return;
      const ChannelParams p{qs[i], T, m, n};
      per[i] = optimize_or_throw(p, tol).capacity_bits / std::log2(double(qs[i]));
    }
  };
  std::vector<std::future<void>> futs;
  for (unsigned w = 1; w < workers; ++w) futs.push_back(std::async(std::launch::async, work));
  work();
  for (auto& f : futs) f.get();

  const ChannelParams ref{qs[0], T, m, n};
  const unsigned i_star = ref.i_star();
  std::ostringstream csv;
  csv << "# manifest: " << manifest.dump() << "\n";
  csv << "q,capacity_per_log2q,asymptote\n";
  for (std::size_t i = 0; i < qs.size(); ++i)
    csv << qs[i] << ',' << fmt17(per[i]) << ',' << i_star * (T - i_star) << "\n";
  write_output(out, csv.str());
  return 0;
}

// ---------------------------------------------------------------------------
// support

int run_support(std::uint64_t q, unsigned T, unsigned m, unsigned n, bool verify,
                double threshold, bool find_min_q, double tol, const std::string& out) {
  const ChannelParams p{q, T, m, n};
  json params = {{"q", q},           {"T", T},
                 {"m", m},           {"n", n},
                 {"verify", verify}, {"threshold", threshold},
                 {"find_min_q", find_min_q}, {"tol", tol}};
  json doc;
  doc["manifest"] = make_manifest("support", params, kDefaultSeed);
  const auto theory = support_set(p);
  doc["support"] = theory;
  if (verify || find_min_q) {
    const CapacityResult res = optimize_or_throw(p, tol);
    const auto numeric = numeric_support(res.alpha_star, threshold);
    doc["numeric_support"] = numeric;
    doc["matches"] = numeric == theory;
  }
  if (find_min_q) {
    // Smallest tested prime power whose numerical support already equals
    // the predicted set; an empirical observation, not a claim about q0.
    json found = nullptr;
    for (std::uint64_t cand = 2; cand <= q; ++cand) {
      if (!factor_prime_power(cand)) continue;
      const ChannelParams at{cand, T, m, n};
      const CapacityResult res = optimize_or_throw(at, tol);
      if (numeric_support(res.alpha_star, threshold) == support_set(at)) {
        found = cand;
        break;
      }
    }
    doc["empirical_min_q"] = found;
  }
  emit_json(out, doc);
  return 0;
}

// ---------------------------------------------------------------------------
// region

int run_region(std::uint64_t q, unsigned T, unsigned n, unsigned m1, unsigned m2, bool csv,
               const std::string& out) {
  const MacParams p{q, T, n, m1, m2};
  json params = {{"q", q}, {"T", T}, {"n", n}, {"m1", m1}, {"m2", m2}, {"csv", csv}};
  const json manifest = make_manifest("region", params, kDefaultSeed);
  const RateRegion region = rate_region_star(p);

  if (csv) {
    std::ostringstream body;
    body << "# manifest: " << manifest.dump() << "\n";
    body << "R1_coeff,R2_coeff\n";
    body << "0,0\n";
    for (const auto& c : region.corners) body << c.pt.r1 << ',' << c.pt.r2 << "\n";
    body << "0,0\n";
    write_output(out, body.str());
    return 0;
  }

  json doc;
  doc["manifest"] = manifest;
  json corners = json::array();
  json provenance = json::array();
  for (const auto& c : region.corners) {
    corners.push_back({c.pt.r1, c.pt.r2});
    provenance.push_back({c.d1, c.d2});
  }
  doc["corners"] = corners;
  doc["provenance"] = provenance;
  doc["count"] = region.corners.size();
  doc["corner_count_formula"] = corner_count(p);
  doc["regime_ok"] = region.regime_ok;
  emit_json(out, doc);
  return 0;
}

// ---------------------------------------------------------------------------
// mac-sim

int run_mac_sim(std::uint64_t q, unsigned T, unsigned n, unsigned d1, unsigned d2, unsigned m1,
                unsigned m2, unsigned trials, std::uint64_t seed, const std::string& out) {
  if (m1 == 0) m1 = d1;
  if (m2 == 0) m2 = d2;
  const MacParams p{q, T, n, m1, m2};
  json params = {{"q", q},   {"T", T},   {"n", n},         {"d1", d1},      {"d2", d2},
                 {"m1", m1}, {"m2", m2}, {"trials", trials}};
  json doc;
  doc["manifest"] = make_manifest("mac-sim", params, seed);
  Rng rng(seed);
  const double rate = achievability_sim(d1, d2, p, trials, rng);
  double full_rank = 1.0;
  for (unsigned i = 0; i < d1 + d2; ++i)
    full_rank *= 1.0 - std::pow(double(q), double(i) - double(n));
  doc["success_rate"] = rate;
  doc["trials"] = trials;
  doc["full_rank_probability"] = full_rank;
  emit_json(out, doc);
  return 0;
}

// ---------------------------------------------------------------------------
// simulate

int run_simulate(std::uint64_t q, unsigned T, unsigned m, unsigned n,
                 const std::string& dist_file, unsigned trials, std::uint64_t seed,
                 const std::string& out) {
  const ChannelParams p{q, T, m, n};
  const Field f = p.field();

  std::ifstream in(dist_file);
  if (!in) throw std::invalid_argument("cannot open dimension distribution file: " + dist_file);
  std::vector<double> alpha;
  double v;
  while (in >> v) alpha.push_back(v);
  const DimDist dist(alpha);
  if (dist.size() != p.delta() + 1)
    throw std::invalid_argument("dimension distribution needs min(m,T)+1 entries");

  json params = {{"q", q}, {"T", T}, {"m", m}, {"n", n}, {"dist", dist_file}, {"trials", trials}};
  json doc;
  doc["manifest"] = make_manifest("simulate", params, seed);

  Rng rng(seed);
  const unsigned max_out_dim = std::min(n, T);
  std::vector<std::uint64_t> histogram(max_out_dim + 1, 0);
  for (unsigned t = 0; t < trials; ++t) {
    // Input dimension from alpha, then a uniform subspace of that
    // dimension carried by its basis matrix padded to m rows.
    const double u = rng.uniform01();
    unsigned d = dist.size() - 1;
    double acc = 0;
    for (unsigned i = 0; i < dist.size(); ++i) {
      acc += dist[i];
      if (u < acc) {
        d = i;
        break;
      }
    }
    const Subspace pi = random_subspace(f, T, d, rng);
    const Matrix x = stack_rows(pi.basis(), Matrix(f, m - pi.dim(), T));
    const Matrix y = matrix_channel_step(x, p, rng);
    ++histogram[Subspace::span_of(y).dim()];
  }
  doc["alpha"] = dist.alpha();
  doc["trials"] = trials;
  doc["dim_histogram"] = histogram;
  json freq = json::array();
  for (auto c : histogram) freq.push_back(double(c) / trials);
  doc["dim_frequency"] = freq;
  emit_json(out, doc);
  return 0;
}

// ---------------------------------------------------------------------------
// bounds erasure

int run_bounds_erasure(std::uint64_t q, unsigned T, unsigned m, const std::string& dist,
                       const std::string& out) {
  const ChannelParams p{q, T, m, m};
  const ErasureDist edist = parse_erasure_dist(dist, m);
  json params = {{"q", q}, {"T", T}, {"m", m}, {"dist", dist}};
  json doc;
  doc["manifest"] = make_manifest("bounds erasure", params, kDefaultSeed);
  const ErasureBounds b = erasure_bounds(p, edist);
  doc["mu1"] = edist.mean();
  doc["mu2"] = edist.second_moment();
  doc["lower_bits"] = b.lower_bits;
  doc["upper_bits"] = b.upper_bits;
  const double lq = std::log2(double(q));
  doc["lower_per_log2q"] = b.lower_bits / lq;
  doc["upper_per_log2q"] = b.upper_bits / lq;
  emit_json(out, doc);
  return 0;
}

// ---------------------------------------------------------------------------
// oracle

int run_oracle_counts(const std::string& kind, std::uint64_t q, long long T, long long d,
                      long long n, long long d1, long long d2, long long d12, long long dx,
                      long long dy, long long m, const std::string& out) {
  json params = {{"kind", kind}, {"q", q},     {"T", T},   {"d", d},   {"n", n},  {"d1", d1},
                 {"d2", d2},     {"d12", d12}, {"dx", dx}, {"dy", dy}, {"m", m}};
  json doc;
  doc["manifest"] = make_manifest("oracle counts", params, kDefaultSeed);
  doc["kind"] = kind;
  QCount count;
  if (kind == "gaussian") {
    count = gaussian(T, d, q);
  } else if (kind == "psi") {
    count = psi(n, d, q);
  } else if (kind == "sphere") {
    count = sphere_size(T, m, q);
  } else if (kind == "intersect") {
    const auto r = intersect_count(T, d1, d2, d12, q);
    count = r.count;
    doc["exponent"] = r.exponent;
  } else if (kind == "samesum") {
    const auto r = samesum_count(T, d1, d2, d12, q);
    count = r.count;
    doc["exponent"] = r.exponent;
  } else if (kind == "contain") {
    count = contain_count(T, dx, dy, q);
  } else {
    throw std::invalid_argument(
        "kind must be one of gaussian, psi, sphere, intersect, samesum, contain");
  }
  doc["exact"] = count.exact_str();
  doc["log2"] = count.is_zero() ? json(nullptr) : json(count.log2);
  emit_json(out, doc);
  return 0;
}

int run_oracle_matrix(const std::string& op, const std::string& in_path,
                      const std::string& out) {
  std::ifstream in(in_path);
  if (!in) throw std::invalid_argument("cannot open matrix file: " + in_path);
  const Matrix m = read_matrix_text(in);
  if (op == "rref") {
    write_output(out, matrix_text(rref(m).mat));
  } else {
    write_output(out, matrix_text(Subspace::span_of(m).basis()));
  }
  return 0;
}

// ---------------------------------------------------------------------------
// table1

int run_table1(unsigned m, unsigned n, unsigned t_small, unsigned t_large,
               const std::string& qlist, double tol, const std::string& out) {
  const auto qs = parse_qlist(qlist);
  json params = {{"m", m},
                 {"n", n},
                 {"T_small", t_small},
                 {"T_large", t_large},
                 {"qlist", qlist},
                 {"tol", tol}};
  const json manifest = make_manifest("table1", params, kDefaultSeed);
  std::ostringstream csv;
  csv << "# manifest: " << manifest.dump() << "\n";
  csv << "regime,T,q,capacity_bits,r_cv_bits,gap_bits\n";
  for (const unsigned T : {t_small, t_large}) {
    const char* regime = T <= 2 * m ? "T<=2m" : "T>2m";
    for (const std::uint64_t q : qs) {
      const ChannelParams p{q, T, m, n};
      const double rcv = coding_vector_rate(p, p.i_star());
      double capacity;
      if (T > n + std::min(m, n)) {
        capacity = exact_capacity_large_T(p).capacity_bits;
      } else {
        capacity = optimize_or_throw(p, tol).capacity_bits;
      }
      csv << regime << ',' << T << ',' << q << ',' << fmt17(capacity) << ',' << fmt17(rcv)
          << ',' << fmt17(capacity - rcv) << "\n";
    }
  }
  write_output(out, csv.str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"non-coherent network-coding channel toolkit"};
  app.require_subcommand(1);

  std::uint64_t q = 2;
  unsigned T = 2, m = 1, n = 1;
  double tol = 1e-9;
  std::string method = "optimize", out_path;

  auto* cap = app.add_subcommand("capacity", "capacity and optimal input distribution");
  cap->add_option("--q", q, "field order (prime power)")->required();
  cap->add_option("--T", T, "packet length")->required();
  cap->add_option("--m", m, "source packets per slot")->required();
  cap->add_option("--n", n, "received packets per slot")->required();
  cap->add_option("--tol", tol, "Kuhn-Tucker residual tolerance");
  cap->add_option("--method", method, "optimize | exactT | asymptotic");
  cap->add_option("--out", out_path, "output file (default stdout)");

  std::string qlist = "2,3,4,5,7,8,9,11,13,16";
  auto* sweep = app.add_subcommand("sweep", "capacity-per-log2q across field orders (CSV)");
  sweep->add_option("--m", m)->required();
  sweep->add_option("--n", n)->required();
  sweep->add_option("--T", T)->required();
  sweep->add_option("--qlist", qlist, "comma-separated prime powers");
  sweep->add_option("--tol", tol);
  sweep->add_option("--out", out_path);

  bool verify = false, find_min_q = false;
  double threshold = 1e-6;
  auto* support = app.add_subcommand("support", "predicted active input dimensions");
  support->add_option("--q", q)->required();
  support->add_option("--T", T)->required();
  support->add_option("--m", m)->required();
  support->add_option("--n", n)->required();
  support->add_flag("--verify", verify, "also run the optimizer and compare");
  support->add_option("--threshold", threshold, "numeric support threshold");
  support->add_flag("--find-min-q", find_min_q,
                    "scan prime powers up to q for the first support match");
  support->add_option("--tol", tol);
  support->add_option("--out", out_path);

  unsigned m1 = 1, m2 = 1;
  bool csv = false;
  auto* region = app.add_subcommand("region", "two-source MAC rate region");
  region->add_option("--m1", m1)->required();
  region->add_option("--m2", m2)->required();
  region->add_option("--n", n)->required();
  region->add_option("--T", T)->required();
  region->add_option("--q", q, "field order (corners are q-independent coefficients)");
  region->add_flag("--csv", csv, "emit the polygon as CSV plot data");
  region->add_option("--out", out_path);

  unsigned d1 = 1, d2 = 1, trials = 10000;
  std::uint64_t seed = kDefaultSeed;
  unsigned sim_m1 = 0, sim_m2 = 0;
  auto* mac_sim = app.add_subcommand("mac-sim", "corner-point achievability simulation");
  mac_sim->add_option("--q", q)->required();
  mac_sim->add_option("--n", n)->required();
  mac_sim->add_option("--T", T)->required();
  mac_sim->add_option("--d1", d1)->required();
  mac_sim->add_option("--d2", d2)->required();
  mac_sim->add_option("--m1", sim_m1, "source-1 packets (default d1)");
  mac_sim->add_option("--m2", sim_m2, "source-2 packets (default d2)");
  mac_sim->add_option("--trials", trials);
  mac_sim->add_option("--seed", seed);
  mac_sim->add_option("--out", out_path);

  std::string dist_file;
  auto* simulate = app.add_subcommand("simulate", "Monte-Carlo output-dimension histogram");
  simulate->add_option("--q", q)->required();
  simulate->add_option("--T", T)->required();
  simulate->add_option("--m", m)->required();
  simulate->add_option("--n", n)->required();
  simulate->add_option("--dist", dist_file, "file with min(m,T)+1 probabilities")->required();
  simulate->add_option("--trials", trials);
  simulate->add_option("--seed", seed);
  simulate->add_option("--out", out_path);

  std::string edist_spec;
  auto* bounds = app.add_subcommand("bounds", "capacity bounds");
  auto* erasure = bounds->add_subcommand("erasure", "packet-erasure capacity bounds");
  erasure->add_option("--q", q)->required();
  erasure->add_option("--T", T)->required();
  erasure->add_option("--m", m)->required();
  erasure->add_option("--dist", edist_spec, "N distribution as value:prob,value:prob,...")
      ->required();
  erasure->add_option("--out", out_path);

  std::string kind, in_path;
  long long oT = 0, od = 0, on = 0, od1 = 0, od2 = 0, od12 = 0, odx = 0, ody = 0, om = 0;
  auto* oracle = app.add_subcommand("oracle", "exact counting and matrix oracles");
  auto* counts = oracle->add_subcommand("counts", "counting quantities as exact + log2");
  counts->add_option("--kind", kind, "gaussian|psi|sphere|intersect|samesum|contain")
      ->required();
  counts->add_option("--q", q)->required();
  counts->add_option("--T", oT);
  counts->add_option("--d", od);
  counts->add_option("--n", on);
  counts->add_option("--d1", od1);
  counts->add_option("--d2", od2);
  counts->add_option("--d12", od12);
  counts->add_option("--dx", odx);
  counts->add_option("--dy", ody);
  counts->add_option("--m", om);
  counts->add_option("--out", out_path);
  auto* rref_cmd = oracle->add_subcommand("rref", "reduced row echelon form of a matrix file");
  rref_cmd->add_option("--in", in_path, "matrix in 'q T rows' text format")->required();
  rref_cmd->add_option("--out", out_path);
  auto* span_cmd = oracle->add_subcommand("span", "canonical row-span basis of a matrix file");
  span_cmd->add_option("--in", in_path, "matrix in 'q T rows' text format")->required();
  span_cmd->add_option("--out", out_path);

  unsigned t_small = 5, t_large = 10, t_m = 3, t_n = 3;
  std::string table_qlist = "4,8,16,32,64";
  auto* table1 = app.add_subcommand("table1", "coding-vector gap in both packet-length regimes");
  table1->add_option("--m", t_m);
  table1->add_option("--n", t_n);
  table1->add_option("--T-small", t_small);
  table1->add_option("--T-large", t_large);
  table1->add_option("--qlist", table_qlist);
  table1->add_option("--tol", tol);
  table1->add_option("--out", out_path);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (cap->parsed()) return run_capacity(q, T, m, n, tol, method, out_path);
    if (sweep->parsed()) return run_sweep(m, n, T, qlist, tol, out_path);
    if (support->parsed())
      return run_support(q, T, m, n, verify, threshold, find_min_q, tol, out_path);
    if (region->parsed()) return run_region(q, T, n, m1, m2, csv, out_path);
    if (mac_sim->parsed())
      return run_mac_sim(q, T, n, d1, d2, sim_m1, sim_m2, trials, seed, out_path);
    if (simulate->parsed())
      return run_simulate(q, T, m, n, dist_file, trials, seed, out_path);
    if (bounds->parsed()) {
      if (!erasure->parsed())
        throw std::invalid_argument("bounds requires the erasure subcommand");
      return run_bounds_erasure(q, T, m, edist_spec, out_path);
    }
    if (oracle->parsed()) {
      if (counts->parsed())
        return run_oracle_counts(kind, q, oT, od, on, od1, od2, od12, odx, ody, om, out_path);
      if (rref_cmd->parsed()) return run_oracle_matrix("rref", in_path, out_path);
      if (span_cmd->parsed()) return run_oracle_matrix("span", in_path, out_path);
      throw std::invalid_argument("oracle requires counts, rref, or span");
    }
    if (table1->parsed())
      return run_table1(t_m, t_n, t_small, t_large, table_qlist, tol, out_path);
  } catch (const NonConvergence& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
