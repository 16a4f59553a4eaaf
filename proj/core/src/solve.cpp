// SPDX-License-Identifier: Apache-2.0
#include "actris/solve.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>

#include "actris/bounds.hpp"
#include "actris/common.hpp"
#include "actris/rng.hpp"
#include "actris/validate.hpp"

namespace actris::solve {

namespace {

std::uint64_t gray(std::uint64_t k) { return k ^ (k >> 1); }

// Transposed coefficient pack for the enumeration loops: factor matrices are
// N x S with the rho scaling folded in, so per-sample dot products update in
// O(S) per bit flip along matrix rows.
struct Pack {
  int n = 0, s = 0, m = 0;
  double p_d = 1.0;
  std::vector<double> p_m;
  Eigen::ArrayXd a, d0, d1, abs_d;
  std::vector<Eigen::ArrayXd> a_m, abs_dm;
  Eigen::MatrixXd r_des, c_des;
  std::vector<Eigen::MatrixXd> r_int, c_int;

  static Pack from(const std::vector<sinr::SinrCoefficients>& coeffs) {
    Pack p;
    p.s = static_cast<int>(coeffs.size());
    const auto& first = coeffs.front();
    p.n = first.n();
    p.m = first.m();
    p.p_d = first.p_d;
    p.p_m = first.p_m;
    p.a.resize(p.s);
    p.d0.resize(p.s);
    p.d1.resize(p.s);
    p.abs_d.resize(p.s);
    p.r_des.resize(p.n, p.s);
    p.c_des.resize(p.n, p.s);
    p.a_m.assign(static_cast<std::size_t>(p.m), Eigen::ArrayXd(p.s));
    p.abs_dm.assign(static_cast<std::size_t>(p.m), Eigen::ArrayXd(p.s));
    p.r_int.assign(static_cast<std::size_t>(p.m), Eigen::MatrixXd(p.n, p.s));
    p.c_int.assign(static_cast<std::size_t>(p.m), Eigen::MatrixXd(p.n, p.s));
    for (int si = 0; si < p.s; ++si) {
      const auto& k = coeffs[static_cast<std::size_t>(si)];
      if (k.n() != p.n || k.m() != p.m) throw std::invalid_argument("solver: heterogeneous coefficient set");
      p.a[si] = k.a;
      p.d0[si] = k.d0;
      p.d1[si] = k.d1;
      p.abs_d[si] = k.abs_d;
      p.r_des.col(si) = k.rho * k.r;
      p.c_des.col(si) = k.rho * k.c;
      for (int mi = 0; mi < p.m; ++mi) {
        const auto mu = static_cast<std::size_t>(mi);
        p.a_m[mu][si] = k.a_m[mu];
        p.abs_dm[mu][si] = k.abs_dm[mu];
        p.r_int[mu].col(si) = k.rho * k.r_m[mu];
        p.c_int[mu].col(si) = k.rho * k.c_m[mu];
      }
    }
    return p;
  }
};

// Running per-sample dot products b'(rho r), b'(rho c) for every link.
struct ClassState {
  Eigen::VectorXd b;
  Eigen::RowVectorXd dr, dc;
  std::vector<Eigen::RowVectorXd> dr_m, dc_m;

  void init(const Pack& p, const Eigen::VectorXd& b0) {
    b = b0;
    dr = b.transpose() * p.r_des;
    dc = b.transpose() * p.c_des;
    dr_m.resize(static_cast<std::size_t>(p.m));
    dc_m.resize(static_cast<std::size_t>(p.m));
    for (int mi = 0; mi < p.m; ++mi) {
      const auto mu = static_cast<std::size_t>(mi);
      dr_m[mu] = b.transpose() * p.r_int[mu];
      dc_m[mu] = b.transpose() * p.c_int[mu];
    }
  }

  void flip(const Pack& p, int bit) {
    b[bit] = -b[bit];
    const double step = 2.0 * b[bit];
    dr += step * p.r_des.row(bit);
    dc += step * p.c_des.row(bit);
    for (int mi = 0; mi < p.m; ++mi) {
      const auto mu = static_cast<std::size_t>(mi);
      dr_m[mu] += step * p.r_int[mu].row(bit);
      dc_m[mu] += step * p.c_int[mu].row(bit);
    }
  }
};

void sinr_array(const Pack& p, const ClassState& st, double sign, double g, Eigen::ArrayXd& out) {
  const double g2 = g * g;
  const Eigen::ArrayXd dr = st.dr.transpose().array();
  const Eigen::ArrayXd dc = st.dc.transpose().array();
  Eigen::ArrayXd num = p.p_d * (p.a + (2.0 * g * sign) * p.abs_d * dr + g2 * (dr.square() + dc.square()));
  Eigen::ArrayXd den = p.d0 + g2 * p.d1;
  for (int mi = 0; mi < p.m; ++mi) {
    const auto mu = static_cast<std::size_t>(mi);
    const Eigen::ArrayXd drm = st.dr_m[mu].transpose().array();
    const Eigen::ArrayXd dcm = st.dc_m[mu].transpose().array();
    den += p.p_m[mu] * (p.a_m[mu] + (2.0 * g * sign) * p.abs_dm[mu] * drm + g2 * (drm.square() + dcm.square()));
  }
  out = num / den;
}

// Quadratic coefficients of P_d S(b,g) - tau Den(b,g) >= 0 per sample; cq is
// the b-independent constant part, precomputed once per tau.
void quad_arrays(const Pack& p, const ClassState& st, double sign, double tau, Eigen::ArrayXd& aq,
                 Eigen::ArrayXd& bq) {
  const Eigen::ArrayXd dr = st.dr.transpose().array();
  const Eigen::ArrayXd dc = st.dc.transpose().array();
  aq = p.p_d * (dr.square() + dc.square()) - tau * p.d1;
  bq = (2.0 * sign) * p.p_d * p.abs_d * dr;
  for (int mi = 0; mi < p.m; ++mi) {
    const auto mu = static_cast<std::size_t>(mi);
    const Eigen::ArrayXd drm = st.dr_m[mu].transpose().array();
    const Eigen::ArrayXd dcm = st.dc_m[mu].transpose().array();
    aq -= tau * p.p_m[mu] * (drm.square() + dcm.square());
    bq -= (2.0 * sign) * tau * p.p_m[mu] * p.abs_dm[mu] * drm;
  }
}

Eigen::ArrayXd const_quad_term(const Pack& p, double tau) {
  Eigen::ArrayXd cq = p.p_d * p.a - tau * p.d0;
  for (int mi = 0; mi < p.m; ++mi) {
    const auto mu = static_cast<std::size_t>(mi);
    cq -= tau * p.p_m[mu] * p.a_m[mu];
  }
  return cq;
}

void emit_quadratic_intervals(double a, double b, double c, double g_max, std::vector<double>& starts,
                              std::vector<double>& ends) {
  auto emit = [&](double lo, double hi) {
    lo = std::max(lo, 0.0);
    hi = std::min(hi, g_max);
    if (lo <= hi) {
      starts.push_back(lo);
      ends.push_back(hi);
    }
  };
  if (a == 0.0) {
    if (b == 0.0) {
      if (c >= 0.0) emit(0.0, g_max);
      return;
    }
    const double root = -c / b;
    if (b > 0.0) {
      emit(root, g_max);
    } else {
      emit(0.0, root);
    }
    return;
  }
  const double disc = b * b - 4.0 * a * c;
  if (a > 0.0) {
    if (disc <= 0.0) {
      emit(0.0, g_max);
      return;
    }
    const double sq = std::sqrt(disc);
    const double q = (b >= 0.0) ? -0.5 * (b + sq) : -0.5 * (b - sq);
    double x1 = q / a;
    double x2 = (q != 0.0) ? c / q : x1;
    if (x1 > x2) std::swap(x1, x2);
    emit(0.0, x1);
    emit(x2, g_max);
    return;
  }
  // a < 0: satisfied between the roots, if any.
  if (disc < 0.0) return;
  const double sq = std::sqrt(disc);
  const double q = (b >= 0.0) ? -0.5 * (b + sq) : -0.5 * (b - sq);
  double x1 = q / a;
  double x2 = (q != 0.0) ? c / q : x1;
  if (x1 > x2) std::swap(x1, x2);
  emit(x1, x2);
}

struct SweepScratch {
  std::vector<double> starts, ends, pos;
  std::vector<int> point_cov, seg_cov;

  void clear() {
    starts.clear();
    ends.clear();
    pos.clear();
    point_cov.clear();
    seg_cov.clear();
  }
};

// Coverage of the interval family at every event point and on every open
// segment between consecutive events (intervals are closed).
void build_pieces(SweepScratch& sc) {
  std::sort(sc.starts.begin(), sc.starts.end());
  std::sort(sc.ends.begin(), sc.ends.end());
  sc.pos.reserve(sc.starts.size() + sc.ends.size());
  sc.pos.assign(sc.starts.begin(), sc.starts.end());
  sc.pos.insert(sc.pos.end(), sc.ends.begin(), sc.ends.end());
  std::sort(sc.pos.begin(), sc.pos.end());
  sc.pos.erase(std::unique(sc.pos.begin(), sc.pos.end()), sc.pos.end());

  const std::size_t np = sc.pos.size();
  sc.point_cov.resize(np);
  sc.seg_cov.resize(np > 0 ? np - 1 : 0);
  std::size_t si = 0, e_lt = 0, e_le = 0;
  for (std::size_t k = 0; k < np; ++k) {
    const double p = sc.pos[k];
    while (si < sc.starts.size() && sc.starts[si] <= p) ++si;
    while (e_lt < sc.ends.size() && sc.ends[e_lt] < p) ++e_lt;
    while (e_le < sc.ends.size() && sc.ends[e_le] <= p) ++e_le;
    sc.point_cov[k] = static_cast<int>(si) - static_cast<int>(e_lt);
    if (k + 1 < np) sc.seg_cov[k] = static_cast<int>(si) - static_cast<int>(e_le);
  }
}

struct BestRun {
  int cov = 0;
  double g = 0.0;
  double width = -1.0;
  bool any = false;
};

// Widest run of pieces at the maximal coverage level; runs start and end at
// event points because point coverage dominates adjacent segment coverage.
BestRun best_run(const SweepScratch& sc) {
  BestRun best;
  const std::size_t np = sc.pos.size();
  if (np == 0) return best;
  const int level = *std::max_element(sc.point_cov.begin(), sc.point_cov.end());
  std::size_t k = 0;
  while (k < np) {
    if (sc.point_cov[k] == level) {
      const std::size_t lo = k;
      while (k + 1 < np && sc.seg_cov[k] == level && sc.point_cov[k + 1] == level) ++k;
      const double width = sc.pos[k] - sc.pos[lo];
      if (!best.any || width > best.width) {
        best.any = true;
        best.cov = level;
        best.width = width;
        best.g = 0.5 * (sc.pos[lo] + sc.pos[k]);
      }
    }
    ++k;
  }
  return best;
}

void runs_at_least(const SweepScratch& sc, int threshold, GIntervalSet& out) {
  out.clear();
  const std::size_t np = sc.pos.size();
  std::size_t k = 0;
  while (k < np) {
    if (sc.point_cov[k] >= threshold) {
      const std::size_t lo = k;
      while (k + 1 < np && sc.seg_cov[k] >= threshold) ++k;
      out.push_back({sc.pos[lo], sc.pos[k]});
    }
    ++k;
  }
}

// Sweep of one configuration: per-sample feasible-gain intervals, then the
// coverage run structure.
BestRun sweep_class(const Pack& p, const ClassState& st, double sign, double tau,
                    const Eigen::ArrayXd& cq, double g_max, SweepScratch& sc) {
  Eigen::ArrayXd aq, bq;
  quad_arrays(p, st, sign, tau, aq, bq);
  sc.clear();
  for (int si = 0; si < p.s; ++si) {
    emit_quadratic_intervals(aq[si], bq[si], cq[si], g_max, sc.starts, sc.ends);
  }
  build_pieces(sc);
  return best_run(sc);
}

Eigen::VectorXd class_to_b(int n, std::uint64_t class_index, double sign) {
  Eigen::VectorXd b(n);
  b[0] = sign;
  const std::uint64_t bits = gray(class_index);
  for (int i = 1; i < n; ++i) {
    b[i] = ((bits >> (i - 1)) & 1u) ? -sign : sign;
  }
  return b;
}

struct ChunkBest {
  bool any = false;
  int cov = -1;
  double width = -1.0;
  std::uint64_t class_index = 0;
  double sign = 1.0;
  double g = 0.0;

  void consider(int cov_in, double width_in, std::uint64_t cls, double sgn, double g_in) {
    if (!any || cov_in > cov || (cov_in == cov && width_in > width) ||
        (cov_in == cov && width_in == width && cls < class_index) ||
        (cov_in == cov && width_in == width && cls == class_index && sgn > sign)) {
      any = true;
      cov = cov_in;
      width = width_in;
      class_index = cls;
      sign = sgn;
      g = g_in;
    }
  }

  void merge(const ChunkBest& other) {
    if (other.any) consider(other.cov, other.width, other.class_index, other.sign, other.g);
  }
};

// Chunked Gray-code walk over the 2^(n-1) sign classes.
template <typename PerClass>
void enumerate_classes(const Pack& p, int threads, const PerClass& per_class) {
  const std::uint64_t n_classes = 1ull << (p.n - 1);
  int workers = threads > 0 ? threads : default_thread_count();
  workers = static_cast<int>(std::min<std::uint64_t>(static_cast<std::uint64_t>(workers), n_classes));
  const std::uint64_t chunk = (n_classes + static_cast<std::uint64_t>(workers) - 1) / static_cast<std::uint64_t>(workers);
  parallel_for(static_cast<std::size_t>(workers), workers, [&](std::size_t w) {
    const std::uint64_t lo = static_cast<std::uint64_t>(w) * chunk;
    const std::uint64_t hi = std::min(n_classes, lo + chunk);
    if (lo >= hi) return;
    ClassState st;
    st.init(p, class_to_b(p.n, lo, 1.0));
    for (std::uint64_t k = lo; k < hi; ++k) {
      per_class(static_cast<int>(w), k, st);
      if (k + 1 < hi) {
        const int bit = 1 + std::countr_zero(k + 1);
        st.flip(p, bit);
      }
    }
  });
}

int quantile_index(double epsilon, int s) {
  const int idx = static_cast<int>(std::ceil(epsilon * static_cast<double>(s)));
  return std::clamp(idx, 1, s);
}

double kth_smallest(const Eigen::ArrayXd& values, int k_one_based, std::vector<double>& scratch) {
  scratch.assign(values.data(), values.data() + values.size());
  auto nth = scratch.begin() + (k_one_based - 1);
  std::nth_element(scratch.begin(), nth, scratch.end());
  return *nth;
}

Eigen::VectorXd random_b(int n, Philox& stream) {
  Eigen::VectorXd b(n);
  for (int i = 0; i < n; ++i) b[i] = (stream.next_below(2) == 0) ? 1.0 : -1.0;
  return b;
}

}  // namespace

std::string oracle_name(OracleKind kind) {
  switch (kind) {
    case OracleKind::kExact: return "exact";
    case OracleKind::kLocalSearch: return "local_search";
    case OracleKind::kExternal: return "external";
  }
  return "unknown";
}

OracleKind oracle_from_name(const std::string& name) {
  if (name == "exact") return OracleKind::kExact;
  if (name == "local_search" || name == "local") return OracleKind::kLocalSearch;
  if (name == "external") return OracleKind::kExternal;
  throw std::invalid_argument("unknown oracle '" + name + "'");
}

GIntervalSet solve_quadratic_ge0(double a, double b, double c, double g_max) {
  std::vector<double> starts, ends;
  emit_quadratic_intervals(a, b, c, g_max, starts, ends);
  GIntervalSet out;
  for (std::size_t i = 0; i < starts.size(); ++i) out.push_back({starts[i], ends[i]});
  std::sort(out.begin(), out.end(), [](const GInterval& x, const GInterval& y) { return x.lo < y.lo; });
  // merge touching pieces
  GIntervalSet merged;
  for (const auto& iv : out) {
    if (!merged.empty() && iv.lo <= merged.back().hi) {
      merged.back().hi = std::max(merged.back().hi, iv.hi);
    } else {
      merged.push_back(iv);
    }
  }
  return merged;
}

GIntervalSet feasible_g_intervals(const sinr::SinrCoefficients& cs, const Eigen::VectorXd& b,
                                  double tau, double g_max) {
  if (tau < 0) throw std::domain_error("feasible_g_intervals: tau must be >= 0");
  const sinr::ConfigTerms terms = sinr::config_terms(cs, b);
  double aq = cs.p_d * terms.c_quad - tau * cs.d1;
  double bq = cs.p_d * terms.b_lin;
  double cq = cs.p_d * cs.a - tau * cs.d0;
  for (int mi = 0; mi < cs.m(); ++mi) {
    const auto mu = static_cast<std::size_t>(mi);
    aq -= tau * cs.p_m[mu] * terms.c_quad_m[mu];
    bq -= tau * cs.p_m[mu] * terms.b_lin_m[mu];
    cq -= tau * cs.p_m[mu] * cs.a_m[mu];
  }
  return solve_quadratic_ge0(aq, bq, cq, g_max);
}

int count_budget_violations(const std::vector<sinr::SinrCoefficients>& coeffs, const Eigen::VectorXd& b,
                            double g, double tau) {
  // Delegates to the straight-loop evaluator in validate so design-time
  // verification and out-of-sample re-checks count with the same arithmetic.
  return validate::count_violations(coeffs, b, g, tau);
}

namespace {

// Direct budget re-verification of a sweep result; tries a few gains inside
// the winning run when the midpoint sits on a knife edge.
std::optional<FeasiblePoint> verify_candidate(const std::vector<sinr::SinrCoefficients>& coeffs,
                                              const Eigen::VectorXd& b, const BestRun& run, double tau,
                                              int kappa) {
  const double lo = run.g - 0.5 * run.width;
  const double hi = run.g + 0.5 * run.width;
  const double g_candidates[5] = {run.g, lo + 0.25 * run.width, lo + 0.75 * run.width, lo, hi};
  for (double g : g_candidates) {
    const int bad = count_budget_violations(coeffs, b, g, tau);
    if (bad <= kappa) {
      FeasiblePoint pt;
      pt.b = b;
      pt.g = g;
      pt.covered = static_cast<int>(coeffs.size()) - bad;
      pt.run_width = run.width;
      return pt;
    }
  }
  return std::nullopt;
}

}  // namespace

std::optional<FeasiblePoint> check_feasible_exact(const std::vector<sinr::SinrCoefficients>& coeffs,
                                                  double tau, int kappa, double g_max,
                                                  const ExactOptions& options) {
  if (coeffs.empty()) throw std::invalid_argument("check_feasible_exact: empty coefficient set");
  if (tau < 0) throw std::domain_error("check_feasible_exact: tau must be >= 0");
  const Pack p = Pack::from(coeffs);
  if (p.n > options.n_enum_cap) {
    throw CapabilityError("check_feasible_exact: N=" + std::to_string(p.n) + " exceeds the enumeration cap " +
                          std::to_string(options.n_enum_cap) +
                          "; use the local_search oracle or export the model for an external solver");
  }
  const int threshold = p.s - kappa;
  const Eigen::ArrayXd cq = const_quad_term(p, tau);

  int workers = options.threads > 0 ? options.threads : default_thread_count();
  std::vector<ChunkBest> bests(static_cast<std::size_t>(std::max(workers, 1)));
  std::vector<SweepScratch> scratch(bests.size());
  enumerate_classes(p, workers, [&](int w, std::uint64_t cls, const ClassState& st) {
    auto& sc = scratch[static_cast<std::size_t>(w)];
    for (double sign : {1.0, -1.0}) {
      const BestRun run = sweep_class(p, st, sign, tau, cq, g_max, sc);
      if (run.any) bests[static_cast<std::size_t>(w)].consider(run.cov, run.width, cls, sign, run.g);
    }
  });

  ChunkBest best;
  for (const auto& cb : bests) best.merge(cb);
  if (!best.any || best.cov < threshold) return std::nullopt;

  const Eigen::VectorXd b = class_to_b(p.n, best.class_index, best.sign);
  BestRun run;
  run.cov = best.cov;
  run.g = best.g;
  run.width = best.width;
  return verify_candidate(coeffs, b, run, tau, kappa);
}

std::optional<FeasiblePoint> check_feasible_local(const std::vector<sinr::SinrCoefficients>& coeffs,
                                                  double tau, int kappa, double g_max,
                                                  const LocalSearchOptions& options) {
  if (coeffs.empty()) throw std::invalid_argument("check_feasible_local: empty coefficient set");
  if (options.restarts < 1) throw std::invalid_argument("check_feasible_local: restarts must be >= 1");
  const Pack p = Pack::from(coeffs);
  const int threshold = p.s - kappa;
  const Eigen::ArrayXd cq = const_quad_term(p, tau);
  SweepScratch sc;

  for (int restart = 0; restart < options.restarts; ++restart) {
    Philox stream(options.seed, static_cast<std::uint64_t>(restart), rng_domain::kSearch);
    ClassState st;
    st.init(p, random_b(p.n, stream));
    BestRun score = sweep_class(p, st, 1.0, tau, cq, g_max, sc);

    bool improved = true;
    int passes = 0;
    while (improved && passes < 1000) {
      improved = false;
      ++passes;
      for (int bit = 0; bit < p.n; ++bit) {
        st.flip(p, bit);
        const BestRun trial = sweep_class(p, st, 1.0, tau, cq, g_max, sc);
        const bool better = trial.any && (!score.any || trial.cov > score.cov ||
                                          (trial.cov == score.cov && trial.width > score.width));
        if (better) {
          score = trial;
          improved = true;
        } else {
          st.flip(p, bit);
        }
      }
    }

    if (score.any && score.cov >= threshold) {
      if (auto pt = verify_candidate(coeffs, st.b, score, tau, kappa)) return pt;
    }
  }
  return std::nullopt;
}

double default_tau_upper_bound(const std::vector<sinr::SinrCoefficients>& coeffs, double g_max) {
  double hi = 0.0;
  for (const auto& cs : coeffs) {
    const bounds::EnvelopeTerms terms = bounds::envelope_terms(cs);
    for (int k = 0; k <= 32; ++k) {
      const double g = g_max * static_cast<double>(k) / 32.0;
      const bounds::Envelope env = bounds::sinr_envelopes(cs, terms, g);
      if (!env.ub_unbounded) hi = std::max(hi, env.ub);
    }
  }
  return hi;
}

Design bisect_tau(const FeasibilityOracle& oracle, const std::vector<sinr::SinrCoefficients>& coeffs,
                  double epsilon, double g_max, const BisectOptions& options) {
  if (!(epsilon > 0.0 && epsilon < 1.0)) throw std::domain_error("bisect_tau: epsilon must lie in (0, 1)");
  if (!(options.eps_tau > 0.0)) throw std::domain_error("bisect_tau: eps_tau must be > 0");

  const int s_count = static_cast<int>(coeffs.size());
  const int kappa = static_cast<int>(std::floor(epsilon * static_cast<double>(s_count)));

  double tau_lo = options.tau_lo;
  double tau_hi = options.tau_hi > options.tau_lo
                      ? options.tau_hi
                      : 1.05 * default_tau_upper_bound(coeffs, g_max) + options.eps_tau;

  auto incumbent = oracle(tau_lo);
  if (!incumbent) {
    throw std::invalid_argument("bisect_tau: oracle infeasible at tau_lo; the bracket must start feasible");
  }
  double incumbent_tau = tau_lo;

  Design design;
  design.epsilon = epsilon;
  design.s_count = s_count;
  design.kappa = kappa;
  design.eps_tau = options.eps_tau;

  // Keep doubling if the warm-start ceiling is still feasible.
  int expansions = 0;
  while (expansions < options.max_expansions) {
    auto at_hi = oracle(tau_hi);
    if (!at_hi) break;
    tau_lo = tau_hi;
    incumbent = at_hi;
    incumbent_tau = tau_hi;
    tau_hi *= 2.0;
    ++expansions;
  }
  design.expansions = expansions;

  int iterations = 0;
  while (tau_hi - tau_lo > options.eps_tau) {
    const double mid = 0.5 * (tau_lo + tau_hi);
    ++iterations;
    if (auto point = oracle(mid)) {
      tau_lo = mid;
      incumbent = point;
      incumbent_tau = mid;
    } else {
      tau_hi = mid;
    }
  }
  design.iterations = iterations;

  if (incumbent_tau != tau_lo) {
    if (auto point = oracle(tau_lo)) incumbent = point;
  }

  design.b = incumbent->b;
  design.g = incumbent->g;
  design.tau = tau_lo;
  design.violated_on_train = count_budget_violations(coeffs, design.b, design.g, design.tau);
  return design;
}

double refine_gain(const std::vector<sinr::SinrCoefficients>& coeffs, const Eigen::VectorXd& b_star,
                   double tau_star, int kappa, double epsilon, double g_max, double incumbent_g) {
  const int s_count = static_cast<int>(coeffs.size());
  const int q_idx = quantile_index(epsilon, s_count);

  SweepScratch sc;
  for (const auto& cs : coeffs) {
    const GIntervalSet ivs = feasible_g_intervals(cs, b_star, tau_star, g_max);
    for (const auto& iv : ivs) {
      sc.starts.push_back(iv.lo);
      sc.ends.push_back(iv.hi);
    }
  }
  build_pieces(sc);
  GIntervalSet runs;
  runs_at_least(sc, s_count - kappa, runs);
  if (runs.empty()) return incumbent_g;

  std::vector<double> candidates;
  for (const auto& run : runs) {
    candidates.push_back(run.lo);
    candidates.push_back(run.hi);
    constexpr int kInterior = 30;
    for (int k = 1; k < kInterior; ++k) {
      candidates.push_back(run.lo + (run.hi - run.lo) * static_cast<double>(k) / kInterior);
    }
  }

  std::vector<double> sinrs(static_cast<std::size_t>(s_count));
  std::vector<double> scratch;
  auto quantile_at = [&](double g) {
    for (int si = 0; si < s_count; ++si) {
      sinrs[static_cast<std::size_t>(si)] = sinr::evaluate_sinr(coeffs[static_cast<std::size_t>(si)], b_star, g);
    }
    scratch = sinrs;
    auto nth = scratch.begin() + (q_idx - 1);
    std::nth_element(scratch.begin(), nth, scratch.end());
    return *nth;
  };

  // Run endpoints sit exactly on quadratic roots where a marginal sample's
  // SINR equals tau; only candidates that survive the direct budget count are
  // eligible, which drops knife-edge gains.
  double best_g = incumbent_g;
  double best_q = quantile_at(incumbent_g);
  for (double g : candidates) {
    const double q = quantile_at(g);
    if (q > best_q && validate::count_violations(coeffs, b_star, g, tau_star) <= kappa) {
      best_q = q;
      best_g = g;
    }
  }
  return best_g;
}

namespace {

FixedGainResult enumerate_best_kth(const std::vector<sinr::SinrCoefficients>& coeffs, double g,
                                   int k_one_based, const ExactOptions& options) {
  const Pack p = Pack::from(coeffs);
  if (p.n > options.n_enum_cap) {
    throw CapabilityError("fixed-gain enumeration: N=" + std::to_string(p.n) + " exceeds the cap " +
                          std::to_string(options.n_enum_cap));
  }
  struct Best {
    bool any = false;
    double val = 0.0;
    std::uint64_t cls = 0;
    double sign = 1.0;
  };
  int workers = options.threads > 0 ? options.threads : default_thread_count();
  std::vector<Best> bests(static_cast<std::size_t>(std::max(workers, 1)));
  std::vector<std::vector<double>> scratch(bests.size());
  std::vector<Eigen::ArrayXd> values(bests.size());

  enumerate_classes(p, workers, [&](int w, std::uint64_t cls, const ClassState& st) {
    auto& best = bests[static_cast<std::size_t>(w)];
    for (double sign : {1.0, -1.0}) {
      sinr_array(p, st, sign, g, values[static_cast<std::size_t>(w)]);
      const double val = kth_smallest(values[static_cast<std::size_t>(w)], k_one_based,
                                      scratch[static_cast<std::size_t>(w)]);
      const bool better = !best.any || val > best.val ||
                          (val == best.val && (cls < best.cls || (cls == best.cls && sign > best.sign)));
      if (better) best = {true, val, cls, sign};
    }
  });

  Best best;
  for (const auto& cb : bests) {
    if (!cb.any) continue;
    const bool better = !best.any || cb.val > best.val ||
                        (cb.val == best.val && (cb.cls < best.cls || (cb.cls == best.cls && cb.sign > best.sign)));
    if (better) best = cb;
  }

  FixedGainResult out;
  out.value = best.val;
  out.b = class_to_b(p.n, best.cls, best.sign);
  return out;
}

FixedGainResult hill_climb_best_kth(const std::vector<sinr::SinrCoefficients>& coeffs, double g,
                                    int k_one_based, const LocalSearchOptions& options) {
  const Pack p = Pack::from(coeffs);
  std::vector<double> scratch;
  Eigen::ArrayXd values;

  FixedGainResult best;
  bool best_any = false;
  for (int restart = 0; restart < options.restarts; ++restart) {
    Philox stream(options.seed, static_cast<std::uint64_t>(restart), rng_domain::kSearch);
    ClassState st;
    st.init(p, random_b(p.n, stream));
    sinr_array(p, st, 1.0, g, values);
    double score = kth_smallest(values, k_one_based, scratch);

    bool improved = true;
    int passes = 0;
    while (improved && passes < 1000) {
      improved = false;
      ++passes;
      for (int bit = 0; bit < p.n; ++bit) {
        st.flip(p, bit);
        sinr_array(p, st, 1.0, g, values);
        const double trial = kth_smallest(values, k_one_based, scratch);
        if (trial > score) {
          score = trial;
          improved = true;
        } else {
          st.flip(p, bit);
        }
      }
    }
    if (!best_any || score > best.value) {
      best_any = true;
      best.value = score;
      best.b = st.b;
    }
  }
  return best;
}

}  // namespace

FixedGainResult max_tau_at_gain(const std::vector<sinr::SinrCoefficients>& coeffs, double g, int kappa,
                                const ExactOptions& options) {
  return enumerate_best_kth(coeffs, g, kappa + 1, options);
}

FixedGainResult max_tau_at_gain_local(const std::vector<sinr::SinrCoefficients>& coeffs, double g,
                                      int kappa, const LocalSearchOptions& options) {
  return hill_climb_best_kth(coeffs, g, kappa + 1, options);
}

FixedGainResult max_quantile_at_gain(const std::vector<sinr::SinrCoefficients>& coeffs, double g,
                                     double epsilon, const ExactOptions& options) {
  return enumerate_best_kth(coeffs, g, quantile_index(epsilon, static_cast<int>(coeffs.size())), options);
}

FixedGainResult max_quantile_at_gain_local(const std::vector<sinr::SinrCoefficients>& coeffs, double g,
                                           double epsilon, const LocalSearchOptions& options) {
  return hill_climb_best_kth(coeffs, g, quantile_index(epsilon, static_cast<int>(coeffs.size())), options);
}

std::optional<FeasiblePoint> ingest_external_solution(const std::vector<sinr::SinrCoefficients>& coeffs,
                                                      double tau, int kappa, double g_max,
                                                      const saa::ExternalSolution& sol) {
  Eigen::VectorXd b = 2.0 * sol.y.array() - 1.0;
  if (sol.g < -1e-12 || sol.g > g_max * (1.0 + 1e-9) + 1e-12) return std::nullopt;
  const double g = std::clamp(sol.g, 0.0, g_max);
  const int bad = count_budget_violations(coeffs, b, g, tau);
  if (bad > kappa) return std::nullopt;
  FeasiblePoint pt;
  pt.b = std::move(b);
  pt.g = g;
  pt.covered = static_cast<int>(coeffs.size()) - bad;
  return pt;
}

}  // namespace actris::solve
