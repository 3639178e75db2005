#pragma once

// Experiment harness: Monte-Carlo sampling of rational curves over F_q,
// exhaustive line enumeration, and the conic-family comparison.  Every
// trial derives its RNG stream from (seed, trial index), so results are
// independent of the degree of parallelism.

#include "jumplab/restrict.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdlib>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <thread>
#include <vector>

namespace jumplab {

struct ExperimentConfig {
  std::string bundle_name;  // named constructor or serialized file; echoed in records
  int curve_degree = 1;
  std::uint64_t field_order = 101;
  long long trials = 1000;
  std::uint64_t seed = 0;
  std::vector<Rational> jump_thresholds = {Rational(1)};

  void validate() const {
    if (!is_prime_u64(field_order))
      throw std::invalid_argument("ExperimentConfig: field order must be prime");
    if (trials < 1) throw std::invalid_argument("ExperimentConfig: trials >= 1");
    if (curve_degree < 1) throw std::invalid_argument("ExperimentConfig: degree >= 1");
  }
};

// Frequency of a threshold event and its codimension estimate
// chat = -ln(freq)/ln(q), with 95% Wilson interval endpoints pushed
// through the same transform.  Empty estimates (freq = 0) leave chat
// and ci_hi unset (the interval is one-sidedly unbounded).
struct ThresholdEstimate {
  Rational threshold;
  long long hits = 0;
  double freq = 0.0;
  std::optional<double> chat;
  double ci_lo = 0.0;               // from the upper frequency endpoint
  std::optional<double> ci_hi;      // from the lower endpoint; unset if it is 0
};

struct JumpHistogram {
  std::map<Rational, long long> mu_counts;  // certified trials only
  long long certified = 0;
  long long rejected = 0;  // base-pointed or uncertified
  bool degenerate = false; // rejected on more than half the trials
  std::vector<ThresholdEstimate> estimates;

  long long total() const { return certified + rejected; }
};

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

// unbiased draw in [0, q)
inline std::uint64_t uniform_mod(std::mt19937_64& eng, std::uint64_t q) {
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % q;
  std::uint64_t v;
  do {
    v = eng();
  } while (v >= limit);
  return v % q;
}

inline std::mt19937_64 trial_engine(std::uint64_t seed, long long trial) {
  return std::mt19937_64(
      splitmix64(seed ^ splitmix64(static_cast<std::uint64_t>(trial) + 1)));
}

inline HomForm<Fp> random_binary_form(std::mt19937_64& eng, int degree, std::uint64_t q) {
  HomForm<Fp> f(2, degree);
  for (int i = 0; i <= degree; ++i)
    f.coeff(degree - i, i) = Fp(static_cast<long long>(uniform_mod(eng, q)), q);
  return f;
}

inline RationalCurveMap<Fp> random_curve(std::mt19937_64& eng, int degree, std::uint64_t q) {
  RationalCurveMap<Fp> s;
  s.degree = degree;
  s.x = random_binary_form(eng, degree, q);
  s.y = random_binary_form(eng, degree, q);
  s.z = random_binary_form(eng, degree, q);
  return s;
}

inline int worker_count() {
  if (const char* env = std::getenv("LAB_THREADS")) {
    int n = std::atoi(env);
    if (n >= 1) return n;
  }
  unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

struct Wilson {
  double lo, hi;
};

inline Wilson wilson_interval(long long hits, long long n) {
  const double z = 1.959963984540054;  // 97.5th normal percentile
  double p = static_cast<double>(hits) / static_cast<double>(n);
  double z2n = z * z / static_cast<double>(n);
  double center = (p + z2n / 2) / (1 + z2n);
  double half = z *
                std::sqrt(p * (1 - p) / static_cast<double>(n) + z2n / (4 * static_cast<double>(n))) /
                (1 + z2n);
  return {std::max(0.0, center - half), std::min(1.0, center + half)};
}

}  // namespace detail

// One certified trial outcome: the defect mu, or nothing if rejected.
using TrialOutcome = std::optional<Rational>;

template <class PresS>
TrialOutcome run_trial(const SheafPresentation<PresS>& pres, const SlopePanel& expect,
                       const ExperimentConfig& cfg, long long trial) {
  auto eng = detail::trial_engine(cfg.seed, trial);
  RationalCurveMap<Fp> s = detail::random_curve(eng, cfg.curve_degree, cfg.field_order);
  if (s.x.is_zero() && s.y.is_zero() && s.z.is_zero()) return std::nullopt;
  try {
    SplittingType split = splitting_type(pullback(pres, s));
    return sup_distance(split.panel(), expect);
  } catch (const BasePointedCurve&) {
    return std::nullopt;
  } catch (const CertificationFailure&) {
    return std::nullopt;
  } catch (const WindowInconsistency&) {
    return std::nullopt;
  }
}

// N coefficient-uniform curves over F_q; rejected (base-pointed or
// uncertified) samples are counted but excluded from frequency
// denominators.  Bit-reproducible for a fixed (config, seed) at any
// worker count.
inline JumpHistogram sample_jump_distribution(const SheafPresentation<Fp>& pres,
                                              const ExperimentConfig& cfg,
                                              std::optional<FiltrationData> hn = std::nullopt) {
  cfg.validate();
  FiltrationData filt = hn ? *hn : hn_filtration_p2(pres);
  SlopePanel expect = expected_panel(filt, cfg.curve_degree);

  std::vector<TrialOutcome> outcomes(static_cast<std::size_t>(cfg.trials));
  const int workers = std::min<long long>(detail::worker_count(), cfg.trials);
  auto span = [&](int w, long long& lo, long long& hi) {
    lo = cfg.trials * w / workers;
    hi = cfg.trials * (w + 1) / workers;
  };
  if (workers <= 1) {
    for (long long t = 0; t < cfg.trials; ++t)
      outcomes[static_cast<std::size_t>(t)] = run_trial(pres, expect, cfg, t);
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) {
      long long lo, hi;
      span(w, lo, hi);
      pool.emplace_back([&, lo, hi] {
        for (long long t = lo; t < hi; ++t)
          outcomes[static_cast<std::size_t>(t)] = run_trial(pres, expect, cfg, t);
      });
    }
    for (auto& th : pool) th.join();
  }

  JumpHistogram hist;
  for (const auto& o : outcomes) {
    if (!o) {
      ++hist.rejected;
      continue;
    }
    ++hist.certified;
    ++hist.mu_counts[*o];
  }
  hist.degenerate = hist.rejected * 2 > cfg.trials;

  for (const Rational& thr : cfg.jump_thresholds) {
    ThresholdEstimate est;
    est.threshold = thr;
    for (const auto& [mu, count] : hist.mu_counts)
      if (mu >= thr) est.hits += count;
    if (hist.certified > 0) {
      est.freq = static_cast<double>(est.hits) / static_cast<double>(hist.certified);
      const double lnq = std::log(static_cast<double>(cfg.field_order));
      auto w = detail::wilson_interval(est.hits, hist.certified);
      if (est.freq > 0) est.chat = -std::log(est.freq) / lnq;
      est.ci_lo = w.hi > 0 ? std::max(0.0, -std::log(w.hi) / lnq) : 0.0;
      if (w.lo > 0) est.ci_hi = -std::log(w.lo) / lnq;
    }
    hist.estimates.push_back(std::move(est));
  }
  return hist;
}

struct LineRecord {
  std::array<std::uint64_t, 3> normal;  // a x + b y + c z = 0, normalized leading 1
  bool certified = false;
  SplittingType splitting;
  Rational mu;  // defect against the expected panel of the bundle
  bool jumping = false;
};

struct LineEnumeration {
  std::vector<LineRecord> lines;
  Rational min_mu;  // over certified lines
  long long jumping_count = 0;
};

// Exhaustive splitting over all q^2 + q + 1 lines of P^2(F_q); a line is
// flagged as jumping when its defect exceeds the minimal observed one.
inline LineEnumeration enumerate_lines(const SheafPresentation<Fp>& pres, std::uint64_t q,
                                       std::optional<FiltrationData> hn = std::nullopt) {
  if (!is_prime_u64(q)) throw std::invalid_argument("enumerate_lines: q must be prime");
  FiltrationData filt = hn ? *hn : hn_filtration_p2(pres);
  SlopePanel expect = expected_panel(filt, 1);

  std::vector<std::array<std::uint64_t, 3>> normals;
  for (std::uint64_t b = 0; b < q; ++b)
    for (std::uint64_t c = 0; c < q; ++c) normals.push_back({1, b, c});
  for (std::uint64_t c = 0; c < q; ++c) normals.push_back({0, 1, c});
  normals.push_back({0, 0, 1});

  LineEnumeration out;
  bool have_min = false;
  for (const auto& n : normals) {
    LineRecord rec;
    rec.normal = n;
    // parametrize the line by a kernel basis of its normal covector
    MatrixX<Fp> cov(1, 3);
    for (int i = 0; i < 3; ++i)
      cov(0, i) = Fp(static_cast<long long>(n[static_cast<std::size_t>(i)]), q);
    MatrixX<Fp> pts = kernel_basis(cov);
    RationalCurveMap<Fp> s;
    s.degree = 1;
    HomForm<Fp>* coords[3] = {&s.x, &s.y, &s.z};
    for (int i = 0; i < 3; ++i) {
      *coords[i] = HomForm<Fp>(2, 1);
      coords[i]->coeff(1, 0) = pts(i, 0);
      coords[i]->coeff(0, 1) = pts(i, 1);
    }
    try {
      rec.splitting = splitting_type(pullback(pres, s));
      rec.mu = sup_distance(rec.splitting.panel(), expect);
      rec.certified = true;
      if (!have_min || rec.mu < out.min_mu) {
        out.min_mu = rec.mu;
        have_min = true;
      }
    } catch (const std::runtime_error&) {
      rec.certified = false;  // flagged, not dropped
    }
    out.lines.push_back(std::move(rec));
  }
  for (auto& rec : out.lines) {
    rec.jumping = rec.certified && rec.mu > out.min_mu;
    if (rec.jumping) ++out.jumping_count;
  }
  return out;
}

struct ConicExampleReport {
  int d = 0;
  long long general_count = 0;
  long long through_count = 0;
  std::map<Rational, long long> general_mu;  // distribution on conics avoiding the point
  std::map<Rational, long long> through_mu;  // distribution on conics through it
  Rational general_mean;
  Rational through_mean;
  Rational gap;  // through_mean - general_mean
};

namespace detail {

// smooth conic: the three binary quadrics are linearly independent
inline bool conic_is_smooth(const RationalCurveMap<Fp>& s) {
  MatrixX<Fp> m(3, 3);
  const HomForm<Fp>* f[3] = {&s.x, &s.y, &s.z};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j <= 2; ++j) m(i, j) = f[i]->coeff(2 - j, j);
  return rank(m) == 3;
}

}  // namespace detail

// Splitting distributions of the kernel bundle ker(x^d, y^d, z^{2d-1})
// on random smooth conics avoiding [0:0:1] versus passing through it.
inline ConicExampleReport verify_conic_example(int d, std::uint64_t q, long long trials,
                                               std::uint64_t seed = 0) {
  if (d < 1) throw std::invalid_argument("verify_conic_example: d >= 1");
  if (!is_prime_u64(q)) throw std::invalid_argument("verify_conic_example: q must be prime");
  SheafPresentation<Fp> pres = conic_example_bundle<Fp>(d);
  FiltrationData filt = hn_filtration_p2(pres);
  SlopePanel expect = expected_panel(filt, 2);

  ConicExampleReport rep;
  rep.d = d;
  Rational general_sum = 0, through_sum = 0;
  const long long attempt_cap = trials * 400;

  long long attempt = 0;
  // group (i): uniform smooth conics with [0:0:1] off the image
  while (rep.general_count < trials && attempt < attempt_cap) {
    auto eng = detail::trial_engine(seed, attempt++);
    RationalCurveMap<Fp> s = detail::random_curve(eng, 2, q);
    if (s.x.is_zero() && s.y.is_zero() && s.z.is_zero()) continue;
    if (!detail::conic_is_smooth(s)) continue;
    // through [0:0:1] iff x and y share a projective root
    if (s.x.is_zero() || s.y.is_zero() || scalar_is_zero(resultant(s.x, s.y))) continue;
    try {
      SplittingType split = splitting_type(pullback(pres, s));
      Rational mu = sup_distance(split.panel(), expect);
      ++rep.general_mu[mu];
      general_sum += mu;
      ++rep.general_count;
    } catch (const std::runtime_error&) {
    }
  }

  attempt = 0;
  // group (ii): x and y share a linear factor, so the image meets [0:0:1]
  while (rep.through_count < trials && attempt < attempt_cap) {
    auto eng = detail::trial_engine(~seed, attempt++);
    HomForm<Fp> lam = detail::random_binary_form(eng, 1, q);
    HomForm<Fp> a = detail::random_binary_form(eng, 1, q);
    HomForm<Fp> b = detail::random_binary_form(eng, 1, q);
    RationalCurveMap<Fp> s;
    s.degree = 2;
    s.x = lam * a;
    s.y = lam * b;
    s.z = detail::random_binary_form(eng, 2, q);
    if (lam.is_zero() || (s.x.is_zero() && s.y.is_zero() && s.z.is_zero())) continue;
    if (!detail::conic_is_smooth(s)) continue;
    try {
      SplittingType split = splitting_type(pullback(pres, s));
      Rational mu = sup_distance(split.panel(), expect);
      ++rep.through_mu[mu];
      through_sum += mu;
      ++rep.through_count;
    } catch (const std::runtime_error&) {
    }
  }

  if (rep.general_count == 0 || rep.through_count == 0)
    throw std::runtime_error("verify_conic_example: sampling failed to accept any conics");
  rep.general_mean = general_sum / rep.general_count;
  rep.through_mean = through_sum / rep.through_count;
  rep.gap = rep.through_mean - rep.general_mean;
  return rep;
}

}  // namespace jumplab
