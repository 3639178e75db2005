#pragma once

// Slope-panel calculus: filtration panels, sup-distance, expected panels,
// prefix-sum majorization and the mediant inequality check.
// Everything here is exact rational arithmetic.

#include "jumplab/scalar.hpp"

#include <algorithm>
#include <stdexcept>
#include <vector>

namespace jumplab {

struct SlopePanel {
  std::vector<Rational> entries;  // non-increasing

  explicit SlopePanel(std::vector<Rational> e) : entries(std::move(e)) {
    if (!std::is_sorted(entries.begin(), entries.end(),
                        [](const Rational& a, const Rational& b) { return a > b; }))
      throw std::invalid_argument("SlopePanel: entries must be non-increasing");
  }

  std::size_t size() const { return entries.size(); }
  Rational sum() const {
    Rational s = 0;
    for (const auto& e : entries) s += e;
    return s;
  }
};

struct FiltrationData {
  struct Piece {
    int rank;
    Rational slope;
  };
  std::vector<Piece> pieces;  // first subquotient to last

  int total_rank() const {
    int r = 0;
    for (const auto& p : pieces) r += p.rank;
    return r;
  }
};

struct FiltrationPanel {
  std::vector<Rational> in_filtration_order;  // slope repeated rank times
  SlopePanel sorted;
};

inline FiltrationPanel panel_from_filtration(const FiltrationData& f) {
  if (f.pieces.empty())
    throw std::invalid_argument("panel_from_filtration: empty filtration");
  std::vector<Rational> flat;
  for (const auto& p : f.pieces) {
    if (p.rank <= 0)
      throw std::invalid_argument("panel_from_filtration: ranks must be positive");
    for (int i = 0; i < p.rank; ++i) flat.push_back(p.slope);
  }
  std::vector<Rational> sorted = flat;
  std::sort(sorted.begin(), sorted.end(),
            [](const Rational& a, const Rational& b) { return a > b; });
  return FiltrationPanel{std::move(flat), SlopePanel(std::move(sorted))};
}

inline Rational sup_distance(const SlopePanel& p, const SlopePanel& q) {
  if (p.size() != q.size())
    throw std::invalid_argument("sup_distance: length mismatch");
  Rational best = 0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    Rational d = p.entries[i] - q.entries[i];
    if (d < 0) d = -d;
    if (d > best) best = d;
  }
  return best;
}

// Expected panel for the restriction to a degree-d curve: the HN slopes
// on P^2 (taken against the line class) scaled by d.
inline SlopePanel expected_panel(const FiltrationData& hn, int d) {
  if (d < 1) throw std::invalid_argument("expected_panel: d >= 1");
  FiltrationPanel fp = panel_from_filtration(hn);
  std::vector<Rational> scaled;
  scaled.reserve(fp.sorted.size());
  for (const auto& e : fp.sorted.entries) scaled.push_back(e * d);
  return SlopePanel(std::move(scaled));
}

// True iff hn_panel dominates the other panel in every prefix sum and
// the totals agree.
inline bool majorization_check(const SlopePanel& hn_panel, const SlopePanel& other) {
  if (hn_panel.size() != other.size())
    throw std::invalid_argument("majorization_check: length mismatch");
  Rational pa = 0, pb = 0;
  for (std::size_t i = 0; i < hn_panel.size(); ++i) {
    pa += hn_panel.entries[i];
    pb += other.entries[i];
    if (pa < pb) return false;
  }
  return pa == pb;
}

struct MediantPair {
  long long a;
  long long a_prime;
  long long b;  // positive
};

// |sum a' - sum a| / sum b <= max |a'_i - a_i| / b_i; the inequality
// always holds, so this doubles as a property-test harness.
inline bool mediant_check(const std::vector<MediantPair>& pairs) {
  if (pairs.empty()) throw std::invalid_argument("mediant_check: no pairs");
  long long sa = 0, sap = 0, sb = 0;
  Rational best = 0;
  for (const auto& p : pairs) {
    if (p.b <= 0) throw std::invalid_argument("mediant_check: b must be positive");
    sa += p.a;
    sap += p.a_prime;
    sb += p.b;
    Rational r = Rational(p.a_prime >= p.a ? p.a_prime - p.a : p.a - p.a_prime, p.b);
    if (r > best) best = r;
  }
  Rational lhs = Rational(sap >= sa ? sap - sa : sa - sap, sb);
  return lhs <= best;
}

}  // namespace jumplab
