#pragma once

#include <algorithm>
#include <cmath>
#include <utility>
#include <vector>

#include "vdw/errors.hpp"
#include "vdw/scaled.hpp"

// Adaptive panel quadrature built on the Gauss-Legendre 7-point rule with its
// 15-point Kronrod extension.  Semi-infinite integrals are mapped to (0,1)
// with u = scale * t/(1-t); all nodes are interior, so integrands never get
// evaluated at u = 0 or at infinity.
//
// Everything here is single-threaded and splits panels in a fixed worst-first
// order, so results are bit-identical across runs and across caller thread
// counts.

namespace vdw {

struct QuadratureResult {
  double value = 0.0;
  double est_error = 0.0;
  int panels = 0;
};

namespace detail {

// G7-K15 nodes and weights (positive half; index 0 is the center point).
inline constexpr double kGK15Nodes[8] = {
    0.0,
    0.2077849550078984676006894,
    0.4058451513773971669066064,
    0.5860872354676911302941448,
    0.7415311855993944398638648,
    0.8648644233597690727897128,
    0.9491079123427585245261897,
    0.9914553711208126392068547,
};
inline constexpr double kGK15WeightsK[8] = {
    0.2094821410847278280129992,
    0.2044329400752988924141620,
    0.1903505780647854099132564,
    0.1690047266392679028265834,
    0.1406532597155259187451896,
    0.1047900103222501838398763,
    0.0630920926299785532907007,
    0.0229353220105292249637320,
};
// 7-point Gauss weights, aligned with the even-index Kronrod nodes.
inline constexpr double kGK15WeightsG[4] = {
    0.4179591836734693877551020,
    0.3818300505051189449503698,
    0.2797053914892766679014678,
    0.1294849661688696932706114,
};

template <class F>
inline std::pair<double, double> gk15_panel(F&& f, double a, double b) {
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double f0 = f(mid);
  double k15 = kGK15WeightsK[0] * f0;
  double g7 = kGK15WeightsG[0] * f0;
  for (int i = 1; i < 8; ++i) {
    const double dx = half * kGK15Nodes[i];
    const double fs = f(mid + dx) + f(mid - dx);
    k15 += kGK15WeightsK[i] * fs;
    if ((i & 1) == 0) g7 += kGK15WeightsG[i / 2] * fs;
  }
  k15 *= half;
  g7 *= half;
  return {k15, std::abs(k15 - g7)};
}

inline double pairwise_sum(const std::vector<double>& v, size_t lo, size_t hi) {
  if (hi - lo == 1) return v[lo];
  size_t mid = lo + (hi - lo) / 2;
  return pairwise_sum(v, lo, mid) + pairwise_sum(v, mid, hi);
}

}  // namespace detail

/// Integrate f over [a, b], splitting the worst panel until the summed
/// Kronrod error estimate drops below rel_tol * |integral|.  Throws
/// QuadratureError when the panel budget is exhausted first.
template <class F>
QuadratureResult integrate_adaptive(F&& f, double a, double b, double rel_tol,
                                    int max_panels, int initial_panels = 8) {
  struct Panel {
    double a, b, val, err;
  };
  std::vector<Panel> panels;
  panels.reserve(static_cast<size_t>(max_panels));
  const double h0 = (b - a) / initial_panels;
  for (int i = 0; i < initial_panels; ++i) {
    const double pa = a + i * h0;
    const double pb = (i + 1 == initial_panels) ? b : a + (i + 1) * h0;
    auto [val, err] = detail::gk15_panel(f, pa, pb);
    panels.push_back({pa, pb, val, err});
  }

  auto totals = [&panels]() {
    double v = 0.0, e = 0.0;
    for (const auto& p : panels) {
      v += p.val;
      e += p.err;
    }
    return std::pair<double, double>{v, e};
  };

  for (;;) {
    auto [total, err] = totals();
    if (err <= std::max(rel_tol * std::abs(total), 1e-300)) break;
    if (static_cast<int>(panels.size()) >= max_panels)
      throw QuadratureError("integrate_adaptive: panel budget exhausted",
                            static_cast<int>(panels.size()), err);
    // Worst panel first; ties broken by position so the split order is fixed.
    size_t worst = 0;
    for (size_t i = 1; i < panels.size(); ++i) {
      if (panels[i].err > panels[worst].err ||
          (panels[i].err == panels[worst].err && panels[i].a < panels[worst].a))
        worst = i;
    }
    const Panel p = panels[worst];
    const double mid = 0.5 * (p.a + p.b);
    auto [lv, le] = detail::gk15_panel(f, p.a, mid);
    auto [rv, re] = detail::gk15_panel(f, mid, p.b);
    panels[worst] = {p.a, mid, lv, le};
    panels.push_back({mid, p.b, rv, re});
  }

  std::sort(panels.begin(), panels.end(),
            [](const Panel& x, const Panel& y) { return x.a < y.a; });
  std::vector<double> vals(panels.size()), errs(panels.size());
  for (size_t i = 0; i < panels.size(); ++i) {
    vals[i] = panels[i].val;
    errs[i] = panels[i].err;
  }
  QuadratureResult out;
  out.value = detail::pairwise_sum(vals, 0, vals.size());
  out.est_error = detail::pairwise_sum(errs, 0, errs.size());
  out.panels = static_cast<int>(panels.size());
  return out;
}

/// Integrate f over (0, infinity) after the substitution u = scale * t/(1-t).
/// `scale` should sit near the scale where the integrand carries its mass.
template <class F>
QuadratureResult integrate_semi_infinite(F&& f, double scale, double rel_tol,
                                         int max_panels, int initial_panels = 8) {
  if (!(scale > 0.0)) throw std::domain_error("integrate_semi_infinite: scale must be > 0");
  auto g = [&f, scale](double t) {
    const double om = 1.0 - t;
    const double u = scale * t / om;
    const double fu = f(u);
    if (fu == 0.0) return 0.0;  // avoid 0 * inf from the Jacobian at t -> 1
    return fu * scale / (om * om);
  };
  return integrate_adaptive(g, 0.0, 1.0, rel_tol, max_panels, initial_panels);
}

}  // namespace vdw
