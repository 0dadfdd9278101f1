#include "corrauct/revenue_curve.hpp"

#include <algorithm>
#include <stdexcept>

namespace corrauct {

namespace {

// Upper concave envelope through (0,0) and the sample points, evaluated back
// at the sample abscissas. Monotone-chain upper hull; exact when T = Rat.
template <typename T>
std::vector<T> upper_envelope(const std::vector<T>& q, const std::vector<T>& y) {
  struct Pt {
    T x, y;
  };
  std::vector<Pt> pts;
  pts.push_back({T(0), T(0)});
  for (std::size_t k = 0; k < q.size(); ++k) {
    // zero-mass levels repeat an abscissa; keep the highest point there
    if (!pts.empty() && pts.back().x == q[k]) {
      if (y[k] > pts.back().y) pts.back().y = y[k];
      continue;
    }
    pts.push_back({q[k], y[k]});
  }
  // points are sorted by x (q ascending); keep the upper hull
  std::vector<Pt> hull;
  for (const Pt& p : pts) {
    while (hull.size() >= 2) {
      const Pt& a = hull[hull.size() - 2];
      const Pt& b = hull[hull.size() - 1];
      // drop b when it lies on or below segment a-p
      if ((b.y - a.y) * (p.x - a.x) <= (p.y - a.y) * (b.x - a.x)) {
        hull.pop_back();
      } else {
        break;
      }
    }
    hull.push_back(p);
  }
  std::vector<T> out(q.size());
  std::size_t seg = 0;
  for (std::size_t k = 0; k < q.size(); ++k) {
    while (seg + 1 < hull.size() && hull[seg + 1].x < q[k]) ++seg;
    if (seg + 1 >= hull.size()) {
      out[k] = hull.back().y;
      continue;
    }
    const Pt& a = hull[seg];
    const Pt& b = hull[seg + 1];
    if (b.x == a.x) {
      out[k] = std::max(a.y, b.y);
    } else {
      out[k] = a.y + (b.y - a.y) * (q[k] - a.x) / (b.x - a.x);
    }
  }
  return out;
}

}  // namespace

std::vector<CurvePoint> revenue_curve_discrete(const JointPrior& prior, int bidder,
                                               std::span<const int> fixed_point) {
  prior.validate();
  if (bidder < 0 || bidder >= prior.bidders()) throw std::out_of_range("bidder out of range");
  const int n = prior.grid.size(bidder);

  std::vector<int> point(fixed_point.begin(), fixed_point.end());
  if (point.size() != static_cast<std::size_t>(prior.bidders())) {
    throw std::invalid_argument("fixed point dimension mismatch");
  }
  point[bidder] = 0;
  Rat line_mass = 0;
  for (int k = 0; k < n; ++k) {
    point[bidder] = k;
    line_mass += prior.at(point);
  }
  if (line_mass == 0) throw std::invalid_argument("revenue curve on a zero-mass line");

  // prices descending <=> q ascending
  std::vector<Rat> q(n), rev(n);
  Rat suffix = 0;
  for (int k = n - 1; k >= 0; --k) {
    point[bidder] = k;
    suffix += prior.at(point);
    std::size_t pos = static_cast<std::size_t>(n - 1 - k);
    q[pos] = suffix / line_mass;
    rev[pos] = prior.grid.value(bidder, k) * q[pos];
  }

  std::vector<Rat> sky(n);
  Rat running = 0;
  for (int k = 0; k < n; ++k) {
    if (rev[k] > running) running = rev[k];
    sky[k] = running;
  }
  std::vector<Rat> env = upper_envelope(q, sky);

  std::vector<CurvePoint> out(n);
  for (int k = 0; k < n; ++k) out[k] = {q[k], rev[k], sky[k], env[k]};
  return out;
}

std::vector<CurvePointD> revenue_curve_continuous(const DensityOracle& oracle, int bidder,
                                                  double fixed_other, int samples) {
  if (samples < 2) throw std::invalid_argument("need at least two samples");
  auto phi = [&](double t) {
    return bidder == 0 ? oracle.checked_density(t, fixed_other)
                       : oracle.checked_density(fixed_other, t);
  };
  // trapezoid suffix integrals on the sample grid
  const int n = samples;
  const double h = 1.0 / n;
  std::vector<double> suffix(n + 1, 0.0), value(n + 1);
  for (int k = 0; k <= n; ++k) value[k] = phi(k * h);
  for (int k = n - 1; k >= 0; --k) suffix[k] = suffix[k + 1] + h * 0.5 * (value[k] + value[k + 1]);
  const double line_total = suffix[0];

  std::vector<double> q(n + 1), rev(n + 1);
  for (int k = 0; k <= n; ++k) {
    int price_idx = n - k;  // descending price
    q[k] = suffix[price_idx] / line_total;
    rev[k] = (price_idx * h) * q[k];
  }
  std::vector<double> sky(n + 1);
  double running = 0.0;
  for (int k = 0; k <= n; ++k) {
    running = std::max(running, rev[k]);
    sky[k] = running;
  }
  std::vector<double> env = upper_envelope(q, sky);

  std::vector<CurvePointD> out(n + 1);
  for (int k = 0; k <= n; ++k) out[k] = {q[k], rev[k], sky[k], env[k]};
  return out;
}

}  // namespace corrauct
