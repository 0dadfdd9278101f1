#pragma once

#include <span>
#include <vector>

#include "corrauct/density.hpp"
#include "corrauct/prior.hpp"

namespace corrauct {

/// One sample of a posted-price revenue curve on a line of the prior, in
/// probability-of-sale coordinates. `skyline` is the running maximum of
/// `revenue` read from q = 0; `envelope` the upper concave envelope of the
/// skyline (anchored at (0,0)), so envelope >= skyline >= revenue pointwise.
struct CurvePoint {
  Rat q;
  Rat revenue;
  Rat skyline;
  Rat envelope;
};

/// Discrete curve for one bidder with the other coordinates fixed. q is the
/// conditional sale probability on the line (the line's mass normalizes it);
/// samples come out ordered by increasing q (decreasing price). Throws when
/// the line carries no mass.
std::vector<CurvePoint> revenue_curve_discrete(const JointPrior& prior, int bidder,
                                               std::span<const int> fixed_point);

struct CurvePointD {
  double q;
  double revenue;
  double skyline;
  double envelope;
};

/// Continuous counterpart: prices sampled on a uniform grid of the given size,
/// conditional on the other bidder's value. bidder 0 varies x, 1 varies y.
std::vector<CurvePointD> revenue_curve_continuous(const DensityOracle& oracle, int bidder,
                                                  double fixed_other, int samples);

}  // namespace corrauct
