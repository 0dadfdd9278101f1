#pragma once

#include <memory>
#include <string>
#include <vector>

#include "corrauct/rational.hpp"

namespace corrauct {

/// Continuous joint density on [0,1]^2, accessible pointwise. Implementations
/// document an l1 Lipschitz bound and a positive lower bound; both feed the
/// quadrature error ledger. Densities integrate to 1 up to the builders'
/// normalization accuracy.
class DensityOracle {
 public:
  virtual ~DensityOracle() = default;
  virtual double density(double x, double y) const = 0;
  /// |phi(p) - phi(q)| <= lipschitz() * ||p - q||_1.
  virtual double lipschitz() const = 0;
  virtual double min_density() const = 0;
  virtual std::string name() const = 0;

  /// density() with the floor contract enforced; throws std::domain_error
  /// when a sample dips below min_density (beyond rounding slack).
  double checked_density(double x, double y) const;
};

/// phi = 1 everywhere. lipschitz 0, floor 1.
class UniformDensity final : public DensityOracle {
 public:
  double density(double, double) const override { return 1.0; }
  double lipschitz() const override { return 0.0; }
  double min_density() const override { return 1.0; }
  std::string name() const override { return "uniform"; }
};

/// floor-mixed product of two Beta(a,b) marginals:
///   phi(x,y) = floor + (1-floor) * beta_ab(x) * beta_ab(y).
/// The Lipschitz bound is a sampled sup of the derivative times a safety
/// factor, recorded at construction. Requires a >= 1, b >= 1, floor in (0,1).
class ProductBetaDensity final : public DensityOracle {
 public:
  ProductBetaDensity(double a, double b, double floor = 0.1);
  double density(double x, double y) const override;
  double lipschitz() const override { return lipschitz_; }
  double min_density() const override { return floor_; }
  std::string name() const override;

 private:
  double marginal(double t) const;
  double a_, b_, floor_, log_beta_, lipschitz_;
};

/// floor-mixed isotropic Gaussian bump centered at (cx, cy), normalized to
/// integrate to 1 over the unit square.
class GaussianBumpDensity final : public DensityOracle {
 public:
  GaussianBumpDensity(double cx, double cy, double sigma, double floor = 0.1);
  double density(double x, double y) const override;
  double lipschitz() const override { return lipschitz_; }
  double min_density() const override { return min_density_; }
  std::string name() const override;

 private:
  double cx_, cy_, sigma_, floor_, scale_, lipschitz_, min_density_;
};

/// Factory for the CLI's builtin oracles: "uniform", "product-beta",
/// "gaussian-bump" (parameters as name(a,b,...) or defaults).
std::unique_ptr<DensityOracle> make_builtin_density(const std::string& spec);

/// Cell masses of the two marginal profit contributions on the n x n grid,
/// computed as suffix-max differences of the posted-price profile (never by
/// differentiating through the ironing kinks) and integrated per cell.
///
/// Error ledger, eps = 1/n, lambda = oracle Lipschitz bound:
///   - fine step h = eps^2 / (4 (1 + lambda)) bounds the profile error by
///     (1+lambda)h/2 + lambda h/8 <= eps^2/4 per evaluation,
///   - midpoint panels K = max(1, ceil(lambda * n)) bound the transverse
///     integration error by lambda eps^2 / (2K) <= eps^3/2,
///   - so each cell is exact within eps^3 and the whole grid within eps.
/// Cells are clamped at zero and quantized to 48 fractional bits so the
/// downstream exact solver sees one shared power-of-two denominator.
struct DiscretizedDensity {
  int resolution = 0;
  std::vector<Rat> f_cell;  // row-major (i * n + j), i = bidder-1 cell
  std::vector<Rat> g_cell;
  double per_cell_tolerance = 0;
  double total_error_bound = 0;
};

DiscretizedDensity discretize_density(const DensityOracle& oracle, int resolution);

/// Single-cell view of the same quadrature (bidder 0 or 1, cell(i,j),
/// epsilon = 1/resolution). Matches the corresponding DiscretizedDensity entry.
Rat cell_mass_continuous(const DensityOracle& oracle, int bidder, int i, int j, int resolution);

}  // namespace corrauct
