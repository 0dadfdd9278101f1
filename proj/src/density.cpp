#include "corrauct/density.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace corrauct {

namespace {

constexpr double kFloorSlack = 1e-9;
constexpr int kQuantizeBits = 48;

}  // namespace

double DensityOracle::checked_density(double x, double y) const {
  double value = density(x, y);
  if (!std::isfinite(value) || value < min_density() - kFloorSlack) {
    throw std::domain_error("oracle '" + name() + "' returned density " + std::to_string(value) +
                            " below its floor " + std::to_string(min_density()));
  }
  return value;
}

ProductBetaDensity::ProductBetaDensity(double a, double b, double floor)
    : a_(a), b_(b), floor_(floor) {
  if (floor <= 0 || floor >= 1) throw std::invalid_argument("floor must be in (0,1)");
  bool a_ok = a == 1.0 || a >= 2.0;
  bool b_ok = b == 1.0 || b >= 2.0;
  if (!a_ok || !b_ok) {
    throw std::invalid_argument("product-beta needs a,b = 1 or >= 2 for a finite slope bound");
  }
  log_beta_ = std::lgamma(a_) + std::lgamma(b_) - std::lgamma(a_ + b_);
  // Sampled sup of |d/dx marginal| and of the marginal itself; 1.5x slack.
  const int kSamples = 20000;
  double sup_pdf = 0, sup_slope = 0;
  double prev = marginal(0.0);
  for (int k = 1; k <= kSamples; ++k) {
    double t = static_cast<double>(k) / kSamples;
    double cur = marginal(t);
    sup_pdf = std::max(sup_pdf, cur);
    sup_slope = std::max(sup_slope, std::abs(cur - prev) * kSamples);
    prev = cur;
  }
  lipschitz_ = 1.5 * (1 - floor_) * sup_slope * sup_pdf;
}

double ProductBetaDensity::marginal(double t) const {
  if (t <= 0) return a_ == 1.0 ? std::exp(-log_beta_) : 0.0;
  if (t >= 1) return b_ == 1.0 ? std::exp(-log_beta_) : 0.0;
  return std::exp((a_ - 1) * std::log(t) + (b_ - 1) * std::log1p(-t) - log_beta_);
}

double ProductBetaDensity::density(double x, double y) const {
  return floor_ + (1 - floor_) * marginal(x) * marginal(y);
}

std::string ProductBetaDensity::name() const {
  std::ostringstream out;
  out << "product-beta(" << a_ << "," << b_ << "," << floor_ << ")";
  return out.str();
}

GaussianBumpDensity::GaussianBumpDensity(double cx, double cy, double sigma, double floor)
    : cx_(cx), cy_(cy), sigma_(sigma), floor_(floor) {
  if (sigma <= 0) throw std::invalid_argument("sigma must be positive");
  if (floor <= 0) throw std::invalid_argument("floor must be positive");
  auto segment = [sigma](double c) {
    double s = sigma * std::sqrt(2.0);
    return sigma * std::sqrt(std::acos(-1.0) / 2.0) * (std::erf((1 - c) / s) - std::erf(-c / s));
  };
  double z = floor_ + segment(cx) * segment(cy);
  scale_ = 1.0 / z;
  lipschitz_ = scale_ * std::exp(-0.5) / sigma;
  min_density_ = scale_ * floor_;
}

double GaussianBumpDensity::density(double x, double y) const {
  double dx = x - cx_, dy = y - cy_;
  return scale_ * (floor_ + std::exp(-(dx * dx + dy * dy) / (2 * sigma_ * sigma_)));
}

std::string GaussianBumpDensity::name() const {
  std::ostringstream out;
  out << "gaussian-bump(" << cx_ << "," << cy_ << "," << sigma_ << "," << floor_ << ")";
  return out.str();
}

std::unique_ptr<DensityOracle> make_builtin_density(const std::string& spec) {
  auto paren = spec.find('(');
  std::string base = spec.substr(0, paren);
  std::vector<double> args;
  if (paren != std::string::npos) {
    if (spec.back() != ')') throw std::invalid_argument("malformed oracle spec: " + spec);
    std::string inner = spec.substr(paren + 1, spec.size() - paren - 2);
    std::istringstream in(inner);
    std::string tok;
    while (std::getline(in, tok, ',')) args.push_back(std::stod(tok));
  }
  if (base == "uniform") {
    return std::make_unique<UniformDensity>();
  }
  if (base == "product-beta") {
    if (args.size() < 2 || args.size() > 3) {
      throw std::invalid_argument("product-beta needs (a,b[,floor])");
    }
    return std::make_unique<ProductBetaDensity>(args[0], args[1],
                                                args.size() > 2 ? args[2] : 0.1);
  }
  if (base == "gaussian-bump") {
    if (args.size() < 3 || args.size() > 4) {
      throw std::invalid_argument("gaussian-bump needs (cx,cy,sigma[,floor])");
    }
    return std::make_unique<GaussianBumpDensity>(args[0], args[1], args[2],
                                                 args.size() > 3 ? args[3] : 0.1);
  }
  throw std::invalid_argument("unknown oracle: " + spec);
}

namespace {

struct QuadratureShape {
  int fine_per_cell;   // fine steps per grid cell for the suffix integral
  int panels;          // midpoint panels per cell for the transverse integral
  double per_cell_tolerance;
};

QuadratureShape quadrature_shape(const DensityOracle& oracle, int n) {
  if (n < 2) throw std::invalid_argument("resolution must be at least 2");
  double lambda = oracle.lipschitz();
  double eps = 1.0 / n;
  double h_target = eps * eps / (4.0 * (1.0 + lambda));
  int fine_per_cell = std::max(2, static_cast<int>(std::ceil(eps / h_target)));
  int panels = std::max(1, static_cast<int>(std::ceil(lambda * n)));
  QuadratureShape q{fine_per_cell, panels, eps * eps * eps};
  return q;
}

/// One transverse line of cell masses for the given bidder: all n cells that
/// share the fixed transverse cell index. axis 0 varies x (bidder 1 / f),
/// axis 1 varies y (bidder 2 / g).
std::vector<double> cell_mass_line(const DensityOracle& oracle, int axis, int fixed_cell, int n,
                                   const QuadratureShape& q) {
  const double eps = 1.0 / n;
  const int nf = q.fine_per_cell * n;
  const double h = 1.0 / nf;

  std::vector<double> phi(nf + 1), suffix(nf + 1), profile(nf + 1);
  std::vector<double> cells(n, 0.0);

  for (int s = 0; s < q.panels; ++s) {
    double transverse = (fixed_cell + (s + 0.5) / q.panels) * eps;
    for (int k = 0; k <= nf; ++k) {
      double t = k * h;
      phi[k] = axis == 0 ? oracle.checked_density(t, transverse)
                         : oracle.checked_density(transverse, t);
    }
    suffix[nf] = 0.0;
    for (int k = nf - 1; k >= 0; --k) {
      suffix[k] = suffix[k + 1] + h * 0.5 * (phi[k] + phi[k + 1]);
    }
    profile[nf] = 1.0 * suffix[nf];
    for (int k = nf - 1; k >= 0; --k) {
      profile[k] = std::max(k * h * suffix[k], profile[k + 1]);
    }
    for (int i = 0; i < n; ++i) {
      double high = profile[i * q.fine_per_cell];
      double low = profile[(i + 1) * q.fine_per_cell];
      cells[i] += (high - low) * (eps / q.panels);
    }
  }
  for (double& c : cells) c = std::max(c, 0.0);
  return cells;
}

}  // namespace

DiscretizedDensity discretize_density(const DensityOracle& oracle, int resolution) {
  const int n = resolution;
  if (n > 1500) throw std::invalid_argument("resolution too large");
  QuadratureShape q = quadrature_shape(oracle, n);

  DiscretizedDensity out;
  out.resolution = n;
  out.per_cell_tolerance = q.per_cell_tolerance;
  out.total_error_bound = q.per_cell_tolerance * n * n;
  out.f_cell.assign(static_cast<std::size_t>(n) * n, Rat(0));
  out.g_cell.assign(static_cast<std::size_t>(n) * n, Rat(0));

  for (int j = 0; j < n; ++j) {
    std::vector<double> row = cell_mass_line(oracle, 0, j, n, q);
    for (int i = 0; i < n; ++i) {
      out.f_cell[static_cast<std::size_t>(i) * n + j] = quantize_dyadic(row[i], kQuantizeBits);
    }
  }
  for (int i = 0; i < n; ++i) {
    std::vector<double> col = cell_mass_line(oracle, 1, i, n, q);
    for (int j = 0; j < n; ++j) {
      out.g_cell[static_cast<std::size_t>(i) * n + j] = quantize_dyadic(col[j], kQuantizeBits);
    }
  }
  return out;
}

Rat cell_mass_continuous(const DensityOracle& oracle, int bidder, int i, int j, int resolution) {
  const int n = resolution;
  if (bidder != 0 && bidder != 1) throw std::out_of_range("bidder must be 0 or 1");
  if (i < 0 || i >= n || j < 0 || j >= n) throw std::out_of_range("cell out of range");
  QuadratureShape q = quadrature_shape(oracle, n);
  if (bidder == 0) {
    std::vector<double> row = cell_mass_line(oracle, 0, j, n, q);
    return quantize_dyadic(row[i], kQuantizeBits);
  }
  std::vector<double> col = cell_mass_line(oracle, 1, i, n, q);
  return quantize_dyadic(col[j], kQuantizeBits);
}

}  // namespace corrauct
