#include "thinfilm/lemmas.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "thinfilm/error.hpp"

namespace thinfilm {

void GNParams::validate() const {
  std::ostringstream msg;
  if (!(a > 1.0)) msg << "a must exceed 1; ";
  if (!(b > 0.0 && b < a)) msg << "b must lie in (0, a); ";
  if (!(d > 1.0)) msg << "d must exceed 1; ";
  if (!(k >= 0 && k < j)) msg << "need 0 <= k < j; ";
  if (dim < 1) msg << "dimension must be at least 1; ";
  if (!msg.str().empty()) throw ConfigError("GNParams: " + msg.str());
}

double gn_theta(const GNParams& p) {
  p.validate();
  const double nn = p.dim;
  const double num = 1.0 / p.b + p.k / nn - 1.0 / p.a;
  const double den = 1.0 / p.b + p.j / nn - 1.0 / p.d;
  if (!(den > 0.0)) throw ConfigError("gn_theta: nonpositive denominator");
  const double theta = num / den;
  const double lo = static_cast<double>(p.k) / p.j;
  if (!(theta >= lo && theta < 1.0)) {
    std::ostringstream msg;
    msg << "gn_theta: theta = " << theta << " outside [" << lo << ", 1)";
    throw ConfigError(msg.str());
  }
  return theta;
}

std::vector<GNProfile> default_gn_catalog() {
  std::vector<GNProfile> out;
  // (x - c)^m
  for (int m = 1; m <= 5; ++m) {
    for (double c : {0.0, 0.35, 0.8, 1.6}) {
      out.push_back({"poly m=" + std::to_string(m) + " c=" + std::to_string(c), [m, c](double x, int order) {
                       if (order > m) return 0.0;
                       double coef = 1.0;
                       for (int q = 0; q < order; ++q) coef *= (m - q);
                       return coef * std::pow(x - c, m - order);
                     }});
    }
  }
  // sin(omega x + phi)
  for (double omega : {1.0, 3.0, 7.0, 15.0, 31.0}) {
    for (double phi : {0.0, 0.7, 1.9, 3.1}) {
      out.push_back({"sin w=" + std::to_string(omega) + " p=" + std::to_string(phi), [omega, phi](double x, int order) {
                       return std::pow(omega, order) * std::sin(omega * x + phi + order * std::numbers::pi / 2.0);
                     }});
    }
  }
  // exp(lambda x)
  for (double lam : {-8.0, -4.0, -2.0, -1.0, -0.5, 0.5, 1.0, 2.0, 4.0, 8.0}) {
    out.push_back({"exp l=" + std::to_string(lam),
                   [lam](double x, int order) { return std::pow(lam, order) * std::exp(lam * x); }});
  }
  return out;
}

namespace {

// 5-point Gauss-Legendre on [-1, 1].
constexpr std::array<double, 5> kNodes = {-0.9061798459386640, -0.5384693101056831, 0.0, 0.5384693101056831,
                                          0.9061798459386640};
constexpr std::array<double, 5> kWeights = {0.2369268850561891, 0.4786286704993665, 0.5688888888888889,
                                            0.4786286704993665, 0.2369268850561891};

double lp_norm(const std::function<double(double)>& g, double p, double r, double R, int panels) {
  const double h = (R - r) / panels;
  double acc = 0.0;
  for (int q = 0; q < panels; ++q) {
    const double mid = r + (q + 0.5) * h;
    for (std::size_t k = 0; k < kNodes.size(); ++k) {
      acc += kWeights[k] * std::pow(std::abs(g(mid + 0.5 * h * kNodes[k])), p);
    }
  }
  return std::pow(0.5 * h * acc, 1.0 / p);
}

}  // namespace

GNCheckReport gn_empirical_check(std::span<const GNProfile> catalog, const GNParams& p, double r, double R,
                                 int panels) {
  if (!(R > r)) throw ConfigError("gn_empirical_check: degenerate shell, need R > r");
  if (catalog.empty()) throw ConfigError("gn_empirical_check: empty catalog");
  if (p.dim != 1) throw ConfigError("gn_empirical_check: only dimension 1 is supported");
  if (panels < 1) throw ConfigError("gn_empirical_check: panels must be positive");
  const double theta = gn_theta(p);
  const double shell = std::pow(R - r, -(p.a - p.b) * p.dim / (p.a * p.b) - p.k);

  GNCheckReport rep;
  rep.max_ratio = 0.0;
  for (const auto& prof : catalog) {
    const auto at = [&](int order) { return [&prof, order](double x) { return prof.deriv(x, order); }; };
    const double vb = lp_norm(at(0), p.b, r, R, panels);
    if (!(vb > 0.0)) {
      rep.ratios.push_back(std::numeric_limits<double>::quiet_NaN());
      rep.notes.push_back(prof.name + ": profile vanishes on the shell, ratio undefined");
      continue;
    }
    const double num = lp_norm(at(p.k), p.a, r, R, panels);
    const double top = lp_norm(at(p.j), p.d, r, R, panels);
    const double den = std::pow(top, theta) * std::pow(vb, 1.0 - theta) + shell * vb;
    const double ratio = num / den;
    rep.ratios.push_back(ratio);
    ++rep.evaluated;
    if (ratio > rep.max_ratio) {
      rep.max_ratio = ratio;
      rep.argmax = prof.name;
    }
  }
  return rep;
}

double interpolate_samples(std::span<const double> s, std::span<const double> f, double x) {
  if (s.empty() || s.size() != f.size()) throw ConfigError("interpolate_samples: bad sample arrays");
  if (x <= s.front()) return f.front();
  if (x >= s.back()) return f.back();
  const auto it = std::upper_bound(s.begin(), s.end(), x);
  const std::size_t i = static_cast<std::size_t>(it - s.begin());
  const double t = (x - s[i - 1]) / (s[i] - s[i - 1]);
  return f[i - 1] + t * (f[i] - f[i - 1]);
}

StampacchiaResult stampacchia_threshold(std::span<const double> s, std::span<const double> f, double eps,
                                        double s0) {
  if (s.size() < 2 || s.size() != f.size()) throw ConfigError("stampacchia_threshold: need matching sample arrays");
  if (!(eps > 0.0 && eps < 1.0)) throw ConfigError("stampacchia_threshold: eps must lie in (0, 1)");
  double fmax = 0.0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (!(f[i] >= 0.0)) throw ConfigError("stampacchia_threshold: f must be nonnegative");
    if (i > 0 && !(s[i] > s[i - 1])) throw ConfigError("stampacchia_threshold: s must be strictly ascending");
    if (i > 0 && f[i] < f[i - 1]) {
      std::ostringstream msg;
      msg << "stampacchia_threshold: f decreases at s = " << s[i];
      throw ConfigError(msg.str());
    }
    fmax = std::max(fmax, f[i]);
  }
  const double tol = 1e-12 * std::max(1.0, fmax);
  for (std::size_t i = 0; i < s.size() && s[i] <= s0; ++i) {
    const double lhs = interpolate_samples(s, f, s[i] - f[i]);
    if (lhs > eps * f[i] + tol) {
      std::ostringstream msg;
      msg.precision(17);
      msg << "stampacchia_threshold: hypothesis f(s - f(s)) <= eps f(s) fails at s = " << s[i] << " (" << lhs
          << " > " << eps * f[i] << ")";
      throw ConfigError(msg.str());
    }
  }
  StampacchiaResult res;
  res.tolerance = tol;
  res.s_star = s0 - interpolate_samples(s, f, s0) / (1.0 - eps);
  for (std::size_t i = 0; i < s.size() && s[i] <= res.s_star; ++i) res.max_f_below = std::max(res.max_f_below, f[i]);
  res.verified = res.max_f_below <= tol;
  return res;
}

RateConstants rate_constants(double n) {
  if (!(n > 1.0 && n < 2.0)) throw ConfigError("rate_constants: requires 1 < n < 2, got " + std::to_string(n));
  const double q = 8.0 - 3.0 * n;
  RateConstants c{};
  c.alpha1 = 4.0 * (n + 4.0) / q;
  c.alpha2 = 4.0 * (6.0 - n) / q;
  c.beta1 = 4.0 * (2.0 - n) / q;
  c.beta2 = 2.0 * (2.0 - n) / q;
  c.kappa1 = 4.0 * n / q;
  c.kappa2 = 2.0 * n / q;
  c.kappa3 = n / (2.0 - n);
  c.kappa = (1.0 + c.kappa1) * (1.0 + c.kappa2);
  c.gamma = std::max(std::pow(2.0, -c.kappa1 / (4.0 * c.kappa)), std::pow(2.0, -c.kappa2 / (2.0 * c.kappa)));
  return c;
}

PowerSumMin minimize_power_sum(double a, double b) {
  if (!(a > 0.0) || !(b > 0.0)) throw ConfigError("minimize_power_sum: a and b must be positive");
  const double x = std::pow(a * b, 1.0 / (1.0 + b));
  return {x, (1.0 + b) / b * x};
}

}  // namespace thinfilm
