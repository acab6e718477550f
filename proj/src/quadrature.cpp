#include <array>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <vector>

#include "rcs/levy.hpp"

namespace rcs {

namespace {

// Gauss-Kronrod 15(7) nodes and weights on [-1,1].
constexpr std::array<double, 8> kGkNodes = {
    0.991455371120813, 0.949107912342759, 0.864864423359769, 0.741531185599394,
    0.586087235467691, 0.405845151377397, 0.207784955007898, 0.000000000000000};
constexpr std::array<double, 8> kGkWeights = {
    0.022935322010529, 0.063092092629979, 0.104790010322250, 0.140653259715525,
    0.169004726639267, 0.190350578064785, 0.204432940075298, 0.209482141084728};
constexpr std::array<double, 4> kGaussWeights = {
    0.129484966168870, 0.279705391489277, 0.381830050505119, 0.417959183673469};

struct PanelResult {
  double value;
  double error;
};

PanelResult gk15(const std::function<double(double)>& f, double a, double b) {
  double c = 0.5 * (a + b), h = 0.5 * (b - a);
  double resk = 0.0, resg = 0.0;
  for (int i = 0; i < 8; ++i) {
    double x = kGkNodes[i] * h;
    double fv = (i == 7) ? f(c) : f(c - x) + f(c + x);
    resk += kGkWeights[i] * fv;
    if (i % 2 == 1) resg += kGaussWeights[i / 2] * fv;
  }
  return {resk * h, std::fabs((resk - resg) * h)};
}

}  // namespace

double integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                          double abs_tol, double rel_tol) {
  struct Panel {
    double a, b, value, error;
  };
  PanelResult whole = gk15(f, a, b);
  std::vector<Panel> panels{{a, b, whole.value, whole.error}};
  double total = whole.value, err = whole.error;
  int iterations = 0;
  while (err > std::max(abs_tol, rel_tol * std::fabs(total))) {
    if (++iterations > 20000) throw std::domain_error("integrate_adaptive: no convergence");
    std::size_t worst = 0;
    for (std::size_t i = 1; i < panels.size(); ++i)
      if (panels[i].error > panels[worst].error) worst = i;
    Panel p = panels[worst];
    double mid = 0.5 * (p.a + p.b);
    if (mid <= p.a || mid >= p.b)
      throw std::domain_error("integrate_adaptive: interval exhausted");
    PanelResult left = gk15(f, p.a, mid), right = gk15(f, mid, p.b);
    total += left.value + right.value - p.value;
    err += left.error + right.error - p.error;
    panels[worst] = {p.a, mid, left.value, left.error};
    panels.push_back({mid, p.b, right.value, right.error});
  }
  return total;
}

double digamma(double x) {
  if (!(x > 0)) throw std::invalid_argument("digamma: x must be > 0");
  double acc = 0.0;
  while (x < 8.0) {
    acc -= 1.0 / x;
    x += 1.0;
  }
  // asymptotic series with Bernoulli coefficients
  double inv = 1.0 / x, inv2 = inv * inv;
  double s = std::log(x) - 0.5 * inv -
             inv2 * (1.0 / 12.0 - inv2 * (1.0 / 120.0 - inv2 * (1.0 / 252.0 -
                     inv2 * (1.0 / 240.0 - inv2 * (1.0 / 132.0)))));
  return acc + s;
}

double trigamma(double x) {
  if (!(x > 0)) throw std::invalid_argument("trigamma: x must be > 0");
  double acc = 0.0;
  while (x < 8.0) {
    acc += 1.0 / (x * x);
    x += 1.0;
  }
  double inv = 1.0 / x, inv2 = inv * inv;
  double s = inv * (1.0 + 0.5 * inv +
                    inv2 * (1.0 / 6.0 - inv2 * (1.0 / 30.0 - inv2 * (1.0 / 42.0 -
                            inv2 * (1.0 / 30.0)))));
  return acc + s;
}

namespace levy_detail {

double custom_density_mu(const CustomDensityMeasure& mea, int n, int m) {
  auto f = [&](double x) {
    return std::pow(x, m) * std::pow(1.0 - x, n - m) * mea.density(x);
  };
  return integrate_adaptive(f, 0.0, 1.0, 1e-12, 0.0);
}

double custom_density_laplace(const CustomDensityMeasure& mea, double rho) {
  auto f = [&](double x) { return (1.0 - std::pow(1.0 - x, rho)) * mea.density(x); };
  return integrate_adaptive(f, 0.0, 1.0, 1e-12, 0.0);
}

}  // namespace levy_detail

}  // namespace rcs
