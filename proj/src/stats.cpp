#include "rcs/stats.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace rcs {

double pairwise_sum(std::span<const double> values) {
  if (values.size() <= 8) {
    double s = 0.0;
    for (double v : values) s += v;
    return s;
  }
  std::size_t half = values.size() / 2;
  return pairwise_sum(values.first(half)) + pairwise_sum(values.subspan(half));
}

MomentsEstimate estimate_moments(std::span<const double> values) {
  MomentsEstimate out;
  out.count = values.size();
  if (out.count == 0) return out;
  out.mean = pairwise_sum(values) / static_cast<double>(out.count);
  if (out.count < 2) return out;
  std::vector<double> d2(out.count), d3(out.count);
  for (std::size_t i = 0; i < out.count; ++i) {
    double d = values[i] - out.mean;
    d2[i] = d * d;
    d3[i] = d * d * d;
  }
  double m2 = pairwise_sum(d2) / static_cast<double>(out.count);
  double m3 = pairwise_sum(d3) / static_cast<double>(out.count);
  out.variance = m2 * static_cast<double>(out.count) / static_cast<double>(out.count - 1);
  out.se = std::sqrt(out.variance / static_cast<double>(out.count));
  out.skewness = m2 > 0 ? m3 / std::pow(m2, 1.5) : 0.0;
  return out;
}

namespace {

// series expansion for x < a+1, continued fraction otherwise
double gamma_p_series(double a, double x) {
  double ap = a;
  double sum = 1.0 / a;
  double del = sum;
  for (int i = 0; i < 500; ++i) {
    ap += 1.0;
    del *= x / ap;
    sum += del;
    if (std::fabs(del) < std::fabs(sum) * 1e-16) break;
  }
  return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

double gamma_q_cf(double a, double x) {
  const double tiny = 1e-300;
  double b = x + 1.0 - a;
  double c = 1.0 / tiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i < 500; ++i) {
    double an = -i * (i - a);
    b += 2.0;
    d = an * d + b;
    if (std::fabs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::fabs(c) < tiny) c = tiny;
    d = 1.0 / d;
    double del = d * c;
    h *= del;
    if (std::fabs(del - 1.0) < 1e-16) break;
  }
  return h * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

}  // namespace

double gamma_p(double a, double x) {
  if (!(a > 0) || x < 0) throw std::invalid_argument("gamma_p: need a > 0, x >= 0");
  if (x == 0) return 0.0;
  if (x < a + 1.0) return gamma_p_series(a, x);
  return 1.0 - gamma_q_cf(a, x);
}

double chi2_quantile(double prob, int df) {
  if (!(prob > 0 && prob < 1) || df < 1) throw std::invalid_argument("chi2_quantile: bad args");
  double a = df / 2.0;
  auto cdf = [&](double x) { return gamma_p(a, x / 2.0); };
  double lo = 0.0, hi = df + 10.0;
  while (cdf(hi) < prob) hi *= 2.0;
  for (int it = 0; it < 200; ++it) {
    double mid = 0.5 * (lo + hi);
    if (cdf(mid) < prob)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

ChiSquareResult chi_square_gof(std::span<const long long> observed,
                               std::span<const double> expected_probs, long long total,
                               double significance) {
  if (observed.size() != expected_probs.size())
    throw std::invalid_argument("chi_square_gof: size mismatch");
  ChiSquareResult out;
  double stat = 0.0;
  int cells = 0;
  for (std::size_t i = 0; i < observed.size(); ++i) {
    double e = expected_probs[i] * static_cast<double>(total);
    if (e <= 0.0) {
      if (observed[i] != 0)
        throw std::domain_error("chi_square_gof: observation in zero-probability cell");
      continue;
    }
    double d = static_cast<double>(observed[i]) - e;
    stat += d * d / e;
    ++cells;
  }
  out.statistic = stat;
  out.df = cells - 1;
  out.threshold = chi2_quantile(1.0 - significance, out.df);
  out.pass = stat <= out.threshold;
  std::ostringstream ss;
  ss << "chi2=" << stat << " df=" << out.df << " threshold=" << out.threshold;
  out.detail = ss.str();
  return out;
}

ChiSquareResult chi_square_two_sample(std::span<const long long> counts_a,
                                      std::span<const long long> counts_b,
                                      double significance) {
  if (counts_a.size() != counts_b.size())
    throw std::invalid_argument("chi_square_two_sample: size mismatch");
  double na = 0, nb = 0;
  for (auto v : counts_a) na += static_cast<double>(v);
  for (auto v : counts_b) nb += static_cast<double>(v);
  double ka = std::sqrt(nb / na), kb = std::sqrt(na / nb);
  ChiSquareResult out;
  double stat = 0.0;
  int cells = 0;
  for (std::size_t i = 0; i < counts_a.size(); ++i) {
    double tot = static_cast<double>(counts_a[i] + counts_b[i]);
    if (tot == 0) continue;
    double d = ka * static_cast<double>(counts_a[i]) - kb * static_cast<double>(counts_b[i]);
    stat += d * d / tot;
    ++cells;
  }
  out.statistic = stat;
  out.df = cells - 1;
  out.threshold = chi2_quantile(1.0 - significance, out.df);
  out.pass = stat <= out.threshold;
  std::ostringstream ss;
  ss << "chi2=" << stat << " df=" << out.df << " threshold=" << out.threshold;
  out.detail = ss.str();
  return out;
}

}  // namespace rcs
