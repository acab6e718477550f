#include "rcs/blockstats.hpp"

#include <atomic>
#include <cmath>
#include <thread>

namespace rcs {

BlockStats count_blocks(const Composition& c, int r_max) {
  if (r_max < 1) throw std::invalid_argument("count_blocks: r_max >= 1");
  BlockStats out;
  out.n = c.n();
  out.K = c.k();
  out.K_r.assign(r_max + 1, 0);
  long long check = 0;
  for (int p : c.parts()) {
    check += p;
    if (p <= r_max)
      ++out.K_r[p - 1];
    else
      ++out.K_r[r_max];  // aggregated tail
  }
  if (check != out.n) throw std::logic_error("count_blocks: sum r K_r != n");
  return out;
}

double expected_Kn_dp(const ChainFamily& family, int n) {
  std::vector<double> e(n + 1, 0.0);
  for (int s = 1; s <= n; ++s) {
    std::vector<double> row = family.row(s);
    double acc = 1.0;
    for (int m = 1; m < s; ++m) acc += row[m - 1] * e[s - m];
    e[s] = acc;
  }
  return e[n];
}

double exp_functional_moment(const LevyModel<double>& model, double alpha, int k) {
  if (k < 0) throw std::invalid_argument("exp_functional_moment: k >= 0");
  if (k == 0) return 1.0;
  double v = 1.0;
  for (int j = 1; j <= k; ++j) {
    double phi = model.laplace(alpha * j);
    if (!(phi > 0)) throw std::domain_error("exp_functional_moment: Phi(alpha j) <= 0");
    v *= j / phi;  // k!/prod Phi(alpha j), factored per term
  }
  return v;
}

// ---------------------------------------------------------------------------

namespace {

class ChainBlockSampler final : public BlockSampler {
 public:
  ChainBlockSampler(std::shared_ptr<const ChainFamily> family, std::string label)
      : family_(std::move(family)), label_(std::move(label)) {}
  BlockStats sample(int n, int r_max, RngStream& rng) const override {
    BlockStats out;
    out.n = n;
    out.K_r.assign(r_max + 1, 0);
    int state = n;
    while (state > 0) {
      int m = family_->sample_first_part(state, rng);
      ++out.K;
      ++out.K_r[std::min(m, r_max + 1) - 1];
      state -= m;
    }
    return out;
  }
  std::string describe() const override { return label_; }

 private:
  std::shared_ptr<const ChainFamily> family_;
  std::string label_;
};

class StickBlockSampler final : public BlockSampler {
 public:
  StickBlockSampler(WSpec w, std::string label) : w_(w), label_(std::move(label)) {}
  BlockStats sample(int n, int r_max, RngStream& rng) const override {
    StickSample s = sample_stickbreaking_full(w_, n, rng);
    BlockStats out = count_blocks(s.comp, r_max);
    out.M = s.rightmost_gap;
    return out;
  }
  std::string describe() const override { return label_; }

 private:
  WSpec w_;
  std::string label_;
};

}  // namespace

std::unique_ptr<BlockSampler> make_chain_block_sampler(std::shared_ptr<const ChainFamily> family,
                                                       std::string label) {
  return std::make_unique<ChainBlockSampler>(std::move(family), std::move(label));
}

std::unique_ptr<BlockSampler> make_stick_block_sampler(WSpec w, std::string label) {
  return std::make_unique<StickBlockSampler>(w, std::move(label));
}

const McStat* McSummary::find(const std::string& name) const {
  for (const auto& s : stats)
    if (s.name == name) return &s;
  return nullptr;
}

McSummary mc_blocks(const BlockSampler& sampler, const McOptions& opt) {
  if (opt.reps < 2) throw std::invalid_argument("mc_blocks: reps >= 2");
  if (opt.n < 1) throw std::invalid_argument("mc_blocks: n >= 1");
  const int reps = opt.reps;
  std::vector<BlockStats> results(reps);

  int workers = opt.threads > 0 ? opt.threads
                                : static_cast<int>(std::thread::hardware_concurrency());
  workers = std::max(1, std::min(workers, reps));
  std::atomic<int> cursor{0};
  auto work = [&]() {
    for (;;) {
      int i = cursor.fetch_add(1);
      if (i >= reps) break;
      RngStream rng(opt.seed, static_cast<std::uint64_t>(i));
      results[i] = sampler.sample(opt.n, opt.r_max, rng);
    }
  };
  if (workers == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int t = 0; t < workers; ++t) pool.emplace_back(work);
    for (auto& th : pool) th.join();
  }

  McSummary out;
  out.n = opt.n;
  out.reps = reps;
  out.seed = opt.seed;
  out.sampler = sampler.describe();

  std::vector<double> buf(reps);
  auto push = [&](const std::string& name) {
    McStat st;
    st.name = name;
    st.est = estimate_moments(buf);
    out.stats.push_back(std::move(st));
  };
  for (int i = 0; i < reps; ++i) buf[i] = static_cast<double>(results[i].K);
  push("K");
  for (int r = 1; r <= opt.r_max; ++r) {
    for (int i = 0; i < reps; ++i) buf[i] = static_cast<double>(results[i].K_r[r - 1]);
    push("K_" + std::to_string(r));
  }
  bool has_m = true;
  for (int i = 0; i < reps; ++i) has_m = has_m && results[i].M.has_value();
  if (has_m) {
    for (int i = 0; i < reps; ++i) buf[i] = static_cast<double>(*results[i].M);
    push("M");
  }
  return out;
}

// ---------------------------------------------------------------------------

StickMoments stick_moments(const WSpec& w) {
  StickMoments out;
  if (w.kind == WSpec::Kind::point) {
    if (w.x >= 1.0) {  // W = 1: -log(1-W) infinite
      out.finite = false;
      return out;
    }
    out.m = -std::log1p(-w.x);
    out.sigma2 = 0.0;
    out.m1 = -std::log(w.x);
    return out;
  }
  double g = w.a, t = w.b;  // W ~ beta(gamma, theta)
  out.m = digamma(g + t) - digamma(t);
  out.m1 = digamma(g + t) - digamma(g);
  out.sigma2 = trigamma(t) - trigamma(g + t);
  return out;
}

StickMoments stick_moments_mc(const WSpec& w, int reps, std::uint64_t seed) {
  RngStream rng(seed, 0);
  std::vector<double> lw(reps), lw1(reps);
  for (int i = 0; i < reps; ++i) {
    double v = w.sample(rng);
    lw[i] = -std::log1p(-v);
    lw1[i] = -std::log(v);
  }
  MomentsEstimate a = estimate_moments(lw);
  MomentsEstimate b = estimate_moments(lw1);
  StickMoments out;
  out.m = a.mean;
  out.sigma2 = a.variance;
  out.m1 = b.mean;
  out.finite = std::isfinite(out.m) && std::isfinite(out.sigma2) && std::isfinite(out.m1);
  return out;
}

CltCaseAReport clt_case_a_diagnostic(const WSpec& w, int n, int reps, std::uint64_t seed,
                                     int threads) {
  CltCaseAReport rep;
  rep.moments = stick_moments(w);
  if (!rep.moments.finite || rep.moments.sigma2 <= 0.0 || rep.moments.m <= 0.0) {
    rep.degenerate = true;
    return rep;
  }
  auto sampler = make_stick_block_sampler(w, "stick");
  McOptions opt;
  opt.n = n;
  opt.reps = reps;
  opt.seed = seed;
  opt.r_max = 1;
  opt.threads = threads;
  McSummary mc = mc_blocks(*sampler, opt);
  const McStat* k = mc.find("K");
  rep.mean_K = k->est.mean;
  rep.var_K = k->est.variance;
  rep.skewness = k->est.skewness;
  double logn = std::log(static_cast<double>(n));
  double m = rep.moments.m, s2 = rep.moments.sigma2;
  rep.mean_ratio = rep.mean_K / (logn / m);
  rep.var_ratio = rep.var_K / (s2 * logn / (m * m * m));
  return rep;
}

// ---------------------------------------------------------------------------

namespace {

/// Phi0(s) = integral_0^1 (1-e^{-s x}) x^{-1} (1-x)^{theta-1} dx, split at 1/2;
/// for theta < 1 the right half substitutes t = (1-x) = u^{1/theta} so the
/// integrand stays bounded.
double phi0_gamma_harmonic(double theta, double s, double rel_tol) {
  auto left = [&](double x) { return -std::expm1(-s * x) / x * std::pow(1.0 - x, theta - 1.0); };
  double v = integrate_adaptive(left, 0.0, 0.5, 0.0, rel_tol);
  if (theta >= 1.0) {
    auto right = [&](double x) {
      return -std::expm1(-s * x) / x * std::pow(1.0 - x, theta - 1.0);
    };
    v += integrate_adaptive(right, 0.5, 1.0, 0.0, rel_tol);
  } else {
    auto right = [&](double u) {
      double t = std::pow(u, 1.0 / theta);  // t = 1-x
      double x = 1.0 - t;
      return -std::expm1(-s * x) / (x * theta);
    };
    v += integrate_adaptive(right, 0.0, std::pow(0.5, theta), 0.0, rel_tol);
  }
  return v;
}

}  // namespace

Phi012Result phi012_gamma_harmonic(double theta, double n) {
  if (!(theta > 0) || !(n > 1)) throw std::invalid_argument("phi012: theta > 0, n > 1");
  const double rel = 1e-9;
  Phi012Result out;
  out.phi0 = phi0_gamma_harmonic(theta, n, rel);
  // Phi_k(n) = integral_0^n Phi0(s)^k ds/s = integral_{-inf}^{log n} Phi0(e^u)^k du;
  // Phi0(s) ~ s/theta near 0, so the cutoff at s = 1e-12 is below tolerance.
  double lo = std::log(1e-12), hi = std::log(n);
  out.phi1 = integrate_adaptive(
      [&](double u) { return phi0_gamma_harmonic(theta, std::exp(u), 1e-10); }, lo, hi, 0.0,
      1e-8);
  out.phi2 = integrate_adaptive(
      [&](double u) {
        double p = phi0_gamma_harmonic(theta, std::exp(u), 1e-10);
        return p * p;
      },
      lo, hi, 0.0, 1e-8);
  return out;
}

}  // namespace rcs
