#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "rcs/decrement.hpp"
#include "rcs/samplers.hpp"
#include "rcs/stats.hpp"

namespace rcs {

/// Per-sample block counts: K_n, the small-block counts K_{n,r} for
/// r <= r_max (tail aggregated into the last slot), and for stick-breaking
/// samples the index M_n of the rightmost occupied gap.
struct BlockStats {
  long long n = 0;
  long long K = 0;
  std::vector<long long> K_r;  // K_r[r-1] for r = 1..r_max; K_r[r_max] = tail count
  std::optional<long long> M;  // stick-breaking samplers only
};

BlockStats count_blocks(const Composition& c, int r_max = 20);

/// E[K_n] via the fixed-point recursion E[K_n] = 1 + sum_m q(n:m) E[K_{n-m}].
template <class S>
S expected_Kn_dp(const DecrementMatrix<S>& q, int n) {
  if (n > q.level()) throw std::invalid_argument("expected_Kn_dp: n above level");
  std::vector<S> e(n + 1, backend<S>::from_int(0));
  for (int s = 1; s <= n; ++s) {
    S acc = backend<S>::from_int(1);
    for (int m = 1; m < s; ++m) acc += q.q(s, m) * e[s - m];
    e[s] = acc;
  }
  return e[n];
}

/// Same recursion against on-demand family rows; O(n^2) time, O(n) memory.
double expected_Kn_dp(const ChainFamily& family, int n);

/// E[K_n] = sum_{j=0}^{n-1} E[(1-P)^j] from the structural law.
template <class S>
S expected_Kn_structural(const StructuralLaw<S>& sigma, int n) {
  S acc = backend<S>::from_int(0);
  for (int j = 0; j < n; ++j) acc += sigma.comoment(j);
  return acc;
}

/// E[K_{n,r}] = C(n,r) E[P^{r-1} (1-P)^{n-r}]: the size-biased integral
/// E[sum_j s_j^r (1-s_j)^{n-r}] picks up one power of x from the structural
/// law. (The printed display carries C(n-1,r-1), which fails already at
/// n=2, r=1 for Ewens theta=1; full enumeration pins C(n,r).)
template <class S>
S expected_Knr_structural(const StructuralLaw<S>& sigma, int n, int r) {
  if (r < 1 || r > n) throw std::invalid_argument("expected_Knr_structural: 1 <= r <= n");
  S acc = backend<S>::from_int(0);
  for (int j = 0; j <= n - r; ++j) {
    S term = binom<S>(n - r, j) * sigma.moment(r - 1 + j);
    if (j % 2 == 0)
      acc += term;
    else
      acc -= term;
  }
  return binom<S>(n, r) * acc;
}

/// Moments of the exponential functional: E[I_alpha^k] = k! / prod_{j=1}^k
/// Phi(alpha j), with Phi in the paper-raw scale of the model.
double exp_functional_moment(const LevyModel<double>& model, double alpha, int k);

// ---------------------------------------------------------------------------
// Monte Carlo harness.
// ---------------------------------------------------------------------------

/// Replicate sampler drawn once per stream.
class BlockSampler {
 public:
  virtual ~BlockSampler() = default;
  virtual BlockStats sample(int n, int r_max, RngStream& rng) const = 0;
  virtual std::string describe() const = 0;
};

std::unique_ptr<BlockSampler> make_chain_block_sampler(std::shared_ptr<const ChainFamily> family,
                                                       std::string label);
std::unique_ptr<BlockSampler> make_stick_block_sampler(WSpec w, std::string label);

struct McStat {
  std::string name;  // "K", "K_1", ..., "M"
  MomentsEstimate est;
};

struct McSummary {
  long long n = 0;
  int reps = 0;
  std::uint64_t seed = 0;
  std::string sampler;
  std::vector<McStat> stats;

  const McStat* find(const std::string& name) const;
};

struct McOptions {
  int n = 0;
  int reps = 0;
  std::uint64_t seed = 0;
  int r_max = 20;
  int threads = 0;  // 0 = hardware concurrency
};

/// Replicate i uses stream index i; accumulation is pairwise over the
/// replicate-indexed vector, so the result is independent of thread count.
McSummary mc_blocks(const BlockSampler& sampler, const McOptions& opt);

// ---------------------------------------------------------------------------
// Limit-theorem diagnostics.
// ---------------------------------------------------------------------------

struct StickMoments {
  double m = 0.0;       // E[-log(1-W)]
  double sigma2 = 0.0;  // Var[log(1-W)]
  double m1 = 0.0;      // E[-log W]
  bool finite = true;
};

/// Digamma/trigamma closed forms for beta W; degenerate/infinite cases flagged.
StickMoments stick_moments(const WSpec& w);

/// Monte Carlo estimate of the same moments (cross-validation of the special
/// functions), using `reps` draws of W.
StickMoments stick_moments_mc(const WSpec& w, int reps, std::uint64_t seed);

struct CltCaseAReport {
  bool degenerate = false;
  StickMoments moments;
  double mean_K = 0.0, var_K = 0.0;
  double mean_ratio = 0.0;  // mean(K_n) / (log n / m)
  double var_ratio = 0.0;   // var(K_n) / (sigma^2 m^-3 log n)
  double skewness = 0.0;    // of standardized values
};

CltCaseAReport clt_case_a_diagnostic(const WSpec& w, int n, int reps, std::uint64_t seed,
                                     int threads = 0);

// ---------------------------------------------------------------------------
// Poissonized exponents for the slow-variation regime.
// ---------------------------------------------------------------------------

struct Phi012Result {
  double phi0 = 0.0;  // integral (1 - e^{-n x}) nu(dx)
  double phi1 = 0.0;  // integral_0^n phi0(s) ds/s
  double phi2 = 0.0;  // integral_0^n phi0(s)^2 ds/s
};

/// Gamma-harmonic family only (infinite measure with slowly varying tail);
/// adaptive quadrature with relative tolerance 1e-8.
Phi012Result phi012_gamma_harmonic(double theta, double n);

}  // namespace rcs
