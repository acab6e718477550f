#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "rcs/composition.hpp"
#include "rcs/decrement.hpp"
#include "rcs/rng.hpp"

namespace rcs {

// ---------------------------------------------------------------------------
// Stick-breaking factor specification.
// ---------------------------------------------------------------------------
struct WSpec {
  enum class Kind { beta, point } kind = Kind::beta;
  double a = 1.0, b = 1.0;  // beta parameters
  double x = 1.0;           // point mass location, in (0,1]

  static WSpec beta_w(double a, double b) { return {Kind::beta, a, b, 0.0}; }
  static WSpec point_w(double x) { return {Kind::point, 0.0, 0.0, x}; }
  double sample(RngStream& rng) const;
};

// ---------------------------------------------------------------------------
// Decrement-row access for the named families at arbitrary level, used by the
// Markov-chain sampler and the exact-mean DP at levels far beyond what a
// materialized matrix can hold. Rows are walked through closed-form ratios
// q(n:m+1)/q(n:m); the diagonal cell is the remainder.
// ---------------------------------------------------------------------------
class ChainFamily {
 public:
  virtual ~ChainFamily() = default;
  /// q(n:1)
  virtual double start(int n) const = 0;
  /// q(n:m+1)/q(n:m) for 1 <= m <= n-2
  virtual double ratio(int n, int m) const = 0;

  /// One decrement from state n (inverse-CDF walk).
  virtual int sample_first_part(int n, RngStream& rng) const;
  /// Full row q(n:1..n); diagonal by remainder.
  virtual std::vector<double> row(int n) const;
};

std::unique_ptr<ChainFamily> make_ewens_family(double theta);
std::unique_ptr<ChainFamily> make_two_param_family(double alpha, double theta);
std::unique_ptr<ChainFamily> make_beta_sb_family(double gamma, double theta);
std::unique_ptr<ChainFamily> make_hook_family(double d);
std::unique_ptr<ChainFamily> make_gamma_harmonic_family(double theta);
/// Adapter over a materialized matrix.
std::unique_ptr<ChainFamily> make_matrix_family(DecrementMatrix<double> q);

// ---------------------------------------------------------------------------
// Samplers. All are pure functions of (inputs, stream state).
// ---------------------------------------------------------------------------

/// Decrements of the decreasing Markov chain: part at state n' drawn from q(n':.).
Composition sample_chain(const DecrementMatrix<double>& q, int n, RngStream& rng);
Composition sample_chain(const ChainFamily& family, int n, RngStream& rng);

struct StickSample {
  Composition comp;
  int rightmost_gap = 0;  // 1-based index M_n of the gap holding max(U_i)
};

/// Paintbox sampler: break points Y_k generated until they exceed max(U_i),
/// uniforms clustered into gaps, counts read left to right.
StickSample sample_stickbreaking_full(const WSpec& w, int n, RngStream& rng);
Composition sample_stickbreaking(const WSpec& w, int n, RngStream& rng);

/// Chinese restaurant process on the principal parameter range.
Partition sample_crp(double alpha, double theta, int n, RngStream& rng);

/// Ordered CRP for the (alpha,alpha) family: a new table is placed uniformly
/// into one of k+1 slots of the row.
Composition sample_ordered_crp_alpha_alpha(double alpha, int n, RngStream& rng);

/// One step of the q(n:.)-chain: draw m, remove m balls uniformly without
/// replacement, drop emptied boxes, prepend (compositions) or insert (partitions)
/// a new box of size m.
Composition qchain_step(const Composition& c, std::span<const double> qrow, RngStream& rng);
Partition qchain_step(const Partition& p, std::span<const double> qrow, RngStream& rng);

/// Exact one-step transition matrix of the q(n:.)-chain.
template <class S, class Key>
struct QChainMatrix {
  std::vector<Key> states;
  std::vector<std::vector<S>> rows;  // rows[i][j] = P(states[i] -> states[j])
};

namespace detail {

/// Enumerates removal vectors r (r_i <= parts_i, sum r = m) with their
/// multivariate hypergeometric probabilities prod C(parts_i, r_i) / C(n, m).
template <class S, class Fn>
void for_each_removal(const parts_t& parts, int m, Fn&& fn) {
  int n = 0;
  for (int p : parts) n += p;
  S denom = binom<S>(n, m);
  parts_t r(parts.size(), 0);
  auto rec = [&](auto&& self, std::size_t i, int rem, S ways) -> void {
    if (i == parts.size()) {
      if (rem == 0) fn(r, ways / denom);
      return;
    }
    int cap = std::min(parts[i], rem);
    for (int v = 0; v <= cap; ++v) {
      r[i] = v;
      self(self, i + 1, rem - v, ways * binom<S>(parts[i], v));
    }
    r[i] = 0;
  };
  rec(rec, 0, m, backend<S>::from_int(1));
}

}  // namespace detail

template <class S>
QChainMatrix<S, Composition> qchain_transition_matrix_compositions(std::span<const S> qrow,
                                                                   int n) {
  QChainMatrix<S, Composition> out;
  out.states = enumerate_compositions(n);
  std::map<Composition, std::size_t> index;
  for (std::size_t i = 0; i < out.states.size(); ++i) index.emplace(out.states[i], i);
  out.rows.assign(out.states.size(),
                  std::vector<S>(out.states.size(), backend<S>::from_int(0)));
  for (std::size_t i = 0; i < out.states.size(); ++i) {
    const parts_t& parts = out.states[i].parts();
    for (int m = 1; m <= n; ++m) {
      const S& pm = qrow[m - 1];
      if (backend<S>::close(pm, backend<S>::from_int(0))) continue;
      detail::for_each_removal<S>(parts, m, [&](const parts_t& r, S prob) {
        parts_t next{m};
        for (std::size_t b = 0; b < parts.size(); ++b)
          if (parts[b] - r[b] > 0) next.push_back(parts[b] - r[b]);
        out.rows[i][index.at(Composition(next))] += pm * prob;
      });
    }
  }
  return out;
}

template <class S>
QChainMatrix<S, Partition> qchain_transition_matrix_partitions(std::span<const S> qrow, int n) {
  QChainMatrix<S, Partition> out;
  out.states = enumerate_partitions(n);
  std::map<Partition, std::size_t> index;
  for (std::size_t i = 0; i < out.states.size(); ++i) index.emplace(out.states[i], i);
  out.rows.assign(out.states.size(),
                  std::vector<S>(out.states.size(), backend<S>::from_int(0)));
  for (std::size_t i = 0; i < out.states.size(); ++i) {
    const parts_t& parts = out.states[i].parts();
    for (int m = 1; m <= n; ++m) {
      const S& pm = qrow[m - 1];
      if (backend<S>::close(pm, backend<S>::from_int(0))) continue;
      detail::for_each_removal<S>(parts, m, [&](const parts_t& r, S prob) {
        parts_t next{m};
        for (std::size_t b = 0; b < parts.size(); ++b)
          if (parts[b] - r[b] > 0) next.push_back(parts[b] - r[b]);
        out.rows[i][index.at(Partition(next))] += pm * prob;
      });
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Self-similar binary strings and the Pitman-Winkel arrangement.
// ---------------------------------------------------------------------------

/// Bernoulli string with independent digits, P(eta_j = 1) = theta/(j+theta-1);
/// encodes the dual Ewens composition structure.
std::vector<std::uint8_t> sample_bernoulli_string_dual_ewens(double theta, int n,
                                                             RngStream& rng);

/// Sites of the discrete renewal process with T_0 = 1 and step law
/// P(step = m) = (-1)^{m-1} C(alpha, m); encodes the (alpha,0) structure.
std::vector<std::uint8_t> sample_renewal_string_alpha(double alpha, int n, RngStream& rng);

Composition composition_from_bits(const std::vector<std::uint8_t>& bits);

/// Initial ranks r_j in [j]: P(r_j = j) = eta/(eta+j-1), P(r_j = i) = 1/(eta+j-1)
/// for i < j; eta may be +infinity (identity ranks).
std::vector<int> pw_initial_ranks(double eta, int k, RngStream& rng);

/// Decodes initial ranks into the arrangement of labels 1..k (label j is
/// placed at position r_j relative to 1..j).
std::vector<int> pw_decode_ranks(const std::vector<int>& ranks);

std::vector<int> pw_arrangement(double eta, int k, RngStream& rng);

}  // namespace rcs
