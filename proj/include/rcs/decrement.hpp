#pragma once

#include <map>
#include <optional>
#include <span>
#include <vector>

#include "rcs/composition.hpp"
#include "rcs/levy.hpp"
#include "rcs/table.hpp"

namespace rcs {

/// Triangular array q(n:m), 1 <= m <= n <= N; row n is the law of the first
/// part of kappa_n. Rows from the named constructors and from_levy are
/// sampling-consistent by construction (Eqs. q-sc1/q-sc2).
template <class S>
class DecrementMatrix {
 public:
  DecrementMatrix() = default;

  static DecrementMatrix from_levy(const LevyModel<S>& model, int N) {
    DecrementMatrix q;
    q.rows_.reserve(N);
    for (int n = 1; n <= N; ++n) {
      S phin = model.phi(n);
      if (backend<S>::close(phin, backend<S>::from_int(0)))
        throw std::domain_error("from_levy: Phi(" + std::to_string(n) + ") = 0");
      std::vector<S> row(n);
      for (int m = 1; m <= n; ++m) row[m - 1] = model.binom_moment(n, m) / phin;
      q.rows_.push_back(std::move(row));
    }
    q.check_rows();
    return q;
  }

  /// Reconstruction from the last row via hypergeometric thinning
  /// (q-sc2): q0(n':m') = sum_m q(n:m) C(n-m,n'-m') C(m,m') / C(n,n')
  /// (q-sc1): q(n':m') = q0(n':m') / (1 - q0(n':0)).
  static DecrementMatrix from_last_row(std::vector<S> last_row) {
    int N = static_cast<int>(last_row.size());
    if (N == 0) throw std::invalid_argument("from_last_row: empty row");
    DecrementMatrix q;
    q.rows_.assign(N, {});
    q.rows_[N - 1] = std::move(last_row);
    for (int np = N - 1; np >= 1; --np) {
      const std::vector<S>& above = q.rows_[np];  // row np+1
      std::vector<S> q0(np + 1, backend<S>::from_int(0));
      S cn = binom<S>(np + 1, np);
      for (int m = 1; m <= np + 1; ++m)
        for (int mp = std::max(0, m - 1); mp <= std::min(m, np); ++mp)
          q0[mp] += above[m - 1] * binom<S>(np + 1 - m, np - mp) * binom<S>(m, mp) / cn;
      S keep = backend<S>::from_int(1) - q0[0];
      if (backend<S>::close(keep, backend<S>::from_int(0)))
        throw std::domain_error("from_last_row: degenerate thinning at n' = " +
                                std::to_string(np));
      std::vector<S> row(np);
      for (int mp = 1; mp <= np; ++mp) row[mp - 1] = q0[mp] / keep;
      q.rows_[np - 1] = std::move(row);
    }
    q.check_rows();
    return q;
  }

  // -- named families (closed-form rows, exact for rational parameters) ------

  static DecrementMatrix ewens(const S& theta, int N) {
    return from_levy(LevyModel<S>::ewens(theta), N);
  }
  static DecrementMatrix two_param(const S& alpha, const S& theta, int N) {
    return from_levy(LevyModel<S>::two_param(alpha, theta), N);
  }
  static DecrementMatrix beta_sb(const S& gamma, const S& theta, int N) {
    return from_levy(LevyModel<S>::beta_sb(gamma, theta), N);
  }
  static DecrementMatrix hook(const S& d, int N) {
    return from_levy(LevyModel<S>::hook(d), N);
  }
  static DecrementMatrix gamma_harmonic(const S& theta, int N) {
    return from_levy(LevyModel<S>::gamma_harmonic(theta), N);
  }

  /// (qnf)/(h-step): q(n:m) = h(m) = alpha (1-alpha)_{m-1}/m! below the
  /// diagonal, q(n:n) = (1-alpha)_{n-1}/(n-1)!. Coincides with two_param(alpha,0).
  static DecrementMatrix alpha_renewal(const S& alpha, int N) {
    if (!(alpha > backend<S>::from_int(0)) || !(alpha < backend<S>::from_int(1)))
      throw std::invalid_argument("alpha_renewal: need 0 < alpha < 1");
    const S one = backend<S>::from_int(1);
    DecrementMatrix q;
    q.rows_.reserve(N);
    for (int n = 1; n <= N; ++n) {
      std::vector<S> row(n);
      for (int m = 1; m < n; ++m)
        row[m - 1] = alpha * rising<S>(one - alpha, m - 1) / backend<S>::from_big(big_factorial(m));
      row[n - 1] = rising<S>(one - alpha, n - 1) / backend<S>::from_big(big_factorial(n - 1));
      q.rows_.push_back(std::move(row));
    }
    q.check_rows();
    return q;
  }

  int level() const { return static_cast<int>(rows_.size()); }
  const std::vector<S>& row(int n) const { return rows_.at(n - 1); }
  S q(int n, int m) const { return rows_.at(n - 1).at(m - 1); }

  /// Verifies sampling consistency: row n' reproduced from row n'+1 through
  /// (q-sc1)/(q-sc2), for all levels.
  bool consistent() const {
    for (int n = level(); n >= 2; --n) {
      DecrementMatrix sub = from_last_row(rows_[n - 1]);
      for (int m = 1; m < n; ++m)
        if (!backend<S>::close(sub.q(n - 1, m), q(n - 1, m))) return false;
    }
    return true;
  }

 private:
  void check_rows() const {
    for (int n = 1; n <= level(); ++n) {
      S sum = backend<S>::from_int(0);
      for (const S& v : rows_[n - 1]) {
        if (v < backend<S>::from_int(0)) throw std::domain_error("negative decrement entry");
        sum += v;
      }
      if (!backend<S>::close(sum, backend<S>::from_int(1)))
        throw std::domain_error("decrement row " + std::to_string(n) + " does not sum to 1");
    }
  }

  std::vector<std::vector<S>> rows_;
};

// ---------------------------------------------------------------------------
// Product formula and friends.
// ---------------------------------------------------------------------------

/// (produ): p(lambda) = prod_j q(Lambda_j : lambda_j) over TAIL sums
/// Lambda_j = lambda_j + ... + lambda_k.
template <class S>
S cpf(const DecrementMatrix<S>& q, const Composition& c) {
  if (c.n() > q.level()) throw std::invalid_argument("cpf: composition above level");
  S p = backend<S>::from_int(1);
  int tail = c.n();
  for (int lam : c.parts()) {
    p *= q.q(tail, lam);
    tail -= lam;
  }
  return p;
}

template <class S>
CompositionTable<S> cpf_table(const DecrementMatrix<S>& q, int n) {
  typename CompositionTable<S>::map_type m;
  for (const Composition& c : enumerate_compositions(n)) m.emplace(c, cpf(q, c));
  return CompositionTable<S>(n, std::move(m));
}

/// PPF = symmetrization of the CPF.
template <class S>
PartitionTable<S> ppf_table(const DecrementMatrix<S>& q, int n) {
  return symmetrize(cpf_table(q, n));
}

template <class S>
S ppf(const DecrementMatrix<S>& q, const Partition& lam) {
  // sum the product formula over distinct arrangements
  PartitionTable<S> t = ppf_table(q, lam.n());
  return t.at(lam);
}

/// Closed-form two-parameter PPF (Eq. 2par); valid on the principal range,
/// including negative theta > -alpha reached by the Markovian bridge.
template <class S>
S ppf_two_param_closed(const S& alpha, const S& theta, const Partition& lam) {
  const S one = backend<S>::from_int(1);
  int n = lam.n(), k = lam.k();
  if (n == 0) return one;
  S v = backend<S>::from_big(shape_count(lam));
  for (int i = 1; i <= k - 1; ++i) v *= theta + alpha * backend<S>::from_int(i);
  v /= rising<S>(one + theta, n - 1);
  for (int lj : lam.parts()) v *= rising<S>(one - alpha, lj - 1);
  return v;
}

// ---------------------------------------------------------------------------
// Markovian composition structures (produM).
// ---------------------------------------------------------------------------

/// Binomial moments of the meander scale variable V:
/// moments(n, m) = C(n,m) E[V^{n-m} (1-V)^m], m = 0..n.
template <class S>
struct MeanderMoments {
  std::function<S(int, int)> phi0;

  static MeanderMoments beta(const S& a, const S& b) {
    return MeanderMoments{[a, b](int n, int m) {
      return binom<S>(n, m) * rising<S>(a, n - m) * rising<S>(b, m) / rising<S>(a + b, n);
    }};
  }
  static MeanderMoments point(const S& x) {  // V = x a.s.
    return MeanderMoments{[x](int n, int m) {
      S v = binom<S>(n, m);
      for (int i = 0; i < n - m; ++i) v *= x;
      for (int i = 0; i < m; ++i) v *= backend<S>::from_int(1) - x;
      return v;
    }};
  }
};

template <class S>
struct MarkovianPair {
  DecrementMatrix<S> interior;            // q
  std::vector<std::vector<S>> boundary;   // q0 rows, boundary[n-1] has n entries
};

/// q0(n:m) = Phi0(n:0) q(n:m) + Phi0(n:m).
template <class S>
MarkovianPair<S> markovian_from_meander(DecrementMatrix<S> q, const MeanderMoments<S>& v) {
  MarkovianPair<S> mp{std::move(q), {}};
  int N = mp.interior.level();
  mp.boundary.reserve(N);
  for (int n = 1; n <= N; ++n) {
    S p0 = v.phi0(n, 0);
    std::vector<S> row(n);
    S sum = backend<S>::from_int(0);
    for (int m = 1; m <= n; ++m) {
      row[m - 1] = p0 * mp.interior.q(n, m) + v.phi0(n, m);
      sum += row[m - 1];
    }
    if (!backend<S>::close(sum, backend<S>::from_int(1)))
      throw std::domain_error("markovian boundary row does not sum to 1");
    mp.boundary.push_back(std::move(row));
  }
  return mp;
}

/// (produM): p(lambda) = q0(n:lambda_k) prod_{j<k} q(Lambda_j:lambda_j) with
/// HEAD sums Lambda_j = lambda_1 + ... + lambda_j.
template <class S>
S cpf_markovian(const MarkovianPair<S>& mp, const Composition& c) {
  if (c.empty()) return backend<S>::from_int(1);
  if (c.n() > mp.interior.level())
    throw std::invalid_argument("cpf_markovian: composition above level");
  const parts_t& parts = c.parts();
  S p = mp.boundary[c.n() - 1][parts.back() - 1];
  int head = 0;
  for (int j = 0; j + 1 < static_cast<int>(parts.size()); ++j) {
    head += parts[j];
    p *= mp.interior.q(head, parts[j]);
  }
  return p;
}

template <class S>
CompositionTable<S> cpf_markovian_table(const MarkovianPair<S>& mp, int n) {
  typename CompositionTable<S>::map_type m;
  for (const Composition& c : enumerate_compositions(n)) m.emplace(c, cpf_markovian(mp, c));
  return CompositionTable<S>(n, std::move(m));
}

// ---------------------------------------------------------------------------
// Deletion kernels.
// ---------------------------------------------------------------------------

template <class S>
using DeletionKernelRow = std::map<int, S>;

/// Caches PPF tables per level for kernel computations over many partitions.
template <class S>
class PpfCache {
 public:
  explicit PpfCache(const DecrementMatrix<S>& q) : q_(q) {}
  const PartitionTable<S>& table(int n) {
    auto it = tables_.find(n);
    if (it == tables_.end()) it = tables_.emplace(n, ppf_table(q_, n)).first;
    return it->second;
  }
  const DecrementMatrix<S>& q() const { return q_; }

 private:
  const DecrementMatrix<S>& q_;
  std::map<int, PartitionTable<S>> tables_;
};

/// (pd): d(lambda, m) = q(n:m) p(lambda \ m) / p(lambda). Undefined rows
/// (p(lambda) = 0) are reported by throwing.
template <class S>
DeletionKernelRow<S> deletion_kernel(PpfCache<S>& cache, const Partition& lam) {
  int n = lam.n();
  S p = cache.table(n).at(lam);
  if (backend<S>::close(p, backend<S>::from_int(0)))
    throw std::domain_error("deletion kernel undefined: p(" + lam.str() + ") = 0");
  DeletionKernelRow<S> out;
  for (int m : lam.distinct_parts()) {
    Partition rest = lam.remove_part(m);
    S pr = rest.empty() ? backend<S>::from_int(1) : cache.table(n - m).at(rest);
    out[m] = cache.q().q(n, m) * pr / p;
  }
  return out;
}

template <class S>
DeletionKernelRow<S> deletion_kernel(const DecrementMatrix<S>& q, const Partition& lam) {
  PpfCache<S> cache(q);
  return deletion_kernel(cache, lam);
}

/// (d-tau): d_tau(lambda, m) = (k_m/n) ((n-m)tau + m(1-tau)) / (1-tau+(k-1)tau);
/// the one-part partition deletes its part with probability one.
template <class S>
S d_tau(const Partition& lam, int m, const S& tau) {
  if (tau < backend<S>::from_int(0) || tau > backend<S>::from_int(1))
    throw std::invalid_argument("d_tau: tau in [0,1]");
  int n = lam.n(), k = lam.k();
  int km = lam.multiplicity(m);
  if (km == 0) return backend<S>::from_int(0);
  if (k == 1) return backend<S>::from_int(1);
  const S one = backend<S>::from_int(1);
  S num = backend<S>::from_int(n - m) * tau + backend<S>::from_int(m) * (one - tau);
  S den = one - tau + backend<S>::from_int(k - 1) * tau;
  return backend<S>::from_int(km) / backend<S>::from_int(n) * num / den;
}

// ---------------------------------------------------------------------------
// Green matrix.
// ---------------------------------------------------------------------------

/// g(n,j): probability that the part-boundary chain Q_n ever visits state
/// n+1-j, via the hitting-probability recursion. g(n,1) = 1.
template <class S>
std::vector<S> green_dp(const DecrementMatrix<S>& q, int n) {
  if (n > q.level()) throw std::invalid_argument("green_dp: n above level");
  std::vector<S> visit(n + 1, backend<S>::from_int(0));  // visit[s], s = 1..n
  visit[n] = backend<S>::from_int(1);
  for (int s = n - 1; s >= 1; --s)
    for (int sp = s + 1; sp <= n; ++sp) visit[s] += visit[sp] * q.q(sp, sp - s);
  std::vector<S> g(n);
  for (int j = 1; j <= n; ++j) g[j - 1] = visit[n + 1 - j];
  return g;
}

template <class S>
struct GreenClosedReport {
  std::vector<S> closed;  // printed-formula values, indexed by j
  std::vector<S> dp;
  S max_abs_diff;
};

/// Evaluates the printed closed form g(n,n-j+1) = Phi(j) C(n,j)
/// sum_{i=0}^{j-1} C(j-1,i) (-1)^i / Phi(j+i) verbatim against the DP values.
/// Comparison-only: the printed formula fails the Ewens theta=1 sanity check
/// (documented index ambiguity); green_dp is authoritative.
template <class S>
GreenClosedReport<S> green_closed(std::span<const S> phi, const DecrementMatrix<S>& q, int n) {
  if (static_cast<int>(phi.size()) < 2 * n)
    throw std::invalid_argument("green_closed: need Phi(0..2n-1)");
  GreenClosedReport<S> rep;
  rep.dp = green_dp(q, n);
  rep.closed.assign(n, backend<S>::from_int(0));
  for (int j = 1; j <= n; ++j) {
    S acc = backend<S>::from_int(0);
    for (int i = 0; i <= j - 1; ++i) {
      S term = binom<S>(j - 1, i) / phi[j + i];
      if (i % 2 == 0)
        acc += term;
      else
        acc -= term;
    }
    rep.closed[(n - j + 1) - 1] = phi[j] * binom<S>(n, j) * acc;
  }
  rep.max_abs_diff = backend<S>::from_int(0);
  for (int j = 0; j < n; ++j) {
    S d = rep.closed[j] - rep.dp[j];
    if (d < backend<S>::from_int(0)) d = -d;
    if (d > rep.max_abs_diff) rep.max_abs_diff = d;
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Reversibility (Theorem symm).
// ---------------------------------------------------------------------------

template <class S>
struct ReversibilityVerdict {
  bool reversible = false;
  std::optional<S> alpha;  // read off Phi(2) = 1 + alpha when reversible
  int witness_n = 0;       // first violating level otherwise
  S p_first{};             // P(F_n = 1) at the witness
  S p_last{};              // P(L_n = 1) at the witness
};

/// Compares P(F_n=1) = n(Phi(n)-Phi(n-1))/Phi(n) with
/// P(L_n=1) = n [1 - sum_{k=2}^n C(n-1,k-1)(-1)^k/Phi(k)] under Phi(1) = 1.
/// Equality for all n <= N characterizes the (alpha,alpha) family,
/// Phi(n) = (1+alpha)_{n-1}/(n-1)!.
template <class S>
ReversibilityVerdict<S> reversibility_check(const DecrementMatrix<S>& q, int N) {
  if (N > q.level()) throw std::invalid_argument("reversibility_check: N above level");
  // normalized Phi from the one-block moments
  std::vector<S> p(N);
  for (int n = 1; n <= N; ++n) p[n - 1] = q.q(n, n);
  std::vector<S> phi = phi_from_moments(p, N);
  ReversibilityVerdict<S> out;
  for (int n = 2; n <= N; ++n) {
    S pf = backend<S>::from_int(n) * (phi[n] - phi[n - 1]) / phi[n];
    S acc = backend<S>::from_int(0);
    for (int k = 2; k <= n; ++k) {
      S term = binom<S>(n - 1, k - 1) / phi[k];
      if (k % 2 == 0)
        acc += term;
      else
        acc -= term;
    }
    S pl = backend<S>::from_int(n) * (backend<S>::from_int(1) - acc);
    if (!backend<S>::close(pf, pl)) {
      out.reversible = false;
      out.witness_n = n;
      out.p_first = pf;
      out.p_last = pl;
      return out;
    }
  }
  out.reversible = true;
  out.alpha = N >= 2 ? phi[2] - backend<S>::from_int(1) : backend<S>::from_int(0);
  return out;
}

}  // namespace rcs
