#pragma once

#include <cmath>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <variant>
#include <vector>

#include "rcs/rational.hpp"

namespace rcs {

template <class S>
class LevyModel;

// ---------------------------------------------------------------------------
// Measure components of a multiplicative Levy model. Each provides
//   phi_nm(n,m) = C(n,m) * integral x^m (1-x)^{n-m} nu(dx)
//   phi_n(n)    = integral (1 - (1-x)^n) nu(dx)
// in a fixed per-family working scale (a positive multiple of the paper's
// measure; decrement matrices are scale-free). laplace_raw evaluates the
// paper-scale Laplace exponent of the measure part at real rho.
// ---------------------------------------------------------------------------

template <class S>
struct NoMeasure {};

/// Finite probability measure beta(gamma, theta) for the stick-breaking factor W.
template <class S>
struct BetaMeasure {
  S gamma, theta;
};

/// Two-parameter measure with tail nu[x,1] = x^{-alpha} (1-x)^theta (unit atom
/// at 1 when theta = 0). Working scale: paper-raw divided by B(1-alpha,1+theta).
template <class S>
struct TwoParamMeasure {
  S alpha, theta;
};

/// Unit atom at 1 (the hook measure).
template <class S>
struct UnitAtom {};

/// Infinite measure with density x^{-1} (1-x)^{theta-1} dx.
template <class S>
struct GammaHarmonicMeasure {
  S theta;
};

/// Sliced splitting of a base model: Phi_theta(rho) = rho/(rho+theta) Phi(rho+theta).
/// Working scale: normalized so Phi(1) = 1; binomial moments come from iterated
/// differences of the Phi sequence.
template <class S>
struct SlicedMeasure {
  std::shared_ptr<const LevyModel<S>> base;
  S theta;
};

/// Custom measure given by its raw moments mu(n,m) = integral x^m (1-x)^{n-m} nu(dx)
/// (without the binomial factor). Double backend only.
struct CustomMomentsMeasure {
  std::function<double(int, int)> mu;
  std::function<double(double)> laplace;  // optional; may be empty
};

/// Custom finite measure given by a density on (0,1); moments by adaptive
/// quadrature with absolute tolerance 1e-12. Double backend only.
struct CustomDensityMeasure {
  std::function<double(double)> density;
};

template <class S>
using Measure =
    std::variant<NoMeasure<S>, BetaMeasure<S>, TwoParamMeasure<S>, UnitAtom<S>,
                 GammaHarmonicMeasure<S>, SlicedMeasure<S>, CustomMomentsMeasure,
                 CustomDensityMeasure>;

double integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                          double abs_tol, double rel_tol);
double digamma(double x);
double trigamma(double x);

// ---------------------------------------------------------------------------

/// Iterated-difference representation of the binomial moments:
/// Phi(n:m) = C(n,m) sum_{j=0}^m (-1)^{j+1} C(m,j) Phi(n-m+j), with Phi(0) = 0.
/// `phi` holds Phi(0), Phi(1), ..., and must reach index n.
template <class S>
S phi_iterated_difference(std::span<const S> phi, int n, int m) {
  if (m < 1 || m > n || n >= static_cast<int>(phi.size()))
    throw std::invalid_argument("phi_iterated_difference: bad indices");
  S acc = backend<S>::from_int(0);
  for (int j = 0; j <= m; ++j) {
    S term = binom<S>(m, j) * phi[n - m + j];
    if (j % 2 == 0)
      acc -= term;
    else
      acc += term;
  }
  return binom<S>(n, m) * acc;
}

struct AlternatingViolation {
  int n, m;
};

/// A sequence (Phi(0)=0, Phi(1), ...) is completely alternating iff all its
/// binomial moments Phi(n:m) are nonnegative. Returns the first violation.
template <class S>
std::optional<AlternatingViolation> check_completely_alternating(std::span<const S> phi) {
  for (int n = 1; n < static_cast<int>(phi.size()); ++n)
    for (int m = 1; m <= n; ++m)
      if (phi_iterated_difference(phi, n, m) < backend<S>::from_int(0))
        return AlternatingViolation{n, m};
  return std::nullopt;
}

/// Inverts the one-block moment sequence p(n) = q(n:n) into the normalized
/// Laplace exponent: Phi(n)(p(n) + (-1)^n) = sum_{j<n} (-1)^{j+1} C(n,j) Phi(j),
/// Phi(1) = 1. Returned vector holds Phi(0)=0, Phi(1), ..., Phi(N).
/// When the coefficient vanishes the structure is the one-block family and the
/// recursion continues with Phi(n) = Phi(n-1); a vanishing coefficient with a
/// nonzero right side is reported as degenerate.
template <class S>
std::vector<S> phi_from_moments(const std::vector<S>& p, int N) {
  if (N < 1 || static_cast<int>(p.size()) < N)
    throw std::invalid_argument("phi_from_moments: need p(1..N)");
  if (!backend<S>::close(p[0], backend<S>::from_int(1)))
    throw std::invalid_argument("phi_from_moments: p(1) must be 1");
  std::vector<S> phi(N + 1, backend<S>::from_int(0));
  phi[1] = backend<S>::from_int(1);
  for (int n = 2; n <= N; ++n) {
    S coeff = p[n - 1] + backend<S>::from_int(n % 2 == 0 ? 1 : -1);
    S rhs = backend<S>::from_int(0);
    for (int j = 1; j < n; ++j) {
      S term = binom<S>(n, j) * phi[j];
      if (j % 2 == 1)
        rhs += term;
      else
        rhs -= term;
    }
    if (backend<S>::close(coeff, backend<S>::from_int(0))) {
      if (!backend<S>::close(rhs, backend<S>::from_int(0)))
        throw std::domain_error("phi_from_moments: degenerate moment sequence at n=" +
                                std::to_string(n));
      phi[n] = phi[n - 1];
    } else {
      phi[n] = rhs / coeff;
    }
  }
  return phi;
}

// ---------------------------------------------------------------------------
// LevyModel: drift + measure + kill mass (atom at 1 added on top of measure).
// ---------------------------------------------------------------------------
template <class S>
class LevyModel {
 public:
  LevyModel() = default;
  LevyModel(S drift, Measure<S> measure, S kill)
      : drift_(std::move(drift)), kill_(std::move(kill)), measure_(std::move(measure)) {
    if (drift_ < backend<S>::from_int(0) || kill_ < backend<S>::from_int(0))
      throw std::invalid_argument("drift and kill mass must be nonnegative");
  }

  static LevyModel ewens(S theta) {
    require_nonneg(theta, "ewens: theta");
    return LevyModel(backend<S>::from_int(0),
                     BetaMeasure<S>{backend<S>::from_int(1), std::move(theta)},
                     backend<S>::from_int(0));
  }
  static LevyModel two_param(S alpha, S theta) {
    if (alpha < backend<S>::from_int(0) || alpha >= backend<S>::from_int(1))
      throw std::invalid_argument("two_param: need 0 <= alpha < 1");
    require_nonneg(theta, "two_param: theta");
    return LevyModel(backend<S>::from_int(0),
                     TwoParamMeasure<S>{std::move(alpha), std::move(theta)},
                     backend<S>::from_int(0));
  }
  static LevyModel beta_sb(S gamma, S theta) {
    require_pos(gamma, "beta_sb: gamma");
    require_pos(theta, "beta_sb: theta");
    return LevyModel(backend<S>::from_int(0),
                     BetaMeasure<S>{std::move(gamma), std::move(theta)},
                     backend<S>::from_int(0));
  }
  static LevyModel hook(S d) {
    require_nonneg(d, "hook: d");
    return LevyModel(std::move(d), UnitAtom<S>{}, backend<S>::from_int(0));
  }
  static LevyModel gamma_harmonic(S theta) {
    require_pos(theta, "gamma_harmonic: theta");
    return LevyModel(backend<S>::from_int(0), GammaHarmonicMeasure<S>{std::move(theta)},
                     backend<S>::from_int(0));
  }
  static LevyModel pure_drift(S d) {
    require_pos(d, "pure_drift: d");
    return LevyModel(std::move(d), NoMeasure<S>{}, backend<S>::from_int(0));
  }

  const S& drift() const { return drift_; }
  const S& kill() const { return kill_; }
  const Measure<S>& measure() const { return measure_; }

  /// Phi(n:m) in the working scale: measure moments plus n*d at m=1 plus the
  /// kill mass at m=n.
  S binom_moment(int n, int m) const {
    if (m < 1 || m > n) throw std::invalid_argument("binom_moment: need 1 <= m <= n");
    S v = measure_phi_nm(n, m);
    if (m == 1) v += backend<S>::from_int(n) * drift_;
    if (m == n) v += kill_;
    return v;
  }

  /// Phi(n) = sum_m Phi(n:m); Phi(0) = 0.
  S phi(int n) const {
    if (n == 0) return backend<S>::from_int(0);
    if (n < 0) throw std::invalid_argument("phi: n must be >= 0");
    return measure_phi_n(n) + backend<S>::from_int(n) * drift_ + kill_;
  }

  S phi_normalized(int n) const {
    S p1 = phi(1);
    if (backend<S>::close(p1, backend<S>::from_int(0)))
      throw std::domain_error("phi(1) = 0: empty model");
    return phi(n) / p1;
  }

  S binom_moment_normalized(int n, int m) const { return binom_moment(n, m) / phi(1); }

  std::vector<S> phi_sequence(int N) const {  // Phi(0..N), working scale
    std::vector<S> out(N + 1);
    out[0] = backend<S>::from_int(0);
    for (int n = 1; n <= N; ++n) out[n] = phi(n);
    return out;
  }

  /// Paper-scale Laplace exponent at real rho > 0 (Eq. m-LK / althlap).
  double laplace(double rho) const {
    if (!(rho > 0)) throw std::invalid_argument("laplace: rho must be > 0");
    return rho * to_double(drift_) + measure_laplace_raw(rho) + to_double(kill_);
  }

  /// Full-model Phi at rational rho in the working scale, when exactly
  /// representable (used by the sliced transform).
  std::optional<S> phi_at(const S& rho) const;

  /// Phi(n+s)/Phi(1+s), exact where the family admits it; double backend
  /// always succeeds via the scaled Laplace exponent.
  std::optional<S> phi_ratio_shifted(int n, const S& s) const;

 private:
  static void require_nonneg(const S& v, const char* what) {
    if (v < backend<S>::from_int(0)) throw std::invalid_argument(std::string(what) + " must be >= 0");
  }
  static void require_pos(const S& v, const char* what) {
    if (!(v > backend<S>::from_int(0))) throw std::invalid_argument(std::string(what) + " must be > 0");
  }

  S measure_phi_nm(int n, int m) const;
  S measure_phi_n(int n) const;
  double measure_laplace_raw(double rho) const;
  double measure_laplace_scaled(double rho) const;  // working scale

  S drift_ = backend<S>::from_int(0);
  S kill_ = backend<S>::from_int(0);
  Measure<S> measure_ = NoMeasure<S>{};
};

/// Adds beta * delta_1 to the Levy measure (Eq. betaki); beta is understood in
/// the model's working scale.
template <class S>
LevyModel<S> kill_deform(const LevyModel<S>& model, S beta) {
  if (beta < backend<S>::from_int(0)) throw std::invalid_argument("kill_deform: beta >= 0");
  return LevyModel<S>(model.drift(), model.measure(), model.kill() + beta);
}

/// Sliced splitting (Eq. 2level): Phi_theta(rho) = rho/(rho+theta) Phi(rho+theta).
template <class S>
LevyModel<S> sliced_transform(const LevyModel<S>& base, S theta) {
  if (theta < backend<S>::from_int(0)) throw std::invalid_argument("sliced: theta >= 0");
  if (backend<S>::close(theta, backend<S>::from_int(0))) return base;  // identity
  return LevyModel<S>(backend<S>::from_int(0),
                      SlicedMeasure<S>{std::make_shared<LevyModel<S>>(base), std::move(theta)},
                      backend<S>::from_int(0));
}

// ---------------------------------------------------------------------------
// Structural law: the distribution of the size-biased pick, given either as a
// beta density or by its moment sequence p(n) = E[P^{n-1}].
// ---------------------------------------------------------------------------
template <class S>
class StructuralLaw {
 public:
  static StructuralLaw beta(S a, S b) {
    StructuralLaw out;
    out.beta_ = std::pair<S, S>{std::move(a), std::move(b)};
    return out;
  }
  /// p[i] = p(i+1) = E[P^i]; p(1) = 1.
  static StructuralLaw from_moments(std::vector<S> p) {
    if (p.empty() || !backend<S>::close(p[0], backend<S>::from_int(1)))
      throw std::invalid_argument("structural law: p(1) must be 1");
    StructuralLaw out;
    out.p_ = std::move(p);
    return out;
  }
  /// Structural law of the (alpha,theta) family: beta(1-alpha, theta+alpha).
  static StructuralLaw two_param(const S& alpha, const S& theta) {
    return beta(backend<S>::from_int(1) - alpha, theta + alpha);
  }
  static StructuralLaw one_block() {  // P = 1 a.s.
    return beta(backend<S>::from_int(1), backend<S>::from_int(0));
  }

  /// E[P^j], j >= 0.
  S moment(int j) const {
    if (j < 0) throw std::invalid_argument("moment: j >= 0");
    if (beta_) {
      const auto& [a, b] = *beta_;
      if (backend<S>::close(b, backend<S>::from_int(0))) return backend<S>::from_int(1);
      return rising<S>(a, j) / rising<S>(a + b, j);
    }
    if (j >= static_cast<int>(p_.size()))
      throw std::out_of_range("structural law: moment p(" + std::to_string(j + 1) +
                              ") not provided");
    return p_[j];
  }

  /// E[(1-P)^j].
  S comoment(int j) const {
    if (beta_) {
      const auto& [a, b] = *beta_;
      if (backend<S>::close(b, backend<S>::from_int(0)))
        return j == 0 ? backend<S>::from_int(1) : backend<S>::from_int(0);
      return rising<S>(b, j) / rising<S>(a + b, j);
    }
    S acc = backend<S>::from_int(0);
    for (int i = 0; i <= j; ++i) {
      S term = binom<S>(j, i) * moment(i);
      if (i % 2 == 0)
        acc += term;
      else
        acc -= term;
    }
    return acc;
  }

  int max_moment() const {
    return beta_ ? std::numeric_limits<int>::max() : static_cast<int>(p_.size()) - 1;
  }

  /// Complete monotonicity of (p(n)): iterated differences alternate in sign,
  /// equivalently all E[P^{i}(1-P)^{j}] >= 0. Returns the first violating (i,j).
  std::optional<std::pair<int, int>> check_completely_monotone(int N) const {
    for (int j = 0; j <= N; ++j)
      for (int i = 0; i + j <= N; ++i) {
        S acc = backend<S>::from_int(0);
        for (int l = 0; l <= j; ++l) {
          S term = binom<S>(j, l) * moment(i + l);
          if (l % 2 == 0)
            acc += term;
          else
            acc -= term;
        }
        if (acc < backend<S>::from_int(0)) return std::pair<int, int>{i, j};
      }
    return std::nullopt;
  }

 private:
  std::optional<std::pair<S, S>> beta_;
  std::vector<S> p_;
};

// ---------------------------------------------------------------------------
// Implementation of the measure dispatch.
// ---------------------------------------------------------------------------
namespace levy_detail {

template <class S>
S beta_phi_nm(const BetaMeasure<S>& mea, int n, int m) {
  return binom<S>(n, m) * rising<S>(mea.gamma, m) * rising<S>(mea.theta, n - m) /
         rising<S>(mea.gamma + mea.theta, n);
}

template <class S>
S beta_phi_n(const BetaMeasure<S>& mea, int n) {
  return backend<S>::from_int(1) -
         rising<S>(mea.theta, n) / rising<S>(mea.gamma + mea.theta, n);
}

template <class S>
S two_param_phi_nm(const TwoParamMeasure<S>& mea, int n, int m) {
  const S one = backend<S>::from_int(1);
  // C(n,m) (1-a)_{m-1} [ a (1+th)_{n-m} + (m-a)(th)_{n-m} ] / (2-a+th)_{n-1};
  // the theta = 0 unit atom is absorbed by the cancelled m = n cell.
  S bracket = mea.alpha * rising<S>(one + mea.theta, n - m) +
              (backend<S>::from_int(m) - mea.alpha) * rising<S>(mea.theta, n - m);
  return binom<S>(n, m) * rising<S>(one - mea.alpha, m - 1) * bracket /
         rising<S>(backend<S>::from_int(2) - mea.alpha + mea.theta, n - 1);
}

template <class S>
S two_param_phi_n(const TwoParamMeasure<S>& mea, int n) {
  const S one = backend<S>::from_int(1);
  return backend<S>::from_int(n) * rising<S>(one + mea.theta, n - 1) /
         rising<S>(backend<S>::from_int(2) - mea.alpha + mea.theta, n - 1);
}

template <class S>
S gamma_harmonic_phi_nm(const GammaHarmonicMeasure<S>& mea, int n, int m) {
  // C(n,m) B(m, n-m+theta) in units of 1/Gamma-scale: n! (th)_{n-m} / (m (n-m)! (th)_n)
  S v = rising<S>(mea.theta, n - m) / rising<S>(mea.theta, n);
  for (int i = n - m + 1; i <= n; ++i) v *= backend<S>::from_int(i);
  return v / backend<S>::from_int(m);
}

template <class S>
S gamma_harmonic_phi_n(const GammaHarmonicMeasure<S>& mea, int n) {
  S acc = backend<S>::from_int(0);
  for (int k = 1; k <= n; ++k) acc += backend<S>::from_int(1) / (mea.theta + backend<S>::from_int(k - 1));
  return acc;
}

double custom_density_mu(const CustomDensityMeasure& mea, int n, int m);
double custom_density_laplace(const CustomDensityMeasure& mea, double rho);

}  // namespace levy_detail

template <class S>
S LevyModel<S>::measure_phi_nm(int n, int m) const {
  return std::visit(
      [&](const auto& mea) -> S {
        using M = std::decay_t<decltype(mea)>;
        if constexpr (std::is_same_v<M, NoMeasure<S>>) {
          return backend<S>::from_int(0);
        } else if constexpr (std::is_same_v<M, BetaMeasure<S>>) {
          return levy_detail::beta_phi_nm(mea, n, m);
        } else if constexpr (std::is_same_v<M, TwoParamMeasure<S>>) {
          return levy_detail::two_param_phi_nm(mea, n, m);
        } else if constexpr (std::is_same_v<M, UnitAtom<S>>) {
          return m == n ? backend<S>::from_int(1) : backend<S>::from_int(0);
        } else if constexpr (std::is_same_v<M, GammaHarmonicMeasure<S>>) {
          return levy_detail::gamma_harmonic_phi_nm(mea, n, m);
        } else if constexpr (std::is_same_v<M, SlicedMeasure<S>>) {
          std::vector<S> phi(n + 1);
          phi[0] = backend<S>::from_int(0);
          for (int i = 1; i <= n; ++i) phi[i] = measure_phi_n(i);
          return phi_iterated_difference(std::span<const S>(phi), n, m);
        } else if constexpr (std::is_same_v<M, CustomMomentsMeasure>) {
          if constexpr (std::is_same_v<S, double>)
            return binom<double>(n, m) * mea.mu(n, m);
          else
            throw std::domain_error("custom measures support only the floating backend");
        } else {  // CustomDensityMeasure
          if constexpr (std::is_same_v<S, double>)
            return binom<double>(n, m) * levy_detail::custom_density_mu(mea, n, m);
          else
            throw std::domain_error("custom measures support only the floating backend");
        }
      },
      measure_);
}

template <class S>
S LevyModel<S>::measure_phi_n(int n) const {
  return std::visit(
      [&](const auto& mea) -> S {
        using M = std::decay_t<decltype(mea)>;
        if constexpr (std::is_same_v<M, NoMeasure<S>>) {
          return backend<S>::from_int(0);
        } else if constexpr (std::is_same_v<M, BetaMeasure<S>>) {
          return levy_detail::beta_phi_n(mea, n);
        } else if constexpr (std::is_same_v<M, TwoParamMeasure<S>>) {
          return levy_detail::two_param_phi_n(mea, n);
        } else if constexpr (std::is_same_v<M, UnitAtom<S>>) {
          return backend<S>::from_int(1);
        } else if constexpr (std::is_same_v<M, GammaHarmonicMeasure<S>>) {
          return levy_detail::gamma_harmonic_phi_n(mea, n);
        } else if constexpr (std::is_same_v<M, SlicedMeasure<S>>) {
          // normalized: n(1+theta)/(n+theta) * Phi_b(n+theta)/Phi_b(1+theta)
          const S& th = mea.theta;
          auto ratio = mea.base->phi_ratio_shifted(n, th);
          if (!ratio)
            throw std::domain_error(
                "sliced transform of this base family is not exactly representable; "
                "use the floating backend");
          return backend<S>::from_int(n) * (backend<S>::from_int(1) + th) /
                 (backend<S>::from_int(n) + th) * (*ratio);
        } else {
          if constexpr (std::is_same_v<S, double>) {
            double acc = 0.0;
            for (int m = 1; m <= n; ++m) acc += measure_phi_nm(n, m);
            return acc;
          } else {
            throw std::domain_error("custom measures support only the floating backend");
          }
        }
      },
      measure_);
}

template <class S>
double LevyModel<S>::measure_laplace_raw(double rho) const {
  return std::visit(
      [&](const auto& mea) -> double {
        using M = std::decay_t<decltype(mea)>;
        if constexpr (std::is_same_v<M, NoMeasure<S>>) {
          return 0.0;
        } else if constexpr (std::is_same_v<M, BetaMeasure<S>>) {
          double g = to_double(mea.gamma), th = to_double(mea.theta);
          return 1.0 - std::exp(std::lgamma(th + rho) + std::lgamma(g + th) -
                                std::lgamma(th) - std::lgamma(g + th + rho));
        } else if constexpr (std::is_same_v<M, TwoParamMeasure<S>>) {
          double a = to_double(mea.alpha), th = to_double(mea.theta);
          // (althlap): rho Gamma(1-a) Gamma(rho+th) / Gamma(rho+1-a+th)
          return rho * std::exp(std::lgamma(1.0 - a) + std::lgamma(rho + th) -
                                std::lgamma(rho + 1.0 - a + th));
        } else if constexpr (std::is_same_v<M, UnitAtom<S>>) {
          return 1.0;
        } else if constexpr (std::is_same_v<M, GammaHarmonicMeasure<S>>) {
          double th = to_double(mea.theta);
          return digamma(th + rho) - digamma(th);
        } else if constexpr (std::is_same_v<M, SlicedMeasure<S>>) {
          double th = to_double(mea.theta);
          return rho / (rho + th) * mea.base->laplace(rho + th);
        } else if constexpr (std::is_same_v<M, CustomMomentsMeasure>) {
          if (!mea.laplace)
            throw std::domain_error("custom moment measure lacks a Laplace exponent");
          return mea.laplace(rho);
        } else {
          return levy_detail::custom_density_laplace(mea, rho);
        }
      },
      measure_);
}

template <class S>
double LevyModel<S>::measure_laplace_scaled(double rho) const {
  double raw = measure_laplace_raw(rho);
  if (const auto* tp = std::get_if<TwoParamMeasure<S>>(&measure_)) {
    double a = to_double(tp->alpha), th = to_double(tp->theta);
    double b1 = std::exp(std::lgamma(1.0 - a) + std::lgamma(1.0 + th) -
                         std::lgamma(2.0 - a + th));
    return raw / b1;
  }
  if (const auto* sl = std::get_if<SlicedMeasure<S>>(&measure_)) {
    double th = to_double(sl->theta);
    double at1 = 1.0 / (1.0 + th) *
                 (sl->base->measure_laplace_scaled(1.0 + th) +
                  (1.0 + th) * to_double(sl->base->drift()) + to_double(sl->base->kill()));
    double atr = rho / (rho + th) *
                 (sl->base->measure_laplace_scaled(rho + th) +
                  (rho + th) * to_double(sl->base->drift()) + to_double(sl->base->kill()));
    return atr / at1;  // normalized working scale
  }
  return raw;
}

template <class S>
std::optional<S> LevyModel<S>::phi_at(const S& rho) const {
  if constexpr (std::is_same_v<S, double>) {
    return rho * drift_ + measure_laplace_scaled(rho) + kill_;
  } else {
    // integer rho reduces to phi(n)
    if (boost::multiprecision::denominator(rho) == 1 && rho > 0 &&
        boost::multiprecision::numerator(rho) < 4096)
      return phi(static_cast<int>(boost::multiprecision::numerator(rho).template convert_to<long long>()));
    std::optional<S> nu;
    if (std::holds_alternative<NoMeasure<S>>(measure_)) {
      nu = backend<S>::from_int(0);
    } else if (const auto* bm = std::get_if<BetaMeasure<S>>(&measure_)) {
      if (bm->gamma == backend<S>::from_int(1)) nu = rho / (bm->theta + rho);  // ewens
    } else if (std::holds_alternative<UnitAtom<S>>(measure_)) {
      nu = backend<S>::from_int(1);
    } else if (const auto* sl = std::get_if<SlicedMeasure<S>>(&measure_)) {
      auto b_sh = sl->base->phi_at(rho + sl->theta);
      auto b_1 = sl->base->phi_at(backend<S>::from_int(1) + sl->theta);
      if (b_sh && b_1 && !backend<S>::close(*b_1, backend<S>::from_int(0)))
        nu = rho / (rho + sl->theta) * (*b_sh) * (backend<S>::from_int(1) + sl->theta) / (*b_1);
    }
    if (!nu) return std::nullopt;
    return rho * drift_ + *nu + kill_;
  }
}

template <class S>
std::optional<S> LevyModel<S>::phi_ratio_shifted(int n, const S& s) const {
  auto num = phi_at(backend<S>::from_int(n) + s);
  auto den = phi_at(backend<S>::from_int(1) + s);
  if (num && den && !backend<S>::close(*den, backend<S>::from_int(0))) return *num / *den;
  if constexpr (!std::is_same_v<S, double>) {
    // pure two-parameter measure: the ratio of Gamma functions at integer shift
    // is rational even though the values themselves are not
    if (const auto* tp = std::get_if<TwoParamMeasure<S>>(&measure_)) {
      if (backend<S>::close(drift_, backend<S>::from_int(0)) &&
          backend<S>::close(kill_, backend<S>::from_int(0))) {
        const S one = backend<S>::from_int(1);
        S num2 = (backend<S>::from_int(n) + s) * rising<S>(one + s + tp->theta, n - 1);
        S den2 = (one + s) * rising<S>(backend<S>::from_int(2) + s - tp->alpha + tp->theta, n - 1);
        return num2 / den2;
      }
    }
  }
  return std::nullopt;
}

}  // namespace rcs
