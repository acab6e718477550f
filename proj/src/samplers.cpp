#include "rcs/samplers.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace rcs {

double WSpec::sample(RngStream& rng) const {
  if (kind == Kind::point) return x;
  return rng.beta(a, b);
}

// ---------------------------------------------------------------------------
// Chain families.
// ---------------------------------------------------------------------------

int ChainFamily::sample_first_part(int n, RngStream& rng) const {
  if (n <= 1) return n;
  double u = rng.uniform();
  double q = start(n);
  double c = q;
  for (int m = 1; m <= n - 1; ++m) {
    if (u <= c) return m;
    if (q == 0.0 && m > 1) break;  // ratio chains cannot leave zero
    if (m <= n - 2) {
      q *= ratio(n, m);
      c += q;
    }
  }
  return n;  // diagonal remainder
}

std::vector<double> ChainFamily::row(int n) const {
  std::vector<double> out(n);
  if (n == 1) {
    out[0] = 1.0;
    return out;
  }
  double q = start(n), sum = 0.0;
  for (int m = 1; m <= n - 1; ++m) {
    out[m - 1] = q;
    sum += q;
    if (m <= n - 2) q *= ratio(n, m);
  }
  out[n - 1] = std::max(0.0, 1.0 - sum);
  return out;
}

namespace {

class EwensFamily final : public ChainFamily {
 public:
  explicit EwensFamily(double theta) : theta_(theta) {
    if (theta < 0) throw std::invalid_argument("ewens: theta >= 0");
  }
  double start(int n) const override {
    return theta_ == 0.0 ? 0.0 : theta_ / (theta_ + n - 1);
  }
  double ratio(int n, int m) const override {
    return static_cast<double>(n - m) / (theta_ + n - m - 1);
  }

 private:
  double theta_;
};

class TwoParamFamily final : public ChainFamily {
 public:
  TwoParamFamily(double alpha, double theta) : a_(alpha), t_(theta) {
    if (alpha < 0 || alpha >= 1 || theta < 0)
      throw std::invalid_argument("two_param: 0 <= alpha < 1, theta >= 0");
  }
  double start(int n) const override {
    return ((n - 1) * a_ + t_) / (t_ + n - 1);
  }
  double ratio(int n, int m) const override {
    double num = (n - m) * (m - a_) * ((n - m - 1) * a_ + (m + 1) * t_);
    double den = (m + 1) * (t_ + n - m - 1) * ((n - m) * a_ + m * t_);
    return num / den;
  }

 private:
  double a_, t_;
};

class BetaSbFamily final : public ChainFamily {
 public:
  BetaSbFamily(double gamma, double theta) : g_(gamma), t_(theta) {
    if (gamma <= 0 || theta <= 0) throw std::invalid_argument("beta_sb: gamma, theta > 0");
  }
  double start(int n) const override {
    double a = std::exp(std::lgamma(g_ + t_ + n) - std::lgamma(g_ + t_) + std::lgamma(t_) -
                        std::lgamma(t_ + n));
    return n * g_ / ((t_ + n - 1) * (a - 1.0));
  }
  double ratio(int n, int m) const override {
    return static_cast<double>(n - m) * (g_ + m) / ((m + 1) * (t_ + n - m - 1));
  }

 private:
  double g_, t_;
};

class HookFamily final : public ChainFamily {
 public:
  explicit HookFamily(double d) : d_(d) {
    if (d < 0) throw std::invalid_argument("hook: d >= 0");
  }
  double start(int n) const override { return n * d_ / (1.0 + n * d_); }
  double ratio(int, int) const override { return 0.0; }  // interior cells beyond m=1 vanish

 private:
  double d_;
};

class GammaHarmonicFamily final : public ChainFamily {
 public:
  explicit GammaHarmonicFamily(double theta) : t_(theta) {
    if (theta <= 0) throw std::invalid_argument("gamma_harmonic: theta > 0");
  }
  double start(int n) const override {
    double h = digamma(t_ + n) - digamma(t_);
    return n / ((t_ + n - 1) * h);
  }
  double ratio(int n, int m) const override {
    return static_cast<double>(m) * (n - m) / ((m + 1.0) * (t_ + n - m - 1));
  }

 private:
  double t_;
};

class MatrixFamily final : public ChainFamily {
 public:
  explicit MatrixFamily(DecrementMatrix<double> q) : q_(std::move(q)) {}
  double start(int n) const override { return q_.q(n, 1); }
  double ratio(int n, int m) const override {
    double qm = q_.q(n, m);
    return qm == 0.0 ? 0.0 : q_.q(n, m + 1) / qm;
  }
  // walk the stored row directly; ratio chains cannot cross interior zeros
  int sample_first_part(int n, RngStream& rng) const override {
    double u = rng.uniform();
    double c = 0.0;
    for (int m = 1; m < n; ++m) {
      c += q_.q(n, m);
      if (u <= c) return m;
    }
    return n;
  }
  std::vector<double> row(int n) const override { return q_.row(n); }

 private:
  DecrementMatrix<double> q_;
};

}  // namespace

std::unique_ptr<ChainFamily> make_ewens_family(double theta) {
  return std::make_unique<EwensFamily>(theta);
}
std::unique_ptr<ChainFamily> make_two_param_family(double alpha, double theta) {
  return std::make_unique<TwoParamFamily>(alpha, theta);
}
std::unique_ptr<ChainFamily> make_beta_sb_family(double gamma, double theta) {
  return std::make_unique<BetaSbFamily>(gamma, theta);
}
std::unique_ptr<ChainFamily> make_hook_family(double d) {
  return std::make_unique<HookFamily>(d);
}
std::unique_ptr<ChainFamily> make_gamma_harmonic_family(double theta) {
  return std::make_unique<GammaHarmonicFamily>(theta);
}
std::unique_ptr<ChainFamily> make_matrix_family(DecrementMatrix<double> q) {
  return std::make_unique<MatrixFamily>(std::move(q));
}

Composition sample_chain(const DecrementMatrix<double>& q, int n, RngStream& rng) {
  if (n > q.level()) throw std::invalid_argument("sample_chain: n above matrix level");
  parts_t parts;
  int state = n;
  while (state > 0) {
    double u = rng.uniform();
    double c = 0.0;
    int m = state;
    for (int i = 1; i < state; ++i) {
      c += q.q(state, i);
      if (u <= c) {
        m = i;
        break;
      }
    }
    parts.push_back(m);
    state -= m;
  }
  return Composition(std::move(parts));
}

Composition sample_chain(const ChainFamily& family, int n, RngStream& rng) {
  parts_t parts;
  int state = n;
  while (state > 0) {
    int m = family.sample_first_part(state, rng);
    parts.push_back(m);
    state -= m;
  }
  return Composition(std::move(parts));
}

// ---------------------------------------------------------------------------
// Stick-breaking paintbox.
// ---------------------------------------------------------------------------

StickSample sample_stickbreaking_full(const WSpec& w, int n, RngStream& rng) {
  if (n < 1) throw std::invalid_argument("sample_stickbreaking: n >= 1");
  std::vector<double> u(n);
  double umax = 0.0;
  for (double& v : u) {
    v = rng.uniform();
    umax = std::max(umax, v);
  }
  constexpr int kMaxBreaks = 1000000;
  std::vector<double> y;  // Y_1 < Y_2 < ...
  double left = 0.0, remain = 1.0;
  do {
    if (static_cast<int>(y.size()) >= kMaxBreaks)
      throw std::domain_error("stick-breaking break cap exceeded (W concentrated near 0)");
    double wv = w.sample(rng);
    if (remain < std::numeric_limits<double>::min()) {
      left = 1.0;  // the remaining stick has underflowed; all mass is to the left
    } else {
      left += remain * wv;
      remain *= 1.0 - wv;
    }
    y.push_back(left);
  } while (left <= umax);

  std::vector<int> counts(y.size(), 0);
  for (double v : u) {
    auto it = std::lower_bound(y.begin(), y.end(), v);
    ++counts[static_cast<std::size_t>(it - y.begin())];
  }
  StickSample out;
  parts_t parts;
  for (std::size_t j = 0; j < counts.size(); ++j) {
    if (counts[j] > 0) {
      parts.push_back(counts[j]);
      out.rightmost_gap = static_cast<int>(j + 1);
    }
  }
  out.comp = Composition(std::move(parts));
  return out;
}

Composition sample_stickbreaking(const WSpec& w, int n, RngStream& rng) {
  return sample_stickbreaking_full(w, n, rng).comp;
}

// ---------------------------------------------------------------------------
// Restaurant processes.
// ---------------------------------------------------------------------------

Partition sample_crp(double alpha, double theta, int n, RngStream& rng) {
  bool principal = (alpha >= 0 && alpha < 1 && theta > -alpha);
  if (!principal && alpha < 0) {
    double ratio = theta / (-alpha);
    principal = std::fabs(ratio - std::round(ratio)) < 1e-9 && ratio > 0.5;
  }
  if (!principal) throw std::invalid_argument("sample_crp: parameters outside principal range");
  if (n < 1) throw std::invalid_argument("sample_crp: n >= 1");
  parts_t boxes{1};
  for (int i = 1; i < n; ++i) {
    double u = rng.uniform() * (i + theta);
    double c = 0.0;
    bool placed = false;
    for (int& b : boxes) {
      c += b - alpha;
      if (u <= c) {
        ++b;
        placed = true;
        break;
      }
    }
    if (!placed) boxes.push_back(1);
  }
  return Partition(std::move(boxes));
}

Composition sample_ordered_crp_alpha_alpha(double alpha, int n, RngStream& rng) {
  if (!(alpha > 0 && alpha < 1))
    throw std::invalid_argument("ordered CRP: 0 < alpha < 1");
  if (n < 1) throw std::invalid_argument("ordered CRP: n >= 1");
  parts_t tables{1};
  for (int i = 1; i < n; ++i) {
    double u = rng.uniform() * (i + alpha);
    double c = 0.0;
    bool placed = false;
    for (int& t : tables) {
      c += t - alpha;
      if (u <= c) {
        ++t;
        placed = true;
        break;
      }
    }
    if (!placed) {
      std::size_t slot = rng.below(tables.size() + 1);
      tables.insert(tables.begin() + slot, 1);
    }
  }
  return Composition(std::move(tables));
}

// ---------------------------------------------------------------------------
// q(n:.)-chain.
// ---------------------------------------------------------------------------

namespace {

int draw_from_row(std::span<const double> qrow, RngStream& rng) {
  double u = rng.uniform();
  double c = 0.0;
  int n = static_cast<int>(qrow.size());
  for (int m = 1; m < n; ++m) {
    c += qrow[m - 1];
    if (u <= c) return m;
  }
  return n;
}

parts_t qchain_remove_and_prepend(const parts_t& parts, int m, RngStream& rng) {
  parts_t boxes = parts;
  long long total = 0;
  for (int b : boxes) total += b;
  for (int i = 0; i < m; ++i) {
    std::uint64_t pick = rng.below(static_cast<std::uint64_t>(total - i));
    long long c = 0;
    for (int& b : boxes) {
      c += b;
      if (static_cast<long long>(pick) < c) {
        --b;
        break;
      }
    }
  }
  parts_t next{m};
  for (int b : boxes)
    if (b > 0) next.push_back(b);
  return next;
}

}  // namespace

Composition qchain_step(const Composition& c, std::span<const double> qrow, RngStream& rng) {
  if (c.empty()) return c;
  if (static_cast<int>(qrow.size()) != c.n())
    throw std::invalid_argument("qchain_step: row size must equal n");
  int m = draw_from_row(qrow, rng);
  return Composition(qchain_remove_and_prepend(c.parts(), m, rng));
}

Partition qchain_step(const Partition& p, std::span<const double> qrow, RngStream& rng) {
  if (p.empty()) return p;
  if (static_cast<int>(qrow.size()) != p.n())
    throw std::invalid_argument("qchain_step: row size must equal n");
  int m = draw_from_row(qrow, rng);
  return Partition(qchain_remove_and_prepend(p.parts(), m, rng));
}

// ---------------------------------------------------------------------------
// Strings.
// ---------------------------------------------------------------------------

std::vector<std::uint8_t> sample_bernoulli_string_dual_ewens(double theta, int n,
                                                             RngStream& rng) {
  if (!(theta > 0)) throw std::invalid_argument("dual-ewens string: theta > 0");
  std::vector<std::uint8_t> bits(n, 0);
  if (n >= 1) bits[0] = 1;
  for (int j = 2; j <= n; ++j) bits[j - 1] = rng.bernoulli(theta / (j + theta - 1)) ? 1 : 0;
  return bits;
}

std::vector<std::uint8_t> sample_renewal_string_alpha(double alpha, int n, RngStream& rng) {
  if (!(alpha > 0 && alpha < 1)) throw std::invalid_argument("renewal string: 0 < alpha < 1");
  std::vector<std::uint8_t> bits(n, 0);
  if (n < 1) return bits;
  bits[0] = 1;
  int pos = 1;  // T_0 = 1
  while (pos < n) {
    // step ~ h, survival G(m) = (1-alpha)_{m-1}/(m-1)!; walk until G(m+1) <= u
    double u = rng.uniform();
    double g = 1.0;  // G(1)
    int m = 1;
    int cap = n - pos + 1;  // steps beyond the string are irrelevant
    while (m < cap) {
      double gnext = g * (m - alpha) / m;  // G(m+1)
      if (gnext <= u) break;
      g = gnext;
      ++m;
    }
    if (m >= cap) break;  // next renewal beyond n
    pos += m;
    bits[pos - 1] = 1;
  }
  return bits;
}

Composition composition_from_bits(const std::vector<std::uint8_t>& bits) {
  std::string code;
  code.reserve(bits.size());
  for (auto b : bits) code += b ? '1' : '0';
  return Composition::from_code(code);
}

// ---------------------------------------------------------------------------
// Pitman-Winkel arrangement.
// ---------------------------------------------------------------------------

std::vector<int> pw_initial_ranks(double eta, int k, RngStream& rng) {
  if (k < 1) throw std::invalid_argument("pw_initial_ranks: k >= 1");
  if (eta < 0) throw std::invalid_argument("pw_initial_ranks: eta >= 0");
  std::vector<int> ranks(k);
  ranks[0] = 1;
  for (int j = 2; j <= k; ++j) {
    if (std::isinf(eta)) {
      ranks[j - 1] = j;
      continue;
    }
    double u = rng.uniform() * (eta + j - 1);
    if (u >= j - 1)
      ranks[j - 1] = j;
    else
      ranks[j - 1] = 1 + static_cast<int>(u);
  }
  return ranks;
}

std::vector<int> pw_decode_ranks(const std::vector<int>& ranks) {
  std::vector<int> arr;
  arr.reserve(ranks.size());
  for (int j = 1; j <= static_cast<int>(ranks.size()); ++j) {
    int r = ranks[j - 1];
    if (r < 1 || r > j) throw std::invalid_argument("pw_decode_ranks: rank out of range");
    arr.insert(arr.begin() + (r - 1), j);
  }
  return arr;
}

std::vector<int> pw_arrangement(double eta, int k, RngStream& rng) {
  return pw_decode_ranks(pw_initial_ranks(eta, k, rng));
}

}  // namespace rcs
