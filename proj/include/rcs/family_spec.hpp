#pragma once

#include <memory>
#include <string>
#include <vector>

#include "rcs/decrement.hpp"
#include "rcs/levy.hpp"
#include "rcs/samplers.hpp"

namespace rcs {

/// Parsed family specification, grammar shared with the CLI:
///   ewens:theta=1            two-param:alpha=1/2,theta=0
///   beta-sb:gamma=2,theta=3  hook:d=1        gamma-harmonic:theta=1
///   kill:base=(...),beta=2   sliced:base=(...),theta=1
/// Parameters written as fractions or decimals parse to exact rationals.
class FamilySpec {
 public:
  static FamilySpec parse(const std::string& text);

  static FamilySpec ewens(const Rat& theta);
  static FamilySpec two_param(const Rat& alpha, const Rat& theta);
  static FamilySpec beta_sb(const Rat& gamma, const Rat& theta);
  static FamilySpec hook(const Rat& d);
  static FamilySpec gamma_harmonic(const Rat& theta);
  static FamilySpec kill(FamilySpec base, const Rat& beta);
  static FamilySpec sliced(FamilySpec base, const Rat& theta);

  const std::string& family() const { return family_; }
  Rat param(const std::string& name) const;
  bool has_param(const std::string& name) const;
  const FamilySpec* base() const { return base_.get(); }

  /// Canonical text form; format(parse(s)) is idempotent.
  std::string str() const;

  template <class S>
  LevyModel<S> model() const;

  template <class S>
  DecrementMatrix<S> qmatrix(int N) const {
    return DecrementMatrix<S>::from_levy(model<S>(), N);
  }

  /// True when the exact-rational backend can evaluate this family.
  bool exact_supported() const;

  /// Chain-row access for sampling and the large-n mean recursion. Families
  /// without closed-form rows (kill/sliced) materialize a matrix up to
  /// max_level, which is capped to protect memory.
  std::shared_ptr<const ChainFamily> chain_family(int max_level) const;

 private:
  std::string family_;
  std::vector<std::pair<std::string, Rat>> params_;
  std::shared_ptr<FamilySpec> base_;
};

/// The named families exercised by the verification suites.
std::vector<FamilySpec> canonical_families();

extern template LevyModel<Rat> FamilySpec::model<Rat>() const;
extern template LevyModel<double> FamilySpec::model<double>() const;

}  // namespace rcs
