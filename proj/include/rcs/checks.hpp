#pragma once

#include <string>
#include <vector>

#include "rcs/family_spec.hpp"

namespace rcs {

struct CheckResult {
  std::string suite;
  bool pass = false;
  std::string detail;  // first failure, or a summary of what was verified
};

std::vector<std::string> check_suite_names();

/// Runs one exact-arithmetic verification suite over the given families.
/// Suites: consistency, regeneration, symmetrization, kernel, stationarity,
/// reversibility, moments-roundtrip, markovian.
CheckResult run_check_suite(const std::string& suite, const std::vector<FamilySpec>& families,
                            int n_max);

CheckResult check_consistency(const std::vector<FamilySpec>& families, int n_max);
CheckResult check_regeneration(const std::vector<FamilySpec>& families, int n_max);
CheckResult check_symmetrization(const std::vector<FamilySpec>& families, int n_max);
CheckResult check_kernel(const std::vector<FamilySpec>& families, int n_max);
CheckResult check_stationarity(const std::vector<FamilySpec>& families, int n_max);
CheckResult check_reversibility(const std::vector<FamilySpec>& families, int n_max);
CheckResult check_moments_roundtrip(const std::vector<FamilySpec>& families, int n_max);
CheckResult check_markovian(const std::vector<FamilySpec>& families, int n_max);

}  // namespace rcs
