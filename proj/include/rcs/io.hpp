#pragma once

#include <json.hpp>

#include <string>

#include "rcs/blockstats.hpp"
#include "rcs/decrement.hpp"
#include "rcs/table.hpp"

namespace rcs {

// Probability tables serialize as
//   {"n":3,"kind":"composition","entries":[{"parts":[2,1],"p":"1/3"}]}
// with probabilities as exact fraction strings (rational backend) or
// 17-significant-digit decimal strings.

template <class S>
nlohmann::json table_to_json(const CompositionTable<S>& t) {
  nlohmann::json entries = nlohmann::json::array();
  for (const auto& [c, p] : t.entries())
    entries.push_back({{"parts", c.parts()}, {"p", format_value(p)}});
  return {{"n", t.n()}, {"kind", "composition"}, {"entries", entries}};
}

template <class S>
nlohmann::json table_to_json(const PartitionTable<S>& t) {
  nlohmann::json entries = nlohmann::json::array();
  for (const auto& [c, p] : t.entries())
    entries.push_back({{"parts", c.parts()}, {"p", format_value(p)}});
  return {{"n", t.n()}, {"kind", "partition"}, {"entries", entries}};
}

/// CSV with header `n,m,q`.
template <class S>
std::string qmatrix_to_csv(const DecrementMatrix<S>& q) {
  std::string out = "n,m,q\n";
  for (int n = 1; n <= q.level(); ++n)
    for (int m = 1; m <= n; ++m)
      out += std::to_string(n) + "," + std::to_string(m) + "," + format_value(q.q(n, m)) + "\n";
  return out;
}

/// CSV with header `n,j,g`; optionally a closed-form comparison column.
template <class S>
std::string green_to_csv(int n, const std::vector<S>& g) {
  std::string out = "n,j,g\n";
  for (int j = 1; j <= n; ++j)
    out += std::to_string(n) + "," + std::to_string(j) + "," + format_value(g[j - 1]) + "\n";
  return out;
}

template <class S>
std::string green_to_csv(int n, const GreenClosedReport<S>& rep) {
  std::string out = "n,j,g,g_closed,abs_diff\n";
  for (int j = 1; j <= n; ++j) {
    S diff = rep.closed[j - 1] - rep.dp[j - 1];
    if (diff < backend<S>::from_int(0)) diff = -diff;
    out += std::to_string(n) + "," + std::to_string(j) + "," + format_value(rep.dp[j - 1]) +
           "," + format_value(rep.closed[j - 1]) + "," + format_value(diff) + "\n";
  }
  return out;
}

/// Deletion kernel row: {"shape":[2,1,1],"d":{"2":"1/2","1":"1/2"}}.
template <class S>
nlohmann::json kernel_to_json(const Partition& lam, const DeletionKernelRow<S>& row) {
  nlohmann::json d = nlohmann::json::object();
  for (const auto& [m, p] : row) d[std::to_string(m)] = format_value(p);
  return {{"shape", lam.parts()}, {"d", d}};
}

/// Monte Carlo summaries: CSV columns n,stat,estimate,se,lo95,hi95,target,ratio
/// (target/ratio blank when no target is attached).
std::string mc_summary_to_csv(const McSummary& s,
                              const std::map<std::string, double>& targets = {});
nlohmann::json mc_summary_to_json(const McSummary& s,
                                  const std::map<std::string, double>& targets = {});

}  // namespace rcs
