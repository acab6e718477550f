#include "rcs/io.hpp"

namespace rcs {

std::string mc_summary_to_csv(const McSummary& s, const std::map<std::string, double>& targets) {
  std::string out = "n,stat,estimate,se,lo95,hi95,target,ratio\n";
  for (const McStat& st : s.stats) {
    double lo = st.est.mean - 1.959963984540054 * st.est.se;
    double hi = st.est.mean + 1.959963984540054 * st.est.se;
    out += std::to_string(s.n) + "," + st.name + "," + format_value(st.est.mean) + "," +
           format_value(st.est.se) + "," + format_value(lo) + "," + format_value(hi);
    auto it = targets.find(st.name);
    if (it != targets.end() && it->second != 0.0) {
      out += "," + format_value(it->second) + "," + format_value(st.est.mean / it->second);
    } else {
      out += ",,";
    }
    out += "\n";
  }
  return out;
}

nlohmann::json mc_summary_to_json(const McSummary& s,
                                  const std::map<std::string, double>& targets) {
  nlohmann::json stats = nlohmann::json::array();
  for (const McStat& st : s.stats) {
    nlohmann::json j = {{"stat", st.name},
                        {"estimate", st.est.mean},
                        {"variance", st.est.variance},
                        {"se", st.est.se},
                        {"lo95", st.est.mean - 1.959963984540054 * st.est.se},
                        {"hi95", st.est.mean + 1.959963984540054 * st.est.se}};
    auto it = targets.find(st.name);
    if (it != targets.end() && it->second != 0.0) {
      j["target"] = it->second;
      j["ratio"] = st.est.mean / it->second;
    }
    stats.push_back(std::move(j));
  }
  return {{"n", s.n},      {"reps", s.reps},   {"seed", s.seed},
          {"sampler", s.sampler}, {"stats", stats}};
}

}  // namespace rcs
