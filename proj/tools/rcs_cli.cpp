// Command-line front end: exact tables, samplers, checks, Monte Carlo runs.
#include <CLI11.hpp>

#include <iostream>
#include <limits>
#include <map>
#include <optional>
#include <string>

#include "rcs/checks.hpp"
#include "rcs/io.hpp"

namespace {

using namespace rcs;

struct OutputMode {
  bool csv = false;
  bool json = false;
};

struct BackendChoice {
  std::string name = "exact";
  bool exact() const { return name == "exact"; }
};

void add_output_flags(CLI::App* cmd, OutputMode& mode) {
  cmd->add_flag("--csv", mode.csv, "CSV output");
  cmd->add_flag("--json", mode.json, "JSON output");
}

void add_backend_flag(CLI::App* cmd, BackendChoice& b) {
  cmd->add_option("--backend", b.name, "arithmetic backend")
      ->check(CLI::IsMember({"exact", "float"}))
      ->capture_default_str();
}

FamilySpec parse_family_or_die(const std::string& text) { return FamilySpec::parse(text); }

void require_exact_support(const FamilySpec& f) {
  if (!f.exact_supported())
    throw std::domain_error("family " + f.str() +
                            " is not exactly representable; rerun with --backend float");
}

std::vector<FamilySpec> parse_family_list(const std::string& text) {
  if (text == "all") return canonical_families();
  std::vector<FamilySpec> out;
  std::string cur;
  for (char c : text + ";") {
    if (c == ';') {
      if (!cur.empty()) out.push_back(FamilySpec::parse(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (out.empty()) throw std::invalid_argument("empty family list");
  return out;
}

template <class S>
void print_table_human(const CompositionTable<S>& t, std::ostream& os) {
  for (const auto& [c, p] : t.entries()) os << c.str() << "\t" << format_value(p) << "\n";
}

template <class S>
void print_table_human(const PartitionTable<S>& t, std::ostream& os) {
  for (const auto& [c, p] : t.entries()) os << c.str() << "\t" << format_value(p) << "\n";
}

template <class S>
std::string table_csv(const CompositionTable<S>& t) {
  std::string out = "parts,p\n";
  for (const auto& [c, p] : t.entries()) out += "\"" + c.str() + "\"," + format_value(p) + "\n";
  return out;
}

template <class S>
std::string table_csv(const PartitionTable<S>& t) {
  std::string out = "parts,p\n";
  for (const auto& [c, p] : t.entries()) out += "\"" + c.str() + "\"," + format_value(p) + "\n";
  return out;
}

// ---------------------------------------------------------------------------

template <class S>
int run_cpf(const FamilySpec& fam, int n, const std::string& comp_text, const OutputMode& mode) {
  DecrementMatrix<S> q = fam.qmatrix<S>(n);
  if (!comp_text.empty()) {
    Composition c = Composition::parse(comp_text);
    if (c.n() != n) throw std::invalid_argument("composition does not sum to n");
    std::cout << format_value(cpf(q, c)) << "\n";
    return 0;
  }
  CompositionTable<S> t = cpf_table(q, n);
  if (mode.json)
    std::cout << table_to_json(t).dump(2) << "\n";
  else if (mode.csv)
    std::cout << table_csv(t);
  else
    print_table_human(t, std::cout);
  return 0;
}

template <class S>
int run_ppf(const FamilySpec& fam, int n, const std::string& part_text, const OutputMode& mode) {
  DecrementMatrix<S> q = fam.qmatrix<S>(n);
  if (!part_text.empty()) {
    Partition lam = Partition::parse(part_text);
    if (lam.n() != n) throw std::invalid_argument("partition does not sum to n");
    std::cout << format_value(ppf_table(q, n).at(lam)) << "\n";
    return 0;
  }
  PartitionTable<S> t = ppf_table(q, n);
  if (mode.json)
    std::cout << table_to_json(t).dump(2) << "\n";
  else if (mode.csv)
    std::cout << table_csv(t);
  else
    print_table_human(t, std::cout);
  return 0;
}

template <class S>
int run_qmatrix(const FamilySpec& fam, int n, const OutputMode& mode) {
  DecrementMatrix<S> q = fam.qmatrix<S>(n);
  if (mode.json) {
    nlohmann::json rows = nlohmann::json::array();
    for (int level = 1; level <= n; ++level) {
      nlohmann::json row = nlohmann::json::array();
      for (int m = 1; m <= level; ++m) row.push_back(format_value(q.q(level, m)));
      rows.push_back(std::move(row));
    }
    std::cout << nlohmann::json{{"family", fam.str()}, {"rows", rows}}.dump(2) << "\n";
  } else {
    std::cout << qmatrix_to_csv(q);
  }
  return 0;
}

template <class S>
int run_green(const FamilySpec& fam, int n, bool compare_closed) {
  DecrementMatrix<S> q = fam.qmatrix<S>(n);
  if (!compare_closed) {
    std::cout << green_to_csv(n, green_dp(q, n));
    return 0;
  }
  LevyModel<S> model = fam.model<S>();
  std::vector<S> phi(2 * n);
  phi[0] = backend<S>::from_int(0);
  for (int i = 1; i < 2 * n; ++i) phi[i] = model.phi_normalized(i);
  GreenClosedReport<S> rep = green_closed(std::span<const S>(phi), q, n);
  std::cout << green_to_csv(n, rep);
  std::cerr << "max |closed - dp| = " << format_value(rep.max_abs_diff)
            << " (printed closed form documented as discrepant)\n";
  return 0;
}

int run_sample(const std::string& kind, const std::string& family_text, double alpha,
               double theta, double x, int n, int reps, std::uint64_t seed, bool as_bits) {
  std::optional<FamilySpec> fam;
  if (!family_text.empty()) fam = parse_family_or_die(family_text);
  for (int rep = 0; rep < reps; ++rep) {
    RngStream rng(seed, static_cast<std::uint64_t>(rep));
    if (kind == "chain") {
      if (!fam) throw std::invalid_argument("sample chain requires --family");
      auto family = fam->chain_family(n);
      std::cout << sample_chain(*family, n, rng).str() << "\n";
    } else if (kind == "stick") {
      WSpec w{};
      if (fam && fam->family() == "beta-sb")
        w = WSpec::beta_w(to_double(fam->param("gamma")), to_double(fam->param("theta")));
      else if (fam && fam->family() == "ewens")
        w = WSpec::beta_w(1.0, to_double(fam->param("theta")));
      else if (x > 0)
        w = WSpec::point_w(x);
      else
        throw std::invalid_argument(
            "sample stick requires --family beta-sb/ewens or --x for a point mass");
      std::cout << sample_stickbreaking(w, n, rng).str() << "\n";
    } else if (kind == "crp") {
      std::cout << sample_crp(alpha, theta, n, rng).str() << "\n";
    } else if (kind == "ocrp") {
      std::cout << sample_ordered_crp_alpha_alpha(alpha, n, rng).str() << "\n";
    } else if (kind == "bstring" || kind == "rstring") {
      std::vector<std::uint8_t> bits = kind == "bstring"
                                           ? sample_bernoulli_string_dual_ewens(theta, n, rng)
                                           : sample_renewal_string_alpha(alpha, n, rng);
      if (as_bits) {
        std::string s;
        for (auto b : bits) s += b ? '1' : '0';
        std::cout << s << "\n";
      } else {
        std::cout << composition_from_bits(bits).str() << "\n";
      }
    } else {
      throw std::invalid_argument("unknown sample kind: " + kind);
    }
  }
  return 0;
}

int run_blocks(const std::string& family_text, const std::string& sampler_kind,
               const std::string& n_list, int reps, std::uint64_t seed, int r_max,
               const std::string& targets, const OutputMode& mode) {
  FamilySpec fam = parse_family_or_die(family_text);
  std::vector<int> ns;
  {
    std::string cur;
    for (char c : n_list + ",") {
      if (c == ',') {
        if (!cur.empty()) ns.push_back(std::stoi(cur));
        cur.clear();
      } else {
        cur += c;
      }
    }
  }
  if (ns.empty()) throw std::invalid_argument("blocks: empty n list");

  bool first = true;
  nlohmann::json all = nlohmann::json::array();
  for (int n : ns) {
    std::unique_ptr<BlockSampler> sampler;
    if (sampler_kind == "chain") {
      sampler = make_chain_block_sampler(fam.chain_family(n), "chain:" + fam.str());
    } else if (sampler_kind == "stick") {
      WSpec w{};
      if (fam.family() == "beta-sb")
        w = WSpec::beta_w(to_double(fam.param("gamma")), to_double(fam.param("theta")));
      else if (fam.family() == "ewens")
        w = WSpec::beta_w(1.0, to_double(fam.param("theta")));
      else
        throw std::invalid_argument("stick sampler requires a beta-sb or ewens family");
      sampler = make_stick_block_sampler(w, "stick:" + fam.str());
    } else {
      throw std::invalid_argument("unknown --sampler (chain|stick)");
    }
    McOptions opt;
    opt.n = n;
    opt.reps = reps;
    opt.seed = seed;
    opt.r_max = r_max;
    McSummary summary = mc_blocks(*sampler, opt);

    std::map<std::string, double> target_map;
    if (targets == "dp" || (targets == "auto" && n <= 20000)) {
      target_map["K"] = expected_Kn_dp(*fam.chain_family(n), n);
    }
    if (mode.json) {
      nlohmann::json j = mc_summary_to_json(summary, target_map);
      j["family"] = fam.str();
      all.push_back(std::move(j));
    } else {
      std::string csv = mc_summary_to_csv(summary, target_map);
      if (!first) csv = csv.substr(csv.find('\n') + 1);  // keep a single header
      std::cout << csv;
      first = false;
    }
  }
  if (mode.json) std::cout << all.dump(2) << "\n";
  return 0;
}

int run_check(const std::string& suite, const std::string& families_text, int n_max) {
  std::vector<FamilySpec> families = parse_family_list(families_text);
  std::vector<std::string> suites;
  if (suite == "all")
    suites = check_suite_names();
  else
    suites.push_back(suite);
  bool all_pass = true;
  for (const std::string& s : suites) {
    int cap = n_max;
    if (s == "stationarity" || s == "markovian") cap = std::min(cap, 6);
    if (s == "kernel" || s == "regeneration" || s == "consistency") cap = std::min(cap, 7);
    CheckResult r = run_check_suite(s, families, cap);
    std::cout << (r.pass ? "PASS" : "FAIL") << " " << r.suite << ": " << r.detail << "\n";
    all_pass = all_pass && r.pass;
  }
  return all_pass ? 0 : 1;
}

double parse_eta(const std::string& text) {
  if (text == "inf" || text == "infinity")
    return std::numeric_limits<double>::infinity();
  return std::stod(text);
}

int run_arrange(double eta, int k, std::uint64_t seed) {
  RngStream rng(seed, 0);
  std::vector<int> arr = pw_arrangement(eta, k, rng);
  for (std::size_t i = 0; i < arr.size(); ++i) std::cout << (i ? " " : "") << arr[i];
  std::cout << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"regenerative composition structures: exact laws, samplers, checks"};
  app.require_subcommand(1);

  std::string family_text, comp_text, part_text, suite = "all", families_text = "all";
  std::string kind = "chain", sampler_kind = "chain", n_list, targets = "auto";
  OutputMode mode;
  BackendChoice bk;
  int n = 0, n_max = 7, reps = 1, r_max = 20, k = 1;
  std::uint64_t seed = 1;
  double alpha = 0.5, theta = 1.0, x = 0.0;
  std::string eta_text = "1";
  bool compare_closed = false, as_bits = false;

  auto* cpf_cmd = app.add_subcommand("cpf", "composition probabilities (product formula)");
  cpf_cmd->add_option("--family", family_text)->required();
  cpf_cmd->add_option("--n", n)->required()->check(CLI::PositiveNumber);
  cpf_cmd->add_option("--composition", comp_text);
  add_output_flags(cpf_cmd, mode);
  add_backend_flag(cpf_cmd, bk);

  auto* ppf_cmd = app.add_subcommand("ppf", "partition probabilities (symmetrized)");
  ppf_cmd->add_option("--family", family_text)->required();
  ppf_cmd->add_option("--n", n)->required()->check(CLI::PositiveNumber);
  ppf_cmd->add_option("--partition", part_text);
  add_output_flags(ppf_cmd, mode);
  add_backend_flag(ppf_cmd, bk);

  auto* qm_cmd = app.add_subcommand("qmatrix", "decrement matrix rows as CSV");
  qm_cmd->add_option("--family", family_text)->required();
  qm_cmd->add_option("--n", n)->required()->check(CLI::PositiveNumber);
  add_output_flags(qm_cmd, mode);
  add_backend_flag(qm_cmd, bk);

  auto* green_cmd = app.add_subcommand("green", "Green matrix row g(n,.) as CSV");
  green_cmd->add_option("--family", family_text)->required();
  green_cmd->add_option("--n", n)->required()->check(CLI::PositiveNumber);
  green_cmd->add_flag("--compare-closed", compare_closed,
                      "add the printed closed form and its discrepancy");
  add_backend_flag(green_cmd, bk);

  auto* sample_cmd = app.add_subcommand("sample", "stream samples, one per line");
  sample_cmd->add_option("--kind", kind)
      ->check(CLI::IsMember({"chain", "stick", "crp", "ocrp", "bstring", "rstring"}))
      ->capture_default_str();
  sample_cmd->add_option("--family", family_text);
  sample_cmd->add_option("--alpha", alpha);
  sample_cmd->add_option("--theta", theta);
  sample_cmd->add_option("--x", x, "point-mass stick factor");
  sample_cmd->add_option("--n", n)->required()->check(CLI::PositiveNumber);
  sample_cmd->add_option("--reps", reps)->check(CLI::PositiveNumber);
  sample_cmd->add_option("--seed", seed);
  sample_cmd->add_flag("--bits", as_bits, "print strings as bits instead of compositions");

  auto* blocks_cmd = app.add_subcommand("blocks", "Monte Carlo block-count summaries");
  blocks_cmd->add_option("--family", family_text)->required();
  blocks_cmd->add_option("--sampler", sampler_kind)
      ->check(CLI::IsMember({"chain", "stick"}))
      ->capture_default_str();
  blocks_cmd->add_option("--n", n_list, "comma-separated levels")->required();
  blocks_cmd->add_option("--reps", reps)->required()->check(CLI::PositiveNumber);
  blocks_cmd->add_option("--seed", seed);
  blocks_cmd->add_option("--r-max", r_max)->check(CLI::PositiveNumber);
  blocks_cmd->add_option("--targets", targets, "K target: auto|dp|none")
      ->check(CLI::IsMember({"auto", "dp", "none"}))
      ->capture_default_str();
  add_output_flags(blocks_cmd, mode);

  auto* check_cmd = app.add_subcommand("check", "exact verification suites");
  check_cmd->add_option("--suite", suite,
                        "one of: all, consistency, regeneration, symmetrization, kernel, "
                        "stationarity, reversibility, moments-roundtrip, markovian")
      ->capture_default_str();
  check_cmd->add_option("--n-max", n_max)->check(CLI::PositiveNumber);
  check_cmd->add_option("--families", families_text, "all or spec;spec;...")
      ->capture_default_str();

  auto* arrange_cmd = app.add_subcommand("arrange", "Pitman-Winkel arrangement of 1..k");
  arrange_cmd->add_option("--eta", eta_text, "rank parameter (inf for identity)");
  arrange_cmd->add_option("--k", k)->required()->check(CLI::PositiveNumber);
  arrange_cmd->add_option("--seed", seed);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;  // usage errors exit 2
  }

  try {
    if (cpf_cmd->parsed() || ppf_cmd->parsed() || qm_cmd->parsed() || green_cmd->parsed()) {
      FamilySpec fam = parse_family_or_die(family_text);
      if (bk.exact()) require_exact_support(fam);
      if (cpf_cmd->parsed())
        return bk.exact() ? run_cpf<Rat>(fam, n, comp_text, mode)
                          : run_cpf<double>(fam, n, comp_text, mode);
      if (ppf_cmd->parsed())
        return bk.exact() ? run_ppf<Rat>(fam, n, part_text, mode)
                          : run_ppf<double>(fam, n, part_text, mode);
      if (qm_cmd->parsed())
        return bk.exact() ? run_qmatrix<Rat>(fam, n, mode) : run_qmatrix<double>(fam, n, mode);
      return bk.exact() ? run_green<Rat>(fam, n, compare_closed)
                        : run_green<double>(fam, n, compare_closed);
    }
    if (sample_cmd->parsed())
      return run_sample(kind, family_text, alpha, theta, x, n, reps, seed, as_bits);
    if (blocks_cmd->parsed())
      return run_blocks(family_text, sampler_kind, n_list, reps, seed, r_max, targets, mode);
    if (check_cmd->parsed()) return run_check(suite, families_text, n_max);
    if (arrange_cmd->parsed()) return run_arrange(parse_eta(eta_text), k, seed);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
