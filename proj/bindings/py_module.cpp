#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "rcs/blockstats.hpp"
#include "rcs/checks.hpp"
#include "rcs/family_spec.hpp"
#include "rcs/io.hpp"

namespace py = pybind11;
using namespace rcs;

namespace {

// Exact values cross the boundary as "a/b" strings; floating values as floats.
std::vector<std::vector<std::string>> qmatrix_exact(const std::string& family, int n) {
  DecrementMatrix<Rat> q = FamilySpec::parse(family).qmatrix<Rat>(n);
  std::vector<std::vector<std::string>> rows;
  for (int level = 1; level <= n; ++level) {
    std::vector<std::string> row;
    for (int m = 1; m <= level; ++m) row.push_back(format_value(q.q(level, m)));
    rows.push_back(std::move(row));
  }
  return rows;
}

std::vector<std::vector<double>> qmatrix_float(const std::string& family, int n) {
  DecrementMatrix<double> q = FamilySpec::parse(family).qmatrix<double>(n);
  std::vector<std::vector<double>> rows;
  for (int level = 1; level <= n; ++level) rows.push_back(q.row(level));
  return rows;
}

py::dict cpf_table_py(const std::string& family, int n, bool exact) {
  py::dict out;
  if (exact) {
    DecrementMatrix<Rat> q = FamilySpec::parse(family).qmatrix<Rat>(n);
    for (const auto& [c, p] : cpf_table(q, n).entries())
      out[py::str(c.str())] = format_value(p);
  } else {
    DecrementMatrix<double> q = FamilySpec::parse(family).qmatrix<double>(n);
    for (const auto& [c, p] : cpf_table(q, n).entries()) out[py::str(c.str())] = p;
  }
  return out;
}

py::dict ppf_table_py(const std::string& family, int n, bool exact) {
  py::dict out;
  if (exact) {
    DecrementMatrix<Rat> q = FamilySpec::parse(family).qmatrix<Rat>(n);
    for (const auto& [lam, p] : ppf_table(q, n).entries())
      out[py::str(lam.str())] = format_value(p);
  } else {
    DecrementMatrix<double> q = FamilySpec::parse(family).qmatrix<double>(n);
    for (const auto& [lam, p] : ppf_table(q, n).entries()) out[py::str(lam.str())] = p;
  }
  return out;
}

std::vector<std::vector<int>> sample_chain_py(const std::string& family, int n, int reps,
                                              std::uint64_t seed) {
  auto fam = FamilySpec::parse(family).chain_family(n);
  std::vector<std::vector<int>> out;
  out.reserve(reps);
  for (int i = 0; i < reps; ++i) {
    RngStream rng(seed, static_cast<std::uint64_t>(i));
    out.push_back(sample_chain(*fam, n, rng).parts());
  }
  return out;
}

std::vector<std::vector<int>> sample_stick_py(double a, double b, int n, int reps,
                                              std::uint64_t seed) {
  std::vector<std::vector<int>> out;
  out.reserve(reps);
  for (int i = 0; i < reps; ++i) {
    RngStream rng(seed, static_cast<std::uint64_t>(i));
    out.push_back(sample_stickbreaking(WSpec::beta_w(a, b), n, rng).parts());
  }
  return out;
}

std::vector<std::vector<int>> sample_crp_py(double alpha, double theta, int n, int reps,
                                            std::uint64_t seed) {
  std::vector<std::vector<int>> out;
  out.reserve(reps);
  for (int i = 0; i < reps; ++i) {
    RngStream rng(seed, static_cast<std::uint64_t>(i));
    out.push_back(sample_crp(alpha, theta, n, rng).parts());
  }
  return out;
}

py::dict mc_blocks_py(const std::string& family, int n, int reps, std::uint64_t seed,
                      int r_max) {
  FamilySpec fam = FamilySpec::parse(family);
  auto sampler = make_chain_block_sampler(fam.chain_family(n), "chain:" + fam.str());
  McOptions opt;
  opt.n = n;
  opt.reps = reps;
  opt.seed = seed;
  opt.r_max = r_max;
  McSummary s = mc_blocks(*sampler, opt);
  py::dict out;
  out["n"] = s.n;
  out["reps"] = s.reps;
  out["seed"] = s.seed;
  out["sampler"] = s.sampler;
  py::dict stats;
  for (const McStat& st : s.stats) {
    py::dict d;
    d["mean"] = st.est.mean;
    d["variance"] = st.est.variance;
    d["se"] = st.est.se;
    stats[py::str(st.name)] = d;
  }
  out["stats"] = stats;
  return out;
}

py::dict run_check_py(const std::string& suite, int n_max) {
  CheckResult r = run_check_suite(suite, canonical_families(), n_max);
  py::dict out;
  out["suite"] = r.suite;
  out["pass"] = r.pass;
  out["detail"] = r.detail;
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "regenerative composition structures: exact laws, samplers, diagnostics";

  m.def("binary_encode", [](const std::vector<int>& parts) {
    return Composition(parts).code();
  });
  m.def("binary_decode", [](const std::string& code) {
    return Composition::from_code(code).parts();
  });
  m.def("multinomial_count", [](const std::vector<int>& parts) {
    return multinomial_count(Composition(parts)).str();
  });
  m.def("shape_count", [](const std::vector<int>& parts) {
    return shape_count(Partition(parts)).str();
  });
  m.def("compositions", [](int n) {
    std::vector<std::vector<int>> out;
    for (const Composition& c : enumerate_compositions(n)) out.push_back(c.parts());
    return out;
  });
  m.def("partitions", [](int n) {
    std::vector<std::vector<int>> out;
    for (const Partition& p : enumerate_partitions(n)) out.push_back(p.parts());
    return out;
  });

  m.def("qmatrix", &qmatrix_exact, py::arg("family"), py::arg("n"),
        "decrement matrix rows as exact fraction strings");
  m.def("qmatrix_float", &qmatrix_float, py::arg("family"), py::arg("n"));
  m.def("cpf_table", &cpf_table_py, py::arg("family"), py::arg("n"), py::arg("exact") = true);
  m.def("ppf_table", &ppf_table_py, py::arg("family"), py::arg("n"), py::arg("exact") = true);
  m.def("green", [](const std::string& family, int n) {
    DecrementMatrix<double> q = FamilySpec::parse(family).qmatrix<double>(n);
    return green_dp(q, n);
  });
  m.def("expected_kn", [](const std::string& family, int n) {
    return expected_Kn_dp(*FamilySpec::parse(family).chain_family(n), n);
  });
  m.def("laplace_exponent", [](const std::string& family, double rho) {
    return FamilySpec::parse(family).model<double>().laplace(rho);
  });
  m.def("exp_functional_moment", [](const std::string& family, double alpha, int k) {
    return exp_functional_moment(FamilySpec::parse(family).model<double>(), alpha, k);
  });

  m.def("sample_chain", &sample_chain_py, py::arg("family"), py::arg("n"), py::arg("reps"),
        py::arg("seed"));
  m.def("sample_stickbreaking", &sample_stick_py, py::arg("a"), py::arg("b"), py::arg("n"),
        py::arg("reps"), py::arg("seed"));
  m.def("sample_crp", &sample_crp_py, py::arg("alpha"), py::arg("theta"), py::arg("n"),
        py::arg("reps"), py::arg("seed"));
  m.def("arrangement", [](double eta, int k, std::uint64_t seed) {
    RngStream rng(seed, 0);
    return pw_arrangement(eta, k, rng);
  });

  m.def("mc_blocks", &mc_blocks_py, py::arg("family"), py::arg("n"), py::arg("reps"),
        py::arg("seed"), py::arg("r_max") = 20);
  m.def("run_check", &run_check_py, py::arg("suite"), py::arg("n_max") = 6);
  m.def("check_suites", [] { return check_suite_names(); });
}
