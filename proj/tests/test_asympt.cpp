#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "rcs/blockstats.hpp"
#include "rcs/family_spec.hpp"
#include "rcs/io.hpp"

using namespace rcs;

namespace {
constexpr double kPi = 3.14159265358979323846;
}

TEST_CASE("count_blocks") {
  BlockStats s = count_blocks(Composition({2, 4, 2, 1, 1}));
  CHECK(s.n == 10);
  CHECK(s.K == 5);
  CHECK(s.K_r[0] == 2);
  CHECK(s.K_r[1] == 2);
  CHECK(s.K_r[2] == 0);
  CHECK(s.K_r[3] == 1);

  BlockStats one = count_blocks(Composition({7}));
  CHECK(one.K == 1);
  CHECK(one.K_r[6] == 1);

  BlockStats singles = count_blocks(Composition({1, 1, 1}));
  CHECK(singles.K == 3);
  CHECK(singles.K_r[0] == 3);

  // tail aggregation beyond r_max
  BlockStats trunc = count_blocks(Composition({5, 1}), 3);
  CHECK(trunc.K_r.size() == 4);
  CHECK(trunc.K_r[0] == 1);
  CHECK(trunc.K_r[3] == 1);
}

TEST_CASE("expected_Kn_dp") {
  DecrementMatrix<Rat> ew = DecrementMatrix<Rat>::ewens(Rat(1), 10);
  CHECK(expected_Kn_dp(ew, 3) == Rat(11, 6));
  DecrementMatrix<Rat> ob = DecrementMatrix<Rat>::ewens(Rat(0), 6);
  CHECK(expected_Kn_dp(ob, 6) == 1);
  DecrementMatrix<Rat> hk = DecrementMatrix<Rat>::hook(Rat(1), 4);
  CHECK(expected_Kn_dp(hk, 2) == Rat(5, 3));

  // harmonic numbers for ewens(theta): sum theta/(theta+j-1)
  Rat th(2);
  DecrementMatrix<Rat> ew2 = DecrementMatrix<Rat>::ewens(th, 10);
  Rat h = 0;
  for (int j = 1; j <= 10; ++j) h += th / (th + j - 1);
  CHECK(expected_Kn_dp(ew2, 10) == h);

  // family-row recursion at large n agrees with the matrix version
  for (const FamilySpec& f : canonical_families()) {
    DecrementMatrix<double> q = f.qmatrix<double>(50);
    double a = expected_Kn_dp(q, 50);
    double b = expected_Kn_dp(*f.chain_family(50), 50);
    CHECK(a == doctest::Approx(b).epsilon(1e-10));
  }
}

TEST_CASE("structural-law expectations") {
  // (0,1): E[K_3] = 11/6 via the beta(1,1) structural law
  StructuralLaw<Rat> s01 = StructuralLaw<Rat>::two_param(Rat(0), Rat(1));
  CHECK(expected_Kn_structural(s01, 3) == Rat(11, 6));

  // one-block structural law: K_n = 1 with the single part n
  StructuralLaw<Rat> ob = StructuralLaw<Rat>::one_block();
  for (int n = 1; n <= 6; ++n) {
    CHECK(expected_Kn_structural(ob, n) == 1);
    for (int r = 1; r <= n; ++r)
      CHECK(expected_Knr_structural(ob, n, r) == (r == n ? 1 : 0));
  }

  // (1/2,0): E[K_{4,1}] against full enumeration
  StructuralLaw<Rat> sa = StructuralLaw<Rat>::two_param(Rat(1, 2), Rat(0));
  DecrementMatrix<Rat> q = DecrementMatrix<Rat>::two_param(Rat(1, 2), Rat(0), 4);
  Rat direct = 0;
  for (const Composition& c : enumerate_compositions(4))
    direct += cpf(q, c) * Rat(count_blocks(c).K_r[0]);
  CHECK(expected_Knr_structural(sa, 4, 1) == direct);
  CHECK(expected_Knr_structural(sa, 4, 1) == Rat(5, 16));

  // DP == structural, exact n <= 30, on two-parameter members
  struct Case {
    Rat alpha, theta;
  };
  for (const Case& c : {Case{Rat(0), Rat(1)}, Case{Rat(1, 2), Rat(0)},
                        Case{Rat(1, 2), Rat(1, 2)}, Case{Rat(3, 10), Rat(7, 10)}}) {
    DecrementMatrix<Rat> qq = DecrementMatrix<Rat>::two_param(c.alpha, c.theta, 30);
    StructuralLaw<Rat> law = StructuralLaw<Rat>::two_param(c.alpha, c.theta);
    for (int n : {1, 2, 7, 19, 30})
      CHECK(expected_Kn_dp(qq, n) == expected_Kn_structural(law, n));
  }

  // sum_j g(n,j) = E[K_n], floating, n <= 50
  for (const FamilySpec& f : canonical_families()) {
    DecrementMatrix<double> qd = f.qmatrix<double>(50);
    auto g = green_dp(qd, 50);
    double sum = 0;
    for (double v : g) sum += v;
    CHECK(sum == doctest::Approx(expected_Kn_dp(qd, 50)).epsilon(1e-10));
  }
}

TEST_CASE("exponential functional moments") {
  LevyModel<double> a0 = LevyModel<double>::two_param(0.5, 0.0);
  CHECK(exp_functional_moment(a0, 0.5, 0) == 1.0);
  CHECK(exp_functional_moment(a0, 0.5, 1) == doctest::Approx(2.0 / kPi).epsilon(1e-13));

  // (alpha, theta): closed form prod((j-1)a+t) Gamma(t+1) / (Gamma(ka+t) (a Gamma(1-a))^k)
  double al = 0.5, th = 0.5;
  LevyModel<double> m = LevyModel<double>::two_param(al, th);
  for (int k = 1; k <= 4; ++k) {
    double expect = std::tgamma(th + 1.0);
    for (int j = 1; j < k; ++j) expect *= j * al + th;
    expect /= std::tgamma(k * al + th) * std::pow(al * std::tgamma(1 - al), k);
    CHECK(exp_functional_moment(m, al, k) == doctest::Approx(expect).epsilon(1e-12));
  }

  // Carleman-style sanity: E[I^2] >= (E[I])^2
  for (auto [a, t] : {std::pair{0.5, 0.0}, {0.5, 0.5}, {0.3, 0.7}, {0.9, 0.1}}) {
    LevyModel<double> mm = LevyModel<double>::two_param(a, t);
    double e1 = exp_functional_moment(mm, a, 1);
    double e2 = exp_functional_moment(mm, a, 2);
    CHECK(e2 >= e1 * e1);
  }
}

TEST_CASE("mc_blocks") {
  // one-block family: K = 1 with zero variance
  auto ob = make_chain_block_sampler(FamilySpec::parse("ewens:theta=0").chain_family(100),
                                     "chain:ewens:theta=0");
  McOptions opt;
  opt.n = 100;
  opt.reps = 200;
  opt.seed = 7;
  McSummary s = mc_blocks(*ob, opt);
  CHECK(s.find("K")->est.mean == 1.0);
  CHECK(s.find("K")->est.variance == 0.0);
  CHECK(s.find("M") == nullptr);

  // determinism and thread-count independence
  auto ew = make_chain_block_sampler(FamilySpec::parse("ewens:theta=1").chain_family(500),
                                     "chain:ewens:theta=1");
  McOptions o1;
  o1.n = 500;
  o1.reps = 400;
  o1.seed = 99;
  o1.threads = 1;
  McOptions o4 = o1;
  o4.threads = 4;
  McSummary s1 = mc_blocks(*ew, o1);
  McSummary s4 = mc_blocks(*ew, o4);
  REQUIRE(s1.stats.size() == s4.stats.size());
  for (std::size_t i = 0; i < s1.stats.size(); ++i) {
    CHECK(s1.stats[i].est.mean == s4.stats[i].est.mean);
    CHECK(s1.stats[i].est.variance == s4.stats[i].est.variance);
  }

  // mean within 4 SE of the exact mean at n = 1000 for every canonical family
  for (const FamilySpec& f : canonical_families()) {
    auto sampler = make_chain_block_sampler(f.chain_family(1000), "chain:" + f.str());
    McOptions o;
    o.n = 1000;
    o.reps = 10000;
    o.seed = 4242;
    McSummary sum = mc_blocks(*sampler, o);
    double target = expected_Kn_dp(*f.chain_family(1000), 1000);
    const McStat* k = sum.find("K");
    CHECK(std::fabs(k->est.mean - target) < 4 * std::max(k->est.se, 1e-12));
  }

  // stick sampler reports M and satisfies sum r K_r = n on every draw
  auto stick = make_stick_block_sampler(WSpec::beta_w(1.0, 1.0), "stick:beta(1,1)");
  McOptions so;
  so.n = 200;
  so.reps = 100;
  so.seed = 5;
  McSummary ss = mc_blocks(*stick, so);
  CHECK(ss.find("M") != nullptr);
  CHECK(ss.find("M")->est.mean >= ss.find("K")->est.mean);
}

TEST_CASE("digamma and trigamma") {
  CHECK(digamma(2.0) - digamma(1.0) == doctest::Approx(1.0).epsilon(1e-13));
  CHECK(trigamma(1.0) == doctest::Approx(kPi * kPi / 6).epsilon(1e-12));
  CHECK(digamma(5.0) - digamma(3.0) == doctest::Approx(7.0 / 12).epsilon(1e-10));
  CHECK(trigamma(1.0) - trigamma(2.0) == doctest::Approx(1.0).epsilon(1e-12));
  // recurrence consistency at fractional arguments
  CHECK(digamma(3.75) - digamma(2.75) == doctest::Approx(1.0 / 2.75).epsilon(1e-12));
  CHECK(trigamma(2.25) - trigamma(1.25) == doctest::Approx(-1.0 / (1.25 * 1.25)).epsilon(1e-12));
}

TEST_CASE("stick moments: closed forms vs Monte Carlo") {
  StickMoments u = stick_moments(WSpec::beta_w(1.0, 1.0));
  CHECK(u.m == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(u.sigma2 == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(u.m1 == doctest::Approx(1.0).epsilon(1e-12));
  StickMoments mc = stick_moments_mc(WSpec::beta_w(1.0, 1.0), 10000000, 13);
  CHECK(std::fabs(mc.m - 1.0) < 4.0 / std::sqrt(1e7));         // sd of -log(1-U) is 1
  CHECK(std::fabs(mc.sigma2 - 1.0) < 0.01);

  StickMoments b23 = stick_moments(WSpec::beta_w(2.0, 3.0));
  CHECK(b23.m == doctest::Approx(7.0 / 12).epsilon(1e-10));
  CHECK(b23.m1 == doctest::Approx(digamma(5.0) - digamma(2.0)).epsilon(1e-12));
  StickMoments b23mc = stick_moments_mc(WSpec::beta_w(2.0, 3.0), 2000000, 17);
  CHECK(std::fabs(b23mc.m - b23.m) < 4 * std::sqrt(b23.sigma2 / 2e6));
  CHECK(std::fabs(b23mc.sigma2 - b23.sigma2) < 0.01);

  StickMoments pt = stick_moments(WSpec::point_w(1.0));
  CHECK(!pt.finite);
}

TEST_CASE("clt diagnostic flags degenerate factors") {
  CltCaseAReport r1 = clt_case_a_diagnostic(WSpec::point_w(1.0), 100, 10, 1);
  CHECK(r1.degenerate);
  CltCaseAReport r2 = clt_case_a_diagnostic(WSpec::point_w(0.5), 100, 10, 1);
  CHECK(r2.degenerate);  // sigma^2 = 0
  // smoke run: ratios land near 1 already at moderate n
  CltCaseAReport r3 = clt_case_a_diagnostic(WSpec::beta_w(1.0, 1.0), 5000, 400, 3);
  CHECK(!r3.degenerate);
  CHECK(r3.mean_ratio > 0.8);
  CHECK(r3.mean_ratio < 1.3);
}

TEST_CASE("phi012 on the gamma-harmonic family") {
  // Phi0(n) approaches Phi(n) = digamma(theta+n) - digamma(theta)
  Phi012Result p5 = phi012_gamma_harmonic(1.0, 1e5);
  double phi = digamma(1.0 + 1e5) - digamma(1.0);
  CHECK(std::fabs(p5.phi0 - phi) / phi < 0.01);

  // Phi2 >> Phi1 >> Phi0: the ratios grow along n = 1e3, 1e4, 1e5
  Phi012Result p3 = phi012_gamma_harmonic(1.0, 1e3);
  Phi012Result p4 = phi012_gamma_harmonic(1.0, 1e4);
  CHECK(p3.phi1 / p3.phi0 > 1.0);
  CHECK(p4.phi1 / p4.phi0 > p3.phi1 / p3.phi0);
  CHECK(p5.phi1 / p5.phi0 > p4.phi1 / p4.phi0);
  CHECK(p3.phi2 / p3.phi1 > 1.0);
  CHECK(p4.phi2 / p4.phi1 > p3.phi2 / p3.phi1);
  CHECK(p5.phi2 / p5.phi1 > p4.phi2 / p4.phi1);

  // E[K_n] ~ Phi1(n) ~ theta log^2 n / 2 for the log-type exponent
  Phi012Result p6 = phi012_gamma_harmonic(1.0, 1e6);
  double lead = std::log(1e6) * std::log(1e6) / 2;
  CHECK(std::fabs(p6.phi1 / lead - 1.0) < 0.10);
}

TEST_CASE("statistics utilities") {
  // frozen chi-square quantiles (significance 1e-3 and 0.05)
  CHECK(chi2_quantile(1 - 1e-3, 1) == doctest::Approx(10.827566170662733).epsilon(1e-9));
  CHECK(chi2_quantile(1 - 1e-3, 6) == doctest::Approx(22.457744484825323).epsilon(1e-9));
  CHECK(chi2_quantile(1 - 1e-3, 15) == doctest::Approx(37.69729821835383).epsilon(1e-9));
  CHECK(chi2_quantile(1 - 1e-3, 31) == doctest::Approx(61.098306081058126).epsilon(1e-9));
  CHECK(chi2_quantile(0.95, 10) == doctest::Approx(18.307038053275146).epsilon(1e-9));
  CHECK(gamma_p(3.0, 2.5) == doctest::Approx(0.45618688411667035).epsilon(1e-12));
  CHECK(gamma_p(0.5, 0.5) == doctest::Approx(0.6826894921370859).epsilon(1e-12));

  std::vector<double> v{1.0, 2.0, 3.0, 4.0};
  MomentsEstimate e = estimate_moments(v);
  CHECK(e.mean == 2.5);
  CHECK(e.variance == doctest::Approx(5.0 / 3));
  CHECK(pairwise_sum(v) == 10.0);
}

TEST_CASE("serialization formats") {
  DecrementMatrix<Rat> q = DecrementMatrix<Rat>::ewens(Rat(1), 3);
  nlohmann::json tj = table_to_json(cpf_table(q, 3));
  CHECK(tj["n"] == 3);
  CHECK(tj["kind"] == "composition");
  bool found = false;
  for (const auto& e : tj["entries"])
    if (e["parts"] == nlohmann::json({2, 1})) {
      CHECK(e["p"] == "1/3");
      found = true;
    }
  CHECK(found);

  std::string csv = qmatrix_to_csv(q);
  CHECK(csv.rfind("n,m,q\n", 0) == 0);
  CHECK(csv.find("3,2,1/3\n") != std::string::npos);

  Partition lam({2, 1, 1});
  DecrementMatrix<Rat> ew4 = DecrementMatrix<Rat>::ewens(Rat(1), 4);
  PpfCache<Rat> cache4(ew4);
  nlohmann::json kj = kernel_to_json(lam, deletion_kernel(cache4, lam));
  CHECK(kj["shape"] == nlohmann::json({2, 1, 1}));
  CHECK(kj["d"]["2"] == "1/2");
  CHECK(kj["d"]["1"] == "1/2");

  auto sampler = make_chain_block_sampler(FamilySpec::parse("ewens:theta=1").chain_family(50),
                                          "chain:ewens:theta=1");
  McOptions o;
  o.n = 50;
  o.reps = 100;
  o.seed = 3;
  o.r_max = 2;
  McSummary s = mc_blocks(*sampler, o);
  std::string mcsv = mc_summary_to_csv(s, {{"K", 4.5}});
  CHECK(mcsv.rfind("n,stat,estimate,se,lo95,hi95,target,ratio\n", 0) == 0);
  nlohmann::json mj = mc_summary_to_json(s, {{"K", 4.5}});
  CHECK(mj["seed"] == 3);
  CHECK(mj["stats"][0]["stat"] == "K");
  CHECK(mj["stats"][0].contains("ratio"));
}
