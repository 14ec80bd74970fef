#include "chen/formdsl.hpp"
#include "chen/identities.hpp"
#include "chen/random.hpp"

#include <gtest/gtest.h>

#include <json.hpp>

#include <cmath>

using namespace chen;

namespace {

Form F(const char* text, int n) { return parse_form(text, n); }

CaseConfig quick(int trials = 3) {
  CaseConfig cfg;
  cfg.trials = trials;
  cfg.quad.m = 512;
  cfg.based = true;
  return cfg;
}

double value(const PathForm& a, const Trial& tr) { return a(tr.path, tr.variations); }

}  // namespace

TEST(Identities, NamesRoundTrip) {
  EXPECT_EQ(all_identities().size(), 19u);
  for (auto id : all_identities()) EXPECT_EQ(parse_identity(to_string(id)), id);
  EXPECT_THROW(parse_identity("THM_9_9"), std::invalid_argument);
  EXPECT_EQ(default_tolerance(IdentityId::CARTAN_2_2), 0.0);
  EXPECT_EQ(default_tolerance(IdentityId::PROP_3_1), 1e-9);
  EXPECT_TRUE(is_based(IdentityId::THM_5_2));
  EXPECT_FALSE(is_based(IdentityId::COR_4_9_1));
}

TEST(Identities, ExactAndQuadratureIdentitiesPassAtDefaults) {
  CaseConfig cfg = quick(5);
  cfg.quad.m = 1024;
  for (auto id : {IdentityId::CARTAN_2_2, IdentityId::PROP_3_1, IdentityId::PROP_3_3, IdentityId::PROP_4_10,
                  IdentityId::COR_4_10_1}) {
    const Report r = run_suite({id}, cfg)[0];
    EXPECT_TRUE(r.pass) << to_string(id) << " max " << r.max_residual;
  }
}

TEST(Identities, Prop31ExampleSeed) {
  CaseConfig cfg;
  cfg.trials = 100;
  cfg.seed = 7;
  const Report r = run_suite({IdentityId::PROP_3_1}, cfg)[0];
  EXPECT_TRUE(r.pass) << r.max_residual;
}

// Residuals of the finite-difference identities are O(h^2); with a smaller
// step every identity holds well inside its tolerance.
TEST(Identities, EveryIdentityHoldsWithFineStep) {
  CaseConfig cfg = quick(4);
  cfg.fd.h = 2.5e-4;
  for (auto id : all_identities()) {
    const Report r = run_suite({id}, cfg)[0];
    EXPECT_TRUE(r.failures.empty()) << to_string(id);
    EXPECT_LE(r.max_residual, r.tolerance) << to_string(id);
  }
}

TEST(Identities, FiniteDifferenceResidualScalesAsStepSquared) {
  CaseConfig cfg = quick();
  cfg.quad.m = 1024;
  const Trial tr = sample_trial(IdentityId::PROP_4_2, cfg, 0);
  double prev = 0;
  for (double h : {2e-3, 1e-3, 5e-4}) {
    cfg.fd.h = h;
    const double r = residual(IdentityId::PROP_4_2, tr, cfg);
    if (prev > 0 && prev > 1e-9) EXPECT_NEAR(prev / r, 4.0, 0.3);
    prev = r;
  }
}

TEST(Identities, GeneralFormulaSpecializes) {
  Rng rng(31);
  const QuadratureConfig q{256};
  for (int trial = 0; trial < 5; ++trial) {
    const int n = 3;
    const Form a = random_form(rng, n, rng.integer(1, 2)), b = random_form(rng, n, rng.integer(1, 2)),
               c = random_form(rng, n, 1);
    const Path p(random_curve(rng, n));
    const double s1 = rng.unit(), s2 = rng.unit(), s3 = rng.unit(), t = rng.unit();

    const int q2 = a.degree() + b.degree() - 1;
    std::vector<Variation> vs;
    for (int i = 0; i < q2; ++i) vs.emplace_back(random_curve(rng, n));
    const double g2 = d_iterated_general({a, b}, {s1, s2}, t, q)(p, vs);
    const double k2 = d_iterated_two(a, b, s1, s2, t, q)(p, vs);
    EXPECT_NEAR(g2, k2, 1e-12 * (1 + std::abs(k2)));

    const double g3 = d_iterated_general({a, b, c}, {s1, s2, s3}, t, q)(p, vs);
    const double k3 = d_iterated_three(a, b, c, s1, s2, s3, t, q)(p, vs);
    EXPECT_NEAR(g3, k3, 1e-12 * (1 + std::abs(k3)));
  }
}

TEST(Identities, Thm46WithRepeatedForm) {
  CaseConfig cfg;
  Trial tr = sample_trial(IdentityId::THM_4_6, cfg, 0);
  tr.word = {F("dx1", 3), F("dx1", 3)};
  tr.times = {0, 0};
  tr.t = 1;
  tr.variations.erase(tr.variations.begin() + 1, tr.variations.end());
  EXPECT_LE(residual(IdentityId::THM_4_6, tr, cfg), 1e-5);
}

TEST(Identities, Thm53ClosedFormsReduceToWedgeTerm) {
  CaseConfig cfg;
  cfg.based = true;
  cfg.k = 2;
  Trial tr = sample_trial(IdentityId::THM_5_3, cfg, 0);
  tr.word = {F("dx1 + 2 dx2", 3), F("dx3 - dx1", 3)};
  tr.variations.erase(tr.variations.begin() + 1, tr.variations.end());
  EXPECT_LE(residual(IdentityId::THM_5_3, tr, cfg), 1e-5);
  const PathForm d = pathform_d(iterated_integral(tr.word, {0, 0}, 1));
  const PathForm merged = simple_integral(wedge(tr.word[0], tr.word[1]), 0, 1);
  EXPECT_NEAR(value(d, tr), -value(merged, tr), 1e-5);
}

TEST(Identities, BasedTrialsArePinned) {
  CaseConfig cfg = quick();
  for (auto id : {IdentityId::THM_5_1, IdentityId::THM_5_2, IdentityId::THM_5_3}) {
    const Trial tr = sample_trial(id, cfg, 1);
    ASSERT_TRUE(tr.constraint.has_value());
    EXPECT_TRUE(tr.constraint->admits(tr.path));
    for (const auto& v : tr.variations) {
      if (tr.constraint->start) EXPECT_TRUE(v.vanishes_at_0());
      if (tr.constraint->end) EXPECT_TRUE(v.vanishes_at_1());
    }
  }
}

TEST(Identities, BoundaryTermsVanishOnBasedPaths) {
  CaseConfig cfg = quick();
  const Trial tr = sample_trial(IdentityId::THM_5_3, cfg, 2);
  const Form w = F("x1 dx2 + dx3", 3);
  for (double t : {0.0, 1.0})
    for (const auto& v : tr.variations) EXPECT_NEAR(pullback_at(w, t)(tr.path, {&v, 1}), 0.0, 1e-12);
}

TEST(Identities, BasedIdsNeedTheFlag) {
  CaseConfig cfg = quick();
  cfg.based = false;
  EXPECT_THROW(run_suite({IdentityId::THM_5_3}, cfg), std::invalid_argument);
  const Trial tr = sample_trial(IdentityId::THM_5_1, cfg, 0);
  EXPECT_THROW(residual(IdentityId::THM_5_1, tr, cfg), std::invalid_argument);
}

TEST(Identities, EmptyIdsGiveEmptyReport) {
  EXPECT_TRUE(run_suite({}, quick()).empty());
  EXPECT_EQ(reports_json({}), "[]");
}

TEST(Identities, Deterministic) {
  const CaseConfig cfg = quick(3);
  const auto a = run_suite({IdentityId::THM_4_6, IdentityId::COR_3_2_2}, cfg);
  const auto b = run_suite({IdentityId::THM_4_6, IdentityId::COR_3_2_2}, cfg);
  ASSERT_EQ(a.size(), b.size());
  for (size_t i = 0; i < a.size(); ++i) EXPECT_EQ(a[i].residuals, b[i].residuals);
  EXPECT_EQ(reports_json(a), reports_json(b));
  CaseConfig other = cfg;
  other.seed = 2;
  EXPECT_NE(run_suite({IdentityId::THM_4_6}, other)[0].residuals, a[0].residuals);
}

TEST(Identities, ReportJson) {
  CaseConfig cfg = quick(2);
  const auto reports = run_suite({IdentityId::PROP_3_3, IdentityId::COR_4_9_1}, cfg);
  const auto j = nlohmann::json::parse(reports_json(reports));
  ASSERT_EQ(j.size(), 2u);
  for (const char* key : {"identity", "trials", "max_residual", "tolerance", "pass", "seed", "config"})
    EXPECT_TRUE(j[0].contains(key)) << key;
  EXPECT_EQ(j[0]["identity"], "PROP_3_3");
  EXPECT_EQ(j[0]["config"]["convention"], std::string(kConvention));
  EXPECT_EQ(j[0]["config"]["grid"], 512);
  EXPECT_FALSE(j[1]["notes"].empty());
}

TEST(Identities, ConfigValidation) {
  CaseConfig cfg;
  cfg.n = 5;
  EXPECT_THROW(cfg.validate(), std::invalid_argument);
  cfg.n = 3;
  cfg.k = 5;
  EXPECT_THROW(cfg.validate(), std::invalid_argument);
  cfg.k.reset();
  cfg.quad.m = 100 + 1;
  EXPECT_THROW(cfg.validate(), std::invalid_argument);
}
