#pragma once

#include "chen/forms.hpp"
#include "chen/pathforms.hpp"
#include "chen/paths.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace chen {

enum class IdentityId {
  CARTAN_2_2,
  PROP_3_1,
  COR_3_2_2,
  PROP_3_3,
  PROP_3_4,
  PROP_4_2,
  PROP_4_3,
  PROP_4_4,
  LEMMA_4_5,
  THM_4_6,
  LEMMA_4_7,
  THM_4_8,
  THM_4_9,
  COR_4_9_1,
  PROP_4_10,
  COR_4_10_1,
  THM_5_1,
  THM_5_2,
  THM_5_3,
};

const std::vector<IdentityId>& all_identities();
std::string_view to_string(IdentityId id);
/// Throws std::invalid_argument for an unknown name.
IdentityId parse_identity(std::string_view name);
double default_tolerance(IdentityId id);
bool is_based(IdentityId id);

inline constexpr std::string_view kConvention = "iX-first-slot; shuffle-wedge; Simpson-m; central-h";

struct CaseConfig {
  int n = 3;
  /// Word length for the general-k identities; unset cycles through the
  /// admissible lengths trial by trial.
  std::optional<int> k;
  /// Upper bound on the degree of each word entry and boundary factor.
  int max_degree = 2;
  std::uint64_t seed = 1;
  int trials = 20;
  QuadratureConfig quad;
  FdConfig fd;
  /// Pin endpoints (as the identity requires) and use endpoint-vanishing variations.
  bool based = false;
  /// Overrides the identity's default tolerance.
  std::optional<double> tolerance;

  void validate() const;
};

/// One sampled instance of an identity's inputs.
struct Trial {
  int n = 0;
  std::vector<Form> word;
  std::optional<Form> left;
  std::optional<Form> right;
  std::optional<Form> single;
  std::optional<VectorField> field;
  Path path{Curve::analytic({AnalyticFunction::constant(0.0)})};
  std::vector<Variation> variations;
  /// Lower limits s_1..s_k followed by any auxiliary times.
  std::vector<double> times;
  double t = 1.0;
  std::optional<BasedConstraint> constraint;
};

/// Deterministic in (cfg.seed, index, id); the variation count matches the LHS degree.
Trial sample_trial(IdentityId id, const CaseConfig& cfg, int index);
/// |LHS - RHS| on one trial. Throws on arity or degree mismatch and when a
/// based identity gets a trial without endpoint constraints.
double residual(IdentityId id, const Trial& trial, const CaseConfig& cfg);

/// Both sides of the general differential formula for iterated integrals, as
/// used by the k-specific checks; exposed for specialization tests.
PathForm d_iterated_general(const std::vector<Form>& forms, const std::vector<double>& lower, double t,
                            QuadratureConfig q);
PathForm d_iterated_two(const Form& w1, const Form& w2, double s1, double s2, double t, QuadratureConfig q);
PathForm d_iterated_three(const Form& w1, const Form& w2, const Form& w3, double s1, double s2, double s3, double t,
                          QuadratureConfig q);

struct Report {
  IdentityId id;
  std::vector<std::optional<double>> residuals;
  std::vector<std::string> failures;
  double max_residual = 0.0;
  double tolerance = 0.0;
  bool pass = true;
  double runtime_seconds = 0.0;
  CaseConfig config;
  std::vector<std::string> notes;
};

std::vector<Report> run_suite(const std::vector<IdentityId>& ids, const CaseConfig& cfg);

/// JSON text of one report (runtime is left out so output is reproducible).
std::string report_json(const Report& r);
/// Top-level JSON array of reports.
std::string reports_json(const std::vector<Report>& rs, int indent = 2);

}  // namespace chen
