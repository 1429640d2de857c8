#pragma once

// The verification harness: suite construction, shared state (groups,
// decompositions, contexts), and the per-claim checks.

#include <map>
#include <memory>

#include "soconv/report.hpp"
#include "soconv/zeta.hpp"

namespace soconv {

// Shared, lazily built state for one (l, q) configuration.
struct SuiteState {
  SuiteConfig cfg;
  std::unique_ptr<Fq> fq;
  std::unique_ptr<PsiAdditive> psi;
  std::unique_ptr<FiniteGroup> so2l;
  std::map<int, std::unique_ptr<FiniteGroup>> so_odd;  // by n < l
  std::map<int, std::unique_ptr<FiniteGroup>> gl;      // by n <= l
  std::unique_ptr<GGModule> so_module;
  std::map<int, std::unique_ptr<GGModule>> tau_modules;
  std::vector<GenericRep> so_reps;
  std::map<int, std::vector<GenericRep>> tau_reps;
  std::unique_ptr<ZetaContext> zctx;
  std::unique_ptr<GammaTable> gamma;

  explicit SuiteState(SuiteConfig cfg);
  const FiniteGroup& even_group();
  const FiniteGroup& odd_group(int n);
  const FiniteGroup& gl_group(int n);
  GGModule& even_module();
  GGModule& tau_module(int n);
  const std::vector<GenericRep>& even_reps();
  const std::vector<GenericRep>& taus(int n);
  std::vector<const GenericRep*> cuspidal_reps();
  ZetaContext& zeta_context();
  const GammaTable& gamma_table();
};

void run_weyl_suite(SuiteState& st, Report& rep);
void run_groups_suite(SuiteState& st, Report& rep);
void run_bessel_suite(SuiteState& st, Report& rep);
void run_zeta_suite(SuiteState& st, Report& rep);
void run_cells_suite(SuiteState& st, Report& rep);
void run_gamma_suite(SuiteState& st, Report& rep);
void run_multone_suite(SuiteState& st, Report& rep);
void run_converse_suite(SuiteState& st, Report& rep);
// Self-audit: every tracked anchor has at least one check record.
void run_anchor_audit(Report& rep);

Report run_suite(const SuiteConfig& cfg);

}  // namespace soconv
