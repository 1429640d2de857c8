#pragma once

// The analytic layer: sections of I(tau, psi^{-1}) stored through the Siegel
// classification (never through an enumeration of SO_{2l+1}), the intertwining
// operator in closed form, the two zeta sums, gamma factors with probe-based
// proportionality diagnostics, and numeric hom-space dimensions.

#include <map>
#include <optional>

#include "soconv/genrep.hpp"

namespace soconv {

// A Whittaker function on the even group: a vector in Ind_U^G(psi).
struct WhittakerFn {
  const GGModule* mod = nullptr;
  CVector vec;
  CScalar operator()(const Mat& g) const { return mod->eval(vec, g); }
};

struct SectionTerm {
  CScalar coeff;
  Mat gamma;  // right translation, in SO_{2n+1}
  CVector v;  // model vector of tau
};

// f = sum_k c_k R_{gamma_k} f_{v_k}, or the same family after the
// intertwining operator (star = true, transforming under tau*).
struct Section {
  const GenericRep* tau = nullptr;
  int l = 0, n = 0;
  bool star = false;
  std::vector<SectionTerm> terms;

  // f(h, a) for h in SO_{2n+1}; the zeta sums always use a = I.
  CScalar eval(const Mat& h, const Mat& a) const;
  CScalar eval(const Mat& h) const;
  void right_translate(const Mat& x);
};

Section section_fv(const GenericRep& tau, const CVector& v, int l, int n);
// M(tau, psi^{-1}) f: same data, closed-form evaluation under tau*.
Section intertwining_apply(const Section& f);
// Literal V_n-sum definition of the intertwining operator (test oracle).
CScalar intertwine_brute_eval(const Section& f, const std::vector<Mat>& v_n,
                              const Mat& h, const Mat& a);

struct ZetaContext {
  const FiniteGroup* so2l = nullptr;
  std::map<int, const FiniteGroup*> so_odd;  // n -> SO_{2n+1}, for n < l
  const PsiAdditive* psi = nullptr;
  Tolerance tol;

  int l() const { return so2l->rank(); }
  const Fq& field() const { return so2l->field(); }
  const FiniteGroup& odd(int n) const;
  // R^{l,n} and w^{l,n} (cached).
  const std::vector<Mat>& r_subgroup(int n) const;
  const Mat& w_ln(int n) const;

  mutable std::map<int, std::vector<Mat>> r_cache_;
  mutable std::map<int, Mat> wln_cache_;
};

// Psi(W, f) for n < l: the double sum over U\SO_{2n+1} and R^{l,n}.
CScalar zeta_low(const WhittakerFn& w, const Section& f, const ZetaContext& ctx);
// Psi(W, f) for n = l: the sum over U\SO_{2l} against f(w_{l,l} g, I).
CScalar zeta_top(const WhittakerFn& w, const Section& f, const ZetaContext& ctx);
CScalar zeta_integral(const WhittakerFn& w, const Section& f, const ZetaContext& ctx);

// Restriction of the n = l sum to cosets whose Bruhat data lands in `cells`
// and whose torus part passes `pred`.
CScalar zeta_cells(const WhittakerFn& w, const Section& f,
                   const std::vector<WeylElement>& cells,
                   const std::function<bool(const Mat&)>& pred, const ZetaContext& ctx);
// The literal triple sum over T x cells x U from the cell-restricted
// identities (loop order and normalization as displayed there).
CScalar zeta_cells_triple(const WhittakerFn& w, const Section& f,
                          const std::vector<WeylElement>& cells,
                          const std::function<bool(const Mat&)>& pred,
                          const ZetaContext& ctx);

struct GammaRow {
  std::string pi_id;
  int n = 0;
  std::string tau_id;
  CScalar gamma;
  double psi_abs = 0.0;  // |Psi(B, f_v)| of the base pair
  double spread = 0.0;   // relative disagreement across probes
  int probes = 0;
};

struct GammaTable {
  std::vector<GammaRow> rows;
  void to_csv(const std::string& path) const;
  std::string to_text() const;
  const GammaRow* find(const std::string& pi_id, int n, const std::string& tau_id) const;
};

// gamma(pi x tau) = Psi(W, Mf) / Psi(W, f) on the guaranteed-nonzero pair,
// re-checked on `probes` random pairs.
GammaRow gamma_factor(const GenericRep& pi, const GenericRep& tau, int n,
                      const ZetaContext& ctx, int probes, uint64_t seed,
                      bool allow_noncuspidal = false);

// dim Hom computations (Props on Bessel-model uniqueness). sigma is a generic
// GL_n representation; tau = Ind_{Q_n} sigma of SO_{2n+1} (n < l) or of
// SO_{2l+1} restricted through the embedding (n = l).
int hom_dimension(const GenericRep& pi, const GenericRep& sigma, int n,
                  const ZetaContext& ctx);

// Coset representatives of Q_n \ SO_{2n+1} keyed by the bottom-row space.
std::vector<Mat> siegel_coset_reps_small(const FiniteGroup& so_odd);
// Virtual representatives of Q_l \ SO_{2l+1} built from the embedded even group.
std::vector<Mat> siegel_coset_reps_virtual(const ZetaContext& ctx);

// Deterministic pseudo-random element of SO_{2n+1} (virtual product form).
Mat random_odd_element(int n, const Fq& f, Rng& rng);

}  // namespace soconv
