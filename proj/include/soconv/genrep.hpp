#pragma once

// Generic representations via the Gelfand-Graev module Ind_U^G(chi): the
// module acts on the right cosets U\G, a random class-sum (commutant)
// operator splits it into its multiplicity-one constituents, and each piece
// carries its normalized Bessel vector, central character and cuspidality.

#include <functional>
#include <string>

#include "soconv/elements.hpp"
#include "soconv/groups.hpp"
#include "soconv/linalg.hpp"

namespace soconv {

struct CharacterFn {
  std::string label;
  std::function<CScalar(const Mat&)> eval;
  CScalar operator()(const Mat& u) const { return eval(u); }
};

enum class CharLabel { PsiSO, PsiGL, PsiGLInv, PsiC };

// The generic character on the upper unipotent subgroup of g.
CharacterFn generic_character(const FiniteGroup& g, CharLabel label, const PsiAdditive& psi);

struct ActionEntry {
  uint32_t dst;
  CScalar phase;
};

class GGModule {
 public:
  GGModule(const FiniteGroup& g, CharacterFn chi);

  const FiniteGroup& group() const { return *group_; }
  const CharacterFn& character() const { return chi_; }
  size_t dim() const { return group_->cosets().reps.size(); }
  size_t identity_coset() const { return id_coset_; }

  // (coset id, chi(u)) with x = u * rep.
  std::pair<uint32_t, CScalar> locate(const Mat& x) const;
  // rho(g0) as a permutation-with-phase table on cosets.
  std::vector<ActionEntry> action_table(const Mat& g0) const;
  CVector act(const Mat& g0, const CVector& v) const;
  CMatrix act_cols(const Mat& g0, const CMatrix& q) const;
  // Model functions: v(u x) = chi(u) v(x).
  CScalar eval(const CVector& v, const Mat& x) const;
  // (1/|U|) sum chi(u)^{-1} rho(u), the projector onto chi-equivariant vectors.
  CVector whittaker_project(const CVector& v) const;
  CMatrix whittaker_project_cols(const CMatrix& q) const;
  // Random self-adjoint element of the commutant built from class sums.
  CMatrix commutant_operator(uint64_t seed, int round) const;
  // Central elements of the group (elements commuting with all generators).
  const std::vector<Mat>& center() const;

 private:
  const FiniteGroup* group_;
  CharacterFn chi_;
  size_t id_coset_;
  mutable std::vector<Mat> center_;
};

struct GenericRep {
  const GGModule* module = nullptr;
  CMatrix basis;   // dim x d, orthonormal columns spanning the piece
  int d = 0;       // representation dimension
  CVector bessel;  // normalized Bessel vector in coset coordinates
  bool cuspidal = false;
  int conjugate_partner = -1;
  std::string id;

  CScalar bessel_at(const Mat& g) const { return module->eval(bessel, g); }
  CScalar character(const Mat& g) const;
  CScalar central_character(const Mat& z) const;
  // Canonical fingerprint: the Bessel vector rounded componentwise.
  std::string fingerprint() const;
};

struct DecomposeOptions {
  uint64_t seed = 0xC0FFEE;
  Tolerance tol;
  int max_rounds = 12;
  bool classify_cuspidal = true;
  bool pair_conjugates = true;  // only meaningful for SOEven modules
};

std::vector<GenericRep> gelfand_graev_decompose(const GGModule& mod,
                                                const DecomposeOptions& opts = {});

// Bessel vector of the conjugate representation from the twisted-character
// formula; also locates the partner in the list.
CVector conjugate_bessel(const GGModule& mod, const GenericRep& rep);
int find_partner(const std::vector<GenericRep>& reps, const CVector& w0, double tol);

// Unipotent radicals of the maximal standard parabolic subgroups, as element
// lists inside U. Used by the cuspidality test.
std::vector<std::vector<Mat>> maximal_parabolic_radicals(const FiniteGroup& g);

// CSV export: element-index, bruhat-w, re, im.
void export_bessel_csv(const GenericRep& rep, const std::string& path);

}  // namespace soconv
