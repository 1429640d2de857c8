#pragma once

// The named elements and constructions living around the groups: the outer
// element c, the torus element conjugating the twisted character back, the
// Weyl representatives, both embeddings, Siegel and Bruhat decompositions,
// root subgroups of D_l, and the parabolic data (V_n, R^{l,n}, N^{l-n}, H).

#include <functional>
#include <optional>

#include "soconv/groups.hpp"
#include "soconv/weyl.hpp"

namespace soconv {

// --- named elements -------------------------------------------------------

Mat elem_outer_c(int l);                      // 2l x 2l, det -1
Mat elem_t_tilde(int l, const Fq& f);         // diag(I, -1/2, -2, I)
Mat elem_w_ll(int l, const Fq& f);            // diag(I/2, 1, 2I) in SO_{2l+1}
Mat elem_w_n(int n, const Fq& f);             // in SO_{2n+1}
Mat elem_d_n(int n, const Fq& f);             // diag(-1, 1, ..., (-1)^n) in GL_n
Mat elem_w_ln(int l, int n);                  // w^{l,n} in SO_{2l}
Mat elem_w_hat_n(int l, int n);               // \hat w_n in SO_{2l}
Mat elem_t_prime_n(int l, int n, const Fq& f);  // \tilde t when n odd, I otherwise

Mat elem_l_n(const Mat& a, const Fq& f);             // diag(a, 1, a*) in SO_{2n+1}
Mat elem_t_n(int l, const Mat& x, const Fq& f);      // diag(x, I, x*) in SO_{2l}
Mat elem_q_n(int l, int n, const Mat& a, const Fq& f);  // diag(I, a, I_2, a*, I)

// Canonical matrix representative of a Weyl element: the 0/1 monomial matrix
// of the mirror-symmetric permutation of {1..2l}; always lies in SO_{2l}.
Mat weyl_matrix(int l, const WeylElement& w);
// t_n(w') for a plain permutation w' of {1..n} inside SO_{2l}.
Mat gl_weyl_lift(int l, const std::vector<int>& perm, const Fq& f);

struct SpecialElements {
  int l;
  Mat c, t_tilde, w_ll, w_long;
  std::vector<Mat> w_n;       // [n] for 1 <= n <= l, in SO_{2n+1}
  std::vector<Mat> w_hat;     // [n] for 1 <= n <= l-2
  std::vector<Mat> w_tilde;   // [n] for 1 <= n <= l-2 (matrix of wtilde_n)
  Mat w_tilde_l, w_tilde_l_prime, w_tilde_l_c;
};
SpecialElements special_elements(int l, const Fq& f);

// Root subgroup x_alpha(x) of SO_{2l} for a (positive or negative) root of D_l.
Mat root_subgroup_elem(int l, const Fq& f, const Root& alpha, int x);
// alpha(t) for diagonal t in SO_{2l}.
int root_value_on_torus(const Fq& f, const Root& alpha, const Mat& t);

// --- embeddings -----------------------------------------------------------

// SO_{2n+1} -> SO_{2l} (n < l), landing in the GL_{l-n-1} x SO_{2n+2} Levi.
Mat embed_odd_in_even(int l, int n, const Mat& g, const Fq& f);
// SO_{2l} -> SO_{2l+1}.
Mat embed_even_in_odd(int l, const Mat& g, const Fq& f);

// --- Siegel decomposition in SO_{2n+1} (virtual access: no enumeration) ----

enum class SiegelKind { QPart, OpenCell, Other };

struct SiegelResult {
  SiegelKind kind = SiegelKind::Other;
  Mat a;        // GL_n part
  Mat v;        // QPart: g = l_n(a) v
  Mat v1, v2;   // OpenCell: g = l_n(a) v1 w_n v2
};

SiegelResult siegel_decompose(int n, const Mat& g, const Fq& f);

// --- Bruhat decomposition (GL and SO_even with the standard Borel) ---------

struct BruhatResult {
  Mat u1, t, wrep, u2;  // g = u1 * t * wrep * u2
  WeylElement w;        // for GL: plain permutation images
};

BruhatResult bruhat_decompose(const FiniteGroup& g_group, const Mat& g);
// Standalone versions (no enumerated group needed).
BruhatResult bruhat_decompose_so_even(int l, const Fq& f, const Mat& g);
BruhatResult bruhat_decompose_gl(int n, const Fq& f, const Mat& g);

// --- parabolic data ---------------------------------------------------------

// V_n: unipotent radical of the Siegel parabolic of SO_{2n+1}, parametrized by
// (x in F_q^n, antisymmetric part of J y); |V_n| = q^{n(n+1)/2}.
std::vector<Mat> enumerate_siegel_radical(int n, const Fq& f);
Mat random_siegel_radical(int n, const Fq& f, Rng& rng);

// R^{l,n} in SO_{2l}: x runs over (l-n-1) x n matrices.
std::vector<Mat> enumerate_r_subgroup(int l, int n, const Fq& f);

struct ParabolicPack {
  int l = 0, n = 0;
  std::vector<Mat> v_n;    // in SO_{2n+1}
  std::vector<Mat> r_ln;   // in SO_{2l}
  std::vector<Mat> n_rad;  // N^{l-n} in SO_{2l}
  std::vector<Mat> h;      // SO_{2n+1}-embedded times N^{l-n}, in SO_{2l}
  std::vector<Mat> q_n;    // in SO_{2n+1} (only when the odd group is supplied)
  std::vector<Mat> l_n;    // in SO_{2n+1} (only when the odd group is supplied)
  std::function<CScalar(const Mat&)> psi_prime;  // on n_rad
};

// so2l: the enumerated even group; so_odd: the enumerated SO_{2n+1} or null
// (the n = l path never requires it).
ParabolicPack parabolic_pack(const FiniteGroup& so2l, const FiniteGroup* so_odd, int n,
                             const PsiAdditive& psi);

}  // namespace soconv
