#pragma once

// Root-system D_l combinatorics, independent of q: the Weyl group as signed
// permutations with an even number of sign flips, the theta map, the Bessel
// support and its partition into the cells B_0, ..., B_l, B_l^c.

#include <cstdint>
#include <optional>
#include <set>
#include <vector>

#include "soconv/errors.hpp"

namespace soconv {

// A root of D_l as an integer vector sum c_i e_i with c in {-1,0,1},
// exactly two nonzero coordinates (e_i +- e_j, i < j) or their negatives.
struct Root {
  std::vector<int> c;
  bool operator==(const Root& o) const { return c == o.c; }
  bool operator<(const Root& o) const { return c < o.c; }
  bool is_positive() const {
    for (int v : c) {
      if (v > 0) return true;
      if (v < 0) return false;
    }
    return false;
  }
};

struct RootDatum {
  int l;
  std::vector<Root> simple;    // alpha_1..alpha_l
  std::vector<Root> positive;  // all of Phi+
  explicit RootDatum(int l);
  // Index of r in `simple`, or -1 when r is not simple.
  int simple_index(const Root& r) const;
};

// Signed permutation of {1..l}: img[i] in {+-1..+-l} is the signed image of
// i+1. Membership in W(D_l) requires an even number of negative images.
struct WeylElement {
  std::vector<int8_t> img;

  int l() const { return static_cast<int>(img.size()); }
  bool operator==(const WeylElement& o) const { return img == o.img; }
  bool operator<(const WeylElement& o) const { return img < o.img; }

  bool is_identity() const;
  int flips() const;
  bool in_weyl_d() const { return flips() % 2 == 0; }

  static WeylElement identity(int l);
  WeylElement compose(const WeylElement& rhs) const;  // this applied after rhs
  WeylElement inverse() const;
  Root apply(const Root& r) const;
  // Conjugation by the outer element c (sign flip in coordinate l on both sides).
  WeylElement conj_outer() const;
};

enum class CellClass { B0 = 0, Bn = 1, Bl = 2, Blc = 3, Blm1 = 4, NotSupport = 5 };

struct CellInfo {
  CellClass cls;
  int n;  // the index: 0 for B0, n for B_n (n <= l-2), l-1, l, or l (for Blc)
};

// theta_w and the support predicate: w alpha negative or simple for all alpha.
struct ThetaInfo {
  std::set<int> theta;  // indices 1..l of simple roots with w alpha positive
  bool supports_bessel;
};
ThetaInfo theta_of(int l, const WeylElement& w);

// All 2^l support elements; theta restricted to them is a bijection onto P(Delta).
std::vector<WeylElement> bessel_support(int l);

// Enumerate all of W(D_l) (l <= 7).
std::vector<WeylElement> weyl_group_d(int l);

// The named elements as signed permutations.
WeylElement weyl_wtilde_n(int l, int n);   // n <= l-2, also n = l-1 via lift
WeylElement weyl_wtilde_l_prime(int l);    // \tilde w'_l
WeylElement weyl_wtilde_l(int l);          // \tilde w_l
WeylElement weyl_wtilde_l_c(int l);        // \tilde w_l^c
WeylElement weyl_long(int l);
// t_n(w') for a plain permutation w' of {1..n} (given as images perm[i] in 1..n).
WeylElement weyl_tn(int l, const std::vector<int>& perm);

// Classification per the support partition; DomainError when w does not
// support Bessel functions.
CellInfo classify_cell(int l, const WeylElement& w);

// If w = t_l(w') wtilde_l for a plain permutation w' of {1..l}, return w'.
std::optional<std::vector<int>> gl_factor_of(int l, const WeylElement& w);

std::vector<std::vector<int>> all_permutations(int n);

std::string weyl_str(const WeylElement& w);

}  // namespace soconv
