#include "soconv/elements.hpp"

#include <algorithm>
#include <map>

#include "soconv/errors.hpp"

namespace soconv {

Mat elem_outer_c(int l) {
  Mat m = mat_identity(2 * l);
  m.set(l - 1, l - 1, 0);
  m.set(l, l, 0);
  m.set(l - 1, l, 1);
  m.set(l, l - 1, 1);
  return m;
}

Mat elem_t_tilde(int l, const Fq& f) {
  Mat m = mat_identity(2 * l);
  m.set(l - 1, l - 1, f.neg(f.half()));
  m.set(l, l, f.minus_two());
  return m;
}

Mat elem_w_ll(int l, const Fq& f) {
  Mat m = mat_identity(2 * l + 1);
  for (int i = 0; i < l; ++i) m.set(i, i, f.half());
  for (int i = l + 1; i < 2 * l + 1; ++i) m.set(i, i, f.of(2));
  return m;
}

Mat elem_w_n(int n, const Fq& f) {
  const int m = 2 * n + 1;
  Mat w = mat_zero(m);
  for (int i = 0; i < n; ++i) {
    w.set(i, n + 1 + i, 1);
    w.set(n + 1 + i, i, 1);
  }
  w.set(n, n, n % 2 == 0 ? 1 : f.neg(1));
  return w;
}

Mat elem_d_n(int n, const Fq& f) {
  Mat d = mat_identity(n);
  for (int i = 1; i <= n; ++i) d.set(i - 1, i - 1, i % 2 == 1 ? f.neg(1) : 1);
  return d;
}

Mat elem_w_ln(int l, int n) {
  const int k = l - n - 1;
  Mat w = mat_zero(2 * l);
  for (int i = 0; i < n; ++i) w.set(i, k + i, 1);          // block (1,2)
  for (int i = 0; i < k; ++i) w.set(n + i, i, 1);          // block (2,1)
  w.set(l - 1, l - 1, 1);                                  // block (3,3)
  w.set(l, l, 1);
  for (int i = 0; i < k; ++i) w.set(l + 1 + i, 2 * l - n + i, 1);  // block (4,5)
  for (int i = 0; i < n; ++i) w.set(2 * l - n + i, l + 1 + i, 1);  // block (5,4)
  return w;
}

Mat elem_w_hat_n(int l, int n) {
  const int k = l - n - 1;
  Mat w = mat_zero(2 * l);
  for (int i = 0; i < k; ++i) w.set(i, i, 1);
  for (int i = 0; i < n; ++i) w.set(k + i, l + 1 + i, 1);
  if (n % 2 == 1) {
    w.set(l - 1, l, 1);
    w.set(l, l - 1, 1);
  } else {
    w.set(l - 1, l - 1, 1);
    w.set(l, l, 1);
  }
  for (int i = 0; i < n; ++i) w.set(l + 1 + i, k + i, 1);
  for (int i = 0; i < k; ++i) w.set(2 * l - k + i, 2 * l - k + i, 1);
  return w;
}

Mat elem_t_prime_n(int l, int n, const Fq& f) {
  return n % 2 == 1 ? elem_t_tilde(l, f) : mat_identity(2 * l);
}

Mat elem_l_n(const Mat& a, const Fq& f) {
  return mat_diag_blocks({a, mat_identity(1), mat_star(a, f)});
}

Mat elem_t_n(int l, const Mat& x, const Fq& f) {
  const int n = x.n;
  if (n > l) throw DomainError("elem_t_n: block too large");
  if (n == l) return mat_diag_blocks({x, mat_star(x, f)});
  return mat_diag_blocks({x, mat_identity(2 * (l - n)), mat_star(x, f)});
}

Mat elem_q_n(int l, int n, const Mat& a, const Fq& f) {
  const int k = l - n - 1;
  std::vector<Mat> blocks;
  if (k > 0) blocks.push_back(mat_identity(k));
  blocks.push_back(a);
  blocks.push_back(mat_identity(2));
  blocks.push_back(mat_star(a, f));
  if (k > 0) blocks.push_back(mat_identity(k));
  return mat_diag_blocks(blocks);
}

Mat weyl_matrix(int l, const WeylElement& w) {
  if (w.l() != l) throw DomainError("weyl_matrix: rank mismatch");
  Mat m = mat_zero(2 * l);
  for (int j = 1; j <= l; ++j) {
    int v = w.img[j - 1];
    int row = v > 0 ? v : 2 * l + 1 + v;
    m.set(row - 1, j - 1, 1);
    m.set(2 * l - row, 2 * l - j, 1);
  }
  return m;
}

Mat gl_weyl_lift(int l, const std::vector<int>& perm, const Fq& f) {
  const int n = static_cast<int>(perm.size());
  Mat p = mat_zero(n);
  for (int i = 0; i < n; ++i) p.set(perm[i] - 1, i, 1);
  return elem_t_n(l, p, f);
}

SpecialElements special_elements(int l, const Fq& f) {
  if (l < 2) throw DomainError("special_elements: need l >= 2");
  SpecialElements se;
  se.l = l;
  se.c = elem_outer_c(l);
  se.t_tilde = elem_t_tilde(l, f);
  se.w_ll = elem_w_ll(l, f);
  se.w_long = weyl_matrix(l, weyl_long(l));
  se.w_n.resize(l + 1);
  for (int n = 1; n <= l; ++n) se.w_n[n] = elem_w_n(n, f);
  se.w_hat.resize(l);
  se.w_tilde.resize(l);
  for (int n = 1; n <= l - 1; ++n) {
    se.w_hat[n] = elem_w_hat_n(l, n);
    Mat wln = elem_w_ln(l, n);
    se.w_tilde[n] = mat_mul(mat_mul(wln, se.w_hat[n], f), mat_inverse(wln, f), f);
    if (!(se.w_tilde[n] == weyl_matrix(l, weyl_wtilde_n(l, n))))
      throw FormError("special_elements: wtilde_n matrix mismatch");
  }
  se.w_tilde_l_prime = weyl_matrix(l, weyl_wtilde_l_prime(l));
  se.w_tilde_l = weyl_matrix(l, weyl_wtilde_l(l));
  se.w_tilde_l_c = weyl_matrix(l, weyl_wtilde_l_c(l));

  // Membership checks: everything here must satisfy its defining equations.
  auto check_so = [&](const Mat& g, const char* what) {
    if (!preserves_form(g, mat_form_j(g.n), f))
      throw FormError(std::string("special_elements: ") + what + " fails the form");
  };
  check_so(se.t_tilde, "t_tilde");
  check_so(se.w_ll, "w_ll");
  check_so(se.w_long, "w_long");
  for (int n = 1; n <= l; ++n) check_so(se.w_n[n], "w_n");
  for (int n = 1; n <= l - 1; ++n) {
    check_so(se.w_hat[n], "w_hat_n");
    check_so(se.w_tilde[n], "wtilde_n");
    check_so(elem_w_ln(l, n), "w^{l,n}");
  }
  check_so(se.w_tilde_l, "wtilde_l");
  check_so(se.w_tilde_l_prime, "wtilde_l_prime");
  check_so(se.w_tilde_l_c, "wtilde_l_c");
  // c itself is outside SO_{2l}: det -1, but it must normalize the form.
  if (mat_det(se.c, f) != f.neg(1)) throw FormError("special_elements: det(c) != -1");
  return se;
}

Mat root_subgroup_elem(int l, const Fq& f, const Root& alpha, int x) {
  int i = -1, j = -1;
  for (size_t k = 0; k < alpha.c.size(); ++k) {
    if (alpha.c[k] == 0) continue;
    if (std::abs(alpha.c[k]) != 1) throw DomainError("root_subgroup_elem: not a root");
    if (i < 0) i = static_cast<int>(k);
    else if (j < 0) j = static_cast<int>(k);
    else throw DomainError("root_subgroup_elem: not a root");
  }
  if (j < 0) throw DomainError("root_subgroup_elem: not a root");
  const int m = 2 * l;
  int ci = alpha.c[i], cj = alpha.c[j];
  int a = i + 1, b = j + 1;
  if (ci == 1 && cj == -1) return orth_unit(m, f, a, b, x);
  if (ci == -1 && cj == 1) return orth_unit(m, f, b, a, x);
  if (ci == 1 && cj == 1) return orth_unit(m, f, a, m + 1 - b, x);
  return orth_unit(m, f, m + 1 - b, a, x);  // -(e_i + e_j)
}

int root_value_on_torus(const Fq& f, const Root& alpha, const Mat& t) {
  int v = 1;
  for (size_t k = 0; k < alpha.c.size(); ++k) {
    int tk = t.at(static_cast<int>(k), static_cast<int>(k));
    if (alpha.c[k] == 1) v = f.mul(v, tk);
    else if (alpha.c[k] == -1) v = f.mul(v, f.inv(tk));
  }
  return v;
}

// --- embeddings -------------------------------------------------------------

namespace {

Mat embedding_m_small(int n, const Fq& f) {
  // diag(I_n, [[2, -1], [1, 1/2]], I_n), size 2n+2
  Mat m = mat_identity(2 * n + 2);
  m.set(n, n, f.of(2));
  m.set(n, n + 1, f.neg(1));
  m.set(n + 1, n, 1);
  m.set(n + 1, n + 1, f.half());
  return m;
}

Mat embedding_m_tilde(const Fq& f) {
  Mat m = mat_zero(3);
  m.set(0, 0, f.quarter());
  m.set(0, 1, f.half());
  m.set(0, 2, f.neg(f.half()));
  m.set(1, 0, f.half());
  m.set(1, 1, 0);
  m.set(1, 2, 1);
  m.set(2, 0, f.neg(f.half()));
  m.set(2, 1, 1);
  m.set(2, 2, 1);
  return m;
}

// Insert an extra basis vector (fixed) at position `pos`.
Mat insert_row_col(const Mat& g, int pos) {
  Mat r = mat_zero(g.n + 1);
  for (int i = 0; i < g.n; ++i)
    for (int j = 0; j < g.n; ++j)
      r.set(i < pos ? i : i + 1, j < pos ? j : j + 1, g.at(i, j));
  r.set(pos, pos, 1);
  return r;
}

}  // namespace

Mat embed_odd_in_even(int l, int n, const Mat& g, const Fq& f) {
  if (n >= l) throw DomainError("embed_odd_in_even: need n < l");
  if (g.n != 2 * n + 1) throw DomainError("embed_odd_in_even: size mismatch");
  if (!preserves_form(g, mat_form_j(2 * n + 1), f))
    throw FormError("embed_odd_in_even: input fails the SO form");
  Mat big = insert_row_col(g, n);  // size 2n+2, new fixed vector after the A-block
  Mat m = embedding_m_small(n, f);
  Mat x = mat_mul(mat_mul(mat_inverse(m, f), big, f), m, f);
  const int k = l - n - 1;
  Mat out;
  if (k == 0) {
    out = x;
  } else {
    out = mat_diag_blocks({mat_identity(k), x, mat_identity(k)});
  }
  if (!preserves_form(out, mat_form_j(2 * l), f))
    throw FormError("embed_odd_in_even: image fails the SO form");
  return out;
}

Mat embed_even_in_odd(int l, const Mat& g, const Fq& f) {
  if (g.n != 2 * l) throw DomainError("embed_even_in_odd: size mismatch");
  if (!preserves_form(g, mat_form_j(2 * l), f))
    throw FormError("embed_even_in_odd: input fails the SO form");
  Mat big = insert_row_col(g, l);  // size 2l+1
  Mat m = mat_diag_blocks({mat_identity(l - 1), embedding_m_tilde(f), mat_identity(l - 1)});
  Mat out = mat_mul(mat_mul(mat_inverse(m, f), big, f), m, f);
  if (!preserves_form(out, mat_form_j(2 * l + 1), f))
    throw FormError("embed_even_in_odd: image fails the SO form");
  return out;
}

// --- Siegel decomposition ---------------------------------------------------

SiegelResult siegel_decompose(int n, const Mat& g, const Fq& f) {
  const int m = 2 * n + 1;
  if (g.n != m) throw DomainError("siegel_decompose: size mismatch");
  if (!preserves_form(g, mat_form_j(m), f))
    throw FormError("siegel_decompose: input fails the SO form");
  SiegelResult res;

  // Q_n membership: the (n+1) x n block below the Levi vanishes.
  bool in_q = true;
  for (int i = n; i < m && in_q; ++i)
    for (int j = 0; j < n && in_q; ++j)
      if (g.at(i, j) != 0) in_q = false;
  if (in_q) {
    Mat a = mat_submatrix(g, 0, 0, n, n);
    a.n = static_cast<uint8_t>(n);
    Mat v = mat_mul(mat_inverse(elem_l_n(a, f), f), g, f);
    if (!is_upper_unitriangular(v))
      throw ConsistencyError("siegel_decompose: Q-part is not unipotent");
    res.kind = SiegelKind::QPart;
    res.a = a;
    res.v = v;
    return res;
  }

  // Open cell: the bottom-left n x n corner is invertible.
  Mat corner = mat_submatrix(g, n + 1, 0, n, n);
  corner.n = static_cast<uint8_t>(n);
  if (mat_is_invertible(corner, f)) {
    Mat a = mat_star(corner, f);  // a* = corner
    Mat h = mat_mul(mat_inverse(elem_l_n(a, f), f), g, f);
    // Bottom rows of h must be [I | M | N].
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (h.at(n + 1 + i, j) != (i == j ? 1 : 0))
          throw ConsistencyError("siegel_decompose: open-cell normalization failed");
    Mat n2 = mat_identity(m);
    for (int i = 0; i < n; ++i) {
      n2.set(i, n, h.at(n + 1 + i, n));                       // x column
      for (int j = 0; j < n; ++j) n2.set(i, n + 1 + j, h.at(n + 1 + i, n + 1 + j));
    }
    for (int j = 0; j < n; ++j)  // x' = -t(x) J
      n2.set(n, n + 1 + j, f.neg(n2.at(n - 1 - j, n)));
    if (!preserves_form(n2, mat_form_j(m), f))
      throw ConsistencyError("siegel_decompose: reconstructed v2 not in the group");
    Mat w = elem_w_n(n, f);
    Mat h2 = mat_mul(h, mat_inverse(n2, f), f);
    // h2 = n1 w: n1 = h2 w^{-1}.
    Mat n1 = mat_mul(h2, mat_inverse(w, f), f);
    if (!is_upper_unitriangular(n1))
      throw ConsistencyError("siegel_decompose: open-cell v1 not unipotent");
    res.kind = SiegelKind::OpenCell;
    res.a = a;
    res.v1 = n1;
    res.v2 = n2;
    return res;
  }

  res.kind = SiegelKind::Other;
  return res;
}

// --- Bruhat decomposition ---------------------------------------------------

namespace {

// Monomial representative of the double coset U_GL g U_GL by lowest-pivot
// Gaussian elimination. Records the unipotent factors when asked.
Mat gl_monomial_part(const Mat& g, const Fq& f, Mat* u1_out, Mat* u2_out) {
  const int n = g.n;
  Mat m = g;
  Mat u1 = mat_identity(n), u2 = mat_identity(n);
  std::vector<bool> marked(n, false);
  for (int j = 0; j < n; ++j) {
    int piv = -1;
    for (int i = n - 1; i >= 0; --i)
      if (!marked[i] && m.at(i, j) != 0) { piv = i; break; }
    if (piv < 0) throw DomainError("bruhat: singular matrix");
    marked[piv] = true;
    int pinv = f.inv(m.at(piv, j));
    for (int r = 0; r < piv; ++r) {
      int c = m.at(r, j);
      if (!c || marked[r]) continue;
      int factor = f.mul(c, pinv);
      for (int k = 0; k < n; ++k)
        m.set(r, k, f.sub(m.at(r, k), f.mul(factor, m.at(piv, k))));
      // g = u1 m u2 is maintained: replacing m by E m requires u1 <- u1 E^{-1}.
      for (int k = 0; k < n; ++k)
        u1.set(k, piv, f.add(u1.at(k, piv), f.mul(factor, u1.at(k, r))));
    }
    for (int c2 = j + 1; c2 < n; ++c2) {
      int c = m.at(piv, c2);
      if (!c) continue;
      int factor = f.mul(c, pinv);
      for (int k = 0; k < n; ++k)
        m.set(k, c2, f.sub(m.at(k, c2), f.mul(factor, m.at(k, j))));
      for (int k = 0; k < n; ++k)
        u2.set(j, k, f.add(u2.at(j, k), f.mul(factor, u2.at(c2, k))));
    }
  }
  if (u1_out) *u1_out = u1;
  if (u2_out) *u2_out = u2;
  return m;
}

const std::vector<Mat>& so_even_upper(int l, int q) {
  static std::map<std::pair<int, int>, std::vector<Mat>> cache;
  auto key = std::make_pair(l, q);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  Fq f(q);
  RootDatum rd(l);
  std::vector<Mat> gens;
  for (const auto& a : rd.positive)
    for (int x = 1; x < q; ++x) gens.push_back(root_subgroup_elem(l, f, a, x));
  std::vector<Mat> elems{mat_identity(2 * l)};
  std::vector<Mat> frontier = elems;
  auto known = [&](const Mat& m) {
    return std::find(elems.begin(), elems.end(), m) != elems.end();
  };
  while (!frontier.empty()) {
    std::vector<Mat> next;
    for (const auto& e : frontier)
      for (const auto& g : gens) {
        Mat p = mat_mul(e, g, f);
        if (!known(p)) {
          elems.push_back(p);
          next.push_back(p);
        }
      }
    frontier = std::move(next);
  }
  std::sort(elems.begin(), elems.end());
  return cache.emplace(key, std::move(elems)).first->second;
}

}  // namespace

BruhatResult bruhat_decompose_gl(int n, const Fq& f, const Mat& g) {
  BruhatResult r;
  Mat m = gl_monomial_part(g, f, &r.u1, &r.u2);
  WeylElement w;
  w.img.resize(n);
  Mat p = mat_zero(n);
  for (int j = 0; j < n; ++j) {
    int row = -1;
    for (int i = 0; i < n; ++i)
      if (m.at(i, j) != 0) { row = i; break; }
    w.img[j] = static_cast<int8_t>(row + 1);
    p.set(row, j, 1);
  }
  r.w = w;
  r.wrep = p;
  r.t = mat_mul(m, mat_inverse(p, f), f);
  if (!is_diagonal(r.t)) throw ConsistencyError("bruhat(gl): torus part not diagonal");
  return r;
}

BruhatResult bruhat_decompose_so_even(int l, const Fq& f, const Mat& g) {
  Mat m = gl_monomial_part(g, f, nullptr, nullptr);
  if (!preserves_form(m, mat_form_j(2 * l), f))
    throw ConsistencyError("bruhat(so): monomial part left the group");
  // Signed permutation from the pattern.
  WeylElement w;
  w.img.resize(l);
  for (int j = 1; j <= l; ++j) {
    int row = -1;
    for (int i = 0; i < 2 * l; ++i)
      if (m.at(i, j - 1) != 0) { row = i + 1; break; }
    w.img[j - 1] = static_cast<int8_t>(row <= l ? row : -(2 * l + 1 - row));
  }
  BruhatResult r;
  r.w = w;
  r.wrep = weyl_matrix(l, w);
  r.t = mat_mul(m, mat_inverse(r.wrep, f), f);
  if (!is_diagonal(r.t)) throw ConsistencyError("bruhat(so): torus part not diagonal");
  // Find the unipotent factors by a search over U (small for our ranks):
  // g = u1 m' u2 with m' = t wrep = m.
  Mat mi = mat_inverse(m, f);
  const auto& uu = so_even_upper(l, f.q());
  for (const auto& u : uu) {
    Mat x = mat_mul(mi, mat_mul(u, g, f), f);
    if (is_upper_unitriangular(x) && preserves_form(x, mat_form_j(2 * l), f)) {
      r.u1 = mat_inverse(u, f);
      r.u2 = x;
      return r;
    }
  }
  throw ConsistencyError("bruhat(so): no unipotent factorization found");
}

BruhatResult bruhat_decompose(const FiniteGroup& g_group, const Mat& g) {
  switch (g_group.kind()) {
    case GroupKind::GL:
      return bruhat_decompose_gl(g_group.rank(), g_group.field(), g);
    case GroupKind::SOEven:
      return bruhat_decompose_so_even(g_group.rank(), g_group.field(), g);
    default:
      throw DomainError("bruhat_decompose: unsupported group kind");
  }
}

// --- parabolic data ---------------------------------------------------------

std::vector<Mat> enumerate_siegel_radical(int n, const Fq& f) {
  const int m = 2 * n + 1;
  const int q = f.q();
  std::vector<Mat> out;
  std::vector<int> x(n, 0);
  const int na = n * (n - 1) / 2;
  std::vector<int> asym(na, 0);
  auto build = [&]() {
    // z = -J x xT J / 2 + A, y = J z, with A antisymmetric.
    Mat y = mat_zero(n);
    std::vector<std::vector<int>> z(n, std::vector<int>(n, 0));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        // S = -J x xT J: S[i][j] = -x[n-1-i] x[n-1-j]
        int s = f.neg(f.mul(x[n - 1 - i], x[n - 1 - j]));
        z[i][j] = f.mul(s, f.half());
      }
    int k = 0;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j, ++k) {
        z[i][j] = f.add(z[i][j], asym[k]);
        z[j][i] = f.sub(z[j][i], asym[k]);
      }
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) y.set(i, j, z[n - 1 - i][j]);  // y = J z
    Mat v = mat_identity(m);
    for (int i = 0; i < n; ++i) {
      v.set(i, n, x[i]);
      v.set(n, n + 1 + i, f.neg(x[n - 1 - i]));  // x' = -xT J
      for (int j = 0; j < n; ++j) v.set(i, n + 1 + j, y.at(i, j));
    }
    out.push_back(v);
  };
  // Iterate over all (x, asym) tuples.
  long long total = 1;
  for (int i = 0; i < n + na; ++i) total *= q;
  for (long long code = 0; code < total; ++code) {
    long long c = code;
    for (int i = 0; i < n; ++i) {
      x[i] = static_cast<int>(c % q);
      c /= q;
    }
    for (int i = 0; i < na; ++i) {
      asym[i] = static_cast<int>(c % q);
      c /= q;
    }
    build();
  }
  std::sort(out.begin(), out.end());
  return out;
}

Mat random_siegel_radical(int n, const Fq& f, Rng& rng) {
  const int q = f.q();
  const auto pick = [&]() { return static_cast<int>(rng.below(q)); };
  std::vector<int> x(n), asym(n * (n - 1) / 2);
  for (auto& v : x) v = pick();
  for (auto& v : asym) v = pick();
  // Same construction as above.
  const int m = 2 * n + 1;
  std::vector<std::vector<int>> z(n, std::vector<int>(n, 0));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      z[i][j] = f.mul(f.neg(f.mul(x[n - 1 - i], x[n - 1 - j])), f.half());
  int k = 0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j, ++k) {
      z[i][j] = f.add(z[i][j], asym[k]);
      z[j][i] = f.sub(z[j][i], asym[k]);
    }
  Mat v = mat_identity(m);
  for (int i = 0; i < n; ++i) {
    v.set(i, n, x[i]);
    v.set(n, n + 1 + i, f.neg(x[n - 1 - i]));
    for (int j = 0; j < n; ++j) v.set(i, n + 1 + j, z[n - 1 - i][j]);
  }
  return v;
}

std::vector<Mat> enumerate_r_subgroup(int l, int n, const Fq& f) {
  const int k = l - n - 1;
  const int q = f.q();
  std::vector<Mat> out;
  if (k <= 0) {
    out.push_back(mat_identity(2 * l));
    return out;
  }
  long long total = 1;
  for (int i = 0; i < k * n; ++i) total *= q;
  for (long long code = 0; code < total; ++code) {
    long long c = code;
    Mat r = mat_identity(2 * l);
    std::vector<std::vector<int>> x(k, std::vector<int>(n));
    for (int i = 0; i < k; ++i)
      for (int j = 0; j < n; ++j) {
        x[i][j] = static_cast<int>(c % q);
        c /= q;
      }
    for (int i = 0; i < k; ++i)
      for (int j = 0; j < n; ++j) {
        r.set(n + i, j, x[i][j]);
        // x' = -J_n xT J_k: x'[a][b] = -x[k-1-b][n-1-a]
        r.set(2 * l - n + (n - 1 - j), l + 1 + (k - 1 - i), f.neg(x[i][j]));
      }
    out.push_back(r);
  }
  std::sort(out.begin(), out.end());
  return out;
}

ParabolicPack parabolic_pack(const FiniteGroup& so2l, const FiniteGroup* so_odd, int n,
                             const PsiAdditive& psi) {
  const int l = so2l.rank();
  const Fq& f = so2l.field();
  if (n < 1 || n > l) throw DomainError("parabolic_pack: need 1 <= n <= l");
  ParabolicPack pk;
  pk.l = l;
  pk.n = n;
  pk.v_n = enumerate_siegel_radical(n, f);
  if (n < l) pk.r_ln = enumerate_r_subgroup(l, n, f);

  const int k = l - n - 1;
  if (n < l) {
    // N^{l-n}: block shape (k, 2n+2, k) with unitriangular GL_k part and
    // identity middle block.
    for (const auto& g : so2l.elements()) {
      bool ok = true;
      for (int i = k; i < 2 * l && ok; ++i)
        for (int j = 0; j < k && ok; ++j)
          if (g.at(i, j) != 0) ok = false;
      for (int i = k + 2 * n + 2; i < 2 * l && ok; ++i)
        for (int j = k; j < k + 2 * n + 2 && ok; ++j)
          if (g.at(i, j) != 0) ok = false;
      for (int i = 0; i < 2 * n + 2 && ok; ++i)
        for (int j = 0; j < 2 * n + 2 && ok; ++j)
          if (g.at(k + i, k + j) != (i == j ? 1 : 0)) ok = false;
      if (!ok) continue;
      bool uni = true;
      for (int i = 0; i < k && uni; ++i) {
        if (g.at(i, i) != 1) uni = false;
        for (int j = 0; j < i && uni; ++j)
          if (g.at(i, j) != 0) uni = false;
      }
      if (uni) pk.n_rad.push_back(g);
    }
    if (so_odd) {
      for (const auto& s : so_odd->elements()) {
        Mat se = embed_odd_in_even(l, n, s, f);
        for (const auto& v : pk.n_rad) pk.h.push_back(so2l.mul(se, v));
      }
      std::sort(pk.h.begin(), pk.h.end());
      if (std::adjacent_find(pk.h.begin(), pk.h.end()) != pk.h.end())
        throw ConsistencyError("parabolic_pack: H product not direct");
      for (const auto& s : so_odd->elements()) {
        bool in_q = true;
        for (int i = n; i < 2 * n + 1 && in_q; ++i)
          for (int j = 0; j < n && in_q; ++j)
            if (s.at(i, j) != 0) in_q = false;
        if (in_q) pk.q_n.push_back(s);
        // l_n(a) shape: block diagonal with middle entry 1.
        bool is_levi = in_q && s.at(n, n) == 1;
        for (int i = 0; i < n && is_levi; ++i) {
          if (s.at(i, n) != 0) is_levi = false;
          for (int j = n + 1; j < 2 * n + 1 && is_levi; ++j)
            if (s.at(i, j) != 0) is_levi = false;
        }
        for (int j = n + 1; j < 2 * n + 1 && is_levi; ++j)
          if (s.at(n, j) != 0) is_levi = false;
        if (is_levi) pk.l_n.push_back(s);
      }
    }
  } else {
    pk.n_rad.push_back(mat_identity(2 * l));
    pk.r_ln.push_back(mat_identity(2 * l));
  }

  const Fq* fld = &f;
  const PsiAdditive* ps = &psi;
  pk.psi_prime = [l, n, fld, ps](const Mat& v) -> CScalar {
    if (n >= l - 1) return CScalar(1.0, 0.0);
    const int kk = l - n - 1;
    int arg = 0;
    for (int i = 1; i <= kk - 1; ++i) arg = fld->add(arg, v.at(i - 1, i));
    arg = fld->add(arg, fld->mul(fld->quarter(), v.at(kk - 1, l - 1)));
    arg = fld->sub(arg, fld->mul(fld->half(), v.at(kk - 1, l)));
    return (*ps)(arg);
  };
  return pk;
}

}  // namespace soconv
