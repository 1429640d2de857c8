#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <filesystem>
#include <set>

#include "soconv/elements.hpp"
#include "soconv/groups.hpp"

using namespace soconv;

namespace {
const FiniteGroup& so4q3() {
  static FiniteGroup g = FiniteGroup::enumerate(GroupKind::SOEven, 2, 3);
  return g;
}
const FiniteGroup& so3q3() {
  static FiniteGroup g = FiniteGroup::enumerate(GroupKind::SOOdd, 1, 3);
  return g;
}
const FiniteGroup& gl2q3() {
  static FiniteGroup g = FiniteGroup::enumerate(GroupKind::GL, 2, 3);
  return g;
}
}  // namespace

TEST_CASE("order formulas and BFS closure") {
  CHECK(so4q3().order() == 576);
  CHECK(gl2q3().order() == 48);
  CHECK(so3q3().order() == 24);
  FiniteGroup so5 = FiniteGroup::enumerate(GroupKind::SOOdd, 2, 3);
  CHECK(so5.order() == 51840);
  CHECK(expected_order(GroupKind::SOEven, 2, 5) == 14400);
  CHECK(expected_order(GroupKind::GL, 2, 5) == 480);
  CHECK_THROWS_AS(FiniteGroup::enumerate(GroupKind::SOEven, 2, 3, {.budget = 10}),
                  BudgetError);
}

TEST_CASE("exhaustive form-filter oracle") {
  for (auto [kind, rank, q] : {std::tuple{GroupKind::SOEven, 2, 3},
                               std::tuple{GroupKind::SOOdd, 1, 3},
                               std::tuple{GroupKind::SOOdd, 1, 5},
                               std::tuple{GroupKind::GL, 2, 3}}) {
    auto oracle = exhaustive_form_filter(kind, rank, q);
    FiniteGroup g = FiniteGroup::enumerate(kind, rank, q);
    REQUIRE(oracle.size() == g.order());
    CHECK(std::equal(oracle.begin(), oracle.end(), g.elements().begin()));
  }
}

TEST_CASE("every SO element satisfies the defining equations") {
  for (const FiniteGroup* g : {&so4q3(), &so3q3()}) {
    for (const auto& m : g->elements()) CHECK(g->satisfies_defining_equations(m));
  }
}

TEST_CASE("standard subgroups and cosets") {
  const auto& g = so4q3();
  const auto& sub = g.subgroups();
  CHECK(sub.upper.size() == 9);  // q^{l(l-1)} = 3^2
  CHECK(g.cosets().reps.size() == 64);
  CHECK(sub.torus.size() == 4);  // (q-1)^l
  // identity in T and U
  Mat id = mat_identity(4);
  CHECK(std::binary_search(sub.upper.begin(), sub.upper.end(), id));
  CHECK(std::binary_search(sub.torus.begin(), sub.torus.end(), id));
  // canonical reps are minimal in their coset
  const auto& cd = g.cosets();
  for (size_t i = 0; i < 20; ++i) {
    const Mat& rep = g.at(cd.reps[i]);
    for (const auto& u : sub.upper) CHECK(!(g.mul(u, rep) < rep));
  }
  CHECK(gl2q3().cosets().reps.size() == 16);  // 48 / 3
}

TEST_CASE("disk cache round trip") {
  std::string dir = "cache_test_tmp";
  std::filesystem::remove_all(dir);
  EnumerateOptions opts;
  opts.cache_dir = dir;
  FiniteGroup a = FiniteGroup::enumerate(GroupKind::SOEven, 2, 3, opts);
  CHECK(std::filesystem::exists(dir + "/so_even_2_q3_v1.socf"));
  FiniteGroup b = FiniteGroup::enumerate(GroupKind::SOEven, 2, 3, opts);
  CHECK(a.order() == b.order());
  CHECK(std::equal(a.elements().begin(), a.elements().end(), b.elements().begin()));
  // Corrupt the cache; loading must fall back to enumeration.
  {
    std::ofstream f(dir + "/so_even_2_q3_v1.socf", std::ios::binary | std::ios::app);
    f << "garbage";
  }
  FiniteGroup c = FiniteGroup::enumerate(GroupKind::SOEven, 2, 3, opts);
  CHECK(c.order() == 576);
  std::filesystem::remove_all(dir);
}

TEST_CASE("special elements") {
  Fq f3(3), f5(5);
  // t_tilde degenerates to the identity at q = 3 but not at q = 5.
  CHECK(elem_t_tilde(2, f3) == mat_identity(4));
  Mat t5 = elem_t_tilde(2, f5);
  CHECK(t5.at(0, 0) == 1);
  CHECK(t5.at(1, 1) == 2);
  CHECK(t5.at(2, 2) == 3);
  CHECK(t5.at(3, 3) == 1);
  CHECK(!(t5 == mat_identity(4)));

  for (int l : {2, 3})
    for (int q : {3, 5}) {
      Fq f(q);
      SpecialElements se = special_elements(l, f);  // self-checking constructor
      // c^2 = I and c notin SO_{2l}
      CHECK(mat_mul(se.c, se.c, f) == mat_identity(2 * l));
      CHECK(mat_det(se.c, f) == f.neg(1));
      // t'_n = t_tilde iff n odd
      for (int n = 1; n <= l - 1; ++n) {
        Mat tp = elem_t_prime_n(l, n, f);
        if (n % 2 == 1) CHECK(tp == se.t_tilde);
        else CHECK(tp == mat_identity(2 * l));
      }
      // w_ll = l_l(I/2) inside SO_{2l+1}
      Mat half = mat_identity(l);
      for (int i = 0; i < l; ++i) half.set(i, i, f.half());
      CHECK(se.w_ll == elem_l_n(half, f));
      // wtilde_l for even l is the antidiagonal block matrix
      if (l % 2 == 0) {
        Mat expect = mat_zero(2 * l);
        for (int i = 0; i < l; ++i) {
          expect.set(i, l + i, 1);
          expect.set(l + i, i, 1);
        }
        CHECK(se.w_tilde_l == expect);
        CHECK(se.w_tilde_l_prime == expect);
      }
    }
}

TEST_CASE("root subgroups") {
  for (int q : {3, 5}) {
    Fq f(q);
    const int l = 2;
    RootDatum rd(l);
    const FiniteGroup& g = FiniteGroup::enumerate(GroupKind::SOEven, l, q);
    std::vector<Root> all = rd.positive;
    for (const auto& r : rd.positive) {
      Root neg;
      neg.c = r.c;
      for (auto& v : neg.c) v = -v;
      all.push_back(neg);
    }
    for (const auto& alpha : all) {
      CHECK(root_subgroup_elem(l, f, alpha, 0) == mat_identity(2 * l));
      bool pos = alpha.is_positive();
      for (int x = 0; x < q; ++x) {
        Mat e = root_subgroup_elem(l, f, alpha, x);
        CHECK(g.contains(e));
        CHECK(is_upper_unitriangular(e) == (pos || x == 0));
        for (int y = 0; y < q; ++y) {
          Mat lhs = mat_mul(e, root_subgroup_elem(l, f, alpha, y), f);
          CHECK(lhs == root_subgroup_elem(l, f, alpha, f.add(x, y)));
        }
      }
      // torus conjugation: t x_a(x) t^{-1} = x_a(alpha(t) x)
      for (const auto& t : g.subgroups().torus)
        for (int x = 0; x < q; ++x) {
          Mat lhs = mat_mul(mat_mul(t, root_subgroup_elem(l, f, alpha, x), f),
                            mat_inverse(t, f), f);
          int ax = f.mul(root_value_on_torus(f, alpha, t), x);
          CHECK(lhs == root_subgroup_elem(l, f, alpha, ax));
        }
    }
    // additivity at q=3: x(1) x(2) = x(0) = I
    if (q == 3)
      CHECK(mat_mul(root_subgroup_elem(l, f, rd.simple[0], 1),
                    root_subgroup_elem(l, f, rd.simple[0], 2), f) == mat_identity(2 * l));
  }
}

TEST_CASE("weyl matrices") {
  Fq f3(3);
  for (int l : {2, 3}) {
    Fq f(3);
    const FiniteGroup& g = FiniteGroup::enumerate(GroupKind::SOEven, l, 3);
    CHECK(weyl_matrix(l, WeylElement::identity(l)) == mat_identity(2 * l));
    for (const auto& w : weyl_group_d(l)) {
      Mat m = weyl_matrix(l, w);
      CHECK(g.contains(m));
      // composition is matrix multiplication
      for (const auto& v : weyl_group_d(l)) {
        CHECK(mat_mul(weyl_matrix(l, w), weyl_matrix(l, v), f) ==
              weyl_matrix(l, w.compose(v)));
      }
      if (l > 2) break;  // l = 3: one outer pass is enough
    }
  }
  // named representatives match their signed permutations bit for bit
  for (int l : {2, 3}) {
    Fq f(5);
    SpecialElements se = special_elements(l, f);
    for (int n = 1; n <= l - 1; ++n)
      CHECK(se.w_tilde[n] == weyl_matrix(l, weyl_wtilde_n(l, n)));
    CHECK(se.w_long == weyl_matrix(l, weyl_long(l)));
  }
}

TEST_CASE("bruhat decomposition") {
  // identity and representatives decompose trivially
  const auto& g = so4q3();
  auto br = bruhat_decompose(g, mat_identity(4));
  CHECK(br.w.is_identity());
  CHECK(br.u1 == mat_identity(4));
  CHECK(br.t == mat_identity(4));
  CHECK(br.u2 == mat_identity(4));
  for (const auto& w : bessel_support(2)) {
    auto b2 = bruhat_decompose(g, weyl_matrix(2, w));
    CHECK(b2.w == w);
    CHECK(b2.u1 == mat_identity(4));
    CHECK(b2.t == mat_identity(4));
    CHECK(b2.u2 == mat_identity(4));
  }
  // re-multiplication reproduces g on all of SO_4(3) and GL_2(5)
  const Fq& f = g.field();
  for (const auto& m : g.elements()) {
    auto b = bruhat_decompose(g, m);
    Mat back = mat_mul(mat_mul(b.u1, b.t, f), mat_mul(b.wrep, b.u2, f), f);
    CHECK(back == m);
    CHECK(is_upper_unitriangular(b.u1));
    CHECK(is_upper_unitriangular(b.u2));
    CHECK(is_diagonal(b.t));
  }
  FiniteGroup gl25 = FiniteGroup::enumerate(GroupKind::GL, 2, 5);
  for (const auto& m : gl25.elements()) {
    auto b = bruhat_decompose(gl25, m);
    Mat back = mat_mul(mat_mul(b.u1, b.t, gl25.field()), mat_mul(b.wrep, b.u2, gl25.field()),
                       gl25.field());
    CHECK(back == m);
  }
}

TEST_CASE("siegel decomposition") {
  for (int n : {1, 2}) {
    Fq f(3);
    Rng rng(7);
    auto vlist = enumerate_siegel_radical(n, f);
    CHECK(vlist.size() == static_cast<size_t>(std::pow(3, n * (n + 1) / 2)));
    for (const auto& v : vlist) CHECK(preserves_form(v, mat_form_j(2 * n + 1), f));

    // construct-then-decompose round trips
    for (int trial = 0; trial < 40; ++trial) {
      Mat a = mat_zero(n);
      do {
        for (int i = 0; i < n * n; ++i) a.a[i] = static_cast<uint8_t>(rng.below(3));
      } while (!mat_is_invertible(a, f));
      const Mat& v = vlist[rng.below(vlist.size())];
      Mat g = mat_mul(elem_l_n(a, f), v, f);
      auto sd = siegel_decompose(n, g, f);
      REQUIRE(sd.kind == SiegelKind::QPart);
      CHECK(sd.a == a);
      CHECK(sd.v == v);
      // open cell round trip
      const Mat& v2 = vlist[rng.below(vlist.size())];
      Mat h = mat_mul(mat_mul(g, elem_w_n(n, f), f), v2, f);
      auto sd2 = siegel_decompose(n, h, f);
      REQUIRE(sd2.kind == SiegelKind::OpenCell);
      Mat back = mat_mul(mat_mul(elem_l_n(sd2.a, f), sd2.v1, f),
                         mat_mul(elem_w_n(n, f), sd2.v2, f), f);
      CHECK(back == h);
    }
    // w_n itself: OpenCell(I, I, I)
    auto sd = siegel_decompose(n, elem_w_n(n, f), f);
    REQUIRE(sd.kind == SiegelKind::OpenCell);
    CHECK(sd.a == mat_identity(n));
    CHECK(sd.v1 == mat_identity(2 * n + 1));
    CHECK(sd.v2 == mat_identity(2 * n + 1));
  }
  // classification agrees with the brute-force double-coset scan in SO_3(3)
  {
    Fq f(3);
    const auto& g3 = so3q3();
    auto vlist = enumerate_siegel_radical(1, f);
    std::set<Mat> qpart, open;
    for (const auto& m : g3.elements()) {
      bool in_q = true;
      for (int i = 1; i < 3; ++i)
        if (m.at(i, 0) != 0) in_q = false;
      if (in_q) qpart.insert(m);
    }
    for (const auto& q : qpart)
      for (const auto& v : vlist) open.insert(mat_mul(mat_mul(q, elem_w_n(1, f), f), v, f));
    for (const auto& m : g3.elements()) {
      auto sd = siegel_decompose(1, m, f);
      if (qpart.count(m)) CHECK(sd.kind == SiegelKind::QPart);
      else if (open.count(m)) CHECK(sd.kind == SiegelKind::OpenCell);
      else CHECK(sd.kind == SiegelKind::Other);
    }
  }
}

TEST_CASE("embeddings are form-preserving homomorphisms") {
  Fq f(3);
  const int l = 2;
  // SO_3 -> SO_4, exhaustive at q = 3
  const auto& g3 = so3q3();
  const auto& g4 = so4q3();
  std::set<Mat> images;
  for (const auto& a : g3.elements()) {
    Mat ea = embed_odd_in_even(l, 1, a, f);
    CHECK(g4.contains(ea));
    images.insert(ea);
  }
  CHECK(images.size() == g3.order());  // injective
  CHECK(embed_odd_in_even(l, 1, mat_identity(3), f) == mat_identity(4));
  for (const auto& a : g3.elements())
    for (const auto& b : g3.elements()) {
      Mat lhs = embed_odd_in_even(l, 1, g3.mul(a, b), f);
      Mat rhs = g4.mul(embed_odd_in_even(l, 1, a, f), embed_odd_in_even(l, 1, b, f));
      CHECK(lhs == rhs);
    }
  // SO_4 -> SO_5, exhaustive at q = 3
  std::set<Mat> images2;
  CHECK(embed_even_in_odd(l, mat_identity(4), f) == mat_identity(5));
  std::vector<Mat> e4;
  for (const auto& a : g4.elements()) e4.push_back(embed_even_in_odd(l, a, f));
  for (size_t i = 0; i < e4.size(); ++i) images2.insert(e4[i]);
  CHECK(images2.size() == g4.order());
  Rng rng(11);
  for (int trial = 0; trial < 2000; ++trial) {
    size_t i = rng.below(g4.order()), j = rng.below(g4.order());
    Mat lhs = embed_even_in_odd(l, g4.mul(g4.at(i), g4.at(j)), f);
    Mat rhs = mat_mul(e4[i], e4[j], f);
    CHECK(lhs == rhs);
  }

  // l_n(a) -> q_n(a) under the odd-in-even embedding (l = 3, n = 1 exercises
  // the nontrivial outer padding).
  {
    Fq f5(5);
    for (int ln : {2, 3}) {
      for (int n = 1; n < ln; ++n) {
        for (int aval = 1; aval < 5 && n == 1; ++aval) {
          Mat a = mat_identity(1);
          a.set(0, 0, aval);
          Mat got = embed_odd_in_even(ln, n, elem_l_n(a, f5), f5);
          CHECK(got == elem_q_n(ln, n, a, f5));
        }
      }
    }
  }

  // torus image of the even-in-odd embedding matches the closed form at q=5
  {
    Fq f5(5);
    FiniteGroup g45 = FiniteGroup::enumerate(GroupKind::SOEven, 2, 5);
    for (const auto& t : g45.subgroups().torus) {
      Mat img = embed_even_in_odd(2, t, f5);
      int t1 = t.at(0, 0), t2 = t.at(1, 1);
      int t2i = f5.inv(t2);
      Mat expect = mat_zero(5);
      expect.set(0, 0, t1);
      expect.set(4, 4, f5.inv(t1));
      int h = f5.half(), qr = f5.quarter();
      int sum = f5.add(t2, t2i), dif = f5.sub(t2, t2i);
      expect.set(1, 1, f5.add(h, f5.mul(qr, sum)));
      expect.set(1, 2, f5.mul(h, dif));
      expect.set(1, 3, f5.mul(2, f5.sub(h, f5.mul(qr, sum))));
      expect.set(2, 1, f5.mul(qr, dif));
      expect.set(2, 2, f5.mul(h, sum));
      expect.set(2, 3, f5.neg(f5.mul(h, dif)));
      expect.set(3, 1, f5.mul(h, f5.sub(h, f5.mul(qr, sum))));
      expect.set(3, 2, f5.neg(f5.mul(qr, dif)));
      expect.set(3, 3, f5.add(h, f5.mul(qr, sum)));
      CHECK(img == expect);
      if (t2 == 1) {
        // middle 3x3 block is the identity
        for (int i = 1; i <= 3; ++i)
          for (int j = 1; j <= 3; ++j) CHECK(img.at(i, j) == (i == j ? 1 : 0));
      }
    }
  }

  // the embedded w_n equals t'_n w_hat_n, and w^{l,n} q_n(a) (w^{l,n})^{-1} = t_n(a)
  for (int lq : {3, 5}) {
    Fq fq(lq);
    for (int ll : {2, 3}) {
      for (int n = 1; n <= ll - 1; ++n) {
        Mat img = embed_odd_in_even(ll, n, elem_w_n(n, fq), fq);
        Mat expect = mat_mul(elem_t_prime_n(ll, n, fq), elem_w_hat_n(ll, n), fq);
        CHECK(img == expect);
      }
    }
  }
}

TEST_CASE("outer element conjugation stabilizes the group") {
  const auto& g = so4q3();
  const Fq& f = g.field();
  Mat c = elem_outer_c(2);
  std::set<Mat> conj;
  for (const auto& m : g.elements()) conj.insert(mat_mul(mat_mul(c, m, f), c, f));
  CHECK(conj.size() == g.order());
  for (const auto& m : conj) CHECK(g.contains(m));
  CHECK(!g.contains(c));
}

TEST_CASE("R subgroup and parabolic pack") {
  Fq f(3);
  PsiAdditive psi(3);
  // l=3, n=1: |R^{3,1}| = 3
  auto r31 = enumerate_r_subgroup(3, 1, f);
  CHECK(r31.size() == 3);
  for (const auto& r : r31) CHECK(preserves_form(r, mat_form_j(6), f));
  // l=2, n=1: trivial
  CHECK(enumerate_r_subgroup(2, 1, f).size() == 1);

  const auto& g4 = so4q3();
  const auto& g3 = so3q3();
  ParabolicPack pk = parabolic_pack(g4, &g3, 1, psi);
  CHECK(pk.v_n.size() == 3);  // q^{n(n+1)/2}
  CHECK(pk.n_rad.size() == 1);
  CHECK(pk.h.size() == g3.order());
  CHECK(pk.q_n.size() == 48 * 3 / 6);  // |Q_1| = |GL_1| |V_1| = 2*3 = 6
  CHECK(pk.l_n.size() == 2);
  // psi' is trivial when n = l-1
  for (const auto& v : pk.n_rad) CHECK(std::abs(pk.psi_prime(v) - CScalar(1, 0)) < 1e-14);

  // |V_2| = 27 by counting the unipotent shape inside SO_5(3)
  FiniteGroup so5 = FiniteGroup::enumerate(GroupKind::SOOdd, 2, 3);
  auto v2 = enumerate_siegel_radical(2, f);
  CHECK(v2.size() == 27);
  size_t count = 0;
  for (const auto& m : so5.elements()) {
    bool shape = is_upper_unitriangular(m);
    for (int i = 0; i < 2 && shape; ++i)
      for (int j = 0; j < 2 && shape; ++j)
        if (m.at(i, j) != (i == j ? 1 : 0)) shape = false;
    for (int j = 0; j < 2 && shape; ++j)
      if (m.at(2, 3 + j) != 0 && false) shape = false;
    // full condition: top-left 2x2 = I and bottom-right 2x2 = I
    for (int i = 3; i < 5 && shape; ++i)
      for (int j = 3; j < 5 && shape; ++j)
        if (m.at(i, j) != (i == j ? 1 : 0)) shape = false;
    if (shape) ++count;
  }
  CHECK(count == 27);
  for (const auto& v : v2) CHECK(std::binary_search(so5.elements().begin(), so5.elements().end(), v));
}

TEST_CASE("rational identity for the embedded fixed-cell matrix") {
  // A = [[-1/8, 3/4, 9/4], [-3/8, 5/4, 3/4], [9/16, -3/8, -1/8]]; A^2 = I_3
  // over the rationals. Numerators over the common denominator 16.
  long long a[3][3] = {{-2, 12, 36}, {-6, 20, 12}, {9, -6, -2}};
  long long c[3][3] = {};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      long long s = 0;
      for (int k = 0; k < 3; ++k) s += a[i][k] * a[k][j];
      c[i][j] = s;  // denominator 256
    }
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) CHECK(c[i][j] == (i == j ? 256 : 0));
}
