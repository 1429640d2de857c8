#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <map>
#include <set>

#include "soconv/weyl.hpp"

using namespace soconv;

TEST_CASE("signed permutation group") {
  auto w = weyl_group_d(3);
  CHECK(w.size() == 4 * 6);  // 2^{l-1} l!
  for (const auto& e : w) {
    CHECK(e.in_weyl_d());
    CHECK(e.compose(e.inverse()).is_identity());
  }
  // composition vs root action: (vw) alpha = v (w alpha)
  RootDatum rd(3);
  for (size_t i = 0; i < 24; i += 5)
    for (size_t j = 0; j < 24; j += 7)
      for (const auto& r : rd.positive) {
        Root lhs = w[i].compose(w[j]).apply(r);
        Root rhs = w[i].apply(w[j].apply(r));
        CHECK(lhs == rhs);
      }
}

TEST_CASE("theta and Bessel support") {
  for (int l = 2; l <= 5; ++l) {
    auto e = WeylElement::identity(l);
    auto te = theta_of(l, e);
    CHECK(te.supports_bessel);
    CHECK(te.theta.size() == static_cast<size_t>(l));

    auto support = bessel_support(l);
    CHECK(support.size() == (1u << l));
    // theta restricted to the support is a bijection onto P(Delta).
    std::set<std::set<int>> thetas;
    for (const auto& w : support) thetas.insert(theta_of(l, w).theta);
    CHECK(thetas.size() == (1u << l));
  }
}

TEST_CASE("named elements against the displayed theta values") {
  for (int l = 2; l <= 6; ++l) {
    for (int n = 1; n <= l - 2; ++n) {
      auto th = theta_of(l, weyl_wtilde_n(l, n));
      CHECK(th.supports_bessel);
      CHECK(th.theta.count(n) == 0);
      CHECK(th.theta.size() == static_cast<size_t>(l - 1));
    }
    // wtilde_{l-1} drops both alpha_{l-1} and alpha_l.
    auto th1 = theta_of(l, weyl_wtilde_n(l, l - 1));
    CHECK(th1.supports_bessel);
    CHECK(th1.theta.count(l - 1) == 0);
    CHECK(th1.theta.count(l) == 0);
    CHECK(th1.theta.size() == static_cast<size_t>(l - 2));

    auto thp = theta_of(l, weyl_wtilde_l_prime(l));
    int missing = (l % 2 == 1) ? l - 1 : l;
    CHECK(thp.theta.count(missing) == 0);
    CHECK(thp.theta.size() == static_cast<size_t>(l - 1));

    auto thl = theta_of(l, weyl_wtilde_l(l));
    CHECK(thl.theta.count(l) == 0);
    CHECK(thl.theta.size() == static_cast<size_t>(l - 1));
    auto thc = theta_of(l, weyl_wtilde_l_c(l));
    CHECK(thc.theta.count(l - 1) == 0);
    CHECK(thc.theta.size() == static_cast<size_t>(l - 1));
  }
}

TEST_CASE("action table of wtilde_n") {
  for (int l = 3; l <= 7; ++l) {
    RootDatum rd(l);
    for (int n = 1; n <= l - 2; ++n) {
      auto w = weyl_wtilde_n(l, n);
      for (int i = 1; i <= n - 1; ++i)
        CHECK(w.apply(rd.simple[i - 1]) == rd.simple[n - i - 1]);
      // wtilde_n alpha_n = -e_1 - e_{n+1}
      Root want;
      want.c.assign(l, 0);
      want.c[0] = -1;
      want.c[n] = -1;
      CHECK(w.apply(rd.simple[n - 1]) == want);
      for (int i = n + 1; i <= l - 2; ++i)
        CHECK(w.apply(rd.simple[i - 1]) == rd.simple[i - 1]);
      if (n % 2 == 1) {
        CHECK(w.apply(rd.simple[l - 2]) == rd.simple[l - 1]);
        CHECK(w.apply(rd.simple[l - 1]) == rd.simple[l - 2]);
      } else {
        CHECK(w.apply(rd.simple[l - 2]) == rd.simple[l - 2]);
        CHECK(w.apply(rd.simple[l - 1]) == rd.simple[l - 1]);
      }
    }
  }
}

TEST_CASE("cell partition") {
  for (int l = 2; l <= 7; ++l) {
    auto support = bessel_support(l);
    std::map<std::pair<int, int>, int> counts;  // (class, n) -> count
    for (const auto& w : support) {
      auto ci = classify_cell(l, w);
      CHECK(ci.cls != CellClass::NotSupport);
      counts[{static_cast<int>(ci.cls), ci.n}]++;
    }
    size_t total = 0;
    for (auto& [k, v] : counts) total += v;
    CHECK(total == support.size());
    CHECK(counts[{static_cast<int>(CellClass::B0), 0}] == 1);
    // |B_n| = n! for n <= l-2 (free GL_n Weyl part)
    int fact = 1;
    for (int n = 1; n <= l - 2; ++n) {
      fact *= n;
      CHECK(counts[{static_cast<int>(CellClass::Bn), n}] == fact);
    }
    // |B_l| = |B_l^c|
    CHECK(counts[{static_cast<int>(CellClass::Bl), l}] ==
          counts[{static_cast<int>(CellClass::Blc), l}]);
  }
  // l = 3 case from the derived enumeration: |P_2| = 2, |P_3| = |P_3^c| = 2,
  // |P_1| = 1, |P_0| = 1, total 8.
  auto support = bessel_support(3);
  std::map<int, int> by_class;
  for (const auto& w : support) by_class[static_cast<int>(classify_cell(3, w).cls)]++;
  CHECK(by_class[static_cast<int>(CellClass::B0)] == 1);
  CHECK(by_class[static_cast<int>(CellClass::Bn)] == 1);    // n = 1
  CHECK(by_class[static_cast<int>(CellClass::Blm1)] == 2);  // B_2 = B_{l-1}
  CHECK(by_class[static_cast<int>(CellClass::Bl)] == 2);
  CHECK(by_class[static_cast<int>(CellClass::Blc)] == 2);
}

TEST_CASE("subset characterizations") {
  for (int l = 2; l <= 7; ++l) {
    auto support = bessel_support(l);
    for (const auto& w : support) {
      auto th = theta_of(l, w).theta;
      auto ci = classify_cell(l, w);
      auto has = [&](int i) { return th.count(i) > 0; };
      bool chain_ok = true;
      switch (ci.cls) {
        case CellClass::B0:
          chain_ok = th.size() == static_cast<size_t>(l);
          break;
        case CellClass::Bn: {
          int n = ci.n;
          chain_ok = !has(n);
          for (int i = n + 1; i <= l; ++i) chain_ok = chain_ok && has(i);
          break;
        }
        case CellClass::Blm1:
          chain_ok = !has(l - 1) && !has(l);
          break;
        case CellClass::Bl:
          chain_ok = has(l - 1) && !has(l);
          break;
        case CellClass::Blc:
          chain_ok = has(l) && !has(l - 1);
          break;
        default:
          chain_ok = false;
      }
      CHECK(chain_ok);
    }
    // Converse inclusion: every theta matching a characterization belongs to
    // the corresponding class (double inclusion over P(Delta)).
    for (const auto& w : support) {
      auto th = theta_of(l, w).theta;
      auto has = [&](int i) { return th.count(i) > 0; };
      CellClass expect;
      int en = -1;
      if (th.size() == static_cast<size_t>(l)) {
        expect = CellClass::B0;
        en = 0;
      } else if (!has(l - 1) && !has(l)) {
        expect = CellClass::Blm1;
        en = l - 1;
      } else if (has(l - 1) && !has(l)) {
        expect = CellClass::Bl;
        en = l;
      } else if (has(l) && !has(l - 1)) {
        expect = CellClass::Blc;
        en = l;
      } else {
        // both alpha_{l-1}, alpha_l present: must be B_n with n = the least
        // missing simple root, and everything above present.
        en = 0;
        for (int i = 1; i <= l; ++i)
          if (!has(i)) { en = i; break; }
        expect = CellClass::Bn;
        for (int i = en + 1; i <= l; ++i) CHECK(has(i));
      }
      auto ci = classify_cell(l, w);
      CHECK(ci.cls == expect);
      CHECK(ci.n == en);
    }
  }
}

TEST_CASE("plain GL_l lifts do not support Bessel functions") {
  for (int l = 2; l <= 6; ++l) {
    for (const auto& perm : all_permutations(l)) {
      WeylElement w = weyl_tn(l, perm);
      if (w.is_identity()) {
        CHECK(theta_of(l, w).supports_bessel);
        continue;
      }
      CHECK(!theta_of(l, w).supports_bessel);
    }
  }
}

TEST_CASE("shape of the GL_l factor on the fixed cells") {
  for (int l = 3; l <= 5; ++l) {
    auto wl = weyl_wtilde_l(l);
    for (const auto& perm : all_permutations(l)) {
      WeylElement w = weyl_tn(l, perm).compose(wl);
      if (!theta_of(l, w).supports_bessel) continue;
      bool fixed = (w.conj_outer() == w);
      // shape: perm sends 1 -> l and {2..l} -> {1..l-1}
      bool shape = (perm[0] == l);
      CHECK(fixed == shape);
    }
    // Conversely every shaped permutation gives a fixed support element.
    for (const auto& sub : all_permutations(l - 1)) {
      std::vector<int> perm(l);
      perm[0] = l;
      for (int i = 1; i < l; ++i) perm[i] = sub[i - 1];
      WeylElement w = weyl_tn(l, perm).compose(wl);
      CHECK(theta_of(l, w).supports_bessel);
      CHECK(classify_cell(l, w).cls == CellClass::Blm1);
    }
  }
}

TEST_CASE("B_{l-1} elements factor through wtilde_{l-1}") {
  for (int l = 3; l <= 5; ++l) {
    auto support = bessel_support(l);
    auto wlm1 = weyl_wtilde_n(l, l - 1);
    for (const auto& w : support) {
      if (classify_cell(l, w).cls != CellClass::Blm1) continue;
      // w = t_{l-1}(omega) wtilde_{l-1} for a plain permutation omega
      WeylElement u = w.compose(wlm1.inverse());
      bool is_block = true;
      for (int i = 0; i < l - 1; ++i)
        is_block = is_block && u.img[i] >= 1 && u.img[i] <= l - 1;
      is_block = is_block && u.img[l - 1] == l;
      CHECK(is_block);
    }
    for (const auto& sub : all_permutations(l - 1)) {
      WeylElement w = weyl_tn(l, sub).compose(wlm1);
      if (!theta_of(l, w).supports_bessel) continue;
      CHECK(classify_cell(l, w).cls == CellClass::Blm1);
    }
  }
}
