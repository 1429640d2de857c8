#include "soconv/weyl.hpp"

#include <algorithm>
#include <map>
#include <string>

namespace soconv {

RootDatum::RootDatum(int l) : l(l) {
  if (l < 2) throw DomainError("RootDatum: rank must be >= 2");
  auto root = [&](int i, int j, int si, int sj) {
    Root r;
    r.c.assign(l, 0);
    r.c[i] = si;
    r.c[j] = sj;
    return r;
  };
  for (int i = 0; i + 1 < l; ++i) simple.push_back(root(i, i + 1, 1, -1));
  simple.push_back(root(l - 2, l - 1, 1, 1));
  for (int i = 0; i < l; ++i)
    for (int j = i + 1; j < l; ++j) {
      positive.push_back(root(i, j, 1, -1));
      positive.push_back(root(i, j, 1, 1));
    }
}

int RootDatum::simple_index(const Root& r) const {
  for (size_t k = 0; k < simple.size(); ++k)
    if (simple[k] == r) return static_cast<int>(k);
  return -1;
}

bool WeylElement::is_identity() const {
  for (int i = 0; i < l(); ++i)
    if (img[i] != i + 1) return false;
  return true;
}

int WeylElement::flips() const {
  int f = 0;
  for (int v : img)
    if (v < 0) ++f;
  return f;
}

WeylElement WeylElement::identity(int l) {
  WeylElement w;
  w.img.resize(l);
  for (int i = 0; i < l; ++i) w.img[i] = static_cast<int8_t>(i + 1);
  return w;
}

WeylElement WeylElement::compose(const WeylElement& rhs) const {
  WeylElement r;
  r.img.resize(l());
  for (int i = 0; i < l(); ++i) {
    int v = rhs.img[i];
    int w = img[std::abs(v) - 1];
    r.img[i] = static_cast<int8_t>(v > 0 ? w : -w);
  }
  return r;
}

WeylElement WeylElement::inverse() const {
  WeylElement r;
  r.img.resize(l());
  for (int i = 0; i < l(); ++i) {
    int v = img[i];
    r.img[std::abs(v) - 1] = static_cast<int8_t>(v > 0 ? i + 1 : -(i + 1));
  }
  return r;
}

Root WeylElement::apply(const Root& r) const {
  // (w alpha)(t) = alpha(w t w^{-1}): coefficient of e_k in w alpha is
  // sgn(w(k)) * c_{|w(k)|}.
  Root out;
  out.c.assign(r.c.size(), 0);
  for (size_t k = 0; k < r.c.size(); ++k) {
    int v = img[k];
    out.c[k] = (v > 0 ? 1 : -1) * r.c[std::abs(v) - 1];
  }
  return out;
}

WeylElement WeylElement::conj_outer() const {
  const int n = l();
  WeylElement r = *this;
  // Flip the sign of coordinate l in the argument and in the value.
  auto fl = [&](int v) { return std::abs(v) == n ? -v : v; };
  WeylElement out;
  out.img.resize(n);
  for (int i = 0; i < n; ++i) {
    int src = fl(i + 1);
    int v = src > 0 ? r.img[src - 1] : -r.img[-src - 1];
    out.img[i] = static_cast<int8_t>(fl(v));
  }
  return out;
}

ThetaInfo theta_of(int l, const WeylElement& w) {
  RootDatum rd(l);
  ThetaInfo t;
  t.supports_bessel = true;
  for (int k = 0; k < l; ++k) {
    Root im = w.apply(rd.simple[k]);
    if (im.is_positive()) {
      t.theta.insert(k + 1);
      if (rd.simple_index(im) < 0) t.supports_bessel = false;
    }
  }
  return t;
}

std::vector<WeylElement> weyl_group_d(int l) {
  if (l > 7) throw BudgetError("weyl_group_d: rank budget is 7");
  std::vector<int> base(l);
  for (int i = 0; i < l; ++i) base[i] = i + 1;
  std::vector<WeylElement> out;
  std::sort(base.begin(), base.end());
  do {
    for (uint32_t mask = 0; mask < (1u << l); ++mask) {
      if (__builtin_popcount(mask) % 2) continue;
      WeylElement w;
      w.img.resize(l);
      for (int i = 0; i < l; ++i)
        w.img[i] = static_cast<int8_t>((mask >> i) & 1 ? -base[i] : base[i]);
      out.push_back(std::move(w));
    }
  } while (std::next_permutation(base.begin(), base.end()));
  return out;
}

std::vector<WeylElement> bessel_support(int l) {
  std::vector<WeylElement> out;
  for (auto& w : weyl_group_d(l))
    if (theta_of(l, w).supports_bessel) out.push_back(w);
  return out;
}

WeylElement weyl_wtilde_n(int l, int n) {
  if (n < 1 || n > l - 1) throw DomainError("weyl_wtilde_n: need 1 <= n <= l-1");
  WeylElement w = WeylElement::identity(l);
  for (int j = 1; j <= n; ++j) w.img[j - 1] = static_cast<int8_t>(-(n + 1 - j));
  if (n % 2 == 1) w.img[l - 1] = static_cast<int8_t>(-l);
  return w;
}

WeylElement weyl_wtilde_l_prime(int l) {
  WeylElement w = WeylElement::identity(l);
  if (l % 2 == 0) {
    for (int j = 1; j <= l; ++j) w.img[j - 1] = static_cast<int8_t>(-(l + 1 - j));
  } else {
    w.img[0] = static_cast<int8_t>(l);
    for (int j = 2; j <= l; ++j) w.img[j - 1] = static_cast<int8_t>(-(l + 1 - j));
  }
  return w;
}

WeylElement weyl_wtilde_l(int l) {
  WeylElement wp = weyl_wtilde_l_prime(l);
  return (l % 2 == 1) ? wp.conj_outer() : wp;
}

WeylElement weyl_wtilde_l_c(int l) { return weyl_wtilde_l(l).conj_outer(); }

WeylElement weyl_long(int l) {
  WeylElement w = WeylElement::identity(l);
  if (l % 2 == 0) {
    for (int j = 1; j <= l; ++j) w.img[j - 1] = static_cast<int8_t>(-j);
  } else {
    for (int j = 1; j < l; ++j) w.img[j - 1] = static_cast<int8_t>(-j);
    w.img[l - 1] = static_cast<int8_t>(l);
  }
  return w;
}

WeylElement weyl_tn(int l, const std::vector<int>& perm) {
  const int n = static_cast<int>(perm.size());
  if (n > l) throw DomainError("weyl_tn: permutation longer than rank");
  WeylElement w = WeylElement::identity(l);
  for (int i = 0; i < n; ++i) w.img[i] = static_cast<int8_t>(perm[i]);
  return w;
}

namespace {

// Is u = t_n(w') for a plain permutation of {1..n} fixing n+1..l?
bool is_gl_block_perm(const WeylElement& u, int n) {
  const int l = u.l();
  for (int i = 0; i < n; ++i)
    if (u.img[i] < 1 || u.img[i] > n) return false;
  for (int i = n; i < l; ++i)
    if (u.img[i] != i + 1) return false;
  return true;
}

}  // namespace

std::optional<std::vector<int>> gl_factor_of(int l, const WeylElement& w) {
  WeylElement u = w.compose(weyl_wtilde_l(l).inverse());
  if (!is_gl_block_perm(u, l)) return std::nullopt;
  std::vector<int> perm(l);
  for (int i = 0; i < l; ++i) perm[i] = u.img[i];
  return perm;
}

CellInfo classify_cell(int l, const WeylElement& w) {
  if (!theta_of(l, w).supports_bessel)
    throw DomainError("classify_cell: element does not support Bessel functions");
  if (w.is_identity()) return {CellClass::B0, 0};
  for (int n = 1; n <= l - 2; ++n) {
    WeylElement u = w.compose(weyl_wtilde_n(l, n).inverse());
    if (is_gl_block_perm(u, n)) return {CellClass::Bn, n};
  }
  if (gl_factor_of(l, w)) {
    bool fixed = (w.conj_outer() == w);
    return fixed ? CellInfo{CellClass::Blm1, l - 1} : CellInfo{CellClass::Bl, l};
  }
  if (gl_factor_of(l, w.conj_outer())) return {CellClass::Blc, l};
  return {CellClass::NotSupport, -1};
}

std::vector<std::vector<int>> all_permutations(int n) {
  std::vector<int> base(n);
  for (int i = 0; i < n; ++i) base[i] = i + 1;
  std::vector<std::vector<int>> out;
  do {
    out.push_back(base);
  } while (std::next_permutation(base.begin(), base.end()));
  return out;
}

std::string weyl_str(const WeylElement& w) {
  std::string s;
  for (int i = 0; i < w.l(); ++i) {
    if (i) s += ',';
    s += std::to_string(int(w.img[i]));
  }
  return s;
}

}  // namespace soconv
