#include "soconv/zeta.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

namespace soconv {

namespace {

// f_v building blocks. Values of model vectors are functions on GL_n.
CScalar model_eval(const GenericRep& tau, const CVector& v, const Mat& a) {
  return tau.module->eval(v, a);
}

}  // namespace

CScalar Section::eval(const Mat& h, const Mat& a) const {
  const Fq& f = tau->module->group().field();
  KahanSum acc;
  for (const auto& term : terms) {
    Mat arg = mat_mul(h, term.gamma, f);
    SiegelResult sd = siegel_decompose(n, arg, f);
    if (!star) {
      if (sd.kind != SiegelKind::QPart) continue;
      acc.add(term.coeff * model_eval(*tau, term.v, mat_mul(a, sd.a, f)));
    } else {
      if (sd.kind != SiegelKind::OpenCell) continue;
      // ftilde_v(l(b) v1 w_n v2, a) = W*_v(a b) = v(d_n (a b)*)
      Mat ab = mat_mul(a, sd.a, f);
      Mat arg2 = mat_mul(elem_d_n(n, f), mat_star(ab, f), f);
      acc.add(term.coeff * model_eval(*tau, term.v, arg2));
    }
  }
  return acc.value();
}

CScalar Section::eval(const Mat& h) const { return eval(h, mat_identity(n)); }

void Section::right_translate(const Mat& x) {
  const Fq& f = tau->module->group().field();
  for (auto& term : terms) term.gamma = mat_mul(x, term.gamma, f);
}

Section section_fv(const GenericRep& tau, const CVector& v, int l, int n) {
  if (tau.module->group().kind() != GroupKind::GL || tau.module->group().rank() != n)
    throw DomainError("section_fv: tau must live on GL_n");
  Section s;
  s.tau = &tau;
  s.l = l;
  s.n = n;
  s.star = false;
  s.terms.push_back({CScalar(1.0, 0.0), mat_identity(2 * n + 1), v});
  return s;
}

Section intertwining_apply(const Section& f) {
  if (f.star) throw DomainError("intertwining_apply: section already intertwined");
  Section out = f;
  out.star = true;
  return out;
}

CScalar intertwine_brute_eval(const Section& f, const std::vector<Mat>& v_n,
                              const Mat& h, const Mat& a) {
  if (f.star) throw DomainError("intertwine_brute_eval: expects a plain section");
  const Fq& fq = f.tau->module->group().field();
  const int n = f.n;
  Mat wn = elem_w_n(n, fq);
  Mat da = mat_mul(elem_d_n(n, fq), mat_star(a, fq), fq);
  KahanSum acc;
  for (const auto& u : v_n) acc.add(f.eval(mat_mul(mat_mul(wn, u, fq), h, fq), da));
  return acc.value();
}

const FiniteGroup& ZetaContext::odd(int n) const {
  auto it = so_odd.find(n);
  if (it == so_odd.end() || !it->second)
    throw DomainError("ZetaContext: SO_{2n+1} not available for n=" + std::to_string(n));
  return *it->second;
}

const std::vector<Mat>& ZetaContext::r_subgroup(int n) const {
  auto it = r_cache_.find(n);
  if (it == r_cache_.end())
    it = r_cache_.emplace(n, enumerate_r_subgroup(l(), n, field())).first;
  return it->second;
}

const Mat& ZetaContext::w_ln(int n) const {
  auto it = wln_cache_.find(n);
  if (it == wln_cache_.end()) it = wln_cache_.emplace(n, elem_w_ln(l(), n)).first;
  return it->second;
}

CScalar zeta_low(const WhittakerFn& w, const Section& f, const ZetaContext& ctx) {
  const int l = ctx.l();
  const int n = f.n;
  if (n >= l) throw DomainError("zeta_low: needs n < l");
  const Fq& fq = ctx.field();
  const FiniteGroup& odd = ctx.odd(n);
  const auto& cosets = odd.cosets();
  const Mat& wln = ctx.w_ln(n);
  Mat wln_inv = mat_inverse(wln, fq);
  const auto& rs = ctx.r_subgroup(n);
  Mat idn = mat_identity(n);
  KahanSum acc;
  for (uint32_t rep : cosets.reps) {
    const Mat& g = odd.at(rep);
    CScalar fv = f.eval(g, idn);
    if (std::abs(fv) < 1e-15) continue;
    Mat ghat = embed_odd_in_even(l, n, g, fq);
    Mat mid = mat_mul(mat_mul(wln, ghat, fq), wln_inv, fq);
    KahanSum wsum;
    for (const auto& r : rs) wsum.add(w(mat_mul(r, mid, fq)));
    acc.add(wsum.value() * fv);
  }
  return acc.value();
}

CScalar zeta_top(const WhittakerFn& w, const Section& f, const ZetaContext& ctx) {
  const int l = ctx.l();
  if (f.n != l) throw DomainError("zeta_top: needs n = l");
  const Fq& fq = ctx.field();
  const FiniteGroup& g2l = *ctx.so2l;
  const auto& cosets = g2l.cosets();
  Mat wll = elem_w_ll(l, fq);
  Mat idl = mat_identity(l);
  KahanSum acc;
  for (uint32_t rep : cosets.reps) {
    const Mat& g = g2l.at(rep);
    CScalar wv = w(g);
    if (std::abs(wv) < 1e-15) continue;
    Mat arg = mat_mul(wll, embed_even_in_odd(l, g, fq), fq);
    acc.add(wv * f.eval(arg, idl));
  }
  return acc.value();
}

CScalar zeta_integral(const WhittakerFn& w, const Section& f, const ZetaContext& ctx) {
  return f.n == ctx.l() ? zeta_top(w, f, ctx) : zeta_low(w, f, ctx);
}

CScalar zeta_cells(const WhittakerFn& w, const Section& f,
                   const std::vector<WeylElement>& cells,
                   const std::function<bool(const Mat&)>& pred, const ZetaContext& ctx) {
  const int l = ctx.l();
  if (f.n != l) throw DomainError("zeta_cells: needs n = l");
  const Fq& fq = ctx.field();
  const FiniteGroup& g2l = *ctx.so2l;
  Mat wll = elem_w_ll(l, fq);
  Mat idl = mat_identity(l);
  KahanSum acc;
  for (uint32_t rep : g2l.cosets().reps) {
    const Mat& g = g2l.at(rep);
    auto br = bruhat_decompose(g2l, g);
    if (std::find(cells.begin(), cells.end(), br.w) == cells.end()) continue;
    if (pred && !pred(br.t)) continue;
    CScalar wv = w(g);
    Mat arg = mat_mul(wll, embed_even_in_odd(l, g, fq), fq);
    acc.add(wv * f.eval(arg, idl));
  }
  return acc.value();
}

CScalar zeta_cells_triple(const WhittakerFn& w, const Section& f,
                          const std::vector<WeylElement>& cells,
                          const std::function<bool(const Mat&)>& pred,
                          const ZetaContext& ctx) {
  const int l = ctx.l();
  if (f.n != l) throw DomainError("zeta_cells_triple: needs n = l");
  const Fq& fq = ctx.field();
  const FiniteGroup& g2l = *ctx.so2l;
  Mat wll = elem_w_ll(l, fq);
  Mat idl = mat_identity(l);
  const auto& torus = g2l.subgroups().torus;
  const auto& upper = g2l.subgroups().upper;
  KahanSum acc;
  for (const auto& t : torus) {
    if (pred && !pred(t)) continue;
    for (const auto& cw : cells) {
      Mat tw = mat_mul(t, weyl_matrix(l, cw), fq);
      for (const auto& u : upper) {
        Mat x = mat_mul(tw, u, fq);
        CScalar wv = w(x);
        if (std::abs(wv) < 1e-15) continue;
        Mat arg = mat_mul(wll, embed_even_in_odd(l, x, fq), fq);
        acc.add(wv * f.eval(arg, idl));
      }
    }
  }
  return acc.value();
}

Mat random_odd_element(int n, const Fq& f, Rng& rng) {
  // l(a) v1 w^eps v2 with random invertible a and random radical elements.
  Mat a = mat_zero(n);
  do {
    for (int i = 0; i < n * n; ++i) a.a[i] = static_cast<uint8_t>(rng.below(f.q()));
  } while (!mat_is_invertible(a, f));
  Mat g = mat_mul(elem_l_n(a, f), random_siegel_radical(n, f, rng), f);
  if (rng.below(2)) g = mat_mul(g, elem_w_n(n, f), f);
  return mat_mul(g, random_siegel_radical(n, f, rng), f);
}

namespace {

CVector random_model_vector(const GenericRep& rep, Rng& rng) {
  CVector c(rep.basis.cols());
  for (Eigen::Index i = 0; i < c.size(); ++i) c(i) = CScalar(rng.symmetric(), rng.symmetric());
  CVector v = rep.basis * c;
  double nn = v.norm();
  return nn > 1e-12 ? CVector(v / nn) : v;
}

WhittakerFn random_whittaker(const GenericRep& pi, Rng& rng, int nterms) {
  const GGModule& mod = *pi.module;
  const FiniteGroup& g = mod.group();
  CVector acc = CVector::Zero(static_cast<Eigen::Index>(mod.dim()));
  for (int k = 0; k < nterms; ++k) {
    CScalar c(rng.symmetric(), rng.symmetric());
    const Mat& x = g.at(rng.below(g.order()));
    acc += c * mod.act(x, pi.bessel);
  }
  return WhittakerFn{&mod, acc};
}

}  // namespace

GammaRow gamma_factor(const GenericRep& pi, const GenericRep& tau, int n,
                      const ZetaContext& ctx, int probes, uint64_t seed,
                      bool allow_noncuspidal) {
  if (!pi.cuspidal && !allow_noncuspidal)
    throw DomainError("gamma_factor: pi is not cuspidal (pass allow_noncuspidal to force)");
  const int l = ctx.l();
  if (n > l) throw DomainError("gamma_factor: n > l twists are not defined here");
  GammaRow row;
  row.pi_id = pi.id;
  row.tau_id = tau.id;
  row.n = n;

  WhittakerFn w0{pi.module, pi.bessel};
  Section f0 = section_fv(tau, tau.bessel, l, n);
  CScalar num0 = zeta_integral(w0, intertwining_apply(f0), ctx);
  CScalar den0 = zeta_integral(w0, f0, ctx);
  row.psi_abs = std::abs(den0);
  if (row.psi_abs < ctx.tol.eq_abs)
    throw DegenerateZetaError("gamma_factor: guaranteed-nonzero pair vanished for " +
                              pi.id + " x " + tau.id);
  row.gamma = num0 / den0;

  Rng rng(fnv1a(pi.id.data(), pi.id.size(),
                fnv1a(tau.id.data(), tau.id.size(), seed ^ (0x517cc1b7ull * (n + 1)))));
  double spread = 0.0;
  int used = 0;
  const Fq& fq = ctx.field();
  for (int k = 0; k < probes; ++k) {
    WhittakerFn w = random_whittaker(pi, rng, 3);
    Section f;
    f.tau = &tau;
    f.l = l;
    f.n = n;
    f.star = false;
    for (int t = 0; t < 2; ++t) {
      Mat gamma = (n < l) ? ctx.odd(n).at(rng.below(ctx.odd(n).order()))
                          : random_odd_element(n, fq, rng);
      f.terms.push_back(
          {CScalar(rng.symmetric(), rng.symmetric()), gamma, random_model_vector(tau, rng)});
    }
    CScalar den = zeta_integral(w, f, ctx);
    if (std::abs(den) < 1e-6) continue;
    CScalar num = zeta_integral(w, intertwining_apply(f), ctx);
    CScalar ratio = num / den;
    spread = std::max(spread, std::abs(ratio - row.gamma) / std::max(1.0, std::abs(row.gamma)));
    ++used;
  }
  if (probes > 0 && used == 0)
    throw DegenerateZetaError("gamma_factor: all probe denominators vanished");
  row.spread = spread;
  row.probes = used;
  if (spread >= ctx.tol.gamma_rel)
    throw ProportionalityError("gamma_factor: probe ratios disagree (spread " +
                               std::to_string(spread) + ") for " + pi.id + " x " + tau.id);
  return row;
}

// --- hom dimensions ---------------------------------------------------------

namespace {

std::string rref_key(const Mat& g, int rows_from, int nrows, const Fq& f) {
  // Reduced row echelon form of the bottom block; canonical per row space.
  const int cols = g.n;
  std::vector<std::vector<int>> m(nrows, std::vector<int>(cols));
  for (int i = 0; i < nrows; ++i)
    for (int j = 0; j < cols; ++j) m[i][j] = g.at(rows_from + i, j);
  int row = 0;
  for (int col = 0; col < cols && row < nrows; ++col) {
    int piv = -1;
    for (int r = row; r < nrows; ++r)
      if (m[r][col]) { piv = r; break; }
    if (piv < 0) continue;
    std::swap(m[piv], m[row]);
    int inv = f.inv(m[row][col]);
    for (int j = 0; j < cols; ++j) m[row][j] = f.mul(m[row][j], inv);
    for (int r = 0; r < nrows; ++r) {
      if (r == row || !m[r][col]) continue;
      int c = m[r][col];
      for (int j = 0; j < cols; ++j) m[r][j] = f.sub(m[r][j], f.mul(c, m[row][j]));
    }
    ++row;
  }
  std::string key;
  key.reserve(static_cast<size_t>(nrows) * cols);
  for (int i = 0; i < nrows; ++i)
    for (int j = 0; j < cols; ++j) key.push_back(static_cast<char>(m[i][j]));
  return key;
}

bool in_siegel_q(int n, const Mat& g) {
  for (int i = n; i < 2 * n + 1; ++i)
    for (int j = 0; j < n; ++j)
      if (g.at(i, j) != 0) return false;
  return true;
}

uint64_t coset_count_formula(int n, int q) {
  uint64_t c = 1, p = 1;
  for (int i = 1; i <= n; ++i) {
    p *= static_cast<uint64_t>(q);
    c *= p + 1;
  }
  return c;
}

}  // namespace

std::vector<Mat> siegel_coset_reps_small(const FiniteGroup& so_odd) {
  const int n = so_odd.rank();
  const Fq& f = so_odd.field();
  std::map<std::string, Mat> reps;
  for (const auto& g : so_odd.elements()) {
    std::string key = rref_key(g, n + 1, n, f);
    reps.emplace(std::move(key), g);
  }
  if (reps.size() != coset_count_formula(n, f.q()))
    throw ConsistencyError("siegel_coset_reps_small: unexpected coset count");
  std::vector<Mat> out;
  for (auto& [k, v] : reps) out.push_back(v);
  return out;
}

std::vector<Mat> siegel_coset_reps_virtual(const ZetaContext& ctx) {
  const int l = ctx.l();
  const Fq& f = ctx.field();
  Mat wl = elem_w_n(l, f);
  std::map<std::string, Mat> reps;
  for (const auto& g : ctx.so2l->elements()) {
    Mat x = embed_even_in_odd(l, g, f);
    reps.emplace(rref_key(x, l + 1, l, f), x);
    Mat xw = mat_mul(x, wl, f);
    reps.emplace(rref_key(xw, l + 1, l, f), xw);
    if (reps.size() == coset_count_formula(l, f.q())) break;
  }
  if (reps.size() != coset_count_formula(l, f.q()))
    throw ConsistencyError("siegel_coset_reps_virtual: incomplete orbit of cosets");
  std::vector<Mat> out;
  for (auto& [k, v] : reps) out.push_back(v);
  return out;
}

int hom_dimension(const GenericRep& pi, const GenericRep& sigma, int n,
                  const ZetaContext& ctx) {
  const int l = ctx.l();
  const Fq& f = ctx.field();
  if (n < 1 || n > l) throw DomainError("hom_dimension: need 1 <= n <= l");
  const FiniteGroup& g2l = *ctx.so2l;

  std::map<int64_t, CScalar> sigma_cache;
  const FiniteGroup* sigma_group = &sigma.module->group();

  // chi of Ind_{Q_n} sigma at an element of the odd group, over given reps.
  auto chi_ind = [&](const std::vector<Mat>& reps, const std::vector<Mat>& reps_inv,
                     const Mat& x, int nn) -> CScalar {
    KahanSum acc;
    for (size_t k = 0; k < reps.size(); ++k) {
      Mat conj = mat_mul(mat_mul(reps[k], x, f), reps_inv[k], f);
      if (!in_siegel_q(nn, conj)) continue;
      Mat a = mat_submatrix(conj, 0, 0, nn, nn);
      a.n = static_cast<uint8_t>(nn);
      int64_t idx = sigma_group->index_of(a);
      auto it = sigma_cache.find(idx);
      if (it == sigma_cache.end()) it = sigma_cache.emplace(idx, sigma.character(a)).first;
      acc.add(it->second);
    }
    return acc.value();
  };
  auto invert_all = [&](const std::vector<Mat>& reps) {
    std::vector<Mat> out;
    out.reserve(reps.size());
    for (const auto& r : reps) out.push_back(mat_inverse(r, f));
    return out;
  };

  KahanSum total;
  double denom = 0.0;

  if (n == l) {
    auto reps = siegel_coset_reps_virtual(ctx);
    auto reps_inv = invert_all(reps);
    const auto& cls = g2l.classes();
    for (size_t c = 0; c < cls.reps.size(); ++c) {
      const Mat& h = g2l.at(cls.reps[c]);
      CScalar xpi = pi.character(h);
      CScalar xtau = chi_ind(reps, reps_inv, embed_even_in_odd(l, h, f), l);
      total.add(static_cast<double>(cls.sizes[c]) * xpi * std::conj(xtau));
    }
    denom = static_cast<double>(g2l.order());
  } else {
    const FiniteGroup& odd = ctx.odd(n);
    auto reps = siegel_coset_reps_small(odd);
    auto reps_inv = invert_all(reps);
    ParabolicPack pack = parabolic_pack(g2l, &odd, n, *ctx.psi);
    for (const auto& s : odd.elements()) {
      CScalar xtau = chi_ind(reps, reps_inv, s, n);
      if (std::abs(xtau) < 1e-15) continue;
      Mat se = embed_odd_in_even(l, n, s, f);
      for (const auto& v : pack.n_rad) {
        Mat h = g2l.mul(se, v);
        CScalar xpi = pi.character(h);
        total.add(xpi * std::conj(xtau * pack.psi_prime(v)));
      }
    }
    denom = static_cast<double>(odd.order() * pack.n_rad.size());
  }

  CScalar val = total.value() / denom;
  double rounded = std::round(val.real());
  if (std::abs(val.imag()) > 1e-6 || std::abs(val.real() - rounded) > 1e-6)
    throw NumericsError("hom_dimension: non-integral multiplicity " + std::to_string(val.real()) +
                        " + " + std::to_string(val.imag()) + "i");
  return static_cast<int>(rounded);
}

void GammaTable::to_csv(const std::string& path) const {
  std::ofstream out(path, std::ios::trunc);
  out << "pi-id,n,tau-id,re_gamma,im_gamma,abs_psi,spread\n";
  for (const auto& r : rows)
    out << r.pi_id << "," << r.n << "," << r.tau_id << "," << r.gamma.real() << ","
        << r.gamma.imag() << "," << r.psi_abs << "," << r.spread << "\n";
}

std::string GammaTable::to_text() const {
  std::ostringstream os;
  for (const auto& r : rows) {
    os << r.pi_id << " x " << r.tau_id << " (n=" << r.n << "): gamma = " << r.gamma.real();
    if (r.gamma.imag() >= 0) os << "+";
    os << r.gamma.imag() << "i  |Psi|=" << r.psi_abs << " spread=" << r.spread << " probes="
       << r.probes << "\n";
  }
  return os.str();
}

const GammaRow* GammaTable::find(const std::string& pi_id, int n,
                                 const std::string& tau_id) const {
  for (const auto& r : rows)
    if (r.pi_id == pi_id && r.n == n && r.tau_id == tau_id) return &r;
  return nullptr;
}

}  // namespace soconv
