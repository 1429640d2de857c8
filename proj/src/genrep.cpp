#include "soconv/genrep.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <fstream>

namespace soconv {

CharacterFn generic_character(const FiniteGroup& g, CharLabel label, const PsiAdditive& psi) {
  const Fq* f = &g.field();
  const PsiAdditive* ps = &psi;
  const int rank = g.rank();
  CharacterFn ch;
  switch (label) {
    case CharLabel::PsiGL:
    case CharLabel::PsiGLInv: {
      if (g.kind() != GroupKind::GL) throw DomainError("generic_character: kind mismatch");
      bool invert = (label == CharLabel::PsiGLInv);
      ch.label = invert ? "psi_gl_inv" : "psi_gl";
      ch.eval = [f, ps, rank, invert](const Mat& u) {
        int arg = 0;
        for (int i = 0; i + 1 < rank; ++i) arg = f->add(arg, u.at(i, i + 1));
        if (invert) arg = f->neg(arg);
        return (*ps)(arg);
      };
      return ch;
    }
    case CharLabel::PsiSO:
    case CharLabel::PsiC: {
      if (g.kind() != GroupKind::SOEven) throw DomainError("generic_character: kind mismatch");
      const int l = rank;
      bool conj_c = (label == CharLabel::PsiC);
      ch.label = conj_c ? "psi_c" : "psi_so";
      ch.eval = [f, ps, l, conj_c](const Mat& u) {
        // psi(sum_{i<=l-2} u_{i,i+1} + 1/4 u_{l-1,l} - 1/2 u_{l-1,l+1});
        // conjugation by c swaps the last two coordinates.
        int arg = 0;
        for (int i = 1; i <= l - 2; ++i) arg = f->add(arg, u.at(i - 1, i));
        int e1 = u.at(l - 2, l - 1), e2 = u.at(l - 2, l);
        if (conj_c) std::swap(e1, e2);
        arg = f->add(arg, f->mul(f->quarter(), e1));
        arg = f->sub(arg, f->mul(f->half(), e2));
        return (*ps)(arg);
      };
      return ch;
    }
  }
  throw DomainError("generic_character: unknown label");
}

GGModule::GGModule(const FiniteGroup& g, CharacterFn chi) : group_(&g), chi_(std::move(chi)) {
  const auto& cd = group_->cosets();
  id_coset_ = cd.coset_of[group_->identity_index()];
}

std::pair<uint32_t, CScalar> GGModule::locate(const Mat& x) const {
  int64_t idx = group_->index_of(x);
  if (idx < 0) throw DomainError("GGModule::locate: element not in group");
  uint32_t cid = group_->cosets().coset_of[static_cast<size_t>(idx)];
  Mat u = group_->unipotent_part(x, cid);
  return {cid, chi_(u)};
}

std::vector<ActionEntry> GGModule::action_table(const Mat& g0) const {
  const auto& cd = group_->cosets();
  std::vector<ActionEntry> out(cd.reps.size());
  for (size_t x = 0; x < cd.reps.size(); ++x) {
    Mat prod = group_->mul(group_->at(cd.reps[x]), g0);
    auto [cid, phase] = locate(prod);
    out[x] = {cid, phase};
  }
  return out;
}

CVector GGModule::act(const Mat& g0, const CVector& v) const {
  auto tab = action_table(g0);
  CVector out = CVector::Zero(v.size());
  // rho(g0) delta_x = phase * delta_{dst}; vector components follow along.
  for (size_t x = 0; x < tab.size(); ++x) out(tab[x].dst) += tab[x].phase * v(x);
  return out;
}

CMatrix GGModule::act_cols(const Mat& g0, const CMatrix& q) const {
  auto tab = action_table(g0);
  CMatrix out = CMatrix::Zero(q.rows(), q.cols());
  for (Eigen::Index x = 0; x < q.rows(); ++x)
    out.row(tab[static_cast<size_t>(x)].dst) += tab[static_cast<size_t>(x)].phase * q.row(x);
  return out;
}

CScalar GGModule::eval(const CVector& v, const Mat& x) const {
  auto [cid, phase] = locate(x);
  return phase * v(cid);
}

CVector GGModule::whittaker_project(const CVector& v) const {
  const auto& u = group_->subgroups().upper;
  CVector acc = CVector::Zero(v.size());
  for (const auto& uu : u) acc += std::conj(chi_(uu)) * act(uu, v);
  return acc / static_cast<double>(u.size());
}

CMatrix GGModule::whittaker_project_cols(const CMatrix& q) const {
  const auto& u = group_->subgroups().upper;
  CMatrix acc = CMatrix::Zero(q.rows(), q.cols());
  for (const auto& uu : u) acc += std::conj(chi_(uu)) * act_cols(uu, q);
  return acc / static_cast<double>(u.size());
}

CMatrix GGModule::commutant_operator(uint64_t seed, int round) const {
  const auto& cls = group_->classes();
  const auto& cd = group_->cosets();
  const size_t n = cd.reps.size();
  Rng rng(fnv1a("commutant", 9, seed) ^ (0x9e3779b97f4a7c15ull * (round + 1)) ^
          group_->fingerprint());
  std::vector<double> coeff(cls.reps.size(), 0.0);
  for (size_t c = 0; c < cls.reps.size(); ++c) {
    size_t ci = cls.inverse_of[c];
    if (c <= ci) {
      double u = rng.symmetric();
      coeff[c] = u;
      coeff[ci] = u;
    }
  }
  // Per-element location table: h -> (coset, phase) for the destination side.
  const size_t order = group_->order();
  std::vector<uint32_t> dst(order);
  std::vector<CScalar> phase(order);
  for (size_t h = 0; h < order; ++h) {
    uint32_t cid = cd.coset_of[h];
    dst[h] = cid;
    phase[h] = chi_(group_->unipotent_part(group_->at(h), cid));
  }
  CMatrix a = CMatrix::Zero(n, n);
  for (size_t x = 0; x < n; ++x) {
    Mat xi = group_->inv(group_->at(cd.reps[x]));
    for (size_t h = 0; h < order; ++h) {
      int64_t gidx = group_->index_of(group_->mul(xi, group_->at(h)));
      double c = coeff[cls.class_of[static_cast<size_t>(gidx)]];
      if (c != 0.0) a(dst[h], x) += c * phase[h];
    }
  }
  // Class sums are exactly self-adjoint; symmetrize away roundoff.
  a = 0.5 * (a + a.adjoint()).eval();
  return a;
}

const std::vector<Mat>& GGModule::center() const {
  if (center_.empty()) {
    for (const auto& t : group_->subgroups().torus) {
      bool central = true;
      for (const auto& g : group_->generators())
        if (!(group_->mul(t, g) == group_->mul(g, t))) {
          central = false;
          break;
        }
      if (central) center_.push_back(t);
    }
  }
  return center_;
}

CScalar GenericRep::character(const Mat& g) const {
  CMatrix moved = module->act_cols(g, basis);
  return (basis.adjoint() * moved).trace();
}

CScalar GenericRep::central_character(const Mat& z) const {
  for (const auto& g : module->group().generators())
    if (!(module->group().mul(z, g) == module->group().mul(g, z)))
      throw DomainError("central_character: element is not central");
  return module->eval(bessel, z);
}

std::string GenericRep::fingerprint() const {
  std::string s;
  char buf[64];
  for (Eigen::Index i = 0; i < bessel.size(); ++i) {
    double re = bessel(i).real(), im = bessel(i).imag();
    auto snap = [](double v) {
      double r = std::round(v * 1e6) / 1e6;
      return r == 0.0 ? 0.0 : r;  // normalize -0
    };
    std::snprintf(buf, sizeof buf, "%.6f,%.6f;", snap(re), snap(im));
    s += buf;
  }
  return s;
}

namespace {

// Rank and dominant direction of the Whittaker projection restricted to a piece.
struct WhittakerData {
  int rank;
  CVector dominant;
};

WhittakerData whittaker_data(const GGModule& mod, const CMatrix& q, const Tolerance& tol) {
  CMatrix p = mod.whittaker_project_cols(q);
  Eigen::JacobiSVD<CMatrix> svd(p, Eigen::ComputeThinU);
  const auto& s = svd.singularValues();
  double cut = std::max(1e-10, 1e-6 * (s.size() ? s(0) : 0.0));
  int r = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i)
    if (s(i) > cut) ++r;
  WhittakerData wd;
  wd.rank = r;
  if (r >= 1) wd.dominant = svd.matrixU().col(0);
  (void)tol;
  return wd;
}

std::vector<int> root_coefficients(const RootDatum& rd, const Root& r) {
  // Solve r = sum c_k alpha_k over the simple roots (small well-conditioned
  // integer system; doubles with rounding are exact here).
  const int l = rd.l;
  Eigen::MatrixXd a(l, l);
  Eigen::VectorXd b(l);
  for (int i = 0; i < l; ++i) {
    for (int k = 0; k < l; ++k) a(i, k) = rd.simple[k].c[i];
    b(i) = r.c[i];
  }
  Eigen::VectorXd x = a.fullPivLu().solve(b);
  std::vector<int> c(l);
  for (int k = 0; k < l; ++k) c[k] = static_cast<int>(std::llround(x(k)));
  return c;
}

std::vector<Mat> closure_in_upper(const FiniteGroup& g, std::vector<Mat> gens) {
  std::vector<Mat> elems{mat_identity(g.dim())};
  std::vector<Mat> frontier = elems;
  auto known = [&](const Mat& m) {
    return std::find(elems.begin(), elems.end(), m) != elems.end();
  };
  while (!frontier.empty()) {
    std::vector<Mat> next;
    for (const auto& e : frontier)
      for (const auto& x : gens) {
        Mat p = g.mul(e, x);
        if (!known(p)) {
          elems.push_back(p);
          next.push_back(p);
        }
      }
    frontier = std::move(next);
  }
  std::sort(elems.begin(), elems.end());
  return elems;
}

}  // namespace

std::vector<std::vector<Mat>> maximal_parabolic_radicals(const FiniteGroup& g) {
  std::vector<std::vector<Mat>> out;
  const Fq& f = g.field();
  if (g.kind() == GroupKind::GL) {
    const int n = g.rank();
    for (int k = 1; k < n; ++k) {
      std::vector<Mat> rad;
      for (const auto& u : g.subgroups().upper) {
        bool ok = true;
        for (int i = 0; i < n && ok; ++i)
          for (int j = 0; j < n && ok; ++j) {
            bool same_block = (i < k) == (j < k);
            if (same_block && i != j && u.at(i, j) != 0) ok = false;
          }
        if (ok) rad.push_back(u);
      }
      out.push_back(std::move(rad));
    }
    return out;
  }
  if (g.kind() != GroupKind::SOEven)
    throw DomainError("maximal_parabolic_radicals: unsupported kind");
  const int l = g.rank();
  RootDatum rd(l);
  for (int k = 0; k < l; ++k) {
    std::vector<Mat> gens;
    for (const auto& beta : rd.positive) {
      if (root_coefficients(rd, beta)[k] == 0) continue;
      for (int x = 1; x < f.q(); ++x) gens.push_back(root_subgroup_elem(l, f, beta, x));
    }
    out.push_back(closure_in_upper(g, std::move(gens)));
  }
  return out;
}

std::vector<GenericRep> gelfand_graev_decompose(const GGModule& mod,
                                                const DecomposeOptions& opts) {
  const size_t dim = mod.dim();
  const Tolerance& tol = opts.tol;

  struct Pending {
    CMatrix q;
    int tries;
  };
  std::deque<Pending> queue;
  std::vector<CMatrix> finished;

  int round = 0;
  {
    CMatrix a = mod.commutant_operator(opts.seed, round++);
    for (auto& sp : eigenspaces(a, tol)) queue.push_back({std::move(sp.basis), 0});
  }
  while (!queue.empty()) {
    Pending cur = std::move(queue.front());
    queue.pop_front();
    auto wd = whittaker_data(mod, cur.q, tol);
    if (wd.rank == 0)
      throw NotGenericError("decompose: subspace without Whittaker vectors");
    if (wd.rank == 1) {
      finished.push_back(std::move(cur.q));
      continue;
    }
    if (cur.tries >= opts.max_rounds)
      throw DegenerateSplitError("decompose: could not separate a cluster after " +
                                 std::to_string(cur.tries) + " retries");
    CMatrix a = mod.commutant_operator(opts.seed, round++);
    CMatrix b = cur.q.adjoint() * a * cur.q;
    auto subs = eigenspaces(b, tol);
    if (subs.size() <= 1) {
      queue.push_back({std::move(cur.q), cur.tries + 1});
      continue;
    }
    for (auto& sp : subs) queue.push_back({(cur.q * sp.basis).eval(), cur.tries + 1});
  }

  // Completeness and invariance certificates.
  size_t total = 0;
  for (const auto& q : finished) total += static_cast<size_t>(q.cols());
  if (total != dim)
    throw ConsistencyError("decompose: piece dimensions do not sum to the module dimension");

  std::vector<GenericRep> reps;
  for (auto& q : finished) {
    for (const auto& gen : mod.group().generators()) {
      CMatrix moved = mod.act_cols(gen, q);
      double resid = (moved - q * (q.adjoint() * moved)).norm();
      if (!(resid < 1e-7 * std::sqrt(static_cast<double>(q.size()))))
        throw ConsistencyError("decompose: subspace is not action-invariant, residual " +
                               std::to_string(resid));
    }
    GenericRep r;
    r.module = &mod;
    r.d = static_cast<int>(q.cols());
    auto wd = whittaker_data(mod, q, tol);
    CVector v0 = wd.dominant;
    CScalar at_e = v0(mod.identity_coset());
    if (std::abs(at_e) < 1e-10)
      throw NotGenericError("decompose: Bessel vector vanishes at the identity");
    r.bessel = v0 / at_e;
    r.basis = std::move(q);
    reps.push_back(std::move(r));
  }

  std::sort(reps.begin(), reps.end(), [](const GenericRep& a, const GenericRep& b) {
    if (a.d != b.d) return a.d < b.d;
    return a.fingerprint() < b.fingerprint();
  });
  for (size_t i = 0; i < reps.size(); ++i) {
    reps[i].id = kind_name(mod.group().kind()) + std::to_string(mod.group().rank()) + "q" +
                 std::to_string(mod.group().field().q()) + "#" + std::to_string(i);
  }

  if (opts.classify_cuspidal) {
    auto radicals = maximal_parabolic_radicals(mod.group());
    for (auto& r : reps) {
      r.cuspidal = true;
      for (const auto& rad : radicals) {
        CMatrix avg = CMatrix::Zero(dim, r.basis.cols());
        for (const auto& n : rad) avg += mod.act_cols(n, r.basis);
        avg /= static_cast<double>(rad.size());
        if (avg.norm() > 1e-7 * std::sqrt(static_cast<double>(avg.size()))) {
          r.cuspidal = false;
          break;
        }
      }
    }
  }

  if (opts.pair_conjugates && mod.group().kind() == GroupKind::SOEven) {
    for (size_t i = 0; i < reps.size(); ++i) {
      CVector w0 = conjugate_bessel(mod, reps[i]);
      int p = find_partner(reps, w0, tol.eq_abs * 10);
      if (p < 0)
        throw ConsistencyError("decompose: no conjugate partner for " + reps[i].id);
      reps[i].conjugate_partner = p;
    }
    for (size_t i = 0; i < reps.size(); ++i) {
      int p = reps[i].conjugate_partner;
      if (reps[static_cast<size_t>(p)].conjugate_partner != static_cast<int>(i))
        throw ConsistencyError("decompose: conjugation pairing is not an involution");
    }
  }
  return reps;
}

CVector conjugate_bessel(const GGModule& mod, const GenericRep& rep) {
  const FiniteGroup& g = mod.group();
  if (g.kind() != GroupKind::SOEven)
    throw DomainError("conjugate_bessel: SO_even modules only");
  const Fq& f = g.field();
  const int l = g.rank();
  Mat c = elem_outer_c(l);
  Mat tt = elem_t_tilde(l, f);
  Mat pre = mat_mul(c, mat_inverse(tt, f), f);
  Mat post = mat_mul(tt, c, f);
  const auto& cd = g.cosets();
  CVector w0(cd.reps.size());
  for (size_t x = 0; x < cd.reps.size(); ++x) {
    Mat arg = g.mul(g.mul(pre, g.at(cd.reps[x])), post);
    w0(x) = rep.bessel_at(arg);
  }
  return w0;
}

int find_partner(const std::vector<GenericRep>& reps, const CVector& w0, double tol) {
  int found = -1;
  for (size_t i = 0; i < reps.size(); ++i) {
    if ((reps[i].bessel - w0).lpNorm<Eigen::Infinity>() < tol) {
      if (found >= 0) return -2;  // ambiguous
      found = static_cast<int>(i);
    }
  }
  return found;
}

void export_bessel_csv(const GenericRep& rep, const std::string& path) {
  const FiniteGroup& g = rep.module->group();
  std::ofstream out(path, std::ios::trunc);
  out << "element-index,bruhat-w,re,im\n";
  for (size_t i = 0; i < g.order(); ++i) {
    auto br = bruhat_decompose(g, g.at(i));
    CScalar v = rep.bessel_at(g.at(i));
    out << i << "," << weyl_str(br.w) << "," << v.real() << "," << v.imag() << "\n";
  }
}

}  // namespace soconv
