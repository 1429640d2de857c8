#include "soconv/linalg.hpp"

#include <algorithm>

namespace soconv {

CVector solve(const CMatrix& a, const CVector& b) {
  if (a.rows() != a.cols() || a.rows() != b.size())
    throw DomainError("solve: dimension mismatch");
  Eigen::ColPivHouseholderQR<CMatrix> qr(a);
  CVector x = qr.solve(b);
  double res = (a * x - b).norm();
  if (!(res < 1e-6 * (1.0 + b.norm())))
    throw NumericsError("solve: residual " + std::to_string(res));
  return x;
}

int rank(const CMatrix& a, const Tolerance& tol) {
  if (a.size() == 0) return 0;
  Eigen::JacobiSVD<CMatrix> svd(a);
  const auto& s = svd.singularValues();
  double cut = tol.eq_abs * std::max(1.0, s.size() ? s(0) : 0.0);
  int r = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i)
    if (s(i) > cut) ++r;
  return r;
}

std::vector<Eigenspace> eigenspaces(const CMatrix& a, const Tolerance& tol) {
  if (a.rows() != a.cols()) throw DomainError("eigenspaces: matrix not square");
  CMatrix h = 0.5 * (a + a.adjoint());
  double skew = (a - h).norm();
  if (!(skew < 1e-6 * std::max(1.0, a.norm())))
    throw NumericsError("eigenspaces: operator is not Hermitian, residual " +
                        std::to_string(skew));
  Eigen::SelfAdjointEigenSolver<CMatrix> es(h);
  if (es.info() != Eigen::Success)
    throw NumericsError("eigenspaces: eigensolver did not converge");
  const auto& vals = es.eigenvalues();
  const CMatrix& vecs = es.eigenvectors();
  double scale = std::max(1.0, std::max(std::abs(vals(0)), std::abs(vals(vals.size() - 1))));
  double gap = tol.eig_gap * scale;

  std::vector<Eigenspace> out;
  Eigen::Index i = 0;
  while (i < vals.size()) {
    Eigen::Index j = i + 1;
    while (j < vals.size() && vals(j) - vals(j - 1) < gap) ++j;
    Eigenspace sp;
    sp.value = vals.segment(i, j - i).mean();
    sp.basis = vecs.middleCols(i, j - i);
    out.push_back(std::move(sp));
    i = j;
  }
  return out;
}

CMatrix orthonormalize(const CMatrix& a, double drop_tol) {
  if (a.cols() == 0) return a;
  Eigen::ColPivHouseholderQR<CMatrix> qr(a);
  int r = 0;
  double d0 = std::abs(qr.matrixR()(0, 0));
  for (Eigen::Index i = 0; i < std::min(a.rows(), a.cols()); ++i)
    if (std::abs(qr.matrixR()(i, i)) > drop_tol * std::max(1.0, d0)) ++r;
  CMatrix q = qr.householderQ() * CMatrix::Identity(a.rows(), r);
  return q;
}

}  // namespace soconv
