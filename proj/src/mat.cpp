#include "soconv/mat.hpp"

#include <cmath>
#include <vector>

namespace soconv {

std::string Mat::str() const {
  std::string s;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      s += std::to_string(at(i, j));
      s += (j + 1 < n) ? ' ' : '\n';
    }
  }
  return s;
}

Mat mat_identity(int n) {
  Mat m;
  m.n = static_cast<uint8_t>(n);
  for (int i = 0; i < n; ++i) m.set(i, i, 1);
  return m;
}

Mat mat_zero(int n) {
  Mat m;
  m.n = static_cast<uint8_t>(n);
  return m;
}

Mat mat_form_j(int n) {
  Mat m = mat_zero(n);
  for (int i = 0; i < n; ++i) m.set(i, n - 1 - i, 1);
  return m;
}

Mat mat_mul(const Mat& x, const Mat& y, const Fq& f) {
  const int n = x.n;
  Mat r = mat_zero(n);
  for (int i = 0; i < n; ++i) {
    for (int k = 0; k < n; ++k) {
      int xv = x.at(i, k);
      if (!xv) continue;
      for (int j = 0; j < n; ++j) {
        int yv = y.at(k, j);
        if (!yv) continue;
        r.a[i * n + j] = static_cast<uint8_t>((r.a[i * n + j] + xv * yv) % f.q());
      }
    }
  }
  return r;
}

Mat mat_transpose(const Mat& x) {
  Mat r = mat_zero(x.n);
  for (int i = 0; i < x.n; ++i)
    for (int j = 0; j < x.n; ++j) r.set(j, i, x.at(i, j));
  return r;
}

namespace {

// Returns (det, inverse?) via Gauss-Jordan on [x | I].
std::pair<int, Mat> gauss(const Mat& x, const Fq& f, bool want_inverse) {
  const int n = x.n;
  std::vector<int> m(size_t(n) * n), inv(size_t(n) * n, 0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m[i * n + j] = x.at(i, j);
  for (int i = 0; i < n; ++i) inv[i * n + i] = 1;
  int det = 1;
  for (int c = 0; c < n; ++c) {
    int p = -1;
    for (int r = c; r < n; ++r)
      if (m[r * n + c]) { p = r; break; }
    if (p < 0) return {0, Mat{}};
    if (p != c) {
      for (int j = 0; j < n; ++j) {
        std::swap(m[p * n + j], m[c * n + j]);
        std::swap(inv[p * n + j], inv[c * n + j]);
      }
      det = f.neg(det);
    }
    int piv = m[c * n + c];
    det = f.mul(det, piv);
    int pinv = f.inv(piv);
    for (int j = 0; j < n; ++j) {
      m[c * n + j] = f.mul(m[c * n + j], pinv);
      inv[c * n + j] = f.mul(inv[c * n + j], pinv);
    }
    for (int r = 0; r < n; ++r) {
      if (r == c) continue;
      int factor = m[r * n + c];
      if (!factor) continue;
      for (int j = 0; j < n; ++j) {
        m[r * n + j] = f.sub(m[r * n + j], f.mul(factor, m[c * n + j]));
        inv[r * n + j] = f.sub(inv[r * n + j], f.mul(factor, inv[c * n + j]));
      }
    }
  }
  Mat out = mat_zero(n);
  if (want_inverse)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) out.set(i, j, inv[i * n + j]);
  return {det, out};
}

}  // namespace

int mat_det(const Mat& x, const Fq& f) { return gauss(x, f, false).first; }

bool mat_is_invertible(const Mat& x, const Fq& f) { return mat_det(x, f) != 0; }

Mat mat_inverse(const Mat& x, const Fq& f) {
  auto [det, inv] = gauss(x, f, true);
  if (det == 0) throw DomainError("mat_inverse: singular matrix");
  return inv;
}

Mat mat_star(const Mat& x, const Fq& f) {
  Mat j = mat_form_j(x.n);
  Mat ti = mat_inverse(mat_transpose(x), f);
  return mat_mul(mat_mul(j, ti, f), j, f);
}

bool preserves_form(const Mat& g, const Mat& j, const Fq& f) {
  if (mat_det(g, f) != 1) return false;
  Mat t = mat_mul(mat_mul(mat_transpose(g), j, f), g, f);
  return t == j;
}

bool is_upper_unitriangular(const Mat& g) {
  for (int i = 0; i < g.n; ++i) {
    if (g.at(i, i) != 1) return false;
    for (int j = 0; j < i; ++j)
      if (g.at(i, j) != 0) return false;
  }
  return true;
}

bool is_diagonal(const Mat& g) {
  for (int i = 0; i < g.n; ++i)
    for (int j = 0; j < g.n; ++j)
      if (i != j && g.at(i, j) != 0) return false;
  return true;
}

Mat mat_diag_blocks(const std::vector<Mat>& blocks) {
  int n = 0;
  for (const auto& b : blocks) n += b.n;
  if (n > kMaxDim) throw DomainError("mat_diag_blocks: dimension too large");
  Mat r = mat_zero(n);
  int off = 0;
  for (const auto& b : blocks) {
    for (int i = 0; i < b.n; ++i)
      for (int j = 0; j < b.n; ++j) r.set(off + i, off + j, b.at(i, j));
    off += b.n;
  }
  return r;
}

Mat mat_submatrix(const Mat& x, int r0, int c0, int rows, int cols) {
  Mat r;
  r.n = static_cast<uint8_t>(std::max(rows, cols));
  // Store as a rows x cols block in the top-left of a square container.
  r = mat_zero(std::max(rows, cols));
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) r.set(i, j, x.at(r0 + i, c0 + j));
  return r;
}

void mat_paste(Mat& dst, const Mat& src, int r0, int c0) {
  for (int i = 0; i < src.n; ++i)
    for (int j = 0; j < src.n; ++j) dst.set(r0 + i, c0 + j, src.at(i, j));
}

uint64_t mat_hash(const Mat& x) { return fnv1a(x.a.data(), size_t(x.n) * x.n, 0x9e3779b97f4a7c15ull ^ x.n); }

int packed_width(int n, int q) {
  // Smallest B with 256^B >= q^(n^2).
  long double bits = static_cast<long double>(n) * n * std::log2(static_cast<long double>(q));
  return static_cast<int>(bits / 8) + 1;
}

void mat_pack(const Mat& x, int q, uint8_t* out, int bytes) {
  std::memset(out, 0, bytes);
  // Little-endian multiply-accumulate: value = sum digit_k q^k.
  for (int k = x.n * x.n - 1; k >= 0; --k) {
    int carry = x.a[k];
    for (int b = 0; b < bytes; ++b) {
      int v = out[b] * q + carry;
      out[b] = static_cast<uint8_t>(v & 0xff);
      carry = v >> 8;
    }
  }
}

Mat mat_unpack(const uint8_t* in, int bytes, int n, int q) {
  Mat r = mat_zero(n);
  std::vector<int> buf(in, in + bytes);
  for (int k = 0; k < n * n; ++k) {
    // divide buf (base 256, little-endian) by q, remainder = digit
    int rem = 0;
    for (int b = bytes - 1; b >= 0; --b) {
      int cur = rem * 256 + buf[b];
      buf[b] = cur / q;
      rem = cur % q;
    }
    r.a[k] = static_cast<uint8_t>(rem);
  }
  return r;
}

}  // namespace soconv
