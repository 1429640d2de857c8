#pragma once

// Small dense matrices over F_q. Everything in this project is at most
// 7 x 7 (SO_7 elements handled virtually), so entries live in a fixed
// inline array. Equality is entrywise and the canonical ordering is
// lexicographic on the row-major digit string, which is plain memcmp here.

#include <array>
#include <cstring>
#include <string>
#include <vector>

#include "soconv/core.hpp"
#include "soconv/errors.hpp"

namespace soconv {

constexpr int kMaxDim = 7;

struct Mat {
  uint8_t n = 0;
  std::array<uint8_t, kMaxDim * kMaxDim> a{};  // row-major, unused tail zero

  int at(int i, int j) const { return a[i * n + j]; }
  void set(int i, int j, int v) { a[i * n + j] = static_cast<uint8_t>(v); }

  bool operator==(const Mat& o) const {
    return n == o.n && std::memcmp(a.data(), o.a.data(), size_t(n) * n) == 0;
  }
  bool operator<(const Mat& o) const {
    return std::memcmp(a.data(), o.a.data(), size_t(n) * n) < 0;
  }
  std::string str() const;
};

Mat mat_identity(int n);
Mat mat_zero(int n);
// Antidiagonal form J_n (ones on the antidiagonal).
Mat mat_form_j(int n);
Mat mat_mul(const Mat& x, const Mat& y, const Fq& f);
Mat mat_transpose(const Mat& x);
int mat_det(const Mat& x, const Fq& f);
// Inverse by Gauss-Jordan; DomainError when singular.
Mat mat_inverse(const Mat& x, const Fq& f);
bool mat_is_invertible(const Mat& x, const Fq& f);
// a* = J_n (t a)^{-1} J_n.
Mat mat_star(const Mat& x, const Fq& f);
// t g J g == J and det g == 1.
bool preserves_form(const Mat& g, const Mat& j, const Fq& f);
bool is_upper_unitriangular(const Mat& g);
bool is_diagonal(const Mat& g);

// Block-diagonal assembly diag(blocks...).
Mat mat_diag_blocks(const std::vector<Mat>& blocks);
Mat mat_submatrix(const Mat& x, int r0, int c0, int rows, int cols);
void mat_paste(Mat& dst, const Mat& src, int r0, int c0);

uint64_t mat_hash(const Mat& x);

// Base-q packing used by the group cache: the n^2 digit string read as a
// little-endian base-q integer, emitted as `bytes` little-endian bytes.
int packed_width(int n, int q);
void mat_pack(const Mat& x, int q, uint8_t* out, int bytes);
Mat mat_unpack(const uint8_t* in, int bytes, int n, int q);

}  // namespace soconv
