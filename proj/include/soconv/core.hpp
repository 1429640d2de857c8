#pragma once

// Scalar layer: prime-field arithmetic, complex values with a uniform
// tolerance policy, deterministic RNG helpers and compensated summation.

#include <complex>
#include <cstdint>
#include <vector>

#include "soconv/errors.hpp"

namespace soconv {

using CScalar = std::complex<double>;

struct Tolerance {
  double eq_abs = 1e-8;     // absolute equality threshold
  double gamma_rel = 1e-6;  // relative spread allowed across gamma probes
  double eig_gap = 1e-6;    // eigenvalue separation (relative to spectral scale)
};

// F_q for an odd prime q. Values live in [0, q); arithmetic is exact.
class Fq {
 public:
  explicit Fq(int q);

  int q() const { return q_; }
  int reduce(long long x) const {
    long long r = x % q_;
    return static_cast<int>(r < 0 ? r + q_ : r);
  }
  int add(int a, int b) const { return (a + b) % q_; }
  int sub(int a, int b) const { return (a - b + q_) % q_; }
  int mul(int a, int b) const { return (a * b) % q_; }
  int neg(int a) const { return (q_ - a) % q_; }
  int inv(int a) const {
    if (a % q_ == 0) throw DomainError("Fq::inv of zero");
    return inv_[a % q_];
  }
  // The field constants used throughout: 1/2, 1/4, -2, -1/2.
  int half() const { return inv_[2]; }
  int quarter() const { return mul(inv_[2], inv_[2]); }
  int minus_two() const { return neg(2 % q_); }
  int of(long long x) const { return reduce(x); }
  // A fixed generator of the multiplicative group.
  int generator() const { return gen_; }

  static bool is_odd_prime(int q);

 private:
  int q_;
  int gen_;
  std::vector<int> inv_;
};

// The fixed additive character psi(x) = exp(2 pi i x / q).
class PsiAdditive {
 public:
  explicit PsiAdditive(int q);
  CScalar operator()(int x) const { return table_[((x % q_) + q_) % q_]; }
  int q() const { return q_; }

 private:
  int q_;
  std::vector<CScalar> table_;
};

// Kahan-compensated accumulator; sums are always taken in canonical order.
class KahanSum {
 public:
  void add(CScalar x) {
    CScalar y = x - c_;
    CScalar t = s_ + y;
    c_ = (t - s_) - y;
    s_ = t;
  }
  CScalar value() const { return s_; }

 private:
  CScalar s_{0.0, 0.0};
  CScalar c_{0.0, 0.0};
};

// Deterministic 64-bit RNG (splitmix64). The standard distributions are
// implementation-defined, so uniforms are produced by hand.
class Rng {
 public:
  explicit Rng(uint64_t seed) : state_(seed) {}
  uint64_t next() {
    uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }
  // Uniform in [0, 1).
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
  // Uniform in [-1, 1].
  double symmetric() { return 2.0 * uniform() - 1.0; }
  uint64_t below(uint64_t n) { return next() % n; }

 private:
  uint64_t state_;
};

uint64_t fnv1a(const void* data, size_t len, uint64_t seed = 0xcbf29ce484222325ull);

inline bool approx_eq(CScalar a, CScalar b, double tol) { return std::abs(a - b) < tol; }

}  // namespace soconv
