#include "soconv/core.hpp"

#include <cmath>
#include <numbers>

namespace soconv {

bool Fq::is_odd_prime(int q) {
  if (q < 3 || q % 2 == 0) return false;
  for (int d = 3; d * d <= q; d += 2)
    if (q % d == 0) return false;
  return true;
}

Fq::Fq(int q) : q_(q) {
  if (!is_odd_prime(q)) throw DomainError("Fq: modulus must be an odd prime >= 3");
  inv_.assign(q_, 0);
  for (int a = 1; a < q_; ++a) {
    // Fermat: a^(q-2) mod q.
    long long r = 1, b = a, e = q_ - 2;
    while (e) {
      if (e & 1) r = r * b % q_;
      b = b * b % q_;
      e >>= 1;
    }
    inv_[a] = static_cast<int>(r);
  }
  // Smallest generator of F_q^x.
  gen_ = 0;
  for (int g = 2; g < q_; ++g) {
    int x = g, ord = 1;
    while (x != 1) {
      x = x * g % q_;
      ++ord;
    }
    if (ord == q_ - 1) {
      gen_ = g;
      break;
    }
  }
}

PsiAdditive::PsiAdditive(int q) : q_(q) {
  table_.resize(q_);
  for (int x = 0; x < q_; ++x) {
    double t = 2.0 * std::numbers::pi * x / q_;
    table_[x] = CScalar(std::cos(t), std::sin(t));
  }
}

uint64_t fnv1a(const void* data, size_t len, uint64_t seed) {
  const auto* p = static_cast<const unsigned char*>(data);
  uint64_t h = seed;
  for (size_t i = 0; i < len; ++i) {
    h ^= p[i];
    h *= 0x100000001b3ull;
  }
  return h;
}

}  // namespace soconv
