#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "soconv/core.hpp"
#include "soconv/linalg.hpp"
#include "soconv/mat.hpp"

using namespace soconv;

TEST_CASE("field arithmetic") {
  Fq f3(3);
  CHECK(f3.inv(2) == 2);  // 2*2 = 4 = 1 mod 3
  Fq f5(5);
  CHECK(f5.half() == 3);  // 2*3 = 6 = 1 mod 5
  Fq f7(7);
  CHECK(f7.minus_two() == 5);
  CHECK_THROWS_AS(f3.inv(0), DomainError);
  CHECK_THROWS_AS(Fq(2), DomainError);
  CHECK_THROWS_AS(Fq(9), DomainError);

  // Field axioms, exhaustive for q in {3,5,7}.
  for (int q : {3, 5, 7}) {
    Fq f(q);
    for (int a = 0; a < q; ++a)
      for (int b = 0; b < q; ++b) {
        CHECK(f.add(a, b) == (a + b) % q);
        CHECK(f.mul(a, b) == (a * b) % q);
        CHECK(f.add(a, f.neg(a)) == 0);
        for (int c = 0; c < q; ++c)
          CHECK(f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c)));
        if (b != 0) CHECK(f.mul(b, f.inv(b)) == 1);
      }
    CHECK(f.mul(f.generator(), 1) == f.generator());
  }
}

TEST_CASE("additive character") {
  for (int q : {3, 5, 7}) {
    PsiAdditive psi(q);
    CHECK(std::abs(psi(0) - CScalar(1, 0)) < 1e-14);
    for (int x = 0; x < q; ++x) {
      CHECK(std::abs(std::abs(psi(x)) - 1.0) < 1e-14);
      for (int y = 0; y < q; ++y)
        CHECK(std::abs(psi(x) * psi(y) - psi((x + y) % q)) < 1e-12);
    }
  }
  PsiAdditive psi3(3);
  CHECK(std::abs(psi3(1) - std::polar(1.0, 2 * 3.14159265358979323846 / 3)) < 1e-9);
  CHECK(std::abs(psi3(1) * psi3(2) - CScalar(1, 0)) < 1e-12);
}

TEST_CASE("linear algebra facade") {
  CMatrix id = CMatrix::Identity(2, 2);
  CHECK(rank(id) == 2);

  CMatrix d = CMatrix::Zero(3, 3);
  d(0, 0) = 1;
  d(1, 1) = 1;
  d(2, 2) = 2;
  auto spaces = eigenspaces(d);
  REQUIRE(spaces.size() == 2);
  CHECK(spaces[0].basis.cols() + spaces[1].basis.cols() == 3);
  bool dims_ok = (spaces[0].basis.cols() == 2 && spaces[1].basis.cols() == 1) ||
                 (spaces[0].basis.cols() == 1 && spaces[1].basis.cols() == 2);
  CHECK(dims_ok);

  // Reconstruction oracle on a random 64x64 Hermitian matrix.
  Rng rng(42);
  CMatrix a(64, 64);
  for (int i = 0; i < 64; ++i)
    for (int j = 0; j < 64; ++j) a(i, j) = CScalar(rng.symmetric(), rng.symmetric());
  a = 0.5 * (a + a.adjoint()).eval();
  auto sp = eigenspaces(a);
  CMatrix recon = CMatrix::Zero(64, 64);
  for (const auto& s : sp) recon += s.value * (s.basis * s.basis.adjoint());
  CHECK((a - recon).norm() / a.norm() < 1e-9);

  CVector b = CVector::Random(5);
  CMatrix m = CMatrix::Random(5, 5) + 5.0 * CMatrix::Identity(5, 5);
  CVector x = solve(m, b);
  CHECK((m * x - b).norm() < 1e-9);
}

TEST_CASE("matrices over F_q") {
  Fq f(5);
  Mat i3 = mat_identity(3);
  Mat j3 = mat_form_j(3);
  CHECK(mat_mul(j3, j3, f) == i3);
  CHECK(mat_det(j3, f) == f.neg(1));  // antidiagonal 3x3 has det -1
  Mat a = mat_zero(3);
  a.set(0, 0, 2);
  a.set(0, 2, 1);
  a.set(1, 1, 3);
  a.set(2, 2, 4);
  Mat ai = mat_inverse(a, f);
  CHECK(mat_mul(a, ai, f) == i3);
  CHECK(mat_star(mat_star(a, f), f) == a);

  // pack/unpack round trip
  int w = packed_width(3, 5);
  std::vector<uint8_t> buf(w);
  mat_pack(a, 5, buf.data(), w);
  CHECK(mat_unpack(buf.data(), w, 3, 5) == a);

  Mat sing = mat_zero(2);
  sing.set(0, 0, 1);
  CHECK_THROWS_AS(mat_inverse(sing, f), DomainError);
}
