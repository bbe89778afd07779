#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <vector>

#include "weylcarve/exactnum.hpp"

using namespace weylcarve;
using namespace weylcarve::exactnum;

namespace {

// Independent oracle: classify the ring O/pO by brute force, where O is the
// maximal order of Q(sqrt(-d)). Field -> inert, nonzero nilpotent ->
// ramified, other zero divisors -> split. Elements are a + b*w with
// w = sqrt(-d), or w = (1+sqrt(-d))/2 when d = 3 mod 4 (then w^2 = w - (1+d)/4).
Splitting splitting_oracle(long d, long p) {
  bool half = (d % 4 == 3);
  long w2_const = half ? -((1 + d) / 4) : -d;  // w^2 = w2_const + (half ? w : 0)
  auto mul = [&](long a, long b, long a2, long b2) {
    long c0 = (a * a2 + w2_const * (b * b2)) % p;
    long c1 = (a * b2 + b * a2 + (half ? b * b2 : 0)) % p;
    return std::pair<long, long>{(c0 + p * p) % p, (c1 + p * p) % p};
  };
  bool nilpotent = false, zerodiv = false;
  for (long a = 0; a < p; ++a)
    for (long b = 0; b < p; ++b) {
      if (a == 0 && b == 0) continue;
      auto sq = mul(a, b, a, b);
      if (sq.first == 0 && sq.second == 0) nilpotent = true;
      // norm of a + b*w mod p vanishes iff a + b*w is a zero divisor
      long n = half ? (a * a + a * b + b * b * ((1 + d) / 4)) % p : (a * a + d * b * b) % p;
      if (n % p == 0) zerodiv = true;
    }
  if (nilpotent) return Splitting::Ramified;
  return zerodiv ? Splitting::Split : Splitting::Inert;
}

// Independent oracle: |resultant| via the Sylvester matrix, rational Gauss.
Rat sylvester_resultant(const IntPoly& f, const IntPoly& g) {
  int m = f.degree(), n = g.degree();
  REQUIRE(m >= 0);
  REQUIRE(n >= 0);
  int size = m + n;
  if (size == 0) return Rat(1);
  std::vector<std::vector<Rat>> a(size, std::vector<Rat>(size, Rat(0)));
  for (int r = 0; r < n; ++r)
    for (int i = 0; i <= m; ++i) a[r][r + m - i] = Rat(f.coeff(i));
  for (int r = 0; r < m; ++r)
    for (int i = 0; i <= n; ++i) a[n + r][r + n - i] = Rat(g.coeff(i));
  Rat det(1);
  for (int col = 0; col < size; ++col) {
    int piv = -1;
    for (int r = col; r < size; ++r)
      if (a[r][col] != 0) {
        piv = r;
        break;
      }
    if (piv < 0) return Rat(0);
    if (piv != col) {
      std::swap(a[piv], a[col]);
      det = -det;
    }
    det *= a[col][col];
    for (int r = col + 1; r < size; ++r) {
      if (a[r][col] == 0) continue;
      Rat fct = a[r][col] / a[col][col];
      for (int c = col; c < size; ++c) a[r][c] -= fct * a[col][c];
    }
  }
  return det < 0 ? Rat(-det) : det;
}

Int content_gcd(const IntPoly& p) {
  Int g(0);
  for (const auto& c : p.coeffs()) g = gcd(g, c);
  return g;
}

}  // namespace

TEST_CASE("rational p-adic valuation") {
  CHECK(padic_val(make_rat(50, 3), 5) == Valuation{2});
  CHECK(padic_val(make_rat(50, 3), 3) == Valuation{-1});
  CHECK(padic_val(make_rat(-8, 9), 2) == Valuation{3});
  CHECK(padic_val(Rat(0), 7) == std::nullopt);
  CHECK(padic_val(Rat(1), 7) == Valuation{0});
  CHECK_THROWS_AS(padic_val(Rat(1), 4), Error);

  // additivity on a deterministic sample
  std::vector<Rat> sample = {make_rat(50, 3), make_rat(-7, 25), make_rat(9, 8), Rat(5), Rat(1)};
  for (const auto& r : sample)
    for (const auto& s : sample)
      for (long p : {2, 3, 5}) {
        auto lhs = padic_val(r * s, p);
        auto sum = Valuation{*padic_val(r, p) + *padic_val(s, p)};
        CHECK(lhs == sum);
      }
}

TEST_CASE("valuation lattice helpers") {
  CHECK(vmin(Valuation{2}, Valuation{-1}) == Valuation{-1});
  CHECK(vmin(std::nullopt, Valuation{3}) == Valuation{3});
  CHECK(vmin(std::nullopt, std::nullopt) == std::nullopt);
  CHECK(val_nonneg(std::nullopt));
  CHECK(val_nonneg(Valuation{0}));
  CHECK_FALSE(val_nonneg(Valuation{-1}));
}

TEST_CASE("splitting types: pinned values") {
  CHECK(splitting_type(1, 5) == Splitting::Split);
  CHECK(splitting_type(1, 7) == Splitting::Inert);
  CHECK(splitting_type(1, 2) == Splitting::Ramified);
  CHECK(splitting_type(3, 3) == Splitting::Ramified);
  CHECK(splitting_type(3, 7) == Splitting::Split);
  CHECK(splitting_type(3, 5) == Splitting::Inert);
  CHECK(splitting_type(7, 2) == Splitting::Split);
  CHECK(splitting_type(3, 2) == Splitting::Inert);
  CHECK_THROWS_AS(splitting_type(4, 5), Error);
  CHECK_THROWS_AS(splitting_type(12, 5), Error);
}

TEST_CASE("splitting types agree with the residue-ring oracle") {
  std::vector<long> primes;
  for (long p = 2; p < 100; ++p) {
    bool comp = false;
    for (long q = 2; q * q <= p; ++q)
      if (p % q == 0) comp = true;
    if (!comp) primes.push_back(p);
  }
  for (long d : {1L, 2L, 3L, 5L, 7L, 11L, 15L, 19L})
    for (long p : primes) CHECK(splitting_type(d, p) == splitting_oracle(d, p));
}

TEST_CASE("quadratic element arithmetic") {
  QuadElem i(Rat(0), Rat(1), 1);
  CHECK((i * i) == QuadElem(Rat(-1)));
  CHECK((i * i).disc() == 0);  // rational results drop to disc 0

  QuadElem z(make_rat(1, 2), make_rat(-3, 4), 7);
  CHECK(z.norm() == z.x() * z.x() + Rat(7) * z.y() * z.y());
  CHECK((z * z.conj()) == QuadElem(z.norm()));
  CHECK(z.trace() == Rat(1));

  QuadElem w(Rat(2), Rat(5), 7);
  CHECK((z + w) - w == z);
  CHECK((z * w) / w == z);
  CHECK((z + w).conj() == z.conj() + w.conj());
  CHECK((z * w).conj() == z.conj() * w.conj());

  // mixing distinct fields is rejected
  QuadElem u(Rat(1), Rat(1), 2);
  CHECK_THROWS_AS((void)(z + u), Error);
  CHECK_THROWS_AS((void)(z * u), Error);
  // rationals embed into every field
  CHECK((QuadElem(Rat(3)) * z) == QuadElem(Rat(3) * z.x(), Rat(3) * z.y(), 7));

  CHECK_THROWS_AS(QuadElem(Rat(1), Rat(1), 4), Error);
  CHECK_THROWS_AS(QuadElem(Rat(1), Rat(1), -3), Error);

  CHECK(z.to_string() == "1/2 - 3/4*sqrt(-7)");
  CHECK(first_embedding(z) == z);
  CHECK(second_embedding(z) == z.conj());
}

TEST_CASE("integer ring membership") {
  CHECK(in_integer_ring(QuadElem(Rat(3), Rat(-2), 1), 1));
  CHECK_FALSE(in_integer_ring(QuadElem(make_rat(1, 2), make_rat(1, 2), 1), 1));
  // d = 3 mod 4: half-coordinates with equal parity are integral
  CHECK(in_integer_ring(QuadElem(make_rat(1, 2), make_rat(1, 2), 3), 3));
  CHECK(in_integer_ring(QuadElem(make_rat(1, 2), make_rat(-3, 2), 3), 3));
  CHECK_FALSE(in_integer_ring(QuadElem(make_rat(1, 2), Rat(1), 3), 3));
  CHECK(in_integer_ring(QuadElem(Rat(2)), 3));
  CHECK_FALSE(in_integer_ring(QuadElem(make_rat(1, 2)), 1));
  // the half-generator is a root of X^2 - X + (1+d)/4
  QuadElem omega(make_rat(1, 2), make_rat(1, 2), 3);
  CHECK(omega * omega - omega + QuadElem(Rat(1)) == QuadElem());
}

TEST_CASE("p-integrality of quadratic elements") {
  CHECK(is_p_integral(QuadElem(make_rat(1, 3), make_rat(2, 3), 1), 5));
  CHECK_FALSE(is_p_integral(QuadElem(make_rat(1, 3), make_rat(2, 3), 1), 3));
  CHECK_FALSE(is_p_integral(QuadElem(make_rat(1, 5)), 5));
  CHECK(is_p_integral(QuadElem(Rat(7), Rat(1), 1), 5));
  CHECK_THROWS_AS(is_p_integral(QuadElem(Rat(7), Rat(1), 1), 2), Error);  // 2 ramifies for d=1
  try {
    is_p_integral(QuadElem(Rat(7), Rat(1), 1), 2);
  } catch (const Error& e) {
    CHECK(e.code() == errc::ramified_prime);
  }
  CHECK(quad_val(QuadElem(make_rat(1, 5), Rat(25), 1), 5) == Valuation{-1});
  CHECK(quad_val(QuadElem(), 5) == std::nullopt);
}

TEST_CASE("integer polynomial basics") {
  IntPoly p({Int(1), Int(0), Int(1)});  // X^2 + 1
  CHECK(p.degree() == 2);
  CHECK(p.to_string() == "X^2 + 1");
  CHECK(p.eval(Rat(2)) == Rat(5));
  QuadElem i(Rat(0), Rat(1), 1);
  CHECK(p.eval(i) == QuadElem());

  IntPoly zero;
  CHECK(zero.is_zero());
  CHECK(zero.degree() == -1);
  CHECK((p - p).is_zero());
  CHECK((p * zero).is_zero());

  IntPoly q({Int(-2), Int(1)});  // X - 2
  CHECK((p * q).to_string() == "X^3 - 2*X^2 + X - 2");
  CHECK(IntPoly({Int(0), Int(0)}).is_zero());  // trailing zeros normalize away
}

TEST_CASE("polynomial bezout certificates: pinned values") {
  IntPoly X1m({Int(-1), Int(1)}), X1p({Int(1), Int(1)});
  auto b = poly_bezout(X1m, X1p);
  CHECK(b.c == 2);
  CHECK(b.u == IntPoly::constant(-1));
  CHECK(b.v == IntPoly::constant(1));

  IntPoly f({Int(1), Int(0), Int(1)});  // X^2 + 1
  IntPoly g({Int(-2), Int(1)});         // X - 2
  auto b2 = poly_bezout(f, g);
  CHECK(b2.c == 5);
  CHECK(Rat(b2.c) == sylvester_resultant(f, g));

  auto b3 = poly_bezout(IntPoly::constant(1), f);
  CHECK(b3.c == 1);
  CHECK(b3.u == IntPoly::constant(1));
  CHECK(b3.v.is_zero());

  auto b4 = poly_bezout(IntPoly::constant(2), IntPoly::constant(3));
  CHECK(b4.c == 1);

  CHECK_THROWS_AS(poly_bezout(IntPoly(), f), Error);
  IntPoly sq({Int(-1), Int(0), Int(1)});  // X^2 - 1 shares X - 1 with (X-1)
  try {
    poly_bezout(sq, X1m);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == errc::not_coprime);
  }
}

TEST_CASE("polynomial bezout certificates: properties") {
  // identity, degree bounds, and scale minimality witness on a sample
  std::vector<std::pair<IntPoly, IntPoly>> samples = {
      {IntPoly({Int(1), Int(0), Int(1)}), IntPoly({Int(-2), Int(1)})},
      {IntPoly({Int(3), Int(1), Int(2)}), IntPoly({Int(1), Int(4), Int(1)})},
      {IntPoly({Int(-5), Int(0), Int(0), Int(1)}), IntPoly({Int(2), Int(7)})},
      {IntPoly({Int(1), Int(1)}), IntPoly({Int(6), Int(-2), Int(3)})},
  };
  for (const auto& [q, t] : samples) {
    auto b = poly_bezout(q, t);
    CHECK(b.c > 0);
    CHECK(b.u * q + b.v * t == IntPoly::constant(b.c));
    if (t.degree() >= 1) CHECK(b.u.degree() < t.degree());
    if (q.degree() >= 1) CHECK(b.v.degree() < q.degree());
    Int g = gcd(gcd(content_gcd(b.u), content_gcd(b.v)), b.c);
    CHECK(g == 1);
    // the scale divides the resultant when both degrees are positive
    if (q.degree() >= 1 && t.degree() >= 1) {
      Rat res = sylvester_resultant(q, t);
      CHECK(res != 0);
      CHECK(Rat(res / Rat(b.c)).get_den() == 1);
    }
  }
}
