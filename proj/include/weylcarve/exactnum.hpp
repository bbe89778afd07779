#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>
#include <vector>

#include "weylcarve/errors.hpp"

namespace weylcarve::exactnum {

using Int = mpz_class;
using Rat = mpq_class;  // invariant: canonical, gcd(num, den) = 1, den >= 1

// Canonicalized rational from a possibly unreduced pair. den != 0.
Rat make_rat(Int num, Int den);

// Valuation lattice element; std::nullopt encodes +infinity (valuation of 0).
using Valuation = std::optional<long>;

Valuation vmin(Valuation a, Valuation b);
bool val_nonneg(Valuation v);
std::string val_to_string(Valuation v);

// v_p of a nonzero integer. p must be a prime >= 2.
long padic_val_int(const Int& n, const Int& p);

// v_p(num) - v_p(den); +infinity for r = 0.
Valuation padic_val(const Rat& r, const Int& p);

enum class Splitting { Inert, Split, Ramified };
std::string to_string(Splitting s);

bool is_squarefree(long d);

// Behaviour of the rational prime p in Q(sqrt(-d)) for square-free d >= 1,
// with respect to the maximal order: Z[(1+sqrt(-d))/2] when d = 3 mod 4 and
// Z[sqrt(-d)] otherwise. Covers p = 2 via the discriminant rules mod 8.
Splitting splitting_type(long d, const Int& p);

// Element x + y*sqrt(-d) of an imaginary quadratic field. disc() == 0 marks
// a plain rational (then y() == 0 always); otherwise disc() is positive and
// square-free. Elements of distinct positive discs never mix.
class QuadElem {
 public:
  QuadElem() : x_(0), y_(0), d_(0) {}
  QuadElem(long v) : x_(v), y_(0), d_(0) {}
  QuadElem(const Int& v) : x_(v), y_(0), d_(0) {}
  QuadElem(const Rat& v) : x_(v), y_(0), d_(0) {}
  QuadElem(Rat x, Rat y, long d);

  const Rat& x() const { return x_; }
  const Rat& y() const { return y_; }
  long disc() const { return d_; }

  bool is_zero() const { return x_ == 0 && y_ == 0; }
  bool is_rational() const { return d_ == 0; }

  QuadElem conj() const { return QuadElem(x_, -y_, d_); }
  Rat norm() const { return x_ * x_ + Rat(d_) * y_ * y_; }
  Rat trace() const { return 2 * x_; }

  QuadElem operator-() const { return QuadElem(-x_, -y_, d_); }
  QuadElem& operator+=(const QuadElem& o);
  QuadElem& operator-=(const QuadElem& o);
  QuadElem& operator*=(const QuadElem& o);
  QuadElem& operator/=(const QuadElem& o);

  friend QuadElem operator+(QuadElem a, const QuadElem& b) { return a += b; }
  friend QuadElem operator-(QuadElem a, const QuadElem& b) { return a -= b; }
  friend QuadElem operator*(QuadElem a, const QuadElem& b) { return a *= b; }
  friend QuadElem operator/(QuadElem a, const QuadElem& b) { return a /= b; }
  friend bool operator==(const QuadElem& a, const QuadElem& b) {
    return a.x_ == b.x_ && a.y_ == b.y_ && a.d_ == b.d_;
  }
  friend bool operator!=(const QuadElem& a, const QuadElem& b) { return !(a == b); }

  std::string to_string() const;

 private:
  Rat x_, y_;
  long d_;
};

// The two field embeddings into itself: identity and conjugation.
inline QuadElem first_embedding(const QuadElem& z) { return z; }
inline QuadElem second_embedding(const QuadElem& z) { return z.conj(); }

// Integer power; negative exponents invert (z != 0).
QuadElem qpow(const QuadElem& z, long e);

// Membership in the maximal order of Q(sqrt(-d)): Z[(1+sqrt(-d))/2] when
// d = 3 mod 4 (both coordinates integral or both half-odd), Z[sqrt(-d)]
// otherwise. Rationals (disc 0) reduce to having denominator 1.
bool in_integer_ring(const QuadElem& z, long d);

// Minimum coordinate valuation; valid as a lattice valuation at unramified p.
Valuation quad_val(const QuadElem& z, const Int& p);

// True iff the minimal common denominator of the coordinates is prime to p.
// Rejects ramified p (the coordinate lattice is not valuation-compatible
// there).
bool is_p_integral(const QuadElem& z, const Int& p);

// Integer-coefficient polynomial, constant term first. Normalized: no
// trailing zero coefficient; the zero polynomial has empty storage and
// degree() == -1.
class IntPoly {
 public:
  IntPoly() = default;
  IntPoly(std::vector<Int> coeffs);
  static IntPoly constant(const Int& v);
  static IntPoly monomial(int deg, const Int& lead);

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  const Int& coeff(int i) const;  // 0 outside the stored range
  const std::vector<Int>& coeffs() const { return c_; }

  QuadElem eval(const QuadElem& z) const;
  Rat eval(const Rat& r) const;

  IntPoly& operator+=(const IntPoly& o);
  IntPoly& operator-=(const IntPoly& o);
  friend IntPoly operator+(IntPoly a, const IntPoly& b) { return a += b; }
  friend IntPoly operator-(IntPoly a, const IntPoly& b) { return a -= b; }
  friend IntPoly operator*(const IntPoly& a, const IntPoly& b);
  IntPoly scaled(const Int& k) const;
  friend bool operator==(const IntPoly& a, const IntPoly& b) { return a.c_ == b.c_; }

  std::string to_string() const;  // e.g. "X^2 - 3*X + 1"

 private:
  void normalize();
  std::vector<Int> c_;
};

struct BezoutTriple {
  IntPoly u, v;
  Int c;  // u*q + v*t == c, c > 0 minimal for the degree-reduced pair
};

// Solves u*q + v*t = c over the integers with deg u < deg t and
// deg v < deg q whenever both degrees are positive. Throws not_coprime when
// gcd(q, t) is non-constant, invalid_argument when either input is zero.
BezoutTriple poly_bezout(const IntPoly& q, const IntPoly& t);

}  // namespace weylcarve::exactnum
