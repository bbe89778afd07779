#include "weylcarve/exactnum.hpp"

#include <algorithm>
#include <sstream>

namespace weylcarve::exactnum {

Rat make_rat(Int num, Int den) {
  if (den == 0) fail(errc::invalid_argument, "make_rat: zero denominator");
  Rat r(std::move(num), std::move(den));
  r.canonicalize();
  return r;
}

Valuation vmin(Valuation a, Valuation b) {
  if (!a) return b;
  if (!b) return a;
  return std::min(*a, *b);
}

bool val_nonneg(Valuation v) { return !v || *v >= 0; }

std::string val_to_string(Valuation v) { return v ? std::to_string(*v) : "inf"; }

static void check_prime(const Int& p) {
  if (p < 2 || mpz_probab_prime_p(p.get_mpz_t(), 30) == 0)
    fail(errc::invalid_argument, "requires a prime p, got " + p.get_str());
}

long padic_val_int(const Int& n, const Int& p) {
  check_prime(p);
  if (n == 0) fail(errc::invalid_argument, "padic_val_int: zero argument");
  Int reduced;
  return static_cast<long>(mpz_remove(reduced.get_mpz_t(), n.get_mpz_t(), p.get_mpz_t()));
}

Valuation padic_val(const Rat& r, const Int& p) {
  check_prime(p);
  if (r == 0) return std::nullopt;
  Int num = r.get_num(), den = r.get_den();
  Int reduced;
  long vn = static_cast<long>(mpz_remove(reduced.get_mpz_t(), num.get_mpz_t(), p.get_mpz_t()));
  long vd = static_cast<long>(mpz_remove(reduced.get_mpz_t(), den.get_mpz_t(), p.get_mpz_t()));
  return vn - vd;
}

std::string to_string(Splitting s) {
  switch (s) {
    case Splitting::Inert: return "inert";
    case Splitting::Split: return "split";
    case Splitting::Ramified: return "ramified";
  }
  return "?";
}

bool is_squarefree(long d) {
  if (d < 1) return false;
  for (long q = 2; q * q <= d; ++q)
    while (d % q == 0) {
      d /= q;
      if (d % q == 0) return false;
    }
  return true;
}

Splitting splitting_type(long d, const Int& p) {
  check_prime(p);
  if (!is_squarefree(d)) fail(errc::invalid_argument, "splitting_type: d must be square-free >= 1");
  if (p == 2) {
    long m8 = d % 8;
    if (d % 4 == 1 || d % 4 == 2) return Splitting::Ramified;  // field disc -4d
    return m8 == 7 ? Splitting::Split : Splitting::Inert;      // d = 3 mod 4
  }
  if (Int(d) % p == 0) return Splitting::Ramified;
  // Euler criterion on -d mod p.
  Int a = (-Int(d)) % p;
  if (a < 0) a += p;
  Int e = (p - 1) / 2, r;
  mpz_powm(r.get_mpz_t(), a.get_mpz_t(), e.get_mpz_t(), p.get_mpz_t());
  return r == 1 ? Splitting::Split : Splitting::Inert;
}

QuadElem::QuadElem(Rat x, Rat y, long d) : x_(std::move(x)), y_(std::move(y)), d_(d) {
  if (y_ == 0) {
    d_ = 0;
  } else {
    if (d_ <= 0 || !is_squarefree(d_))
      fail(errc::invalid_argument, "QuadElem: disc must be square-free >= 1");
  }
}

static long merged_disc(const QuadElem& a, const QuadElem& b) {
  if (a.disc() == 0) return b.disc();
  if (b.disc() == 0 || b.disc() == a.disc()) return a.disc();
  fail(errc::invalid_argument, "QuadElem: mixing distinct quadratic fields");
}

QuadElem& QuadElem::operator+=(const QuadElem& o) {
  long d = merged_disc(*this, o);
  x_ += o.x_;
  y_ += o.y_;
  d_ = (y_ == 0) ? 0 : d;
  return *this;
}

QuadElem& QuadElem::operator-=(const QuadElem& o) {
  long d = merged_disc(*this, o);
  x_ -= o.x_;
  y_ -= o.y_;
  d_ = (y_ == 0) ? 0 : d;
  return *this;
}

QuadElem& QuadElem::operator*=(const QuadElem& o) {
  long d = merged_disc(*this, o);
  Rat nx = x_ * o.x_ - Rat(d) * y_ * o.y_;
  Rat ny = x_ * o.y_ + y_ * o.x_;
  x_ = std::move(nx);
  y_ = std::move(ny);
  d_ = (y_ == 0) ? 0 : d;
  return *this;
}

QuadElem& QuadElem::operator/=(const QuadElem& o) {
  if (o.is_zero()) fail(errc::invalid_argument, "QuadElem: division by zero");
  QuadElem num = *this * o.conj();
  Rat n = o.norm();
  num.x_ /= n;
  num.y_ /= n;
  *this = num;
  return *this;
}

std::string QuadElem::to_string() const {
  if (d_ == 0) return x_.get_str();
  std::ostringstream os;
  os << x_.get_str() << (y_ < 0 ? " - " : " + ");
  Rat ay = y_ < 0 ? Rat(-y_) : y_;
  os << ay.get_str() << "*sqrt(-" << d_ << ")";
  return os.str();
}

QuadElem qpow(const QuadElem& z, long e) {
  if (e < 0) return qpow(QuadElem(1) / z, -e);
  QuadElem acc(1), base = z;
  while (e > 0) {
    if (e & 1) acc *= base;
    base *= base;
    e >>= 1;
  }
  return acc;
}

bool in_integer_ring(const QuadElem& z, long d) {
  if (!is_squarefree(d)) fail(errc::invalid_argument, "in_integer_ring: bad disc");
  if (z.disc() != 0 && z.disc() != d) fail(errc::invalid_argument, "in_integer_ring: disc mismatch");
  const Rat& x = z.x();
  const Rat& y = z.y();
  if (d % 4 == 3) {
    // Z[(1+sqrt(-d))/2]: 2x and 2y integral with the same parity.
    Rat tx = 2 * x, ty = 2 * y;
    if (tx.get_den() != 1 || ty.get_den() != 1) return false;
    return (tx.get_num() - ty.get_num()) % 2 == 0;
  }
  return x.get_den() == 1 && y.get_den() == 1;
}

Valuation quad_val(const QuadElem& z, const Int& p) {
  return vmin(padic_val(z.x(), p), padic_val(z.y(), p));
}

bool is_p_integral(const QuadElem& z, const Int& p) {
  if (z.disc() != 0 && splitting_type(z.disc(), p) == Splitting::Ramified)
    fail(errc::ramified_prime,
         "is_p_integral requires p unramified in Q(sqrt(-" + std::to_string(z.disc()) +
             ")), got p = " + p.get_str());
  Int n = lcm(z.x().get_den(), z.y().get_den());
  return n % p != 0;
}

IntPoly::IntPoly(std::vector<Int> coeffs) : c_(std::move(coeffs)) { normalize(); }

IntPoly IntPoly::constant(const Int& v) { return IntPoly(std::vector<Int>{v}); }

IntPoly IntPoly::monomial(int deg, const Int& lead) {
  if (deg < 0) fail(errc::invalid_argument, "IntPoly::monomial: negative degree");
  std::vector<Int> c(deg + 1, Int(0));
  c[deg] = lead;
  return IntPoly(std::move(c));
}

void IntPoly::normalize() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

const Int& IntPoly::coeff(int i) const {
  static const Int zero(0);
  if (i < 0 || i >= static_cast<int>(c_.size())) return zero;
  return c_[i];
}

QuadElem IntPoly::eval(const QuadElem& z) const {
  QuadElem acc;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * z + QuadElem(*it);
  return acc;
}

Rat IntPoly::eval(const Rat& r) const {
  Rat acc(0);
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * r + Rat(*it);
  return acc;
}

IntPoly& IntPoly::operator+=(const IntPoly& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), Int(0));
  for (size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
  normalize();
  return *this;
}

IntPoly& IntPoly::operator-=(const IntPoly& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), Int(0));
  for (size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
  normalize();
  return *this;
}

IntPoly operator*(const IntPoly& a, const IntPoly& b) {
  if (a.is_zero() || b.is_zero()) return IntPoly();
  std::vector<Int> c(a.c_.size() + b.c_.size() - 1, Int(0));
  for (size_t i = 0; i < a.c_.size(); ++i)
    for (size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
  return IntPoly(std::move(c));
}

IntPoly IntPoly::scaled(const Int& k) const {
  std::vector<Int> c(c_);
  for (auto& v : c) v *= k;
  return IntPoly(std::move(c));
}

std::string IntPoly::to_string() const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int i = degree(); i >= 0; --i) {
    const Int& a = c_[i];
    if (a == 0) continue;
    Int mag = abs(a);
    if (first) {
      if (a < 0) os << "-";
      first = false;
    } else {
      os << (a < 0 ? " - " : " + ");
    }
    bool unit = (mag == 1);
    if (i == 0) {
      os << mag.get_str();
    } else {
      if (!unit) os << mag.get_str() << "*";
      os << "X";
      if (i > 1) os << "^" << i;
    }
  }
  return os.str();
}

namespace {

// Dense rational polynomial, internal to the Bezout solver.
struct RatPoly {
  std::vector<Rat> c;  // constant first, normalized

  void normalize() {
    while (!c.empty() && c.back() == 0) c.pop_back();
  }
  int degree() const { return static_cast<int>(c.size()) - 1; }
  bool is_zero() const { return c.empty(); }

  static RatPoly from(const IntPoly& p) {
    RatPoly r;
    r.c.reserve(p.coeffs().size());
    for (const auto& a : p.coeffs()) r.c.emplace_back(a);
    return r;
  }
  static RatPoly constant(const Rat& v) {
    RatPoly r;
    r.c.push_back(v);
    r.normalize();
    return r;
  }
};

RatPoly sub(const RatPoly& a, const RatPoly& b) {
  RatPoly r = a;
  if (b.c.size() > r.c.size()) r.c.resize(b.c.size(), Rat(0));
  for (size_t i = 0; i < b.c.size(); ++i) r.c[i] -= b.c[i];
  r.normalize();
  return r;
}

RatPoly mul(const RatPoly& a, const RatPoly& b) {
  if (a.is_zero() || b.is_zero()) return RatPoly();
  RatPoly r;
  r.c.assign(a.c.size() + b.c.size() - 1, Rat(0));
  for (size_t i = 0; i < a.c.size(); ++i)
    for (size_t j = 0; j < b.c.size(); ++j) r.c[i + j] += a.c[i] * b.c[j];
  r.normalize();
  return r;
}

// Euclidean division a = q*b + r, deg r < deg b.
std::pair<RatPoly, RatPoly> divmod(RatPoly a, const RatPoly& b) {
  if (b.is_zero()) fail(errc::invalid_argument, "poly divmod: zero divisor");
  RatPoly q;
  q.c.assign(std::max<size_t>(a.c.size(), 1), Rat(0));
  while (!a.is_zero() && a.degree() >= b.degree()) {
    int k = a.degree() - b.degree();
    Rat f = a.c.back() / b.c.back();
    q.c[k] += f;
    for (size_t i = 0; i < b.c.size(); ++i) a.c[k + i] -= f * b.c[i];
    a.normalize();
  }
  q.normalize();
  return {q, a};
}

IntPoly clear_denominators(const RatPoly& p, Int scale) {
  std::vector<Int> c;
  c.reserve(p.c.size());
  for (const auto& r : p.c) {
    Int v = r.get_num() * (scale / r.get_den());
    c.push_back(v);
  }
  return IntPoly(std::move(c));
}

}  // namespace

BezoutTriple poly_bezout(const IntPoly& q, const IntPoly& t) {
  if (q.is_zero() || t.is_zero()) fail(errc::invalid_argument, "poly_bezout: zero input");

  if (q.degree() == 0 && t.degree() == 0) {
    // Constant pair: integer Bezout gives the minimal positive value.
    Int a = q.coeff(0), b = t.coeff(0), u, v, g;
    mpz_gcdext(g.get_mpz_t(), u.get_mpz_t(), v.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    if (g < 0) {
      g = -g;
      u = -u;
      v = -v;
    }
    return {IntPoly::constant(u), IntPoly::constant(v), g};
  }

  // Extended Euclid over Q.
  RatPoly r0 = RatPoly::from(q), r1 = RatPoly::from(t);
  RatPoly s0 = RatPoly::constant(1), s1;
  RatPoly t0, t1 = RatPoly::constant(1);
  while (!r1.is_zero()) {
    auto [quo, rem] = divmod(r0, r1);
    r0 = r1;
    r1 = rem;
    RatPoly ns = sub(s0, mul(quo, s1));
    s0 = s1;
    s1 = ns;
    RatPoly nt = sub(t0, mul(quo, t1));
    t0 = t1;
    t1 = nt;
  }
  // s0*q + t0*t == r0 == gcd
  if (r0.degree() > 0)
    fail(errc::not_coprime, "poly_bezout: inputs share the non-constant factor gcd of degree " +
                                std::to_string(r0.degree()));
  Rat g = r0.c[0];
  RatPoly u0 = s0, v0 = t0;
  for (auto& a : u0.c) a /= g;
  for (auto& a : v0.c) a /= g;

  // Enforce deg u < deg t (then deg v < deg q follows). With one input
  // constant the reduced cofactor pair is (1/q, 0) or (0, 1/t).
  if (t.degree() >= 1 && !u0.is_zero() && u0.degree() >= t.degree()) {
    auto [quo, rem] = divmod(u0, RatPoly::from(t));
    u0 = rem;
    v0 = sub(v0, mul(quo, RatPoly::from(q)));  // keeps u0*q + v0*t == 1
  }

  Int scale(1);
  for (const auto& a : u0.c) scale = lcm(scale, a.get_den());
  for (const auto& a : v0.c) scale = lcm(scale, a.get_den());
  BezoutTriple out{clear_denominators(u0, scale), clear_denominators(v0, scale), scale};

  IntPoly check = out.u * q + out.v * t;
  if (!(check == IntPoly::constant(out.c)))
    fail(errc::oracle_mismatch, "poly_bezout: identity check failed");
  return out;
}

}  // namespace weylcarve::exactnum
