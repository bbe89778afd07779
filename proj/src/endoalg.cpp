#include "weylcarve/endoalg.hpp"

#include <algorithm>
#include <map>

#include "weylcarve/errors.hpp"

namespace weylcarve::endoalg {

using exactnum::make_rat;
using exactnum::poly_bezout;
using exactnum::qpow;
using exactnum::Splitting;
using exactnum::splitting_type;
using linalg::sv_coeff;
using linalg::sv_make;
using linalg::sv_scale;
using linalg::sv_unit;
using repspace::act_matrix;
using repspace::act_split_scalar;
using repspace::compose;
using repspace::identity_map;
using repspace::restrict_columns;
using repspace::scale;
using repspace::sub;
using repspace::wedge_monomials;
using repspace::zero_map;

namespace {

void require_siegel(const ExteriorSpace& sp, const char* what) {
  if (sp.base.kind != weights::GroupCase::Siegel)
    fail(errc::wrong_case, std::string(what) + " needs the symplectic model");
}

// Partner mask under the per-slot swap x_k <-> y_k together with the sign
// <e_A, e_partner(A)>: the product of the generator pairings (+1 for x
// against y, -1 for y against x) times the sorting sign of the partner list.
std::pair<uint32_t, int> partner_sign(const ExteriorSpace& sp, uint32_t mask) {
  const int g = sp.base.g;
  uint32_t pm = 0;
  int sign = 1;
  std::vector<int> partners;
  for (int b = 0; b < sp.ngen; ++b) {
    if (!((mask >> b) & 1u)) continue;
    const int pos = sp.pos_of(b);
    const int pb = pos < g ? b + g : b - g;
    if (pos >= g) sign = -sign;
    partners.push_back(pb);
    pm |= uint32_t(1) << pb;
  }
  int inv = 0;
  for (size_t i = 0; i < partners.size(); ++i)
    for (size_t j = i + 1; j < partners.size(); ++j)
      if (partners[i] > partners[j]) ++inv;
  return {pm, inv % 2 ? -sign : sign};
}

// Coefficients of prod (X - root) with the roots known to be conjugation
// stable algebraic integers, so the result has rational integer entries.
IntPoly poly_from_roots(const std::vector<QuadElem>& roots) {
  std::vector<QuadElem> c{QuadElem(1)};
  for (const QuadElem& r : roots) {
    std::vector<QuadElem> next(c.size() + 1);
    for (size_t i = 0; i < c.size(); ++i) {
      next[i + 1] += c[i];
      next[i] -= r * c[i];
    }
    c = std::move(next);
  }
  std::vector<Int> out(c.size());
  for (size_t i = 0; i < c.size(); ++i) {
    if (c[i].y() != 0 || c[i].x().get_den() != 1)
      fail(errc::oracle_mismatch, "separator polynomial has non-integer coefficients");
    out[i] = c[i].x().get_num();
  }
  return IntPoly(std::move(out));
}

// f substituted into the polynomial, by Horner in the map algebra.
LinMap poly_apply(const IntPoly& f, const LinMap& w) {
  if (f.is_zero()) return zero_map(w.space);
  const LinMap id = identity_map(w.space);
  LinMap acc = scale(QuadElem(f.coeff(f.degree())), id);
  for (int i = f.degree() - 1; i >= 0; --i)
    acc = repspace::add(compose(acc, w), scale(QuadElem(f.coeff(i)), id));
  return acc;
}

bool probably_prime(const Int& p) {
  return p > 1 && mpz_probab_prime_p(p.get_mpz_t(), 30) != 0;
}

std::vector<unsigned long> prime_factors(unsigned long n) {
  std::vector<unsigned long> out;
  for (unsigned long q = 2; q * q <= n; ++q) {
    if (n % q) continue;
    out.push_back(q);
    while (n % q == 0) n /= q;
  }
  if (n > 1) out.push_back(n);
  return out;
}

unsigned long pow_mod(unsigned long base, unsigned long e, unsigned long p) {
  unsigned long r = 1 % p;
  base %= p;
  while (e) {
    if (e & 1) r = static_cast<unsigned long>((static_cast<unsigned long long>(r) * base) % p);
    base = static_cast<unsigned long>((static_cast<unsigned long long>(base) * base) % p);
    e >>= 1;
  }
  return r;
}

long as_small_prime(const Int& p, const char* ctx) {
  if (!probably_prime(p)) fail(errc::invalid_argument, std::string(ctx) + ": p must be prime");
  if (!p.fits_slong_p() || p.get_si() >= (1L << 30))
    fail(errc::invalid_argument, std::string(ctx) + ": p is too large for the separator search");
  return p.get_si();
}

// Residue field of an inert prime: F_p[omega] with omega^2 = w0 + w1*omega.
struct ResidueQuad {
  unsigned long p, w0, w1;

  std::pair<unsigned long, unsigned long> mul(std::pair<unsigned long, unsigned long> a,
                                              std::pair<unsigned long, unsigned long> b) const {
    using ull = unsigned long long;
    const ull cross = (ull(a.first) * b.second + ull(a.second) * b.first) % p;
    const ull ww = ull(a.second) * b.second % p;
    return {static_cast<unsigned long>((ull(a.first) * b.first + ww * w0) % p),
            static_cast<unsigned long>((cross + ww * w1) % p)};
  }

  std::pair<unsigned long, unsigned long> pow(std::pair<unsigned long, unsigned long> a,
                                              unsigned long e) const {
    std::pair<unsigned long, unsigned long> r{1, 0};
    while (e) {
      if (e & 1) r = mul(r, a);
      a = mul(a, a);
      e >>= 1;
    }
    return r;
  }
};

std::optional<TypeSeparator> try_separator(long d, const Int& p, int s, const QuadElem& a,
                                           const QuadElem& b) {
  std::vector<QuadElem> products;
  for (int r = 0; r <= s; ++r) products.push_back(qpow(a, r) * qpow(b, s - r));
  for (size_t i = 0; i < products.size(); ++i)
    for (size_t j = i + 1; j < products.size(); ++j)
      if (products[i] == products[j]) return std::nullopt;

  std::vector<QuadElem> mixed(products.begin() + 1, products.end() - 1);
  IntPoly q_poly = poly_from_roots(mixed);
  IntPoly t_poly = poly_from_roots({products.back(), products.front()});

  exactnum::BezoutTriple bez;
  try {
    bez = poly_bezout(q_poly, t_poly);
  } catch (const Error& e) {
    if (e.code() == errc::not_coprime) return std::nullopt;
    throw;
  }
  if (exactnum::padic_val_int(bez.c, p) != 0) return std::nullopt;
  return TypeSeparator{d, a, b, std::move(q_poly), std::move(t_poly), std::move(bez)};
}

QuadElem lift_residue(long d, unsigned long alpha, unsigned long beta) {
  if (d % 4 == 3)  // omega = (1 + sqrt(-d))/2
    return QuadElem(make_rat(Int(2 * alpha + beta), 2), make_rat(Int(beta), 2), d);
  return QuadElem(Rat(static_cast<long>(alpha)), Rat(static_cast<long>(beta)), d);
}

}  // namespace

QuadElem exterior_pairing(const ExteriorSpace& sp, const SparseVec& a, const SparseVec& b) {
  require_siegel(sp, "the exterior pairing");
  QuadElem out(0);
  for (const auto& [mask, ca] : a.terms) {
    auto [pm, sign] = partner_sign(sp, mask);
    const QuadElem cb = sv_coeff(b, pm);
    if (!cb.is_zero()) out += ca * QuadElem(sign) * cb;
  }
  return out;
}

std::pair<uint32_t, QuadElem> pairing_partner(const ExteriorSpace& sp, uint32_t mask) {
  require_siegel(sp, "the exterior pairing");
  auto [pm, sign] = partner_sign(sp, mask);
  return {pm, QuadElem(sign)};
}

SparseVec symplectic_coform(const ExteriorSpace& sp, int i, int j) {
  require_siegel(sp, "the symplectic coform");
  if (i < 0 || j <= i || j >= sp.s)
    fail(errc::invalid_argument, "coform slots must satisfy 0 <= i < j < s");
  const int g = sp.base.g;
  std::vector<std::pair<uint32_t, QuadElem>> terms;
  for (int a = 0; a < g; ++a) {
    const uint32_t xi = uint32_t(1) << sp.gen_index(i, a);
    const uint32_t yi = uint32_t(1) << sp.gen_index(i, g + a);
    const uint32_t xj = uint32_t(1) << sp.gen_index(j, a);
    const uint32_t yj = uint32_t(1) << sp.gen_index(j, g + a);
    terms.emplace_back(xi | yj, QuadElem(-1));
    terms.emplace_back(yi | xj, QuadElem(1));
  }
  SparseVec u = sv_make(std::move(terms));
  return sv_scale(QuadElem(1) / u.terms.front().second, u);
}

LinMap lefschetz_raise(const ExteriorSpace& sp, int i, int j) {
  const SparseVec u = symplectic_coform(sp, i, j);
  LinMap out{sp, 1, {}};
  for (uint64_t m = 0; m < sp.dim; ++m) {
    std::vector<std::pair<uint32_t, QuadElem>> terms;
    for (const auto& [um, uc] : u.terms) {
      auto [sign, target] = wedge_monomials(um, uint32_t(m));
      if (sign != 0) terms.emplace_back(target, QuadElem(sign) * uc);
    }
    if (!terms.empty()) out.cols.emplace(uint32_t(m), sv_make(std::move(terms)));
  }
  return out;
}

LinMap lefschetz_lower(const ExteriorSpace& sp, int i, int j) {
  const LinMap phi = lefschetz_raise(sp, i, j);
  LinMap out{sp, -1, {}};
  std::map<uint32_t, std::vector<std::pair<uint32_t, QuadElem>>> acc;
  for (const auto& [q, col] : phi.cols) {
    auto [pq, gq] = partner_sign(sp, q);
    for (const auto& [row, c] : col.terms) {
      auto [pr, gr] = partner_sign(sp, row);
      acc[pr].emplace_back(pq, c * QuadElem(gr * gq));
    }
  }
  for (auto& [mask, terms] : acc) {
    SparseVec v = sv_make(std::move(terms));
    if (!v.is_zero()) out.cols.emplace(mask, std::move(v));
  }
  return out;
}

LinMap lefschetz_endo(const ExteriorSpace& sp, int i, int j) {
  return compose(lefschetz_raise(sp, i, j), lefschetz_lower(sp, i, j));
}

std::vector<QuadElem> graded_scalars(const LinMap& f) {
  const ExteriorSpace& sp = f.space;
  std::vector<QuadElem> out(sp.ngen + 1, QuadElem(0));
  std::vector<bool> seen(sp.ngen + 1, false);
  for (uint64_t m = 0; m < sp.dim; ++m) {
    const int deg = sp.degree(uint32_t(m));
    auto it = f.cols.find(uint32_t(m));
    SparseVec expect;
    QuadElem lambda(0);
    if (it != f.cols.end()) {
      lambda = sv_coeff(it->second, uint32_t(m));
      expect = it->second;
    }
    if (!seen[deg]) {
      seen[deg] = true;
      out[deg] = lambda;
    }
    if (out[deg] != lambda || expect != sv_scale(lambda, sv_unit(uint32_t(m))))
      fail(errc::oracle_mismatch, "map is not scalar on a graded piece");
  }
  return out;
}

long choose_degree_separator(const Int& p, int g) {
  const long pl = as_small_prime(p, "degree separator");
  if (pl <= 2 * g) fail(errc::p_too_small, "degree separator requires p > 2g");
  const unsigned long order = static_cast<unsigned long>(pl - 1);
  const std::vector<unsigned long> qs = prime_factors(order);
  for (long m = 2; m < pl; ++m) {
    bool generates = true;
    for (unsigned long q : qs)
      if (pow_mod(static_cast<unsigned long>(m), order / q, static_cast<unsigned long>(pl)) == 1) {
        generates = false;
        break;
      }
    if (generates) return m;
  }
  fail(errc::invalid_argument, "no generator found; p is not prime");
}

std::vector<uint32_t> pure_tensor_masks(const ExteriorSpace& sp) {
  std::vector<uint32_t> out;
  for (uint64_t m = 0; m < sp.dim; ++m) {
    bool pure = true;
    for (int j = 0; j < sp.s && pure; ++j) pure = sp.slot_degree(uint32_t(m), j) == 1;
    if (pure) out.push_back(uint32_t(m));
  }
  return out;
}

std::pair<LinMap, ProjectorCert> pure_tensor_projector(long m, const ExteriorSpace& sp) {
  const int top = 2 * sp.base.g;
  std::vector<Int> powers(top + 1);
  powers[0] = 1;
  for (int i = 1; i <= top; ++i) powers[i] = powers[i - 1] * m;
  for (int i = 0; i <= top; ++i)
    for (int j = i + 1; j <= top; ++j)
      if (powers[i] == powers[j])
        fail(errc::degenerate_eigenvalues, "slot scaling eigenvalues m^0..m^2g collide");
  if (m < 2) fail(errc::invalid_argument, "degree separator must be at least 2");

  const LinMap id = identity_map(sp);
  LinMap q = id;
  Int den = 1;
  for (int j = 0; j < sp.s; ++j) {
    std::vector<std::vector<Int>> vj(sp.s, std::vector<Int>(sp.s, 0));
    for (int k = 0; k < sp.s; ++k) vj[k][k] = k == j ? Int(m) : Int(1);
    const LinMap dj = act_matrix(sp, vj);
    for (int i = 0; i <= top; ++i) {
      if (i == 1) continue;
      q = compose(q, sub(dj, scale(QuadElem(powers[i]), id)));
      den *= powers[1] - powers[i];
    }
  }
  q = scale(QuadElem(make_rat(1, den)), q);

  if (compose(q, q) != q)
    fail(errc::oracle_mismatch, "pure tensor projector failed the idempotency check");
  ProjectorCert cert;
  cert.idempotent = true;
  cert.homogeneous_degree = homogeneous_degree(q);
  cert.params.emplace_back("m", std::to_string(m));
  Int abs_den = den >= 0 ? den : Int(-den);
  cert.params.emplace_back("lagrange_denominator", abs_den.get_str());
  return {std::move(q), std::move(cert)};
}

TypeSeparator choose_type_separator(long d, const Int& p, int s) {
  if (s < 1) fail(errc::invalid_argument, "type separator needs s >= 1");
  if (d < 0 || (d > 0 && !exactnum::is_squarefree(d)))
    fail(errc::invalid_argument, "disc must be 0 or square-free positive");
  const long pl = as_small_prime(p, "type separator");
  if (pl == 2) fail(errc::invalid_argument, "type separator requires an odd p");
  if (pl <= s) fail(errc::p_too_small, "type separator requires p > s");

  if (d == 0) {
    for (long h = 2;; ++h) {
      for (long x = 1; x <= h; ++x)
        for (long y = 1; y <= h; ++y) {
          if (std::max(x, y) != h || x == y) continue;
          if (auto sep = try_separator(d, p, s, QuadElem(x), QuadElem(y))) return *sep;
        }
    }
  }

  const Splitting split = splitting_type(d, p);
  if (split == Splitting::Ramified)
    fail(errc::ramified_prime, "p ramifies in the chosen quadratic field");
  const auto up = static_cast<unsigned long>(pl);

  if (split == Splitting::Inert) {
    // omega^2 = w0 + w1*omega in the residue field: omega = (1+sqrt(-d))/2
    // satisfies omega^2 = omega - (1+d)/4, otherwise omega^2 = -d.
    ResidueQuad fq{up, 0, 0};
    if (d % 4 == 3) {
      fq = ResidueQuad{up, static_cast<unsigned long>(((-(1 + d) / 4) % pl + pl) % pl), 1};
    } else {
      fq = ResidueQuad{up, static_cast<unsigned long>(((-d) % pl + pl) % pl), 0};
    }
    const unsigned long order = up * up - 1;
    const std::vector<unsigned long> qs = prime_factors(order);
    for (unsigned long alpha = 0; alpha < up; ++alpha)
      for (unsigned long beta = 0; beta < up; ++beta) {
        if (alpha == 0 && beta == 0) continue;
        bool generates = true;
        for (unsigned long qf : qs)
          if (fq.pow({alpha, beta}, order / qf) == std::pair<unsigned long, unsigned long>{1, 0}) {
            generates = false;
            break;
          }
        if (!generates) continue;
        const QuadElem z = lift_residue(d, alpha, beta);
        if (auto sep = try_separator(d, p, s, z, z.conj())) return *sep;
      }
    fail(errc::invalid_argument, "no inert separator found; residue field has no generator");
  }

  // Split case: sqrt(-d) has residues (r, -r); lift a pair (u, v) with the
  // ratio u/v of multiplicative order > s.
  unsigned long root = 0;
  while (root < up && (root * root + static_cast<unsigned long>(d)) % up != 0) ++root;
  const unsigned long order = up - 1;
  const std::vector<unsigned long> qs = prime_factors(order);
  auto mult_order = [&](unsigned long x) {
    unsigned long o = order;
    for (unsigned long qf : qs)
      while (o % qf == 0 && pow_mod(x, o / qf, up) == 1) o /= qf;
    return o;
  };
  const unsigned long inv2 = pow_mod(2, up - 2, up);
  const unsigned long inv2r = pow_mod(static_cast<unsigned long>(2 * root % up), up - 2, up);
  for (unsigned long u = 1; u < up; ++u)
    for (unsigned long v = 1; v < up; ++v) {
      if (u == v) continue;
      const unsigned long ratio =
          static_cast<unsigned long>(static_cast<unsigned long long>(u) * pow_mod(v, up - 2, up) % up);
      if (mult_order(ratio) <= static_cast<unsigned long>(s)) continue;
      const unsigned long x0 = static_cast<unsigned long>(
          static_cast<unsigned long long>((u + v) % up) * inv2 % up);
      const unsigned long x1 = static_cast<unsigned long>(
          static_cast<unsigned long long>((u + up - v) % up) * inv2r % up);
      const QuadElem z(Rat(static_cast<long>(x0)), Rat(static_cast<long>(x1)), d);
      if (auto sep = try_separator(d, p, s, z, z.conj())) return *sep;
    }
  fail(errc::invalid_argument, "no split separator found");
}

std::pair<LinMap, ProjectorCert> unmixed_type_projector(const TypeSeparator& sep,
                                                        const ExteriorSpace& sp) {
  if (sp.base.kind != weights::GroupCase::Unitary)
    fail(errc::wrong_case, "type separation needs the two-type module");
  if (sp.base.disc != sep.disc)
    fail(errc::invalid_argument, "separator and module quadratic fields differ");

  const LinMap w = act_split_scalar(sp, sep.a, sep.b);
  LinMap qp = compose(poly_apply(sep.bez.u, w), poly_apply(sep.mixed_poly, w));
  qp = scale(QuadElem(make_rat(1, sep.bez.c)), qp);

  const std::vector<uint32_t> pure = pure_tensor_masks(sp);
  const LinMap restricted = restrict_columns(qp, pure);
  if (compose(qp, restricted) != restricted)
    fail(errc::oracle_mismatch,
         "type projector is not idempotent on the pure tensor part (Bezout certificate rejected)");

  ProjectorCert cert;
  cert.idempotent = true;
  cert.homogeneous_degree = homogeneous_degree(restricted);
  cert.params.emplace_back("a", sep.a.to_string());
  cert.params.emplace_back("b", sep.b.to_string());
  cert.params.emplace_back("Q", sep.mixed_poly.to_string());
  cert.params.emplace_back("T", sep.pure_poly.to_string());
  cert.params.emplace_back("U", sep.bez.u.to_string());
  cert.params.emplace_back("V", sep.bez.v.to_string());
  cert.params.emplace_back("c", sep.bez.c.get_str());
  return {std::move(qp), std::move(cert)};
}

std::optional<long> homogeneous_degree(const LinMap& f) {
  std::optional<long> deg;
  for (const auto& [col, vec] : f.cols)
    for (const auto& [row, c] : vec.terms) {
      const long d = f.space.degree(row);
      if (!deg)
        deg = d;
      else if (*deg != d)
        return std::nullopt;
    }
  if (!deg) return 0;
  return deg;
}

exactnum::Valuation min_entry_valuation(const LinMap& f, const Int& p) {
  exactnum::Valuation v = std::nullopt;
  for (const auto& [col, vec] : f.cols)
    for (const auto& [row, c] : vec.terms) v = exactnum::vmin(v, exactnum::quad_val(c, p));
  return v;
}

}  // namespace weylcarve::endoalg
