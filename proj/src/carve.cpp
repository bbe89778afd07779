#include "weylcarve/carve.hpp"

#include <algorithm>
#include <map>
#include <utility>

#include "weylcarve/errors.hpp"
#include "weylcarve/linalg.hpp"
#include "weylcarve/symalg.hpp"

namespace weylcarve::carve {

using exactnum::val_nonneg;
using exactnum::vmin;
using linalg::sv_scale;
using linalg::SparseVec;
using repspace::act_group;
using repspace::act_matrix;
using repspace::apply;
using repspace::compose;
using repspace::contains;
using repspace::image_basis;
using repspace::span_of;
using repspace::subspace_equal;

namespace {

bool is_prime_long(long n) {
  if (n < 2) return false;
  for (long q = 2; q * q <= n; ++q)
    if (n % q == 0) return false;
  return true;
}

// Search prime for the rational-mode separators: the certificates they carry
// (distinct products, exact Bezout identity) hold in characteristic zero, so
// any admissible prime serves.
Int driver_prime(long d, int g, int s) {
  const long lo = std::max(2L * g, static_cast<long>(s));
  for (long q = lo + 1;; ++q) {
    if (!is_prime_long(q)) continue;
    if (d > 0 && d % q == 0) continue;
    return Int(q);
  }
}

void require_commutes(const LinMap& f, const LinMap& g, const char* what) {
  if (!(compose(f, g).cols == compose(g, f).cols))
    fail(errc::oracle_mismatch, std::string(what) + " do not commute");
}

// Conjugate partition. The slot permutations act on the exterior module with
// the wedge sign, which exchanges symmetrizing and antisymmetrizing: the
// Schur functor for shape lambda is cut out by the symmetrizer of the
// transposed shape.
std::vector<long> transposed(const std::vector<long>& part) {
  std::vector<long> out;
  for (long j = 0;; ++j) {
    long cnt = 0;
    for (long v : part)
      if (v > j) ++cnt;
    if (cnt == 0) break;
    out.push_back(cnt);
  }
  return out;
}

}  // namespace

CarveReport carve_unitary(const Weight& a, const std::optional<Int>& p, long d, uint64_t cap) {
  if (a.kind != weights::GroupCase::Unitary)
    fail(errc::invalid_argument, "carve_unitary requires a unitary weight");
  auto [partition, size] = weights::partition_of(a);
  if (size <= 0)
    fail(errc::not_effective, "the weight must be effective with positive size s = sum(a)");
  const int g = a.rank();
  const int s = static_cast<int>(size);

  CarveReport rep;
  rep.weight = a;
  rep.dual = weights::dual_weight(a);
  rep.s = s;
  rep.p = p;
  rep.disc = d;

  const repspace::BaseModule base =
      d == 0 ? repspace::BaseModule::unitary_rational(g) : repspace::BaseModule::unitary(g, d);
  const ExteriorSpace sp = repspace::exterior_module(base, s, cap);

  // Separator choices; in integral mode these enforce p > 2g, p > s, and p
  // unramified, raising with the violated hypothesis named.
  const Int driver = p ? *p : driver_prime(d, g, s);
  rep.m = endoalg::choose_degree_separator(driver, g);
  rep.separator = endoalg::choose_type_separator(d, driver, s);
  if (p) {
    rep.p_gt_2g = *p > 2 * g;
    rep.s_lt_p = *p > s;
    rep.p_small = weights::is_p_small(a, *p);
    rep.p_small_dual = weights::is_p_small(rep.dual, *p);
    rep.p_small_boundary =
        weights::p_small_boundary(a, *p) || weights::p_small_boundary(rep.dual, *p);
  }

  auto [q, q_cert] = endoalg::pure_tensor_projector(rep.m, sp);
  auto [qp, qp_cert] = endoalg::unmixed_type_projector(rep.separator, sp);
  const symalg::QuasiIdem young =
      symalg::idempotent_scale(symalg::young_symmetrizer(transposed(partition)));
  const LinMap ca = symalg::act_on_tensor(young.idem, sp);

  // The three factors commute, so the composition order below is certified
  // immaterial; the composite is then itself an idempotent.
  require_commutes(ca, q, "the symmetrizer and the pure tensor projector");
  require_commutes(ca, qp, "the symmetrizer and the type projector");
  require_commutes(qp, q, "the type projector and the pure tensor projector");
  const LinMap proj = compose(ca, compose(qp, q));
  if (!(compose(proj, proj) == proj))
    fail(errc::oracle_mismatch, "the carve projector is not idempotent");

  rep.projector = proj;
  rep.image = image_basis(proj);
  rep.dim_image = rep.image.dim();
  rep.expected_dim = weights::weyl_dim(a) + weights::weyl_dim(rep.dual);
  if (Int(rep.dim_image) != rep.expected_dim)
    fail(errc::oracle_mismatch,
         "carved image dimension " + std::to_string(rep.dim_image) +
             " disagrees with the Weyl dimension oracle " + rep.expected_dim.get_str());

  // Group stability of the image.
  for (const auto& gen : repspace::standard_generators(base)) {
    const LinMap act = act_group(sp, gen);
    for (const auto& b : rep.image.basis)
      if (!contains(rep.image, apply(act, b)))
        fail(errc::oracle_mismatch, "carved image is not stable under generator " + gen.name);
  }

  // Highest-weight content: exactly the weight and its partner, once each.
  std::vector<weights::TorusChar> found;
  for (const auto& [vec, chi] : repspace::highest_weight_vectors(rep.image)) found.push_back(chi);
  std::sort(found.begin(), found.end());
  std::vector<weights::TorusChar> want{{a.entries, a.c}, {rep.dual.entries, rep.dual.c}};
  std::sort(want.begin(), want.end());
  if (found != want) fail(errc::oracle_mismatch, "highest-weight content is not {a, a*}");
  rep.highest_weights = std::move(found);

  // Rational form. Over a quadratic field the involution is semilinear and
  // the fixed points are a form of the image: equal dimension and full span.
  if (!repspace::galois_stable(rep.image))
    fail(errc::not_stable, "carved image is not stable under the coefficient involution");
  std::vector<SparseVec> fixed = repspace::galois_fixed_basis(rep.image);
  rep.galois_fixed_dim = static_cast<long>(fixed.size());
  if (d > 0) {
    if (rep.galois_fixed_dim != rep.dim_image)
      fail(errc::oracle_mismatch, "fixed rational points do not have full dimension");
    if (!subspace_equal(span_of(sp, std::move(fixed)), rep.image))
      fail(errc::oracle_mismatch, "fixed rational points do not span the carved image");
  }

  const std::optional<long> t = endoalg::homogeneous_degree(proj);
  if (t != std::optional<long>(s))
    fail(errc::oracle_mismatch, "the carve projector is not homogeneous of degree s");
  rep.t = s;

  if (p) {
    rep.min_p_valuation = vmin(
        vmin(endoalg::min_entry_valuation(proj, *p), endoalg::min_entry_valuation(q, *p)),
        vmin(endoalg::min_entry_valuation(qp, *p), endoalg::min_entry_valuation(ca, *p)));
    rep.pass = val_nonneg(rep.min_p_valuation);
  } else {
    rep.pass = true;
  }
  return rep;
}

long t_of(const CarveReport& r) { return r.t; }

SiegelReport carve_siegel_checks(int g, int s, const Int& p, uint64_t cap) {
  if (g < 1 || s < 2)
    fail(errc::invalid_argument, "the operator suite requires g >= 1 and s >= 2");
  if (mpz_probab_prime_p(p.get_mpz_t(), 30) == 0)
    fail(errc::invalid_argument, "the operator suite requires p to be an odd prime");
  if (p <= 2 * g) fail(errc::p_too_small, "the operator suite requires p > 2g");

  const ExteriorSpace sp = repspace::exterior_module(repspace::BaseModule::siegel(g), s, cap);
  SiegelReport rep;
  rep.g = g;
  rep.s = s;
  rep.p = p;
  rep.dim = sp.dim;

  const std::vector<repspace::GroupGen> gens = repspace::standard_generators(sp.base);
  const SparseVec u = endoalg::symplectic_coform(sp, 0, 1);
  const LinMap phi = endoalg::lefschetz_raise(sp, 0, 1);
  const LinMap psi = endoalg::lefschetz_lower(sp, 0, 1);
  const LinMap theta = endoalg::lefschetz_endo(sp, 0, 1);

  bool semi = true;
  for (const auto& gen : gens)
    semi = semi && apply(act_group(sp, gen), u) == sv_scale(gen.mu, u);
  rep.checks.push_back({"u_semi_invariance", semi});

  // Adjointness over every basis pair: both sides of <phi x, y> = <x, psi y>
  // reduce to one entry against the pairing partner, so the full comparison
  // is a pair of sparse sweeps.
  std::map<std::pair<uint32_t, uint32_t>, QuadElem> lhs, rhs;
  for (const auto& [colA, vec] : phi.cols)
    for (const auto& [row, c] : vec.terms) {
      auto [colB, gram] = endoalg::pairing_partner(sp, row);
      lhs[{colA, colB}] = c * gram;
    }
  for (const auto& [colB, vec] : psi.cols)
    for (const auto& [row, c] : vec.terms) {
      auto [colA, gram1] = endoalg::pairing_partner(sp, row);
      const QuadElem gram = endoalg::pairing_partner(sp, colA).second;
      rhs[{colA, colB}] = c * gram;
    }
  rep.checks.push_back({"adjointness", lhs == rhs});

  bool equivariant = true;
  for (const auto& gen : gens) {
    const LinMap act = act_group(sp, gen);
    equivariant = equivariant && compose(act, theta).cols == compose(theta, act).cols;
  }
  rep.checks.push_back({"theta_equivariance", equivariant});

  bool graded = true;
  for (const auto& [col, vec] : theta.cols)
    for (const auto& [row, c] : vec.terms) graded = graded && sp.degree(row) == sp.degree(col);
  rep.checks.push_back({"theta_degree_preserving", graded});

  rep.theta_min_valuation = endoalg::min_entry_valuation(theta, p);
  rep.checks.push_back({"theta_p_integral", val_nonneg(rep.theta_min_valuation)});

  // Slot permutations preserving {0, 1} as a set.
  bool slots = true;
  std::vector<int> perm(s);
  for (int i = 0; i < s; ++i) perm[i] = i;
  do {
    if (!((perm[0] == 0 && perm[1] == 1) || (perm[0] == 1 && perm[1] == 0))) continue;
    std::vector<std::vector<Int>> m(s, std::vector<Int>(s, 0));
    for (int j = 0; j < s; ++j) m[perm[j]][j] = 1;
    const LinMap act = act_matrix(sp, m);
    slots = slots && compose(act, theta).cols == compose(theta, act).cols;
  } while (std::next_permutation(perm.begin(), perm.end()));
  rep.checks.push_back({"theta_slot_commutation", slots});

  // The raise/lower commutator is a scalar on each graded piece only when
  // every slot is paired (s = 2); beyond that the scalar depends on the
  // degree within the paired slots, so nothing is recorded.
  if (s == 2)
    rep.commutator_scalars =
        endoalg::graded_scalars(repspace::sub(compose(psi, phi), compose(phi, psi)));

  rep.pass = true;
  for (const auto& c : rep.checks) rep.pass = rep.pass && c.ok;
  return rep;
}

}  // namespace weylcarve::carve
