#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "weylcarve/endoalg.hpp"
#include "weylcarve/exactnum.hpp"
#include "weylcarve/repspace.hpp"
#include "weylcarve/weights.hpp"

namespace weylcarve::carve {

using exactnum::Int;
using exactnum::QuadElem;
using exactnum::Valuation;
using repspace::ExteriorSpace;
using repspace::LinMap;
using repspace::Subspace;
using weights::Weight;

// Certified output of the unitary pipeline. Structural claims (image
// dimension, highest-weight content, rational form) are enforced during
// construction and raise on failure; `pass` additionally certifies the
// p-integrality measurement when a prime was supplied.
struct CarveReport {
  Weight weight;
  Weight dual;
  int s = 0;
  std::optional<Int> p;  // absent: rational mode, no integrality claim
  long disc = 0;

  bool p_gt_2g = false;
  bool s_lt_p = false;
  bool p_small = false;
  bool p_small_dual = false;
  bool p_small_boundary = false;  // some coroot pairing hits p exactly

  long m = 0;                      // eigenvalue base of the slot scalings
  endoalg::TypeSeparator separator;

  long dim_image = 0;
  Int expected_dim;                // Weyl dimension of both summands
  std::vector<weights::TorusChar> highest_weights;
  Valuation min_p_valuation;       // over entries of the projector family
  long galois_fixed_dim = 0;
  long t = 0;                      // homogeneous degree of the projector
  bool pass = false;

  LinMap projector;
  Subspace image;
};

// End-to-end pipeline over Quad(d) (d = 0: the rational split model): builds
// the exterior module, the three commuting projectors (symmetrizer, type
// separator, pure tensor separator), composes them, and certifies the image
// against the Weyl dimension, highest-weight, group stability, and rational
// form oracles. Any certificate failure raises; a report is only returned
// when the structural claims hold.
//
// Integral mode (p set): p must be an unramified odd prime with p > 2g and
// p > s; entry valuations of all four maps are measured and gate `pass`.
// Rational mode (p absent): separators are chosen with an internal driver
// prime and no valuation claim is made.
CarveReport carve_unitary(const Weight& a, const std::optional<Int>& p, long d,
                          uint64_t cap = repspace::kDefaultCap);

// Homogeneous degree recorded in the report (the pure tensor degree).
long t_of(const CarveReport& r);

// One named exact check of the symplectic operator suite.
struct SiegelCheck {
  std::string name;
  bool ok = false;
};

struct SiegelReport {
  int g = 0;
  int s = 0;
  Int p;
  uint64_t dim = 0;
  std::vector<SiegelCheck> checks;
  Valuation theta_min_valuation;
  std::vector<QuadElem> commutator_scalars;  // recorded, not asserted
  bool pass = false;
};

// Exact identity suite for the symplectic operator family on the first slot
// pair: coform semi-invariance, raise/lower adjointness over every basis
// pair, composite equivariance and degree preservation, p-integrality, and
// commutation with the slot permutations fixing the pair.
SiegelReport carve_siegel_checks(int g, int s, const Int& p,
                                 uint64_t cap = repspace::kDefaultCap);

}  // namespace weylcarve::carve
