#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "weylcarve/exactnum.hpp"
#include "weylcarve/linalg.hpp"
#include "weylcarve/repspace.hpp"

namespace weylcarve::endoalg {

using exactnum::Int;
using exactnum::IntPoly;
using exactnum::QuadElem;
using exactnum::Rat;
using linalg::SparseVec;
using repspace::ExteriorSpace;
using repspace::LinMap;

// Bilinear pairing on the exterior algebra induced by the symplectic form on
// the orthogonal direct sum of the labelled copies: on monomials the
// determinant of the generator pairings, extended bilinearly. Siegel only.
QuadElem exterior_pairing(const ExteriorSpace& sp, const SparseVec& a, const SparseVec& b);

// The unique basis monomial pairing nontrivially against the given one,
// with the value of that pairing. Siegel only.
std::pair<uint32_t, QuadElem> pairing_partner(const ExteriorSpace& sp, uint32_t mask);

// The semi-invariant 2-vector pairing copy i against copy j through the
// inverse symplectic form, normalized to leading coefficient +1 in mask
// order. Every group generator scales it by its similitude factor.
SparseVec symplectic_coform(const ExteriorSpace& sp, int i, int j);

// Left exterior multiplication by the coform; degree +2, twist +1.
LinMap lefschetz_raise(const ExteriorSpace& sp, int i, int j);
// Adjoint of lefschetz_raise for exterior_pairing; degree -2, twist -1.
LinMap lefschetz_lower(const ExteriorSpace& sp, int i, int j);
// raise o lower: degree- and grading-preserving, twist 0, commutes with the
// full group action.
LinMap lefschetz_endo(const ExteriorSpace& sp, int i, int j);

// The scalar by which f acts on each graded degree 0..ngen (zero where the
// degree is untouched). Throws oracle_mismatch when f is not a scalar on
// some graded piece.
std::vector<QuadElem> graded_scalars(const LinMap& f);

struct ProjectorCert {
  bool idempotent = false;
  std::optional<long> homogeneous_degree;  // set when the image is graded
  std::vector<std::pair<std::string, std::string>> params;  // construction data
};

// Smallest positive integer generating (Z/pZ)*, the eigenvalue separator
// for the slot scalings. Requires p > 2g so that the powers m^0..m^2g stay
// pairwise non-congruent mod p.
long choose_degree_separator(const Int& p, int g);

// Masks with every slot degree exactly 1, ascending.
std::vector<uint32_t> pure_tensor_masks(const ExteriorSpace& sp);

// Spectral projector onto the pure tensor part: the product over slots of
// the Lagrange polynomial in the one-slot scaling by m that selects
// eigenvalue m^1. Image dimension (2g)^s; idempotency is checked exactly.
std::pair<LinMap, ProjectorCert> pure_tensor_projector(long m, const ExteriorSpace& sp);

// Certified scalar separating the two types. a and b are the embeddings of
// an integral element (rational model: an independent integer pair); the
// s+1 products a^r b^t with r+t=s are pairwise distinct and the Bezout
// constant c of (mixed_poly, pure_poly) has p-adic valuation 0.
struct TypeSeparator {
  long disc = 0;  // 0 = rational split model
  QuadElem a, b;
  IntPoly mixed_poly;          // Q = prod_{r+t=s, r,t>0} (X - a^r b^t)
  IntPoly pure_poly;           // T = (X - a^s)(X - b^s)
  exactnum::BezoutTriple bez;  // bez.u*Q + bez.v*T = bez.c
};

// Deterministic search for the separator: inert p lifts the first generator
// of the residue quadratic extension, split p lifts the first residue pair
// of multiplicative ratio order > s, the rational model enumerates integer
// pairs by height. Candidates failing the exact certificate are skipped.
// Throws p_too_small when p <= s, ramified_prime when p ramifies.
TypeSeparator choose_type_separator(long d, const Int& p, int s);

// (1/c) * u(w) * Q(w) with w the split scalar action of (a, b): the
// idempotent separating the two unmixed type lines inside the pure tensor
// part. Returned as an ambient map; the certificate checks idempotency on
// the pure tensor columns and throws oracle_mismatch when it fails (e.g.
// for a corrupted Bezout triple).
std::pair<LinMap, ProjectorCert> unmixed_type_projector(const TypeSeparator& sep,
                                                        const ExteriorSpace& sp);

// Degree t when the image lies in the degree-t graded piece (zero map: 0 by
// convention), absent when the image meets several degrees.
std::optional<long> homogeneous_degree(const LinMap& f);

// Minimum p-adic valuation over all matrix entries; nullopt (+infinity) for
// the zero map. >= 0 certifies the endomorphism is p-integral.
exactnum::Valuation min_entry_valuation(const LinMap& f, const Int& p);

}  // namespace weylcarve::endoalg
