#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "weylcarve/exactnum.hpp"
#include "weylcarve/linalg.hpp"
#include "weylcarve/weights.hpp"

namespace weylcarve::repspace {

using exactnum::Int;
using exactnum::QuadElem;
using exactnum::Rat;
using linalg::SparseVec;
using weights::GroupCase;

// The 2g-dimensional base module V0 with its basis conventions.
// Unitary: positions 0..g-1 are e_1..e_g (first type), g..2g-1 are f_1..f_g
// (second type); coefficients live in Q(sqrt(-disc)), or Q when disc == 0
// (the split rational model). Siegel: positions 0..g-1 are x_1..x_g,
// g..2g-1 are y_1..y_g, rational coefficients, symplectic form J with
// <x_i, y_j> = delta_ij.
struct BaseModule {
  GroupCase kind;
  int g = 0;
  long disc = 0;

  static BaseModule unitary(int g, long disc);
  static BaseModule unitary_rational(int g);
  static BaseModule siegel(int g);
  int dim() const { return 2 * g; }

  friend bool operator==(const BaseModule& a, const BaseModule& b) {
    return a.kind == b.kind && a.g == b.g && a.disc == b.disc;
  }
};

inline constexpr uint64_t kDefaultCap = uint64_t(1) << 20;

// Exterior algebra of s labelled copies of V0. Basis = bitmasks over
// n = 2*g*s generators; generator (slot j, position k), both 0-based, is bit
// j*2g + k. Basis masks order the generators ascending.
struct ExteriorSpace {
  BaseModule base;
  int s = 0;
  int ngen = 0;
  uint64_t dim = 0;

  int gen_index(int slot, int pos) const { return slot * base.dim() + pos; }
  int slot_of(int bit) const { return bit / base.dim(); }
  int pos_of(int bit) const { return bit % base.dim(); }
  int degree(uint32_t mask) const { return __builtin_popcount(mask); }
  int slot_degree(uint32_t mask, int slot) const;
  uint32_t slot_block(int slot) const;  // mask of the slot's generators

  // counts of first-type (e or x) and second-type (f or y) generators
  std::pair<int, int> type_counts(uint32_t mask) const;
  weights::TorusChar char_of_mask(uint32_t mask) const;

  friend bool operator==(const ExteriorSpace& a, const ExteriorSpace& b) {
    return a.base == b.base && a.s == b.s;
  }
};

// Throws size_limit when 2^(2gs) exceeds cap, invalid_argument for s < 1 or
// g < 1. The hard ceiling is 2^30 (mask width).
ExteriorSpace exterior_module(const BaseModule& base, int s, uint64_t cap = kDefaultCap);

// sign placing generator `bit` in front of the monomial `mask`, i.e. the
// parity of the number of set bits above `bit`
int wedge_sign(uint32_t mask, int bit);

// e_a ^ e_b for disjoint masks: (sign, union); zero indicated by sign 0.
std::pair<int, uint32_t> wedge_monomials(uint32_t a, uint32_t b);

// Linear endomorphism of the exterior space, sparse columns. The twist
// records similitude covariance: conjugating by a group element of
// similitude mu multiplies the map by mu^twist. Composition adds twists;
// addition requires equal twists.
struct LinMap {
  ExteriorSpace space;
  int twist = 0;
  std::map<uint32_t, SparseVec> cols;  // missing column = zero

  friend bool operator==(const LinMap& a, const LinMap& b) {
    return a.space == b.space && a.twist == b.twist && a.cols == b.cols;
  }
};

LinMap zero_map(const ExteriorSpace& sp, int twist = 0);
LinMap identity_map(const ExteriorSpace& sp);
SparseVec apply(const LinMap& f, const SparseVec& v);
LinMap compose(const LinMap& f, const LinMap& g);  // f after g
LinMap add(const LinMap& f, const LinMap& g);
LinMap sub(const LinMap& f, const LinMap& g);
LinMap scale(const QuadElem& k, const LinMap& f);
// columns restricted to masks where keep is true; other columns dropped
LinMap restrict_columns(const LinMap& f, const std::vector<uint32_t>& keep);

// Degree-1 data for the functorial engines: one column per generator giving
// its image as a combination of generators.
using GenColumns = std::vector<std::vector<std::pair<uint32_t, QuadElem>>>;

// Multiplicative extension: generator images wedge together. The algebra
// endomorphism induced by a linear map of the generator space.
LinMap exterior_extension(const ExteriorSpace& sp, const GenColumns& gen, int twist = 0);
// Additive (Leibniz) extension of the same data.
LinMap derivation_extension(const ExteriorSpace& sp, const GenColumns& gen, int twist = 0);

// Functorial action of the s x s integer matrix M mixing the labelled
// copies: generator (j,k) maps to sum_i M[j][i] * (i,k). Contravariant:
// act_matrix(M1) after act_matrix(M2) equals act_matrix(M2*M1).
LinMap act_matrix(const ExteriorSpace& sp, const std::vector<std::vector<Int>>& m);

// Diagonal scalar action: first-type generators scale by a, second-type
// by b, extended multiplicatively.
LinMap act_split_scalar(const ExteriorSpace& sp, const QuadElem& a, const QuadElem& b);

// Action of a quadratic integer z through the two embeddings: first type
// scales by z, second type by conj(z). Unitary bases only; z must lie in
// the integer ring.
LinMap act_ring_scalar(const ExteriorSpace& sp, const QuadElem& z);

// Signed permutation of the labelled copies; perm[j] is where slot j goes.
// Left action: slot_permutation_map(sigma) after slot_permutation_map(tau)
// equals slot_permutation_map(sigma o tau).
LinMap slot_permutation_map(const ExteriorSpace& sp, const std::vector<int>& perm);

// Group generator: a 2g x 2g block over the coefficient field applied to
// every labelled copy, with its similitude factor. Siegel blocks satisfy
// B^T J B = mu J; unitary blocks are type-diagonal with the second-type
// block equal to mu * (conjugate-transpose inverse) of the first.
struct GroupGen {
  std::string name;
  std::vector<std::vector<QuadElem>> block;
  QuadElem mu;
};

// Deterministic finite generator set used by the equivariance checks:
// integral and quadratic torus elements, elementary unipotents, and the
// similitude scalings.
std::vector<GroupGen> standard_generators(const BaseModule& base);

// Exterior action of a validated group generator (twist 0). Throws
// invalid_generator when the defining identity fails.
LinMap act_group(const ExteriorSpace& sp, const GroupGen& gen);

// f is mu^w-covariant for the generator: act(g) o f == mu^w * (f o act(g)).
bool covariant_under(const LinMap& f, const ExteriorSpace& sp, const GroupGen& gen);

// Coefficient-conjugating involution swapping the two types in every slot
// (e_k <-> f_k with the wedge reordering sign).
SparseVec galois_apply(const ExteriorSpace& sp, const SparseVec& v);

// Subspace in canonical reduced echelon form (unique basis per subspace).
struct Subspace {
  ExteriorSpace space;
  std::vector<SparseVec> basis;
  long dim() const { return static_cast<long>(basis.size()); }
};

Subspace span_of(const ExteriorSpace& sp, std::vector<SparseVec> vecs);
Subspace image_basis(const LinMap& f);
bool contains(const Subspace& sub, const SparseVec& v);
bool subspace_equal(const Subspace& a, const Subspace& b);

// Dimensions of the intersections with the torus character classes. Throws
// not_torus_stable when they do not add up to dim(sub).
std::map<weights::TorusChar, long> weight_decomposition(const Subspace& sub);

// Derivation actions of the simple raising operators (unitary: e_{i+1}->e_i,
// f_i->-f_{i+1}; siegel additionally the long-root y_g->x_g).
std::vector<LinMap> raising_operators(const ExteriorSpace& sp);

// Joint kernel of the raising operators inside sub, split into torus
// characters, each piece in canonical echelon form. Throws not_stable when
// a raising operator leaves sub, not_torus_stable when sub is not graded.
std::vector<std::pair<SparseVec, weights::TorusChar>> highest_weight_vectors(const Subspace& sub);

// True when galois_apply maps sub into itself.
bool galois_stable(const Subspace& sub);

// Basis of the galois-fixed rational points of sub (a descent datum).
// Quadratic coefficients: solves conj-linear fixed equations; the result has
// dim(sub) elements and spans sub over the field.
std::vector<SparseVec> galois_fixed_basis(const Subspace& sub);

// Deterministic text round-trip. Header carries the space parameters; one
// line per entry "row col xnum xden [ynum yden]" sorted by row then column.
std::string dump_linmap(const LinMap& f);
LinMap parse_linmap(const std::string& text, uint64_t cap = kDefaultCap);

}  // namespace weylcarve::repspace
