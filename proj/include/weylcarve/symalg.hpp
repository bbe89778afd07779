#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "weylcarve/exactnum.hpp"
#include "weylcarve/repspace.hpp"

namespace weylcarve::symalg {

using exactnum::Int;
using exactnum::Rat;

// Permutation of {0..s-1} by images: p[i] is where i goes.
using Perm = std::vector<int>;

Perm perm_identity(int s);
Perm perm_compose(const Perm& a, const Perm& b);  // apply b first, then a
Perm perm_inverse(const Perm& p);
int perm_sign(const Perm& p);

// Element of the rational group algebra of the symmetric group on s letters.
struct GroupAlgElem {
  int s = 0;
  std::map<Perm, Rat> coeff;  // nonzero coefficients only

  size_t support() const { return coeff.size(); }
  bool is_zero() const { return coeff.empty(); }
  friend bool operator==(const GroupAlgElem& a, const GroupAlgElem& b) {
    return a.s == b.s && a.coeff == b.coeff;
  }
};

GroupAlgElem ga_zero(int s);
GroupAlgElem ga_unit(int s);  // the identity permutation
GroupAlgElem ga_term(Perm p, Rat c);
GroupAlgElem ga_add(const GroupAlgElem& a, const GroupAlgElem& b);
GroupAlgElem ga_scale(const Rat& k, const GroupAlgElem& a);
// convolution: (x*y)(pi) = sum over sigma.tau = pi of x(sigma) y(tau)
GroupAlgElem ga_mul(const GroupAlgElem& a, const GroupAlgElem& b);

// Row-major numbering of a partition diagram: row i holds the next lambda_i
// letters left to right. Zero parts are dropped; entries must be
// non-increasing positive.
struct Tableau {
  std::vector<std::vector<int>> rows;
  int size() const;
};

Tableau canonical_tableau(const std::vector<long>& partition);

// Sum over row-preserving permutations.
GroupAlgElem row_symmetrizer(const Tableau& t);
// Signed sum over column-preserving permutations.
GroupAlgElem column_antisymmetrizer(const Tableau& t);
// row_symmetrizer * column_antisymmetrizer of the canonical tableau.
GroupAlgElem young_symmetrizer(const std::vector<long>& partition);

struct QuasiIdem {
  GroupAlgElem idem;  // c / n, a true idempotent
  Int n;              // c*c == n*c with n a positive integer dividing s!
};

// Normalizes a quasi-idempotent; throws not_quasi_idempotent when c*c is not
// a positive integer multiple of c.
QuasiIdem idempotent_scale(const GroupAlgElem& c);

// Action on the exterior space by signed slot permutations, extended
// linearly. act_on_tensor(x*y) == act_on_tensor(x) o act_on_tensor(y).
repspace::LinMap act_on_tensor(const GroupAlgElem& x, const repspace::ExteriorSpace& sp);

}  // namespace weylcarve::symalg
