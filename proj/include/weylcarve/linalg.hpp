#pragma once

#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include "weylcarve/exactnum.hpp"

namespace weylcarve::linalg {

using exactnum::QuadElem;

// Sparse vector: strictly increasing indices, nonzero coefficients.
struct SparseVec {
  std::vector<std::pair<uint32_t, QuadElem>> terms;

  bool is_zero() const { return terms.empty(); }
  friend bool operator==(const SparseVec& a, const SparseVec& b) { return a.terms == b.terms; }
  friend bool operator!=(const SparseVec& a, const SparseVec& b) { return !(a == b); }
};

SparseVec sv_make(std::vector<std::pair<uint32_t, QuadElem>> terms);  // sorts, merges, drops zeros
SparseVec sv_unit(uint32_t index);
SparseVec sv_add(const SparseVec& a, const SparseVec& b);
SparseVec sv_sub(const SparseVec& a, const SparseVec& b);
SparseVec sv_scale(const QuadElem& k, const SparseVec& v);
// a + k*b
SparseVec sv_axpy(const SparseVec& a, const QuadElem& k, const SparseVec& b);
QuadElem sv_coeff(const SparseVec& v, uint32_t index);

// Unique reduced basis of the span: each vector monic at its leading (lowest)
// index, leading indices strictly increasing, and each leading index absent
// from every other basis vector. Independent of input order.
std::vector<SparseVec> echelon_basis(std::vector<SparseVec> vecs);

// Residual of v after eliminating every echelon pivot. Zero iff v is in the
// span. When coords is non-null it receives the combination coefficients.
SparseVec reduce_against(const std::vector<SparseVec>& basis, SparseVec v,
                         std::vector<QuadElem>* coords = nullptr);
bool in_span(const std::vector<SparseVec>& basis, const SparseVec& v);

// Canonical kernel basis of the dense system rows * x = 0 with ncols
// unknowns: one vector per free column (ascending), free coordinate 1.
std::vector<std::vector<QuadElem>> dense_kernel(std::vector<std::vector<QuadElem>> rows,
                                                size_t ncols);

// Rank by fraction-free Bareiss elimination after clearing denominators;
// stays in the integral subring, divisions checked exact. Independent of the
// field-division route above.
long bareiss_rank(std::vector<std::vector<QuadElem>> mat);

}  // namespace weylcarve::linalg
