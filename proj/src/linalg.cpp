#include "weylcarve/linalg.hpp"

#include <algorithm>

namespace weylcarve::linalg {

using exactnum::Int;
using exactnum::Rat;

SparseVec sv_make(std::vector<std::pair<uint32_t, QuadElem>> terms) {
  std::sort(terms.begin(), terms.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  SparseVec out;
  size_t i = 0;
  while (i < terms.size()) {
    uint32_t idx = terms[i].first;
    QuadElem acc = std::move(terms[i].second);
    ++i;
    while (i < terms.size() && terms[i].first == idx) acc += terms[i++].second;
    if (!acc.is_zero()) out.terms.emplace_back(idx, std::move(acc));
  }
  return out;
}

SparseVec sv_unit(uint32_t index) {
  SparseVec v;
  v.terms.emplace_back(index, QuadElem(1));
  return v;
}

SparseVec sv_axpy(const SparseVec& a, const QuadElem& k, const SparseVec& b) {
  if (k.is_zero()) return a;
  SparseVec out;
  out.terms.reserve(a.terms.size() + b.terms.size());
  size_t i = 0, j = 0;
  while (i < a.terms.size() || j < b.terms.size()) {
    bool take_a = j == b.terms.size() ||
                  (i < a.terms.size() && a.terms[i].first < b.terms[j].first);
    bool take_b = i == a.terms.size() ||
                  (j < b.terms.size() && b.terms[j].first < a.terms[i].first);
    if (take_a) {
      out.terms.push_back(a.terms[i++]);
    } else if (take_b) {
      QuadElem c = k * b.terms[j].second;
      if (!c.is_zero()) out.terms.emplace_back(b.terms[j].first, std::move(c));
      ++j;
    } else {
      QuadElem c = a.terms[i].second + k * b.terms[j].second;
      if (!c.is_zero()) out.terms.emplace_back(a.terms[i].first, std::move(c));
      ++i;
      ++j;
    }
  }
  return out;
}

SparseVec sv_add(const SparseVec& a, const SparseVec& b) { return sv_axpy(a, QuadElem(1), b); }
SparseVec sv_sub(const SparseVec& a, const SparseVec& b) { return sv_axpy(a, QuadElem(-1), b); }

SparseVec sv_scale(const QuadElem& k, const SparseVec& v) {
  SparseVec out;
  if (k.is_zero()) return out;
  out.terms.reserve(v.terms.size());
  for (const auto& [i, c] : v.terms) out.terms.emplace_back(i, k * c);
  return out;
}

QuadElem sv_coeff(const SparseVec& v, uint32_t index) {
  auto it = std::lower_bound(v.terms.begin(), v.terms.end(), index,
                             [](const auto& t, uint32_t x) { return t.first < x; });
  if (it != v.terms.end() && it->first == index) return it->second;
  return QuadElem();
}

std::vector<SparseVec> echelon_basis(std::vector<SparseVec> vecs) {
  std::map<uint32_t, SparseVec> by_pivot;
  for (auto& v : vecs) {
    SparseVec cur = std::move(v);
    while (!cur.is_zero()) {
      uint32_t lead = cur.terms.front().first;
      auto it = by_pivot.find(lead);
      if (it == by_pivot.end()) {
        QuadElem inv = QuadElem(1) / cur.terms.front().second;
        cur = sv_scale(inv, cur);
        by_pivot.emplace(lead, std::move(cur));
        break;
      }
      cur = sv_axpy(cur, -cur.terms.front().second, it->second);
    }
  }
  // back-substitute so every pivot index appears in exactly one vector
  for (auto it = by_pivot.rbegin(); it != by_pivot.rend(); ++it) {
    for (auto jt = by_pivot.begin(); jt != by_pivot.end(); ++jt) {
      if (jt->first == it->first) continue;
      QuadElem c = sv_coeff(jt->second, it->first);
      if (!c.is_zero()) jt->second = sv_axpy(jt->second, -c, it->second);
    }
  }
  std::vector<SparseVec> out;
  out.reserve(by_pivot.size());
  for (auto& [piv, vec] : by_pivot) out.push_back(std::move(vec));
  return out;
}

SparseVec reduce_against(const std::vector<SparseVec>& basis, SparseVec v,
                         std::vector<QuadElem>* coords) {
  if (coords) coords->assign(basis.size(), QuadElem());
  for (size_t i = 0; i < basis.size(); ++i) {
    const uint32_t piv = basis[i].terms.front().first;
    QuadElem c = sv_coeff(v, piv);
    if (c.is_zero()) continue;
    if (coords) (*coords)[i] = c;
    v = sv_axpy(v, -c, basis[i]);
  }
  return v;
}

bool in_span(const std::vector<SparseVec>& basis, const SparseVec& v) {
  return reduce_against(basis, v).is_zero();
}

std::vector<std::vector<QuadElem>> dense_kernel(std::vector<std::vector<QuadElem>> rows,
                                                size_t ncols) {
  for (const auto& r : rows)
    if (r.size() != ncols) fail(errc::invalid_argument, "dense_kernel: ragged rows");
  const size_t nrows = rows.size();
  std::vector<size_t> pivot_col;
  size_t r = 0;
  for (size_t c = 0; c < ncols && r < nrows; ++c) {
    size_t sel = r;
    while (sel < nrows && rows[sel][c].is_zero()) ++sel;
    if (sel == nrows) continue;
    std::swap(rows[sel], rows[r]);
    QuadElem inv = QuadElem(1) / rows[r][c];
    for (size_t k = c; k < ncols; ++k) rows[r][k] = inv * rows[r][k];
    for (size_t i = 0; i < nrows; ++i) {
      if (i == r || rows[i][c].is_zero()) continue;
      QuadElem f = rows[i][c];
      for (size_t k = c; k < ncols; ++k) rows[i][k] -= f * rows[r][k];
    }
    pivot_col.push_back(c);
    ++r;
  }
  std::vector<bool> is_pivot(ncols, false);
  for (size_t c : pivot_col) is_pivot[c] = true;
  std::vector<std::vector<QuadElem>> kernel;
  for (size_t f = 0; f < ncols; ++f) {
    if (is_pivot[f]) continue;
    std::vector<QuadElem> x(ncols, QuadElem());
    x[f] = QuadElem(1);
    for (size_t i = 0; i < pivot_col.size(); ++i) x[pivot_col[i]] = -rows[i][f];
    kernel.push_back(std::move(x));
  }
  return kernel;
}

namespace {

// Exact division in the integral subring; the Bareiss invariant guarantees
// divisibility, so a fractional quotient flags corruption.
QuadElem exact_div(const QuadElem& a, const QuadElem& b) {
  QuadElem q = a / b;
  if (q.x().get_den() != 1 || q.y().get_den() != 1)
    fail(errc::oracle_mismatch, "bareiss_rank: non-exact division");
  return q;
}

}  // namespace

long bareiss_rank(std::vector<std::vector<QuadElem>> mat) {
  if (mat.empty()) return 0;
  const size_t nrows = mat.size(), ncols = mat[0].size();
  for (const auto& r : mat)
    if (r.size() != ncols) fail(errc::invalid_argument, "bareiss_rank: ragged rows");
  Int scale(1);
  for (const auto& row : mat)
    for (const auto& e : row) scale = lcm(lcm(scale, e.x().get_den()), e.y().get_den());
  if (scale != 1) {
    QuadElem k{Rat(scale)};
    for (auto& row : mat)
      for (auto& e : row) e = k * e;
  }
  long rank = 0;
  QuadElem prev(1);
  for (size_t col = 0; col < ncols && rank < static_cast<long>(nrows); ++col) {
    size_t piv = rank;
    while (piv < nrows && mat[piv][col].is_zero()) ++piv;
    if (piv == nrows) continue;
    std::swap(mat[piv], mat[rank]);
    for (size_t i = rank + 1; i < nrows; ++i) {
      for (size_t j = col + 1; j < ncols; ++j)
        mat[i][j] = exact_div(mat[rank][col] * mat[i][j] - mat[i][col] * mat[rank][j], prev);
      mat[i][col] = QuadElem();
    }
    prev = mat[rank][col];
    ++rank;
  }
  return rank;
}

}  // namespace weylcarve::linalg
