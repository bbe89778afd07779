#include "weylcarve/symalg.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

namespace weylcarve::symalg {

Perm perm_identity(int s) {
  Perm p(s);
  std::iota(p.begin(), p.end(), 0);
  return p;
}

Perm perm_compose(const Perm& a, const Perm& b) {
  if (a.size() != b.size()) fail(errc::invalid_argument, "perm_compose: size mismatch");
  Perm out(a.size());
  for (size_t i = 0; i < a.size(); ++i) out[i] = a[b[i]];
  return out;
}

Perm perm_inverse(const Perm& p) {
  Perm out(p.size());
  for (size_t i = 0; i < p.size(); ++i) out[p[i]] = int(i);
  return out;
}

int perm_sign(const Perm& p) {
  int inv = 0;
  for (size_t i = 0; i < p.size(); ++i)
    for (size_t j = i + 1; j < p.size(); ++j)
      if (p[i] > p[j]) ++inv;
  return (inv & 1) ? -1 : 1;
}

GroupAlgElem ga_zero(int s) { return {s, {}}; }

GroupAlgElem ga_unit(int s) { return {s, {{perm_identity(s), Rat(1)}}}; }

GroupAlgElem ga_term(Perm p, Rat c) {
  GroupAlgElem out{int(p.size()), {}};
  if (c != 0) out.coeff.emplace(std::move(p), std::move(c));
  return out;
}

GroupAlgElem ga_add(const GroupAlgElem& a, const GroupAlgElem& b) {
  if (a.s != b.s) fail(errc::invalid_argument, "ga_add: size mismatch");
  GroupAlgElem out = a;
  for (const auto& [p, c] : b.coeff) {
    auto it = out.coeff.find(p);
    if (it == out.coeff.end()) {
      out.coeff.emplace(p, c);
    } else {
      it->second += c;
      if (it->second == 0) out.coeff.erase(it);
    }
  }
  return out;
}

GroupAlgElem ga_scale(const Rat& k, const GroupAlgElem& a) {
  GroupAlgElem out{a.s, {}};
  if (k == 0) return out;
  for (const auto& [p, c] : a.coeff) out.coeff.emplace(p, k * c);
  return out;
}

GroupAlgElem ga_mul(const GroupAlgElem& a, const GroupAlgElem& b) {
  if (a.s != b.s) fail(errc::invalid_argument, "ga_mul: size mismatch");
  GroupAlgElem out{a.s, {}};
  for (const auto& [sigma, cs] : a.coeff)
    for (const auto& [tau, ct] : b.coeff) {
      Perm prod = perm_compose(sigma, tau);
      Rat v = cs * ct;
      auto it = out.coeff.find(prod);
      if (it == out.coeff.end()) {
        out.coeff.emplace(std::move(prod), std::move(v));
      } else {
        it->second += v;
        if (it->second == 0) out.coeff.erase(it);
      }
    }
  return out;
}

int Tableau::size() const {
  int n = 0;
  for (const auto& r : rows) n += int(r.size());
  return n;
}

Tableau canonical_tableau(const std::vector<long>& partition) {
  Tableau t;
  long prev = -1;
  int next = 0;
  for (long part : partition) {
    if (part < 0 || (prev >= 0 && part > prev))
      fail(errc::invalid_argument, "partition parts must be non-increasing and non-negative");
    prev = part;
    if (part == 0) continue;
    std::vector<int> row(part);
    std::iota(row.begin(), row.end(), next);
    next += int(part);
    t.rows.push_back(std::move(row));
  }
  if (next == 0) fail(errc::invalid_argument, "empty partition");
  return t;
}

namespace {

// All permutations of {0..s-1} fixing everything outside the given blocks
// and permuting each block within itself.
void block_perms(int s, const std::vector<std::vector<int>>& blocks,
                 const std::function<void(const Perm&)>& visit) {
  Perm base = perm_identity(s);
  std::function<void(size_t, Perm&)> rec = [&](size_t bi, Perm& cur) {
    if (bi == blocks.size()) {
      visit(cur);
      return;
    }
    std::vector<int> order(blocks[bi].size());
    std::iota(order.begin(), order.end(), 0);
    do {
      for (size_t k = 0; k < order.size(); ++k) cur[blocks[bi][k]] = blocks[bi][order[k]];
      rec(bi + 1, cur);
    } while (std::next_permutation(order.begin(), order.end()));
    for (int i : blocks[bi]) cur[i] = i;
  };
  rec(0, base);
}

}  // namespace

GroupAlgElem row_symmetrizer(const Tableau& t) {
  const int s = t.size();
  GroupAlgElem out = ga_zero(s);
  block_perms(s, t.rows, [&](const Perm& p) { out.coeff[p] += 1; });
  return out;
}

GroupAlgElem column_antisymmetrizer(const Tableau& t) {
  const int s = t.size();
  std::vector<std::vector<int>> cols;
  for (size_t c = 0; c < t.rows[0].size(); ++c) {
    std::vector<int> col;
    for (const auto& row : t.rows)
      if (c < row.size()) col.push_back(row[c]);
    cols.push_back(std::move(col));
  }
  GroupAlgElem out = ga_zero(s);
  block_perms(s, cols, [&](const Perm& p) { out.coeff[p] += perm_sign(p); });
  return out;
}

GroupAlgElem young_symmetrizer(const std::vector<long>& partition) {
  Tableau t = canonical_tableau(partition);
  return ga_mul(row_symmetrizer(t), column_antisymmetrizer(t));
}

QuasiIdem idempotent_scale(const GroupAlgElem& c) {
  if (c.is_zero()) fail(errc::not_quasi_idempotent, "zero element cannot be normalized");
  GroupAlgElem sq = ga_mul(c, c);
  const auto& [p0, v0] = *c.coeff.begin();
  auto it = sq.coeff.find(p0);
  if (it == sq.coeff.end())
    fail(errc::not_quasi_idempotent, "square drops the leading support element");
  Rat ratio = it->second / v0;
  if (sq != ga_scale(ratio, c))
    fail(errc::not_quasi_idempotent, "square is not a scalar multiple");
  if (ratio.get_den() != 1 || ratio <= 0)
    fail(errc::not_quasi_idempotent, "scale " + std::string(ratio.get_str()) +
                                         " is not a positive integer");
  Int n = ratio.get_num(), factorial(1);
  for (int i = 2; i <= c.s; ++i) factorial *= i;
  if (factorial % n != 0)
    fail(errc::not_quasi_idempotent, "scale " + n.get_str() + " does not divide s!");
  return {ga_scale(exactnum::make_rat(1, n), c), n};
}

repspace::LinMap act_on_tensor(const GroupAlgElem& x, const repspace::ExteriorSpace& sp) {
  if (x.s != sp.s) fail(errc::invalid_argument, "act_on_tensor: slot count mismatch");
  repspace::LinMap out = repspace::zero_map(sp);
  for (const auto& [p, c] : x.coeff) {
    std::vector<int> perm(p.begin(), p.end());
    out = repspace::add(out, repspace::scale(exactnum::QuadElem(c),
                                             repspace::slot_permutation_map(sp, perm)));
  }
  return out;
}

}  // namespace weylcarve::symalg
