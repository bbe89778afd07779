#include "weylcarve/repspace.hpp"

#include <algorithm>
#include <sstream>

namespace weylcarve::repspace {

using exactnum::qpow;
using linalg::dense_kernel;
using linalg::echelon_basis;
using linalg::in_span;
using linalg::reduce_against;
using linalg::sv_axpy;
using linalg::sv_coeff;
using linalg::sv_make;
using linalg::sv_scale;
using weights::TorusChar;

BaseModule BaseModule::unitary(int g, long disc) {
  if (g < 1) fail(errc::invalid_argument, "BaseModule: g must be >= 1");
  if (disc < 1 || !exactnum::is_squarefree(disc))
    fail(errc::invalid_argument, "BaseModule: disc must be square-free >= 1");
  return {GroupCase::Unitary, g, disc};
}

BaseModule BaseModule::unitary_rational(int g) {
  if (g < 1) fail(errc::invalid_argument, "BaseModule: g must be >= 1");
  return {GroupCase::Unitary, g, 0};
}

BaseModule BaseModule::siegel(int g) {
  if (g < 1) fail(errc::invalid_argument, "BaseModule: g must be >= 1");
  return {GroupCase::Siegel, g, 0};
}

int ExteriorSpace::slot_degree(uint32_t mask, int slot) const {
  return __builtin_popcount(mask & slot_block(slot));
}

uint32_t ExteriorSpace::slot_block(int slot) const {
  return ((uint32_t(1) << base.dim()) - 1) << (slot * base.dim());
}

std::pair<int, int> ExteriorSpace::type_counts(uint32_t mask) const {
  int first = 0, second = 0;
  const int g = base.g;
  for (int j = 0; j < s; ++j)
    for (int k = 0; k < base.dim(); ++k)
      if (mask & (uint32_t(1) << gen_index(j, k))) ++(k < g ? first : second);
  return {first, second};
}

TorusChar ExteriorSpace::char_of_mask(uint32_t mask) const {
  const int g = base.g;
  TorusChar t;
  t.entries.assign(g, 0);
  int second = 0;
  for (int j = 0; j < s; ++j)
    for (int k = 0; k < base.dim(); ++k) {
      if (!(mask & (uint32_t(1) << gen_index(j, k)))) continue;
      if (k < g)
        ++t.entries[k];
      else {
        --t.entries[k - g];
        ++second;
      }
    }
  // multiplier exponent: total degree for unitary, second-type count for
  // siegel (x_k has multiplier weight 0, y_k has weight 1)
  t.c = base.kind == GroupCase::Unitary ? degree(mask) : second;
  return t;
}

ExteriorSpace exterior_module(const BaseModule& base, int s, uint64_t cap) {
  if (s < 1) fail(errc::invalid_argument, "exterior_module: s must be >= 1");
  const int ngen = 2 * base.g * s;
  if (ngen > 30)
    fail(errc::size_limit, "exterior_module: 2*g*s = " + std::to_string(ngen) +
                               " generators exceed the 30-bit mask width");
  const uint64_t dim = uint64_t(1) << ngen;
  if (dim > cap)
    fail(errc::size_limit, "exterior_module: basis size 2^" + std::to_string(ngen) +
                               " exceeds the cap " + std::to_string(cap));
  return {base, s, ngen, dim};
}

int wedge_sign(uint32_t mask, int bit) {
  return (__builtin_popcount(mask >> (bit + 1)) & 1) ? -1 : 1;
}

std::pair<int, uint32_t> wedge_monomials(uint32_t a, uint32_t b) {
  if (a & b) return {0, 0};
  int sign = 1;
  uint32_t rest = b;
  while (rest) {
    int bit = __builtin_ctz(rest);
    rest &= rest - 1;
    // bits of a above `bit` pass over it; bits of b below `bit` were already
    // merged into a conceptually, handled by processing b ascending
    sign *= wedge_sign(a & ~((uint32_t(1) << bit) - 1), bit);
  }
  return {sign, a | b};
}

LinMap zero_map(const ExteriorSpace& sp, int twist) { return {sp, twist, {}}; }

LinMap identity_map(const ExteriorSpace& sp) {
  LinMap f{sp, 0, {}};
  for (uint64_t m = 0; m < sp.dim; ++m) f.cols[uint32_t(m)] = linalg::sv_unit(uint32_t(m));
  return f;
}

SparseVec apply(const LinMap& f, const SparseVec& v) {
  SparseVec acc;
  for (const auto& [idx, c] : v.terms) {
    auto it = f.cols.find(idx);
    if (it == f.cols.end()) continue;
    acc = sv_axpy(acc, c, it->second);
  }
  return acc;
}

static void check_same_space(const ExteriorSpace& a, const ExteriorSpace& b,
                             const char* who) {
  if (!(a == b)) fail(errc::invalid_argument, std::string(who) + ": space mismatch");
}

LinMap compose(const LinMap& f, const LinMap& g) {
  check_same_space(f.space, g.space, "compose");
  LinMap out{f.space, f.twist + g.twist, {}};
  for (const auto& [idx, col] : g.cols) {
    SparseVec v = apply(f, col);
    if (!v.is_zero()) out.cols.emplace(idx, std::move(v));
  }
  return out;
}

LinMap add(const LinMap& f, const LinMap& g) {
  check_same_space(f.space, g.space, "add");
  if (f.twist != g.twist)
    fail(errc::invalid_argument, "add: twist mismatch (" + std::to_string(f.twist) + " vs " +
                                     std::to_string(g.twist) + ")");
  LinMap out{f.space, f.twist, f.cols};
  for (const auto& [idx, col] : g.cols) {
    auto it = out.cols.find(idx);
    if (it == out.cols.end()) {
      out.cols.emplace(idx, col);
    } else {
      it->second = linalg::sv_add(it->second, col);
      if (it->second.is_zero()) out.cols.erase(it);
    }
  }
  return out;
}

LinMap sub(const LinMap& f, const LinMap& g) { return add(f, scale(QuadElem(-1), g)); }

LinMap scale(const QuadElem& k, const LinMap& f) {
  LinMap out{f.space, f.twist, {}};
  if (k.is_zero()) return out;
  for (const auto& [idx, col] : f.cols) out.cols.emplace(idx, sv_scale(k, col));
  return out;
}

LinMap restrict_columns(const LinMap& f, const std::vector<uint32_t>& keep) {
  LinMap out{f.space, f.twist, {}};
  for (uint32_t idx : keep) {
    auto it = f.cols.find(idx);
    if (it != f.cols.end() && !it->second.is_zero()) out.cols.emplace(idx, it->second);
  }
  return out;
}

static void check_gen_columns(const ExteriorSpace& sp, const GenColumns& gen) {
  if (gen.size() != size_t(sp.ngen))
    fail(errc::invalid_argument, "generator map needs one column per generator");
  for (const auto& col : gen)
    for (const auto& [b, c] : col)
      if (b >= uint32_t(sp.ngen)) fail(errc::invalid_argument, "generator index out of range");
}

LinMap exterior_extension(const ExteriorSpace& sp, const GenColumns& gen, int twist) {
  check_gen_columns(sp, gen);
  LinMap out{sp, twist, {}};
  for (uint64_t m = 0; m < sp.dim; ++m) {
    const uint32_t mask = uint32_t(m);
    std::map<uint32_t, QuadElem> acc;
    acc.emplace(0, QuadElem(1));
    uint32_t rest = mask;
    while (rest && !acc.empty()) {
      int bit = __builtin_ctz(rest);
      rest &= rest - 1;
      std::map<uint32_t, QuadElem> next;
      for (const auto& [pm, pc] : acc)
        for (const auto& [b, c] : gen[bit]) {
          if (pm & (uint32_t(1) << b)) continue;
          QuadElem v = pc * c;
          if (v.is_zero()) continue;
          int sign = wedge_sign(pm, b);
          if (sign < 0) v = -v;
          auto [it, fresh] = next.emplace(pm | (uint32_t(1) << b), v);
          if (!fresh) {
            it->second += v;
            if (it->second.is_zero()) next.erase(it);
          }
        }
      acc = std::move(next);
    }
    if (acc.empty()) continue;
    std::vector<std::pair<uint32_t, QuadElem>> terms(acc.begin(), acc.end());
    SparseVec col = sv_make(std::move(terms));
    if (!col.is_zero()) out.cols.emplace(mask, std::move(col));
  }
  return out;
}

LinMap derivation_extension(const ExteriorSpace& sp, const GenColumns& gen, int twist) {
  check_gen_columns(sp, gen);
  LinMap out{sp, twist, {}};
  for (uint64_t m = 0; m < sp.dim; ++m) {
    const uint32_t mask = uint32_t(m);
    std::map<uint32_t, QuadElem> acc;
    uint32_t rest = mask;
    while (rest) {
      int t = __builtin_ctz(rest);
      rest &= rest - 1;
      for (const auto& [b, c] : gen[t]) {
        uint32_t stripped = mask & ~(uint32_t(1) << t);
        uint32_t target;
        QuadElem v = c;
        if (int(b) == t) {
          target = mask;
        } else {
          if (stripped & (uint32_t(1) << b)) continue;
          int lo = std::min<int>(b, t), hi = std::max<int>(b, t);
          uint32_t between = ((uint32_t(1) << hi) - 1) & ~((uint32_t(1) << (lo + 1)) - 1);
          if (__builtin_popcount(stripped & between) & 1) v = -v;
          target = stripped | (uint32_t(1) << b);
        }
        if (v.is_zero()) continue;
        auto [it, fresh] = acc.emplace(target, v);
        if (!fresh) {
          it->second += v;
          if (it->second.is_zero()) acc.erase(it);
        }
      }
    }
    if (acc.empty()) continue;
    std::vector<std::pair<uint32_t, QuadElem>> terms(acc.begin(), acc.end());
    out.cols.emplace(mask, sv_make(std::move(terms)));
  }
  return out;
}

LinMap act_matrix(const ExteriorSpace& sp, const std::vector<std::vector<Int>>& m) {
  const size_t s = size_t(sp.s);
  if (m.size() != s) fail(errc::invalid_argument, "act_matrix: matrix must be s x s");
  for (const auto& row : m)
    if (row.size() != s) fail(errc::invalid_argument, "act_matrix: matrix must be s x s");
  GenColumns gen(sp.ngen);
  for (int j = 0; j < sp.s; ++j)
    for (int k = 0; k < sp.base.dim(); ++k) {
      auto& col = gen[sp.gen_index(j, k)];
      for (int i = 0; i < sp.s; ++i)
        if (m[j][i] != 0) col.emplace_back(sp.gen_index(i, k), QuadElem(m[j][i]));
    }
  return exterior_extension(sp, gen);
}

LinMap act_split_scalar(const ExteriorSpace& sp, const QuadElem& a, const QuadElem& b) {
  GenColumns gen(sp.ngen);
  for (int j = 0; j < sp.s; ++j)
    for (int k = 0; k < sp.base.dim(); ++k) {
      const QuadElem& v = k < sp.base.g ? a : b;
      if (!v.is_zero()) gen[sp.gen_index(j, k)].emplace_back(sp.gen_index(j, k), v);
    }
  return exterior_extension(sp, gen);
}

LinMap act_ring_scalar(const ExteriorSpace& sp, const QuadElem& z) {
  if (sp.base.kind != GroupCase::Unitary)
    fail(errc::wrong_case, "act_ring_scalar applies to unitary bases only");
  if (sp.base.disc == 0) {
    if (!z.is_rational() || z.x().get_den() != 1)
      fail(errc::invalid_argument, "act_ring_scalar: rational model needs an integer scalar");
  } else {
    if (z.disc() != 0 && z.disc() != sp.base.disc)
      fail(errc::invalid_argument, "act_ring_scalar: scalar from the wrong field");
    if (!exactnum::in_integer_ring(z, sp.base.disc))
      fail(errc::invalid_argument, "act_ring_scalar: scalar outside the integer ring");
  }
  return act_split_scalar(sp, z, z.conj());
}

LinMap slot_permutation_map(const ExteriorSpace& sp, const std::vector<int>& perm) {
  if (perm.size() != size_t(sp.s))
    fail(errc::invalid_argument, "slot_permutation_map: permutation size mismatch");
  std::vector<bool> seen(sp.s, false);
  for (int v : perm) {
    if (v < 0 || v >= sp.s || seen[v])
      fail(errc::invalid_argument, "slot_permutation_map: not a permutation");
    seen[v] = true;
  }
  LinMap out{sp, 0, {}};
  for (uint64_t m = 0; m < sp.dim; ++m) {
    const uint32_t mask = uint32_t(m);
    std::vector<int> image;
    uint32_t rest = mask, target = 0;
    while (rest) {
      int bit = __builtin_ctz(rest);
      rest &= rest - 1;
      int ib = sp.gen_index(perm[sp.slot_of(bit)], sp.pos_of(bit));
      image.push_back(ib);
      target |= uint32_t(1) << ib;
    }
    int inv = 0;
    for (size_t i = 0; i < image.size(); ++i)
      for (size_t j = i + 1; j < image.size(); ++j)
        if (image[i] > image[j]) ++inv;
    SparseVec col;
    col.terms.emplace_back(target, QuadElem(inv & 1 ? -1 : 1));
    out.cols.emplace(mask, std::move(col));
  }
  return out;
}

namespace {

using Block = std::vector<std::vector<QuadElem>>;

Block eye(int n) {
  Block b(n, std::vector<QuadElem>(n));
  for (int i = 0; i < n; ++i) b[i][i] = QuadElem(1);
  return b;
}

Block block_mul(const Block& a, const Block& b) {
  const size_t n = a.size();
  Block out(n, std::vector<QuadElem>(n));
  for (size_t i = 0; i < n; ++i)
    for (size_t k = 0; k < n; ++k) {
      if (a[i][k].is_zero()) continue;
      for (size_t j = 0; j < n; ++j) out[i][j] += a[i][k] * b[k][j];
    }
  return out;
}

Block block_transpose(const Block& a) {
  const size_t n = a.size();
  Block out(n, std::vector<QuadElem>(n));
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) out[j][i] = a[i][j];
  return out;
}

Block block_conj(const Block& a) {
  Block out = a;
  for (auto& row : out)
    for (auto& e : row) e = e.conj();
  return out;
}

// Gauss-Jordan inverse; empty result signals a singular block.
Block block_inverse(Block a) {
  const size_t n = a.size();
  Block inv = eye(int(n));
  for (size_t c = 0; c < n; ++c) {
    size_t piv = c;
    while (piv < n && a[piv][c].is_zero()) ++piv;
    if (piv == n) return {};
    std::swap(a[piv], a[c]);
    std::swap(inv[piv], inv[c]);
    QuadElem f = QuadElem(1) / a[c][c];
    for (size_t j = 0; j < n; ++j) {
      a[c][j] = f * a[c][j];
      inv[c][j] = f * inv[c][j];
    }
    for (size_t i = 0; i < n; ++i) {
      if (i == c || a[i][c].is_zero()) continue;
      QuadElem g = a[i][c];
      for (size_t j = 0; j < n; ++j) {
        a[i][j] -= g * a[c][j];
        inv[i][j] -= g * inv[c][j];
      }
    }
  }
  return inv;
}

Block siegel_j(int g) {
  Block j(2 * g, std::vector<QuadElem>(2 * g));
  for (int i = 0; i < g; ++i) {
    j[i][g + i] = QuadElem(1);
    j[g + i][i] = QuadElem(-1);
  }
  return j;
}

void validate_group_gen(const BaseModule& base, const GroupGen& gen) {
  const int n = base.dim();
  if (gen.block.size() != size_t(n))
    fail(errc::invalid_generator, "generator block must be 2g x 2g");
  for (const auto& row : gen.block)
    if (row.size() != size_t(n)) fail(errc::invalid_generator, "generator block must be 2g x 2g");
  if (gen.mu.is_zero()) fail(errc::invalid_generator, "similitude factor must be nonzero");
  if (base.kind == GroupCase::Siegel) {
    Block j = siegel_j(base.g);
    Block lhs = block_mul(block_mul(block_transpose(gen.block), j), gen.block);
    for (int r = 0; r < n; ++r)
      for (int c = 0; c < n; ++c)
        if (lhs[r][c] != gen.mu * j[r][c])
          fail(errc::invalid_generator,
               "generator \"" + gen.name + "\" violates B^T J B = mu J at (" +
                   std::to_string(r) + "," + std::to_string(c) + ")");
    return;
  }
  if (!gen.mu.is_rational())
    fail(errc::invalid_generator, "unitary similitude factor must be rational");
  const int g = base.g;
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c)
      if ((r < g) != (c < g) && !gen.block[r][c].is_zero())
        fail(errc::invalid_generator, "generator \"" + gen.name + "\" mixes the two types");
  Block a(g, std::vector<QuadElem>(g)), cblk(g, std::vector<QuadElem>(g));
  for (int r = 0; r < g; ++r)
    for (int c = 0; c < g; ++c) {
      a[r][c] = gen.block[r][c];
      cblk[r][c] = gen.block[g + r][g + c];
    }
  Block want = block_inverse(block_transpose(block_conj(a)));
  if (want.empty())
    fail(errc::invalid_generator, "generator \"" + gen.name + "\": first-type block singular");
  for (int r = 0; r < g; ++r)
    for (int c = 0; c < g; ++c)
      if (cblk[r][c] != gen.mu * want[r][c])
        fail(errc::invalid_generator, "generator \"" + gen.name +
                                          "\": second-type block is not mu * (A*)^-T");
}

}  // namespace

std::vector<GroupGen> standard_generators(const BaseModule& base) {
  const int g = base.g, n = base.dim();
  std::vector<GroupGen> out;
  auto zero_block = [&] { return Block(n, std::vector<QuadElem>(n)); };
  if (base.kind == GroupCase::Unitary) {
    QuadElem omega = base.disc > 0 ? QuadElem(Rat(0), Rat(1), base.disc) : QuadElem(2);
    {
      GroupGen t{"torus_int", zero_block(), QuadElem(1)};
      for (int k = 0; k < g; ++k) {
        t.block[k][k] = QuadElem(k + 2);
        t.block[g + k][g + k] = QuadElem(exactnum::make_rat(1, k + 2));
      }
      out.push_back(std::move(t));
    }
    {
      GroupGen t{"torus_quad", zero_block(), QuadElem(1)};
      QuadElem z = QuadElem(1) + omega;
      t.block[0][0] = z;
      t.block[g][g] = QuadElem(1) / z.conj();
      for (int k = 1; k < g; ++k) {
        t.block[k][k] = QuadElem(1);
        t.block[g + k][g + k] = QuadElem(1);
      }
      out.push_back(std::move(t));
    }
    for (int k = 0; k < g; ++k)
      for (int l = 0; l < g; ++l) {
        if (k == l) continue;
        GroupGen u{"unip_" + std::to_string(k + 1) + std::to_string(l + 1), zero_block(),
                   QuadElem(1)};
        for (int i = 0; i < g; ++i) {
          u.block[i][i] = QuadElem(1);
          u.block[g + i][g + i] = QuadElem(1);
        }
        u.block[k][l] = QuadElem(1);
        u.block[g + l][g + k] = QuadElem(-1);
        out.push_back(std::move(u));
      }
    if (g >= 2) {
      GroupGen u{"unip_quad_12", zero_block(), QuadElem(1)};
      for (int i = 0; i < g; ++i) {
        u.block[i][i] = QuadElem(1);
        u.block[g + i][g + i] = QuadElem(1);
      }
      u.block[0][1] = omega;
      u.block[g + 1][g + 0] = -omega.conj();
      out.push_back(std::move(u));
    }
    {
      GroupGen c{"scale_2", zero_block(), QuadElem(4)};
      for (int i = 0; i < n; ++i) c.block[i][i] = QuadElem(2);
      out.push_back(std::move(c));
    }
  } else {
    {
      GroupGen t{"gl_torus", zero_block(), QuadElem(1)};
      for (int k = 0; k < g; ++k) {
        t.block[k][k] = QuadElem(k + 2);
        t.block[g + k][g + k] = QuadElem(exactnum::make_rat(1, k + 2));
      }
      out.push_back(std::move(t));
    }
    for (int k = 0; k < g; ++k)
      for (int l = 0; l < g; ++l) {
        if (k == l) continue;
        GroupGen u{"gl_unip_" + std::to_string(k + 1) + std::to_string(l + 1), zero_block(),
                   QuadElem(1)};
        for (int i = 0; i < g; ++i) {
          u.block[i][i] = QuadElem(1);
          u.block[g + i][g + i] = QuadElem(1);
        }
        u.block[k][l] = QuadElem(1);
        u.block[g + l][g + k] = QuadElem(-1);
        out.push_back(std::move(u));
      }
    for (int k = 0; k < g; ++k)
      for (int l = k; l < g; ++l) {
        GroupGen u{"sym_u_" + std::to_string(k + 1) + std::to_string(l + 1), zero_block(),
                   QuadElem(1)};
        for (int i = 0; i < n; ++i) u.block[i][i] = QuadElem(1);
        u.block[k][g + l] = QuadElem(1);
        if (l != k) u.block[l][g + k] = QuadElem(1);
        out.push_back(std::move(u));
        GroupGen v{"sym_l_" + std::to_string(k + 1) + std::to_string(l + 1), zero_block(),
                   QuadElem(1)};
        for (int i = 0; i < n; ++i) v.block[i][i] = QuadElem(1);
        v.block[g + k][l] = QuadElem(1);
        if (l != k) v.block[g + l][k] = QuadElem(1);
        out.push_back(std::move(v));
      }
    {
      GroupGen c{"scale_2", zero_block(), QuadElem(4)};
      for (int i = 0; i < n; ++i) c.block[i][i] = QuadElem(2);
      out.push_back(std::move(c));
    }
    {
      GroupGen m{"mult_3", zero_block(), QuadElem(3)};
      for (int i = 0; i < g; ++i) {
        m.block[i][i] = QuadElem(1);
        m.block[g + i][g + i] = QuadElem(3);
      }
      out.push_back(std::move(m));
    }
  }
  return out;
}

LinMap act_group(const ExteriorSpace& sp, const GroupGen& gen) {
  validate_group_gen(sp.base, gen);
  GenColumns cols(sp.ngen);
  const int n = sp.base.dim();
  for (int j = 0; j < sp.s; ++j)
    for (int k = 0; k < n; ++k) {
      auto& col = cols[sp.gen_index(j, k)];
      for (int i = 0; i < n; ++i)
        if (!gen.block[i][k].is_zero()) col.emplace_back(sp.gen_index(j, i), gen.block[i][k]);
    }
  return exterior_extension(sp, cols);
}

bool covariant_under(const LinMap& f, const ExteriorSpace& sp, const GroupGen& gen) {
  LinMap action = act_group(sp, gen);
  LinMap lhs = compose(action, f);
  QuadElem factor(1);
  long w = f.twist;
  factor = qpow(gen.mu, w);
  LinMap rhs = scale(factor, compose(f, action));
  rhs.twist = lhs.twist;
  return lhs == rhs;
}

SparseVec galois_apply(const ExteriorSpace& sp, const SparseVec& v) {
  const int g = sp.base.g;
  std::vector<std::pair<uint32_t, QuadElem>> terms;
  for (const auto& [mask, coeff] : v.terms) {
    std::vector<int> image;
    uint32_t rest = mask, target = 0;
    while (rest) {
      int bit = __builtin_ctz(rest);
      rest &= rest - 1;
      int k = sp.pos_of(bit);
      int ib = sp.gen_index(sp.slot_of(bit), k < g ? k + g : k - g);
      image.push_back(ib);
      target |= uint32_t(1) << ib;
    }
    int inv = 0;
    for (size_t i = 0; i < image.size(); ++i)
      for (size_t j = i + 1; j < image.size(); ++j)
        if (image[i] > image[j]) ++inv;
    QuadElem c = coeff.conj();
    if (inv & 1) c = -c;
    terms.emplace_back(target, std::move(c));
  }
  return sv_make(std::move(terms));
}

Subspace span_of(const ExteriorSpace& sp, std::vector<SparseVec> vecs) {
  return {sp, echelon_basis(std::move(vecs))};
}

Subspace image_basis(const LinMap& f) {
  std::vector<SparseVec> cols;
  cols.reserve(f.cols.size());
  for (const auto& [idx, col] : f.cols) cols.push_back(col);
  return {f.space, echelon_basis(std::move(cols))};
}

bool contains(const Subspace& sub, const SparseVec& v) { return in_span(sub.basis, v); }

bool subspace_equal(const Subspace& a, const Subspace& b) {
  return a.space == b.space && a.basis == b.basis;
}

std::map<TorusChar, long> weight_decomposition(const Subspace& sub) {
  std::map<TorusChar, long> out;
  if (sub.basis.empty()) return out;
  const size_t dim = sub.basis.size();
  std::map<uint32_t, size_t> row_index;  // union of supports
  for (const auto& b : sub.basis)
    for (const auto& [m, c] : b.terms) row_index.emplace(m, 0);
  std::vector<uint32_t> masks;
  for (auto& [m, i] : row_index) {
    i = masks.size();
    masks.push_back(m);
  }
  std::map<TorusChar, std::vector<size_t>> by_char;  // rows per character
  for (size_t i = 0; i < masks.size(); ++i) by_char[sub.space.char_of_mask(masks[i])].push_back(i);

  // dense coefficient matrix: rows = masks, columns = basis vectors
  std::vector<std::vector<QuadElem>> coeff(masks.size(), std::vector<QuadElem>(dim));
  for (size_t j = 0; j < dim; ++j)
    for (const auto& [m, c] : sub.basis[j].terms) coeff[row_index[m]][j] = c;

  long total = 0;
  for (const auto& [ch, rows] : by_char) {
    std::vector<std::vector<QuadElem>> constraint;
    for (const auto& [other, orows] : by_char) {
      if (other == ch) continue;
      for (size_t r : orows) constraint.push_back(coeff[r]);
    }
    long d = constraint.empty() ? long(dim) : long(dense_kernel(std::move(constraint), dim).size());
    if (d > 0) out.emplace(ch, d);
    total += d;
  }
  if (total != long(dim))
    fail(errc::not_torus_stable,
         "subspace is not graded by torus characters (graded dims sum to " +
             std::to_string(total) + " of " + std::to_string(dim) + ")");
  return out;
}

std::vector<LinMap> raising_operators(const ExteriorSpace& sp) {
  const int g = sp.base.g;
  std::vector<LinMap> out;
  for (int i = 0; i + 1 < g; ++i) {
    GenColumns gen(sp.ngen);
    for (int j = 0; j < sp.s; ++j) {
      gen[sp.gen_index(j, i + 1)].emplace_back(sp.gen_index(j, i), QuadElem(1));
      gen[sp.gen_index(j, g + i)].emplace_back(sp.gen_index(j, g + i + 1), QuadElem(-1));
    }
    out.push_back(derivation_extension(sp, gen));
  }
  if (sp.base.kind == GroupCase::Siegel) {
    GenColumns gen(sp.ngen);
    for (int j = 0; j < sp.s; ++j)
      gen[sp.gen_index(j, 2 * g - 1)].emplace_back(sp.gen_index(j, g - 1), QuadElem(1));
    out.push_back(derivation_extension(sp, gen));
  }
  return out;
}

std::vector<std::pair<SparseVec, TorusChar>> highest_weight_vectors(const Subspace& sub) {
  std::vector<std::pair<SparseVec, TorusChar>> out;
  if (sub.basis.empty()) return out;
  weight_decomposition(sub);  // not_torus_stable guard
  auto raising = raising_operators(sub.space);
  const size_t dim = sub.basis.size();
  std::vector<std::vector<SparseVec>> images(raising.size());
  for (size_t r = 0; r < raising.size(); ++r) {
    images[r].reserve(dim);
    for (const auto& b : sub.basis) {
      SparseVec img = apply(raising[r], b);
      if (!in_span(sub.basis, img))
        fail(errc::not_stable,
             "subspace is not stable under raising operator " + std::to_string(r + 1));
      images[r].push_back(std::move(img));
    }
  }
  // joint kernel: unknown combinations x with sum_j x_j * R(b_j) = 0
  std::map<uint32_t, size_t> row_index;
  for (const auto& imgs : images)
    for (const auto& v : imgs)
      for (const auto& [m, c] : v.terms) row_index.emplace(m, 0);
  size_t nrows = 0;
  for (auto& [m, i] : row_index) i = nrows++;
  std::vector<std::vector<QuadElem>> rows(nrows * raising.size(),
                                          std::vector<QuadElem>(dim));
  for (size_t r = 0; r < raising.size(); ++r)
    for (size_t j = 0; j < dim; ++j)
      for (const auto& [m, c] : images[r][j].terms) rows[r * nrows + row_index[m]][j] = c;
  std::vector<std::vector<QuadElem>> kernel =
      raising.empty() ? std::vector<std::vector<QuadElem>>() : dense_kernel(std::move(rows), dim);
  std::vector<SparseVec> hw;
  if (raising.empty()) {
    hw = sub.basis;  // rank one: no raising operators, everything is highest
  } else {
    for (const auto& x : kernel) {
      SparseVec v;
      for (size_t j = 0; j < dim; ++j) v = sv_axpy(v, x[j], sub.basis[j]);
      if (!v.is_zero()) hw.push_back(std::move(v));
    }
  }
  // split by torus character; kernel vectors decompose because the raising
  // operators are graded
  std::map<TorusChar, std::vector<SparseVec>> pieces;
  for (const auto& v : hw) {
    std::map<TorusChar, std::vector<std::pair<uint32_t, QuadElem>>> parts;
    for (const auto& [m, c] : v.terms) parts[sub.space.char_of_mask(m)].emplace_back(m, c);
    for (auto& [ch, terms] : parts) pieces[ch].push_back(sv_make(std::move(terms)));
  }
  for (auto& [ch, vecs] : pieces) {
    for (auto& v : echelon_basis(std::move(vecs))) out.emplace_back(std::move(v), ch);
  }
  return out;
}

bool galois_stable(const Subspace& sub) {
  for (const auto& b : sub.basis)
    if (!in_span(sub.basis, galois_apply(sub.space, b))) return false;
  return true;
}

std::vector<SparseVec> galois_fixed_basis(const Subspace& sub) {
  std::vector<SparseVec> out;
  if (sub.basis.empty()) return out;
  const size_t dim = sub.basis.size();
  const long d = sub.space.base.disc;
  // coordinates of the involution on the chosen basis
  std::vector<std::vector<QuadElem>> a(dim, std::vector<QuadElem>(dim));
  for (size_t i = 0; i < dim; ++i) {
    std::vector<QuadElem> coords;
    SparseVec res = reduce_against(sub.basis, galois_apply(sub.space, sub.basis[i]), &coords);
    if (!res.is_zero()) fail(errc::not_stable, "galois involution leaves the subspace");
    for (size_t j = 0; j < dim; ++j) a[j][i] = coords[j];
  }
  std::vector<std::vector<QuadElem>> fixed_coords;
  if (d == 0) {
    // rational model: the involution is linear; fixed points = ker(A - I)
    std::vector<std::vector<QuadElem>> rows(dim, std::vector<QuadElem>(dim));
    for (size_t i = 0; i < dim; ++i)
      for (size_t j = 0; j < dim; ++j) rows[i][j] = a[i][j] - QuadElem(i == j ? 1 : 0);
    for (const auto& x : dense_kernel(std::move(rows), dim)) fixed_coords.push_back(x);
  } else {
    // conj-linear descent: x = u + omega*w fixed iff A*conj(x) = x, i.e.
    // (A0 - I)u + d*A1*w = 0 and A1*u - (A0 + I)w = 0 over the rationals
    std::vector<std::vector<QuadElem>> rows(2 * dim, std::vector<QuadElem>(2 * dim));
    for (size_t i = 0; i < dim; ++i)
      for (size_t j = 0; j < dim; ++j) {
        QuadElem a0{a[i][j].x()}, a1{a[i][j].y()};
        rows[i][j] = a0 - QuadElem(i == j ? 1 : 0);
        rows[i][dim + j] = QuadElem(Rat(d)) * a1;
        rows[dim + i][j] = a1;
        rows[dim + i][dim + j] = -a0 - QuadElem(i == j ? 1 : 0);
      }
    QuadElem omega(Rat(0), Rat(1), d);
    for (const auto& x : dense_kernel(std::move(rows), 2 * dim)) {
      std::vector<QuadElem> z(dim);
      for (size_t j = 0; j < dim; ++j) z[j] = x[j] + omega * x[dim + j];
      fixed_coords.push_back(std::move(z));
    }
  }
  for (const auto& x : fixed_coords) {
    SparseVec v;
    for (size_t j = 0; j < dim; ++j) v = sv_axpy(v, x[j], sub.basis[j]);
    if (!v.is_zero()) out.push_back(std::move(v));
  }
  return out;
}

std::string dump_linmap(const LinMap& f) {
  std::vector<std::tuple<uint32_t, uint32_t, QuadElem>> entries;
  for (const auto& [col, vec] : f.cols)
    for (const auto& [row, c] : vec.terms) entries.emplace_back(row, col, c);
  std::sort(entries.begin(), entries.end(), [](const auto& a, const auto& b) {
    return std::tie(std::get<0>(a), std::get<1>(a)) < std::tie(std::get<0>(b), std::get<1>(b));
  });
  std::ostringstream os;
  os << "linmap case=" << weights::to_string(f.space.base.kind) << " g=" << f.space.base.g
     << " s=" << f.space.s << " disc=" << f.space.base.disc << " twist=" << f.twist
     << " entries=" << entries.size() << "\n";
  for (const auto& [row, col, c] : entries) {
    os << row << " " << col << " " << c.x().get_num().get_str() << " "
       << c.x().get_den().get_str();
    if (c.y() != 0)
      os << " " << c.y().get_num().get_str() << " " << c.y().get_den().get_str();
    os << "\n";
  }
  return os.str();
}

LinMap parse_linmap(const std::string& text, uint64_t cap) {
  std::istringstream is(text);
  std::string head;
  if (!std::getline(is, head)) fail(errc::invalid_argument, "parse_linmap: empty input");
  std::istringstream hs(head);
  std::string tag;
  hs >> tag;
  if (tag != "linmap") fail(errc::invalid_argument, "parse_linmap: missing header");
  std::map<std::string, std::string> kv;
  std::string tok;
  while (hs >> tok) {
    auto eq = tok.find('=');
    if (eq == std::string::npos) fail(errc::invalid_argument, "parse_linmap: bad header token");
    kv[tok.substr(0, eq)] = tok.substr(eq + 1);
  }
  for (const char* key : {"case", "g", "s", "disc", "twist", "entries"})
    if (!kv.count(key))
      fail(errc::invalid_argument, std::string("parse_linmap: header misses ") + key);
  int g = std::stoi(kv["g"]), s = std::stoi(kv["s"]);
  long disc = std::stol(kv["disc"]);
  BaseModule base;
  if (kv["case"] == "unitary")
    base = disc == 0 ? BaseModule::unitary_rational(g) : BaseModule::unitary(g, disc);
  else if (kv["case"] == "siegel")
    base = BaseModule::siegel(g);
  else
    fail(errc::invalid_argument, "parse_linmap: unknown case " + kv["case"]);
  ExteriorSpace sp = exterior_module(base, s, cap);
  LinMap out{sp, std::stoi(kv["twist"]), {}};
  size_t expect = std::stoul(kv["entries"]);
  std::map<uint32_t, std::vector<std::pair<uint32_t, QuadElem>>> cols;
  std::string line;
  size_t seen = 0;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    unsigned long row, col;
    std::string xn, xd;
    if (!(ls >> row >> col >> xn >> xd)) fail(errc::invalid_argument, "parse_linmap: bad entry");
    std::string yn, yd;
    Rat x = exactnum::make_rat(Int(xn), Int(xd)), y(0);
    if (ls >> yn) {
      if (!(ls >> yd)) fail(errc::invalid_argument, "parse_linmap: bad entry");
      y = exactnum::make_rat(Int(yn), Int(yd));
    }
    if (row >= sp.dim || col >= sp.dim)
      fail(errc::invalid_argument, "parse_linmap: index out of range");
    QuadElem c = y == 0 ? QuadElem(x) : QuadElem(x, y, disc);
    cols[uint32_t(col)].emplace_back(uint32_t(row), std::move(c));
    ++seen;
  }
  if (seen != expect) fail(errc::invalid_argument, "parse_linmap: entry count mismatch");
  for (auto& [col, terms] : cols) {
    SparseVec v = sv_make(std::move(terms));
    if (!v.is_zero()) out.cols.emplace(col, std::move(v));
  }
  return out;
}

}  // namespace weylcarve::repspace
