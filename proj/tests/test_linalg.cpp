#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "weylcarve/linalg.hpp"

using namespace weylcarve;
using namespace weylcarve::linalg;
using exactnum::make_rat;
using exactnum::QuadElem;
using exactnum::Rat;

namespace {

QuadElem q(long v) { return QuadElem(v); }
QuadElem qi(long x, long y, long d) { return QuadElem(Rat(x), Rat(y), d); }

// deterministic small pseudo-random stream
struct Lcg {
  uint64_t state;
  long next(long lo, long hi) {
    state = state * 6364136223846793005ULL + 1442695040888963407ULL;
    return lo + long((state >> 33) % uint64_t(hi - lo + 1));
  }
};

}  // namespace

TEST_CASE("sparse vector helpers") {
  SparseVec v = sv_make({{3, q(2)}, {1, q(1)}, {3, q(-2)}, {5, q(4)}});
  CHECK(v.terms.size() == 2);  // index 3 cancels
  CHECK(sv_coeff(v, 1) == q(1));
  CHECK(sv_coeff(v, 3) == q(0));
  CHECK(sv_coeff(v, 5) == q(4));

  SparseVec w = sv_make({{1, q(-1)}, {2, q(7)}});
  CHECK(sv_add(v, w) == sv_make({{2, q(7)}, {5, q(4)}}));
  CHECK(sv_sub(v, v).is_zero());
  CHECK(sv_scale(q(0), v).is_zero());
  CHECK(sv_axpy(v, q(2), w) == sv_make({{1, q(-1)}, {2, q(14)}, {5, q(4)}}));
}

TEST_CASE("echelon basis is canonical") {
  SparseVec a = sv_make({{0, q(2)}, {1, q(2)}});
  SparseVec b = sv_make({{1, q(3)}});
  SparseVec c = sv_make({{0, q(1)}, {1, q(4)}});  // dependent on a, b
  auto basis = echelon_basis({a, b, c});
  REQUIRE(basis.size() == 2);
  CHECK(basis[0] == sv_make({{0, q(1)}}));
  CHECK(basis[1] == sv_make({{1, q(1)}}));

  // input order does not matter
  auto basis2 = echelon_basis({c, a, b});
  CHECK(basis == basis2);
  auto basis3 = echelon_basis({b, c, a, a, c});
  CHECK(basis == basis3);

  CHECK(in_span(basis, sv_make({{0, q(5)}, {1, q(-7)}})));
  CHECK_FALSE(in_span(basis, sv_make({{2, q(1)}})));
}

TEST_CASE("reduction returns coordinates") {
  SparseVec b0 = sv_make({{0, q(1)}, {2, q(1)}});
  SparseVec b1 = sv_make({{1, q(1)}, {2, q(-1)}});
  auto basis = echelon_basis({b0, b1});
  SparseVec v = sv_add(sv_scale(q(3), basis[0]), sv_scale(q(-2), basis[1]));
  std::vector<QuadElem> coords;
  SparseVec res = reduce_against(basis, v, &coords);
  CHECK(res.is_zero());
  REQUIRE(coords.size() == 2);
  CHECK(coords[0] == q(3));
  CHECK(coords[1] == q(-2));
}

TEST_CASE("dense kernel: pinned system") {
  // x + y + z = 0, x - z = 0  =>  kernel spanned by (1, -2, 1)
  std::vector<std::vector<QuadElem>> rows = {{q(1), q(1), q(1)}, {q(1), q(0), q(-1)}};
  auto k = dense_kernel(rows, 3);
  REQUIRE(k.size() == 1);
  CHECK(k[0][0] == q(1));
  CHECK(k[0][1] == q(-2));
  CHECK(k[0][2] == q(1));
}

TEST_CASE("rank: echelon and bareiss agree on deterministic samples") {
  Lcg rng{20260814};
  for (int trial = 0; trial < 12; ++trial) {
    const size_t nr = 4 + trial % 3, nc = 3 + trial % 4;
    const long d = (trial % 2) ? 3 : 1;
    std::vector<std::vector<QuadElem>> mat(nr, std::vector<QuadElem>(nc));
    std::vector<SparseVec> cols(nc);
    for (size_t r = 0; r < nr; ++r)
      for (size_t c = 0; c < nc; ++c) {
        QuadElem e = trial % 3 == 0
                         ? QuadElem(make_rat(rng.next(-4, 4), rng.next(1, 3)))
                         : qi(rng.next(-3, 3), rng.next(-2, 2), d);
        mat[r][c] = e;
        if (!e.is_zero()) cols[c].terms.emplace_back(uint32_t(r), e);
      }
    // plant a dependency: last column = first + second
    if (nc >= 3)
      for (size_t r = 0; r < nr; ++r) {
        mat[r][nc - 1] = mat[r][0] + mat[r][1];
        cols[nc - 1] = sv_add(cols[0], cols[1]);
      }
    long rank_a = long(echelon_basis(cols).size());
    long rank_b = bareiss_rank(mat);
    CHECK(rank_a == rank_b);
    if (nc >= 3) CHECK(rank_a < long(nc));

    // rank-nullity against the kernel solver
    auto kernel = dense_kernel(mat, nc);
    CHECK(long(kernel.size()) == long(nc) - rank_b);
    for (const auto& x : kernel)
      for (size_t r = 0; r < nr; ++r) {
        QuadElem acc;
        for (size_t c = 0; c < nc; ++c) acc += mat[r][c] * x[c];
        CHECK(acc.is_zero());
      }
  }
}

TEST_CASE("bareiss handles denominators and known ranks") {
  std::vector<std::vector<QuadElem>> m = {
      {QuadElem(make_rat(1, 2)), q(1)},
      {q(1), q(2)},
  };  // second row = 2 * first
  CHECK(bareiss_rank(m) == 1);
  std::vector<std::vector<QuadElem>> id3 = {
      {q(1), q(0), q(0)}, {q(0), q(1), q(0)}, {q(0), q(0), q(1)}};
  CHECK(bareiss_rank(id3) == 3);
  std::vector<std::vector<QuadElem>> zero = {{q(0), q(0)}, {q(0), q(0)}};
  CHECK(bareiss_rank(zero) == 0);
  // quadratic entries: [1, i; i, -1] has rank 1 over Q(i)
  std::vector<std::vector<QuadElem>> ci = {{q(1), qi(0, 1, 1)}, {qi(0, 1, 1), q(-1)}};
  CHECK(bareiss_rank(ci) == 1);
}
