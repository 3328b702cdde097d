#include <doctest.h>

#include "singhh/field.hpp"
#include "singhh/linalg.hpp"

using namespace singhh;

namespace {

template <class F>
SparseMatrix<F> from_dense(const F& K,
                           const std::vector<std::vector<long>>& rows) {
  std::uint32_t m = std::uint32_t(rows.size());
  std::uint32_t n = m ? std::uint32_t(rows[0].size()) : 0;
  SparseMatrix<F> M(m, n);
  for (std::uint32_t j = 0; j < n; ++j) {
    SVec<F> c;
    for (std::uint32_t i = 0; i < m; ++i) {
      auto v = K.from_long(rows[i][j]);
      if (!K.is_zero(v)) c.emplace_back(i, v);
    }
    M.set_col(j, c);
  }
  return M;
}

}  // namespace

TEST_CASE("prime field arithmetic") {
  PrimeField K(5);
  CHECK(K.add(3, 4) == 2);
  CHECK(K.sub(1, 3) == 3);
  CHECK(K.mul(3, 4) == 2);
  CHECK(K.inv(2) == 3);
  CHECK(K.neg(0) == 0);
  CHECK(K.from_long(-7) == 3);
  CHECK(K.parse("3/2") == K.mul(3, K.inv(2)));
}

TEST_CASE("rational field arithmetic") {
  RationalsCtx K;
  auto half = K.div(K.one(), K.from_long(2));
  CHECK(K.to_string(half) == "1/2");
  CHECK(K.eq(K.parse("2/4"), half));
  CHECK(K.to_string(K.from_long(-3)) == "-3");
}

TEST_CASE("rank kernel image over Q") {
  RationalsCtx K;
  // rank 2 matrix, kernel dim 1
  auto M = from_dense(K, {{1, 2, 3}, {2, 4, 6}, {0, 1, 1}});
  CHECK(rank(K, M) == 2);
  auto ker = kernel(K, M);
  CHECK(ker.cols() == 1);
  CHECK(M.mul(K, ker).is_zero());

  auto S = Subspace<RationalsCtx>::image(K, M);
  CHECK(S.dim() == 2);
  // basis = pivot columns 0 and 1
  CHECK(svec_eq(K, S.basis().col(0), M.col(0)));
  CHECK(svec_eq(K, S.basis().col(1), M.col(1)));
  CHECK(S.contains(M.col(2)));
  auto c = S.to_coords(M.col(2));
  REQUIRE(c.has_value());
  CHECK(svec_eq(K, S.from_coords(*c), M.col(2)));
  CHECK_FALSE(S.contains({{0, K.one()}}));
}

TEST_CASE("solve and quotient over F7") {
  PrimeField K(7);
  auto M = from_dense(K, {{1, 2}, {3, 4}, {0, 0}});
  auto B = from_dense(K, {{3}, {7}, {0}});
  auto X = solve(K, M, B);
  REQUIRE(X.has_value());
  CHECK(M.mul(K, *X).eq(K, B));
  auto bad = from_dense(K, {{0}, {0}, {1}});
  CHECK_FALSE(solve(K, M, bad).has_value());

  auto S = Subspace<PrimeField>::image(K, M);
  auto Q = quotient(K, S);
  CHECK(Q.complement.cols() == 1);
  // projector idempotent, kills S, section splits
  CHECK(Q.projector.mul(K, Q.projector).eq(K, Q.projector));
  for (std::uint32_t j = 0; j < S.dim(); ++j)
    CHECK(Q.projector.apply(K, S.basis().col(j)).empty());
  auto qi = Q.to_quotient.mul(K, Q.complement);
  CHECK(qi.eq(K, SparseMatrix<PrimeField>::identity(K, 1)));
}

TEST_CASE("restrict_to round trip") {
  RationalsCtx K;
  auto M = from_dense(K, {{1, 0}, {0, 2}, {1, 2}});
  auto S = Subspace<RationalsCtx>::image(K, M);
  // map sending e1 -> col0+col1
  SparseMatrix<RationalsCtx> f(3, 1);
  f.set_col(0, svec_add(K, M.col(0), M.col(1)));
  auto r = restrict_to(K, S, f);
  CHECK(r.rows() == 2);
  CHECK(svec_eq(K, S.from_coords(r.col(0)), f.col(0)));
}
