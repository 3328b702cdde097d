#include <doctest.h>

#include "singhh/field.hpp"
#include "singhh/examples.hpp"
#include "support.hpp"

using namespace singhh;
using testsupport::random_cochain;
using testsupport::random_cocycle;

namespace {

// inclusion of Bar_r(Ω^p) into the full tensor power: syzygy basis ⊗ id
template <class F>
SparseMatrix<F> subcomplex_inclusion(Workspace<F>& W, unsigned p,
                                     std::uint64_t tail) {
  const auto& B = W.syzygy(p).space().basis();
  SparseMatrix<F> incl(std::uint32_t(B.rows() * tail),
                       std::uint32_t(B.cols() * tail));
  for (std::uint32_t j = 0; j < B.cols(); ++j)
    for (std::uint64_t t = 0; t < tail; ++t) {
      SVec<F> c;
      for (auto& [i, v] : B.col(j))
        c.emplace_back(std::uint32_t(i * tail + t), v);
      incl.set_col(std::uint32_t(j * tail + t), c);
    }
  return incl;
}

}  // namespace

TEST_CASE("differential squares to zero, both variants") {
  PrimeField K(5);
  for (bool reduced : {false, true}) {
    for (auto A : {examples::dual_numbers(K), examples::upper_triangular2(K)}) {
      BarSetting<PrimeField> S(A, reduced);
      for (unsigned r = 1; r <= 4; ++r) {
        auto dd = bar_differential(S, r - 1).mul(K, bar_differential(S, r));
        CHECK(dd.is_zero());
      }
    }
  }
  Rationals Q;
  BarSetting<Rationals> S(examples::dual_numbers(Q), true);
  CHECK(bar_differential(S, 1).mul(Q, bar_differential(S, 2)).is_zero());
}

TEST_CASE("first syzygy of the dual numbers") {
  PrimeField K(5);
  auto A = examples::dual_numbers(K);
  Workspace<PrimeField> W(A, false);
  const auto& syz = W.syzygy(1);
  CHECK(syz.dim() == 2);
  // x⊗1 - 1⊗x and x⊗x span it (basis index 1 is x, codec: first slot high)
  SVec<PrimeField> v1{{1u, K.neg(1)}, {2u, 1u}};  // -1⊗x + x⊗1
  SVec<PrimeField> v2{{3u, 1u}};                  // x⊗x
  CHECK(syz.space().contains(v1));
  CHECK(syz.space().contains(v2));
  // and it equals the kernel of the multiplication map
  auto ker = Subspace<PrimeField>::image(K, kernel(K, W.differential(0)));
  CHECK(syz.space().equals(ker));
}

TEST_CASE("syzygy dimensions") {
  PrimeField K(5);
  {
    Workspace<PrimeField> W(examples::k_times_k(K), false);
    CHECK(W.syzygy(1).dim() == 2);
  }
  {
    // reduced middle slots shrink the ambient spaces but exactness pins
    // the ranks: dim Ω² = dim Bar₁ − rank d₁ = 4 − 2
    Workspace<PrimeField> W(examples::k_times_k(K), true);
    CHECK(W.syzygy(1).dim() == 2);
    CHECK(W.syzygy(2).dim() == 2);
  }
}

TEST_CASE("exactness of the resolution in low degrees") {
  PrimeField K(5);
  for (bool reduced : {false, true}) {
    Workspace<PrimeField> W(examples::dual_numbers(K), reduced);
    for (unsigned r = 1; r <= 3; ++r) {
      auto im = Subspace<PrimeField>::image(K, W.differential(r + 1));
      auto ker = Subspace<PrimeField>::image(K, kernel(K, W.differential(r)));
      CHECK(im.equals(ker));
    }
  }
}

TEST_CASE("contracting homotopy over a syzygy") {
  PrimeField K(5);
  for (auto A :
       {examples::dual_numbers(K), examples::upper_triangular2(K)}) {
    Workspace<PrimeField> W(A, false);
    for (unsigned p = 0; p <= 2; ++p) {
      for (unsigned r = 0; r <= 2; ++r) {
        auto ds = W.differential(p + r + 1).mul(K, homotopy_sp(A, p, r));
        auto sd = (r > 0)
                      ? homotopy_sp(A, p, r - 1).mul(K, W.differential(p + r))
                      : homotopy_sp_base(A, p).mul(K, W.differential(p + r));
        auto incl = subcomplex_inclusion(W, p,
                                         tensor_rank_size(A.dim(), r + 1));
        CHECK(ds.add(K, sd).mul(K, incl).eq(K, incl));
      }
    }
  }
}

TEST_CASE("lifts are chain maps for cocycles") {
  PrimeField K(5);
  auto A = examples::truncated_poly3(K);
  Workspace<PrimeField> W(A, false);
  Cohomology<PrimeField> C(W);
  SplitMix64 rng(42);
  for (auto [m, p] : std::vector<std::pair<unsigned, unsigned>>{
           {1, 0}, {2, 1}, {2, 0}, {3, 1}}) {
    auto f = random_cocycle(C, m, p, rng);
    for (int v = 1; v <= 2; ++v)
      for (unsigned r = 0; r <= 2; ++r) {
        auto lhs = lift_theta(W, f, v, r).mul(K, W.differential(m + r + 1));
        auto rhs = W.differential(p + r + 1).mul(K, lift_theta(W, f, v, r + 1));
        // the two lifts anticommute with the differential
        CHECK(lhs.eq(K, rhs.scale(K, K.neg(K.one()))));
      }
  }
}

TEST_CASE("the two lifts differ by an explicit homotopy") {
  PrimeField K(5);
  SplitMix64 rng(17);
  for (auto A : {examples::truncated_poly3(K), examples::dual_numbers(K)}) {
    Workspace<PrimeField> W(A, false);
    Cohomology<PrimeField> C(W);
    for (auto [m, p] : std::vector<std::pair<unsigned, unsigned>>{
             {1, 0}, {2, 1}, {3, 1}, {2, 0}, {3, 2}}) {
      auto f = random_cocycle(C, m, p, rng);
      for (unsigned r = 0; r <= 2; ++r) {
        auto diff = lift_theta(W, f, 1, r).sub(K, lift_theta(W, f, 2, r));
        auto rhs = W.differential(p + r + 1)
                       .mul(K, chain_homotopy_sf(W, f, r))
                       .scale(K, K.neg(K.one()));
        if (r > 0)
          rhs = rhs.add(K, chain_homotopy_sf(W, f, r - 1)
                              .mul(K, W.differential(m + r)));
        CHECK(diff.eq(K, rhs));
      }
    }
  }
}

TEST_CASE("syzygy-valued lifts agree up to coboundary") {
  PrimeField K(5);
  auto A = examples::dual_numbers(K);
  Workspace<PrimeField> W(A, false);
  Cohomology<PrimeField> C(W);
  SplitMix64 rng(23);
  for (auto [m, p] : std::vector<std::pair<unsigned, unsigned>>{
           {1, 0}, {2, 1}, {2, 0}}) {
    auto f = random_cocycle(C, m, p, rng);
    for (unsigned r = 1; r <= 2; ++r) {
      auto L1 = omega_lift(W, f, r, 1);
      auto L2 = omega_lift(W, f, r, 2);
      // both land in Ω^{p+r}-coordinates on the same source
      CHECK(L1.rows() == W.syzygy(p + r).dim());
      CHECK(L1.cols() == L2.cols());
      // induced cochains: plug the unit into the outer slots
      std::uint64_t d = A.dim();
      std::uint64_t dm = tensor_rank_size(d, m + r);
      auto induce = [&](const SparseMatrix<PrimeField>& L) {
        return build_matrix<PrimeField>(
            K, L.rows(), dm, [&](std::uint64_t u) {
              SVec<PrimeField> out;
              for (auto& [b1, c1] : A.unit())
                for (auto& [b2, c2] : A.unit()) {
                  std::uint64_t col = (b1 * dm + u) * d + b2;
                  for (auto& [i, v] : L.col(std::uint32_t(col)))
                    out.emplace_back(i, K.mul(K.mul(c1, c2), v));
                }
              svec_normalize(K, out);
              return out;
            });
      };
      Cochain<PrimeField> c1{m + r, p + r, induce(L1)};
      Cochain<PrimeField> c2{m + r, p + r, induce(L2)};
      CHECK(C.is_cocycle(c1));
      CHECK(C.is_cocycle(c2));
      CHECK(C.class_equal(c1, c2));
    }
  }
}

TEST_CASE("coproduct blocks collapse back to the identity") {
  PrimeField K(5);
  auto A = examples::dual_numbers(K);
  std::uint64_t d = A.dim();
  unsigned p = 1, q = 1, r = 2;
  auto D = delta_pq(A, p, q, r);
  std::uint64_t n_in = tensor_rank_size(d, p + q + r + 2);
  std::uint64_t n_blk = tensor_rank_size(d, p + q + r + 3);
  // block i inserts a unit slot after position p+i+1; multiplying it back
  // into its left neighbour recovers the input tuple
  for (unsigned i = 0; i <= r; ++i) {
    auto mult = build_matrix<PrimeField>(
        K, n_in, n_blk, [&](std::uint64_t col) {
          std::uint64_t tail_size = tensor_rank_size(d, q + r - i + 1);
          std::uint64_t tail = col % tail_size;
          std::uint64_t b = (col / tail_size) % d;
          std::uint64_t head = col / (tail_size * d);
          std::uint64_t prev = head % d;
          SVec<PrimeField> out;
          for (auto& [u, c] : A.basis_product(std::uint32_t(prev),
                                              std::uint32_t(b)))
            out.emplace_back(
                std::uint32_t(((head / d) * d + u) * tail_size + tail), c);
          return out;
        });
    SparseMatrix<PrimeField> blk{std::uint32_t(n_blk), std::uint32_t(n_in)};
    for (std::uint32_t j = 0; j < n_in; ++j) {
      SVec<PrimeField> c;
      for (auto& [row, v] : D.col(j))
        if (row >= i * n_blk && row < (i + 1) * n_blk)
          c.emplace_back(std::uint32_t(row - i * n_blk), v);
      blk.set_col(j, std::move(c));
    }
    CHECK(mult.mul(K, blk).eq(K, SparseMatrix<PrimeField>::identity(
                                     K, std::uint32_t(n_in))));
  }
}
