#include <doctest.h>

#include "singhh/field.hpp"
#include "singhh/examples.hpp"
#include "singhh/io.hpp"

using namespace singhh;

TEST_CASE("example algebras validate") {
  PrimeField K(5);
  std::vector<Algebra<PrimeField>> all{
      examples::dual_numbers(K),      examples::truncated_poly3(K),
      examples::group_c2(K),          examples::k_times_k(K),
      examples::upper_triangular2(K), examples::mat2_dual(K)};
  for (const auto& A : all) {
    auto rep = A.validate();
    CHECK(rep.ok);
    CHECK(rep.violations.empty());
  }
}

TEST_CASE("validate flags a broken table") {
  PrimeField K(5);
  // x*x = 1 in a two-dimensional "algebra" whose unit row is wrong
  std::vector<std::vector<SVec<PrimeField>>> table(2,
      std::vector<SVec<PrimeField>>(2));
  table[0][0] = {{0u, 1u}};
  table[0][1] = {{1u, 1u}};
  table[1][0] = {{0u, 1u}};  // x*1 = 1: breaks unitality
  table[1][1] = {};
  Algebra<PrimeField> A(K, 2, {"1", "x"}, {{0u, 1u}}, table, "broken");
  auto rep = A.validate();
  CHECK_FALSE(rep.ok);
  CHECK_FALSE(rep.violations.empty());
}

TEST_CASE("multiplication in the truncated polynomial ring") {
  PrimeField K(7);
  auto A = examples::truncated_poly3(K);
  auto x = SVec<PrimeField>{{1u, 1u}};
  auto x2 = A.multiply(x, x);
  CHECK(x2 == SVec<PrimeField>{{2u, 1u}});
  CHECK(A.multiply(x2, x).empty());
}

TEST_CASE("centers") {
  PrimeField K(5);
  // commutative: center is everything
  CHECK(examples::dual_numbers(K).center().dim() == 2);
  // 2x2 upper triangular: center is the scalars
  auto Z = examples::upper_triangular2(K).center();
  CHECK(Z.dim() == 1);
  CHECK(Z.contains(examples::upper_triangular2(K).unit()));
  // matrix algebra over dual numbers: center = dual numbers
  CHECK(examples::mat2_dual(K).center().dim() == 2);
}

TEST_CASE("tuple codec round trip") {
  TupleCodec c({3, 5, 2});
  CHECK(c.total() == 30);
  for (std::uint64_t i = 0; i < 30; ++i)
    CHECK(c.encode(c.decode(i)) == i);
  // first factor is most significant
  CHECK(c.encode({1, 0, 0}) == 10);
  CHECK(c.encode({0, 0, 1}) == 1);
}

TEST_CASE("unit complement in k x k") {
  PrimeField K(5);
  auto A = examples::k_times_k(K);
  auto uc = unit_complement(A);
  const auto& F = K;
  for (std::uint32_t i = 0; i < 1; ++i) {
    auto back = uc.proj.apply(F, uc.section.col(i));
    CHECK(back == SVec<PrimeField>{{i, 1u}});
  }
  // unit maps to zero in the quotient
  CHECK(uc.proj.apply(F, A.unit()).empty());
}

TEST_CASE("algebra json round trip and hash stability") {
  PrimeField K(5);
  auto A = examples::upper_triangular2(K);
  nlohmann::json field = {{"kind", "Fp"}, {"p", 5}};
  auto j = algebra_json(A, field);
  auto B = parse_algebra(K, j);
  CHECK(B.dim() == A.dim());
  CHECK(B.unit() == A.unit());
  for (std::uint32_t i = 0; i < 3; ++i)
    for (std::uint32_t l = 0; l < 3; ++l)
      CHECK(B.basis_product(i, l) == A.basis_product(i, l));
  CHECK(algebra_hash(A, field) == algebra_hash(B, field));
}

TEST_CASE("malformed algebra input is rejected") {
  PrimeField K(5);
  nlohmann::json j = {{"dim", 2}, {"basis", {"1", "x"}}};
  CHECK_THROWS_AS(parse_algebra(K, j), BadInput);
  nlohmann::json bad_field = {{"kind", "Fp"}, {"p", 6}};
  CHECK_THROWS_AS(parse_field_desc(bad_field), BadInput);
}
