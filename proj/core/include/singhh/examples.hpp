#pragma once

#include "singhh/algebra.hpp"

namespace singhh {

// Stock algebras used across tests and demos.
namespace examples {

template <class F>
Algebra<F> dual_numbers(const F& K) {
  // k[x]/(x^2), basis {1, x}
  std::vector<std::vector<SVec<F>>> t(2, std::vector<SVec<F>>(2));
  t[0][0] = {{0, K.one()}};
  t[0][1] = {{1, K.one()}};
  t[1][0] = {{1, K.one()}};
  t[1][1] = {};
  return Algebra<F>(K, 2, {"1", "x"}, {{0, K.one()}}, std::move(t),
                    "dual-numbers");
}

template <class F>
Algebra<F> truncated_poly3(const F& K) {
  // k[x]/(x^3), basis {1, x, x^2}
  std::vector<std::vector<SVec<F>>> t(3, std::vector<SVec<F>>(3));
  for (std::uint32_t i = 0; i < 3; ++i)
    for (std::uint32_t j = 0; j < 3; ++j)
      if (i + j < 3) t[i][j] = {{i + j, K.one()}};
  return Algebra<F>(K, 3, {"1", "x", "x2"}, {{0, K.one()}}, std::move(t),
                    "trunc-poly-3");
}

template <class F>
Algebra<F> group_c2(const F& K) {
  // group algebra of C2, basis {1, g}, g^2 = 1
  std::vector<std::vector<SVec<F>>> t(2, std::vector<SVec<F>>(2));
  t[0][0] = {{0, K.one()}};
  t[0][1] = {{1, K.one()}};
  t[1][0] = {{1, K.one()}};
  t[1][1] = {{0, K.one()}};
  return Algebra<F>(K, 2, {"1", "g"}, {{0, K.one()}}, std::move(t), "kC2");
}

template <class F>
Algebra<F> k_times_k(const F& K) {
  // k x k, orthogonal idempotents
  std::vector<std::vector<SVec<F>>> t(2, std::vector<SVec<F>>(2));
  t[0][0] = {{0, K.one()}};
  t[1][1] = {{1, K.one()}};
  return Algebra<F>(K, 2, {"e1", "e2"}, {{0, K.one()}, {1, K.one()}},
                    std::move(t), "k-x-k");
}

template <class F>
Algebra<F> upper_triangular2(const F& K) {
  // 2x2 upper triangular matrices, basis {E11, E22, E12}
  std::vector<std::vector<SVec<F>>> t(3, std::vector<SVec<F>>(3));
  t[0][0] = {{0, K.one()}};
  t[1][1] = {{1, K.one()}};
  t[0][2] = {{2, K.one()}};
  t[2][1] = {{2, K.one()}};
  return Algebra<F>(K, 3, {"E11", "E22", "E12"},
                    {{0, K.one()}, {1, K.one()}}, std::move(t), "upper-tri-2");
}

template <class F>
Algebra<F> mat2_dual(const F& K) {
  // 2x2 matrices over k[x]/(x^2): basis E_ij x^s, index = ((i*2+j)*2+s)
  auto idx = [](std::uint32_t i, std::uint32_t j, std::uint32_t s) {
    return (i * 2 + j) * 2 + s;
  };
  std::vector<std::vector<SVec<F>>> t(8, std::vector<SVec<F>>(8));
  for (std::uint32_t i = 0; i < 2; ++i)
    for (std::uint32_t j = 0; j < 2; ++j)
      for (std::uint32_t s = 0; s < 2; ++s)
        for (std::uint32_t k = 0; k < 2; ++k)
          for (std::uint32_t l = 0; l < 2; ++l)
            for (std::uint32_t u = 0; u < 2; ++u)
              if (j == k && s + u < 2)
                t[idx(i, j, s)][idx(k, l, u)] = {{idx(i, l, s + u), K.one()}};
  std::vector<std::string> labels = {"E11",  "E11x", "E12",  "E12x",
                                     "E21",  "E21x", "E22",  "E22x"};
  return Algebra<F>(K, 8, labels, {{idx(0, 0, 0), K.one()}, {idx(1, 1, 0), K.one()}},
                    std::move(t), "mat2-dual");
}

}  // namespace examples
}  // namespace singhh
