#pragma once
#include "singhh/field.hpp"

#include "singhh/gerstenhaber.hpp"
#include "singhh/util.hpp"

namespace testsupport {

using namespace singhh;

// random element of the cocycle space at (m,p), coefficients from rng
template <class F>
Cochain<F> random_cocycle(Cohomology<F>& C, unsigned m, unsigned p,
                          SplitMix64& rng) {
  auto& W = C.workspace();
  const F& K = W.field();
  auto ker = kernel(K, C.delta(m, p));
  SVec<F> v;
  for (std::uint32_t j = 0; j < ker.cols(); ++j) {
    auto c = K.from_long(long(rng.below(5)));
    if (!K.is_zero(c)) v = svec_axpy(K, v, c, ker.col(j));
  }
  return cochain_unflatten(K, m, p, W.syzygy(p).dim(),
                           tensor_rank_size(W.setting().mid(), m), v);
}

// random cochain (no cocycle condition)
template <class F>
Cochain<F> random_cochain(Workspace<F>& W, unsigned m, unsigned p,
                          SplitMix64& rng) {
  const F& K = W.field();
  std::uint32_t w = W.syzygy(p).dim();
  std::uint64_t cols = tensor_rank_size(W.setting().mid(), m);
  Cochain<F> f{m, p, SparseMatrix<F>(w, std::uint32_t(cols))};
  for (std::uint32_t j = 0; j < cols; ++j) {
    SVec<F> c;
    for (std::uint32_t i = 0; i < w; ++i) {
      auto v = K.from_long(long(rng.below(5)));
      if (!K.is_zero(v)) c.emplace_back(i, v);
    }
    f.mat.set_col(j, std::move(c));
  }
  return f;
}

}  // namespace testsupport
