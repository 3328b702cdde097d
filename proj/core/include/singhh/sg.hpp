#pragma once

#include <stdexcept>
#include <string>

#include "singhh/gerstenhaber.hpp"

namespace singhh {

// Tower at degree i did not settle before the horizon p_max.
struct NotStabilized : std::runtime_error {
  long degree;
  unsigned p_max;
  NotStabilized(long i, unsigned pm)
      : std::runtime_error("tower at degree " + std::to_string(i) +
                           " not stabilized by stage " + std::to_string(pm)),
        degree(i), p_max(pm) {}
};

// A stabilized cohomology group: dimension, the stage where the dimension
// and transition map first settle, and representative cocycles at it.
template <class F>
struct SgGroup {
  long i = 0;
  unsigned stage = 0;
  std::uint32_t dim = 0;
  std::vector<Cochain<F>> reps;
};

template <class F>
struct SgClass {
  long i = 0;          // singular degree m - p of the representative
  Cochain<F> rep;      // cocycle at (i + stage, stage)
};

// Stabilization and tower machinery layered over a Cohomology cache.
// The structure map sends f at (m,p) to the (m+1,p+1)-cochain
//   (a_1,…,a_{m+1}) ↦ d(f(a_{1,m}) ⊗ a_{m+1} ⊗ 1),
// the cochain induced by the first syzygy-lift of f.  No extra sign: with
// the lift conventions used here this commutes with δ on the nose and is
// compatible with the products (see the unit tests).
template <class F>
class SgContext {
 public:
  explicit SgContext(Cohomology<F>& C) : C_(&C) {}

  Cohomology<F>& cohomology() { return *C_; }
  Workspace<F>& workspace() { return C_->workspace(); }

  // Structure map on flat cochain coordinates: (m,p) -> (m+1,p+1).
  const SparseMatrix<F>& stab_matrix(unsigned m, unsigned p) {
    auto key = std::make_pair(m, p);
    auto it = stabs_.find(key);
    if (it == stabs_.end())
      it = stabs_.emplace(key, build_stab(m, p)).first;
    return it->second;
  }

  Cochain<F> stabilize(const Cochain<F>& f) {
    auto& W = workspace();
    const F& K = W.field();
    auto v = stab_matrix(f.m, f.p).apply(K, cochain_flatten(K, f));
    return cochain_unflatten(K, f.m + 1, f.p + 1, W.syzygy(f.p + 1).dim(),
                             tensor_rank_size(W.setting().mid(), f.m + 1), v);
  }

  Cochain<F> stabilize(const Cochain<F>& f, unsigned times) {
    Cochain<F> g = f;
    for (unsigned k = 0; k < times; ++k) g = stabilize(g);
    return g;
  }

  // Coordinates of a cocycle's class in the representative basis at (m,p).
  SVec<F> class_coords(unsigned m, unsigned p, const SVec<F>& flat) {
    auto& red = reducer(m, p);
    auto sol = red.elim.solve(flat);
    if (!sol)
      throw std::logic_error("class_coords: vector is not a cocycle");
    SVec<F> out;
    for (auto& [ord, c] : *sol)
      if (ord >= red.n_cobound)
        out.emplace_back(std::uint32_t(ord - red.n_cobound), c);
    svec_normalize(workspace().field(), out);
    return out;
  }

  // Induced map HH^m(Ω^p) -> HH^{m+1}(Ω^{p+1}) in representative bases.
  const SparseMatrix<F>& transition(unsigned m, unsigned p) {
    auto key = std::make_pair(m, p);
    auto it = trans_.find(key);
    if (it != trans_.end()) return it->second;
    const F& K = workspace().field();
    auto reps = C_->representatives(m, p);
    const auto& St = stab_matrix(m, p);
    SparseMatrix<F> T(C_->hh_dim(m + 1, p + 1), std::uint32_t(reps.size()));
    for (std::uint32_t j = 0; j < reps.size(); ++j)
      T.set_col(j, class_coords(m + 1, p + 1,
                                St.apply(K, cochain_flatten(K, reps[j]))));
    return trans_.emplace(key, std::move(T)).first->second;
  }

  // Stabilized group at singular degree i: the first stage p0 with
  // m = i + p0 >= 1 where the dimension is constant across one structure
  // map and that map is bijective.
  SgGroup<F> group(long i, unsigned p_max) {
    unsigned start = (i >= 1) ? 0 : unsigned(1 - i);
    for (unsigned p0 = start; p0 + 1 <= p_max; ++p0) {
      unsigned m0 = unsigned(long(p0) + i);
      auto d0 = C_->hh_dim(m0, p0);
      auto d1 = C_->hh_dim(m0 + 1, p0 + 1);
      if (d0 != d1) continue;
      if (d0 != 0 && rank(workspace().field(), transition(m0, p0)) != d0)
        continue;
      SgGroup<F> g;
      g.i = i;
      g.stage = p0;
      g.dim = d0;
      g.reps = C_->representatives(m0, p0);
      return g;
    }
    throw NotStabilized(i, p_max);
  }

  // Class equality after aligning stages with the structure map.
  bool classes_equal(const SgClass<F>& a, const SgClass<F>& b) {
    if (a.i != b.i) return false;
    auto fa = a.rep, fb = b.rep;
    while (fa.p < fb.p) fa = stabilize(fa);
    while (fb.p < fa.p) fb = stabilize(fb);
    return C_->class_equal(fa, fb);
  }

 private:
  struct Reducer {
    ColElim<F> elim;
    std::uint32_t n_cobound = 0;
    Reducer(const F& K, std::uint32_t rows) : elim(K, rows) {}
  };

  SparseMatrix<F> build_stab(unsigned m, unsigned p) {
    auto& W = workspace();
    const F& K = W.field();
    const auto& S = W.setting();
    std::uint32_t d = S.d(), mid = S.mid();
    std::uint32_t w = W.syzygy(p).dim();
    std::uint32_t w2 = W.syzygy(p + 1).dim();
    const auto& B = W.syzygy(p).space().basis();
    TupleCodec out_codec = S.bar_codec(p + 1);
    const auto& unit = W.algebra().unit();

    // V[s]: syzygy-coordinate matrix of x ↦ d(x ⊗ s̄ ⊗ 1)
    std::vector<SparseMatrix<F>> V;
    for (std::uint32_t s = 0; s < mid; ++s) {
      SparseMatrix<F> E(std::uint32_t(out_codec.total()), w);
      for (std::uint32_t j = 0; j < w; ++j) {
        SVec<F> col;
        for (auto& [idx, c] : B.col(j)) {
          if (p == 0) {
            for (auto& [ub, uc] : unit)
              col.emplace_back(std::uint32_t((std::uint64_t(idx) * mid + s) * d + ub),
                               K.mul(c, uc));
          } else {
            std::uint64_t hm = idx / d, last = idx % d;
            auto cls = S.proj_mid(SVec<F>{{std::uint32_t(last), K.one()}});
            for (auto& [b, cb] : cls)
              for (auto& [ub, uc] : unit)
                col.emplace_back(
                    std::uint32_t((((hm * mid + b) * mid + s)) * d + ub),
                    K.mul(K.mul(c, cb), uc));
          }
        }
        svec_normalize(K, col);
        E.set_col(j, std::move(col));
      }
      auto M = W.differential(p + 1).mul(K, E);
      V.push_back(restrict_to(K, W.syzygy(p + 1).space(), M));
    }

    std::uint64_t tuples = tensor_rank_size(mid, m);
    SparseMatrix<F> St(std::uint32_t(tuples * mid * w2),
                       std::uint32_t(tuples * w));
    for (std::uint64_t u = 0; u < tuples; ++u)
      for (std::uint32_t i = 0; i < w; ++i) {
        SVec<F> col;
        for (std::uint32_t s = 0; s < mid; ++s)
          for (auto& [r, c] : V[s].col(i))
            col.emplace_back(std::uint32_t((u * mid + s) * w2 + r), c);
        St.set_col(std::uint32_t(u * w + i), std::move(col));
      }
    return St;
  }

  Reducer& reducer(unsigned m, unsigned p) {
    auto key = std::make_pair(m, p);
    auto it = reducers_.find(key);
    if (it != reducers_.end()) return it->second;
    const F& K = workspace().field();
    const auto& cob = C_->coboundaries(m, p);
    Reducer red(K, cob.ambient());
    for (std::uint32_t j = 0; j < cob.dim(); ++j)
      red.elim.insert(cob.basis().col(j), j);
    red.n_cobound = cob.dim();
    auto reps = C_->representatives(m, p);
    for (std::uint32_t j = 0; j < reps.size(); ++j)
      red.elim.insert(cochain_flatten(K, reps[j]), red.n_cobound + j);
    return reducers_.emplace(key, std::move(red)).first->second;
  }

  Cohomology<F>* C_;
  std::map<std::pair<unsigned, unsigned>, SparseMatrix<F>> stabs_;
  std::map<std::pair<unsigned, unsigned>, SparseMatrix<F>> trans_;
  std::map<std::pair<unsigned, unsigned>, Reducer> reducers_;
};

// Products on stabilized classes: take representatives at their stages and
// multiply; the result's stage is the sum of the input stages.
template <class F>
SgClass<F> sg_cup(SgContext<F>& ctx, const SgClass<F>& a, const SgClass<F>& b) {
  return SgClass<F>{a.i + b.i, cup(ctx.workspace(), a.rep, b.rep)};
}

template <class F>
SgClass<F> sg_bracket(SgContext<F>& ctx, const SgClass<F>& a,
                      const SgClass<F>& b) {
  return SgClass<F>{a.i + b.i - 1, bracket(ctx.workspace(), a.rep, b.rep)};
}

}  // namespace singhh
