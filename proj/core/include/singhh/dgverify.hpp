#pragma once

#include <algorithm>
#include <array>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "singhh/dg.hpp"
#include "singhh/gerstenhaber.hpp"

namespace singhh {

// A complex assembled strand by strand, keeping the block-level description
// (pieces and arrows) next to the assembled matrices so that later
// constructions (maps, homotopies, tensor products) can address blocks.
template <class F>
struct DgBuilt {
  using Key = std::pair<int, int>;  // (strand, degree)

  struct Arrow {
    Key from, to;
    SparseMatrix<F> M;
  };
  struct ActArrow {
    int act;
    Key from, to;
    SparseMatrix<F> M;
  };

  DgModule<F> mod;
  std::map<Key, PieceRef> piece;
  std::map<Key, int> blk;
  std::vector<Arrow> arrows;
  std::vector<int> act_degs;
  std::vector<ActArrow> act_arrows;

  bool has(int s, int t) const { return piece.count({s, t}) != 0; }
  int id(int s, int t) const { return blk.at({s, t}); }
};

template <class F>
void dg_finalize(Workspace<F>& W, DgBuilt<F>& B, int top) {
  Assembler<F> a(W.field(), top);
  for (auto& [k, pc] : B.piece) B.blk[k] = a.add_block(k.second, piece_dim(W, pc));
  for (auto& ar : B.arrows)
    a.d_entry(B.blk.at(ar.from), B.blk.at(ar.to), ar.M);
  for (int deg : B.act_degs) a.add_action(deg);
  for (auto& ar : B.act_arrows)
    a.act_entry(ar.act, B.blk.at(ar.from), B.blk.at(ar.to), ar.M);
  B.mod = a.build();
}

// Plain bar strand.
template <class F>
DgBuilt<F> bar_module(Workspace<F>& W, int top) {
  DgBuilt<F> B;
  for (int t = 0; t <= top; ++t) {
    B.piece.insert({{0, t}, PieceRef::tensor(unsigned(t) + 2)});
    if (t >= 1) B.arrows.push_back({{0, t}, {0, t - 1}, W.differential(unsigned(t))});
  }
  dg_finalize(W, B, top);
  return B;
}

// The algebra itself, concentrated in degree 0 (unit for the balanced
// tensor product).
template <class F>
DgBuilt<F> unit_module(Workspace<F>& W, int top) {
  DgBuilt<F> B;
  B.piece.insert({{0, 0}, PieceRef::tensor(1)});
  dg_finalize(W, B, top);
  return B;
}

enum class ConeKind { Value, FirstLift, SecondLift };

// Strand 0: bar resolution.  Strand 1: for Value the syzygy socle in degree
// m-1; for the lifted kinds the truncated bar strand of the syzygy, i.e. the
// ambient tensor powers above the syzygy, with the ambient differential.
// One generator action of degree m-p-1: the canonical projection (into the
// socle) respectively the identity comparison (into the lifted strand).
template <class F>
DgBuilt<F> cone_module(Workspace<F>& W, const Cochain<F>& f, ConeKind kind,
                       int top) {
  const F& K = W.field();
  int m = int(f.m), p = int(f.p);
  if (top < m + 1)
    throw WindowTooSmall("window must reach past the cochain degree");
  DgBuilt<F> B;
  for (int t = 0; t <= top; ++t) {
    B.piece.insert({{0, t}, PieceRef::tensor(unsigned(t) + 2)});
    if (t >= 1) B.arrows.push_back({{0, t}, {0, t - 1}, W.differential(unsigned(t))});
  }
  int w = m - p - 1;
  B.act_degs.push_back(w);
  if (kind == ConeKind::Value) {
    B.piece.insert({{1, m - 1}, PieceRef::syz(unsigned(p))});
    if (m <= top)
      B.arrows.push_back({{0, m}, {1, m - 1}, ext_cochain(W, f)});
    if (p + w <= top)
      B.act_arrows.push_back({0, {0, p}, {1, m - 1}, syzygy_proj(W, unsigned(p))});
  } else {
    int variant = (kind == ConeKind::FirstLift) ? 1 : 2;
    for (int t = m - 1; t <= top; ++t) {
      B.piece.insert({{1, t}, PieceRef::tensor(unsigned(p + t - m + 3))});
      if (t >= m) {
        B.arrows.push_back(
            {{1, t}, {1, t - 1}, W.differential(unsigned(p + t - m + 1))});
        B.arrows.push_back(
            {{0, t}, {1, t - 1}, lift_theta(W, f, variant, unsigned(t - m))});
      }
    }
    for (int t = p; t + w <= top; ++t)
      B.act_arrows.push_back(
          {0,
           {0, t},
           {1, t + w},
           SparseMatrix<F>::identity(
               K, piece_dim(W, PieceRef::tensor(unsigned(t) + 2)))});
  }
  dg_finalize(W, B, top);
  return B;
}

// The three comparison complexes for a pair of cocycles.  Strands:
//   0 bar, 1 lift along f, 2 lift along g, 3 the merged strand
// (full lifted strand for kind 1, syzygy socle for kinds 2 and 3).
template <class F>
DgBuilt<F> pair_complex(Workspace<F>& W, const Cochain<F>& f,
                        const Cochain<F>& g, int which, int top) {
  const F& K = W.field();
  int m = int(f.m), p = int(f.p), n = int(g.m), q = int(g.p);
  int w1 = m - p - 1, w2 = n - q - 1;
  if (top < m + n)
    throw WindowTooSmall("window must reach past the combined degree");
  DgBuilt<F> B;
  auto ident = [&](int slots) {
    return SparseMatrix<F>::identity(K,
                                     piece_dim(W, PieceRef::tensor(unsigned(slots))));
  };
  for (int t = 0; t <= top; ++t) {
    B.piece.insert({{0, t}, PieceRef::tensor(unsigned(t) + 2)});
    if (t >= 1) B.arrows.push_back({{0, t}, {0, t - 1}, W.differential(unsigned(t))});
  }
  for (int t = m - 1; t <= top; ++t) {
    B.piece.insert({{1, t}, PieceRef::tensor(unsigned(p + t - m + 3))});
    if (t >= m) {
      B.arrows.push_back(
          {{1, t}, {1, t - 1}, W.differential(unsigned(p + t - m + 1))});
      B.arrows.push_back(
          {{0, t}, {1, t - 1}, lift_theta(W, f, 1, unsigned(t - m))});
    }
  }
  int gvar = (which == 3) ? 1 : 2;
  for (int t = n - 1; t <= top; ++t) {
    B.piece.insert({{2, t}, PieceRef::tensor(unsigned(q + t - n + 3))});
    if (t >= n) {
      B.arrows.push_back(
          {{2, t}, {2, t - 1}, W.differential(unsigned(q + t - n + 1))});
      B.arrows.push_back(
          {{0, t}, {2, t - 1}, lift_theta(W, g, gvar, unsigned(t - n))});
    }
  }
  // Arrows into the merged strand.  The relative sign between the two paths
  // through strands 1 and 2 is forced by the square-zero check.
  auto arrow_1to3 = [&](int t) {  // source degree t, valid for t >= m+n-1
    return lift_theta(W, g, 2, unsigned(p + t - m + 1 - n));
  };
  auto arrow_2to3 = [&](int t) {
    int var = (which == 3) ? 2 : 1;
    return lift_theta(W, f, var, unsigned(q + t - n + 1 - m));
  };
  if (which == 1) {
    for (int t = m + n - 2; t <= top; ++t) {
      B.piece.insert({{3, t}, PieceRef::tensor(unsigned(p + q + t - m - n + 4))});
      if (t > m + n - 2)
        B.arrows.push_back(
            {{3, t}, {3, t - 1}, W.differential(unsigned(p + q + t - m - n + 2))});
    }
    for (int t = m + n - 1; t <= top; ++t) {
      B.arrows.push_back({{1, t}, {3, t - 1}, arrow_1to3(t)});
      B.arrows.push_back({{2, t}, {3, t - 1}, arrow_2to3(t)});
    }
  } else {
    auto sig = syzygy_proj(W, unsigned(p + q));
    B.piece.insert({{3, m + n - 2}, PieceRef::syz(unsigned(p + q))});
    if (m + n - 1 <= top) {
      B.arrows.push_back(
          {{1, m + n - 1}, {3, m + n - 2}, sig.mul(K, arrow_1to3(m + n - 1))});
      B.arrows.push_back(
          {{2, m + n - 1}, {3, m + n - 2}, sig.mul(K, arrow_2to3(m + n - 1))});
      if (which == 3)
        B.arrows.push_back({{0, m + n - 1},
                            {3, m + n - 2},
                            ext_cochain(W, bullet(W, f, g))});
    }
  }
  // Generator actions: comparison maps of degrees m-p-1 and n-q-1.
  B.act_degs.push_back(w1);
  B.act_degs.push_back(w2);
  auto sig = syzygy_proj(W, unsigned(p + q));
  for (int t = p; t + w1 <= top; ++t)
    B.act_arrows.push_back({0, {0, t}, {1, t + w1}, ident(t + 2)});
  for (int t = q; t + w2 <= top; ++t)
    B.act_arrows.push_back({1, {0, t}, {2, t + w2}, ident(t + 2)});
  if (which == 1) {
    for (int t = n + p - 1; t + w1 <= top; ++t)
      B.act_arrows.push_back({0, {2, t}, {3, t + w1}, ident(q + t - n + 3)});
    for (int t = m + q - 1; t + w2 <= top; ++t)
      B.act_arrows.push_back({1, {1, t}, {3, t + w2}, ident(p + t - m + 3)});
  } else {
    B.act_arrows.push_back({0, {2, n + p - 1}, {3, m + n - 2}, sig});
    B.act_arrows.push_back({1, {1, m + q - 1}, {3, m + n - 2}, sig});
  }
  dg_finalize(W, B, top);
  return B;
}

// Balanced tensor product over the algebra of two assembled complexes.
// Blocks are indexed by (strand_x, deg_x, strand_y, deg_y); Koszul signs
// put (-1)^{deg_x} on the right factor's arrows.
template <class F>
struct TensorBuilt {
  using Key = std::array<int, 4>;
  DgModule<F> mod;
  std::map<Key, int> blk;
  std::map<Key, Realized<F>> rel;

  bool has(const Key& k) const { return blk.count(k) != 0; }
  int id(const Key& k) const { return blk.at(k); }
};

template <class F>
TensorBuilt<F> tensor_over_A(Workspace<F>& W, const DgBuilt<F>& X,
                             const DgBuilt<F>& Y, int top) {
  const F& K = W.field();
  TensorBuilt<F> T;
  Assembler<F> a(K, top);
  std::vector<typename TensorBuilt<F>::Key> keys;
  for (auto& [kx, px] : X.piece)
    for (auto& [ky, py] : Y.piece) {
      int t = kx.second + ky.second;
      if (t > top) continue;
      keys.push_back({kx.first, kx.second, ky.first, ky.second});
    }
  std::sort(keys.begin(), keys.end(),
            [](const auto& u, const auto& v) {
              int tu = u[1] + u[3], tv = v[1] + v[3];
              return std::tie(tu, u) < std::tie(tv, v);
            });
  for (auto& k : keys) {
    auto R = realize_pair(W, X.piece.at({k[0], k[1]}), Y.piece.at({k[2], k[3]}));
    T.blk[k] = a.add_block(k[1] + k[3], R.dim);
    T.rel[k] = std::move(R);
  }
  auto ident = [&](PieceRef pc) {
    return SparseMatrix<F>::identity(K, piece_dim(W, pc));
  };
  for (auto& ar : X.arrows)
    for (auto& [ky, py] : Y.piece) {
      typename TensorBuilt<F>::Key in{ar.from.first, ar.from.second, ky.first,
                                      ky.second};
      typename TensorBuilt<F>::Key out{ar.to.first, ar.to.second, ky.first,
                                       ky.second};
      if (!T.has(in) || !T.has(out)) continue;
      a.d_entry(T.blk.at(in), T.blk.at(out),
                induced_pair_map(K, T.rel.at(out), T.rel.at(in), ar.M,
                                 ident(py)));
    }
  for (auto& ar : Y.arrows)
    for (auto& [kx, px] : X.piece) {
      typename TensorBuilt<F>::Key in{kx.first, kx.second, ar.from.first,
                                      ar.from.second};
      typename TensorBuilt<F>::Key out{kx.first, kx.second, ar.to.first,
                                       ar.to.second};
      if (!T.has(in) || !T.has(out)) continue;
      auto M = induced_pair_map(K, T.rel.at(out), T.rel.at(in), ident(px), ar.M);
      if (kx.second % 2 != 0) M = neg_mat(K, M);
      a.d_entry(T.blk.at(in), T.blk.at(out), std::move(M));
    }
  // Generator actions from both factors carry over blockwise.
  std::vector<int> xact(X.act_degs.size()), yact(Y.act_degs.size());
  for (std::size_t i = 0; i < X.act_degs.size(); ++i)
    xact[i] = a.add_action(X.act_degs[i]);
  for (std::size_t i = 0; i < Y.act_degs.size(); ++i)
    yact[i] = a.add_action(Y.act_degs[i]);
  for (auto& ar : X.act_arrows)
    for (auto& [ky, py] : Y.piece) {
      typename TensorBuilt<F>::Key in{ar.from.first, ar.from.second, ky.first,
                                      ky.second};
      typename TensorBuilt<F>::Key out{ar.to.first, ar.to.second, ky.first,
                                       ky.second};
      if (!T.has(in) || !T.has(out)) continue;
      a.act_entry(xact[std::size_t(ar.act)], T.blk.at(in), T.blk.at(out),
                  induced_pair_map(K, T.rel.at(out), T.rel.at(in), ar.M,
                                   ident(py)));
    }
  for (auto& ar : Y.act_arrows)
    for (auto& [kx, px] : X.piece) {
      typename TensorBuilt<F>::Key in{kx.first, kx.second, ar.from.first,
                                      ar.from.second};
      typename TensorBuilt<F>::Key out{kx.first, kx.second, ar.to.first,
                                       ar.to.second};
      if (!T.has(in) || !T.has(out)) continue;
      a.act_entry(yact[std::size_t(ar.act)], T.blk.at(in), T.blk.at(out),
                  induced_pair_map(K, T.rel.at(out), T.rel.at(in), ident(px),
                                   ar.M));
    }
  T.mod = a.build();
  return T;
}

}  // namespace singhh
