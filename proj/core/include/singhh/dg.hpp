#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "singhh/bar.hpp"
#include "singhh/linalg.hpp"

namespace singhh {

struct WindowTooSmall : std::runtime_error {
  explicit WindowTooSmall(const std::string& what)
      : std::runtime_error(what) {}
};

struct NotACocycle : std::runtime_error {
  NotACocycle(unsigned m, unsigned p)
      : std::runtime_error("cochain in bidegree (" + std::to_string(m) + "," +
                           std::to_string(p) + ") is not a cocycle") {}
};

struct ActionMismatch : std::runtime_error {
  explicit ActionMismatch(const std::string& what)
      : std::runtime_error(what) {}
};

struct IdentityViolated : std::runtime_error {
  int degree;
  std::uint32_t residual_rank;
  IdentityViolated(int t, std::uint32_t r)
      : std::runtime_error("identity fails at degree " + std::to_string(t) +
                           " (residual rank " + std::to_string(r) + ")"),
        degree(t),
        residual_rank(r) {}
};

// Column-wise accumulator for a matrix assembled from rectangular blocks.
// Overlapping placements add up.
template <class F>
class BlockMat {
 public:
  BlockMat(std::uint32_t rows, std::uint32_t cols) : rows_(rows), cols_(cols) {}

  void add(std::uint32_t roff, std::uint32_t coff, const SparseMatrix<F>& M) {
    if (roff + M.rows() > rows_ || coff + M.cols() > cols_)
      throw std::invalid_argument("BlockMat: block out of range");
    for (std::uint32_t j = 0; j < M.cols(); ++j) {
      const auto& c = M.col(j);
      if (c.empty()) continue;
      auto& dst = accum_[coff + j];
      for (auto& [r, v] : c) dst.emplace_back(roff + r, v);
    }
  }

  SparseMatrix<F> done(const F& K) {
    SparseMatrix<F> M(rows_, cols_);
    for (auto& [j, col] : accum_) {
      svec_normalize(K, col);
      M.set_col(j, std::move(col));
    }
    accum_.clear();
    return M;
  }

 private:
  std::uint32_t rows_, cols_;
  std::map<std::uint32_t, SVec<F>> accum_;
};

// A chain complex over a finite degree window [0, top], assembled from named
// blocks.  Differentials have degree -1.  Optional generator actions (the
// exterior generators of the grading rings) are stored alongside; each is a
// strict chain map of its stated degree whose square leaves the window or
// vanishes.
template <class F>
struct DgModule {
  struct Block {
    int deg;
    std::uint32_t dim;
    std::uint32_t off;
  };
  struct Action {
    int deg = 0;
    std::vector<SparseMatrix<F>> comp;  // comp[t]: degree t -> t+deg
  };

  int top = 0;
  std::vector<Block> blocks;
  std::vector<std::uint32_t> dims;   // per-degree totals, index 0..top
  std::vector<SparseMatrix<F>> d;    // d[t]: degree t -> t-1 (index 1..top)
  std::vector<Action> eps;

  std::uint32_t dim(int t) const {
    return (t < 0 || t > top) ? 0u : dims[std::size_t(t)];
  }
};

template <class F>
class Assembler {
 public:
  Assembler(const F& K, int top) : K_(&K), top_(top) {
    if (top < 1) throw WindowTooSmall("window needs at least two degrees");
    dims_.assign(std::size_t(top) + 1, 0);
  }

  int top() const { return top_; }

  int add_block(int deg, std::uint64_t dim) {
    if (deg < 0 || deg > top_)
      throw std::invalid_argument("block degree outside window");
    blocks_.push_back({deg, std::uint32_t(dim), dims_[std::size_t(deg)]});
    dims_[std::size_t(deg)] += std::uint32_t(dim);
    return int(blocks_.size()) - 1;
  }

  const typename DgModule<F>::Block& block(int id) const {
    return blocks_[std::size_t(id)];
  }

  void d_entry(int from, int to, SparseMatrix<F> M) {
    auto& bf = blocks_[std::size_t(from)];
    auto& bt = blocks_[std::size_t(to)];
    if (bt.deg != bf.deg - 1)
      throw std::invalid_argument("differential entry must drop degree by 1");
    if (M.rows() != bt.dim || M.cols() != bf.dim)
      throw std::invalid_argument("differential entry shape mismatch");
    dent_.push_back({from, to, std::move(M)});
  }

  int add_action(int deg) {
    acts_.push_back({deg, {}});
    aent_.emplace_back();
    return int(acts_.size()) - 1;
  }

  void act_entry(int a, int from, int to, SparseMatrix<F> M) {
    auto& bf = blocks_[std::size_t(from)];
    auto& bt = blocks_[std::size_t(to)];
    if (bt.deg != bf.deg + acts_[std::size_t(a)].deg)
      throw std::invalid_argument("action entry degree mismatch");
    if (M.rows() != bt.dim || M.cols() != bf.dim)
      throw std::invalid_argument("action entry shape mismatch");
    aent_[std::size_t(a)].push_back({from, to, std::move(M)});
  }

  DgModule<F> build() {
    DgModule<F> M;
    M.top = top_;
    M.blocks = blocks_;
    M.dims = dims_;
    M.d.assign(std::size_t(top_) + 1, SparseMatrix<F>());
    for (int t = 1; t <= top_; ++t)
      M.d[std::size_t(t)] =
          SparseMatrix<F>(M.dims[std::size_t(t - 1)], M.dims[std::size_t(t)]);
    {
      std::map<int, BlockMat<F>> per_deg;
      for (auto& e : dent_) {
        int t = blocks_[std::size_t(e.from)].deg;
        auto it = per_deg.find(t);
        if (it == per_deg.end())
          it = per_deg
                   .emplace(t, BlockMat<F>(M.dims[std::size_t(t - 1)],
                                           M.dims[std::size_t(t)]))
                   .first;
        it->second.add(blocks_[std::size_t(e.to)].off,
                       blocks_[std::size_t(e.from)].off, e.M);
      }
      for (auto& [t, bm] : per_deg) M.d[std::size_t(t)] = bm.done(*K_);
    }
    for (std::size_t a = 0; a < acts_.size(); ++a) {
      typename DgModule<F>::Action act;
      act.deg = acts_[a].deg;
      act.comp.assign(std::size_t(top_) + 1, SparseMatrix<F>());
      std::map<int, BlockMat<F>> per_deg;
      for (auto& e : aent_[a]) {
        int t = blocks_[std::size_t(e.from)].deg;
        auto it = per_deg.find(t);
        if (it == per_deg.end())
          it = per_deg
                   .emplace(t, BlockMat<F>(M.dims[std::size_t(t + act.deg)],
                                           M.dims[std::size_t(t)]))
                   .first;
        it->second.add(blocks_[std::size_t(e.to)].off,
                       blocks_[std::size_t(e.from)].off, e.M);
      }
      for (auto& [t, bm] : per_deg) act.comp[std::size_t(t)] = bm.done(*K_);
      M.eps.push_back(std::move(act));
    }
    return M;
  }

 private:
  struct Entry {
    int from, to;
    SparseMatrix<F> M;
  };
  const F* K_;
  int top_;
  std::vector<typename DgModule<F>::Block> blocks_;
  std::vector<std::uint32_t> dims_;
  std::vector<Entry> dent_;
  std::vector<typename DgModule<F>::Action> acts_;
  std::vector<std::vector<Entry>> aent_;
};

template <class F>
SparseMatrix<F> neg_mat(const F& K, const SparseMatrix<F>& M) {
  return M.scale(K, K.neg(K.one()));
}

// Degrees t with d_{t-1} d_t != 0.
template <class F>
std::vector<int> d_square_defects(const F& K, const DgModule<F>& M) {
  std::vector<int> bad;
  for (int t = 2; t <= M.top; ++t) {
    const auto& dt = M.d[std::size_t(t)];
    const auto& dp = M.d[std::size_t(t - 1)];
    if (dt.cols() == 0 || dp.cols() == 0) continue;
    if (!dp.mul(K, dt).is_zero()) bad.push_back(t);
  }
  return bad;
}

// Generator actions: strict commutation with d and square zero (inside the
// window).  Returns human-readable defect tags.
template <class F>
std::vector<std::string> action_defects(const F& K, const DgModule<F>& M) {
  std::vector<std::string> bad;
  for (std::size_t a = 0; a < M.eps.size(); ++a) {
    const auto& act = M.eps[a];
    int w = act.deg;
    for (int t = 1; t <= M.top; ++t) {
      if (t + w < 1 || t + w > M.top) continue;
      const auto& et = act.comp[std::size_t(t)];
      const auto& ep = act.comp[std::size_t(t - 1)];
      auto lhs = (et.cols() && M.d[std::size_t(t + w)].cols())
                     ? M.d[std::size_t(t + w)].mul(K, et)
                     : SparseMatrix<F>(M.dim(t + w - 1), M.dim(t));
      auto rhs = (ep.cols() && M.d[std::size_t(t)].cols())
                     ? ep.mul(K, M.d[std::size_t(t)])
                     : SparseMatrix<F>(M.dim(t + w - 1), M.dim(t));
      if (!lhs.eq(K, rhs))
        bad.push_back("action " + std::to_string(a) + " vs d at degree " +
                      std::to_string(t));
    }
    for (int t = 0; t <= M.top; ++t) {
      if (t + 2 * w < 0 || t + 2 * w > M.top || t + w < 0 || t + w > M.top)
        continue;
      const auto& e1 = act.comp[std::size_t(t)];
      const auto& e2 = act.comp[std::size_t(t + w)];
      if (e1.cols() == 0 || e2.cols() == 0) continue;
      if (!e2.mul(K, e1).is_zero())
        bad.push_back("action " + std::to_string(a) + " square at degree " +
                      std::to_string(t));
    }
  }
  return bad;
}

// A degreewise map of fixed degree shift between two block complexes.
template <class F>
struct DgMap {
  int shift = 0;
  std::vector<SparseMatrix<F>> comp;  // comp[t]: X_t -> Y_{t+shift}, t=0..topX

  const SparseMatrix<F>& at(int t) const { return comp[std::size_t(t)]; }
};

template <class F>
class MapBuilder {
 public:
  MapBuilder(const F& K, const DgModule<F>& X, const DgModule<F>& Y, int shift)
      : K_(&K), X_(&X), Y_(&Y), shift_(shift) {}

  void entry(int from, int to, const SparseMatrix<F>& M) {
    const auto& bf = X_->blocks[std::size_t(from)];
    const auto& bt = Y_->blocks[std::size_t(to)];
    if (bt.deg != bf.deg + shift_)
      throw std::invalid_argument("map entry degree mismatch");
    if (M.rows() != bt.dim || M.cols() != bf.dim)
      throw std::invalid_argument("map entry shape mismatch");
    ent_.push_back({from, to, M});
  }

  DgMap<F> build() {
    DgMap<F> f;
    f.shift = shift_;
    f.comp.assign(std::size_t(X_->top) + 1, SparseMatrix<F>());
    std::map<int, BlockMat<F>> per_deg;
    for (auto& e : ent_) {
      int t = X_->blocks[std::size_t(e.from)].deg;
      auto it = per_deg.find(t);
      if (it == per_deg.end())
        it = per_deg
                 .emplace(t, BlockMat<F>(Y_->dim(t + shift_), X_->dim(t)))
                 .first;
      it->second.add(Y_->blocks[std::size_t(e.to)].off,
                     X_->blocks[std::size_t(e.from)].off, e.M);
    }
    for (auto& [t, bm] : per_deg) f.comp[std::size_t(t)] = bm.done(*K_);
    for (int t = 0; t <= X_->top; ++t) {
      auto& c = f.comp[std::size_t(t)];
      if (c.cols() == 0 && c.rows() == 0)
        c = SparseMatrix<F>(Y_->dim(t + shift_), X_->dim(t));
    }
    return f;
  }

 private:
  struct Entry {
    int from, to;
    SparseMatrix<F> M;
  };
  const F* K_;
  const DgModule<F>* X_;
  const DgModule<F>* Y_;
  int shift_;
  std::vector<Entry> ent_;
};

template <class F>
DgMap<F> zero_map(const F&, const DgModule<F>& X, const DgModule<F>& Y,
                  int shift) {
  DgMap<F> f;
  f.shift = shift;
  f.comp.assign(std::size_t(X.top) + 1, SparseMatrix<F>());
  for (int t = 0; t <= X.top; ++t)
    f.comp[std::size_t(t)] = SparseMatrix<F>(Y.dim(t + shift), X.dim(t));
  return f;
}

template <class F>
DgMap<F> identity_map(const F& K, const DgModule<F>& X) {
  DgMap<F> f;
  f.shift = 0;
  f.comp.assign(std::size_t(X.top) + 1, SparseMatrix<F>());
  for (int t = 0; t <= X.top; ++t)
    f.comp[std::size_t(t)] = SparseMatrix<F>::identity(K, X.dim(t));
  return f;
}

// g . f for f: X -> Y, g: Y -> Z.
template <class F>
DgMap<F> compose(const F& K, const DgModule<F>& Y, const DgMap<F>& g,
                 const DgMap<F>& f) {
  DgMap<F> h;
  h.shift = f.shift + g.shift;
  h.comp.assign(f.comp.size(), SparseMatrix<F>());
  for (int t = 0; t < int(f.comp.size()); ++t) {
    int u = t + f.shift;
    if (u < 0 || u >= int(g.comp.size())) {
      h.comp[std::size_t(t)] = SparseMatrix<F>(0, f.comp[std::size_t(t)].cols());
      continue;
    }
    h.comp[std::size_t(t)] =
        g.comp[std::size_t(u)].mul(K, f.comp[std::size_t(t)]);
  }
  return h;
}

template <class F>
bool map_eq(const F& K, const DgMap<F>& f, const DgMap<F>& g, int lo, int hi) {
  for (int t = lo; t <= hi; ++t) {
    if (t < 0 || t >= int(f.comp.size()) || t >= int(g.comp.size()))
      return false;
    if (!f.comp[std::size_t(t)].eq(K, g.comp[std::size_t(t)])) return false;
  }
  return true;
}

// Degrees t in [1, min(topX, topY - shift)] where d_Y f_t != f_{t-1} d_X.
template <class F>
std::vector<int> chain_map_defects(const F& K, const DgModule<F>& X,
                                   const DgModule<F>& Y, const DgMap<F>& f) {
  std::vector<int> bad;
  int hi = std::min(X.top, Y.top - f.shift);
  for (int t = 1; t <= hi; ++t) {
    int u = t + f.shift;
    if (u < 1) continue;
    auto lhs = Y.d[std::size_t(u)].mul(K, f.comp[std::size_t(t)]);
    auto rhs = f.comp[std::size_t(t - 1)].mul(K, X.d[std::size_t(t)]);
    if (!lhs.eq(K, rhs)) bad.push_back(t);
  }
  return bad;
}

// Mapping cone of a degree-0 chain map f: X -> Y.  Degree t holds X_{t-1}
// (first, with negated differential) and Y_t; the connecting entry is f
// unnegated.  Block ids of the parts are reported for later addressing.
template <class F>
struct ConeModule {
  DgModule<F> mod;
  std::vector<int> xblocks;  // xblocks[i]: block id in mod of X.blocks[i]
  std::vector<int> yblocks;
};

template <class F>
ConeModule<F> mapping_cone(const F& K, const DgModule<F>& X,
                           const DgModule<F>& Y, const DgMap<F>& f) {
  if (f.shift != 0)
    throw std::invalid_argument("mapping_cone wants a degree-0 map");
  int top = std::min(X.top + 1, Y.top);
  ConeModule<F> C;
  Assembler<F> asmb(K, top);
  C.xblocks.assign(X.blocks.size(), -1);
  C.yblocks.assign(Y.blocks.size(), -1);
  // Shifted X blocks come first at each degree, in original block order.
  for (int t = 0; t <= top; ++t) {
    for (std::size_t i = 0; i < X.blocks.size(); ++i)
      if (X.blocks[i].deg == t - 1)
        C.xblocks[i] = asmb.add_block(t, X.blocks[i].dim);
    for (std::size_t i = 0; i < Y.blocks.size(); ++i)
      if (Y.blocks[i].deg == t)
        C.yblocks[i] = asmb.add_block(t, Y.blocks[i].dim);
  }
  auto mod0 = asmb.build();  // block table only; fill d at matrix level
  mod0.d.assign(std::size_t(top) + 1, SparseMatrix<F>());
  auto xdim = [&](int t) { return (t < 0 || t > X.top) ? 0u : X.dim(t); };
  auto ydim = [&](int t) { return (t < 0 || t > Y.top) ? 0u : Y.dim(t); };
  for (int t = 1; t <= top; ++t) {
    BlockMat<F> bm(mod0.dims[std::size_t(t - 1)], mod0.dims[std::size_t(t)]);
    if (t - 1 >= 1 && t - 1 <= X.top)
      bm.add(0, 0, neg_mat(K, X.d[std::size_t(t - 1)]));
    if (t - 1 >= 0 && t - 1 <= X.top)
      bm.add(xdim(t - 2), 0, f.comp[std::size_t(t - 1)]);
    if (t <= Y.top) bm.add(xdim(t - 2), xdim(t - 1), Y.d[std::size_t(t)]);
    mod0.d[std::size_t(t)] = bm.done(K);
  }
  C.mod = std::move(mod0);
  return C;
}

// h d + d h - id at all degrees t in [lo, hi]; returns (degree, residual rank)
// for each failure.  h has shift +1.
template <class F>
std::vector<std::pair<int, std::uint32_t>> contraction_defects(
    const F& K, const DgModule<F>& M, const DgMap<F>& h, int lo, int hi) {
  std::vector<std::pair<int, std::uint32_t>> bad;
  for (int t = lo; t <= hi; ++t) {
    std::uint32_t n = M.dim(t);
    BlockMat<F> acc(n, n);
    if (t + 1 <= M.top)
      acc.add(0, 0, M.d[std::size_t(t + 1)].mul(K, h.comp[std::size_t(t)]));
    if (t >= 1)
      acc.add(0, 0, h.comp[std::size_t(t - 1)].mul(K, M.d[std::size_t(t)]));
    acc.add(0, 0, neg_mat(K, SparseMatrix<F>::identity(K, n)));
    auto R = acc.done(K);
    if (!R.is_zero()) bad.emplace_back(t, rank(K, R));
  }
  return bad;
}

// Degreewise-constructed contraction: split each degree into a complement of
// ker d and solve d z = (kernel component) one basis vector at a time.  The
// result satisfies h d + d h = id wherever the complex is exact.  Degrees
// where some vector fails to be a boundary are reported (h is zero there).
template <class F>
std::pair<DgMap<F>, std::vector<int>> computed_contraction(
    const F& K, const DgModule<F>& M) {
  DgMap<F> h;
  h.shift = 1;
  h.comp.assign(std::size_t(M.top) + 1, SparseMatrix<F>());
  std::vector<int> failed;
  std::vector<ColElim<F>> im(std::size_t(M.top) + 1,
                             ColElim<F>(K, 0));
  for (int t = 1; t <= M.top; ++t) {
    ColElim<F> e(K, M.dim(t - 1));
    const auto& dt = M.d[std::size_t(t)];
    for (std::uint32_t j = 0; j < dt.cols(); ++j) e.insert(dt.col(j), j);
    im[std::size_t(t)] = std::move(e);
  }
  for (int t = 0; t < M.top; ++t) {
    std::uint32_t n = M.dim(t);
    SparseMatrix<F> ht(M.dim(t + 1), n);
    bool ok = true;
    for (std::uint32_t i = 0; i < n && ok; ++i) {
      SVec<F> x{{i, K.one()}};
      SVec<F> xk = x;
      if (t >= 1) {
        auto dx = M.d[std::size_t(t)].col(i);
        auto z = im[std::size_t(t)].solve(dx);
        if (!z) {
          ok = false;
          break;
        }
        xk = svec_axpy(K, x, K.neg(K.one()), *z);
      }
      auto y = im[std::size_t(t + 1)].solve(xk);
      if (!y) {
        ok = false;
        break;
      }
      ht.set_col(i, *y);
    }
    if (ok)
      h.comp[std::size_t(t)] = std::move(ht);
    else {
      failed.push_back(t);
      h.comp[std::size_t(t)] = SparseMatrix<F>(M.dim(t + 1), n);
    }
  }
  return {std::move(h), std::move(failed)};
}

// ---------------------------------------------------------------------------
// Slot calculus on tensor powers of the algebra.  Index convention matches
// the bar machinery: slot 0 is the most significant digit.

template <class F>
SparseMatrix<F> kron(const F& K, const SparseMatrix<F>& A,
                     const SparseMatrix<F>& B) {
  SparseMatrix<F> M(A.rows() * B.rows(), A.cols() * B.cols());
  for (std::uint32_t ja = 0; ja < A.cols(); ++ja) {
    const auto& ca = A.col(ja);
    if (ca.empty()) continue;
    for (std::uint32_t jb = 0; jb < B.cols(); ++jb) {
      const auto& cb = B.col(jb);
      if (cb.empty()) continue;
      SVec<F> out;
      out.reserve(ca.size() * cb.size());
      for (auto& [ra, va] : ca)
        for (auto& [rb, vb] : cb)
          out.emplace_back(ra * B.rows() + rb, K.mul(va, vb));
      svec_normalize(K, out);
      M.set_col(ja * B.cols() + jb, std::move(out));
    }
  }
  return M;
}

// Multiply adjacent slots pos, pos+1 (0-based) of A^{x n}: n -> n-1 slots.
template <class F>
SparseMatrix<F> mul_adjacent(const Algebra<F>& A, unsigned n, unsigned pos) {
  const F& K = A.field();
  std::uint64_t d = A.dim();
  std::uint64_t n_in = tensor_rank_size(d, n);
  std::uint64_t n_out = tensor_rank_size(d, n - 1);
  std::uint64_t wtail = tensor_rank_size(d, n - pos - 2);
  return build_matrix<F>(K, n_out, n_in, [&](std::uint64_t c) {
    std::uint64_t tail = c % wtail;
    std::uint64_t rest = c / wtail;
    std::uint32_t j = std::uint32_t(rest % d);
    rest /= d;
    std::uint32_t i = std::uint32_t(rest % d);
    std::uint64_t head = rest / d;
    SVec<F> out;
    for (auto& [k, v] : A.basis_product(i, j))
      out.emplace_back(std::uint32_t((head * d + k) * wtail + tail), v);
    return out;
  });
}

// Insert the unit into A^{x n} at slot position pos (0..n): n -> n+1 slots.
template <class F>
SparseMatrix<F> insert_unit(const Algebra<F>& A, unsigned n, unsigned pos) {
  const F& K = A.field();
  std::uint64_t d = A.dim();
  std::uint64_t n_in = tensor_rank_size(d, n);
  std::uint64_t n_out = tensor_rank_size(d, n + 1);
  std::uint64_t wtail = tensor_rank_size(d, n - pos);
  return build_matrix<F>(K, n_out, n_in, [&](std::uint64_t c) {
    std::uint64_t tail = c % wtail;
    std::uint64_t head = c / wtail;
    SVec<F> out;
    for (auto& [u, v] : A.unit())
      out.emplace_back(std::uint32_t((head * d + u) * wtail + tail), v);
    return out;
  });
}

// Coordinates of the degree-p syzygy inside A^{x p+1}, and the projection
// A^{x p+2} -> syzygy coordinates induced by the bar differential.
template <class F>
SparseMatrix<F> syzygy_proj(Workspace<F>& W, unsigned p) {
  return restrict_to(W.field(), W.syzygy(p).space(), W.differential(p));
}

// Two-sided extension of a cochain: A^{x m+2} -> syzygy-p coordinates,
// first slot acting on the left, last slot on the right.
template <class F>
SparseMatrix<F> ext_cochain(Workspace<F>& W, const Cochain<F>& f) {
  const F& K = W.field();
  const Algebra<F>& A = W.algebra();
  std::uint64_t d = A.dim();
  unsigned m = f.m, p = f.p;
  auto famb = cochain_ambient(W, f);  // ambient values, one column per middle tuple
  std::uint64_t dm = famb.cols();
  const auto& S = W.syzygy(p).space();
  SparseMatrix<F> out(S.dim(), std::uint32_t(dm * d * d));
  for (std::uint64_t c = 0; c < dm * d * d; ++c) {
    std::uint32_t aL = std::uint32_t(c % d);
    std::uint64_t mid = (c / d) % dm;
    std::uint32_t a0 = std::uint32_t(c / (d * dm));
    SVec<F> v = famb.col(std::uint32_t(mid));
    if (v.empty()) continue;
    v = detail::left_mult_first_slot(A, SVec<F>{{a0, K.one()}}, v,
                                     W.syzygy(p).ambient_dim() / d);
    v = detail::right_mult_last_slot(A, v, SVec<F>{{aL, K.one()}});
    auto coords = S.to_coords(v);
    if (!coords) throw std::runtime_error("ext_cochain: value escapes syzygy");
    out.set_col(std::uint32_t(c), std::move(*coords));
  }
  return out;
}

// Left/right multiplication by a basis element on syzygy-p coordinates.
template <class F>
SparseMatrix<F> syz_left_mult(Workspace<F>& W, unsigned p, std::uint32_t a) {
  const F& K = W.field();
  const Algebra<F>& A = W.algebra();
  const auto& S = W.syzygy(p).space();
  SparseMatrix<F> out(S.dim(), S.dim());
  for (std::uint32_t j = 0; j < S.dim(); ++j) {
    auto v = detail::left_mult_first_slot(A, SVec<F>{{a, K.one()}},
                                          S.basis().col(j),
                                          S.ambient() / A.dim());
    auto c = S.to_coords(v);
    if (!c) throw std::runtime_error("syzygy not a left module?");
    out.set_col(j, std::move(*c));
  }
  return out;
}

template <class F>
SparseMatrix<F> syz_right_mult(Workspace<F>& W, unsigned p, std::uint32_t a) {
  const F& K = W.field();
  const Algebra<F>& A = W.algebra();
  const auto& S = W.syzygy(p).space();
  SparseMatrix<F> out(S.dim(), S.dim());
  for (std::uint32_t j = 0; j < S.dim(); ++j) {
    auto v = detail::right_mult_last_slot(A, S.basis().col(j),
                                          SVec<F>{{a, K.one()}});
    auto c = S.to_coords(v);
    if (!c) throw std::runtime_error("syzygy not a right module?");
    out.set_col(j, std::move(*c));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Balanced tensor products.  Graded pieces are either a tensor power of the
// algebra or a syzygy (stored in coordinates); the balanced product of two
// pieces is realized concretely, with a projection from and a section into
// the plain product space (index: left * dimRight + right).

struct PieceRef {
  enum class Kind { Tensor, Syz } kind;
  unsigned n;  // tensor rank, or syzygy index

  static PieceRef tensor(unsigned n) { return {Kind::Tensor, n}; }
  static PieceRef syz(unsigned n) { return {Kind::Syz, n}; }
};

template <class F>
std::uint32_t piece_dim(Workspace<F>& W, PieceRef r) {
  if (r.kind == PieceRef::Kind::Tensor) {
    if (r.n < 2) return std::uint32_t(tensor_rank_size(W.algebra().dim(), r.n));
    return std::uint32_t(W.setting().bar_dim(r.n - 2));
  }
  return W.syzygy(r.n).dim();
}

template <class F>
struct Realized {
  std::uint32_t dim = 0;
  SparseMatrix<F> proj;  // product space -> realized coordinates
  SparseMatrix<F> sect;  // realized coordinates -> product space; proj.sect=id
};

template <class F>
Realized<F> realize_pair(Workspace<F>& W, PieceRef X, PieceRef Y) {
  const F& K = W.field();
  const Algebra<F>& A = W.algebra();
  std::uint64_t d = A.dim();
  std::uint32_t dx = piece_dim(W, X), dy = piece_dim(W, Y);
  std::uint64_t raw = std::uint64_t(dx) * dy;
  Realized<F> R;
  bool xt = X.kind == PieceRef::Kind::Tensor;
  bool yt = Y.kind == PieceRef::Kind::Tensor;
  if (xt && yt) {
    unsigned a = X.n, b = Y.n;
    if (a < 1 || b < 1) throw ActionMismatch("tensor piece without a slot");
    std::uint64_t wy = dy / d;
    std::uint64_t out = std::uint64_t(dx) * wy;
    R.dim = std::uint32_t(out);
    R.proj = build_matrix<F>(K, out, raw, [&](std::uint64_t c) {
      std::uint64_t y = c % dy, x = c / dy;
      std::uint64_t ytail = y % wy;
      std::uint32_t yf = std::uint32_t(y / wy);
      std::uint32_t xl = std::uint32_t(x % d);
      std::uint64_t xh = x / d;
      SVec<F> o;
      for (auto& [k, v] : A.basis_product(xl, yf))
        o.emplace_back(std::uint32_t((xh * d + k) * wy + ytail), v);
      return o;
    });
    R.sect = build_matrix<F>(K, raw, out, [&](std::uint64_t z) {
      std::uint64_t ytail = z % wy;
      std::uint64_t x = z / wy;
      SVec<F> o;
      for (auto& [u, v] : A.unit())
        o.emplace_back(std::uint32_t(x * dy + u * wy + ytail), v);
      return o;
    });
    return R;
  }
  if (!xt && yt) {
    unsigned b = Y.n;
    if (b < 1) throw ActionMismatch("tensor piece without a slot");
    std::uint64_t wy = dy / d;
    std::uint64_t out = std::uint64_t(dx) * wy;
    R.dim = std::uint32_t(out);
    std::vector<SparseMatrix<F>> rmul{std::size_t(d)};
    for (std::uint32_t a = 0; a < d; ++a) rmul[a] = syz_right_mult(W, X.n, a);
    R.proj = build_matrix<F>(K, out, raw, [&](std::uint64_t c) {
      std::uint64_t y = c % dy;
      std::uint32_t x = std::uint32_t(c / dy);
      std::uint64_t ytail = y % wy;
      std::uint32_t yf = std::uint32_t(y / wy);
      SVec<F> o;
      for (auto& [r, v] : rmul[yf].col(x))
        o.emplace_back(std::uint32_t(r * wy + ytail), v);
      return o;
    });
    R.sect = build_matrix<F>(K, raw, out, [&](std::uint64_t z) {
      std::uint64_t ytail = z % wy;
      std::uint64_t x = z / wy;
      SVec<F> o;
      for (auto& [u, v] : A.unit())
        o.emplace_back(std::uint32_t(x * dy + u * wy + ytail), v);
      return o;
    });
    return R;
  }
  if (xt && !yt) {
    unsigned a = X.n;
    if (a < 1) throw ActionMismatch("tensor piece without a slot");
    std::uint64_t wx = dx / d;
    std::uint64_t out = wx * dy;
    R.dim = std::uint32_t(out);
    std::vector<SparseMatrix<F>> lmul{std::size_t(d)};
    for (std::uint32_t a = 0; a < d; ++a) lmul[a] = syz_left_mult(W, Y.n, a);
    R.proj = build_matrix<F>(K, out, raw, [&](std::uint64_t c) {
      std::uint32_t y = std::uint32_t(c % dy);
      std::uint64_t x = c / dy;
      std::uint32_t xl = std::uint32_t(x % d);
      std::uint64_t xh = x / d;
      SVec<F> o;
      for (auto& [r, v] : lmul[xl].col(y))
        o.emplace_back(std::uint32_t(xh * dy + r), v);
      return o;
    });
    R.sect = build_matrix<F>(K, raw, out, [&](std::uint64_t z) {
      std::uint64_t y = z % dy;
      std::uint64_t xh = z / dy;
      SVec<F> o;
      for (auto& [u, v] : A.unit())
        o.emplace_back(std::uint32_t((xh * d + u) * dy + y), v);
      return o;
    });
    return R;
  }
  // Syzygy on both sides: genuine quotient of the product space by the
  // middle-action relations.
  const F& K2 = K;
  SparseMatrix<F> rel(std::uint32_t(raw), std::uint32_t(raw * d));
  std::uint32_t jrel = 0;
  std::vector<SparseMatrix<F>> rmul{std::size_t(d)}, lmul{std::size_t(d)};
  for (std::uint32_t a = 0; a < d; ++a) {
    rmul[a] = syz_right_mult(W, X.n, a);
    lmul[a] = syz_left_mult(W, Y.n, a);
  }
  for (std::uint32_t x = 0; x < dx; ++x)
    for (std::uint32_t a = 0; a < d; ++a)
      for (std::uint32_t y = 0; y < dy; ++y) {
        SVec<F> col;
        for (auto& [r, v] : rmul[a].col(x))
          col.emplace_back(r * dy + y, v);
        for (auto& [r, v] : lmul[a].col(y))
          col.emplace_back(x * dy + r, K2.neg(v));
        svec_normalize(K2, col);
        rel.set_col(jrel++, std::move(col));
      }
  Subspace<F> S(K2, std::uint32_t(raw));
  for (std::uint32_t j = 0; j < rel.cols(); ++j) S.add_vector(rel.col(j));
  auto qd = quotient(K2, S);
  R.dim = qd.complement.cols();
  R.proj = qd.to_quotient;
  R.sect = qd.complement;
  return R;
}

// Induced map on realized balanced products from piece maps phi (left) and
// psi (right): proj_out . (phi x psi) . sect_in.
template <class F>
SparseMatrix<F> induced_pair_map(const F& K, const Realized<F>& out,
                                 const Realized<F>& in,
                                 const SparseMatrix<F>& phi,
                                 const SparseMatrix<F>& psi) {
  SparseMatrix<F> M(out.dim, in.dim);
  std::uint32_t dyi = psi.cols();
  std::uint32_t dyo = psi.rows();
  for (std::uint32_t j = 0; j < in.dim; ++j) {
    SVec<F> acc;
    for (auto& [rc, vc] : in.sect.col(j)) {
      std::uint32_t y = rc % dyi, x = rc / dyi;
      const auto& px = phi.col(x);
      const auto& py = psi.col(y);
      if (px.empty() || py.empty()) continue;
      for (auto& [rx, vx] : px) {
        auto w = K.mul(vc, vx);
        for (auto& [ry, vy] : py)
          acc.emplace_back(rx * dyo + ry, K.mul(w, vy));
      }
    }
    svec_normalize(K, acc);
    if (acc.empty()) continue;
    SVec<F> img;
    for (auto& [r, v] : acc)
      img = svec_axpy(K, img, v, out.proj.col(r));
    M.set_col(j, std::move(img));
  }
  return M;
}

}  // namespace singhh
