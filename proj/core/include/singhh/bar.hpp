#pragma once

#include <functional>
#include <map>
#include <memory>
#include <optional>

#include "singhh/algebra.hpp"
#include "singhh/linalg.hpp"

namespace singhh {

// Build a matrix column by column from a basis-index callback.
template <class F>
SparseMatrix<F> build_matrix(const F& K, std::uint64_t rows, std::uint64_t cols,
                             const std::function<SVec<F>(std::uint64_t)>& fn) {
  SparseMatrix<F> M{std::uint32_t(rows), std::uint32_t(cols)};
  for (std::uint64_t j = 0; j < cols; ++j) {
    auto v = fn(j);
    svec_normalize(K, v);
    M.set_col(j, std::move(v));
  }
  return M;
}

template <class F>
typename F::Elem sign_of(const F& K, long exp) {
  return (exp % 2) ? K.neg(K.one()) : K.one();
}

// Shared setting for the plain and the reduced (unit-modded middle slots)
// complexes.  mid == dim(A) in the plain case; in the reduced case middle
// slots run over a based complement of the unit line.
template <class F>
class BarSetting {
 public:
  BarSetting(Algebra<F> A, bool reduced)
      : A_(std::move(A)), reduced_(reduced) {
    const F& K = A_.field();
    if (reduced) {
      uc_ = unit_complement(A_);
      mid_ = A_.dim() - 1;
      for (std::uint32_t i = 0; i < mid_; ++i)
        mid_vecs_.push_back(uc_->section.col(i));
    } else {
      mid_ = A_.dim();
      for (std::uint32_t i = 0; i < mid_; ++i)
        mid_vecs_.push_back({{i, K.one()}});
    }
  }

  const Algebra<F>& algebra() const { return A_; }
  const F& field() const { return A_.field(); }
  bool reduced() const { return reduced_; }
  std::uint32_t d() const { return A_.dim(); }
  std::uint32_t mid() const { return mid_; }

  // middle basis vector as an element of A
  const SVec<F>& mid_to_A(std::uint32_t i) const { return mid_vecs_[i]; }
  // reduce an element of A to middle coordinates (mod unit line if reduced)
  SVec<F> proj_mid(const SVec<F>& a) const {
    if (!reduced_) return a;
    return uc_->proj.apply(field(), a);
  }

  // Bar_r sits in A ⊗ mid^{⊗r} ⊗ A.
  std::uint64_t bar_dim(unsigned r) const {
    return std::uint64_t(d()) * tensor_rank_size(mid_, r) * d();
  }
  TupleCodec bar_codec(unsigned r) const {
    std::vector<std::uint64_t> sizes(r + 2, mid_);
    sizes.front() = sizes.back() = d();
    return TupleCodec(std::move(sizes));
  }

  // Ambient home of the p-th syzygy: quotient target of d_p.
  TupleCodec syz_codec(unsigned p) const {
    if (p == 0) return TupleCodec(d(), 1);
    std::vector<std::uint64_t> sizes(p + 1, mid_);
    sizes.front() = sizes.back() = d();
    return TupleCodec(std::move(sizes));
  }
  std::uint64_t syz_ambient_dim(unsigned p) const {
    return syz_codec(p).total();
  }

 private:
  Algebra<F> A_;
  bool reduced_;
  std::optional<UnitComplement<F>> uc_;
  std::uint32_t mid_;
  std::vector<SVec<F>> mid_vecs_;
};

// d_r : Bar_r -> Bar_{r-1}, alternating sum of adjacent multiplications.
template <class F>
SparseMatrix<F> bar_differential(const BarSetting<F>& S, unsigned r) {
  const F& K = S.field();
  const Algebra<F>& A = S.algebra();
  TupleCodec in = S.bar_codec(r);
  TupleCodec out = S.bar_codec(r ? r - 1 : 0);
  std::uint64_t out_dim = r ? out.total() : S.d();
  return build_matrix<F>(K, out_dim, in.total(), [&](std::uint64_t col) {
    auto t = in.decode(col);
    SVec<F> res;
    for (unsigned i = 0; i + 1 < t.size(); ++i) {
      // multiply slots i, i+1 (0-based); the printed sign is (-1)^i here
      SVec<F> prod;
      const SVec<F>& lhs = (i == 0) ? SVec<F>{{t[0], K.one()}} : S.mid_to_A(t[i]);
      const SVec<F>& rhs =
          (i + 2 == t.size()) ? SVec<F>{{t[i + 1], K.one()}} : S.mid_to_A(t[i + 1]);
      prod = A.multiply(lhs, rhs);
      bool merged_is_mid = (i != 0) && (i + 2 != t.size());
      if (merged_is_mid) prod = S.proj_mid(prod);
      auto sg = sign_of(K, i);
      for (auto& [b, c] : prod) {
        std::vector<std::uint32_t> u;
        u.reserve(t.size() - 1);
        for (unsigned k = 0; k < t.size(); ++k) {
          if (k == i + 1) continue;
          u.push_back(k == i ? b : t[k]);
        }
        if (r == 0)
          res.emplace_back(b, K.mul(sg, c));
        else
          res.emplace_back(std::uint32_t(out.encode(u)), K.mul(sg, c));
      }
    }
    return res;
  });
}

// The p-th syzygy: image of d_p, based by pivot columns; stage 0 is A itself.
template <class F>
class Syzygy {
 public:
  Syzygy(const BarSetting<F>& S, unsigned p)
      : p_(p), space_(S.field(), std::uint32_t(S.syz_ambient_dim(p))) {
    const F& K = S.field();
    if (p == 0) {
      space_ = Subspace<F>::full(K, S.d());  // NOLINT
    } else {
      space_ = Subspace<F>::image(K, bar_differential(S, p));
    }
  }

  unsigned p() const { return p_; }
  std::uint32_t dim() const { return space_.dim(); }
  std::uint32_t ambient_dim() const { return space_.ambient(); }
  const Subspace<F>& space() const { return space_; }

 private:
  unsigned p_;
  Subspace<F> space_;
};

// Caching workspace: one per (algebra, setting-variant) pair.
template <class F>
class Workspace {
 public:
  Workspace(Algebra<F> A, bool reduced) : S_(std::move(A), reduced) {}

  const BarSetting<F>& setting() const { return S_; }
  const Algebra<F>& algebra() const { return S_.algebra(); }
  const F& field() const { return S_.field(); }

  const SparseMatrix<F>& differential(unsigned r) {
    auto it = diffs_.find(r);
    if (it == diffs_.end())
      it = diffs_.emplace(r, bar_differential(S_, r)).first;
    return it->second;
  }

  const Syzygy<F>& syzygy(unsigned p) {
    auto it = syz_.find(p);
    if (it == syz_.end())
      it = syz_.emplace(p, Syzygy<F>(S_, p)).first;
    return it->second;
  }

 private:
  BarSetting<F> S_;
  std::map<unsigned, SparseMatrix<F>> diffs_;
  std::map<unsigned, Syzygy<F>> syz_;
};

// Contracting homotopy of the augmented complex over the p-th syzygy:
// degree r component sends x to (-1)^{p+r+1} x⊗1 (plain setting only).
// The exponent is forced by the identity s∘d + d∘s = id in the ambient
// differential convention; see the unit tests.
template <class F>
SparseMatrix<F> homotopy_sp(const Algebra<F>& A, unsigned p, unsigned r) {
  const F& K = A.field();
  std::uint64_t in_dim = tensor_rank_size(A.dim(), p + r + 2);
  std::uint64_t d = A.dim();
  auto sg = sign_of(K, long(p) + long(r) + 1);
  const auto& u = A.unit();
  return build_matrix<F>(K, in_dim * d, in_dim, [&](std::uint64_t col) {
    SVec<F> res;
    for (auto& [b, c] : u)
      res.emplace_back(std::uint32_t(col * d + b), K.mul(sg, c));
    return res;
  });
}

// Degree -1 component of the same homotopy: Ω^p -> Bar_0(Ω^p) ambient,
// x ↦ (-1)^p x⊗1 (the r = -1 instance of the sign rule).
template <class F>
SparseMatrix<F> homotopy_sp_base(const Algebra<F>& A, unsigned p) {
  const F& K = A.field();
  std::uint64_t in_dim = tensor_rank_size(A.dim(), p + 1);
  std::uint64_t d = A.dim();
  auto sg = sign_of(K, long(p));
  const auto& u = A.unit();
  return build_matrix<F>(K, in_dim * d, in_dim, [&](std::uint64_t col) {
    SVec<F> res;
    for (auto& [b, c] : u)
      res.emplace_back(std::uint32_t(col * d + b), K.mul(sg, c));
    return res;
  });
}

// Setting-aware variants of the contracting homotopy: identical to the
// algebra-level ones in the plain setting; in the reduced setting the old
// trailing slot is demoted to an interior (middle) slot before the unit is
// appended.
template <class F>
SparseMatrix<F> homotopy_sp(const BarSetting<F>& S, unsigned p, unsigned r) {
  if (!S.reduced()) return homotopy_sp(S.algebra(), p, r);
  const F& K = S.field();
  TupleCodec in = S.bar_codec(p + r);
  TupleCodec out = S.bar_codec(p + r + 1);
  auto sg = sign_of(K, long(p) + long(r) + 1);
  const auto& u = S.algebra().unit();
  return build_matrix<F>(K, out.total(), in.total(), [&](std::uint64_t col) {
    auto t = in.decode(col);
    SVec<F> res;
    for (auto& [mb, mc] : S.proj_mid(SVec<F>{{t.back(), K.one()}}))
      for (auto& [b, c] : u) {
        std::vector<std::uint32_t> w(t.begin(), t.end() - 1);
        w.push_back(mb);
        w.push_back(b);
        res.emplace_back(std::uint32_t(out.encode(w)), K.mul(sg, K.mul(mc, c)));
      }
    return res;
  });
}

template <class F>
SparseMatrix<F> homotopy_sp_base(const BarSetting<F>& S, unsigned p) {
  if (!S.reduced()) return homotopy_sp_base(S.algebra(), p);
  const F& K = S.field();
  TupleCodec in = S.syz_codec(p);
  TupleCodec out = S.bar_codec(p);
  auto sg = sign_of(K, long(p));
  const auto& u = S.algebra().unit();
  return build_matrix<F>(K, out.total(), in.total(), [&](std::uint64_t col) {
    auto t = in.decode(col);
    SVec<F> res;
    if (p == 0) {
      for (auto& [b, c] : u)
        res.emplace_back(std::uint32_t(out.encode({t[0], b})),
                         K.mul(sg, c));
      return res;
    }
    for (auto& [mb, mc] : S.proj_mid(SVec<F>{{t.back(), K.one()}}))
      for (auto& [b, c] : u) {
        std::vector<std::uint32_t> w(t.begin(), t.end() - 1);
        w.push_back(mb);
        w.push_back(b);
        res.emplace_back(std::uint32_t(out.encode(w)), K.mul(sg, K.mul(mc, c)));
      }
    return res;
  });
}

// Coproduct component at degree r: Bar_{p+q+r} -> ⊕_{i=0}^{r}
// Bar_i(Ω^p) ⊗_A Bar_{r-i}(Ω^q), each summand spliced into A^{⊗p+q+r+3};
// summand i occupies block i of the stacked target.
template <class F>
SparseMatrix<F> delta_pq(const Algebra<F>& A, unsigned p, unsigned q,
                         unsigned r) {
  const F& K = A.field();
  std::uint64_t n_in = tensor_rank_size(A.dim(), p + q + r + 2);
  std::uint64_t n_blk = tensor_rank_size(A.dim(), p + q + r + 3);
  std::uint64_t d = A.dim();
  const auto& u = A.unit();
  return build_matrix<F>(K, n_blk * (r + 1), n_in, [&](std::uint64_t col) {
    SVec<F> res;
    for (unsigned i = 0; i <= r; ++i) {
      // insert a unit slot after position p+i+1 (1-based)
      std::uint64_t head = col / tensor_rank_size(d, q + r - i + 1);
      std::uint64_t tail = col % tensor_rank_size(d, q + r - i + 1);
      for (auto& [b, c] : u) {
        std::uint64_t idx =
            (head * d + b) * tensor_rank_size(d, q + r - i + 1) + tail;
        res.emplace_back(std::uint32_t(i * n_blk + idx), c);
      }
    }
    return res;
  });
}

// A cochain: multilinear map (middle slots)^{⊗m} -> Ω^p in syzygy
// coordinates.  mat is dim(Ω^p) x mid^m.
template <class F>
struct Cochain {
  unsigned m = 0;
  unsigned p = 0;
  SparseMatrix<F> mat;
};

// Values of f in the ambient tensor power of the syzygy.
template <class F>
SparseMatrix<F> cochain_ambient(Workspace<F>& W, const Cochain<F>& f) {
  return W.syzygy(f.p).space().basis().mul(W.field(), f.mat);
}

namespace detail {

// Multiply an ambient tensor-power vector by algebra elements on the left
// (first slot) or right (last slot).
template <class F>
SVec<F> left_mult_first_slot(const Algebra<F>& A, const SVec<F>& a,
                             const SVec<F>& v, std::uint64_t tail_size) {
  const F& K = A.field();
  SVec<F> out;
  for (auto& [vi, vc] : v) {
    std::uint64_t head = vi / tail_size, tail = vi % tail_size;
    SVec<F> e{{std::uint32_t(head), K.one()}};
    auto prod = A.multiply(a, e);
    for (auto& [b, c] : prod)
      out.emplace_back(std::uint32_t(b * tail_size + tail), K.mul(c, vc));
  }
  svec_normalize(K, out);
  return out;
}

template <class F>
SVec<F> right_mult_last_slot(const Algebra<F>& A, const SVec<F>& v,
                             const SVec<F>& a) {
  const F& K = A.field();
  std::uint64_t d = A.dim();
  SVec<F> out;
  for (auto& [vi, vc] : v) {
    std::uint64_t head = vi / d, last = vi % d;
    SVec<F> e{{std::uint32_t(last), K.one()}};
    auto prod = A.multiply(e, a);
    for (auto& [b, c] : prod)
      out.emplace_back(std::uint32_t(head * d + b), K.mul(c, vc));
  }
  svec_normalize(K, out);
  return out;
}

}  // namespace detail

// First lift: Bar_{m+r}(A) -> Bar_r(Ω^p) ambient A^{⊗p+r+2},
// a ↦ (-1)^{p+1+(m-p-1)r} a_1 f(a_{2,m+1}) ⊗ a_{m+2,m+r+2}.
// Second lift: a ↦ (-1)^{r+1} a_{1,r+1} ⊗ f(a_{r+2,r+m+1}) a_{r+m+2}.
template <class F>
SparseMatrix<F> lift_theta(Workspace<F>& W, const Cochain<F>& f, int variant,
                           unsigned r) {
  const F& K = W.field();
  const Algebra<F>& A = W.algebra();
  std::uint64_t d = A.dim();
  unsigned m = f.m, p = f.p;
  SparseMatrix<F> famb = cochain_ambient(W, f);  // ambient values per middle tuple
  std::uint64_t in_dim = tensor_rank_size(d, m + r + 2);
  std::uint64_t out_dim = tensor_rank_size(d, p + r + 2);
  std::uint64_t dm = tensor_rank_size(d, m);
  auto sg = (variant == 1) ? sign_of(K, long(p) + 1 + (long(m) - long(p) - 1) * long(r))
                           : sign_of(K, long(r) + 1);
  if (W.setting().reduced()) {
    const BarSetting<F>& S = W.setting();
    TupleCodec in = S.bar_codec(m + r);
    TupleCodec out = S.bar_codec(p + r);
    TupleCodec val = S.syz_codec(p);
    return build_matrix<F>(K, out.total(), in.total(), [&](std::uint64_t col) {
      auto t = in.decode(col);  // first slot, m+r middle slots, last slot
      unsigned off = (variant == 1) ? 1 : r + 1;
      std::uint64_t mid = 0;
      for (unsigned i = 0; i < m; ++i) mid = mid * S.mid() + t[off + i];
      const SVec<F>& fv = famb.col(std::uint32_t(mid));
      SVec<F> res;
      if (variant == 1) {
        SVec<F> e{{t[0], K.one()}};
        SVec<F> av = detail::left_mult_first_slot(A, e, fv, val.total() / d);
        for (auto& [b, c] : av) {
          auto v = val.decode(b);
          if (p == 0) {
            std::vector<std::uint32_t> u{v[0]};
            for (unsigned k = m + 1; k <= m + r + 1; ++k) u.push_back(t[k]);
            res.emplace_back(std::uint32_t(out.encode(u)), K.mul(sg, c));
            continue;
          }
          // the value's trailing slot becomes an interior (middle) slot
          for (auto& [mb, mc] : S.proj_mid(SVec<F>{{v.back(), K.one()}})) {
            std::vector<std::uint32_t> u(v.begin(), v.end() - 1);
            u.push_back(mb);
            for (unsigned k = m + 1; k <= m + r + 1; ++k) u.push_back(t[k]);
            res.emplace_back(std::uint32_t(out.encode(u)),
                             K.mul(K.mul(sg, c), mc));
          }
        }
        return res;
      }
      SVec<F> e{{t[m + r + 1], K.one()}};
      SVec<F> av = detail::right_mult_last_slot(A, fv, e);
      for (auto& [b, c] : av) {
        auto v = val.decode(b);
        if (p == 0) {
          std::vector<std::uint32_t> u(t.begin(), t.begin() + r + 1);
          u.push_back(v[0]);
          res.emplace_back(std::uint32_t(out.encode(u)), K.mul(sg, c));
          continue;
        }
        // the value's leading slot becomes an interior (middle) slot
        for (auto& [mb, mc] : S.proj_mid(SVec<F>{{v[0], K.one()}})) {
          std::vector<std::uint32_t> u(t.begin(), t.begin() + r + 1);
          u.push_back(mb);
          u.insert(u.end(), v.begin() + 1, v.end());
          res.emplace_back(std::uint32_t(out.encode(u)),
                           K.mul(K.mul(sg, c), mc));
        }
      }
      return res;
    });
  }
  return build_matrix<F>(K, out_dim, in_dim, [&](std::uint64_t col) {
    if (variant == 1) {
      // col = a_1 | mid m slots | trailing r+1 slots
      std::uint64_t tail_size = tensor_rank_size(d, r + 1);
      std::uint64_t tail = col % tail_size;
      std::uint64_t a1 = col / (dm * tail_size);
      std::uint64_t mid = (col / tail_size) % dm;
      const SVec<F>& fv = famb.col(std::uint32_t(mid));
      SVec<F> e{{std::uint32_t(a1), K.one()}};
      // a1 acts on the first slot of f's ambient value
      SVec<F> av = detail::left_mult_first_slot(A, e, fv,
                                                tensor_rank_size(d, p));
      SVec<F> res;
      for (auto& [b, c] : av)
        res.emplace_back(std::uint32_t(b * tail_size + tail), K.mul(sg, c));
      return res;
    }
    // variant 2: leading r+1 slots | mid m slots | a_last
    std::uint64_t alast = col % d;
    std::uint64_t mid = (col / d) % dm;
    std::uint64_t head = col / (d * dm);
    const SVec<F>& fv = famb.col(std::uint32_t(mid));
    SVec<F> e{{std::uint32_t(alast), K.one()}};
    SVec<F> av = detail::right_mult_last_slot(A, fv, e);
    std::uint64_t blk = tensor_rank_size(d, p + 1);
    SVec<F> res;
    for (auto& [b, c] : av)
      res.emplace_back(std::uint32_t(head * blk + b), K.mul(sg, c));
    return res;
  });
}

// Connecting homotopy s^r(f): A^{⊗m+r+2} -> A^{⊗p+r+3},
// a ↦ Σ_{i=1}^{r+1} (-1)^{p+(r+i+1)(m-p-1)} a_{1,i} ⊗ f(a_{i+1,i+m})
//       ⊗ a_{i+m+1,m+r+2}.
// The sign exponent is the unique choice (solved exactly, per term) making
// θ₁(f) − θ₂(f) = s(f)∘d + d'∘s(f) hold with target differential d' = −d.
template <class F>
SparseMatrix<F> chain_homotopy_sf(Workspace<F>& W, const Cochain<F>& f,
                                  unsigned r) {
  const F& K = W.field();
  std::uint64_t d = W.algebra().dim();
  unsigned m = f.m, p = f.p;
  SparseMatrix<F> famb = cochain_ambient(W, f);
  std::uint64_t in_dim = tensor_rank_size(d, m + r + 2);
  std::uint64_t out_dim = tensor_rank_size(d, p + r + 3);
  std::uint64_t dm = tensor_rank_size(d, m);
  std::uint64_t blk = tensor_rank_size(d, p + 1);
  if (W.setting().reduced()) {
    const BarSetting<F>& S = W.setting();
    TupleCodec in = S.bar_codec(m + r);
    TupleCodec out = S.bar_codec(p + r + 1);
    TupleCodec val = S.syz_codec(p);
    return build_matrix<F>(K, out.total(), in.total(), [&](std::uint64_t col) {
      auto t = in.decode(col);  // first slot, m+r middle slots, last slot
      SVec<F> res;
      for (unsigned i = 1; i <= r + 1; ++i) {
        std::uint64_t mid = 0;
        for (unsigned k = 0; k < m; ++k) mid = mid * S.mid() + t[i + k];
        const SVec<F>& fv = famb.col(std::uint32_t(mid));
        auto sg =
            sign_of(K, long(p) + (long(r) + i + 1) * (long(m) - long(p) - 1));
        for (auto& [b, c] : fv) {
          auto v = val.decode(b);
          // both boundary slots of the value land in interior positions
          SVec<F> first = S.proj_mid(SVec<F>{{v[0], K.one()}});
          SVec<F> last = (p == 0) ? SVec<F>{{0, K.one()}}
                                  : S.proj_mid(SVec<F>{{v.back(), K.one()}});
          for (auto& [fb, fc] : first) {
            auto emit = [&](std::uint32_t lb,
                            const typename F::Elem& lc) {
              std::vector<std::uint32_t> u(t.begin(), t.begin() + i);
              u.push_back(fb);
              if (p) {
                u.insert(u.end(), v.begin() + 1, v.end() - 1);
                u.push_back(lb);
              }
              for (unsigned k = i + m; k <= m + r + 1; ++k) u.push_back(t[k]);
              res.emplace_back(std::uint32_t(out.encode(u)),
                               K.mul(K.mul(sg, c), K.mul(fc, lc)));
            };
            if (p == 0)
              emit(0, K.one());
            else
              for (auto& [lb, lc] : last) emit(lb, lc);
          }
        }
      }
      return res;
    });
  }
  return build_matrix<F>(K, out_dim, in_dim, [&](std::uint64_t col) {
    SVec<F> res;
    for (unsigned i = 1; i <= r + 1; ++i) {
      std::uint64_t tail_size = tensor_rank_size(d, m + r + 2 - i - m);
      std::uint64_t tail = col % tail_size;
      std::uint64_t mid = (col / tail_size) % dm;
      std::uint64_t head = col / (tail_size * dm);
      const SVec<F>& fv = famb.col(std::uint32_t(mid));
      auto sg = sign_of(K, long(p) + (long(r) + i + 1) * (long(m) - long(p) - 1));
      for (auto& [b, c] : fv) {
        std::uint64_t idx = (head * blk + b) * tail_size + tail;
        res.emplace_back(std::uint32_t(idx), K.mul(sg, c));
      }
    }
    return res;
  });
}

// r-th lifts with values in Ω^{p+r} coordinates:
//   variant 1: a ↦ (-1)^{p+(m-p)r} d(a_1 f(a_{2,m+1}) ⊗ a_{m+2,m+r+2})
//   variant 2: a ↦ d(a_{1,r+1} ⊗ f(a_{r+2,r+m+1}) a_{r+m+2})
template <class F>
SparseMatrix<F> omega_lift(Workspace<F>& W, const Cochain<F>& f, unsigned r,
                           int variant) {
  const F& K = W.field();
  unsigned m = f.m, p = f.p;
  // strip theta's own sign, then apply the printed one
  auto th = lift_theta(W, f, variant, r);
  auto undo = (variant == 1)
                  ? sign_of(K, long(p) + 1 + (long(m) - long(p) - 1) * long(r))
                  : sign_of(K, long(r) + 1);
  auto want = (variant == 1)
                  ? sign_of(K, long(p) + (long(m) - long(p)) * long(r))
                  : K.one();
  auto M = W.differential(p + r).mul(K, th).scale(K, K.mul(want, undo));
  return restrict_to(K, W.syzygy(p + r).space(), M);
}

}  // namespace singhh
