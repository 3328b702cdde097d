#pragma once

#include "singhh/bar.hpp"

namespace singhh {

// Flat coordinates on C^m(mid^{⊗m}, Ω^p): index = tuple * dim(Ω^p) + coord.
template <class F>
SVec<F> cochain_flatten(const F& K, const Cochain<F>& f) {
  std::uint32_t w = f.mat.rows();
  SVec<F> out;
  for (std::uint32_t j = 0; j < f.mat.cols(); ++j)
    for (auto& [i, c] : f.mat.col(j))
      out.emplace_back(j * w + i, c);
  svec_normalize(K, out);
  return out;
}

template <class F>
Cochain<F> cochain_unflatten(const F& K, unsigned m, unsigned p,
                             std::uint32_t w, std::uint64_t cols,
                             const SVec<F>& v) {
  Cochain<F> f{m, p, SparseMatrix<F>(w, std::uint32_t(cols))};
  for (auto& [idx, c] : v) {
    auto col = f.mat.col(idx / w);
    col.emplace_back(idx % w, c);
    f.mat.set_col(idx / w, std::move(col));
  }
  return f;
}

// Left/right actions of the middle basis on syzygy coordinates.
template <class F>
struct SyzygyActions {
  std::vector<SparseMatrix<F>> L, R;
};

template <class F>
SyzygyActions<F> syzygy_actions(Workspace<F>& W, unsigned p) {
  const F& K = W.field();
  const auto& S = W.setting();
  const Algebra<F>& A = W.algebra();
  const auto& syz = W.syzygy(p);
  const auto& B = syz.space().basis();
  std::uint64_t amb = syz.ambient_dim();
  std::uint64_t tail = amb / A.dim();  // ambient = A ⊗ (rest)
  SyzygyActions<F> out;
  for (std::uint32_t s = 0; s < S.mid(); ++s) {
    SparseMatrix<F> Lm(std::uint32_t(amb), B.cols());
    SparseMatrix<F> Rm(std::uint32_t(amb), B.cols());
    for (std::uint32_t j = 0; j < B.cols(); ++j) {
      Lm.set_col(j, detail::left_mult_first_slot(A, S.mid_to_A(s), B.col(j),
                                                 tail));
      Rm.set_col(j, detail::right_mult_last_slot(A, B.col(j), S.mid_to_A(s)));
    }
    out.L.push_back(restrict_to(K, syz.space(), Lm));
    out.R.push_back(restrict_to(K, syz.space(), Rm));
  }
  return out;
}

// Hochschild differential on flat cochain coordinates,
// δf(a_{1,m+1}) = a_1 f(a_{2,m+1}) + Σ_{i=1}^m (-1)^i f(..,a_i a_{i+1},..)
//                 + (-1)^{m+1} f(a_{1,m}) a_{m+1};
// the m = 0 instance is δω(a) = aω - ωa.
template <class F>
SparseMatrix<F> delta_matrix(Workspace<F>& W, const SyzygyActions<F>& act,
                             unsigned m, unsigned p) {
  const F& K = W.field();
  const auto& S = W.setting();
  std::uint32_t w = W.syzygy(p).dim();
  std::uint32_t mid = S.mid();
  std::uint64_t in_tuples = tensor_rank_size(mid, m);
  std::uint64_t out_tuples = tensor_rank_size(mid, m + 1);

  // merged-slot expansion: P[u] = {(a,b,c)} with c = coeff of u in cls(a·b)
  std::vector<std::vector<std::tuple<std::uint32_t, std::uint32_t,
                                     typename F::Elem>>> P(mid);
  for (std::uint32_t a = 0; a < mid; ++a)
    for (std::uint32_t b = 0; b < mid; ++b) {
      auto prod = S.proj_mid(W.algebra().multiply(S.mid_to_A(a), S.mid_to_A(b)));
      for (auto& [u, c] : prod) P[u].emplace_back(a, b, c);
    }

  SparseMatrix<F> D(std::uint32_t(out_tuples * w), std::uint32_t(in_tuples * w));
  for (std::uint64_t j0 = 0; j0 < in_tuples; ++j0) {
    std::vector<std::uint32_t> u(m);
    {
      std::uint64_t t = j0;
      for (unsigned k = m; k-- > 0;) { u[k] = std::uint32_t(t % mid); t /= mid; }
    }
    for (std::uint32_t i0 = 0; i0 < w; ++i0) {
      SVec<F> col;
      for (std::uint32_t s = 0; s < mid; ++s) {
        std::uint64_t t_pre = s * in_tuples + j0;
        for (auto& [row, c] : act.L[s].col(i0))
          col.emplace_back(std::uint32_t(t_pre * w + row), c);
        std::uint64_t t_post = j0 * mid + s;
        auto sg = sign_of(K, long(m) + 1);
        for (auto& [row, c] : act.R[s].col(i0))
          col.emplace_back(std::uint32_t(t_post * w + row), K.mul(sg, c));
      }
      for (unsigned i = 1; i <= m; ++i) {
        auto sg = sign_of(K, long(i));
        for (auto& [a, b, c] : P[u[i - 1]]) {
          // tuple with slot i-1 split into (a, b)
          std::uint64_t t = 0;
          for (unsigned k = 0; k < m + 1; ++k) {
            std::uint32_t digit;
            if (k < i - 1) digit = u[k];
            else if (k == i - 1) digit = a;
            else if (k == i) digit = b;
            else digit = u[k - 1];
            t = t * mid + digit;
          }
          col.emplace_back(std::uint32_t(t * w + i0), K.mul(sg, c));
        }
      }
      svec_normalize(K, col);
      D.set_col(std::uint32_t(j0 * w + i0), std::move(col));
    }
  }
  return D;
}

// Cached cohomology machinery per workspace.
template <class F>
class Cohomology {
 public:
  explicit Cohomology(Workspace<F>& W) : W_(&W) {}

  Workspace<F>& workspace() { return *W_; }

  const SyzygyActions<F>& actions(unsigned p) {
    auto it = acts_.find(p);
    if (it == acts_.end())
      it = acts_.emplace(p, syzygy_actions(*W_, p)).first;
    return it->second;
  }

  const SparseMatrix<F>& delta(unsigned m, unsigned p) {
    auto key = std::make_pair(m, p);
    auto it = deltas_.find(key);
    if (it == deltas_.end())
      it = deltas_.emplace(key, delta_matrix(*W_, actions(p), m, p)).first;
    return it->second;
  }

  std::uint64_t cochain_dim(unsigned m, unsigned p) {
    return std::uint64_t(W_->syzygy(p).dim()) *
           tensor_rank_size(W_->setting().mid(), m);
  }

  std::uint32_t delta_rank(unsigned m, unsigned p) {
    auto key = std::make_pair(m, p);
    auto it = ranks_.find(key);
    if (it == ranks_.end())
      it = ranks_.emplace(key, rank(W_->field(), delta(m, p))).first;
    return it->second;
  }

  // dim HH^m(A, Ω^p)
  std::uint32_t hh_dim(unsigned m, unsigned p) {
    std::uint64_t c = cochain_dim(m, p);
    std::uint32_t out = delta_rank(m, p);
    std::uint32_t in = (m > 0) ? delta_rank(m - 1, p) : 0;
    return std::uint32_t(c - out - in);
  }

  // Coboundary subspace at (m,p): image of δ_{m-1}.
  const Subspace<F>& coboundaries(unsigned m, unsigned p) {
    auto key = std::make_pair(m, p);
    auto it = cobound_.find(key);
    if (it == cobound_.end()) {
      auto S = (m > 0) ? Subspace<F>::image(W_->field(), delta(m - 1, p))
                       : Subspace<F>(W_->field(),
                                     std::uint32_t(cochain_dim(m, p)));
      it = cobound_.emplace(key, std::move(S)).first;
    }
    return it->second;
  }

  bool is_cocycle(const Cochain<F>& f) {
    auto flat = cochain_flatten(W_->field(), f);
    return delta(f.m, f.p).apply(W_->field(), flat).empty();
  }

  bool class_equal(const Cochain<F>& f, const Cochain<F>& g) {
    const F& K = W_->field();
    auto df = cochain_flatten(K, f);
    auto dg = cochain_flatten(K, g);
    auto diff = svec_axpy(K, df, K.neg(K.one()), dg);
    return coboundaries(f.m, f.p).contains(diff);
  }

  // Representative cocycles spanning HH^{m,p}.
  std::vector<Cochain<F>> representatives(unsigned m, unsigned p) {
    const F& K = W_->field();
    auto ker = kernel(K, delta(m, p));
    Subspace<F> span(K, std::uint32_t(cochain_dim(m, p)));
    for (std::uint32_t j = 0; j < coboundaries(m, p).dim(); ++j)
      span.add_vector(coboundaries(m, p).basis().col(j));
    std::vector<Cochain<F>> reps;
    std::uint32_t w = W_->syzygy(p).dim();
    std::uint64_t cols = tensor_rank_size(W_->setting().mid(), m);
    for (std::uint32_t j = 0; j < ker.cols(); ++j)
      if (span.add_vector(ker.col(j)))
        reps.push_back(cochain_unflatten(K, m, p, w, cols, ker.col(j)));
    return reps;
  }

 private:
  Workspace<F>* W_;
  std::map<unsigned, SyzygyActions<F>> acts_;
  std::map<std::pair<unsigned, unsigned>, SparseMatrix<F>> deltas_;
  std::map<std::pair<unsigned, unsigned>, std::uint32_t> ranks_;
  std::map<std::pair<unsigned, unsigned>, Subspace<F>> cobound_;
};

// Cup product via the splice μ: Ω^p ⊗_A Ω^q -> Ω^{p+q},
// (x⊗u) ⊗_A (v⊗y) ↦ x ⊗ uv ⊗ y, with the Koszul factor (-1)^{p(n-q)}
// (the unique bilinear sign making the graded-commutator identity against
// the bullet product hold; see the unit tests).
template <class F>
Cochain<F> cup(Workspace<F>& W, const Cochain<F>& f, const Cochain<F>& g) {
  const F& K = W.field();
  const Algebra<F>& A = W.algebra();
  std::uint64_t d = A.dim();
  unsigned m = f.m, n = g.m, p = f.p, q = g.p;
  auto famb = cochain_ambient(W, f);  // d^{p+1} x d^m
  auto gamb = cochain_ambient(W, g);  // d^{q+1} x d^n
  std::uint64_t dn = tensor_rank_size(d, n);
  std::uint64_t out_amb = tensor_rank_size(d, p + q + 1);
  std::uint64_t qtail = tensor_rank_size(d, q);
  auto M = build_matrix<F>(K, out_amb, tensor_rank_size(d, m + n),
                           [&](std::uint64_t col) {
    std::uint64_t t2 = col % dn, t1 = col / dn;
    SVec<F> res;
    for (auto& [xi, xc] : famb.col(std::uint32_t(t1))) {
      std::uint64_t xhead = xi / d, u = xi % d;
      for (auto& [yi, yc] : gamb.col(std::uint32_t(t2))) {
        std::uint64_t v = yi / qtail, ytail = yi % qtail;
        const auto& prod = A.basis_product(std::uint32_t(u), std::uint32_t(v));
        auto cc = K.mul(xc, yc);
        for (auto& [b, c] : prod)
          res.emplace_back(std::uint32_t((xhead * d + b) * qtail + ytail),
                           K.mul(cc, c));
      }
    }
    return res;
  });
  auto sg = sign_of(K, long(p) * (long(n) - long(q)));
  return Cochain<F>{m + n, p + q,
                    restrict_to(K, W.syzygy(p + q).space(), M.scale(K, sg))};
}

// f •_i g in ambient form, before the final differential:
//   1 ≤ i ≤ m:  (f ⊗ id^{⊗q})(id^{⊗i-1} ⊗ g ⊗ id^{⊗m-i}) ⊗ 1
//   i = -j < 0: (id^{⊗j} ⊗ f ⊗ id^{⊗q-j})(g ⊗ id^{⊗m-1}) ⊗ 1
// then f •_i g = d(…), valued in Ω^{p+q}.
template <class F>
SparseMatrix<F> bullet_i_ambient(Workspace<F>& W, const Cochain<F>& f,
                                 const Cochain<F>& g, int i) {
  const F& K = W.field();
  const Algebra<F>& A = W.algebra();
  std::uint64_t d = A.dim();
  unsigned m = f.m, n = g.m, p = f.p, q = g.p;
  auto famb = cochain_ambient(W, f);
  auto gamb = cochain_ambient(W, g);
  std::uint64_t in_dim = tensor_rank_size(d, m + n - 1);
  std::uint64_t out_dim = tensor_rank_size(d, p + q + 2);
  const auto& unit = A.unit();
  TupleCodec in(d, m + n - 1);
  TupleCodec fcod(d, m);
  return build_matrix<F>(K, out_dim, in_dim, [&](std::uint64_t col) {
    auto t = in.decode(col);
    SVec<F> res;
    if (i > 0) {
      unsigned ii = unsigned(i);
      // g eats slots ii-1 .. ii+n-2 (0-based)
      std::uint64_t t2 = 0;
      for (unsigned k = 0; k < n; ++k) t2 = t2 * d + t[ii - 1 + k];
      for (auto& [gi, gc] : gamb.col(std::uint32_t(t2))) {
        // row: t[0..ii-2], (q+1 digits of gi), t[ii+n-1 ..]
        std::vector<std::uint32_t> row;
        row.reserve(m + q);
        for (unsigned k = 0; k + 1 < ii; ++k) row.push_back(t[k]);
        {
          std::uint64_t x = gi;
          std::vector<std::uint32_t> gd(q + 1);
          for (unsigned k = q + 1; k-- > 0;) { gd[k] = std::uint32_t(x % d); x /= d; }
          for (auto v : gd) row.push_back(v);
        }
        for (unsigned k = ii + n - 1; k < m + n - 1; ++k) row.push_back(t[k]);
        // f eats the first m entries of row
        std::uint64_t t1 = 0;
        for (unsigned k = 0; k < m; ++k) t1 = t1 * d + row[k];
        for (auto& [fi, fc] : famb.col(std::uint32_t(t1))) {
          // output: f-value (p+1 slots) | row[m..m+q-1] (q slots) | unit
          std::uint64_t idx = fi;
          for (unsigned k = m; k < m + q; ++k) idx = idx * d + row[k];
          auto cc = K.mul(gc, fc);
          for (auto& [ub, uc] : unit)
            res.emplace_back(std::uint32_t(idx * d + ub),
                             K.mul(cc, uc));
        }
      }
    } else {
      unsigned j = unsigned(-i);
      // g eats slots 0..n-1
      std::uint64_t t2 = 0;
      for (unsigned k = 0; k < n; ++k) t2 = t2 * d + t[k];
      for (auto& [gi, gc] : gamb.col(std::uint32_t(t2))) {
        std::vector<std::uint32_t> row;
        row.reserve(m + q);
        {
          std::uint64_t x = gi;
          std::vector<std::uint32_t> gd(q + 1);
          for (unsigned k = q + 1; k-- > 0;) { gd[k] = std::uint32_t(x % d); x /= d; }
          for (auto v : gd) row.push_back(v);
        }
        for (unsigned k = n; k < m + n - 1; ++k) row.push_back(t[k]);
        // f eats row[j .. j+m-1]
        std::uint64_t t1 = 0;
        for (unsigned k = 0; k < m; ++k) t1 = t1 * d + row[j + k];
        for (auto& [fi, fc] : famb.col(std::uint32_t(t1))) {
          // output: row[0..j-1] | f-value | row[j+m..m+q-1] | unit
          std::uint64_t idx = 0;
          for (unsigned k = 0; k < j; ++k) idx = idx * d + row[k];
          std::uint64_t pblk = tensor_rank_size(d, p + 1);
          idx = idx * pblk + fi;
          for (unsigned k = j + m; k < m + q; ++k) idx = idx * d + row[k];
          auto cc = K.mul(gc, fc);
          for (auto& [ub, uc] : unit)
            res.emplace_back(std::uint32_t(idx * d + ub), K.mul(cc, uc));
        }
      }
    }
    return res;
  });
}

template <class F>
Cochain<F> bullet_i(Workspace<F>& W, const Cochain<F>& f, const Cochain<F>& g,
                    int i) {
  const F& K = W.field();
  unsigned p = f.p, q = g.p;
  auto amb = bullet_i_ambient(W, f, g, i);
  auto M = W.differential(p + q).mul(K, amb);
  return Cochain<F>{f.m + g.m - 1, p + q,
                    restrict_to(K, W.syzygy(p + q).space(), M)};
}

// f • g with the printed sign pattern.
template <class F>
Cochain<F> bullet(Workspace<F>& W, const Cochain<F>& f, const Cochain<F>& g) {
  const F& K = W.field();
  unsigned m = f.m, n = g.m, p = f.p, q = g.p;
  std::uint32_t w = W.syzygy(p + q).dim();
  std::uint64_t cols = tensor_rank_size(W.algebra().dim(), m + n - 1);
  Cochain<F> acc{m + n - 1, p + q, SparseMatrix<F>(w, std::uint32_t(cols))};
  for (unsigned i = 1; i <= m; ++i) {
    auto term = bullet_i(W, f, g, int(i));
    auto sg = sign_of(K, long(p) + long(q) +
                             (long(i) - 1) * (long(q) - long(n) - 1));
    acc.mat = acc.mat.add(K, term.mat.scale(K, sg));
  }
  for (unsigned i = 1; i <= q; ++i) {
    auto term = bullet_i(W, f, g, -int(i));
    auto sg = sign_of(K, long(p) + long(q) +
                             long(i) * (long(p) - long(m) - 1));
    acc.mat = acc.mat.add(K, term.mat.scale(K, sg));
  }
  return acc;
}

// [f,g] = f•g - (-1)^{(m-p-1)(n-q-1)} g•f.
template <class F>
Cochain<F> bracket(Workspace<F>& W, const Cochain<F>& f, const Cochain<F>& g) {
  const F& K = W.field();
  auto fg = bullet(W, f, g);
  auto gf = bullet(W, g, f);
  auto sg = sign_of(K, (long(f.m) - long(f.p) - 1) *
                           (long(g.m) - long(g.p) - 1));
  fg.mat = fg.mat.sub(K, gf.mat.scale(K, sg));
  return fg;
}

}  // namespace singhh
