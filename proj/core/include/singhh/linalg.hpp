#pragma once

#include <optional>
#include <stdexcept>
#include <vector>

#include "singhh/sparse.hpp"

namespace singhh {

// Column-by-column Gaussian elimination with coefficient tracking.
//
// Columns are inserted left to right.  Each independent column contributes an
// echelon vector u_k (zero at the pivot rows of u_1..u_{k-1}, unit leading
// entry) together with a "shadow": u_k written as a combination of the
// original pivot columns.  Dependent columns yield kernel vectors.  Pivot row
// choice is the smallest row index of the residue, so the whole computation
// is canonical for a fixed column order.
template <class F>
class ColElim {
 public:
  using Elem = typename F::Elem;

  explicit ColElim(const F& K, std::uint32_t ambient_rows)
      : K_(&K), rows_(ambient_rows) {}

  std::uint32_t ambient() const { return rows_; }
  std::uint32_t rank() const { return std::uint32_t(u_.size()); }
  const std::vector<std::uint32_t>& pivot_rows() const { return upivot_; }

  // Reduce x against the echelon; coeffs (on echelon ordinals) optional.
  SVec<F> reduce(SVec<F> x, SVec<F>* coeffs = nullptr) const {
    if (coeffs) coeffs->clear();
    for (std::uint32_t k = 0; k < u_.size(); ++k) {
      Elem c = at(x, upivot_[k]);
      if (K_->is_zero(c)) continue;
      x = svec_axpy(*K_, x, K_->neg(c), u_[k]);
      if (coeffs) coeffs->emplace_back(k, c);
    }
    return x;
  }

  // Insert a column; returns true if it enlarged the span.
  // `ordinal` is the caller's identifier for this column, used in shadows.
  bool insert(const SVec<F>& v, std::uint32_t ordinal,
              SVec<F>* dependency = nullptr) {
    SVec<F> coeffs;
    SVec<F> r = reduce(v, &coeffs);
    if (r.empty()) {
      if (dependency) {
        // v = sum coeffs_k * u_k; expand shadows to original ordinals.
        SVec<F> dep;
        for (auto& [k, c] : coeffs) dep = svec_axpy(*K_, dep, c, shadow_[k]);
        *dependency = std::move(dep);
      }
      return false;
    }
    Elem lead = r.front().second;
    Elem il = K_->inv(lead);
    SVec<F> u = svec_scale(*K_, il, r);
    // shadow(u) = (e_ordinal - sum coeffs_k shadow_k) / lead
    SVec<F> sh{{ordinal, K_->one()}};
    for (auto& [k, c] : coeffs) sh = svec_axpy(*K_, sh, K_->neg(c), shadow_[k]);
    sh = svec_scale(*K_, il, sh);
    upivot_.push_back(u.front().first);
    u_.push_back(std::move(u));
    shadow_.push_back(std::move(sh));
    return true;
  }

  // Solve (echelon span) x = b in terms of original ordinals.
  std::optional<SVec<F>> solve(const SVec<F>& b) const {
    SVec<F> coeffs;
    SVec<F> r = reduce(b, &coeffs);
    if (!r.empty()) return std::nullopt;
    SVec<F> x;
    for (auto& [k, c] : coeffs) x = svec_axpy(*K_, x, c, shadow_[k]);
    return x;
  }

 private:
  Elem at(const SVec<F>& v, std::uint32_t i) const {
    auto it = std::lower_bound(
        v.begin(), v.end(), i,
        [](const auto& p, std::uint32_t idx) { return p.first < idx; });
    if (it != v.end() && it->first == i) return it->second;
    return K_->zero();
  }

  const F* K_;
  std::uint32_t rows_;
  std::vector<SVec<F>> u_;
  std::vector<std::uint32_t> upivot_;
  std::vector<SVec<F>> shadow_;
};

// A subspace of k^n with a fixed ordered basis and membership machinery.
template <class F>
class Subspace {
 public:
  using Elem = typename F::Elem;

  Subspace(const F& K, std::uint32_t ambient)
      : K_(&K), elim_(K, ambient), basis_(ambient, 0) {}

  // Span of the columns of M; basis = pivot columns of M in column order.
  static Subspace image(const F& K, const SparseMatrix<F>& M) {
    Subspace s(K, M.rows());
    for (std::uint32_t j = 0; j < M.cols(); ++j) s.add_vector(M.col(j));
    return s;
  }

  static Subspace full(const F& K, std::uint32_t n) {
    return image(K, SparseMatrix<F>::identity(K, n));
  }

  bool add_vector(const SVec<F>& v) {
    if (elim_.insert(v, dim())) {
      basis_ = basis_.hcat(SparseMatrix<F>(basis_.rows(), 1));
      basis_.set_col(dim() - 1, v);
      return true;
    }
    return false;
  }

  std::uint32_t ambient() const { return basis_.rows(); }
  std::uint32_t dim() const { return elim_.rank(); }
  const SparseMatrix<F>& basis() const { return basis_; }
  const std::vector<std::uint32_t>& pivot_rows() const {
    return elim_.pivot_rows();
  }

  bool contains(const SVec<F>& v) const { return elim_.reduce(v).empty(); }

  // Coordinates in the stored basis; nullopt if v is outside the subspace.
  std::optional<SVec<F>> to_coords(const SVec<F>& v) const {
    return elim_.solve(v);
  }

  SVec<F> from_coords(const SVec<F>& c) const { return basis_.apply(*K_, c); }

  // Residue of v modulo the subspace (canonical coset representative).
  SVec<F> residue(const SVec<F>& v) const { return elim_.reduce(v); }

  bool contains_subspace(const Subspace& other) const {
    for (std::uint32_t j = 0; j < other.dim(); ++j)
      if (!contains(other.basis().col(j))) return false;
    return true;
  }

  bool equals(const Subspace& other) const {
    return dim() == other.dim() && contains_subspace(other);
  }

 private:
  const F* K_;
  ColElim<F> elim_;
  SparseMatrix<F> basis_;
};

template <class F>
std::uint32_t rank(const F& K, const SparseMatrix<F>& M) {
  ColElim<F> e(K, M.rows());
  for (std::uint32_t j = 0; j < M.cols(); ++j) e.insert(M.col(j), j);
  return e.rank();
}

// Basis of ker M, one canonical vector per dependent column.
template <class F>
SparseMatrix<F> kernel(const F& K, const SparseMatrix<F>& M) {
  ColElim<F> e(K, M.rows());
  std::vector<SVec<F>> out;
  for (std::uint32_t j = 0; j < M.cols(); ++j) {
    SVec<F> dep;
    if (!e.insert(M.col(j), j, &dep)) {
      SVec<F> kv = svec_neg(K, dep);
      kv.emplace_back(j, K.one());
      svec_normalize(K, kv);
      out.push_back(std::move(kv));
    }
  }
  SparseMatrix<F> km(M.cols(), std::uint32_t(out.size()));
  for (std::uint32_t j = 0; j < out.size(); ++j) km.set_col(j, out[j]);
  return km;
}

// Solve M X = B columnwise; nullopt if any column is inconsistent.
template <class F>
std::optional<SparseMatrix<F>> solve(const F& K, const SparseMatrix<F>& M,
                                     const SparseMatrix<F>& B) {
  if (M.rows() != B.rows()) throw std::invalid_argument("solve shape");
  ColElim<F> e(K, M.rows());
  for (std::uint32_t j = 0; j < M.cols(); ++j) e.insert(M.col(j), j);
  SparseMatrix<F> X(M.cols(), B.cols());
  for (std::uint32_t j = 0; j < B.cols(); ++j) {
    auto x = e.solve(B.col(j));
    if (!x) return std::nullopt;
    X.set_col(j, *x);
  }
  return X;
}

// Complement of a subspace: standard basis vectors at its non-pivot rows,
// plus the induced maps.  projector = incl . to_quotient is idempotent,
// kills the subspace, and to_quotient . incl = id.
template <class F>
struct QuotientData {
  SparseMatrix<F> complement;   // n x q
  SparseMatrix<F> to_quotient;  // q x n
  SparseMatrix<F> projector;    // n x n
};

template <class F>
QuotientData<F> quotient(const F& K, const Subspace<F>& S) {
  std::uint32_t n = S.ambient();
  std::vector<bool> is_pivot(n, false);
  for (auto r : S.pivot_rows()) is_pivot[r] = true;
  std::vector<std::uint32_t> comp_rows;
  for (std::uint32_t i = 0; i < n; ++i)
    if (!is_pivot[i]) comp_rows.push_back(i);
  std::uint32_t q = std::uint32_t(comp_rows.size());

  QuotientData<F> out{SparseMatrix<F>(n, q), SparseMatrix<F>(q, n),
                      SparseMatrix<F>(n, n)};
  std::vector<std::uint32_t> row_to_quot(n, 0);
  for (std::uint32_t j = 0; j < q; ++j) {
    out.complement.set_col(j, {{comp_rows[j], K.one()}});
    row_to_quot[comp_rows[j]] = j;
  }
  for (std::uint32_t i = 0; i < n; ++i) {
    // residue of e_i lives on non-pivot rows only
    SVec<F> r = S.residue({{i, K.one()}});
    SVec<F> qc;
    qc.reserve(r.size());
    for (auto& [row, c] : r) qc.emplace_back(row_to_quot[row], c);
    out.to_quotient.set_col(i, qc);
    out.projector.set_col(i, std::move(r));
  }
  return out;
}

// Compose a linear map given in ambient target coordinates with to_coords of
// a subspace the image is known to land in.  Throws if a column escapes.
template <class F>
SparseMatrix<F> restrict_to(const F& K, const Subspace<F>& S,
                            const SparseMatrix<F>& M) {
  if (M.rows() != S.ambient()) throw std::invalid_argument("restrict shape");
  SparseMatrix<F> out(S.dim(), M.cols());
  for (std::uint32_t j = 0; j < M.cols(); ++j) {
    auto c = S.to_coords(M.col(j));
    if (!c) throw std::runtime_error("restrict_to: column not in subspace");
    out.set_col(j, *c);
  }
  return out;
}

}  // namespace singhh
