#pragma once

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

namespace singhh {

// Sparse vector: (index, value) pairs sorted by index, no explicit zeros.
template <class F>
using SVec = std::vector<std::pair<std::uint32_t, typename F::Elem>>;

template <class F>
void svec_normalize(const F& K, SVec<F>& v) {
  std::sort(v.begin(), v.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  SVec<F> out;
  out.reserve(v.size());
  for (auto& [i, c] : v) {
    if (!out.empty() && out.back().first == i)
      out.back().second = K.add(out.back().second, c);
    else
      out.emplace_back(i, c);
    if (!out.empty() && K.is_zero(out.back().second)) out.pop_back();
  }
  v = std::move(out);
}

template <class F>
SVec<F> svec_add(const F& K, const SVec<F>& a, const SVec<F>& b) {
  SVec<F> out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
      out.push_back(a[i++]);
    } else if (i == a.size() || b[j].first < a[i].first) {
      out.push_back(b[j++]);
    } else {
      auto s = K.add(a[i].second, b[j].second);
      if (!K.is_zero(s)) out.emplace_back(a[i].first, s);
      ++i; ++j;
    }
  }
  return out;
}

// a + c*b
template <class F>
SVec<F> svec_axpy(const F& K, const SVec<F>& a, const typename F::Elem& c,
                  const SVec<F>& b) {
  if (K.is_zero(c)) return a;
  SVec<F> out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
      out.push_back(a[i++]);
    } else if (i == a.size() || b[j].first < a[i].first) {
      out.emplace_back(b[j].first, K.mul(c, b[j].second));
      ++j;
    } else {
      auto s = K.add(a[i].second, K.mul(c, b[j].second));
      if (!K.is_zero(s)) out.emplace_back(a[i].first, s);
      ++i; ++j;
    }
  }
  return out;
}

template <class F>
SVec<F> svec_scale(const F& K, const typename F::Elem& c, const SVec<F>& a) {
  SVec<F> out;
  if (K.is_zero(c)) return out;
  out.reserve(a.size());
  for (auto& [i, v] : a) out.emplace_back(i, K.mul(c, v));
  return out;
}

template <class F>
SVec<F> svec_neg(const F& K, const SVec<F>& a) {
  SVec<F> out;
  out.reserve(a.size());
  for (auto& [i, v] : a) out.emplace_back(i, K.neg(v));
  return out;
}

template <class F>
bool svec_eq(const F& K, const SVec<F>& a, const SVec<F>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i].first != b[i].first || !K.eq(a[i].second, b[i].second))
      return false;
  return true;
}

// Sparse matrix in compressed-column form.
template <class F>
class SparseMatrix {
 public:
  using Elem = typename F::Elem;

  SparseMatrix() : rows_(0) {}
  SparseMatrix(std::uint32_t rows, std::uint32_t cols)
      : rows_(rows), cols_(cols) {}

  std::uint32_t rows() const { return rows_; }
  std::uint32_t cols() const { return std::uint32_t(cols_.size()); }

  const SVec<F>& col(std::uint32_t j) const { return cols_[j]; }
  SVec<F>& col(std::uint32_t j) { return cols_[j]; }
  void set_col(std::uint32_t j, SVec<F> v) { cols_[j] = std::move(v); }

  static SparseMatrix identity(const F& K, std::uint32_t n) {
    SparseMatrix m(n, n);
    for (std::uint32_t i = 0; i < n; ++i) m.cols_[i] = {{i, K.one()}};
    return m;
  }

  std::size_t nnz() const {
    std::size_t n = 0;
    for (auto& c : cols_) n += c.size();
    return n;
  }

  bool is_zero() const {
    for (auto& c : cols_)
      if (!c.empty()) return false;
    return true;
  }

  // y = M x
  SVec<F> apply(const F& K, const SVec<F>& x) const {
    SVec<F> y;
    for (auto& [j, c] : x) y = svec_axpy(K, y, c, cols_[j]);
    return y;
  }

  SparseMatrix mul(const F& K, const SparseMatrix& b) const {
    if (cols() != b.rows_) throw std::invalid_argument("matmul shape");
    SparseMatrix out(rows_, b.cols());
    for (std::uint32_t j = 0; j < b.cols(); ++j)
      out.cols_[j] = apply(K, b.cols_[j]);
    return out;
  }

  SparseMatrix add(const F& K, const SparseMatrix& b) const {
    if (rows_ != b.rows_ || cols() != b.cols())
      throw std::invalid_argument("matadd shape");
    SparseMatrix out(rows_, cols());
    for (std::uint32_t j = 0; j < cols(); ++j)
      out.cols_[j] = svec_add(K, cols_[j], b.cols_[j]);
    return out;
  }

  SparseMatrix sub(const F& K, const SparseMatrix& b) const {
    return add(K, b.scale(K, K.neg(K.one())));
  }

  SparseMatrix scale(const F& K, const Elem& c) const {
    SparseMatrix out(rows_, cols());
    for (std::uint32_t j = 0; j < cols(); ++j)
      out.cols_[j] = svec_scale(K, c, cols_[j]);
    return out;
  }

  bool eq(const F& K, const SparseMatrix& b) const {
    if (rows_ != b.rows_ || cols() != b.cols()) return false;
    for (std::uint32_t j = 0; j < cols(); ++j)
      if (!svec_eq(K, cols_[j], b.cols_[j])) return false;
    return true;
  }

  // Horizontal concatenation [this | b].
  SparseMatrix hcat(const SparseMatrix& b) const {
    if (rows_ != b.rows_) throw std::invalid_argument("hcat shape");
    SparseMatrix out(rows_, cols() + b.cols());
    std::copy(b.cols_.begin(), b.cols_.end(),
              std::copy(cols_.begin(), cols_.end(), out.cols_.begin()));
    return out;
  }

  // Columns [j0, j1) as a new matrix.
  SparseMatrix slice_cols(std::uint32_t j0, std::uint32_t j1) const {
    SparseMatrix out(rows_, j1 - j0);
    std::copy(cols_.begin() + j0, cols_.begin() + j1, out.cols_.begin());
    return out;
  }

 private:
  std::uint32_t rows_;
  std::vector<SVec<F>> cols_;
};

}  // namespace singhh
