#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "singhh/linalg.hpp"
#include "singhh/sparse.hpp"

namespace singhh {

struct ValidationReport {
  bool ok = true;
  std::vector<std::string> violations;
};

// Finite-dimensional associative unital algebra given by structure constants
// on a declared basis.  Immutable after construction.
template <class F>
class Algebra {
 public:
  using Elem = typename F::Elem;

  Algebra(const F& K, std::uint32_t dim, std::vector<std::string> labels,
          SVec<F> unit, std::vector<std::vector<SVec<F>>> table,
          std::string name = "")
      : K_(K),
        dim_(dim),
        name_(std::move(name)),
        labels_(std::move(labels)),
        unit_(std::move(unit)),
        table_(std::move(table)) {}

  const F& field() const { return K_; }
  std::uint32_t dim() const { return dim_; }
  const std::string& name() const { return name_; }
  const std::vector<std::string>& labels() const { return labels_; }
  const SVec<F>& unit() const { return unit_; }

  // e_i * e_j as a coordinate vector.
  const SVec<F>& basis_product(std::uint32_t i, std::uint32_t j) const {
    return table_[i][j];
  }

  SVec<F> multiply(const SVec<F>& a, const SVec<F>& b) const {
    SVec<F> out;
    for (auto& [i, ca] : a)
      for (auto& [j, cb] : b)
        out = svec_axpy(K_, out, K_.mul(ca, cb), table_[i][j]);
    return out;
  }

  // Matrix of x -> e_i * x.
  SparseMatrix<F> left_mult(std::uint32_t i) const {
    SparseMatrix<F> M(dim_, dim_);
    for (std::uint32_t j = 0; j < dim_; ++j) M.set_col(j, table_[i][j]);
    return M;
  }
  // Matrix of x -> x * e_i.
  SparseMatrix<F> right_mult(std::uint32_t i) const {
    SparseMatrix<F> M(dim_, dim_);
    for (std::uint32_t j = 0; j < dim_; ++j) M.set_col(j, table_[j][i]);
    return M;
  }

  ValidationReport validate() const {
    ValidationReport rep;
    for (std::uint32_t i = 0; i < dim_; ++i) {
      SVec<F> e{{i, K_.one()}};
      if (!svec_eq(K_, multiply(unit_, e), e) ||
          !svec_eq(K_, multiply(e, unit_), e)) {
        rep.ok = false;
        rep.violations.push_back("UnitViolation(" + std::to_string(i) + ")");
      }
    }
    for (std::uint32_t i = 0; i < dim_; ++i)
      for (std::uint32_t j = 0; j < dim_; ++j)
        for (std::uint32_t l = 0; l < dim_; ++l) {
          SVec<F> el{{l, K_.one()}};
          SVec<F> ei{{i, K_.one()}};
          auto lhs = multiply(table_[i][j], el);
          auto rhs = multiply(ei, table_[j][l]);
          if (!svec_eq(K_, lhs, rhs)) {
            rep.ok = false;
            rep.violations.push_back("AssociativityViolation(" +
                                     std::to_string(i) + "," +
                                     std::to_string(j) + "," +
                                     std::to_string(l) + ")");
          }
        }
    return rep;
  }

  // {z : z e_i = e_i z for all i}.
  Subspace<F> center() const {
    SparseMatrix<F> stack(dim_ * dim_, dim_);
    for (std::uint32_t i = 0; i < dim_; ++i) {
      auto D = left_mult(i).sub(K_, right_mult(i));
      for (std::uint32_t j = 0; j < dim_; ++j) {
        auto c = stack.col(j);
        for (auto& [row, v] : D.col(j)) c.emplace_back(i * dim_ + row, v);
        stack.set_col(j, std::move(c));
      }
    }
    auto ker = kernel(K_, stack);
    Subspace<F> s(K_, dim_);
    for (std::uint32_t j = 0; j < ker.cols(); ++j) s.add_vector(ker.col(j));
    return s;
  }

 private:
  F K_;
  std::uint32_t dim_;
  std::string name_;
  std::vector<std::string> labels_;
  SVec<F> unit_;
  std::vector<std::vector<SVec<F>>> table_;
};

// Mixed-radix indexing for A^{⊗r} with all factors of size d, or mixed sizes.
// Tuple (i_1,...,i_r) maps to sum i_k * prod(sizes after k): lexicographic
// with the first factor most significant.
inline std::uint64_t tensor_rank_size(std::uint64_t d, unsigned r) {
  std::uint64_t n = 1;
  for (unsigned k = 0; k < r; ++k) n *= d;
  return n;
}

class TupleCodec {
 public:
  TupleCodec(std::uint64_t d, unsigned r) : sizes_(r, d) { init(); }
  explicit TupleCodec(std::vector<std::uint64_t> sizes)
      : sizes_(std::move(sizes)) {
    init();
  }

  unsigned arity() const { return unsigned(sizes_.size()); }
  std::uint64_t total() const { return total_; }
  std::uint64_t size(unsigned k) const { return sizes_[k]; }

  std::uint64_t encode(const std::vector<std::uint32_t>& t) const {
    std::uint64_t idx = 0;
    for (unsigned k = 0; k < sizes_.size(); ++k) idx = idx * sizes_[k] + t[k];
    return idx;
  }
  std::vector<std::uint32_t> decode(std::uint64_t idx) const {
    std::vector<std::uint32_t> t(sizes_.size());
    for (unsigned k = unsigned(sizes_.size()); k-- > 0;) {
      t[k] = std::uint32_t(idx % sizes_[k]);
      idx /= sizes_[k];
    }
    return t;
  }

 private:
  void init() {
    total_ = 1;
    for (auto s : sizes_) total_ *= s;
  }
  std::vector<std::uint64_t> sizes_;
  std::uint64_t total_ = 1;
};

// Based complement of the unit line: fixes a canonical basis of A/(k·1).
// section: (d-1 -> d) sends the j-th complement basis vector into A;
// proj: (d -> d-1) is reduction mod k·1.  proj∘section = id.
template <class F>
struct UnitComplement {
  std::uint32_t pivot;         // coordinate spanning the unit line
  SparseMatrix<F> section;     // d x (d-1)
  SparseMatrix<F> proj;        // (d-1) x d
};

template <class F>
UnitComplement<F> unit_complement(const Algebra<F>& A) {
  const F& K = A.field();
  const auto& u = A.unit();
  if (u.empty()) throw std::invalid_argument("zero unit");
  std::uint32_t d = A.dim();
  std::uint32_t c = u.front().first;
  typename F::Elem uc = u.front().second;
  UnitComplement<F> out{c, SparseMatrix<F>(d, d - 1),
                        SparseMatrix<F>(d - 1, d)};
  std::uint32_t j = 0;
  std::vector<std::uint32_t> comp_of_row(d, 0);
  for (std::uint32_t i = 0; i < d; ++i) {
    if (i == c) continue;
    out.section.set_col(j, {{i, K.one()}});
    comp_of_row[i] = j;
    ++j;
  }
  // proj(e_i) = class of e_i: subtract (coord_c / u_c) * unit, drop slot c.
  for (std::uint32_t i = 0; i < d; ++i) {
    SVec<F> x{{i, K.one()}};
    auto it = (i == c) ? K.div(K.one(), uc) : K.zero();
    SVec<F> red = svec_axpy(K, x, K.neg(it), u);
    SVec<F> pr;
    for (auto& [row, v] : red)
      if (row != c) pr.emplace_back(comp_of_row[row], v);
    svec_normalize(K, pr);
    out.proj.set_col(i, pr);
  }
  return out;
}

}  // namespace singhh
