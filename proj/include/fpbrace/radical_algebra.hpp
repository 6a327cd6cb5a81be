#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "fpbrace/matfp.hpp"

// Commutative associative F_{p^k}-algebras (V,+,.) nilpotent of index 3,
// presented by a defining matrix Theta: on the canonical basis
//   e_i . e_j = (0,...,0, Theta_{i,j})   for i,j <= m,
//   e_i . e_j = 0                        if either index exceeds m,
// so products land in Ann(V) = span{e_{m+1},...,e_n}, d = n - m. Each cell
// Theta_{i,j} is a length-d coordinate vector over the field.

namespace fpbrace {

class DefiningMatrix {
 public:
  DefiningMatrix(FieldSpecPtr spec, size_t m, size_t d)
      : spec_(std::move(spec)),
        m_(m),
        d_(d),
        cells_(m * m * d, FieldElement::zero(spec_)) {
    if (m_ == 0 || d_ == 0)
      throw Error(errc::dimension_mismatch, "theta dimensions must be positive");
  }

  // d = 1 view: cells are plain scalars.
  static DefiningMatrix from_scalar_matrix(const MatFp& t) {
    if (t.rows() != t.cols())
      throw Error(errc::dimension_mismatch, "scalar theta must be square");
    DefiningMatrix theta(t.spec(), t.rows(), 1);
    for (size_t i = 0; i < t.rows(); ++i)
      for (size_t j = 0; j < t.cols(); ++j) theta.entry(i, j, 0) = t.at(i, j);
    return theta;
  }

  const FieldSpecPtr& spec() const noexcept { return spec_; }
  size_t m() const noexcept { return m_; }
  size_t d() const noexcept { return d_; }

  FieldElement& entry(size_t i, size_t j, size_t t) {
    return cells_[(i * m_ + j) * d_ + t];
  }
  const FieldElement& entry(size_t i, size_t j, size_t t) const {
    return cells_[(i * m_ + j) * d_ + t];
  }

  Vec cell(size_t i, size_t j) const {
    return Vec(cells_.begin() + (i * m_ + j) * d_,
               cells_.begin() + (i * m_ + j + 1) * d_);
  }

  bool is_symmetric() const {
    for (size_t i = 0; i < m_; ++i)
      for (size_t j = i + 1; j < m_; ++j)
        for (size_t t = 0; t < d_; ++t)
          if (entry(i, j, t) != entry(j, i, t)) return false;
    return true;
  }

  MatFp scalar_matrix() const {
    if (d_ != 1) throw Error(errc::unsupported_d, "scalar view requires d = 1");
    MatFp t(spec_, m_, m_);
    for (size_t i = 0; i < m_; ++i)
      for (size_t j = 0; j < m_; ++j) t.at(i, j) = entry(i, j, 0);
    return t;
  }

  // Row i is vec(Theta_i); the slabs are independent iff this has rank m.
  MatFp stacked() const {
    MatFp s(spec_, m_, m_ * d_);
    for (size_t i = 0; i < m_; ++i)
      for (size_t j = 0; j < m_; ++j)
        for (size_t t = 0; t < d_; ++t) s.at(i, j * d_ + t) = entry(i, j, t);
    return s;
  }

  bool operator==(const DefiningMatrix& o) const {
    return m_ == o.m_ && d_ == o.d_ && cells_ == o.cells_;
  }
  bool operator!=(const DefiningMatrix& o) const { return !(*this == o); }

 private:
  FieldSpecPtr spec_;
  size_t m_, d_;
  std::vector<FieldElement> cells_;
};

struct ThetaReport {
  bool symmetric = false;
  bool independent = false;
  // Equivalent reformulation of independence when d = 1.
  std::optional<bool> invertible;
  // A vanishing combination sum a_i Theta_i = 0 when not independent.
  std::optional<Vec> dependency;

  bool valid() const { return symmetric && independent; }
};

inline ThetaReport validate_defining_matrix(const DefiningMatrix& theta) {
  ThetaReport report;
  report.symmetric = theta.is_symmetric();
  const MatFp stacked = theta.stacked();
  report.independent = stacked.rank() == theta.m();
  if (!report.independent) {
    auto basis = left_null_space(stacked);
    if (!basis.empty()) report.dependency = basis.front();
  }
  if (theta.d() == 1) report.invertible = !theta.scalar_matrix().det().is_zero();
  return report;
}

struct AlgebraSpec {
  FieldSpecPtr field;
  size_t n;  // total dimension
  size_t d;  // annihilator dimension, 1 <= d < n
  DefiningMatrix theta;

  AlgebraSpec(FieldSpecPtr field_, size_t n_, size_t d_, DefiningMatrix theta_)
      : field(std::move(field_)), n(n_), d(d_), theta(std::move(theta_)) {
    if (n < 2 || d < 1 || d >= n)
      throw Error(errc::dimension_mismatch, "need n >= 2 and 1 <= d < n");
    if (theta.m() != n - d || theta.d() != d)
      throw Error(errc::dimension_mismatch, "theta shape must be (n-d) x (n-d) x d");
    require_same_spec(field, theta.spec());
  }

  size_t m() const noexcept { return n - d; }

  static AlgebraSpec from_scalar_theta(const FieldSpecPtr& field, const MatFp& t) {
    return AlgebraSpec(field, t.rows() + 1, 1, DefiningMatrix::from_scalar_matrix(t));
  }
};

inline void require_length(const Vec& a, size_t n) {
  if (a.size() != n) throw Error(errc::dimension_mismatch, "vector length != n");
}

// Bilinear extension of e_i . e_j = (0,...,0, Theta_{i,j}).
inline Vec product(const Vec& a, const Vec& b, const AlgebraSpec& alg) {
  require_length(a, alg.n);
  require_length(b, alg.n);
  const size_t m = alg.m();
  Vec r = zero_vec(alg.field, alg.n);
  for (size_t i = 0; i < m; ++i) {
    if (a[i].is_zero()) continue;
    for (size_t j = 0; j < m; ++j) {
      if (b[j].is_zero()) continue;
      const FieldElement c = a[i] * b[j];
      for (size_t t = 0; t < alg.d; ++t)
        r[m + t] = r[m + t] + c * alg.theta.entry(i, j, t);
    }
  }
  return r;
}

inline Vec circle(const Vec& a, const Vec& b, const AlgebraSpec& alg) {
  return vec_add(vec_add(a, b), product(a, b, alg));
}

// gamma(a) = [[1_m, Theta_a], [0, 1_d]] with Theta_a = a_1 Theta_1 + ... + a_m Theta_m;
// satisfies x gamma(a) = x + x.a and gamma(a) = 1 for a in Ann(V).
inline MatFp gamma(const Vec& a, const AlgebraSpec& alg) {
  require_length(a, alg.n);
  const size_t m = alg.m();
  MatFp g = MatFp::identity(alg.field, alg.n);
  for (size_t i = 0; i < m; ++i) {
    if (a[i].is_zero()) continue;
    for (size_t j = 0; j < m; ++j)
      for (size_t t = 0; t < alg.d; ++t)
        g.at(j, m + t) = g.at(j, m + t) + a[i] * alg.theta.entry(i, j, t);
  }
  return g;
}

inline MatFp delta(const Vec& a, const AlgebraSpec& alg) {
  return gamma(a, alg) - MatFp::identity(alg.field, alg.n);
}

// The circle inverse is the (p-1)-fold circle power of a.
inline Vec circle_inverse(const Vec& a, const AlgebraSpec& alg) {
  require_length(a, alg.n);
  Vec r = a;
  for (uint32_t i = 0; i + 2 < alg.field->p(); ++i) r = circle(r, a, alg);
  return r;
}

// Arbitrary structure constants e_i . e_j = sum_l c_{i,j,l} e_l. Candidates
// need not be commutative, associative, or nilpotent; the checkers decide.
class StructureConstantAlgebra {
 public:
  StructureConstantAlgebra(FieldSpecPtr spec, size_t n)
      : spec_(std::move(spec)), n_(n), c_(n * n * n, FieldElement::zero(spec_)) {
    if (n_ == 0) throw Error(errc::dimension_mismatch, "dimension must be positive");
  }

  static StructureConstantAlgebra from_algebra(const AlgebraSpec& alg) {
    StructureConstantAlgebra sca(alg.field, alg.n);
    const size_t m = alg.m();
    for (size_t i = 0; i < m; ++i)
      for (size_t j = 0; j < m; ++j)
        for (size_t t = 0; t < alg.d; ++t) sca.c(i, j, m + t) = alg.theta.entry(i, j, t);
    return sca;
  }

  // Basis u_1..u_n of the ideal (u) in F[u]/(u^{n+1}): u_i u_j = u_{i+j} when
  // i+j <= n, 0 otherwise. For n >= 3 this has V^3 != 0.
  static StructureConstantAlgebra truncated_polynomial(const FieldSpecPtr& spec, size_t n) {
    StructureConstantAlgebra sca(spec, n);
    for (size_t i = 0; i < n; ++i)
      for (size_t j = 0; j < n; ++j)
        if (i + j + 2 <= n) sca.c(i, j, i + j + 1) = FieldElement::one(spec);
    return sca;
  }

  const FieldSpecPtr& spec() const noexcept { return spec_; }
  size_t n() const noexcept { return n_; }

  FieldElement& c(size_t i, size_t j, size_t l) { return c_[(i * n_ + j) * n_ + l]; }
  const FieldElement& c(size_t i, size_t j, size_t l) const {
    return c_[(i * n_ + j) * n_ + l];
  }

  Vec multiply(const Vec& a, const Vec& b) const {
    require_length(a, n_);
    require_length(b, n_);
    Vec r = zero_vec(spec_, n_);
    for (size_t i = 0; i < n_; ++i) {
      if (a[i].is_zero()) continue;
      for (size_t j = 0; j < n_; ++j) {
        if (b[j].is_zero()) continue;
        const FieldElement f = a[i] * b[j];
        for (size_t l = 0; l < n_; ++l) r[l] = r[l] + f * c(i, j, l);
      }
    }
    return r;
  }

  Vec circle(const Vec& a, const Vec& b) const {
    return vec_add(vec_add(a, b), multiply(a, b));
  }

  bool commutative_on_basis() const {
    for (size_t i = 0; i < n_; ++i)
      for (size_t j = i + 1; j < n_; ++j)
        for (size_t l = 0; l < n_; ++l)
          if (c(i, j, l) != c(j, i, l)) return false;
    return true;
  }

  bool associative_on_basis() const {
    for (size_t i = 0; i < n_; ++i)
      for (size_t j = 0; j < n_; ++j)
        for (size_t k = 0; k < n_; ++k) {
          Vec ei = basis_vec(spec_, n_, i);
          Vec ej = basis_vec(spec_, n_, j);
          Vec ek = basis_vec(spec_, n_, k);
          if (multiply(multiply(ei, ej), ek) != multiply(ei, multiply(ej, ek)))
            return false;
        }
    return true;
  }

 private:
  FieldSpecPtr spec_;
  size_t n_;
  std::vector<FieldElement> c_;
};

// Basis of Ann(V) = {a : a.V = 0}: the kernel of a -> (a.e_1, ..., a.e_n).
inline std::vector<Vec> annihilator(const StructureConstantAlgebra& sca) {
  const size_t n = sca.n();
  MatFp flat(sca.spec(), n, n * n);
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j)
      for (size_t l = 0; l < n; ++l) flat.at(i, j * n + l) = sca.c(i, j, l);
  return left_null_space(flat);
}

inline std::vector<Vec> annihilator(const AlgebraSpec& alg) {
  return annihilator(StructureConstantAlgebra::from_algebra(alg));
}

namespace detail {

// Echelonized basis of the span of the given vectors.
inline std::vector<Vec> span_basis(const FieldSpecPtr& spec, size_t n,
                                   const std::vector<Vec>& gens) {
  if (gens.empty()) return {};
  MatFp m(spec, gens.size(), n);
  for (size_t i = 0; i < gens.size(); ++i)
    for (size_t j = 0; j < n; ++j) m.at(i, j) = gens[i][j];
  // Row reduce and keep the nonzero rows.
  size_t rk = 0;
  for (size_t col = 0; col < n && rk < gens.size(); ++col) {
    size_t piv = rk;
    while (piv < gens.size() && m.at(piv, col).is_zero()) ++piv;
    if (piv == gens.size()) continue;
    m.swap_rows(piv, rk);
    m.scale_row(rk, m.at(rk, col).inv());
    for (size_t r = 0; r < gens.size(); ++r) {
      if (r == rk || m.at(r, col).is_zero()) continue;
      m.add_scaled_row(r, rk, -m.at(r, col));
    }
    ++rk;
  }
  std::vector<Vec> basis;
  for (size_t r = 0; r < rk; ++r) basis.push_back(m.row(r));
  return basis;
}

}  // namespace detail

// Smallest t with V^t = 0: returns 2 or 3, or 4 meaning "V^3 != 0" (the
// index is at least 4; higher powers are not computed).
inline int nilpotency_check(const StructureConstantAlgebra& sca) {
  const size_t n = sca.n();
  std::vector<Vec> sq_gens;
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) {
      Vec prod = sca.multiply(basis_vec(sca.spec(), n, i), basis_vec(sca.spec(), n, j));
      if (!vec_is_zero(prod)) sq_gens.push_back(std::move(prod));
    }
  auto v2 = detail::span_basis(sca.spec(), n, sq_gens);
  if (v2.empty()) return 2;
  std::vector<Vec> cu_gens;
  for (const auto& x : v2)
    for (size_t k = 0; k < n; ++k) {
      Vec prod = sca.multiply(x, basis_vec(sca.spec(), n, k));
      if (!vec_is_zero(prod)) cu_gens.push_back(std::move(prod));
    }
  auto v3 = detail::span_basis(sca.spec(), n, cu_gens);
  return v3.empty() ? 3 : 4;
}

inline int nilpotency_check(const AlgebraSpec& alg) {
  return nilpotency_check(StructureConstantAlgebra::from_algebra(alg));
}

// dim(V.V) = rank of the stack of all Theta_{i,j} rows inside F^d.
inline size_t product_space_dimension(const AlgebraSpec& alg) {
  const size_t m = alg.m();
  std::vector<Vec> rows;
  for (size_t i = 0; i < m; ++i)
    for (size_t j = 0; j < m; ++j) {
      Vec cell = alg.theta.cell(i, j);
      if (!vec_is_zero(cell)) rows.push_back(std::move(cell));
    }
  return detail::span_basis(alg.field, alg.d, rows).size();
}

// Remark-style reduction to d = 1 when dim(V.V) = 1: quotient by the
// canonical complement H of V.V inside Ann(V). With w spanning the V.V
// coordinates and t* the position of its leading nonzero entry, H is the
// coordinate hyperplane {z : z_{t*} = 0} and the quotient keeps coordinate
// t* of each Theta cell.
inline AlgebraSpec quotient_by_complement(const AlgebraSpec& alg) {
  if (alg.d == 1) return alg;
  const size_t m = alg.m();
  if (product_space_dimension(alg) != 1)
    throw Error(errc::product_not_one_dimensional, "dim(V.V) != 1");
  size_t tstar = alg.d;
  for (size_t i = 0; i < m && tstar == alg.d; ++i)
    for (size_t j = 0; j < m && tstar == alg.d; ++j) {
      const Vec cell = alg.theta.cell(i, j);
      for (size_t t = 0; t < alg.d; ++t)
        if (!cell[t].is_zero()) {
          tstar = t;
          break;
        }
    }
  DefiningMatrix reduced(alg.field, m, 1);
  for (size_t i = 0; i < m; ++i)
    for (size_t j = 0; j < m; ++j) reduced.entry(i, j, 0) = alg.theta.entry(i, j, tstar);
  return AlgebraSpec(alg.field, m + 1, 1, std::move(reduced));
}

}  // namespace fpbrace
