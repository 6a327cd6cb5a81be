#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "fpbrace/gf.hpp"

// Dense matrices over F_{p^k} with exact Gaussian elimination, plus the
// symmetric bilinear-form machinery: diagonalization by congruence
// (A B A^T = D), discriminant, and the two diagonal canonical forms.
// Row-vector convention throughout: vectors act on the right, x -> x M.

namespace fpbrace {

using Vec = std::vector<FieldElement>;

inline Vec zero_vec(const FieldSpecPtr& spec, size_t n) {
  return Vec(n, FieldElement::zero(spec));
}

inline Vec basis_vec(const FieldSpecPtr& spec, size_t n, size_t i) {
  Vec v = zero_vec(spec, n);
  v[i] = FieldElement::one(spec);
  return v;
}

inline Vec vec_add(const Vec& a, const Vec& b) {
  if (a.size() != b.size()) throw Error(errc::dimension_mismatch, "vector sizes differ");
  Vec r;
  r.reserve(a.size());
  for (size_t i = 0; i < a.size(); ++i) r.push_back(a[i] + b[i]);
  return r;
}

inline Vec vec_sub(const Vec& a, const Vec& b) {
  if (a.size() != b.size()) throw Error(errc::dimension_mismatch, "vector sizes differ");
  Vec r;
  r.reserve(a.size());
  for (size_t i = 0; i < a.size(); ++i) r.push_back(a[i] - b[i]);
  return r;
}

inline Vec vec_neg(const Vec& a) {
  Vec r;
  r.reserve(a.size());
  for (const auto& x : a) r.push_back(-x);
  return r;
}

inline Vec vec_scale(const FieldElement& c, const Vec& a) {
  Vec r;
  r.reserve(a.size());
  for (const auto& x : a) r.push_back(c * x);
  return r;
}

inline bool vec_is_zero(const Vec& a) {
  for (const auto& x : a)
    if (!x.is_zero()) return false;
  return true;
}

class MatFp {
 public:
  MatFp(FieldSpecPtr spec, size_t rows, size_t cols)
      : spec_(std::move(spec)),
        rows_(rows),
        cols_(cols),
        e_(rows * cols, FieldElement::zero(spec_)) {
    if (rows_ == 0 || cols_ == 0)
      throw Error(errc::dimension_mismatch, "dimensions must be positive");
  }

  static MatFp identity(const FieldSpecPtr& spec, size_t n) {
    MatFp m(spec, n, n);
    for (size_t i = 0; i < n; ++i) m.at(i, i) = FieldElement::one(spec);
    return m;
  }

  static MatFp from_rows(const FieldSpecPtr& spec, const std::vector<Vec>& rows) {
    if (rows.empty() || rows[0].empty())
      throw Error(errc::dimension_mismatch, "dimensions must be positive");
    MatFp m(spec, rows.size(), rows[0].size());
    for (size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != m.cols_)
        throw Error(errc::dimension_mismatch, "ragged rows");
      for (size_t j = 0; j < m.cols_; ++j) m.at(i, j) = rows[i][j];
    }
    return m;
  }

  size_t rows() const noexcept { return rows_; }
  size_t cols() const noexcept { return cols_; }
  const FieldSpecPtr& spec() const noexcept { return spec_; }

  FieldElement& at(size_t i, size_t j) { return e_[i * cols_ + j]; }
  const FieldElement& at(size_t i, size_t j) const { return e_[i * cols_ + j]; }

  Vec row(size_t i) const {
    return Vec(e_.begin() + i * cols_, e_.begin() + (i + 1) * cols_);
  }

  MatFp transpose() const {
    MatFp t(spec_, cols_, rows_);
    for (size_t i = 0; i < rows_; ++i)
      for (size_t j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
    return t;
  }

  friend MatFp operator*(const MatFp& a, const MatFp& b) {
    require_same_spec(a.spec_, b.spec_);
    if (a.cols_ != b.rows_) throw Error(errc::dimension_mismatch, "matrix product shapes");
    MatFp r(a.spec_, a.rows_, b.cols_);
    for (size_t i = 0; i < a.rows_; ++i)
      for (size_t k = 0; k < a.cols_; ++k) {
        const FieldElement& aik = a.at(i, k);
        if (aik.is_zero()) continue;
        for (size_t j = 0; j < b.cols_; ++j) r.at(i, j) = r.at(i, j) + aik * b.at(k, j);
      }
    return r;
  }

  friend MatFp operator+(const MatFp& a, const MatFp& b) {
    require_same_spec(a.spec_, b.spec_);
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_)
      throw Error(errc::dimension_mismatch, "matrix sum shapes");
    MatFp r(a.spec_, a.rows_, a.cols_);
    for (size_t i = 0; i < a.e_.size(); ++i) r.e_[i] = a.e_[i] + b.e_[i];
    return r;
  }

  friend MatFp operator-(const MatFp& a, const MatFp& b) {
    require_same_spec(a.spec_, b.spec_);
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_)
      throw Error(errc::dimension_mismatch, "matrix difference shapes");
    MatFp r(a.spec_, a.rows_, a.cols_);
    for (size_t i = 0; i < a.e_.size(); ++i) r.e_[i] = a.e_[i] - b.e_[i];
    return r;
  }

  friend MatFp operator*(const FieldElement& c, const MatFp& a) {
    MatFp r(a.spec_, a.rows_, a.cols_);
    for (size_t i = 0; i < a.e_.size(); ++i) r.e_[i] = c * a.e_[i];
    return r;
  }

  bool operator==(const MatFp& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && e_ == o.e_;
  }
  bool operator!=(const MatFp& o) const { return !(*this == o); }

  bool is_symmetric() const {
    if (rows_ != cols_) return false;
    for (size_t i = 0; i < rows_; ++i)
      for (size_t j = i + 1; j < cols_; ++j)
        if (at(i, j) != at(j, i)) return false;
    return true;
  }

  bool is_zero() const {
    for (const auto& x : e_)
      if (!x.is_zero()) return false;
    return true;
  }

  FieldElement det() const {
    if (rows_ != cols_) throw Error(errc::dimension_mismatch, "det of non-square");
    MatFp m = *this;
    FieldElement d = FieldElement::one(spec_);
    bool negate = false;
    for (size_t col = 0; col < cols_; ++col) {
      size_t piv = col;
      while (piv < rows_ && m.at(piv, col).is_zero()) ++piv;
      if (piv == rows_) return FieldElement::zero(spec_);
      if (piv != col) {
        m.swap_rows(piv, col);
        negate = !negate;
      }
      d = d * m.at(col, col);
      const FieldElement pinv = m.at(col, col).inv();
      for (size_t r = col + 1; r < rows_; ++r) {
        if (m.at(r, col).is_zero()) continue;
        const FieldElement f = m.at(r, col) * pinv;
        for (size_t c = col; c < cols_; ++c) m.at(r, c) = m.at(r, c) - f * m.at(col, c);
      }
    }
    return negate ? -d : d;
  }

  size_t rank() const {
    MatFp m = *this;
    size_t rk = 0;
    for (size_t col = 0; col < cols_ && rk < rows_; ++col) {
      size_t piv = rk;
      while (piv < rows_ && m.at(piv, col).is_zero()) ++piv;
      if (piv == rows_) continue;
      m.swap_rows(piv, rk);
      const FieldElement pinv = m.at(rk, col).inv();
      for (size_t r = rk + 1; r < rows_; ++r) {
        if (m.at(r, col).is_zero()) continue;
        const FieldElement f = m.at(r, col) * pinv;
        for (size_t c = col; c < cols_; ++c) m.at(r, c) = m.at(r, c) - f * m.at(rk, c);
      }
      ++rk;
    }
    return rk;
  }

  MatFp inverse() const {
    if (rows_ != cols_) throw Error(errc::dimension_mismatch, "inverse of non-square");
    MatFp m = *this;
    MatFp inv = identity(spec_, rows_);
    for (size_t col = 0; col < cols_; ++col) {
      size_t piv = col;
      while (piv < rows_ && m.at(piv, col).is_zero()) ++piv;
      if (piv == rows_) throw Error(errc::singular_matrix, "matrix is singular");
      if (piv != col) {
        m.swap_rows(piv, col);
        inv.swap_rows(piv, col);
      }
      const FieldElement pinv = m.at(col, col).inv();
      m.scale_row(col, pinv);
      inv.scale_row(col, pinv);
      for (size_t r = 0; r < rows_; ++r) {
        if (r == col || m.at(r, col).is_zero()) continue;
        const FieldElement f = m.at(r, col);
        m.add_scaled_row(r, col, -f);
        inv.add_scaled_row(r, col, -f);
      }
    }
    return inv;
  }

  void swap_rows(size_t a, size_t b) {
    for (size_t c = 0; c < cols_; ++c) std::swap(at(a, c), at(b, c));
  }
  void scale_row(size_t r, const FieldElement& f) {
    for (size_t c = 0; c < cols_; ++c) at(r, c) = f * at(r, c);
  }
  // row r += f * row s
  void add_scaled_row(size_t r, size_t s, const FieldElement& f) {
    for (size_t c = 0; c < cols_; ++c) at(r, c) = at(r, c) + f * at(s, c);
  }
  void swap_cols(size_t a, size_t b) {
    for (size_t r = 0; r < rows_; ++r) std::swap(at(r, a), at(r, b));
  }
  void add_scaled_col(size_t a, size_t b, const FieldElement& f) {
    for (size_t r = 0; r < rows_; ++r) at(r, a) = at(r, a) + f * at(r, b);
  }

 private:
  FieldSpecPtr spec_;
  size_t rows_, cols_;
  std::vector<FieldElement> e_;
};

// Canonical index of a vector in F^n (coordinate 0 least significant).
inline uint64_t vec_index(const Vec& v) {
  uint64_t idx = 0;
  for (size_t i = v.size(); i-- > 0;) idx = idx * v[i].spec()->order() + v[i].index();
  return idx;
}

inline Vec vec_from_index(const FieldSpecPtr& spec, size_t n, uint64_t idx) {
  Vec v;
  v.reserve(n);
  for (size_t i = 0; i < n; ++i) {
    v.push_back(FieldElement::from_index(spec, idx % spec->order()));
    idx /= spec->order();
  }
  return v;
}

inline uint64_t space_size(const FieldSpecPtr& spec, size_t n) {
  uint64_t s = 1;
  for (size_t i = 0; i < n; ++i) s *= spec->order();
  return s;
}

// x -> x M on row vectors.
inline Vec operator*(const Vec& x, const MatFp& m) {
  if (x.size() != m.rows()) throw Error(errc::dimension_mismatch, "vector-matrix shapes");
  Vec r = zero_vec(m.spec(), m.cols());
  for (size_t i = 0; i < x.size(); ++i) {
    if (x[i].is_zero()) continue;
    for (size_t j = 0; j < m.cols(); ++j) r[j] = r[j] + x[i] * m.at(i, j);
  }
  return r;
}

// Basis of the (left) null space {v : v M = 0}, echelonized.
inline std::vector<Vec> left_null_space(const MatFp& m) {
  const size_t n = m.rows();
  // Row-reduce [M | I]; zero rows of the reduced M expose null combinations.
  MatFp work = m;
  MatFp track = MatFp::identity(m.spec(), n);
  size_t rk = 0;
  for (size_t col = 0; col < m.cols() && rk < n; ++col) {
    size_t piv = rk;
    while (piv < n && work.at(piv, col).is_zero()) ++piv;
    if (piv == n) continue;
    work.swap_rows(piv, rk);
    track.swap_rows(piv, rk);
    const FieldElement pinv = work.at(rk, col).inv();
    work.scale_row(rk, pinv);
    track.scale_row(rk, pinv);
    for (size_t r = 0; r < n; ++r) {
      if (r == rk || work.at(r, col).is_zero()) continue;
      const FieldElement f = -work.at(r, col);
      work.add_scaled_row(r, rk, f);
      track.add_scaled_row(r, rk, f);
    }
    ++rk;
  }
  std::vector<Vec> basis;
  for (size_t r = rk; r < n; ++r) basis.push_back(track.row(r));
  return basis;
}

struct DiagonalizationResult {
  MatFp transform;  // invertible A with A B A^T = diagonal
  MatFp diagonal;
};

// Symmetric Gaussian congruence reduction. Pivot choice is deterministic:
// first remaining index with nonzero diagonal entry, otherwise the first
// nonzero off-diagonal pair (i,j), repaired with the basis move v_i += v_j,
// which makes the diagonal entry 2*B(i,j) != 0 in odd characteristic.
// Singular inputs are fine; the untouched trailing block stays zero.
inline DiagonalizationResult congruent_diagonalize(const MatFp& b) {
  if (!b.is_symmetric()) throw Error(errc::not_symmetric, "input form is not symmetric");
  const size_t n = b.rows();
  MatFp m = b;
  MatFp a = MatFp::identity(b.spec(), n);
  for (size_t step = 0; step < n; ++step) {
    size_t piv = n;
    for (size_t i = step; i < n; ++i)
      if (!m.at(i, i).is_zero()) {
        piv = i;
        break;
      }
    if (piv == n) {
      size_t oi = n, oj = n;
      for (size_t i = step; i < n && oi == n; ++i)
        for (size_t j = i + 1; j < n; ++j)
          if (!m.at(i, j).is_zero()) {
            oi = i;
            oj = j;
            break;
          }
      if (oi == n) break;  // trailing block is zero
      const FieldElement one = FieldElement::one(b.spec());
      m.add_scaled_row(oi, oj, one);
      m.add_scaled_col(oi, oj, one);
      a.add_scaled_row(oi, oj, one);
      piv = oi;
    }
    if (piv != step) {
      m.swap_rows(piv, step);
      m.swap_cols(piv, step);
      a.swap_rows(piv, step);
    }
    const FieldElement pinv = m.at(step, step).inv();
    for (size_t r = step + 1; r < n; ++r) {
      if (m.at(r, step).is_zero()) continue;
      const FieldElement f = -(m.at(r, step) * pinv);
      m.add_scaled_row(r, step, f);
      m.add_scaled_col(r, step, f);
      a.add_scaled_row(r, step, f);
    }
  }
  return {std::move(a), std::move(m)};
}

inline SquareClass discriminant(const MatFp& b) {
  if (!b.is_symmetric()) throw Error(errc::not_symmetric, "input form is not symmetric");
  const FieldElement d = b.det();
  if (d.is_zero()) throw Error(errc::degenerate_form, "form is degenerate");
  return is_square(d);
}

struct CanonicalFormLabel {
  size_t rank;
  SquareClass disc;
  bool operator==(const CanonicalFormLabel& o) const {
    return rank == o.rank && disc == o.disc;
  }
};

struct CanonicalFormResult {
  CanonicalFormLabel label;
  MatFp transform;  // A with A B A^T = form
  MatFp form;       // Identity, or diag(1,...,1,q)
};

namespace detail {

// (alpha, beta) with alpha^2 + beta^2 = target; always solvable over F_{p^k}.
inline std::pair<FieldElement, FieldElement> sum_of_two_squares(
    const FieldSpecPtr& spec, const FieldElement& target) {
  for (uint64_t i = 0; i < spec->order(); ++i) {
    FieldElement alpha = FieldElement::from_index(spec, i);
    FieldElement rest = target - alpha * alpha;
    if (rest.is_zero()) return {alpha, FieldElement::zero(spec)};
    if (is_square(rest) == SquareClass::Square) return {alpha, sqrt(rest)};
  }
  throw Error(errc::verification_failed, "two-square representation not found");
}

}  // namespace detail

// Reduce an invertible symmetric form to Identity or diag(1,..,1,q) with
// q = find_nonsquare(spec). Diagonal entries are rescaled to 1 or q, then q's
// are cancelled in pairs: diag(q,q) is congruent to diag(1,1) via a rotation
// by (alpha,beta) with q(alpha^2+beta^2) = 1.
inline CanonicalFormResult canonical_form(const MatFp& b) {
  if (!b.is_symmetric()) throw Error(errc::not_symmetric, "input form is not symmetric");
  if (b.det().is_zero()) throw Error(errc::degenerate_form, "form is degenerate");
  const FieldSpecPtr& spec = b.spec();
  const size_t n = b.rows();
  const FieldElement q = find_nonsquare(spec);

  DiagonalizationResult diag = congruent_diagonalize(b);
  MatFp a = std::move(diag.transform);

  std::vector<bool> entry_is_q(n, false);
  for (size_t i = 0; i < n; ++i) {
    const FieldElement d = diag.diagonal.at(i, i);
    if (is_square(d) == SquareClass::Square) {
      a.scale_row(i, sqrt(d).inv());
    } else {
      a.scale_row(i, sqrt(d * q.inv()).inv());
      entry_is_q[i] = true;
    }
  }

  std::vector<size_t> qpos;
  for (size_t i = 0; i < n; ++i)
    if (entry_is_q[i]) qpos.push_back(i);
  while (qpos.size() >= 2) {
    const size_t i = qpos[0], j = qpos[1];
    auto [alpha, beta] = detail::sum_of_two_squares(spec, q.inv());
    const Vec ri = a.row(i), rj = a.row(j);
    for (size_t c = 0; c < a.cols(); ++c) {
      a.at(i, c) = alpha * ri[c] + beta * rj[c];
      a.at(j, c) = alpha * rj[c] - beta * ri[c];
    }
    qpos.erase(qpos.begin(), qpos.begin() + 2);
  }

  MatFp form = MatFp::identity(spec, n);
  SquareClass disc = SquareClass::Square;
  if (!qpos.empty()) {
    if (qpos[0] != n - 1) a.swap_rows(qpos[0], n - 1);
    form.at(n - 1, n - 1) = q;
    disc = SquareClass::NonSquare;
  }

  if (a * b * a.transpose() != form)
    throw Error(errc::verification_failed, "canonical form self-check failed");
  return {CanonicalFormLabel{n, disc}, std::move(a), std::move(form)};
}

}  // namespace fpbrace
