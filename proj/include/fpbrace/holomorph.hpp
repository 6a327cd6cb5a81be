#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "fpbrace/radical_algebra.hpp"

// The affine realization of the circle group: tau_a = gamma_a sigma_a inside
// AGL(V,+), acting on row vectors by x -> x L + t. A SubgroupTable holds the
// regular family {tau_a : a in V} labelled by the image of 0.

namespace fpbrace {

class AffineMap {
 public:
  AffineMap(MatFp linear, Vec translation)
      : linear_(std::move(linear)), translation_(std::move(translation)) {
    if (linear_.rows() != linear_.cols() || translation_.size() != linear_.rows())
      throw Error(errc::dimension_mismatch, "affine map shapes");
    if (linear_.det().is_zero())
      throw Error(errc::singular_matrix, "linear part must be invertible");
  }

  static AffineMap identity(const FieldSpecPtr& spec, size_t n) {
    return AffineMap(MatFp::identity(spec, n), zero_vec(spec, n));
  }

  const MatFp& linear() const noexcept { return linear_; }
  const Vec& translation() const noexcept { return translation_; }
  size_t dim() const noexcept { return translation_.size(); }

  Vec operator()(const Vec& x) const { return vec_add(x * linear_, translation_); }

  AffineMap inverted() const {
    MatFp linv = linear_.inverse();
    return AffineMap(linv, vec_neg(translation_ * linv));
  }

  bool operator==(const AffineMap& o) const {
    return linear_ == o.linear_ && translation_ == o.translation_;
  }
  bool operator!=(const AffineMap& o) const { return !(*this == o); }

 private:
  MatFp linear_;
  Vec translation_;
};

// Apply f, then g.
inline AffineMap compose(const AffineMap& f, const AffineMap& g) {
  if (f.dim() != g.dim()) throw Error(errc::dimension_mismatch, "affine compose shapes");
  return AffineMap(f.linear() * g.linear(),
                   vec_add(f.translation() * g.linear(), g.translation()));
}

inline AffineMap sigma(const Vec& a, const FieldSpecPtr& spec) {
  return AffineMap(MatFp::identity(spec, a.size()), a);
}

inline AffineMap tau(const Vec& a, const AlgebraSpec& alg) {
  return AffineMap(gamma(a, alg), a);
}

// (p-1)-fold self-composition, the proof's form of tau_a^{-1}.
inline AffineMap tau_inverse_by_power(const Vec& a, const AlgebraSpec& alg) {
  const AffineMap t = tau(a, alg);
  AffineMap r = t;
  for (uint32_t i = 0; i + 2 < alg.field->p(); ++i) r = compose(r, t);
  return r;
}

class SubgroupTable {
 public:
  SubgroupTable(FieldSpecPtr field, size_t n, std::vector<AffineMap> maps)
      : field_(std::move(field)), n_(n), maps_(std::move(maps)) {
    if (maps_.size() != space_size(field_, n_))
      throw Error(errc::dimension_mismatch, "table must have one map per label");
  }

  const FieldSpecPtr& field() const noexcept { return field_; }
  size_t n() const noexcept { return n_; }
  uint64_t size() const noexcept { return maps_.size(); }

  const AffineMap& at(uint64_t label_idx) const { return maps_[label_idx]; }
  const AffineMap& at_label(const Vec& a) const { return maps_[vec_index(a)]; }
  Vec label_of(uint64_t idx) const { return vec_from_index(field_, n_, idx); }

  void replace(uint64_t label_idx, AffineMap m) { maps_[label_idx] = std::move(m); }

  bool operator==(const SubgroupTable& o) const {
    return n_ == o.n_ && maps_ == o.maps_;
  }

 private:
  FieldSpecPtr field_;
  size_t n_;
  std::vector<AffineMap> maps_;
};

inline constexpr uint64_t kMaxTableStates = 625;

inline SubgroupTable build_T_circ(const AlgebraSpec& alg) {
  const uint64_t N = space_size(alg.field, alg.n);
  if (N > kMaxTableStates) throw Error(errc::too_large, "table size exceeds 5^4");
  std::vector<AffineMap> maps;
  maps.reserve(N);
  for (uint64_t i = 0; i < N; ++i)
    maps.push_back(tau(vec_from_index(alg.field, alg.n, i), alg));
  return SubgroupTable(alg.field, alg.n, std::move(maps));
}

// T_+ as a table, useful as the trivial-brace baseline.
inline SubgroupTable translation_table(const FieldSpecPtr& spec, size_t n) {
  const uint64_t N = space_size(spec, n);
  if (N > kMaxTableStates) throw Error(errc::too_large, "table size exceeds 5^4");
  std::vector<AffineMap> maps;
  maps.reserve(N);
  for (uint64_t i = 0; i < N; ++i) maps.push_back(sigma(vec_from_index(spec, n, i), spec));
  return SubgroupTable(spec, n, std::move(maps));
}

struct PropertyCheck {
  bool pass = true;
  std::vector<Vec> witness;  // offending labels, when failing
};

struct SubgroupReport {
  PropertyCheck closure;
  PropertyCheck abelian;
  PropertyCheck regular;
  PropertyCheck exponent_p;
  PropertyCheck normalized_by_translations;

  bool all() const {
    return closure.pass && abelian.pass && regular.pass && exponent_p.pass &&
           normalized_by_translations.pass;
  }
};

namespace detail {

// Index-packed affine maps; all five subgroup properties are checked in the
// lookup-table domain.
struct PackedAffine {
  std::vector<uint16_t> lin;  // n*n
  std::vector<uint16_t> tr;   // n

  bool operator==(const PackedAffine& o) const { return lin == o.lin && tr == o.tr; }
};

class PackedVerifier {
 public:
  PackedVerifier(const SubgroupTable& t) : ft_(t.field()), n_(t.n()), N_(t.size()) {
    q_ = ft_.order();
    packed_.reserve(N_);
    for (uint64_t i = 0; i < N_; ++i) packed_.push_back(pack(t.at(i)));
  }

  PackedAffine pack(const AffineMap& m) const {
    PackedAffine p;
    p.lin.reserve(n_ * n_);
    for (size_t i = 0; i < n_; ++i)
      for (size_t j = 0; j < n_; ++j)
        p.lin.push_back(static_cast<uint16_t>(m.linear().at(i, j).index()));
    p.tr.reserve(n_);
    for (size_t i = 0; i < n_; ++i)
      p.tr.push_back(static_cast<uint16_t>(m.translation()[i].index()));
    return p;
  }

  PackedAffine compose(const PackedAffine& f, const PackedAffine& g) const {
    PackedAffine r;
    r.lin.assign(n_ * n_, 0);
    r.tr.assign(n_, 0);
    for (size_t i = 0; i < n_; ++i)
      for (size_t k = 0; k < n_; ++k) {
        const uint16_t fik = f.lin[i * n_ + k];
        if (fik == 0) continue;
        for (size_t j = 0; j < n_; ++j)
          r.lin[i * n_ + j] = ft_.add(r.lin[i * n_ + j], ft_.mul(fik, g.lin[k * n_ + j]));
      }
    for (size_t j = 0; j < n_; ++j) {
      uint16_t acc = g.tr[j];
      for (size_t i = 0; i < n_; ++i) acc = ft_.add(acc, ft_.mul(f.tr[i], g.lin[i * n_ + j]));
      r.tr[j] = acc;
    }
    return r;
  }

  uint64_t label_index(const PackedAffine& m) const {
    uint64_t idx = 0;
    for (size_t i = n_; i-- > 0;) idx = idx * q_ + m.tr[i];
    return idx;
  }

  bool is_identity(const PackedAffine& m) const {
    for (size_t i = 0; i < n_; ++i) {
      if (m.tr[i] != 0) return false;
      for (size_t j = 0; j < n_; ++j)
        if (m.lin[i * n_ + j] != (i == j ? 1 : 0)) return false;
    }
    return true;
  }

  uint64_t size() const noexcept { return N_; }
  size_t dim() const noexcept { return n_; }
  const FieldTable& field() const noexcept { return ft_; }
  const PackedAffine& at(uint64_t i) const { return packed_[i]; }

 private:
  FieldTable ft_;
  size_t n_;
  uint64_t N_;
  uint32_t q_;
  std::vector<PackedAffine> packed_;
};

}  // namespace detail

// Direct computation of the five structural properties: closure of pairwise
// composition inside the table, commuting pairs, the labelling bijection
// 0 tau_a = a, the p-fold power identity, and the sigma-conjugation formula
// sigma_a tau_b sigma_a^{-1} = tau_{a gamma_b + b + (p-1)a}.
inline SubgroupReport verify_subgroup_properties(const SubgroupTable& t,
                                                 const AlgebraSpec& alg) {
  if (t.n() != alg.n || *t.field() != *alg.field)
    throw Error(errc::dimension_mismatch, "table and algebra disagree");
  SubgroupReport rep;
  detail::PackedVerifier pv(t);
  const uint64_t N = pv.size();
  const uint32_t p = alg.field->p();

  for (uint64_t a = 0; a < N && rep.regular.pass; ++a)
    if (pv.label_index(pv.at(a)) != a) {
      rep.regular.pass = false;
      rep.regular.witness = {t.label_of(a)};
    }

  for (uint64_t a = 0; a < N && rep.closure.pass && rep.abelian.pass; ++a)
    for (uint64_t b = 0; b < N; ++b) {
      const detail::PackedAffine fg = pv.compose(pv.at(a), pv.at(b));
      if (!(fg == pv.at(pv.label_index(fg)))) {
        rep.closure.pass = false;
        rep.closure.witness = {t.label_of(a), t.label_of(b)};
        break;
      }
      if (b < a) continue;
      if (!(fg == pv.compose(pv.at(b), pv.at(a)))) {
        rep.abelian.pass = false;
        rep.abelian.witness = {t.label_of(a), t.label_of(b)};
        break;
      }
    }

  for (uint64_t a = 0; a < N && rep.exponent_p.pass; ++a) {
    detail::PackedAffine acc = pv.at(a);
    for (uint32_t i = 1; i < p; ++i) acc = pv.compose(acc, pv.at(a));
    if (!pv.is_identity(acc)) {
      rep.exponent_p.pass = false;
      rep.exponent_p.witness = {t.label_of(a)};
    }
  }

  for (uint64_t ia = 0; ia < N && rep.normalized_by_translations.pass; ++ia) {
    const Vec a = t.label_of(ia);
    const FieldElement pm1 = FieldElement::from_int(alg.field, p - 1);
    for (uint64_t ib = 0; ib < N; ++ib) {
      const Vec b = t.label_of(ib);
      // sigma_a tau_b sigma_a^{-1} = (L_b, a L_b + t_b - a), computed inline.
      const detail::PackedAffine& tb = pv.at(ib);
      detail::PackedAffine conj = tb;
      const FieldTable& ft = pv.field();
      for (size_t j = 0; j < t.n(); ++j) {
        uint16_t acc = tb.tr[j];
        for (size_t i = 0; i < t.n(); ++i)
          acc = ft.add(acc, ft.mul(static_cast<uint16_t>(a[i].index()), tb.lin[i * t.n() + j]));
        acc = ft.sub(acc, static_cast<uint16_t>(a[j].index()));
        conj.tr[j] = acc;
      }
      const Vec expected =
          vec_add(vec_add(a * gamma(b, alg), b), vec_scale(pm1, a));
      if (!(conj == pv.at(vec_index(expected)))) {
        rep.normalized_by_translations.pass = false;
        rep.normalized_by_translations.witness = {a, b};
        break;
      }
    }
  }
  return rep;
}

// sigma_a tau_b sigma_a^{-1}; checked against tau(a gamma_b + b + (p-1)a).
inline AffineMap conjugate_sigma_tau(const Vec& a, const Vec& b, const AlgebraSpec& alg) {
  const AffineMap sa = sigma(a, alg.field);
  const AffineMap conj = compose(compose(sa, tau(b, alg)), sa.inverted());
  const FieldElement pm1 = FieldElement::from_int(alg.field, alg.field->p() - 1);
  const Vec label = vec_add(vec_add(a * gamma(b, alg), b), vec_scale(pm1, a));
  if (conj != tau(label, alg))
    throw Error(errc::identity_mismatch, "conjugation formula violated");
  return conj;
}

// [sigma_a, tau_b] = sigma_a^{-1} tau_b^{-1} sigma_a tau_b; equals sigma_{a.b}.
inline AffineMap commutator_sigma_tau(const Vec& a, const Vec& b, const AlgebraSpec& alg) {
  const AffineMap sa = sigma(a, alg.field);
  const AffineMap tb = tau(b, alg);
  const AffineMap comm = compose(compose(compose(sa.inverted(), tb.inverted()), sa), tb);
  if (comm != sigma(product(a, b, alg), alg.field))
    throw Error(errc::identity_mismatch, "commutator formula violated");
  return comm;
}

}  // namespace fpbrace
