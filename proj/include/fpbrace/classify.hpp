#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "fpbrace/matfp.hpp"
#include "fpbrace/radical_algebra.hpp"

// Isomorphism testing and classification for d = 1 algebras: two algebras
// are isomorphic iff their defining matrices satisfy A Theta^1 A^T = l Theta^2
// for some invertible A and l in {1, q}; with rank fixed this reduces to
// comparing discriminants, so classes are counted by the parity of n-1.

namespace fpbrace {

// A Theta^1 A^T = l Theta^2. The induced block map diag(A, l) carries the
// second product onto the first: F(x) .1 F(y) = F(x .2 y).
struct IsoWitness {
  MatFp A;
  FieldElement l;
};

inline MatFp iso_block_matrix(const IsoWitness& w, size_t n) {
  const size_t m = w.A.rows();
  if (m + 1 != n) throw Error(errc::dimension_mismatch, "witness block size");
  MatFp f = MatFp::identity(w.A.spec(), n);
  for (size_t i = 0; i < m; ++i)
    for (size_t j = 0; j < m; ++j) f.at(i, j) = w.A.at(i, j);
  f.at(m, m) = w.l;
  return f;
}

inline void require_comparable(const AlgebraSpec& a, const AlgebraSpec& b) {
  require_same_spec(a.field, b.field);
  if (a.n != b.n) throw Error(errc::dimension_mismatch, "algebra dimensions differ");
  if (a.d != 1 || b.d != 1)
    throw Error(errc::unsupported_d, "classification requires d = 1 (reduce first)");
}

// Checks the matrix relation and multiplicativity of diag(A, l) on all basis
// pairs, the displayed identity of the isomorphism theorem.
inline bool validate_iso_witness(const IsoWitness& w, const AlgebraSpec& alg1,
                                 const AlgebraSpec& alg2) {
  require_comparable(alg1, alg2);
  const size_t n = alg1.n;
  const MatFp t1 = alg1.theta.scalar_matrix();
  const MatFp t2 = alg2.theta.scalar_matrix();
  if (w.A.rows() != t1.rows() || w.A.det().is_zero()) return false;
  if (w.l.is_zero()) return false;
  if (w.A * t1 * w.A.transpose() != w.l * t2) return false;
  const MatFp f = iso_block_matrix(w, n);
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) {
      const Vec fi = basis_vec(alg1.field, n, i) * f;
      const Vec fj = basis_vec(alg1.field, n, j) * f;
      const Vec lhs = product(fi, fj, alg1);
      const Vec rhs =
          product(basis_vec(alg1.field, n, i), basis_vec(alg1.field, n, j), alg2) * f;
      if (lhs != rhs) return false;
    }
  return true;
}

// Witness search through canonical forms: bring both thetas to a Serre
// diagonal shape; on label mismatch retry against q Theta^2 (the only other
// scaling class). Every witness is validated before being returned.
inline std::optional<IsoWitness> iso_test(const AlgebraSpec& alg1,
                                          const AlgebraSpec& alg2) {
  require_comparable(alg1, alg2);
  const MatFp t1 = alg1.theta.scalar_matrix();
  const MatFp t2 = alg2.theta.scalar_matrix();
  const FieldSpecPtr& spec = alg1.field;

  const CanonicalFormResult c1 = canonical_form(t1);
  const CanonicalFormResult c2 = canonical_form(t2);

  std::optional<IsoWitness> w;
  if (c1.label == c2.label) {
    w = IsoWitness{c2.transform.inverse() * c1.transform, FieldElement::one(spec)};
  } else {
    const FieldElement q = find_nonsquare(spec);
    const CanonicalFormResult c2q = canonical_form(q * t2);
    if (c1.label == c2q.label)
      w = IsoWitness{c2q.transform.inverse() * c1.transform, q};
  }
  if (!w) return std::nullopt;
  if (!validate_iso_witness(*w, alg1, alg2))
    throw Error(errc::verification_failed, "constructed witness failed validation");
  return w;
}

enum class AlgebraClass { IdentityForm, NonSquareForm };

struct ClassLabel {
  AlgebraClass form;
  uint32_t p;
  uint32_t k;
  size_t n;

  bool operator==(const ClassLabel& o) const {
    return form == o.form && p == o.p && k == o.k && n == o.n;
  }
};

// NonSquareForm exists only for even m = n-1; for odd m rescaling by q flips
// the discriminant, so the two candidate representatives merge.
inline ClassLabel class_of(const AlgebraSpec& alg) {
  if (alg.d != 1)
    throw Error(errc::unsupported_d, "classification requires d = 1 (reduce first)");
  const size_t m = alg.m();
  const SquareClass disc = discriminant(alg.theta.scalar_matrix());
  AlgebraClass form = AlgebraClass::IdentityForm;
  if (disc == SquareClass::NonSquare && m % 2 == 0) form = AlgebraClass::NonSquareForm;
  return ClassLabel{form, alg.field->p(), alg.field->k(), alg.n};
}

inline int count_classes(uint32_t p, uint32_t k, size_t n) {
  if (p == 2) throw Error(errc::even_characteristic, "p must be odd");
  if (!detail::is_prime(p)) throw Error(errc::not_prime, "p = " + std::to_string(p));
  if (k < 1 || n < 2) throw Error(errc::dimension_mismatch, "need k >= 1 and n >= 2");
  return (n - 1) % 2 == 0 ? 2 : 1;
}

inline std::vector<AlgebraSpec> canonical_representatives(uint32_t p, uint32_t k,
                                                          size_t n) {
  const int count = count_classes(p, k, n);
  const FieldSpecPtr spec = FieldSpec::create(p, k);
  const size_t m = n - 1;
  std::vector<AlgebraSpec> reps;
  reps.push_back(AlgebraSpec::from_scalar_theta(spec, MatFp::identity(spec, m)));
  if (count == 2) {
    MatFp t = MatFp::identity(spec, m);
    t.at(m - 1, m - 1) = find_nonsquare(spec);
    reps.push_back(AlgebraSpec::from_scalar_theta(spec, t));
  }
  return reps;
}

}  // namespace fpbrace
