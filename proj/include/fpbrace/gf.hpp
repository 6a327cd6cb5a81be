#pragma once

#include <cstdint>
#include <memory>
#include <numeric>
#include <vector>

#include "fpbrace/error.hpp"

// Exact arithmetic in F_{p^k}, p an odd prime. Elements are polynomials in
// F_p[x] reduced modulo a fixed monic irreducible of degree k, stored as
// coefficient vectors (constant term first). The canonical order on elements
// is by the index c_0 + c_1*p + ... + c_{k-1}*p^{k-1}; it fixes which
// nonsquare and which square root "the" one is.

namespace fpbrace {

namespace detail {

inline bool is_prime(uint64_t n) {
  if (n < 2) return false;
  for (uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

// Dense polynomials over F_p, coefficients in [0,p), constant term first.
using Poly = std::vector<uint32_t>;

inline Poly poly_trim(Poly a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
  return a;
}

inline Poly poly_mul(const Poly& a, const Poly& b, uint32_t p) {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1, 0);
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j)
      r[i + j] = static_cast<uint32_t>((r[i + j] + uint64_t(a[i]) * b[j]) % p);
  return poly_trim(std::move(r));
}

// Remainder of a by monic b.
inline Poly poly_mod(Poly a, const Poly& b, uint32_t p) {
  a = poly_trim(std::move(a));
  const size_t db = b.size() - 1;
  while (a.size() > db) {
    const uint32_t lead = a.back();
    const size_t shift = a.size() - 1 - db;
    if (lead != 0) {
      for (size_t i = 0; i <= db; ++i) {
        uint64_t sub = uint64_t(lead) * b[i] % p;
        a[i + shift] = static_cast<uint32_t>((a[i + shift] + p - sub) % p);
      }
    }
    a = poly_trim(std::move(a));
    if (a.empty()) break;
  }
  return a;
}

// Trial division by every monic polynomial of degree 1..deg/2.
inline bool poly_is_irreducible(const Poly& f, uint32_t p) {
  const size_t deg = f.size() - 1;
  if (deg == 1) return true;
  for (size_t dg = 1; dg <= deg / 2; ++dg) {
    uint64_t count = 1;
    for (size_t i = 0; i < dg; ++i) count *= p;
    for (uint64_t idx = 0; idx < count; ++idx) {
      Poly g(dg + 1, 0);
      uint64_t t = idx;
      for (size_t i = 0; i < dg; ++i) {
        g[i] = static_cast<uint32_t>(t % p);
        t /= p;
      }
      g[dg] = 1;
      if (poly_mod(f, g, p).empty()) return false;
    }
  }
  return true;
}

}  // namespace detail

// First monic irreducible of degree k over F_p in canonical scan order
// (constant term is the fastest-varying coefficient). Returned low-degree
// first with the leading 1 included, so the result has k+1 entries.
inline std::vector<uint32_t> find_irreducible(uint32_t p, uint32_t k) {
  if (p == 2) throw Error(errc::even_characteristic, "p must be odd");
  if (!detail::is_prime(p)) throw Error(errc::not_prime, "p = " + std::to_string(p));
  if (k < 1) throw Error(errc::bad_modulus, "degree must be >= 1");
  uint64_t count = 1;
  for (uint32_t i = 0; i < k; ++i) count *= p;
  for (uint64_t idx = 0; idx < count; ++idx) {
    detail::Poly f(k + 1, 0);
    uint64_t t = idx;
    for (uint32_t i = 0; i < k; ++i) {
      f[i] = static_cast<uint32_t>(t % p);
      t /= p;
    }
    f[k] = 1;
    if (detail::poly_is_irreducible(f, p)) return f;
  }
  throw Error(errc::bad_modulus, "no irreducible found");  // unreachable
}

class FieldSpec;
using FieldSpecPtr = std::shared_ptr<const FieldSpec>;

class FieldSpec {
 public:
  // Validates p odd prime, modulus monic of degree k and irreducible.
  FieldSpec(uint32_t p, uint32_t k, std::vector<uint32_t> modulus)
      : p_(p), k_(k), modulus_(std::move(modulus)) {
    if (p_ == 2) throw Error(errc::even_characteristic, "p must be odd");
    if (!detail::is_prime(p_)) throw Error(errc::not_prime, "p = " + std::to_string(p_));
    if (k_ < 1 || modulus_.size() != k_ + 1 || modulus_.back() != 1)
      throw Error(errc::bad_modulus, "modulus must be monic of degree k");
    for (uint32_t c : modulus_)
      if (c >= p_) throw Error(errc::bad_modulus, "coefficient out of range");
    if (!detail::poly_is_irreducible(modulus_, p_))
      throw Error(errc::bad_modulus, "modulus is reducible");
  }

  static FieldSpecPtr create(uint32_t p, uint32_t k) {
    return std::make_shared<const FieldSpec>(p, k, find_irreducible(p, k));
  }
  static FieldSpecPtr create(uint32_t p, uint32_t k, std::vector<uint32_t> modulus) {
    return std::make_shared<const FieldSpec>(p, k, std::move(modulus));
  }

  uint32_t p() const noexcept { return p_; }
  uint32_t k() const noexcept { return k_; }
  const std::vector<uint32_t>& modulus() const noexcept { return modulus_; }

  uint64_t order() const noexcept {
    uint64_t q = 1;
    for (uint32_t i = 0; i < k_; ++i) q *= p_;
    return q;
  }

  bool operator==(const FieldSpec& o) const noexcept {
    return p_ == o.p_ && k_ == o.k_ && modulus_ == o.modulus_;
  }
  bool operator!=(const FieldSpec& o) const noexcept { return !(*this == o); }

 private:
  uint32_t p_;
  uint32_t k_;
  std::vector<uint32_t> modulus_;
};

inline void require_same_spec(const FieldSpecPtr& a, const FieldSpecPtr& b) {
  if (a.get() == b.get()) return;
  if (!a || !b || *a != *b)
    throw Error(errc::spec_mismatch, "operands belong to different fields");
}

enum class SquareClass { Square, NonSquare };

class FieldElement {
 public:
  FieldElement(FieldSpecPtr spec, std::vector<uint32_t> coeffs)
      : spec_(std::move(spec)), c_(std::move(coeffs)) {
    if (c_.size() != spec_->k()) throw Error(errc::bad_input, "coefficient count != k");
    for (uint32_t v : c_)
      if (v >= spec_->p()) throw Error(errc::bad_input, "coefficient out of range");
  }

  static FieldElement zero(const FieldSpecPtr& spec) {
    return FieldElement(spec, std::vector<uint32_t>(spec->k(), 0));
  }
  static FieldElement one(const FieldSpecPtr& spec) {
    std::vector<uint32_t> c(spec->k(), 0);
    c[0] = 1;
    return FieldElement(spec, std::move(c));
  }
  // Residues of integers embed along the prime subfield.
  static FieldElement from_int(const FieldSpecPtr& spec, uint64_t v) {
    std::vector<uint32_t> c(spec->k(), 0);
    c[0] = static_cast<uint32_t>(v % spec->p());
    return FieldElement(spec, std::move(c));
  }
  // Inverse of the canonical index i = c_0 + c_1 p + ...
  static FieldElement from_index(const FieldSpecPtr& spec, uint64_t idx) {
    std::vector<uint32_t> c(spec->k(), 0);
    for (uint32_t i = 0; i < spec->k(); ++i) {
      c[i] = static_cast<uint32_t>(idx % spec->p());
      idx /= spec->p();
    }
    if (idx != 0) throw Error(errc::bad_input, "element index out of range");
    return FieldElement(spec, std::move(c));
  }

  const FieldSpecPtr& spec() const noexcept { return spec_; }
  const std::vector<uint32_t>& coeffs() const noexcept { return c_; }

  uint64_t index() const noexcept {
    uint64_t idx = 0;
    for (size_t i = c_.size(); i-- > 0;) idx = idx * spec_->p() + c_[i];
    return idx;
  }

  bool is_zero() const noexcept {
    for (uint32_t v : c_)
      if (v != 0) return false;
    return true;
  }

  friend FieldElement operator+(const FieldElement& a, const FieldElement& b) {
    require_same_spec(a.spec_, b.spec_);
    std::vector<uint32_t> r(a.c_.size());
    for (size_t i = 0; i < r.size(); ++i) r[i] = (a.c_[i] + b.c_[i]) % a.spec_->p();
    return FieldElement(a.spec_, std::move(r));
  }

  friend FieldElement operator-(const FieldElement& a, const FieldElement& b) {
    require_same_spec(a.spec_, b.spec_);
    const uint32_t p = a.spec_->p();
    std::vector<uint32_t> r(a.c_.size());
    for (size_t i = 0; i < r.size(); ++i) r[i] = (a.c_[i] + p - b.c_[i]) % p;
    return FieldElement(a.spec_, std::move(r));
  }

  friend FieldElement operator-(const FieldElement& a) {
    const uint32_t p = a.spec_->p();
    std::vector<uint32_t> r(a.c_.size());
    for (size_t i = 0; i < r.size(); ++i) r[i] = (p - a.c_[i]) % p;
    return FieldElement(a.spec_, std::move(r));
  }

  friend FieldElement operator*(const FieldElement& a, const FieldElement& b) {
    require_same_spec(a.spec_, b.spec_);
    const uint32_t p = a.spec_->p();
    detail::Poly prod = detail::poly_mul(a.c_, b.c_, p);
    prod = detail::poly_mod(std::move(prod), a.spec_->modulus(), p);
    prod.resize(a.spec_->k(), 0);
    return FieldElement(a.spec_, std::move(prod));
  }

  FieldElement pow(uint64_t e) const {
    FieldElement base = *this, acc = one(spec_);
    while (e > 0) {
      if (e & 1) acc = acc * base;
      base = base * base;
      e >>= 1;
    }
    return acc;
  }

  FieldElement inv() const {
    if (is_zero()) throw Error(errc::division_by_zero, "inverse of zero");
    return pow(spec_->order() - 2);
  }

  friend FieldElement operator/(const FieldElement& a, const FieldElement& b) {
    return a * b.inv();
  }

  bool operator==(const FieldElement& o) const {
    return (spec_.get() == o.spec_.get() || *spec_ == *o.spec_) && c_ == o.c_;
  }
  bool operator!=(const FieldElement& o) const { return !(*this == o); }

 private:
  FieldSpecPtr spec_;
  std::vector<uint32_t> c_;
};

// Euler criterion: a is a square iff a^((q-1)/2) = 1.
inline SquareClass is_square(const FieldElement& a) {
  if (a.is_zero()) throw Error(errc::zero_input, "square class of zero is undefined");
  const uint64_t e = (a.spec()->order() - 1) / 2;
  return a.pow(e) == FieldElement::one(a.spec()) ? SquareClass::Square
                                                 : SquareClass::NonSquare;
}

// First nonsquare in canonical element order.
inline FieldElement find_nonsquare(const FieldSpecPtr& spec) {
  for (uint64_t i = 1; i < spec->order(); ++i) {
    FieldElement a = FieldElement::from_index(spec, i);
    if (is_square(a) == SquareClass::NonSquare) return a;
  }
  throw Error(errc::zero_input, "no nonsquare exists");  // impossible for odd p
}

// Canonically smaller of the two square roots, by exhaustive scan.
inline FieldElement sqrt(const FieldElement& a) {
  if (a.is_zero()) throw Error(errc::zero_input, "sqrt of zero");
  if (is_square(a) == SquareClass::NonSquare)
    throw Error(errc::not_a_square, "element has no square root");
  for (uint64_t i = 1; i < a.spec()->order(); ++i) {
    FieldElement r = FieldElement::from_index(a.spec(), i);
    if (r * r == a) return r;
  }
  throw Error(errc::not_a_square, "no root found");  // unreachable
}

// Index-domain lookup tables for a small field; the hot loops of the
// exhaustive checkers run on these instead of FieldElement.
class FieldTable {
 public:
  static constexpr uint64_t kMaxOrder = 2048;

  explicit FieldTable(FieldSpecPtr spec) : spec_(std::move(spec)) {
    const uint64_t q = spec_->order();
    if (q > kMaxOrder)
      throw Error(errc::too_large, "field too large for lookup tables");
    q_ = static_cast<uint32_t>(q);
    elems_.reserve(q_);
    for (uint32_t i = 0; i < q_; ++i) elems_.push_back(FieldElement::from_index(spec_, i));
    add_.resize(uint64_t(q_) * q_);
    mul_.resize(uint64_t(q_) * q_);
    neg_.resize(q_);
    inv_.assign(q_, 0);
    for (uint32_t i = 0; i < q_; ++i) {
      neg_[i] = static_cast<uint16_t>((-elems_[i]).index());
      for (uint32_t j = 0; j < q_; ++j) {
        add_[uint64_t(i) * q_ + j] = static_cast<uint16_t>((elems_[i] + elems_[j]).index());
        mul_[uint64_t(i) * q_ + j] = static_cast<uint16_t>((elems_[i] * elems_[j]).index());
      }
    }
    for (uint32_t i = 1; i < q_; ++i) inv_[i] = static_cast<uint16_t>(elems_[i].inv().index());
    square_.assign(q_, 0);
    for (uint32_t i = 1; i < q_; ++i) square_[mul(i, i)] = 1;
  }

  const FieldSpecPtr& spec() const noexcept { return spec_; }
  uint32_t order() const noexcept { return q_; }
  uint32_t characteristic() const noexcept { return spec_->p(); }

  uint16_t add(uint32_t a, uint32_t b) const { return add_[uint64_t(a) * q_ + b]; }
  uint16_t mul(uint32_t a, uint32_t b) const { return mul_[uint64_t(a) * q_ + b]; }
  uint16_t neg(uint32_t a) const { return neg_[a]; }
  uint16_t sub(uint32_t a, uint32_t b) const { return add(a, neg_[b]); }
  uint16_t inv(uint32_t a) const {
    if (a == 0) throw Error(errc::division_by_zero, "inverse of zero");
    return inv_[a];
  }
  bool is_square_index(uint32_t a) const { return square_[a] != 0; }

  const FieldElement& element(uint32_t idx) const { return elems_[idx]; }
  uint32_t index_of(const FieldElement& e) const {
    return static_cast<uint32_t>(e.index());
  }

 private:
  FieldSpecPtr spec_;
  uint32_t q_ = 0;
  std::vector<FieldElement> elems_;
  std::vector<uint16_t> add_, mul_, neg_, inv_;
  std::vector<uint8_t> square_;
};

}  // namespace fpbrace
