#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "fpbrace/radical_algebra.hpp"

// Axiom checkers for skew braces of abelian type over explicit circle
// operations. Exhaustive mode enumerates V = F^n (vectors indexed with
// coordinate 0 least significant) and scans triples in ascending index
// order, so the first counterexample is reproducible. Sampled mode draws
// from a seeded generator recorded in the verdict.

namespace fpbrace {

struct Verdict {
  bool pass = true;
  std::string axiom = "none";          // failing axiom, or "none"
  std::vector<Vec> witness;            // up to three vectors
  std::string mode = "exhaustive";     // "exhaustive" | "sampled"
  std::optional<uint64_t> seed;
};

enum class CheckMode { Exhaustive, Sampled };

struct CheckOptions {
  uint64_t seed = 0;
  size_t samples = 512;
};

// Exhaustive scans are capped at |V| = 3^6 states.
inline constexpr uint64_t kMaxExhaustiveStates = 729;

class BraceCandidate {
 public:
  using CircFn = std::function<Vec(const Vec&, const Vec&)>;

  BraceCandidate(FieldSpecPtr field, size_t n, CircFn circ,
                 std::shared_ptr<const StructureConstantAlgebra> sca = nullptr)
      : field_(std::move(field)), n_(n), circ_(std::move(circ)), sca_(std::move(sca)) {}

  static BraceCandidate from_structure_constants(const StructureConstantAlgebra& sca) {
    auto shared = std::make_shared<const StructureConstantAlgebra>(sca);
    return BraceCandidate(
        shared->spec(), shared->n(),
        [shared](const Vec& a, const Vec& b) { return shared->circle(a, b); }, shared);
  }

  static BraceCandidate from_algebra(const AlgebraSpec& alg) {
    return from_structure_constants(StructureConstantAlgebra::from_algebra(alg));
  }

  // The trivial brace: circle coincides with addition.
  static BraceCandidate trivial(const FieldSpecPtr& field, size_t n) {
    return BraceCandidate(field, n,
                          [](const Vec& a, const Vec& b) { return vec_add(a, b); });
  }

  // Same candidate with one table entry forced to `value`.
  BraceCandidate with_override(Vec a, Vec b, Vec value) const {
    CircFn base = circ_;
    return BraceCandidate(
        field_, n_,
        [base, a = std::move(a), b = std::move(b), value = std::move(value)](
            const Vec& x, const Vec& y) { return (x == a && y == b) ? value : base(x, y); });
  }

  const FieldSpecPtr& field() const noexcept { return field_; }
  size_t n() const noexcept { return n_; }
  Vec circ(const Vec& a, const Vec& b) const { return circ_(a, b); }
  const StructureConstantAlgebra* sca() const noexcept { return sca_.get(); }

  uint64_t states() const {
    uint64_t s = 1;
    for (size_t i = 0; i < n_; ++i) s *= field_->order();
    return s;
  }

 private:
  FieldSpecPtr field_;
  size_t n_;
  CircFn circ_;
  std::shared_ptr<const StructureConstantAlgebra> sca_;
};

namespace detail {

// Index-domain view of V = F^n plus the addition/circle Cayley tables used
// by exhaustive scans.
class VectorTables {
 public:
  VectorTables(const BraceCandidate& cand)
      : ft_(cand.field()), n_(cand.n()), N_(cand.states()) {
    const uint32_t q = ft_.order();
    coords_.resize(N_ * n_);
    for (uint64_t v = 0; v < N_; ++v) {
      uint64_t t = v;
      for (size_t i = 0; i < n_; ++i) {
        coords_[v * n_ + i] = static_cast<uint16_t>(t % q);
        t /= q;
      }
    }
    add_.resize(N_ * N_);
    neg_.resize(N_);
    for (uint64_t a = 0; a < N_; ++a) {
      uint64_t nidx = 0;
      for (size_t i = n_; i-- > 0;) nidx = nidx * q + ft_.neg(coords_[a * n_ + i]);
      neg_[a] = static_cast<uint32_t>(nidx);
      for (uint64_t b = 0; b < N_; ++b) {
        uint64_t s = 0;
        for (size_t i = n_; i-- > 0;)
          s = s * q + ft_.add(coords_[a * n_ + i], coords_[b * n_ + i]);
        add_[a * N_ + b] = static_cast<uint32_t>(s);
      }
    }
    circ_.resize(N_ * N_);
    if (const auto* sca = cand.sca()) {
      // Bilinear fast path straight from the structure constants.
      std::vector<uint16_t> cc(n_ * n_ * n_);
      for (size_t i = 0; i < n_; ++i)
        for (size_t j = 0; j < n_; ++j)
          for (size_t l = 0; l < n_; ++l)
            cc[(i * n_ + j) * n_ + l] = static_cast<uint16_t>(sca->c(i, j, l).index());
      std::vector<uint16_t> prod(n_);
      for (uint64_t a = 0; a < N_; ++a)
        for (uint64_t b = 0; b < N_; ++b) {
          for (size_t l = 0; l < n_; ++l) prod[l] = 0;
          for (size_t i = 0; i < n_; ++i) {
            const uint16_t ai = coords_[a * n_ + i];
            if (ai == 0) continue;
            for (size_t j = 0; j < n_; ++j) {
              const uint16_t bj = coords_[b * n_ + j];
              if (bj == 0) continue;
              const uint16_t f = ft_.mul(ai, bj);
              for (size_t l = 0; l < n_; ++l) {
                const uint16_t c = cc[(i * n_ + j) * n_ + l];
                if (c != 0) prod[l] = ft_.add(prod[l], ft_.mul(f, c));
              }
            }
          }
          uint64_t pidx = 0;
          for (size_t i = n_; i-- > 0;) pidx = pidx * q + prod[i];
          circ_[a * N_ + b] = add_[add_[a * N_ + b] * N_ + pidx];
        }
    } else {
      for (uint64_t a = 0; a < N_; ++a)
        for (uint64_t b = 0; b < N_; ++b)
          circ_[a * N_ + b] = index_of(cand.circ(vec(a), vec(b)));
    }
  }

  uint64_t size() const noexcept { return N_; }

  uint32_t add(uint64_t a, uint64_t b) const { return add_[a * N_ + b]; }
  uint32_t neg(uint64_t a) const { return neg_[a]; }
  uint32_t circ(uint64_t a, uint64_t b) const { return circ_[a * N_ + b]; }
  void set_circ(uint64_t a, uint64_t b, uint32_t v) { circ_[a * N_ + b] = v; }

  Vec vec(uint64_t idx) const {
    Vec v;
    v.reserve(n_);
    for (size_t i = 0; i < n_; ++i) v.push_back(ft_.element(coords_[idx * n_ + i]));
    return v;
  }

  uint64_t index_of(const Vec& v) const {
    uint64_t idx = 0;
    for (size_t i = n_; i-- > 0;) idx = idx * ft_.order() + v[i].index();
    return idx;
  }

 private:
  FieldTable ft_;
  size_t n_;
  uint64_t N_;
  std::vector<uint16_t> coords_;
  std::vector<uint32_t> add_, circ_;
  std::vector<uint32_t> neg_;
};

inline Verdict fail(const VectorTables& vt, std::string axiom,
                    std::initializer_list<uint64_t> witness_idx) {
  Verdict v;
  v.pass = false;
  v.axiom = std::move(axiom);
  for (uint64_t w : witness_idx) v.witness.push_back(vt.vec(w));
  return v;
}

// Abelian group axioms for (V,o) plus the supplied compatibility identities.
// Identity element is index 0 (the zero vector).
inline std::optional<Verdict> circle_group_axioms(const VectorTables& vt,
                                                  std::vector<int64_t>& cinv) {
  const uint64_t N = vt.size();
  for (uint64_t a = 0; a < N; ++a) {
    if (vt.circ(0, a) != a || vt.circ(a, 0) != a)
      return fail(vt, "circle_identity", {a});
  }
  cinv.assign(N, -1);
  for (uint64_t a = 0; a < N; ++a) {
    for (uint64_t b = 0; b < N; ++b)
      if (vt.circ(a, b) == 0 && vt.circ(b, a) == 0) {
        cinv[a] = static_cast<int64_t>(b);
        break;
      }
    if (cinv[a] < 0) return fail(vt, "circle_inverses", {a});
  }
  for (uint64_t a = 0; a < N; ++a)
    for (uint64_t b = a; b < N; ++b)
      if (vt.circ(a, b) != vt.circ(b, a)) return fail(vt, "circle_commutativity", {a, b});
  for (uint64_t a = 0; a < N; ++a)
    for (uint64_t b = 0; b < N; ++b) {
      const uint32_t ab = vt.circ(a, b);
      for (uint64_t c = 0; c < N; ++c)
        if (vt.circ(ab, c) != vt.circ(a, vt.circ(b, c)))
          return fail(vt, "circle_associativity", {a, b, c});
    }
  return std::nullopt;
}

}  // namespace detail

// Eq. a o (b + c) = a o b - a + a o c, after the abelian-group axioms.
inline Verdict check_left_brace(const BraceCandidate& cand,
                                CheckMode mode = CheckMode::Exhaustive,
                                const CheckOptions& opts = {}) {
  if (mode == CheckMode::Exhaustive) {
    if (cand.states() > kMaxExhaustiveStates)
      throw Error(errc::too_large_for_exhaustive, "state space exceeds 3^6");
    detail::VectorTables vt(cand);
    std::vector<int64_t> cinv;
    if (auto v = detail::circle_group_axioms(vt, cinv)) return *v;
    const uint64_t N = vt.size();
    for (uint64_t a = 0; a < N; ++a)
      for (uint64_t b = 0; b < N; ++b) {
        const uint32_t ab_minus_a = vt.add(vt.circ(a, b), vt.neg(a));
        for (uint64_t c = 0; c < N; ++c)
          if (vt.circ(a, vt.add(b, c)) != vt.add(ab_minus_a, vt.circ(a, c)))
            return detail::fail(vt, "left_brace_compatibility", {a, b, c});
      }
    return Verdict{};
  }
  // Sampled: identities only, seeded and replayable.
  Verdict v;
  v.mode = "sampled";
  v.seed = opts.seed;
  std::mt19937_64 rng(opts.seed);
  const uint64_t q = cand.field()->order();
  auto rand_vec = [&] {
    Vec x;
    x.reserve(cand.n());
    for (size_t i = 0; i < cand.n(); ++i)
      x.push_back(FieldElement::from_index(cand.field(), rng() % q));
    return x;
  };
  const Vec zero = zero_vec(cand.field(), cand.n());
  for (size_t s = 0; s < opts.samples; ++s) {
    Vec a = rand_vec(), b = rand_vec(), c = rand_vec();
    if (cand.circ(zero, a) != a || cand.circ(a, zero) != a) {
      v.pass = false;
      v.axiom = "circle_identity";
      v.witness = {a};
      return v;
    }
    Vec lhs = cand.circ(a, vec_add(b, c));
    Vec rhs = vec_add(vec_sub(cand.circ(a, b), a), cand.circ(a, c));
    if (lhs != rhs) {
      v.pass = false;
      v.axiom = "left_brace_compatibility";
      v.witness = {a, b, c};
      return v;
    }
  }
  return v;
}

// Eq. (a + b) o c = a o c - c + b o c.
inline Verdict check_right_brace(const BraceCandidate& cand,
                                 CheckMode mode = CheckMode::Exhaustive,
                                 const CheckOptions& opts = {}) {
  if (mode == CheckMode::Exhaustive) {
    if (cand.states() > kMaxExhaustiveStates)
      throw Error(errc::too_large_for_exhaustive, "state space exceeds 3^6");
    detail::VectorTables vt(cand);
    std::vector<int64_t> cinv;
    if (auto v = detail::circle_group_axioms(vt, cinv)) return *v;
    const uint64_t N = vt.size();
    for (uint64_t a = 0; a < N; ++a)
      for (uint64_t b = 0; b < N; ++b) {
        const uint32_t apb = vt.add(a, b);
        for (uint64_t c = 0; c < N; ++c)
          if (vt.circ(apb, c) !=
              vt.add(vt.add(vt.circ(a, c), vt.neg(c)), vt.circ(b, c)))
            return detail::fail(vt, "right_brace_compatibility", {a, b, c});
      }
    return Verdict{};
  }
  Verdict v;
  v.mode = "sampled";
  v.seed = opts.seed;
  std::mt19937_64 rng(opts.seed);
  const uint64_t q = cand.field()->order();
  auto rand_vec = [&] {
    Vec x;
    x.reserve(cand.n());
    for (size_t i = 0; i < cand.n(); ++i)
      x.push_back(FieldElement::from_index(cand.field(), rng() % q));
    return x;
  };
  for (size_t s = 0; s < opts.samples; ++s) {
    Vec a = rand_vec(), b = rand_vec(), c = rand_vec();
    Vec lhs = cand.circ(vec_add(a, b), c);
    Vec rhs = vec_add(vec_sub(cand.circ(a, c), c), cand.circ(b, c));
    if (lhs != rhs) {
      v.pass = false;
      v.axiom = "right_brace_compatibility";
      v.witness = {a, b, c};
      return v;
    }
  }
  return v;
}

struct BibraceReport {
  Verdict verdict;
  int nilpotency_index = 0;            // from nilpotency_check
  bool consistent_with_nilpotency = false;  // pass <=> index <= 3
};

// (V,+,o) and (V,o,+) both braces. The dual compatibility identities read
//   a + (b o c) = (a + b) o abar o (a + c)
//   (a o b) + c = (a + c) o cbar o (b + c)
// with xbar the circle inverse of x. Cross-checked against nilpotency_check.
inline BibraceReport check_bibrace(const StructureConstantAlgebra& sca,
                                   CheckMode mode = CheckMode::Exhaustive,
                                   const CheckOptions& opts = {}) {
  BibraceReport report;
  BraceCandidate cand = BraceCandidate::from_structure_constants(sca);
  report.nilpotency_index = nilpotency_check(sca);

  auto finish = [&](Verdict v) {
    report.verdict = std::move(v);
    report.consistent_with_nilpotency =
        report.verdict.pass == (report.nilpotency_index <= 3);
    return report;
  };

  if (mode == CheckMode::Exhaustive) {
    if (cand.states() > kMaxExhaustiveStates)
      throw Error(errc::too_large_for_exhaustive, "state space exceeds 3^6");
    detail::VectorTables vt(cand);
    std::vector<int64_t> cinv;
    if (auto v = detail::circle_group_axioms(vt, cinv)) return finish(*v);
    const uint64_t N = vt.size();
    for (uint64_t a = 0; a < N; ++a)
      for (uint64_t b = 0; b < N; ++b) {
        const uint32_t ab_minus_a = vt.add(vt.circ(a, b), vt.neg(a));
        const uint32_t apb = vt.add(a, b);
        for (uint64_t c = 0; c < N; ++c) {
          if (vt.circ(a, vt.add(b, c)) != vt.add(ab_minus_a, vt.circ(a, c)))
            return finish(detail::fail(vt, "left_brace_compatibility", {a, b, c}));
          if (vt.circ(apb, c) !=
              vt.add(vt.add(vt.circ(a, c), vt.neg(c)), vt.circ(b, c)))
            return finish(detail::fail(vt, "right_brace_compatibility", {a, b, c}));
        }
      }
    for (uint64_t a = 0; a < N; ++a) {
      const uint32_t abar = static_cast<uint32_t>(cinv[a]);
      for (uint64_t b = 0; b < N; ++b)
        for (uint64_t c = 0; c < N; ++c) {
          if (vt.add(a, vt.circ(b, c)) !=
              vt.circ(vt.circ(vt.add(a, b), abar), vt.add(a, c)))
            return finish(detail::fail(vt, "dual_left_brace_compatibility", {a, b, c}));
          const uint32_t cbar = static_cast<uint32_t>(cinv[c]);
          if (vt.add(vt.circ(a, b), c) !=
              vt.circ(vt.circ(vt.add(a, c), cbar), vt.add(b, c)))
            return finish(detail::fail(vt, "dual_right_brace_compatibility", {a, b, c}));
        }
    }
    return finish(Verdict{});
  }

  Verdict v;
  v.mode = "sampled";
  v.seed = opts.seed;
  std::mt19937_64 rng(opts.seed);
  const uint64_t q = sca.spec()->order();
  const uint32_t p = sca.spec()->p();
  auto rand_vec = [&] {
    Vec x;
    x.reserve(sca.n());
    for (size_t i = 0; i < sca.n(); ++i)
      x.push_back(FieldElement::from_index(sca.spec(), rng() % q));
    return x;
  };
  const Vec zero = zero_vec(sca.spec(), sca.n());
  auto circle_inv = [&](const Vec& a) {
    Vec r = a;
    for (uint32_t i = 0; i + 2 < p; ++i) r = sca.circle(r, a);
    return r;
  };
  for (size_t s = 0; s < opts.samples; ++s) {
    Vec a = rand_vec(), b = rand_vec(), c = rand_vec();
    Vec abar = circle_inv(a);
    if (sca.circle(a, abar) != zero) {
      v.pass = false;
      v.axiom = "circle_inverses";
      v.witness = {a};
      return finish(std::move(v));
    }
    Vec lhs = vec_add(a, sca.circle(b, c));
    Vec rhs = sca.circle(sca.circle(vec_add(a, b), abar), vec_add(a, c));
    if (lhs != rhs) {
      v.pass = false;
      v.axiom = "dual_left_brace_compatibility";
      v.witness = {a, b, c};
      return finish(std::move(v));
    }
    Vec cbar = circle_inv(c);
    lhs = vec_add(sca.circle(a, b), c);
    rhs = sca.circle(sca.circle(vec_add(a, c), cbar), vec_add(b, c));
    if (lhs != rhs) {
      v.pass = false;
      v.axiom = "dual_right_brace_compatibility";
      v.witness = {a, b, c};
      return finish(std::move(v));
    }
  }
  return finish(std::move(v));
}

// gamma_{a+b} = gamma_{a o b} = gamma_a gamma_b over all (or sampled) pairs.
inline Verdict gamma_homomorphism_check(const AlgebraSpec& alg,
                                        CheckMode mode = CheckMode::Exhaustive,
                                        const CheckOptions& opts = {}) {
  uint64_t N = 1;
  for (size_t i = 0; i < alg.n; ++i) N *= alg.field->order();
  auto check_pair = [&](const Vec& a, const Vec& b) {
    const MatFp lhs = gamma(vec_add(a, b), alg);
    return lhs == gamma(a, alg) * gamma(b, alg) &&
           lhs == gamma(circle(a, b, alg), alg);
  };
  if (mode == CheckMode::Exhaustive) {
    if (N > kMaxExhaustiveStates)
      throw Error(errc::too_large_for_exhaustive, "state space exceeds 3^6");
    const uint64_t q = alg.field->order();
    auto decode = [&](uint64_t idx) {
      Vec v;
      v.reserve(alg.n);
      for (size_t i = 0; i < alg.n; ++i) {
        v.push_back(FieldElement::from_index(alg.field, idx % q));
        idx /= q;
      }
      return v;
    };
    for (uint64_t ia = 0; ia < N; ++ia) {
      const Vec a = decode(ia);
      for (uint64_t ib = 0; ib < N; ++ib) {
        const Vec b = decode(ib);
        if (!check_pair(a, b)) {
          Verdict v;
          v.pass = false;
          v.axiom = "gamma_homomorphism";
          v.witness = {a, b};
          return v;
        }
      }
    }
    return Verdict{};
  }
  Verdict v;
  v.mode = "sampled";
  v.seed = opts.seed;
  std::mt19937_64 rng(opts.seed);
  const uint64_t q = alg.field->order();
  auto rand_vec = [&] {
    Vec x;
    x.reserve(alg.n);
    for (size_t i = 0; i < alg.n; ++i)
      x.push_back(FieldElement::from_index(alg.field, rng() % q));
    return x;
  };
  for (size_t s = 0; s < opts.samples; ++s) {
    Vec a = rand_vec(), b = rand_vec();
    if (!check_pair(a, b)) {
      v.pass = false;
      v.axiom = "gamma_homomorphism";
      v.witness = {a, b};
      return v;
    }
  }
  return v;
}

}  // namespace fpbrace
