// Acceptance suite: one line per criterion, PASS/FAIL, exact checks only.
// Exit status is the number of failed criteria.

#include <chrono>
#include <cstdio>
#include <random>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "fpbrace/fpbrace.hpp"

using namespace fpbrace;
using Clock = std::chrono::steady_clock;

namespace {

int failures = 0;

void report(int idx, const std::string& name, bool pass, const std::string& detail) {
  std::printf("[%s] %d. %s: %s\n", pass ? "PASS" : "FAIL", idx, name.c_str(),
              detail.c_str());
  if (!pass) ++failures;
}

double elapsed(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

FieldElement rand_elem(const FieldSpecPtr& spec, std::mt19937_64& rng) {
  return FieldElement::from_index(spec, rng() % spec->order());
}

MatFp rand_symmetric(const FieldSpecPtr& spec, size_t n, std::mt19937_64& rng) {
  MatFp m(spec, n, n);
  for (size_t i = 0; i < n; ++i)
    for (size_t j = i; j < n; ++j) {
      m.at(i, j) = rand_elem(spec, rng);
      m.at(j, i) = m.at(i, j);
    }
  return m;
}

MatFp rand_invertible(const FieldSpecPtr& spec, size_t n, std::mt19937_64& rng) {
  while (true) {
    MatFp m(spec, n, n);
    for (size_t i = 0; i < n; ++i)
      for (size_t j = 0; j < n; ++j) m.at(i, j) = rand_elem(spec, rng);
    if (!m.det().is_zero()) return m;
  }
}

MatFp rand_invertible_symmetric(const FieldSpecPtr& spec, size_t n, std::mt19937_64& rng) {
  while (true) {
    MatFp m = rand_symmetric(spec, n, rng);
    if (!m.det().is_zero()) return m;
  }
}

// Deterministic subset when enumerations are too large to sweep in full:
// a head segment plus seeded random picks.
std::vector<size_t> pick_indices(size_t total, size_t budget, uint64_t seed) {
  std::vector<size_t> idx;
  if (total <= budget) {
    for (size_t i = 0; i < total; ++i) idx.push_back(i);
    return idx;
  }
  std::set<size_t> chosen;
  for (size_t i = 0; i < budget / 2; ++i) chosen.insert(i);
  std::mt19937_64 rng(seed);
  while (chosen.size() < budget) chosen.insert(rng() % total);
  idx.assign(chosen.begin(), chosen.end());
  return idx;
}

// --------------------------------------------------------------------------

void criterion1_class_counts() {
  const auto t0 = Clock::now();
  bool pass = true;
  std::string detail;

  for (uint32_t p : {3u, 5u, 7u})
    for (uint32_t k : {1u, 2u})
      for (size_t n = 2; n <= 5; ++n) {
        const int expected = (n - 1) % 2 == 0 ? 2 : 1;
        if (count_classes(p, k, n) != expected) {
          pass = false;
          detail = "count_classes(" + std::to_string(p) + "," + std::to_string(k) + "," +
                   std::to_string(n) + ") wrong";
        }
      }

  size_t sets = 0;
  for (auto [p, k, m] : {std::tuple<uint32_t, uint32_t, size_t>{3, 1, 1},
                         {3, 1, 2},
                         {5, 1, 1},
                         {5, 1, 2}}) {
    const auto spec = FieldSpec::create(p, k);
    const auto thetas = enumerate_valid_theta(spec, m);
    const auto via_iso = partition_into_classes(spec, thetas, PartitionVia::IsoTest);
    const auto via_bf = partition_into_classes(spec, thetas, PartitionVia::BruteForce);
    const int expected = count_classes(p, k, m + 1);
    if (via_iso != via_bf || static_cast<int>(via_iso.size()) != expected) {
      pass = false;
      detail = "partition mismatch at (" + std::to_string(p) + ",1," + std::to_string(m) + ")";
    }
    ++sets;
  }
  const double dt = elapsed(t0);
  if (dt > 120.0) {
    pass = false;
    detail = "runtime " + std::to_string(dt) + "s exceeds 2 minutes";
  }
  if (detail.empty())
    detail = "48 closed-form counts; " + std::to_string(sets) +
             " exhaustive partitions agree via both routes (" + std::to_string(dt) + "s)";
  report(1, "class-count theorem", pass, detail);
}

void criterion2_witness_soundness() {
  bool pass = true;
  std::string detail;
  std::mt19937_64 rng(20260810);

  const std::vector<std::tuple<uint32_t, uint32_t, size_t>> pools = {
      {3, 1, 1}, {3, 1, 2}, {3, 1, 3}, {5, 1, 1}, {5, 1, 2}, {7, 1, 2}, {3, 2, 1}, {3, 2, 2}};
  size_t validated = 0;
  for (int t = 0; t < 200 && pass; ++t) {
    const auto [p, k, m] = pools[t % pools.size()];
    const auto spec = FieldSpec::create(p, k);
    const MatFp theta1 = rand_invertible_symmetric(spec, m, rng);
    const MatFp s = rand_invertible(spec, m, rng);
    const FieldElement l =
        (rng() % 2 == 0) ? FieldElement::one(spec) : find_nonsquare(spec);
    const AlgebraSpec a1 = AlgebraSpec::from_scalar_theta(spec, theta1);
    const AlgebraSpec a2 =
        AlgebraSpec::from_scalar_theta(spec, l.inv() * (s * theta1 * s.transpose()));
    const auto w = iso_test(a1, a2);
    if (!w || !validate_iso_witness(*w, a1, a2) ||
        w->A * theta1 * w->A.transpose() != w->l * a2.theta.scalar_matrix()) {
      pass = false;
      detail = "witness failed on random pair " + std::to_string(t);
      break;
    }
    ++validated;
  }

  size_t pairs = 0, disagreements = 0;
  if (pass) {
    for (auto [p, k, m] : {std::tuple<uint32_t, uint32_t, size_t>{3, 1, 1},
                           {3, 1, 2},
                           {5, 1, 1},
                           {5, 1, 2},
                           {3, 2, 1}}) {
      const auto spec = FieldSpec::create(p, k);
      const auto thetas = enumerate_valid_theta(spec, m);
      std::vector<AlgebraSpec> algs;
      for (const auto& th : thetas) algs.push_back(AlgebraSpec(spec, m + 1, 1, th));
      for (size_t i = 0; i < algs.size(); ++i)
        for (size_t j = i; j < algs.size(); ++j) {
          const bool closed_form = iso_test(algs[i], algs[j]).has_value();
          const bool brute = brute_force_iso_unrestricted(algs[i], algs[j]).has_value();
          ++pairs;
          if (closed_form != brute) ++disagreements;
        }
    }
    if (disagreements != 0) {
      pass = false;
      detail = std::to_string(disagreements) + " verdict disagreements";
    }
  }
  if (detail.empty())
    detail = std::to_string(validated) + " random witnesses validated exactly; " +
             std::to_string(pairs) + " exhaustive pairs, zero disagreements";
  report(2, "witness soundness", pass, detail);
}

void criterion3_subgroup_structure() {
  bool pass = true;
  std::string detail;
  std::mt19937_64 rng(31415);

  const std::vector<std::tuple<uint32_t, uint32_t, size_t>> sets = {
      {3, 1, 1}, {3, 1, 2}, {3, 1, 3}, {3, 2, 1}, {5, 1, 1},
      {5, 1, 2}, {5, 1, 3}, {5, 2, 1}, {7, 1, 1}, {7, 1, 2}};
  size_t checked = 0;
  for (const auto& [p, k, m] : sets) {
    const auto spec = FieldSpec::create(p, k);
    for (int t = 0; t < 10 && pass; ++t) {
      const AlgebraSpec alg =
          AlgebraSpec::from_scalar_theta(spec, rand_invertible_symmetric(spec, m, rng));
      const auto table = build_T_circ(alg);
      const auto rep = verify_subgroup_properties(table, alg);
      if (!rep.all()) {
        pass = false;
        detail = "property failed at p=" + std::to_string(p) + " k=" + std::to_string(k) +
                 " n=" + std::to_string(m + 1);
        break;
      }
      ++checked;
    }
    if (!pass) break;
  }
  if (detail.empty())
    detail = std::to_string(checked) +
             " random algebras: closure, abelian, regular, exponent p, "
             "T_+-normalization (conjugation labels) all exact";
  report(3, "subgroup structure", pass, detail);
}

void criterion4_bibrace_iff() {
  bool pass = true;
  std::string detail;
  size_t checked = 0, sampled_sets = 0;

  const std::vector<std::tuple<uint32_t, uint32_t, size_t>> sets = {
      {3, 1, 1}, {3, 1, 2}, {3, 1, 3}, {3, 1, 4}, {3, 2, 1}, {5, 1, 1}, {5, 1, 2}, {7, 1, 1}};
  for (const auto& [p, k, m] : sets) {
    const auto spec = FieldSpec::create(p, k);
    const auto thetas = enumerate_valid_theta(spec, m);
    const uint64_t N = space_size(spec, m + 1);
    const double work = static_cast<double>(thetas.size()) * N * N * N;
    const size_t budget = work <= 5e8 ? thetas.size() : 16;
    if (budget < thetas.size()) ++sampled_sets;
    for (size_t idx : pick_indices(thetas.size(), budget, 97)) {
      const AlgebraSpec alg(spec, m + 1, 1, thetas[idx]);
      const auto rep = check_bibrace(StructureConstantAlgebra::from_algebra(alg));
      if (!rep.verdict.pass || rep.nilpotency_index != 3 ||
          !rep.consistent_with_nilpotency) {
        pass = false;
        detail = "theta algebra failed bi-brace at p=" + std::to_string(p) +
                 " k=" + std::to_string(k) + " m=" + std::to_string(m);
        break;
      }
      ++checked;
    }
    if (!pass) break;
  }

  if (pass) {
    const auto f3 = FieldSpec::create(3, 1);
    const auto f5 = FieldSpec::create(5, 1);
    for (const auto& trunc : {StructureConstantAlgebra::truncated_polynomial(f3, 3),
                              StructureConstantAlgebra::truncated_polynomial(f3, 4),
                              StructureConstantAlgebra::truncated_polynomial(f5, 3)}) {
      const auto rep = check_bibrace(trunc);
      if (rep.verdict.pass || rep.nilpotency_index != 4 || !rep.consistent_with_nilpotency) {
        pass = false;
        detail = "truncated polynomial counterexample not rejected";
        break;
      }
    }
  }
  if (detail.empty())
    detail = std::to_string(checked) + " theta algebras pass exhaustively (" +
             std::to_string(sampled_sets) +
             " oversized sets sampled deterministically); V^3 != 0 counterexamples "
             "fail; nilpotency agrees throughout";
  report(4, "bi-brace iff V^3 = 0", pass, detail);
}

void criterion5_commutator() {
  bool pass = true;
  std::string detail;
  size_t pairs = 0;
  const auto f3 = FieldSpec::create(3, 1);
  for (size_t m : {size_t(1), size_t(2)}) {
    for (const auto& theta : enumerate_valid_theta(f3, m)) {
      const AlgebraSpec alg(f3, m + 1, 1, theta);
      const uint64_t N = space_size(f3, alg.n);
      for (uint64_t ia = 0; ia < N && pass; ++ia)
        for (uint64_t ib = 0; ib < N; ++ib) {
          const Vec a = vec_from_index(f3, alg.n, ia);
          const Vec b = vec_from_index(f3, alg.n, ib);
          try {
            (void)commutator_sigma_tau(a, b, alg);  // throws on any violation
            ++pairs;
          } catch (const Error&) {
            pass = false;
            detail = "violation at m=" + std::to_string(m);
            break;
          }
        }
      if (!pass) break;
    }
    if (!pass) break;
  }
  if (detail.empty())
    detail = std::to_string(pairs) + " pairs over every valid theta at p=3, n in {2,3}";
  report(5, "commutator identity [sigma_a, tau_b] = sigma_{a.b}", pass, detail);
}

void criterion6_forms() {
  bool pass = true;
  std::string detail;
  std::mt19937_64 rng(2718281);
  const std::vector<std::pair<uint32_t, uint32_t>> fields = {{3, 1}, {5, 1}, {7, 1}, {3, 2}, {5, 2}};

  size_t roundtrips = 0;
  for (int t = 0; t < 1000 && pass; ++t) {
    const auto [p, k] = fields[t % fields.size()];
    const auto spec = FieldSpec::create(p, k);
    const size_t n = 1 + rng() % 4;
    MatFp b = rand_symmetric(spec, n, rng);
    if (t % 3 == 0 && n >= 2) {  // mix in singular forms
      for (size_t c = 0; c < n; ++c) b.at(n - 1, c) = b.at(0, c);
      for (size_t r = 0; r < n; ++r) b.at(r, n - 1) = b.at(r, 0);
      b.at(n - 1, n - 1) = b.at(0, 0);
    }
    const auto res = congruent_diagonalize(b);
    bool diag = true;
    for (size_t i = 0; i < n; ++i)
      for (size_t j = 0; j < n; ++j)
        if (i != j && !res.diagonal.at(i, j).is_zero()) diag = false;
    if (!diag || res.transform.det().is_zero() ||
        res.transform * b * res.transform.transpose() != res.diagonal) {
      pass = false;
      detail = "round-trip failed at trial " + std::to_string(t);
      break;
    }
    ++roundtrips;

    if (!b.det().is_zero()) {
      const auto cf = canonical_form(b);
      MatFp expect = MatFp::identity(spec, n);
      if (cf.label.disc == SquareClass::NonSquare)
        expect.at(n - 1, n - 1) = find_nonsquare(spec);
      if (cf.form != expect || cf.transform * b * cf.transform.transpose() != expect) {
        pass = false;
        detail = "canonical shape failed at trial " + std::to_string(t);
        break;
      }
    }
  }

  size_t invariances = 0;
  for (int t = 0; t < 1000 && pass; ++t) {
    const auto [p, k] = fields[t % fields.size()];
    const auto spec = FieldSpec::create(p, k);
    const size_t n = 1 + rng() % 4;
    const MatFp b = rand_invertible_symmetric(spec, n, rng);
    const MatFp a = rand_invertible(spec, n, rng);
    if (discriminant(a * b * a.transpose()) != discriminant(b)) {
      pass = false;
      detail = "discriminant not invariant at trial " + std::to_string(t);
      break;
    }
    ++invariances;
  }
  if (detail.empty())
    detail = std::to_string(roundtrips) + " exact round-trips with canonical shapes; " +
             std::to_string(invariances) + " congruence invariances";
  report(6, "forms machinery", pass, detail);
}

void criterion7_field_layer() {
  bool pass = true;
  std::string detail;
  size_t elements = 0;

  std::vector<FieldSpecPtr> specs;
  for (uint32_t p = 3; p <= 121; p += 2) {
    if (!fpbrace::detail::is_prime(p)) continue;
    uint64_t q = p;
    for (uint32_t k = 1; q <= 121; ++k, q *= p) specs.push_back(FieldSpec::create(p, k));
  }
  for (const auto& spec : specs) {
    std::set<uint64_t> squares;
    for (uint64_t i = 1; i < spec->order(); ++i) {
      const FieldElement b = FieldElement::from_index(spec, i);
      squares.insert((b * b).index());
    }
    for (uint64_t i = 0; i < spec->order() && pass; ++i) {
      const FieldElement a = FieldElement::from_index(spec, i);
      if (a.pow(spec->order()) != a) {
        pass = false;
        detail = "Frobenius failed";
      }
      if (i == 0) continue;
      if ((is_square(a) == SquareClass::Square) != (squares.count(i) > 0)) {
        pass = false;
        detail = "is_square disagrees with exhaustive squaring";
      }
      if (a * a.inv() != FieldElement::one(spec)) {
        pass = false;
        detail = "inverse identity failed";
      }
      if (is_square(a) == SquareClass::Square) {
        const FieldElement r = sqrt(a);
        if (r * r != a) {
          pass = false;
          detail = "sqrt identity failed";
        }
      }
      ++elements;
    }
    if (!pass) break;
  }

  if (pass) {
    const auto f5 = FieldSpec::create(5, 1);
    const auto f9 = FieldSpec::create(3, 2);
    if (find_nonsquare(f5).index() != 2 ||
        find_nonsquare(f9).coeffs() != std::vector<uint32_t>{1, 1}) {
      pass = false;
      detail = "frozen nonsquare values wrong";
    }
  }
  if (detail.empty())
    detail = std::to_string(specs.size()) + " fields up to order 121, " +
             std::to_string(elements) + " nonzero elements checked";
  report(7, "field layer", pass, detail);
}

void criterion8_radical_property() {
  bool pass = true;
  std::string detail;
  size_t algebras = 0, elements = 0, sampled_sets = 0;

  const std::vector<std::tuple<uint32_t, uint32_t, size_t>> sets = {
      {3, 1, 1}, {3, 1, 2}, {3, 1, 3}, {3, 1, 4}, {3, 2, 1}, {5, 1, 1}, {5, 1, 2}, {7, 1, 1}};
  for (const auto& [p, k, m] : sets) {
    const auto spec = FieldSpec::create(p, k);
    const auto thetas = enumerate_valid_theta(spec, m);
    const size_t budget = thetas.size() <= 600 ? thetas.size() : 200;
    if (budget < thetas.size()) ++sampled_sets;
    const uint64_t N = space_size(spec, m + 1);
    for (size_t idx : pick_indices(thetas.size(), budget, 131)) {
      const AlgebraSpec alg(spec, m + 1, 1, thetas[idx]);
      for (uint64_t i = 0; i < N; ++i) {
        const Vec a = vec_from_index(spec, m + 1, i);
        if (!vec_is_zero(circle(a, circle_inverse(a, alg), alg))) {
          pass = false;
          detail = "inverse failed at p=" + std::to_string(p) + " m=" + std::to_string(m);
          break;
        }
        ++elements;
      }
      if (!pass) break;
      ++algebras;
    }
    if (!pass) break;
  }
  if (detail.empty())
    detail = std::to_string(algebras) + " algebras / " + std::to_string(elements) +
             " elements, a o inverse(a) = 0 everywhere (" +
             std::to_string(sampled_sets) + " oversized sets sampled)";
  report(8, "radical property", pass, detail);
}

}  // namespace

int main() {
  const auto t0 = Clock::now();
  criterion1_class_counts();
  criterion2_witness_soundness();
  criterion3_subgroup_structure();
  criterion4_bibrace_iff();
  criterion5_commutator();
  criterion6_forms();
  criterion7_field_layer();
  criterion8_radical_property();
  std::printf("%d/8 criteria passed (total %.1fs)\n", 8 - failures, elapsed(t0));
  return failures;
}
