#pragma once

#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "fpbrace/fpbrace.hpp"

// Shared generators for randomized tests. Everything is seeded explicitly so
// failures replay.

namespace testutil {

using namespace fpbrace;

inline FieldElement random_element(const FieldSpecPtr& spec, std::mt19937_64& rng) {
  return FieldElement::from_index(spec, rng() % spec->order());
}

inline Vec random_vec(const FieldSpecPtr& spec, size_t n, std::mt19937_64& rng) {
  Vec v;
  v.reserve(n);
  for (size_t i = 0; i < n; ++i) v.push_back(random_element(spec, rng));
  return v;
}

inline MatFp random_matrix(const FieldSpecPtr& spec, size_t rows, size_t cols,
                           std::mt19937_64& rng) {
  MatFp m(spec, rows, cols);
  for (size_t i = 0; i < rows; ++i)
    for (size_t j = 0; j < cols; ++j) m.at(i, j) = random_element(spec, rng);
  return m;
}

inline MatFp random_symmetric(const FieldSpecPtr& spec, size_t n, std::mt19937_64& rng) {
  MatFp m(spec, n, n);
  for (size_t i = 0; i < n; ++i)
    for (size_t j = i; j < n; ++j) {
      m.at(i, j) = random_element(spec, rng);
      m.at(j, i) = m.at(i, j);
    }
  return m;
}

inline MatFp random_invertible(const FieldSpecPtr& spec, size_t n, std::mt19937_64& rng) {
  while (true) {
    MatFp m = random_matrix(spec, n, n, rng);
    if (!m.det().is_zero()) return m;
  }
}

inline MatFp random_invertible_symmetric(const FieldSpecPtr& spec, size_t n,
                                         std::mt19937_64& rng) {
  while (true) {
    MatFp m = random_symmetric(spec, n, rng);
    if (!m.det().is_zero()) return m;
  }
}

inline AlgebraSpec random_valid_algebra(const FieldSpecPtr& spec, size_t m,
                                        std::mt19937_64& rng) {
  return AlgebraSpec::from_scalar_theta(spec, random_invertible_symmetric(spec, m, rng));
}

}  // namespace testutil

#define REQUIRE_ERROR_CODE(expr, code_)                        \
  do {                                                         \
    bool caught_ = false;                                      \
    try {                                                      \
      (void)(expr);                                            \
    } catch (const fpbrace::Error& e_) {                       \
      caught_ = true;                                          \
      REQUIRE(e_.code() == (code_));                           \
    }                                                          \
    REQUIRE(caught_);                                          \
  } while (0)
