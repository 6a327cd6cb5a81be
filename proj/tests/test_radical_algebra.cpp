#include "test_support.hpp"

using namespace fpbrace;

namespace {

AlgebraSpec tiny_f3() {
  // n = 2, d = 1, theta = [1]
  const auto f3 = FieldSpec::create(3, 1);
  MatFp t(f3, 1, 1);
  t.at(0, 0) = FieldElement::one(f3);
  return AlgebraSpec::from_scalar_theta(f3, t);
}

Vec v(const FieldSpecPtr& spec, std::vector<uint64_t> idx) {
  Vec r;
  for (uint64_t i : idx) r.push_back(FieldElement::from_index(spec, i));
  return r;
}

}  // namespace

TEST_CASE("defining matrix validation") {
  const auto f3 = FieldSpec::create(3, 1);

  MatFp one(f3, 1, 1);
  one.at(0, 0) = FieldElement::one(f3);
  CHECK(validate_defining_matrix(DefiningMatrix::from_scalar_matrix(one)).valid());

  MatFp allones(f3, 2, 2);
  for (size_t i = 0; i < 2; ++i)
    for (size_t j = 0; j < 2; ++j) allones.at(i, j) = FieldElement::one(f3);
  const auto bad = validate_defining_matrix(DefiningMatrix::from_scalar_matrix(allones));
  CHECK(bad.symmetric);
  CHECK_FALSE(bad.independent);
  CHECK(bad.invertible == false);
  REQUIRE(bad.dependency.has_value());
  // the reported combination really kills the rows
  const Vec dep = *bad.dependency;
  CHECK_FALSE(vec_is_zero(dep));
  for (size_t j = 0; j < 2; ++j) {
    FieldElement acc = FieldElement::zero(f3);
    for (size_t i = 0; i < 2; ++i) acc = acc + dep[i] * allones.at(i, j);
    CHECK(acc.is_zero());
  }

  MatFp hyp(f3, 2, 2);
  hyp.at(0, 1) = FieldElement::one(f3);
  hyp.at(1, 0) = FieldElement::one(f3);
  const auto good = validate_defining_matrix(DefiningMatrix::from_scalar_matrix(hyp));
  CHECK(good.valid());
  CHECK(good.invertible == true);

  // asymmetry is reported, not rejected
  MatFp asym(f3, 2, 2);
  asym.at(0, 1) = FieldElement::one(f3);
  asym.at(0, 0) = FieldElement::one(f3);
  asym.at(1, 1) = FieldElement::one(f3);
  CHECK_FALSE(validate_defining_matrix(DefiningMatrix::from_scalar_matrix(asym)).symmetric);
}

TEST_CASE("product and circle on the smallest algebra") {
  const AlgebraSpec alg = tiny_f3();
  const auto& f3 = alg.field;

  CHECK(product(v(f3, {1, 0}), v(f3, {1, 0}), alg) == v(f3, {0, 1}));  // e1.e1 = e2
  CHECK(product(v(f3, {2, 1}), v(f3, {0, 1}), alg) == v(f3, {0, 0}));  // a.e_n = 0
  CHECK(circle(v(f3, {1, 0}), v(f3, {0, 0}), alg) == v(f3, {1, 0}));
  CHECK(circle(v(f3, {1, 0}), v(f3, {1, 0}), alg) == v(f3, {2, 1}));
  CHECK(circle(v(f3, {1, 0}), v(f3, {2, 1}), alg) == v(f3, {0, 0}));

  const auto f3b = FieldSpec::create(3, 1);
  const AlgebraSpec alg3 = AlgebraSpec::from_scalar_theta(f3b, MatFp::identity(f3b, 2));
  CHECK(product(v(f3b, {1, 1, 0}), v(f3b, {1, 2, 0}), alg3) == v(f3b, {0, 0, 0}));

  REQUIRE_ERROR_CODE(product(v(f3, {1}), v(f3, {1, 0}), alg), errc::dimension_mismatch);
}

TEST_CASE("gamma and delta block forms") {
  const AlgebraSpec alg = tiny_f3();
  const auto& f3 = alg.field;

  CHECK(gamma(v(f3, {0, 0}), alg) == MatFp::identity(f3, 2));
  MatFp expect = MatFp::identity(f3, 2);
  expect.at(0, 1) = FieldElement::one(f3);
  CHECK(gamma(v(f3, {1, 0}), alg) == expect);
  CHECK(gamma(v(f3, {0, 2}), alg) == MatFp::identity(f3, 2));  // annihilator

  CHECK(delta(v(f3, {0, 0}), alg).is_zero());
  CHECK(delta(v(f3, {0, 1}), alg).is_zero());
  MatFp dexpect(f3, 2, 2);
  dexpect.at(0, 1) = FieldElement::one(f3);
  CHECK(delta(v(f3, {1, 0}), alg) == dexpect);

  // x gamma(a) = x + x.a and gamma(a+b) = gamma(a) gamma(b), randomly
  std::mt19937_64 rng(5);
  const auto f5 = FieldSpec::create(5, 1);
  const AlgebraSpec big = testutil::random_valid_algebra(f5, 3, rng);
  for (int t = 0; t < 50; ++t) {
    const Vec x = testutil::random_vec(f5, 4, rng);
    const Vec a = testutil::random_vec(f5, 4, rng);
    const Vec b = testutil::random_vec(f5, 4, rng);
    CHECK(x * gamma(a, big) == vec_add(x, product(x, a, big)));
    CHECK(gamma(vec_add(a, b), big) == gamma(a, big) * gamma(b, big));
    CHECK(circle(a, b, big) == vec_add(b * gamma(a, big), a));
  }
}

TEST_CASE("circle inverse is the (p-1)-fold power") {
  const AlgebraSpec alg = tiny_f3();
  const auto& f3 = alg.field;
  CHECK(circle_inverse(v(f3, {0, 0}), alg) == v(f3, {0, 0}));
  CHECK(circle_inverse(v(f3, {1, 0}), alg) == v(f3, {2, 1}));
  CHECK(circle_inverse(v(f3, {0, 1}), alg) == v(f3, {0, 2}));  // (p-1)a on Ann

  for (uint64_t i = 0; i < 9; ++i) {
    const Vec a = vec_from_index(f3, 2, i);
    CHECK(vec_is_zero(circle(a, circle_inverse(a, alg), alg)));
  }

  std::mt19937_64 rng(17);
  const auto f7 = FieldSpec::create(7, 1);
  const AlgebraSpec alg7 = testutil::random_valid_algebra(f7, 2, rng);
  for (int t = 0; t < 40; ++t) {
    const Vec a = testutil::random_vec(f7, 3, rng);
    CHECK(vec_is_zero(circle(a, circle_inverse(a, alg7), alg7)));
  }
}

TEST_CASE("annihilator computation") {
  const auto f3 = FieldSpec::create(3, 1);
  const AlgebraSpec alg = AlgebraSpec::from_scalar_theta(f3, MatFp::identity(f3, 2));
  const auto basis = annihilator(alg);
  REQUIRE(basis.size() == 1);
  CHECK(basis[0] == v(f3, {0, 0, 1}));

  StructureConstantAlgebra zero(f3, 3);
  CHECK(annihilator(zero).size() == 3);

  const auto trunc = StructureConstantAlgebra::truncated_polynomial(f3, 3);
  const auto tbasis = annihilator(trunc);
  REQUIRE(tbasis.size() == 1);
  CHECK(tbasis[0] == v(f3, {0, 0, 1}));
}

TEST_CASE("nilpotency detection") {
  const auto f3 = FieldSpec::create(3, 1);
  CHECK(nilpotency_check(tiny_f3()) == 3);
  CHECK(nilpotency_check(StructureConstantAlgebra(f3, 3)) == 2);
  const auto trunc = StructureConstantAlgebra::truncated_polynomial(f3, 3);
  CHECK(trunc.commutative_on_basis());
  CHECK(trunc.associative_on_basis());
  CHECK(nilpotency_check(trunc) == 4);  // u1^3 = u3 != 0
}

TEST_CASE("theta recovered from basis products") {
  std::mt19937_64 rng(29);
  for (auto [p, k, m] :
       {std::tuple<uint32_t, uint32_t, size_t>{3, 1, 2}, {5, 1, 3}, {3, 2, 2}}) {
    const auto spec = FieldSpec::create(p, k);
    const AlgebraSpec alg = testutil::random_valid_algebra(spec, m, rng);
    for (size_t i = 0; i < m; ++i)
      for (size_t j = 0; j < m; ++j) {
        const Vec prod =
            product(basis_vec(spec, m + 1, i), basis_vec(spec, m + 1, j), alg);
        for (size_t c = 0; c < m; ++c) CHECK(prod[c].is_zero());
        CHECK(prod[m] == alg.theta.entry(i, j, 0));
      }
  }
}

TEST_CASE("commutativity and vanishing associators") {
  const auto f3 = FieldSpec::create(3, 1);
  const AlgebraSpec alg = AlgebraSpec::from_scalar_theta(f3, MatFp::identity(f3, 2));
  const uint64_t N = space_size(f3, 3);
  for (uint64_t ia = 0; ia < N; ++ia)
    for (uint64_t ib = 0; ib < N; ++ib) {
      const Vec a = vec_from_index(f3, 3, ia), b = vec_from_index(f3, 3, ib);
      CHECK(product(a, b, alg) == product(b, a, alg));
    }
  std::mt19937_64 rng(37);
  for (int t = 0; t < 60; ++t) {
    const Vec a = testutil::random_vec(f3, 3, rng);
    const Vec b = testutil::random_vec(f3, 3, rng);
    const Vec c = testutil::random_vec(f3, 3, rng);
    CHECK(vec_is_zero(product(product(a, b, alg), c, alg)));
    CHECK(vec_is_zero(product(a, product(b, c, alg), alg)));
  }
}

TEST_CASE("quotient by the canonical complement") {
  const auto f3 = FieldSpec::create(3, 1);

  // d = 1 input: identity transformation
  const AlgebraSpec flat = tiny_f3();
  const AlgebraSpec same = quotient_by_complement(flat);
  CHECK(same.n == flat.n);
  CHECK(same.theta == flat.theta);

  // n = 4, d = 2, cells (s_ij, 0): projection drops the zero coordinate
  MatFp s(f3, 2, 2);
  s.at(0, 0) = FieldElement::from_int(f3, 1);
  s.at(0, 1) = FieldElement::from_int(f3, 2);
  s.at(1, 0) = FieldElement::from_int(f3, 2);
  s.at(1, 1) = FieldElement::from_int(f3, 1);
  REQUIRE_FALSE(s.det().is_zero());
  DefiningMatrix theta(f3, 2, 2);
  for (size_t i = 0; i < 2; ++i)
    for (size_t j = 0; j < 2; ++j) theta.entry(i, j, 0) = s.at(i, j);
  const AlgebraSpec fat(f3, 4, 2, theta);
  CHECK(product_space_dimension(fat) == 1);
  const AlgebraSpec thin = quotient_by_complement(fat);
  CHECK(thin.n == 3);
  CHECK(thin.d == 1);
  CHECK(thin.theta.scalar_matrix() == s);

  // products agree under the quotient map e_i -> e_i, ann coords -> coord 0
  auto quotient_map = [&](const Vec& x) {
    Vec y(x.begin(), x.begin() + 2);
    y.push_back(x[2]);  // t* = 0 here
    return y;
  };
  std::mt19937_64 rng(43);
  for (int t = 0; t < 60; ++t) {
    const Vec a = testutil::random_vec(f3, 4, rng);
    const Vec b = testutil::random_vec(f3, 4, rng);
    CHECK(quotient_map(product(a, b, fat)) ==
          product(quotient_map(a), quotient_map(b), thin));
  }

  // 2-dimensional product space is rejected
  DefiningMatrix wide(f3, 2, 2);
  wide.entry(0, 0, 0) = FieldElement::one(f3);
  wide.entry(0, 1, 1) = FieldElement::one(f3);
  wide.entry(1, 0, 1) = FieldElement::one(f3);
  const AlgebraSpec bad(f3, 4, 2, wide);
  CHECK(product_space_dimension(bad) == 2);
  REQUIRE_ERROR_CODE(quotient_by_complement(bad), errc::product_not_one_dimensional);
}
