#include <doctest.h>

#include "divlab/experiments.hpp"
#include "divlab/probe.hpp"

using namespace divlab;

namespace {

RealVector vec(std::initializer_list<double> vals) {
  RealVector v(static_cast<Eigen::Index>(vals.size()));
  Eigen::Index i = 0;
  for (double x : vals) v(i++) = x;
  return v;
}

ClassicalExperiment make(std::initializer_list<std::initializer_list<double>> comps) {
  ClassicalExperiment e;
  for (const auto& c : comps) e.components.push_back(vec(c));
  return e;
}

}  // namespace

TEST_CASE("boxplus concatenates and adds norms") {
  const auto x = make({{1.0}, {1.0}});
  const auto sum = boxplus(x, x);
  CHECK(sum.size() == 2);
  CHECK(sum.components[0](0) == 1.0);
  CHECK(sum.components[0](1) == 1.0);

  const auto a = make({{0.3}, {0.7}});
  const auto b = make({{0.7}, {0.3}});
  const RealVector n = norm_vector(boxplus(a, b));
  CHECK(n(0) == doctest::Approx(1.0));
  CHECK(n(1) == doctest::Approx(1.0));

  QuantumExperiment q;
  q.components.push_back(Matrix::Identity(2, 2) * 0.5);
  const auto qsum = boxplus(q, q);
  CHECK(qsum.dim() == 4);
  CHECK(qsum.components[0].trace().real() == doctest::Approx(2.0));
}

TEST_CASE("boxtimes multiplies entries and norms") {
  const auto x = make({{0.5, 0.5}, {0.125, 0.875}});
  ClassicalExperiment unit;
  unit.components.assign(2, RealVector::Ones(1));
  const auto same = boxtimes(x, unit);
  CHECK((same.components[0] - x.components[0]).cwiseAbs().maxCoeff() == doctest::Approx(0.0));

  const auto prod = boxtimes(x, x);
  CHECK(prod.components[0](0) == doctest::Approx(0.25));
  CHECK(prod.components[1](3) == doctest::Approx(0.875 * 0.875));

  const Reference u = default_reference(3);
  const Experiment cube = boxpower(Experiment{u.classical}, 3);
  const RealVector n = norm_vector(cube);
  for (int k = 0; k < 3; ++k) CHECK(n(k) == doctest::Approx(1.0));
}

TEST_CASE("norm vector entries are component sums or traces") {
  const auto x = make({{0.2, 0.3}, {0.5, 0.1}});
  const RealVector n = norm_vector(x);
  CHECK(n(0) == doctest::Approx(0.5));
  CHECK(n(1) == doctest::Approx(0.6));

  const auto states = random_classical(3, 4, 1);
  const RealVector ns = norm_vector(states);
  for (int k = 0; k < 3; ++k) CHECK(ns(k) == doctest::Approx(1.0));

  const auto zero = make({{0.0, 0.0}, {0.0, 0.0}});
  CHECK(norm_vector(zero).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("norm is a semiring homomorphism on random inputs") {
  for (std::uint64_t seed = 0; seed < 25; ++seed) {
    const auto x = random_classical(3, 4, seed, false);
    const auto y = random_classical(3, 3, seed + 50, false);
    const RealVector plus = norm_vector(boxplus(x, y));
    const RealVector times = norm_vector(boxtimes(x, y));
    const RealVector nx = norm_vector(x), ny = norm_vector(y);
    CHECK((plus - (nx + ny)).cwiseAbs().maxCoeff() <= 1e-12 * plus.cwiseAbs().maxCoeff());
    CHECK((times - nx.cwiseProduct(ny)).cwiseAbs().maxCoeff() <=
          1e-12 * times.cwiseAbs().maxCoeff());
  }
}

TEST_CASE("equivalence compares norm vectors") {
  const auto x = random_classical(2, 3, 9);
  CHECK(equivalent(Experiment{x}, Experiment{x}));

  ClassicalExperiment unit;
  unit.components.assign(2, RealVector::Ones(1));
  CHECK(equivalent(Experiment{x}, Experiment{unit}));

  const auto stretched = scale(x, 2.0);
  CHECK_FALSE(equivalent(Experiment{stretched}, Experiment{unit}));

  // Equivalence relation behavior on random samples.
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto a = random_classical(2, 4, seed);
    const auto b = random_classical(2, 5, seed + 10);
    CHECK(equivalent(Experiment{a}, Experiment{b}));  // all normalized
  }
}

TEST_CASE("normalize rescales components and rejects zero") {
  const auto x = scale(random_classical(3, 4, 2), 3.0);
  const auto n = normalize(x);
  CHECK((norm_vector(n) - RealVector::Ones(3)).cwiseAbs().maxCoeff() <= 1e-12);

  const auto zero = make({{0.0}, {0.0}});
  CHECK_THROWS_WITH_AS(normalize(zero), doctest::Contains("ZeroExperiment"), Error);
}

TEST_CASE("power universal predicate") {
  QuantumExperiment tau;
  tau.components.push_back(vec({1.0 / 3.0, 2.0 / 3.0}).cast<Complex>().asDiagonal());
  tau.components.push_back(vec({2.0 / 3.0, 1.0 / 3.0}).cast<Complex>().asDiagonal());
  CHECK(is_power_universal(Experiment{tau}));

  QuantumExperiment repeated;
  repeated.components.push_back(tau.components[0]);
  repeated.components.push_back(tau.components[0]);
  CHECK_FALSE(is_power_universal(Experiment{repeated}));

  QuantumExperiment heavy = tau;
  heavy.components[0] *= 2.0;
  CHECK_FALSE(is_power_universal(Experiment{heavy}));

  for (int d = 2; d <= 6; ++d)
    CHECK(is_power_universal(Experiment{default_reference(d).classical}));
}

TEST_CASE("embed and reduce round trip") {
  const auto x = make({{0.5, 0.5}, {0.25, 0.75}});
  const auto q = embed_classical(x);
  CHECK(q.components[0](0, 0).real() == doctest::Approx(0.5));
  CHECK(q.components[1](1, 1).real() == doctest::Approx(0.75));
  CHECK(std::abs(q.components[1](0, 1)) == 0.0);

  const auto back = reduce_commuting(q);
  // Match up to the permutation induced by the joint diagonalization.
  std::vector<double> got{back.components[0](0), back.components[0](1)};
  std::sort(got.begin(), got.end());
  CHECK(got[0] == doctest::Approx(0.5));
  CHECK(got[1] == doctest::Approx(0.5));

  // Pairs must map consistently across components.
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto e = random_classical(3, 4, seed + 200);
    const auto r = reduce_commuting(embed_classical(e));
    // Sort both by the first component to undo the permutation.
    std::vector<int> idx(4), jdx(4);
    std::iota(idx.begin(), idx.end(), 0);
    std::iota(jdx.begin(), jdx.end(), 0);
    auto key = [](const ClassicalExperiment& c, int i) {
      return std::tuple(c.components[0](i), c.components[1](i), c.components[2](i));
    };
    std::sort(idx.begin(), idx.end(), [&](int a, int b) { return key(e, a) < key(e, b); });
    std::sort(jdx.begin(), jdx.end(), [&](int a, int b) { return key(r, a) < key(r, b); });
    for (int i = 0; i < 4; ++i)
      for (int k = 0; k < 3; ++k)
        CHECK(e.components[k](idx[i]) ==
              doctest::Approx(r.components[k](jdx[i])).epsilon(1e-8));
  }
}

TEST_CASE("reduce rejects non-commuting tuples") {
  QuantumExperiment q;
  Matrix a(2, 2), b(2, 2);
  a << 1.0, 0.0, 0.0, 0.0;
  b << 0.5, 0.5, 0.5, 0.5;
  q.components = {a, b};
  CHECK_THROWS_WITH_AS(reduce_commuting(q), doctest::Contains("NotCommuting"), Error);
}

TEST_CASE("default reference construction") {
  const Reference u2 = default_reference(2);
  CHECK(u2.classical.size() == 3);
  CHECK(is_power_universal(Experiment{u2.classical}));
  CHECK(is_power_universal(Experiment{u2.quantum}));

  const Reference u3 = default_reference(3);
  for (int k = 0; k < 3; ++k)
    for (int l = k + 1; l < 3; ++l)
      CHECK((u3.classical.components[k] - u3.classical.components[l]).cwiseAbs().maxCoeff() >
            0.01);
  CHECK((norm_vector(u3.classical) - RealVector::Ones(3)).cwiseAbs().maxCoeff() <= 1e-12);
}
