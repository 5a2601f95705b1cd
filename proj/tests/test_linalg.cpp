#include <doctest.h>

#include <random>

#include "divlab/linalg.hpp"

using namespace divlab;

namespace {

Matrix random_hermitian(Eigen::Index n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss;
  Matrix g(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) g(i, j) = Complex(gauss(rng), gauss(rng));
  return hermitize(g);
}

Matrix random_psd(Eigen::Index n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss;
  Matrix g(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) g(i, j) = Complex(gauss(rng), gauss(rng));
  return g * g.adjoint();
}

Matrix cdiag(std::initializer_list<double> vals) {
  RealVector v(static_cast<Eigen::Index>(vals.size()));
  Eigen::Index i = 0;
  for (double x : vals) v(i++) = x;
  return v.cast<Complex>().asDiagonal();
}

}  // namespace

TEST_CASE("eigh identity and diagonal cases") {
  const auto ed = eigh(Matrix::Identity(2, 2));
  CHECK(ed.eigenvalues(0) == doctest::Approx(1.0));
  CHECK(ed.eigenvalues(1) == doctest::Approx(1.0));

  const auto ed2 = eigh(cdiag({3.0, 1.0}));
  CHECK(ed2.eigenvalues(0) == doctest::Approx(1.0));
  CHECK(ed2.eigenvalues(1) == doctest::Approx(3.0));
  CHECK(std::abs(ed2.eigenvectors.col(0)(1)) == doctest::Approx(1.0));
  CHECK(std::abs(ed2.eigenvectors.col(1)(0)) == doctest::Approx(1.0));
}

TEST_CASE("eigh reconstruction and unitarity on random Hermitian input") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const Matrix m = random_hermitian(5, seed);
    const auto ed = eigh(m);
    const Matrix rebuilt =
        ed.eigenvectors * ed.eigenvalues.cast<Complex>().asDiagonal() * ed.eigenvectors.adjoint();
    CHECK((rebuilt - m).norm() <= tol::eig_rel * m.norm());
    CHECK((ed.eigenvectors.adjoint() * ed.eigenvectors - Matrix::Identity(5, 5)).norm() <=
          tol::eig_rel * 10);
    for (Eigen::Index i = 1; i < ed.eigenvalues.size(); ++i)
      CHECK(ed.eigenvalues(i) >= ed.eigenvalues(i - 1));
  }
}

TEST_CASE("eigh rejects non-Hermitian input") {
  Matrix m(2, 2);
  m << Complex(0, 0), Complex(1, 0), Complex(0, 0), Complex(0, 0);
  CHECK_THROWS_WITH_AS(eigh(m), doctest::Contains("NotHermitian"), Error);
}

TEST_CASE("matfun diagonal and support conventions") {
  const Matrix s = matfun(cdiag({4.0, 1.0}), [](double x) { return std::sqrt(x); });
  CHECK((s - cdiag({2.0, 1.0})).norm() == doctest::Approx(0.0).epsilon(1e-12));

  const Matrix lg = matfun(cdiag({2.0, 0.0}), [](double x) { return std::log(x); }, true);
  CHECK(lg(0, 0).real() == doctest::Approx(std::log(2.0)));
  CHECK(std::abs(lg(1, 1)) == doctest::Approx(0.0));

  const Matrix m = random_psd(4, 7);
  const Matrix same = matfun(m, [](double x) { return x; });
  CHECK((same - m).norm() <= tol::eig_rel * m.norm() * 10);
}

TEST_CASE("exp after support-log recovers the support compression") {
  // Full-rank input: exp(log M) = M in the support-restricted calculus.
  const Matrix m = random_psd(4, 3);
  const Matrix p = support_projector(m);
  const Matrix roundtrip = p * matexp_hermitian(matlog_support(m)) * p;
  CHECK((roundtrip - p * m * p).norm() <= 1e-8 * m.norm());
  CHECK((roundtrip - m).norm() <= 1e-8 * m.norm());

  // Rank-deficient input: the round trip keeps the support block only.
  const Matrix rd = cdiag({2.0, 0.0});
  const Matrix prd = support_projector(rd);
  const Matrix rt = prd * matexp_hermitian(matlog_support(rd)) * prd;
  CHECK((rt - rd).norm() <= 1e-10);
}

TEST_CASE("kron identities and trace multiplicativity") {
  const Matrix i6 = kron(Matrix::Identity(2, 2), Matrix::Identity(3, 3));
  CHECK((i6 - Matrix::Identity(6, 6)).norm() == doctest::Approx(0.0));

  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const Matrix a = random_psd(4, seed);
    const Matrix b = random_psd(4, seed + 100);
    const Complex lhs = kron(a, b).trace();
    const Complex rhs = a.trace() * b.trace();
    CHECK(std::abs(lhs - rhs) <= 1e-12 * std::abs(rhs));
  }

  const Matrix a = random_hermitian(2, 1), b = random_hermitian(2, 2), c = random_hermitian(2, 3);
  CHECK((kron(kron(a, b), c) - kron(a, kron(b, c))).norm() <= 1e-12);
}

TEST_CASE("dirsum stacks blocks") {
  const Matrix d = dirsum(cdiag({1.0}), cdiag({2.0}));
  CHECK((d - cdiag({1.0, 2.0})).norm() == doctest::Approx(0.0));
}

TEST_CASE("partial trace of a product state splits the factors") {
  const Matrix a = random_psd(2, 11);
  const Matrix b = random_psd(3, 12);
  const Matrix j = kron(a, b);
  const Matrix ta = partial_trace(j, 2, 3, PTraceSide::out_factor);
  CHECK((ta - a * b.trace()).norm() <= 1e-10 * a.norm() * std::abs(b.trace()));
  const Matrix tb = partial_trace(j, 2, 3, PTraceSide::in_factor);
  CHECK((tb - b * a.trace()).norm() <= 1e-10 * b.norm() * std::abs(a.trace()));
  CHECK(std::abs(ta.trace() - j.trace()) <= 1e-10 * std::abs(j.trace()));
  CHECK(std::abs(tb.trace() - j.trace()) <= 1e-10 * std::abs(j.trace()));
}

TEST_CASE("psd_project clips and is optimal among random candidates") {
  const Matrix clipped = psd_project(cdiag({1.0, -1.0}));
  CHECK((clipped - cdiag({1.0, 0.0})).norm() == doctest::Approx(0.0).epsilon(1e-12));

  const Matrix p = random_psd(3, 5);
  CHECK((psd_project(p) - p).norm() <= tol::eig_rel * p.norm() * 10);

  const Matrix h = random_hermitian(3, 8);
  const Matrix proj = psd_project(h);
  CHECK(eigh(proj).eigenvalues.minCoeff() >= -1e-12);
  const double dist = (proj - h).norm();
  for (std::uint64_t seed = 0; seed < 20; ++seed)
    CHECK(dist <= (random_psd(3, 900 + seed) - h).norm() + 1e-12);
}
