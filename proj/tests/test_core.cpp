#include <gtest/gtest.h>

#include <atomic>
#include <cmath>
#include <cstdlib>
#include <set>
#include <vector>

#include "rfed/core/diagnostics.hpp"
#include "rfed/core/errors.hpp"
#include "rfed/core/matrix_functions.hpp"
#include "rfed/core/parallel.hpp"
#include "rfed/core/rng.hpp"
#include "rfed/core/verification.hpp"
#include "rfed/manifolds/euclidean.hpp"
#include "rfed/manifolds/grassmann.hpp"
#include "rfed/manifolds/spd.hpp"
#include "rfed/manifolds/sphere.hpp"
#include "rfed/manifolds/stiefel.hpp"

namespace rfed {
namespace {

TEST(Rng, SameKeySameStream) {
  Rng a({7, 3, 2, 1});
  Rng b({7, 3, 2, 1});
  for (int i = 0; i < 100; ++i) EXPECT_EQ(a(), b());
}

TEST(Rng, KeyWordsAreNotInterchangeable) {
  Rng a({1, 2});
  Rng b({2, 1});
  Rng c({1, 2, 0});
  const auto x = a();
  EXPECT_NE(x, b());
  EXPECT_NE(x, c());
}

TEST(Rng, BelowStaysInRangeAndCoversIt) {
  Rng rng(5);
  std::set<std::uint64_t> seen;
  for (int i = 0; i < 2000; ++i) {
    const auto v = rng.below(7);
    ASSERT_LT(v, 7u);
    seen.insert(v);
  }
  EXPECT_EQ(seen.size(), 7u);
}

TEST(Rng, UniformAndNormalMoments) {
  Rng rng(11);
  double su = 0, sn = 0, sn2 = 0;
  const int n = 200000;
  for (int i = 0; i < n; ++i) {
    const double u = rng.uniform();
    ASSERT_GE(u, 0.0);
    ASSERT_LT(u, 1.0);
    su += u;
    const double z = rng.normal();
    sn += z;
    sn2 += z * z;
  }
  EXPECT_NEAR(su / n, 0.5, 5e-3);
  EXPECT_NEAR(sn / n, 0.0, 1e-2);
  EXPECT_NEAR(sn2 / n, 1.0, 2e-2);
}

TEST(Rng, BetweenIsInclusive) {
  Rng rng(3);
  std::set<long> seen;
  for (int i = 0; i < 1000; ++i) seen.insert(rng.between(10, 12));
  EXPECT_EQ(seen, (std::set<long>{10, 11, 12}));
}

TEST(Errors, ExitCodesAreDistinctAndNonZero) {
  std::set<int> codes;
  for (auto c : {ErrorCategory::kParameter, ErrorCategory::kDomain, ErrorCategory::kContract,
                 ErrorCategory::kUnsupported, ErrorCategory::kFormat, ErrorCategory::kRun,
                 ErrorCategory::kIo}) {
    EXPECT_NE(exit_code(c), 0);
    codes.insert(exit_code(c));
  }
  EXPECT_EQ(codes.size(), 7u);
}

TEST(Errors, RunErrorCarriesContext) {
  const RunError e("boom", 4, 2, 9);
  EXPECT_EQ(e.category(), ErrorCategory::kRun);
  EXPECT_EQ(e.round(), 4);
  EXPECT_EQ(e.inner_step(), 2);
  EXPECT_EQ(e.agent(), 9);
  EXPECT_NE(std::string(e.what()).find("boom"), std::string::npos);
}

TEST(Parallel, VisitsEveryIndexOnce) {
  ::setenv("RFED_WORKERS", "4", 1);
  std::vector<std::atomic<int>> hits(257);
  parallel_for(hits.size(), [&](std::size_t i) { hits[i]++; });
  for (auto& h : hits) EXPECT_EQ(h.load(), 1);
  ::unsetenv("RFED_WORKERS");
}

TEST(Parallel, RethrowsWorkerException) {
  ::setenv("RFED_WORKERS", "3", 1);
  EXPECT_THROW(parallel_for(20,
                            [](std::size_t i) {
                              if (i == 13) throw DomainError("bad index");
                            }),
               DomainError);
  ::unsetenv("RFED_WORKERS");
}

TEST(Parallel, WorkerCountFromEnvironment) {
  ::setenv("RFED_WORKERS", "5", 1);
  EXPECT_EQ(worker_count(), 5u);
  ::setenv("RFED_WORKERS", "junk", 1);
  EXPECT_GE(worker_count(), 1u);
  ::unsetenv("RFED_WORKERS");
}

TEST(MatrixFunctions, ExpAndLogAreInverse) {
  Rng rng(2);
  const Matrix g = rng.gaussian(4, 4);
  const Matrix a = g * g.transpose() + Matrix::Identity(4, 4);
  EXPECT_LT((expm_symmetric(logm_spd(a)) - a).norm(), 1e-12 * a.norm());
  const Matrix s = symmetrize(rng.gaussian(4, 4));
  EXPECT_LT((logm_spd(expm_symmetric(s)) - s).norm(), 1e-12);
}

TEST(MatrixFunctions, SquareRoots) {
  Rng rng(4);
  const Matrix g = rng.gaussian(3, 3);
  const Matrix a = g * g.transpose() + 0.5 * Matrix::Identity(3, 3);
  const SpdRoots r = spd_roots(a);
  EXPECT_LT((r.sqrt * r.sqrt - a).norm(), 1e-12);
  EXPECT_LT((r.sqrt * r.inv_sqrt - Matrix::Identity(3, 3)).norm(), 1e-12);
  EXPECT_LT((sqrtm_spd(a) - r.sqrt).norm(), 1e-13);
}

TEST(MatrixFunctions, DiagonalCases) {
  const Matrix d = Vector::LinSpaced(3, 1.0, 3.0).asDiagonal();
  const Matrix l = logm_spd(d);
  for (int i = 0; i < 3; ++i) EXPECT_NEAR(l(i, i), std::log(1.0 + i), 1e-15);
  EXPECT_THROW(spd_roots(-d), DomainError);
}

TEST(MatrixFunctions, PolarAndOrthonormalFactors) {
  Rng rng(9);
  const Matrix a = rng.gaussian(6, 3);
  const Matrix p = polar_factor(a);
  EXPECT_LT((p.transpose() * p - Matrix::Identity(3, 3)).norm(), 1e-14);
  // the polar factor is the closest orthonormal matrix: A = P H with H SPD
  const Matrix h = p.transpose() * a;
  EXPECT_LT((h - h.transpose()).norm(), 1e-13);
  EXPECT_GT(Eigen::SelfAdjointEigenSolver<Matrix>(symmetrize(h)).eigenvalues().minCoeff(), 0.0);
  const Matrix q = orthonormal_columns(a);
  EXPECT_LT((q.transpose() * q - Matrix::Identity(3, 3)).norm(), 1e-14);
  EXPECT_LT((q * q.transpose() * a - a).norm(), 1e-13);
}

TEST(Diagnostics, Validation) {
  DiagnosticsConfig d;
  EXPECT_NO_THROW(d.validate());
  d.delta = 0.5;
  d.L = 2.0;
  EXPECT_NO_THROW(d.validate());
  d.delta = 1.0;
  EXPECT_THROW(d.validate(), ParameterError);
  d.delta = 0.2;
  d.M = -1.0;
  EXPECT_THROW(d.validate(), ParameterError);
  d.M = 1.0;
  d.mu = 0.0;
  EXPECT_THROW(d.validate(), ParameterError);
}

// Closed form: (x + hv)/sqrt(1 + h^2) gives e(h) = sqrt(2) * sqrt(1 - 1/sqrt(1 + h^2)) / h ~ h/2,
// so the undivided residual h * e(h) is ~ h^2/2.
TEST(Verification, PolarRetractionOnS2MatchesClosedForm) {
  const SphereManifold s2(2);
  const Point x{Vector::Unit(3, 0)};
  const Tangent v{Vector::Unit(3, 1)};
  const std::vector<double> h = {1e-3};
  const double e = check_retraction_first_order(s2, x, v, h)[0];
  const double c = 1.0 / std::sqrt(1.0 + 1e-6);
  const double oracle = std::hypot(c - 1.0, 1e-3 * c - 1e-3) / 1e-3;
  EXPECT_NEAR(e, oracle, 1e-12);
  EXPECT_NEAR(e, 5e-4, 1e-9);
  EXPECT_LE(h[0] * e, 1e-6);
}

TEST(Verification, RetractionErrorDecaysLinearly) {
  Rng rng(1);
  const StiefelManifold st(8, 3);
  const Point x = st.random_point(rng);
  const Tangent v = st.random_tangent(x, rng);
  const std::vector<double> h = {1e-1, 1e-2, 1e-3, 1e-4};
  const auto e = check_retraction_first_order(st, x, v, h);
  for (std::size_t i = 0; i < h.size(); ++i) EXPECT_LT(e[i] / h[i], 10.0);
  EXPECT_LT(e[3], e[0]);
}

TEST(Verification, EuclideanRetractionIsExact) {
  const EuclideanManifold r(3, 2);
  Rng rng(2);
  const Point x = r.random_point(rng);
  const Tangent v = r.random_tangent(x, rng);
  const std::vector<double> h = {1.0, 0.5, 1e-3};
  for (double e : check_retraction_first_order(r, x, v, h)) EXPECT_LT(e, 1e-12);
}

TEST(Verification, NonTangentDirectionRejected) {
  const SphereManifold s2(2);
  const Point x{Vector::Unit(3, 0)};
  const Tangent v{Vector::Unit(3, 0)};
  const std::vector<double> h = {1e-3};
  EXPECT_THROW(check_retraction_first_order(s2, x, v, h), ContractError);
}

TEST(Verification, TransportIsometryConventions) {
  const SphereManifold s(4);
  Rng rng(3);
  const Point x = s.random_point(rng);
  const Point y = s.retract(x, 0.5 * s.random_tangent(x, rng));
  EXPECT_EQ(check_transport_isometry(s, x, y, s.zero_tangent(x)), 0.0);
  EXPECT_LE(check_transport_isometry(s, x, y, s.random_tangent(x, rng)), 1e-12);
  const EuclideanManifold r(4, 1);
  const Point a = r.random_point(rng);
  const Point b = r.random_point(rng);
  EXPECT_EQ(check_transport_isometry(r, a, b, r.random_tangent(a, rng)), 0.0);
}

TEST(Verification, TangentBasisIsOrthonormalWithFullDimension) {
  Rng rng(4);
  const std::vector<ManifoldPtr> kernels = {
      std::make_shared<SphereManifold>(5), std::make_shared<SpdManifold>(3),
      std::make_shared<StiefelManifold>(6, 2), std::make_shared<GrassmannManifold>(6, 2),
      std::make_shared<EuclideanManifold>(2, 2)};
  for (const auto& m : kernels) {
    const Point x = m->random_point(rng);
    const auto basis = orthonormal_tangent_basis(*m, x);
    ASSERT_EQ(static_cast<Index>(basis.size()), m->dimension()) << m->name();
    for (std::size_t i = 0; i < basis.size(); ++i) {
      EXPECT_LT(m->tangent_error(x, basis[i].value), 1e-12);
      for (std::size_t j = 0; j < basis.size(); ++j) {
        EXPECT_NEAR(m->inner(x, basis[i], basis[j]), i == j ? 1.0 : 0.0, 1e-10) << m->name();
      }
    }
  }
}

TEST(Verification, TangentBasisIsDeterministic) {
  const StiefelManifold st(5, 2);
  Rng rng(8);
  const Point x = st.random_point(rng);
  const auto a = orthonormal_tangent_basis(st, x);
  const auto b = orthonormal_tangent_basis(st, x);
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) EXPECT_EQ(a[i].value, b[i].value);
}

TEST(Verification, FiniteDifferenceOfConstantIsZero) {
  const SphereManifold s(3);
  Rng rng(5);
  const Point x = s.random_point(rng);
  const Tangent g = finite_difference_gradient([](const Point&) { return 2.0; }, s, x, 1e-5);
  EXPECT_EQ(g.value.norm(), 0.0);
}

TEST(Verification, FiniteDifferenceAtCriticalPoint) {
  const SphereManifold s1(1);
  const Matrix a = Vector(Eigen::Vector2d(2.0, 1.0)).asDiagonal();
  const auto f = [&a](const Point& x) { return -(x.value.transpose() * a * x.value)(0, 0); };
  const Point x{Vector::Unit(2, 1)};
  EXPECT_LE(finite_difference_gradient(f, s1, x, 1e-5).value.norm(), 1e-6);
}

TEST(Verification, FiniteDifferenceMatchesAnalyticQuadratic) {
  const SphereManifold s(4);
  Rng rng(6);
  const Matrix b = rng.gaussian(5, 5);
  const Matrix a = b + b.transpose();
  const auto f = [&a](const Point& x) { return (x.value.transpose() * a * x.value)(0, 0); };
  const Point x = s.random_point(rng);
  const Tangent g = s.project(x, 2.0 * a * x.value);
  const Tangent fd = finite_difference_gradient(f, s, x, 1e-5);
  EXPECT_LT((g.value - fd.value).norm() / g.value.norm(), 1e-8);
}

TEST(Verification, FiniteDifferenceRejectsNonPositiveStep) {
  const SphereManifold s(2);
  const Point x{Vector::Unit(3, 0)};
  EXPECT_THROW(finite_difference_gradient([](const Point&) { return 0.0; }, s, x, 0.0),
               ParameterError);
}

}  // namespace
}  // namespace rfed
