#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>

#include "rfed/core/errors.hpp"
#include "rfed/core/rng.hpp"
#include "rfed/core/verification.hpp"
#include "rfed/manifolds/spd.hpp"
#include "rfed/problems/cfmspd.hpp"
#include "rfed/problems/cpesph.hpp"
#include "rfed/problems/dataset_io.hpp"
#include "rfed/problems/mbcfsti.hpp"
#include "rfed/problems/mtfl.hpp"
#include "rfed/problems/ridge.hpp"

namespace rfed {
namespace {

double rel_fd_error(const FederatedProblem& p, const Point& x, double h = 1e-5) {
  const Manifold& m = p.manifold();
  const Tangent g = p.gradient(x);
  const Tangent fd = finite_difference_gradient([&p](const Point& y) { return p.cost(y); }, m, x, h);
  return m.norm(x, g - fd) / m.norm(x, g);
}

// Shared checks: agent decomposition, tangency and a descent step.
void check_structure(const FederatedProblem& p, std::uint64_t seed) {
  const Manifold& m = p.manifold();
  Rng rng(seed);
  for (int i = 0; i < 5; ++i) {
    const Point x = m.random_point(rng);
    double mean = 0.0;
    for (Index a = 0; a < p.num_agents(); ++a) mean += p.local_cost(x, a);
    mean /= static_cast<double>(p.num_agents());
    EXPECT_NEAR(p.cost(x), mean, 1e-12 * std::max(1.0, std::abs(mean)));
    const Tangent g = p.gradient(x);
    EXPECT_LE(m.tangent_error(x, g.value), 1e-10);
    const Point next = m.retract(x, Tangent{-1e-6 * g.value});
    EXPECT_LE(p.cost(next), p.cost(x));
  }
}

TEST(Cpesph, EvenObjectiveAndGradient) {
  const CpesphProblem p = make_cpesph(25, 10, 80, 1e-3, 1);
  Rng rng(2);
  for (int i = 0; i < 5; ++i) {
    const Point x = p.manifold().random_point(rng);
    EXPECT_DOUBLE_EQ(p.cost(x), p.cost(Point{-x.value}));
    EXPECT_LT(rel_fd_error(p, x), 1e-5);
  }
  check_structure(p, 3);
}

TEST(Cpesph, ShapesAndValidation) {
  const CpesphProblem p = make_cpesph(5, 2, 3, 0.1, 4);
  EXPECT_EQ(p.num_agents(), 2);
  EXPECT_EQ(p.samples_per_agent(), 3);
  EXPECT_EQ(p.agent_rows().front().rows(), 3);
  EXPECT_EQ(p.agent_rows().front().cols(), 6);
  EXPECT_THROW(make_cpesph(3, 2, 10, 0.1, 1), ParameterError);
  EXPECT_THROW(make_cpesph(10, 2, 10, 0.0, 1), ParameterError);
  EXPECT_THROW(make_cpesph(10, 2, 10, 0.75, 1), ParameterError);
}

TEST(Cpesph, LocalSpectrumFollowsRecipe) {
  const double v = 0.05;
  const CpesphProblem p = make_cpesph(9, 1, 40, v, 5);
  const Matrix& z = p.agent_rows().front();
  const Vector s = Eigen::JacobiSVD<Matrix>(z).singularValues();
  EXPECT_NEAR(s(0), 1.0, 1e-12);
  for (int k = 1; k < 5; ++k) EXPECT_NEAR(s(k), 1.0 - (1.0 + 0.1 * k) * v, 1e-12);
  for (int k = 5; k < 10; ++k) EXPECT_LT(s(k), 1.0);
}

TEST(Cpesph, SqrtNRowScaling) {
  const CpesphProblem a = make_cpesph(9, 2, 16, 0.05, 5);
  const CpesphProblem b = make_cpesph(9, 2, 16, 0.05, 5, true);
  EXPECT_LT((b.agent_rows()[1] - 4.0 * a.agent_rows()[1]).norm(), 1e-12);
}

TEST(Cpesph, ReferenceOnDiagonalCovariance) {
  Matrix z = Matrix::Zero(2, 5);
  z(0, 0) = std::sqrt(2.0);
  z(1, 1) = 1.0;
  const CpesphProblem p({z});
  const auto x = p.reference_optimum();
  ASSERT_TRUE(x.has_value());
  EXPECT_LT((x->value - Vector::Unit(5, 0)).norm(), 1e-12);
}

TEST(Cpesph, ReferenceIsTopEigenvector) {
  const CpesphProblem p = make_cpesph(25, 10, 80, 1e-3, 1);
  const Point x = *reference_optimum(p);
  const Eigen::SelfAdjointEigenSolver<Matrix> eig(p.mean_covariance());
  EXPECT_NEAR(p.cost(x), -eig.eigenvalues().maxCoeff(), 1e-14);
  EXPECT_LT(p.manifold().norm(x, p.gradient(x)), 1e-12);
}

TEST(Cfmspd, SamplesRespectDiameter) {
  const CfmspdProblem p = make_cfmspd(2, 10, 60, 1.0, 1);
  const SpdManifold spd(2);
  const Point id{Matrix::Identity(2, 2)};
  for (const auto& agent : p.agent_samples()) {
    ASSERT_EQ(agent.size(), 60u);
    for (const Matrix& z : agent) EXPECT_LE(spd.distance(id, Point{z}), 1.0);
  }
  EXPECT_THROW(make_cfmspd(2, 1, 1, 0.0, 1), ParameterError);
  EXPECT_THROW(make_cfmspd(0, 1, 1, 1.0, 1), ParameterError);
}

TEST(Cfmspd, GradientMatchesFiniteDifferences) {
  const CfmspdProblem p = make_cfmspd(3, 4, 10, 1.0, 2);
  Rng rng(3);
  for (int i = 0; i < 5; ++i) {
    const Point x = p.manifold().random_point(rng);
    EXPECT_LT(rel_fd_error(p, x), 1e-5);
  }
  check_structure(p, 4);
}

TEST(Cfmspd, IdenticalSamplesAreTheMinimizer) {
  Rng rng(5);
  const Matrix g = rng.gaussian(3, 3);
  const Matrix z = g * g.transpose() + Matrix::Identity(3, 3);
  const CfmspdProblem p({{z, z}, {z, z}});
  EXPECT_LT(p.gradient(Point{z}).value.norm(), 1e-12);
  EXPECT_NEAR(p.cost(Point{z}), 0.0, 1e-24);
}

TEST(Cfmspd, ScalarTwoSampleMean) {
  const double a = 0.5, b = 8.0;
  const CfmspdProblem p({{Matrix::Constant(1, 1, a)}, {Matrix::Constant(1, 1, b)}});
  const Point mean{Matrix::Constant(1, 1, std::sqrt(a * b))};
  EXPECT_LT(p.gradient(mean).value.norm(), 1e-14);
  EXPECT_FALSE(p.reference_optimum().has_value());
  EXPECT_NEAR(p.log_euclidean_mean().value(0, 0), std::sqrt(a * b), 1e-14);
  EXPECT_EQ(p.initial_point(3).value, Matrix::Identity(1, 1));
}

TEST(Cfmspd, RejectsNonSpdSamples) {
  EXPECT_THROW(CfmspdProblem({{Matrix::Constant(1, 1, -1.0)}}), DomainError);
}

TEST(Mbcfsti, GradientAndClosedForm) {
  const MbcfstiProblem p = make_mbcfsti(25, 2, 20, 50, 1);
  Rng rng(2);
  for (int i = 0; i < 3; ++i) {
    EXPECT_LT(rel_fd_error(p, p.manifold().random_point(rng)), 1e-5);
  }
  const Point x = *reference_optimum(p);
  const Eigen::SelfAdjointEigenSolver<Matrix> eig(p.mean_matrix());
  const double oracle = 2.0 * eig.eigenvalues()(0) + 1.0 * eig.eigenvalues()(1);
  EXPECT_NEAR(p.cost(x), oracle, 1e-10 * std::abs(oracle));
  EXPECT_NEAR(p.optimal_cost(), oracle, 1e-10 * std::abs(oracle));
  EXPECT_LT(p.manifold().norm(x, p.gradient(x)), 1e-10);
  check_structure(p, 3);
}

TEST(Mbcfsti, SamplesSymmetricAndWeightsDescending) {
  const MbcfstiProblem p = make_mbcfsti(6, 3, 2, 4, 3);
  for (const auto& agent : p.agent_samples()) {
    for (const Matrix& a : agent) EXPECT_EQ(a, a.transpose());
  }
  EXPECT_EQ(p.h_diagonal(), Vector(Eigen::Vector3d(3, 2, 1)));
  EXPECT_THROW(make_mbcfsti(4, 5, 1, 1, 1), ParameterError);
}

TEST(Mbcfsti, IdentityWeightsOnOrthogonalGroupAreConstant) {
  const MbcfstiProblem base = make_mbcfsti(5, 5, 2, 3, 4);
  const MbcfstiProblem p(base.agent_samples(), Vector::Ones(5));
  Rng rng(5);
  const Point x = p.manifold().random_point(rng);
  const Point y = p.manifold().random_point(rng);
  EXPECT_NEAR(p.cost(x), p.cost(y), 1e-10);
  EXPECT_LT(p.gradient(x).value.norm(), 1e-10);
}

TEST(Ridge, Examples) {
  const Matrix id = Matrix::Identity(4, 4);
  const Vector y = Vector::LinSpaced(4, 1.0, 4.0);
  EXPECT_LT((ridge_solve(id, y, 0.0).w - y).norm(), 1e-15);
  EXPECT_LT((ridge_solve(id, y, 0.5).w - 0.5 * y).norm(), 1e-15);
  EXPECT_EQ(ridge_solve(id, Vector::Zero(4), 0.3).w.norm(), 0.0);
  EXPECT_FALSE(ridge_solve(id, y, 0.0).used_pseudo_inverse);
}

TEST(Ridge, SingularUnregularizedUsesMinimumNorm) {
  Matrix z(3, 2);
  z << 1, 1, 2, 2, 3, 3;
  const Vector y = Eigen::Vector3d(1, 2, 3);
  const RidgeSolution s = ridge_solve(z, y, 0.0);
  EXPECT_TRUE(s.used_pseudo_inverse);
  EXPECT_NEAR(s.w(0), 0.5, 1e-12);
  EXPECT_NEAR(s.w(1), 0.5, 1e-12);
  EXPECT_THROW(ridge_solve(z, y, -1.0), ParameterError);
}

TEST(Mtfl, PlantedSubspaceIsExactWithoutNoise) {
  const MtflProblem p = make_mtfl(20, 3, 2, 4, 0.0, 0.0, 1);
  ASSERT_TRUE(p.ground_truth().has_value());
  EXPECT_LT(p.cost(Point{*p.ground_truth()}), 1e-20);
  for (const auto& agent : p.agent_tasks()) {
    for (const TaskRecord& t : agent) {
      EXPECT_GE(t.X.rows(), 10);
      EXPECT_LE(t.X.rows(), 50);
      EXPECT_EQ(t.X.cols(), 20);
    }
  }
}

TEST(Mtfl, GradientMatchesFiniteDifferences) {
  for (double lambda : {0.0, 0.2}) {
    const MtflProblem p = make_mtfl(15, 3, 2, 3, 1e-2, lambda, 2);
    Rng rng(3);
    for (int i = 0; i < 4; ++i) {
      EXPECT_LT(rel_fd_error(p, p.manifold().random_point(rng)), 1e-4) << "lambda " << lambda;
    }
    check_structure(p, 4);
  }
}

TEST(Mtfl, InvariantUnderBasisChange) {
  const MtflProblem p = make_mtfl(12, 3, 1, 3, 1e-3, 0.1, 5);
  Rng rng(6);
  const Point u = p.manifold().random_point(rng);
  Eigen::HouseholderQR<Matrix> qr(rng.gaussian(3, 3));
  const Matrix q = qr.householderQ();
  EXPECT_NEAR(p.cost(u), p.cost(Point{u.value * q}), 1e-12);
}

TEST(Mtfl, Validation) {
  EXPECT_THROW(make_mtfl(5, 5, 1, 1, 0.0, 0.0, 1), ParameterError);
  EXPECT_THROW(make_mtfl(5, 2, 1, 1, 0.0, -1.0, 1), ParameterError);
  EXPECT_FALSE(make_mtfl(6, 2, 1, 2, 0.0, 0.0, 1).reference_optimum().has_value());
}

TEST(Minibatch, FullBatchEqualsLocalGradient) {
  const CpesphProblem p = make_cpesph(7, 3, 12, 0.1, 1);
  Rng rng(2);
  const Point x = p.manifold().random_point(rng);
  for (Index a = 0; a < 3; ++a) {
    EXPECT_EQ(minibatch_gradient(p, a, x, p.all_samples()).value, p.local_gradient(x, a).value);
  }
}

TEST(Minibatch, SingletonAverageIsUnbiased) {
  const MbcfstiProblem p = make_mbcfsti(6, 2, 2, 9, 3);
  Rng rng(4);
  const Point x = p.manifold().random_point(rng);
  Matrix mean = Matrix::Zero(6, 2);
  for (Index s = 0; s < 9; ++s) {
    const Index one[] = {s};
    mean += minibatch_gradient(p, 1, x, one).value;
  }
  mean /= 9.0;
  EXPECT_LT((mean - p.local_gradient(x, 1).value).norm(), 1e-12);
}

TEST(Minibatch, Errors) {
  const CpesphProblem p = make_cpesph(5, 1, 4, 0.1, 1);
  const Point x{Vector::Unit(6, 0)};
  EXPECT_THROW(minibatch_gradient(p, 0, x, {}), ParameterError);
  const Index out[] = {4};
  EXPECT_THROW(minibatch_gradient(p, 0, x, out), ParameterError);
  const Index ok[] = {0};
  EXPECT_THROW(minibatch_gradient(p, 1, x, ok), ParameterError);
}

TEST(Minibatch, SamplingWithReplacementIsUniform) {
  Rng rng(7);
  const auto batch = sample_batch(5, 50000, rng);
  std::vector<int> counts(5, 0);
  for (Index i : batch) counts[static_cast<std::size_t>(i)]++;
  for (int c : counts) EXPECT_NEAR(c / 50000.0, 0.2, 0.01);
  EXPECT_THROW(sample_batch(0, 1, rng), ParameterError);
  EXPECT_THROW(sample_batch(3, 0, rng), ParameterError);
}

class DatasetRoundTrip : public ::testing::TestWithParam<std::string> {};

TEST_P(DatasetRoundTrip, PreservesProblem) {
  const std::string kind = GetParam();
  nlohmann::json g = {{"kind", kind}, {"seed", 3}, {"S", 2}, {"N", 3}};
  if (kind == "cpesph") g["d"] = 6;
  if (kind == "mbcfsti") g["d"] = 5;
  if (kind == "mtfl") g["m"] = 8, g["r"] = 2, g["lambda"] = 0.1;
  Dataset d = synthesize(g);
  d.reference = ReferenceSolution{d.problem->initial_point(1), 1.25, 3e-7, "rsd"};
  const auto dir = std::filesystem::temp_directory_path() / "rfed_dataset_test";
  std::filesystem::create_directories(dir);
  for (const char* ext : {".json", ".bin"}) {
    const auto path = dir / (kind + ext);
    save_dataset(d, path);
    const Dataset back = load_dataset(path);
    EXPECT_EQ(back.problem->kind(), d.problem->kind());
    EXPECT_EQ(back.generator, d.generator);
    ASSERT_TRUE(back.reference.has_value());
    EXPECT_EQ(back.reference->point.value, d.reference->point.value);
    EXPECT_EQ(back.reference->cost, 1.25);
    EXPECT_EQ(back.reference->method, "rsd");
    Rng rng(9);
    const Point x = d.problem->manifold().random_point(rng);
    EXPECT_EQ(back.problem->cost(x), d.problem->cost(x));
    EXPECT_EQ(back.problem->gradient(x).value, d.problem->gradient(x).value);
  }
}

INSTANTIATE_TEST_SUITE_P(AllKinds, DatasetRoundTrip,
                         ::testing::Values("cpesph", "cfmspd", "mbcfsti", "mtfl"));

TEST(DatasetIo, MtflKeepsGroundTruthAndTestSplit) {
  MtflProblem p = make_mtfl(8, 2, 1, 2, 0.0, 0.0, 4);
  p.set_test_tasks({{TaskRecord{Matrix::Ones(2, 8), Vector::Ones(2)},
                     TaskRecord{Matrix::Zero(0, 8), Vector::Zero(0)}}});
  Dataset d{std::make_shared<MtflProblem>(p), {{"kind", "mtfl"}, {"seed", 4}}, std::nullopt};
  const auto path = std::filesystem::temp_directory_path() / "rfed_mtfl_split.json";
  save_dataset(d, path);
  const Dataset back = load_dataset(path);
  const auto& q = static_cast<const MtflProblem&>(*back.problem);
  ASSERT_TRUE(q.ground_truth().has_value());
  EXPECT_EQ(*q.ground_truth(), *p.ground_truth());
  ASSERT_TRUE(q.test_tasks().has_value());
  EXPECT_EQ((*q.test_tasks())[0][0].X, Matrix::Ones(2, 8));
  EXPECT_EQ((*q.test_tasks())[0][1].X.rows(), 0);
}

TEST(DatasetIo, Errors) {
  const auto dir = std::filesystem::temp_directory_path();
  EXPECT_THROW(load_dataset(dir / "rfed_does_not_exist.json"), IoError);
  {
    std::ofstream(dir / "rfed_garbage.json") << "{\"format\": \"something else\"}";
  }
  EXPECT_THROW(load_dataset(dir / "rfed_garbage.json"), FormatError);
  {
    std::ofstream(dir / "rfed_garbage.bin") << "\x01\x02\x03";
  }
  EXPECT_THROW(load_dataset(dir / "rfed_garbage.bin"), FormatError);
  EXPECT_THROW(synthesize({{"kind", "nope"}}), ParameterError);
  EXPECT_THROW(synthesize({{"kind", "cpesph"}, {"d", "wide"}}), ParameterError);
  EXPECT_THROW(matrix_from_json({{"rows", 2}, {"cols", 2}, {"data", {1.0}}}), FormatError);
}

TEST(DatasetIo, SynthesisIsDeterministic) {
  const Dataset a = synthesize({{"kind", "cfmspd"}, {"seed", 11}, {"S", 2}, {"N", 4}});
  const Dataset b = synthesize({{"kind", "cfmspd"}, {"seed", 11}, {"S", 2}, {"N", 4}});
  EXPECT_EQ(dataset_to_json(a), dataset_to_json(b));
  const Dataset c = synthesize({{"kind", "cfmspd"}, {"seed", 12}, {"S", 2}, {"N", 4}});
  EXPECT_NE(dataset_to_json(a), dataset_to_json(c));
}

}  // namespace
}  // namespace rfed
