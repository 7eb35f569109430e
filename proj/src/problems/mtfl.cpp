#include "rfed/problems/mtfl.hpp"

#include "rfed/core/errors.hpp"
#include "rfed/core/matrix_functions.hpp"
#include "rfed/manifolds/grassmann.hpp"
#include "rfed/problems/ridge.hpp"

namespace rfed {

namespace {

Index checked_m(const std::vector<std::vector<TaskRecord>>& tasks) {
  if (tasks.empty() || tasks.front().empty()) throw ParameterError("mtfl: no tasks");
  const Index m = tasks.front().front().X.cols();
  for (const auto& agent : tasks) {
    if (agent.size() != tasks.front().size()) {
      throw ParameterError("mtfl: every agent must hold the same number of tasks");
    }
    for (const TaskRecord& t : agent) {
      if (t.X.cols() != m) throw ParameterError("mtfl: feature count differs between tasks");
      if (t.X.rows() != t.y.size()) throw ParameterError("mtfl: label count differs from rows");
      if (t.X.rows() < 1) throw ParameterError("mtfl: task without instances");
    }
  }
  return m;
}

}  // namespace

MtflProblem::MtflProblem(std::vector<std::vector<TaskRecord>> agent_tasks, Index r, double lambda)
    : FederatedProblem(std::make_shared<GrassmannManifold>(checked_m(agent_tasks), r),
                       static_cast<Index>(agent_tasks.size()),
                       static_cast<Index>(agent_tasks.front().size())),
      tasks_(std::move(agent_tasks)),
      lambda_(lambda) {
  if (lambda < 0.0) throw ParameterError("mtfl: lambda must be non-negative");
}

void MtflProblem::set_ground_truth(Matrix u_star) {
  manifold().require_shape(u_star, "ground truth subspace");
  ground_truth_ = std::move(u_star);
}

void MtflProblem::set_test_tasks(std::vector<std::vector<TaskRecord>> test) {
  if (static_cast<Index>(test.size()) != num_agents()) {
    throw ParameterError("mtfl: test split must have one entry per agent");
  }
  for (const auto& agent : test) {
    if (static_cast<Index>(agent.size()) != samples_per_agent()) {
      throw ParameterError("mtfl: test split must have one entry per task");
    }
    for (const TaskRecord& t : agent) {
      if (t.X.rows() > 0 && t.X.cols() != m()) throw ParameterError("mtfl: test feature count");
      if (t.X.rows() != t.y.size()) throw ParameterError("mtfl: test label count");
    }
  }
  test_ = std::move(test);
}

double MtflProblem::task_cost(const Matrix& u, const TaskRecord& task) const {
  const Matrix z = task.X * u;
  const Vector w = ridge_solve(z, task.y, lambda_).w;
  return 0.5 * (z * w - task.y).squaredNorm();
}

Matrix MtflProblem::task_euclidean_gradient(const Matrix& u, const TaskRecord& task) const {
  const Matrix z = task.X * u;
  const Vector w = ridge_solve(z, task.y, lambda_).w;
  const Vector residual = z * w - task.y;
  const Vector xr = task.X.transpose() * residual;
  Matrix g = xr * w.transpose();
  if (lambda_ > 0.0) {
    // w(U) is not stationary for the unregularized residual, so the derivative
    // of w through A = Z^T Z + 2 lambda I contributes
    //   2 lambda (X^T r q^T + X^T Z q w^T),  q = A^-1 w.
    Matrix a = z.transpose() * z;
    a.diagonal().array() += 2.0 * lambda_;
    const Vector q = a.llt().solve(w);
    g += (2.0 * lambda_) * (xr * q.transpose() + (task.X.transpose() * (z * q)) * w.transpose());
  }
  return g;
}

double MtflProblem::batch_cost(const Point& x, Index agent, std::span<const Index> samples) const {
  require_agent(agent);
  const auto& tasks = tasks_[static_cast<std::size_t>(agent)];
  double total = 0.0;
  for (Index s : samples) total += task_cost(x.value, tasks[static_cast<std::size_t>(s)]);
  return total / static_cast<double>(samples.size());
}

Tangent MtflProblem::batch_gradient(const Point& x, Index agent,
                                    std::span<const Index> samples) const {
  require_agent(agent);
  const auto& tasks = tasks_[static_cast<std::size_t>(agent)];
  Matrix egrad = Matrix::Zero(x.value.rows(), x.value.cols());
  for (Index s : samples) egrad += task_euclidean_gradient(x.value, tasks[static_cast<std::size_t>(s)]);
  egrad /= static_cast<double>(samples.size());
  return manifold().project(x, egrad);
}

MtflProblem make_mtfl(Index m, Index r, Index num_agents, Index samples_per_agent,
                      double noise_std, double lambda, std::uint64_t seed) {
  if (r < 1 || r >= m) throw ParameterError("mtfl: requires 1 <= r < m");
  if (num_agents < 1 || samples_per_agent < 1) {
    throw ParameterError("mtfl: agent and task counts must be positive");
  }
  if (noise_std < 0.0) throw ParameterError("mtfl: noise_std must be non-negative");
  Rng truth_rng({seed, 0x7573746172ULL});
  const Matrix u_star = orthonormal_columns(truth_rng.gaussian(m, r));
  const Matrix projector = u_star * u_star.transpose();

  std::vector<std::vector<TaskRecord>> tasks(static_cast<std::size_t>(num_agents));
  for (Index i = 0; i < num_agents; ++i) {
    auto& agent = tasks[static_cast<std::size_t>(i)];
    agent.reserve(static_cast<std::size_t>(samples_per_agent));
    for (Index j = 0; j < samples_per_agent; ++j) {
      Rng rng({seed, 0x7461736bULL, static_cast<std::uint64_t>(i), static_cast<std::uint64_t>(j)});
      const Index rows = rng.between(10, 50);
      TaskRecord task;
      task.X = rng.gaussian(rows, m);
      const Vector w = rng.gaussian(m, 1);
      task.y = task.X * (projector * w);
      for (Index k = 0; k < rows; ++k) task.y(k) += noise_std * rng.normal();
      agent.push_back(std::move(task));
    }
  }
  MtflProblem problem(std::move(tasks), r, lambda);
  problem.set_ground_truth(u_star);
  return problem;
}

}  // namespace rfed
