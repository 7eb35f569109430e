#include "rfed/harness/check.hpp"

#include <chrono>
#include <cmath>
#include <iomanip>

#include "rfed/core/rng.hpp"
#include "rfed/core/verification.hpp"
#include "rfed/manifolds/euclidean.hpp"
#include "rfed/manifolds/grassmann.hpp"
#include "rfed/manifolds/spd.hpp"
#include "rfed/manifolds/sphere.hpp"
#include "rfed/manifolds/stiefel.hpp"
#include "rfed/problems/cfmspd.hpp"
#include "rfed/problems/cpesph.hpp"
#include "rfed/problems/mbcfsti.hpp"
#include "rfed/problems/mtfl.hpp"

namespace rfed {

namespace {

constexpr double kGeometryTol = 1e-10;
constexpr double kRoundTripTol = 1e-8;
constexpr double kRoundTripRadius = 0.1;
constexpr double kFdStep = 1e-5;

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

// Runs `cases` draws of `trial`, keeping the worst error; exceptions fail the check.
template <class Trial>
CheckResult run_check(std::string suite, std::string name, double tol, int cases, Trial trial) {
  CheckResult r{std::move(suite), std::move(name), false, 0.0, tol, 0, 0.0, {}};
  const auto start = Clock::now();
  try {
    for (int c = 0; c < cases; ++c) {
      const double e = trial(c);
      if (!(e <= r.worst)) r.worst = std::isnan(e) ? INFINITY : e;
      ++r.cases;
    }
    r.passed = r.worst <= tol;
  } catch (const std::exception& e) {
    r.detail = e.what();
  }
  r.seconds = seconds_since(start);
  return r;
}

}  // namespace

std::vector<ManifoldPtr> geometry_suite_kernels() {
  return {std::make_shared<EuclideanManifold>(4, 3), std::make_shared<SphereManifold>(25),
          std::make_shared<SpdManifold>(3),          std::make_shared<StiefelManifold>(25, 2),
          std::make_shared<GrassmannManifold>(100, 5)};
}

std::vector<CheckResult> run_geometry_suite(std::uint64_t seed, int cases) {
  std::vector<CheckResult> out;
  for (const ManifoldPtr& mp : geometry_suite_kernels()) {
    const Manifold& m = *mp;
    const std::uint64_t tag = static_cast<std::uint64_t>(m.kind());

    out.push_back(run_check("geometry", m.name() + " retraction feasibility", kGeometryTol, cases,
                            [&](int c) {
                              Rng rng({seed, tag, 1, static_cast<std::uint64_t>(c)});
                              const Point x = m.random_point(rng);
                              const double scale = 2.0 * rng.uniform();
                              const Tangent v = scale * m.random_tangent(x, rng);
                              double e = m.feasibility_error(m.retract(x, v).value);
                              if (m.has_exp()) e = std::max(e, m.feasibility_error(m.exp(x, v).value));
                              return e;
                            }));

    out.push_back(run_check("geometry", m.name() + " transport isometry", kGeometryTol, cases,
                            [&](int c) {
                              Rng rng({seed, tag, 2, static_cast<std::uint64_t>(c)});
                              const Point x = m.random_point(rng);
                              const Point y = m.retract(x, rng.uniform() * m.random_tangent(x, rng));
                              const Tangent v = (0.1 + 2.0 * rng.uniform()) * m.random_tangent(x, rng);
                              const Tangent w = m.transport(x, y, v);
                              return std::max(check_transport_isometry(m, x, y, v),
                                              m.tangent_error(y, w.value));
                            }));

    if (m.has_log()) {
      out.push_back(run_check("geometry", m.name() + " exp/log round trip", kRoundTripTol, cases,
                              [&](int c) {
                                Rng rng({seed, tag, 3, static_cast<std::uint64_t>(c)});
                                const Point x = m.random_point(rng);
                                const Tangent v =
                                    (kRoundTripRadius * rng.uniform()) * m.random_tangent(x, rng);
                                const Tangent back = m.log(x, m.exp(x, v));
                                return m.norm(x, back - v) / m.norm(x, v);
                              }));
    }
  }
  return out;
}

std::vector<GradientCase> gradient_suite_problems(std::uint64_t seed) {
  std::vector<GradientCase> out;
  out.push_back({"cpesph d=25 S=10 N=80",
                 std::make_shared<CpesphProblem>(make_cpesph(25, 10, 80, 1e-3, seed)), 1e-5});
  out.push_back({"cfmspd n=2 S=10 N=60",
                 std::make_shared<CfmspdProblem>(make_cfmspd(2, 10, 60, 1.0, seed)), 1e-5});
  out.push_back({"mbcfsti d=25 p=2 S=20 N=50",
                 std::make_shared<MbcfstiProblem>(make_mbcfsti(25, 2, 20, 50, seed)), 1e-5});
  out.push_back({"mtfl m=100 r=5 S=2 N=5 lambda=0",
                 std::make_shared<MtflProblem>(make_mtfl(100, 5, 2, 5, 1e-6, 0.0, seed)), 1e-4});
  out.push_back({"mtfl m=100 r=5 S=2 N=5 lambda=0.1",
                 std::make_shared<MtflProblem>(make_mtfl(100, 5, 2, 5, 1e-6, 0.1, seed)), 1e-4});
  return out;
}

std::vector<CheckResult> run_gradient_suite(std::uint64_t seed, int points) {
  std::vector<CheckResult> out;
  std::uint64_t index = 0;
  for (const GradientCase& gc : gradient_suite_problems(seed)) {
    const FederatedProblem& p = *gc.problem;
    const Manifold& m = p.manifold();
    const std::uint64_t tag = index++;
    const auto cost = [&p](const Point& x) { return p.cost(x); };
    out.push_back(run_check("gradient", gc.name, gc.tolerance, points, [&](int c) {
      Rng rng({seed, 0x67726164, tag, static_cast<std::uint64_t>(c)});
      Point x = m.random_point(rng);
      if (m.kind() == ManifoldKind::kSpd) {
        // Stay in the region the Wishart data lives in.
        x = m.exp(Point{Matrix::Identity(m.rows(), m.cols())},
                  (0.5 * rng.uniform()) * m.random_tangent(Point{Matrix::Identity(m.rows(), m.cols())}, rng));
      }
      const Tangent g = p.gradient(x);
      const Tangent fd = finite_difference_gradient(cost, m, x, kFdStep);
      return m.norm(x, g - fd) / m.norm(x, g);
    }));
  }
  return out;
}

void print_check_table(std::ostream& out, const std::vector<CheckResult>& results) {
  out << std::left << std::setw(10) << "suite" << std::setw(44) << "check" << std::setw(6)
      << "result" << std::right << std::setw(12) << "worst" << std::setw(10) << "tol"
      << std::setw(7) << "cases" << std::setw(9) << "secs" << '\n';
  for (const CheckResult& r : results) {
    out << std::left << std::setw(10) << r.suite << std::setw(44) << r.name << std::setw(6)
        << (r.passed ? "PASS" : "FAIL") << std::right << std::scientific << std::setprecision(2)
        << std::setw(12) << r.worst << std::setw(10) << r.tolerance << std::setw(7) << r.cases
        << std::fixed << std::setprecision(2) << std::setw(9) << r.seconds << '\n';
    if (!r.detail.empty()) out << "    " << r.detail << '\n';
  }
  out.unsetf(std::ios::floatfield);
}

}  // namespace rfed
