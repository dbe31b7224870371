#include <doctest.h>

#include <cstdlib>

#include "pickfam/errors.hpp"
#include "pickfam/oracle.hpp"
#include "pickfam/pick.hpp"
#include "test_helpers.hpp"

using namespace testing;

namespace {

PickProblem make_problem(const SubalgebraSpec& spec, std::vector<Complex> nodes, std::vector<Complex> targets,
                         std::size_t samples = 120) {
  PickProblem p;
  p.spec = spec;
  for (auto z : nodes) p.nodes.push_back({z});
  p.targets = std::move(targets);
  p.options.samples = samples;
  p.options.seed = 5;
  return p;
}

class ThreadsGuard {
 public:
  explicit ThreadsGuard(const char* value) { setenv("PICKFAM_THREADS", value, 1); }
  ~ThreadsGuard() { unsetenv("PICKFAM_THREADS"); }
  ThreadsGuard(const ThreadsGuard&) = delete;
  ThreadsGuard& operator=(const ThreadsGuard&) = delete;
};

}  // namespace

TEST_CASE("is_psd examples") {
  CHECK(is_psd(Eigen::MatrixXcd::Identity(3, 3)).psd);
  Eigen::MatrixXcd m(2, 2);
  m << 1, 2, 2, 1;
  const auto r = is_psd(m);
  CHECK_FALSE(r.psd);
  CHECK(r.lambda_min == doctest::Approx(-1.0));
  CHECK(is_psd(Eigen::MatrixXcd::Zero(2, 2)).psd);
  Eigen::MatrixXcd bad = Eigen::MatrixXcd::Identity(2, 2);
  bad(0, 1) = std::nan("");
  CHECK_THROWS(is_psd(bad));
}

TEST_CASE("separation") {
  CHECK(separates(spec_z2_z3(), {{0.0}, {0.5}}));
  CHECK(separates(spec_z2_z5(), {{Complex(0.2, 0.1)}, {-0.3}, {0.7}}));
  // z^2 and z^3 together tell z from -z; z^2 alone would not.
  CHECK(separates(spec_z2_z3(), {{0.4}, {-0.4}}));
  CHECK(separates(SubalgebraSpec::semigroup(NumericalSemigroup({2, 4, 6, 7})), {{0.4}, {-0.4}}));
  // Every element of C1 + z(z - 1/2)C[z] agrees at the two roots.
  CHECK_FALSE(separates(spec_two_roots(), {{0.0}, {0.5}}));
  CHECK(separates(spec_two_roots(), {{0.0}, {0.25}}));
  CHECK_THROWS_AS(separates(spec_z2_z3(), {{0.1}, {0.1}}), InvalidArgument);
}

TEST_CASE("Pick matrix examples") {
  const auto c = spec_classical();
  const auto k = submodule_kernel(c, c.ring().one());
  const auto p = pick_matrix(k, {{0.0}, {0.5}}, std::vector<Complex>{0.0, 0.5});
  Eigen::MatrixXcd expected(2, 2);
  expected << 1, 1, 1, 1;
  CHECK((p - expected).norm() < 1e-15);
  CHECK(is_psd(p).psd);

  const auto s = spec_z2_z5();
  const auto ks = submodule_kernel(s, jet1({1, 2, 0, GaussRational(Rational(1), Rational(-1))}));
  const std::vector<Point> nodes{{0.1}, {Complex(-0.2, 0.4)}, {0.6}};
  CHECK((pick_matrix(ks, nodes, std::vector<Complex>(3, 0.0)) - kernel_gram(ks, nodes)).norm() < 1e-15);

  const std::vector<ExactPoint> en{{GaussRational(Rational(1, 4))}, {GaussRational(Rational(-1, 3), Rational(1, 5))}};
  const std::vector<GaussRational> et{GaussRational(Rational(1, 2)), 0};
  const ExactMatrix pe = pick_matrix_exact(ks, en, et);
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j) {
      const auto kij = ks.evaluate_exact(en[i], en[j])(0, 0);
      CHECK(pe(i, j) == (GaussRational(1) - et[i] * et[j].conj()) * kij);
    }
}

TEST_CASE("matrix Pick matrix is the block form") {
  const auto s = spec_z2_z3();
  const auto km = matrix_submodule_kernel(s, sample_qs(s, 2, 1, 3));
  const std::vector<Point> nodes{{0.2}, {Complex(0.1, -0.5)}};
  std::vector<Eigen::MatrixXcd> w(2, Eigen::MatrixXcd::Zero(2, 2));
  w[0](0, 1) = 0.5;
  w[1](1, 0) = Complex(0, 0.3);
  const auto p = pick_matrix(km, nodes, w);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      const Eigen::MatrixXcd kij = km.evaluate(nodes[static_cast<std::size_t>(i)], nodes[static_cast<std::size_t>(j)]);
      const Eigen::MatrixXcd block = kij - w[static_cast<std::size_t>(i)] * kij * w[static_cast<std::size_t>(j)].adjoint();
      CHECK((p.block(2 * i, 2 * j, 2, 2) - block).norm() < 1e-14);
    }
}

TEST_CASE("family construction") {
  SweepOptions o;
  o.samples = 50;
  const auto cls = build_family(spec_classical(), o);
  REQUIRE(cls.size() == 1);
  CHECK(cls[0].kind == FamilyMember::Kind::Classical);

  const auto fam = build_family(spec_z2_z5(), o);
  CHECK(fam.size() == 50);
  for (const auto& m : fam) {
    CHECK(m.kind == FamilyMember::Kind::Unit);
    CHECK(m.parameters.size() == 2);
  }
  o.boundary = true;
  const auto withb = build_family(spec_z2_z5(), o);
  std::size_t boundary = 0;
  for (const auto& m : withb) boundary += m.kind == FamilyMember::Kind::Boundary;
  CHECK(boundary == 5);

  const auto mat = build_family(spec_z2_z3(), o, 2);
  for (const auto& m : mat) {
    CHECK(m.kind == FamilyMember::Kind::Qs);
    CHECK(m.kernel.block_size() == 2);
    CHECK((m.rank == 1 || m.rank == 2));
  }
  // Orbit-equivalent parameters give identical kernels.
  const auto again = build_family(spec_z2_z5(), o);
  REQUIRE(again.size() == withb.size());
  for (std::size_t i = 0; i < again.size(); ++i) CHECK(again[i].parameters == withb[i].parameters);
}

TEST_CASE("kernel depends only on the orbit") {
  for (const auto& spec : {spec_z2_z5(), spec_two_roots()})
    for (std::uint64_t t = 0; t < 10; ++t) {
      Rng rng(mix_seed(50, t));
      const JetElement u = random_element(spec.ring(), rng);
      const JetElement a = random_subalgebra_unit(spec, rng);
      const auto k1 = submodule_kernel(spec, u);
      const auto k2 = submodule_kernel(spec, u * a);
      const std::vector<ExactPoint> nodes{{quantize(rng.in_disc(0.6), 5)}, {quantize(rng.in_disc(0.6), 5)}};
      const std::vector<GaussRational> targets{quantize(rng.in_disc(0.5), 5), quantize(rng.in_disc(0.5), 5)};
      CHECK(pick_matrix_exact(k1, nodes, targets) == pick_matrix_exact(k2, nodes, targets));
    }
}

TEST_CASE("sweep verdicts on two-node problems") {
  SUBCASE("classical spec decides by a single Pick matrix") {
    const auto v = sweep(make_problem(spec_classical(), {0.0, 0.5}, {0.0, 0.4}));
    CHECK(v.status == Status::FeasibleCandidate);
    CHECK(v.samples == 1);
    const auto w = sweep(make_problem(spec_classical(), {0.0, 0.5}, {0.0, 0.6}));
    CHECK(w.status == Status::Infeasible);
  }
  SUBCASE("A = C[z^2, z^3]") {
    const auto bad = sweep(make_problem(spec_z2_z3(), {0.0, 0.5}, {0.0, 0.3}));
    CHECK(bad.status == Status::Infeasible);
    REQUIRE(bad.witness.has_value());
    CHECK(bad.witness->margin() < -10 * 1e-9);
    const auto good = sweep(make_problem(spec_z2_z3(), {0.0, 0.5}, {0.0, 0.2}));
    CHECK(good.status != Status::Infeasible);
    CHECK(good.samples == 120);
    CHECK(good.records.size() == 120);
  }
  SUBCASE("attainable data is never infeasible") {
    for (const auto& spec : {spec_z2_z5(), spec_z2_z3(), spec_two_roots()})
      for (std::uint64_t t = 0; t < 5; ++t) {
        const std::vector<Complex> nodes{0.1, Complex(-0.3, 0.2), Complex(0.4, 0.4)};
        const auto f = sample_attainable(spec, nodes, mix_seed(51, t));
        CHECK(sweep(make_problem(spec, nodes, f, 60)).status != Status::Infeasible);
      }
  }
}

TEST_CASE("monotonicity under restriction") {
  for (std::uint64_t t = 0; t < 10; ++t) {
    Rng rng(mix_seed(52, t));
    std::vector<Complex> nodes, targets;
    for (int i = 0; i < 3; ++i) {
      nodes.push_back(rng.in_disc(0.8));
      targets.push_back(rng.in_disc(0.9));
    }
    const auto big = sweep(make_problem(spec_z2_z3(), nodes, targets, 60));
    nodes.pop_back();
    targets.pop_back();
    const auto small = sweep(make_problem(spec_z2_z3(), nodes, targets, 60));
    if (small.status == Status::Infeasible) CHECK(big.status == Status::Infeasible);
  }
}

TEST_CASE("1 x 1 matrix pipeline agrees with the scalar one") {
  const auto spec = spec_z2_z5();
  SweepOptions o;
  o.samples = 40;
  const auto scalar_family = build_family(spec, o);
  std::vector<FamilyMember> matrix_family;
  for (const auto& m : scalar_family) {
    const JetElement u = canonical_representative(spec, m.parameters);
    matrix_family.push_back(
        FamilyMember{FamilyMember::Kind::Qs, m.parameters, 1, matrix_submodule_kernel(spec, JetMatrix(1, 1, u))});
  }
  for (std::uint64_t t = 0; t < 5; ++t) {
    Rng rng(mix_seed(53, t));
    PickProblem p = make_problem(spec, {rng.in_disc(0.7), rng.in_disc(0.7)}, {rng.in_disc(0.8), rng.in_disc(0.8)});
    PickProblem pm = p;
    for (auto w : p.targets) pm.matrix_targets.push_back(Eigen::MatrixXcd::Constant(1, 1, w));
    pm.targets.clear();
    const auto v1 = sweep(p, scalar_family);
    const auto v2 = sweep(pm, matrix_family);
    CHECK(v1.status == v2.status);
    REQUIRE(v1.records.size() == v2.records.size());
    for (std::size_t i = 0; i < v1.records.size(); ++i)
      CHECK(std::abs(v1.records[i].lambda_min - v2.records[i].lambda_min) < 1e-12);
  }
}

TEST_CASE("matrix sweep on attainable data") {
  const auto spec = spec_z2_z3();
  const std::vector<Complex> nodes{0.2, Complex(-0.4, 0.1)};
  PickProblem p;
  p.spec = spec;
  for (auto z : nodes) p.nodes.push_back({z});
  p.matrix_targets = sample_attainable_matrix(spec, nodes, 2, 8);
  p.options.samples = 40;
  CHECK(p.block_size() == 2);
  CHECK(sweep(p).status != Status::Infeasible);
}

TEST_CASE("sweep is deterministic across thread counts") {
  const auto p = make_problem(spec_z2_z5(), {0.1, Complex(0.2, -0.5), -0.6}, {0.3, 0.1, Complex(0, 0.2)}, 80);
  Verdict a, b;
  {
    ThreadsGuard g("1");
    CHECK(sweep_threads() == 1);
    a = sweep(p);
  }
  {
    ThreadsGuard g("3");
    CHECK(sweep_threads() == 3);
    b = sweep(p);
  }
  CHECK(a.status == b.status);
  REQUIRE(a.records.size() == b.records.size());
  for (std::size_t i = 0; i < a.records.size(); ++i) {
    CHECK(a.records[i].lambda_min == b.records[i].lambda_min);
    CHECK(a.records[i].parameters == b.records[i].parameters);
  }
  CHECK(a.histogram_counts == b.histogram_counts);
}

TEST_CASE("sweep input validation") {
  CHECK_THROWS_AS(sweep(make_problem(spec_two_roots(), {0.0, 0.5}, {0.1, 0.2})), SeparationFailure);
  CHECK_THROWS_AS(sweep(make_problem(spec_z2_z3(), {0.0, 0.5}, {0.1})), InvalidShape);
  CHECK_THROWS_AS(sweep(make_problem(spec_z2_z3(), {0.0, 0.5}, {0.1, 1.5})), InvalidArgument);
  CHECK_THROWS_AS(sweep(make_problem(spec_z2_z3(), {0.0, 1.2}, {0.1, 0.2})), PointOutsideBall);
}
