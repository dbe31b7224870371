#include "pickfam/oracle.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "pickfam/errors.hpp"
#include "pickfam/random.hpp"

namespace pickfam {

Complex evaluate_polynomial(const std::vector<Complex>& coeffs, Complex z) {
  Complex v = 0;
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) v = v * z + *it;
  return v;
}

double grid_sup(const std::vector<Complex>& coeffs, int grid) {
  double sup = 0;
  for (int m = 0; m < grid; ++m) {
    const Complex z = std::polar(1.0, 2.0 * std::numbers::pi * m / grid);
    sup = std::max(sup, std::abs(evaluate_polynomial(coeffs, z)));
  }
  return sup;
}

Eigen::MatrixXcd membership_constraints(const SubalgebraSpec& spec, int degree) {
  if (spec.vars() != 1) throw InvalidArgument("the minimax oracle handles one-variable specs only");
  if (degree < 0) throw InvalidArgument("degree must be nonnegative");
  const ExactMatrix& ann = spec.annihilator();
  const auto rows = static_cast<Eigen::Index>(ann.rows());
  Eigen::MatrixXcd c = Eigen::MatrixXcd::Zero(rows, degree + 1);
  if (rows == 0) return c;
  for (int n = 0; n <= degree; ++n) {
    const auto jets = spec.ring().reduce(MultiPoly::monomial({n})).flat();
    for (std::size_t r = 0; r < ann.rows(); ++r) {
      GaussRational v;
      for (std::size_t j = 0; j < jets.size(); ++j) v += ann(r, j) * jets[j];
      c(static_cast<Eigen::Index>(r), n) = v.to_complex();
    }
  }
  return c;
}

MinimaxInstance make_instance(const SubalgebraSpec& spec, std::vector<Complex> nodes, std::vector<Complex> targets,
                              int degree, int grid, double delta) {
  if (nodes.size() != targets.size()) throw InvalidShape("node and target counts differ");
  MinimaxInstance inst;
  inst.constraints = membership_constraints(spec, degree);
  inst.nodes = std::move(nodes);
  inst.targets = std::move(targets);
  inst.degree = degree;
  inst.grid = grid;
  inst.delta = delta;
  return inst;
}

namespace {

struct AffineSpace {
  Eigen::VectorXcd particular;
  Eigen::MatrixXcd null;  // orthonormal columns
};

// Solutions of e c = rhs as particular + null * x.
AffineSpace solve_affine(const Eigen::MatrixXcd& e, const Eigen::VectorXcd& rhs, Eigen::Index unknowns) {
  AffineSpace a;
  if (e.rows() == 0) {
    a.particular = Eigen::VectorXcd::Zero(unknowns);
    a.null = Eigen::MatrixXcd::Identity(unknowns, unknowns);
    return a;
  }
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(e, Eigen::ComputeThinU | Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  const double cutoff = 1e-11 * std::max(1.0, sv.size() > 0 ? sv(0) : 0.0);
  Eigen::Index rank = 0;
  while (rank < sv.size() && sv(rank) > cutoff) ++rank;
  Eigen::VectorXcd proj = svd.matrixU().leftCols(rank).adjoint() * rhs;
  for (Eigen::Index i = 0; i < rank; ++i) proj(i) /= sv(i);
  a.particular = svd.matrixV().leftCols(rank) * proj;
  a.null = svd.matrixV().rightCols(unknowns - rank);
  const double resid = (e * a.particular - rhs).norm();
  if (resid > 1e-9 * (1.0 + rhs.norm()))
    throw InfeasibleConstraints("interpolation and membership conditions are inconsistent at this degree");
  return a;
}

Eigen::MatrixXcd circle_matrix(int grid, int degree) {
  Eigen::MatrixXcd a(grid, degree + 1);
  for (int m = 0; m < grid; ++m) {
    const double theta = 2.0 * std::numbers::pi * m / grid;
    for (int n = 0; n <= degree; ++n) a(m, n) = std::polar(1.0, theta * n);
  }
  return a;
}

std::vector<Complex> to_vector(const Eigen::VectorXcd& v) { return {v.data(), v.data() + v.size()}; }

Complex normal_complex(Rng& rng) {
  // Box-Muller, written out for portability of the stream.
  const double u1 = 1.0 - rng.uniform();
  const double u2 = rng.uniform();
  return std::polar(std::sqrt(-std::log(u1)), 2.0 * std::numbers::pi * u2);
}

// For any probability weights w, min_x sum w |a + b x|^2 <= (min_x max |a + b x|)^2.
double weighted_lower_bound(const Eigen::VectorXcd& a, const Eigen::MatrixXcd& b, const Eigen::VectorXd& w) {
  const Eigen::MatrixXcd bw = w.asDiagonal() * b;
  const Eigen::VectorXcd x = (b.adjoint() * bw).ldlt().solve(-(bw.adjoint() * a));
  const Eigen::VectorXd r = (a + b * x).cwiseAbs2();
  return std::sqrt(std::max(0.0, w.dot(r)));
}

struct ChebyshevSolution {
  Eigen::VectorXcd x;
  double value = 0.0;
  double lower = 0.0;
  int iterations = 0;
  bool converged = false;
};

// min_x max_k |a_k + (b x)_k| by damped Newton on the log barrier
//   s t - sum_k log(t^2 - |a_k + (b x)_k|^2),
// raising s after each centering. Every Newton system is a reweighted least
// squares problem; at a central point the weights 1/(t^2 - |r_k|^2) certify a
// lower bound through weighted_lower_bound.
ChebyshevSolution solve_chebyshev(const Eigen::VectorXcd& a, const Eigen::MatrixXcd& b, double delta,
                                  int max_iterations) {
  const Eigen::Index m = a.size(), n = b.cols(), dim = 2 * n + 1;
  Eigen::MatrixXd g(2 * m, 2 * n);
  Eigen::VectorXd alpha(2 * m);
  for (Eigen::Index k = 0; k < m; ++k) {
    alpha(2 * k) = a(k).real();
    alpha(2 * k + 1) = a(k).imag();
    for (Eigen::Index j = 0; j < n; ++j) {
      g(2 * k, j) = b(k, j).real();
      g(2 * k, n + j) = -b(k, j).imag();
      g(2 * k + 1, j) = b(k, j).imag();
      g(2 * k + 1, n + j) = b(k, j).real();
    }
  }
  auto to_complex_x = [n](const Eigen::VectorXd& y) {
    Eigen::VectorXcd x(n);
    for (Eigen::Index j = 0; j < n; ++j) x(j) = Complex(y(j), y(n + j));
    return x;
  };
  auto moduli2 = [m](const Eigen::VectorXd& r) {
    Eigen::VectorXd q(m);
    for (Eigen::Index k = 0; k < m; ++k) q(k) = r(2 * k) * r(2 * k) + r(2 * k + 1) * r(2 * k + 1);
    return q;
  };

  ChebyshevSolution sol;
  const Eigen::VectorXd uniform = Eigen::VectorXd::Constant(m, 1.0 / static_cast<double>(m));
  sol.lower = weighted_lower_bound(a, b, uniform);
  Eigen::VectorXd y(2 * n);
  {
    const Eigen::VectorXcd x0 = (b.adjoint() * b).ldlt().solve(-(b.adjoint() * a));
    for (Eigen::Index j = 0; j < n; ++j) {
      y(j) = x0(j).real();
      y(n + j) = x0(j).imag();
    }
  }
  Eigen::VectorXd r = alpha + g * y;
  double t = std::sqrt(moduli2(r).maxCoeff());
  sol.x = to_complex_x(y);
  sol.value = t;
  if (sol.value - sol.lower <= delta) {
    sol.converged = true;
    return sol;
  }
  t = 1.05 * t + 1e-3;
  double s = static_cast<double>(m) / t;

  auto barrier = [&](const Eigen::VectorXd& yy, double tt, double& out) {
    const Eigen::VectorXd u = Eigen::VectorXd::Constant(m, tt * tt) - moduli2(alpha + g * yy);
    if (!(tt > 0) || u.minCoeff() <= 0) return false;
    out = s * tt - u.array().log().sum();
    return true;
  };

  while (sol.iterations < max_iterations) {
    ++sol.iterations;
    r = alpha + g * y;
    const Eigen::VectorXd u = Eigen::VectorXd::Constant(m, t * t) - moduli2(r);
    const Eigen::VectorXd inv = u.cwiseInverse();
    // v_k = G_k^T R_k, stored as rows.
    Eigen::MatrixXd v(m, 2 * n);
    Eigen::VectorXd d2(2 * m);
    for (Eigen::Index k = 0; k < m; ++k) {
      v.row(k) = r(2 * k) * g.row(2 * k) + r(2 * k + 1) * g.row(2 * k + 1);
      d2(2 * k) = d2(2 * k + 1) = 2.0 * inv(k);
    }
    Eigen::VectorXd grad(dim);
    grad.head(2 * n) = 2.0 * v.transpose() * inv;
    grad(2 * n) = s - 2.0 * t * inv.sum();
    Eigen::MatrixXd h(dim, dim);
    const Eigen::VectorXd inv2 = inv.cwiseProduct(inv);
    h.topLeftCorner(2 * n, 2 * n) = g.transpose() * d2.asDiagonal() * g + 4.0 * v.transpose() * inv2.asDiagonal() * v;
    h.block(0, 2 * n, 2 * n, 1) = -4.0 * t * v.transpose() * inv2;
    h.block(2 * n, 0, 1, 2 * n) = h.block(0, 2 * n, 2 * n, 1).transpose();
    h(2 * n, 2 * n) = -2.0 * inv.sum() + 4.0 * t * t * inv2.sum();
    const Eigen::VectorXd dir = h.ldlt().solve(-grad);
    const double decrement = -grad.dot(dir);

    double f0 = 0;
    barrier(y, t, f0);
    double step = 1.0, f1 = 0;
    while (step > 1e-12) {
      const Eigen::VectorXd yn = y + step * dir.head(2 * n);
      const double tn = t + step * dir(2 * n);
      if (barrier(yn, tn, f1) && f1 <= f0 - 0.25 * step * decrement) {
        y = yn;
        t = tn;
        break;
      }
      step *= 0.5;
    }
    const double value = std::sqrt(moduli2(alpha + g * y).maxCoeff());
    if (value < sol.value) {
      sol.value = value;
      sol.x = to_complex_x(y);
    }
    if (decrement > 1e-8 && step > 1e-12) continue;
    // Centered: certify, then tighten.
    const Eigen::VectorXd uc = Eigen::VectorXd::Constant(m, t * t) - moduli2(alpha + g * y);
    Eigen::VectorXd w = uc.cwiseInverse();
    w /= w.sum();
    sol.lower = std::max(sol.lower, weighted_lower_bound(a, b, w));
    if (sol.value - sol.lower <= delta) {
      sol.converged = true;
      break;
    }
    s *= 10.0;
  }
  return sol;
}

}  // namespace

MinimaxResult min_sup_norm(const MinimaxInstance& inst) {
  if (inst.nodes.size() != inst.targets.size()) throw InvalidShape("node and target counts differ");
  if (inst.degree < 0 || inst.grid < 8 * std::max(inst.degree, 1))
    throw InvalidArgument("grid size must be at least 8 times the degree");
  for (const auto& z : inst.nodes)
    if (!(std::abs(z) < 1.0)) throw PointOutsideBall();
  const Eigen::Index unknowns = inst.degree + 1;
  if (inst.constraints.rows() > 0 && inst.constraints.cols() != unknowns)
    throw InvalidShape("constraint functionals do not match the degree");

  const auto nc = inst.constraints.rows();
  const auto ni = static_cast<Eigen::Index>(inst.nodes.size());
  Eigen::MatrixXcd e(nc + ni, unknowns);
  Eigen::VectorXcd rhs = Eigen::VectorXcd::Zero(nc + ni);
  if (nc > 0) e.topRows(nc) = inst.constraints;
  for (Eigen::Index i = 0; i < ni; ++i) {
    Complex p = 1.0;
    for (Eigen::Index n = 0; n < unknowns; ++n, p *= inst.nodes[static_cast<std::size_t>(i)]) e(nc + i, n) = p;
    rhs(nc + i) = inst.targets[static_cast<std::size_t>(i)];
  }
  const AffineSpace space = solve_affine(e, rhs, unknowns);

  const Eigen::MatrixXcd circle = circle_matrix(inst.grid, inst.degree);
  const Eigen::VectorXcd a = circle * space.particular;
  const Eigen::MatrixXcd b = circle * space.null;

  MinimaxResult res;
  const double sampling = std::cos(std::numbers::pi * inst.degree / inst.grid);
  if (b.cols() == 0) {
    res.value = a.cwiseAbs().maxCoeff();
    res.lower_bound = res.value;
    res.witness = to_vector(space.particular);
    res.converged = true;
    res.continuous_bound = res.value / sampling;
    return res;
  }

  const ChebyshevSolution sol = solve_chebyshev(a, b, inst.delta, inst.max_iterations);
  res.value = sol.value;
  res.lower_bound = std::min(sol.lower, sol.value);
  res.iterations = sol.iterations;
  res.converged = sol.converged;
  res.witness = to_vector(space.particular + space.null * sol.x);
  res.continuous_bound = res.value / sampling;
  return res;
}

std::vector<Complex> sample_member(const SubalgebraSpec& spec, std::uint64_t seed, int degree) {
  const Eigen::MatrixXcd c = membership_constraints(spec, degree);
  const AffineSpace space = solve_affine(c, Eigen::VectorXcd::Zero(c.rows()), degree + 1);
  Rng rng(seed);
  Eigen::VectorXcd g(space.null.cols());
  for (Eigen::Index i = 0; i < g.size(); ++i) g(i) = normal_complex(rng);
  std::vector<Complex> coeffs = to_vector(space.null * g);
  // Certified sup bound from a fine grid.
  constexpr int kFine = 4096;
  const double sup = grid_sup(coeffs, kFine) / std::cos(std::numbers::pi * degree / kFine) * (1.0 + 1e-6);
  if (sup > 0)
    for (auto& x : coeffs) x /= sup;
  return coeffs;
}

std::vector<Complex> sample_attainable(const SubalgebraSpec& spec, const std::vector<Complex>& nodes,
                                       std::uint64_t seed, int degree) {
  const auto f = sample_member(spec, seed, degree);
  std::vector<Complex> out;
  for (const auto& z : nodes) out.push_back(evaluate_polynomial(f, z));
  return out;
}

std::vector<Eigen::MatrixXcd> sample_attainable_matrix(const SubalgebraSpec& spec, const std::vector<Complex>& nodes,
                                                       std::size_t k, std::uint64_t seed, int degree) {
  const auto kk = static_cast<Eigen::Index>(k);
  Rng rng(seed);
  auto unitary = [&] {
    Eigen::MatrixXcd g(kk, kk);
    for (Eigen::Index i = 0; i < kk; ++i)
      for (Eigen::Index j = 0; j < kk; ++j) g(i, j) = normal_complex(rng);
    return Eigen::MatrixXcd(g.householderQr().householderQ());
  };
  const Eigen::MatrixXcd u = unitary();
  const Eigen::MatrixXcd v = unitary();
  std::vector<std::vector<Complex>> members;
  for (std::size_t j = 0; j < k; ++j) members.push_back(sample_member(spec, mix_seed(seed, j + 1), degree));
  std::vector<Eigen::MatrixXcd> out;
  for (const auto& z : nodes) {
    Eigen::VectorXcd d(kk);
    for (Eigen::Index j = 0; j < kk; ++j) d(j) = evaluate_polynomial(members[static_cast<std::size_t>(j)], z);
    out.emplace_back(u * d.asDiagonal() * v);
  }
  return out;
}

std::optional<OracleRecord> oracle_cross_check(const PickProblem& problem) {
  if (problem.is_matrix() || problem.spec.vars() != 1) return std::nullopt;
  std::vector<Complex> nodes;
  for (const auto& z : problem.nodes) nodes.push_back(z[0]);
  const MinimaxInstance inst = make_instance(problem.spec, nodes, problem.targets);
  const auto res = min_sup_norm(inst);
  return OracleRecord{res.value, res.continuous_bound, inst.degree, inst.grid, res.value <= 1.0 + inst.delta};
}

}  // namespace pickfam
