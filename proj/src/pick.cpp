#include "pickfam/pick.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <limits>
#include <mutex>
#include <thread>

#include "pickfam/errors.hpp"
#include "pickfam/random.hpp"

namespace pickfam {

std::size_t PickProblem::block_size() const {
  return is_matrix() ? static_cast<std::size_t>(matrix_targets.front().rows()) : 1;
}

const char* to_string(FamilyMember::Kind k) {
  switch (k) {
    case FamilyMember::Kind::Classical:
      return "classical";
    case FamilyMember::Kind::Unit:
      return "unit";
    case FamilyMember::Kind::Boundary:
      return "boundary";
    case FamilyMember::Kind::Qs:
      return "qs";
  }
  return "?";
}

const char* to_string(Status s) {
  switch (s) {
    case Status::Infeasible:
      return "Infeasible";
    case Status::FeasibleCandidate:
      return "FeasibleCandidate";
    case Status::Undetermined:
      return "Undetermined";
  }
  return "?";
}

double SampleRecord::margin() const { return lambda_min / std::max(trace, 1.0); }

std::size_t sweep_threads() {
  if (const char* env = std::getenv("PICKFAM_THREADS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v >= 1) return static_cast<std::size_t>(v);
  }
  return std::max(1U, std::thread::hardware_concurrency());
}

// ------------------------------------------------------------------ family

namespace {

constexpr unsigned kQuantBits = 10;

std::vector<GaussRational> flatten(const JetMatrix& z) {
  std::vector<GaussRational> out;
  for (std::size_t r = 0; r < z.rows(); ++r)
    for (std::size_t c = 0; c < z.cols(); ++c) {
      auto f = z(r, c).flat();
      out.insert(out.end(), f.begin(), f.end());
    }
  return out;
}

// Grid values per Picard coordinate: 0, +-R/2, +-R, +-iR/2, +-iR.
std::vector<GaussRational> grid_values(double radius) {
  const Rational r = quantize(radius, kQuantBits);
  const Rational h = r / 2;
  return {GaussRational(0),        GaussRational(h),  GaussRational(-h),        GaussRational(r),
          GaussRational(-r),       GaussRational(0, h), GaussRational(0, -h), GaussRational(0, r),
          GaussRational(0, -r)};
}

void add_unit_samples(const SubalgebraSpec& spec, const SweepOptions& opt, std::vector<FamilyMember>& out) {
  const std::size_t dim = spec.picard_dimension();
  const auto values = grid_values(opt.radius);
  const std::size_t base = values.size();
  // Grid part: all of values^dim if it fits in half the budget, else an even stride through it.
  const std::size_t cap = opt.samples / 2;
  double full = std::pow(static_cast<double>(base), static_cast<double>(dim));
  const std::size_t grid_count = full <= static_cast<double>(cap) ? static_cast<std::size_t>(full) : cap;
  const double stride = grid_count > 0 ? full / static_cast<double>(grid_count) : 0.0;
  for (std::size_t g = 0; g < grid_count && out.size() < opt.samples; ++g) {
    auto idx = static_cast<unsigned long long>(std::floor(static_cast<double>(g) * stride));
    std::vector<GaussRational> coords(dim);
    for (std::size_t i = 0; i < dim; ++i) {
      coords[i] = values[idx % base];
      idx /= base;
    }
    JetElement u = canonical_representative(spec, coords);
    if (!u.is_unit()) continue;
    out.push_back({FamilyMember::Kind::Unit, coords, 1, submodule_kernel(spec, u, opt.truncation)});
  }
  Rng rng(mix_seed(opt.seed, 0x5eedULL));
  const std::size_t max_draws = 8 * opt.samples + 64;
  for (std::size_t draw = 0; draw < max_draws && out.size() < opt.samples; ++draw) {
    std::vector<GaussRational> coords(dim);
    for (auto& c : coords) c = quantize(rng.in_disc(opt.radius), kQuantBits);
    JetElement u = canonical_representative(spec, coords);
    if (!u.is_unit()) continue;
    out.push_back({FamilyMember::Kind::Unit, coords, 1, submodule_kernel(spec, u, opt.truncation)});
  }
}

// Non-unit generators whose cyclic module still has full dimension.
void add_boundary_samples(const SubalgebraSpec& spec, const SweepOptions& opt, std::size_t count,
                          std::vector<FamilyMember>& out) {
  const auto& ring = spec.ring();
  const auto sizes = ring.jet_sizes();
  Rng rng(mix_seed(opt.seed, 0xb0d7ULL));
  std::size_t added = 0;
  for (std::size_t draw = 0; draw < 16 * count + 16 && added < count; ++draw) {
    std::vector<GaussRational> flat(ring.dimension());
    for (auto& x : flat) x = rng.small_gauss(4, rng.integer(1, 4));
    // Kill the order-zero jet at one or more support points.
    std::size_t offset = 0;
    bool killed = false;
    for (std::size_t p = 0; p < sizes.size(); ++p) {
      if (p == 0 || rng.integer(0, 1) == 1) {
        flat[offset] = 0;
        killed = true;
      }
      offset += sizes[p];
    }
    if (!killed) continue;
    JetElement v = ring.from_flat(flat);
    if (v.is_zero()) continue;
    try {
      out.push_back({FamilyMember::Kind::Boundary, flat, 1, cyclic_kernel(spec, v, opt.truncation)});
      ++added;
    } catch (const InvalidArgument&) {
      // module not full-dimensional; draw again
    }
  }
}

}  // namespace

std::vector<FamilyMember> build_family(const SubalgebraSpec& spec, const SweepOptions& opt, std::size_t k) {
  if (k < 1) throw InvalidShape("block size must be positive");
  std::vector<FamilyMember> out;
  if (k == 1) {
    if (spec.is_classical() || spec.picard_dimension() == 0) {
      const auto kind = spec.is_classical() ? FamilyMember::Kind::Classical : FamilyMember::Kind::Unit;
      out.push_back({kind, {}, 1, submodule_kernel(spec, spec.ring().one(), opt.truncation)});
    } else {
      add_unit_samples(spec, opt, out);
    }
    if (opt.boundary && !spec.is_classical())
      add_boundary_samples(spec, opt, std::max<std::size_t>(1, opt.samples / 10), out);
    return out;
  }
  if (spec.vars() != 1) throw InvalidArgument("matrix families are supported for one-variable specs only");
  if (spec.is_classical()) {
    for (std::size_t s = 1; s <= k; ++s) {
      JetMatrix z(s, k, spec.ring().zero());
      out.push_back({FamilyMember::Kind::Qs, {}, s, matrix_submodule_kernel(spec, z, opt.truncation)});
    }
    return out;
  }
  const std::size_t per_rank = std::max<std::size_t>(1, opt.samples / k);
  for (std::size_t s = 1; s <= k; ++s)
    for (std::size_t i = 0; i < per_rank; ++i) {
      const JetMatrix z = sample_qs(spec, k, s, mix_seed(opt.seed, (s << 32U) + i));
      out.push_back({FamilyMember::Kind::Qs, flatten(z), s, matrix_submodule_kernel(spec, z, opt.truncation)});
    }
  return out;
}

// ---------------------------------------------------------------- matrices

bool separates(const SubalgebraSpec& spec, const std::vector<Point>& nodes) {
  const std::size_t n = nodes.size();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      double dist = 0;
      for (std::size_t c = 0; c < nodes[i].size(); ++c) dist += std::norm(nodes[i][c] - nodes[j][c]);
      if (dist < 1e-28) throw InvalidArgument("interpolation nodes must be distinct");
    }
  std::vector<std::vector<Complex>> values(n);
  for (std::size_t i = 0; i < n; ++i)
    for (const auto& g : spec.algebra_generators()) values[i].push_back(g(nodes[i]));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      bool differ = false;
      for (std::size_t g = 0; g < values[i].size() && !differ; ++g) {
        const double scale = 1.0 + std::abs(values[i][g]) + std::abs(values[j][g]);
        differ = std::abs(values[i][g] - values[j][g]) > 1e-12 * scale;
      }
      if (!differ) return false;
    }
  return true;
}

Eigen::MatrixXcd kernel_gram(const KernelModel& k, const std::vector<Point>& nodes) {
  const auto n = static_cast<Eigen::Index>(nodes.size());
  const auto b = static_cast<Eigen::Index>(k.block_size());
  const auto nb = static_cast<Eigen::Index>(k.finite_basis().size());
  for (const auto& z : nodes) {
    if (static_cast<int>(z.size()) != k.vars()) throw InvalidShape("node dimension does not match the kernel");
    if (!in_unit_ball(z)) throw PointOutsideBall();
  }
  Eigen::MatrixXcd g = Eigen::MatrixXcd::Zero(n * b, n * b);
  if (nb > 0)
    for (std::size_t c = 0; c < k.value_rank(); ++c) {
      Eigen::MatrixXcd a(n * b, nb);
      for (Eigen::Index i = 0; i < n; ++i)
        a.middleRows(i * b, b) = k.basis_column_values(nodes[static_cast<std::size_t>(i)], c);
      g += a * k.gram_inverse_numeric() * a.adjoint();
    }
  const double s = static_cast<double>(k.value_rank());
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) {
      const Complex t = s * k.tail_value(nodes[static_cast<std::size_t>(i)], nodes[static_cast<std::size_t>(j)]);
      for (Eigen::Index d = 0; d < b; ++d) g(i * b + d, j * b + d) += t;
    }
  return g;
}

namespace {

Eigen::MatrixXcd symmetrize(const Eigen::MatrixXcd& m) { return 0.5 * (m + m.adjoint()); }

}  // namespace

Eigen::MatrixXcd pick_matrix(const KernelModel& k, const std::vector<Point>& nodes,
                             const std::vector<Complex>& targets) {
  if (k.block_size() != 1) throw InvalidShape("scalar targets need a scalar kernel");
  if (nodes.size() != targets.size()) throw InvalidShape("node and target counts differ");
  Eigen::MatrixXcd g = kernel_gram(k, nodes);
  const auto n = g.rows();
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j)
      g(i, j) *= 1.0 - targets[static_cast<std::size_t>(i)] * std::conj(targets[static_cast<std::size_t>(j)]);
  return symmetrize(g);
}

Eigen::MatrixXcd pick_matrix(const KernelModel& k, const std::vector<Point>& nodes,
                             const std::vector<Eigen::MatrixXcd>& targets) {
  if (nodes.size() != targets.size()) throw InvalidShape("node and target counts differ");
  const auto b = static_cast<Eigen::Index>(k.block_size());
  for (const auto& w : targets)
    if (w.rows() != b || w.cols() != b) throw InvalidShape("matrix targets must match the kernel block size");
  Eigen::MatrixXcd g = kernel_gram(k, nodes);
  const auto n = static_cast<Eigen::Index>(nodes.size());
  Eigen::MatrixXcd p = g;
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j)
      p.block(i * b, j * b, b, b) -= targets[static_cast<std::size_t>(i)] * g.block(i * b, j * b, b, b) *
                                     targets[static_cast<std::size_t>(j)].adjoint();
  return symmetrize(p);
}

ExactMatrix pick_matrix_exact(const KernelModel& k, const std::vector<ExactPoint>& nodes,
                              const std::vector<GaussRational>& targets) {
  if (k.block_size() != 1) throw InvalidShape("scalar targets need a scalar kernel");
  if (nodes.size() != targets.size()) throw InvalidShape("node and target counts differ");
  const std::size_t n = nodes.size();
  ExactMatrix p(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      p(i, j) = (GaussRational(1) - targets[i] * targets[j].conj()) * k.evaluate_exact(nodes[i], nodes[j])(0, 0);
  return p;
}

PsdResult is_psd(const Eigen::MatrixXcd& h, double tol) {
  if (h.rows() != h.cols()) throw InvalidShape("PSD test needs a square matrix");
  if (!h.allFinite()) throw NumericalFailure("matrix has non-finite entries");
  PsdResult r;
  if (h.rows() == 0) {
    r.psd = true;
    return r;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) throw NumericalFailure("eigenvalue decomposition failed");
  r.lambda_min = es.eigenvalues().minCoeff();
  r.trace = h.diagonal().real().sum();
  r.psd = r.lambda_min >= -tol * std::max(r.trace, 1.0);
  return r;
}

// ------------------------------------------------------------------- sweep

namespace {

void validate(const PickProblem& p) {
  if (p.nodes.empty()) throw InvalidArgument("at least one interpolation node is required");
  if (!p.targets.empty() && !p.matrix_targets.empty())
    throw InvalidArgument("give either scalar or matrix targets, not both");
  const std::size_t count = p.is_matrix() ? p.matrix_targets.size() : p.targets.size();
  if (count != p.nodes.size()) throw InvalidShape("node and target counts differ");
  for (const auto& z : p.nodes) {
    if (static_cast<int>(z.size()) != p.spec.vars()) throw InvalidShape("node dimension does not match the number of variables");
    if (!in_unit_ball(z)) throw PointOutsideBall();
  }
  if (p.is_matrix()) {
    const auto b = p.matrix_targets.front().rows();
    for (const auto& w : p.matrix_targets) {
      if (w.rows() != b || w.cols() != b) throw InvalidShape("matrix targets must be square of equal size");
      if (!w.allFinite()) throw InvalidArgument("matrix target has non-finite entries");
      Eigen::JacobiSVD<Eigen::MatrixXcd> svd(w);
      if (svd.singularValues()(0) > 1.0 + 1e-12) throw InvalidArgument("matrix target is not contractive");
    }
  } else {
    for (const auto& w : p.targets)
      if (!std::isfinite(std::abs(w)) || std::abs(w) > 1.0 + 1e-12)
        throw InvalidArgument("target is not contractive");
  }
  if (p.options.tol <= 0) throw InvalidArgument("PSD tolerance must be positive");
  if (!separates(p.spec, p.nodes)) throw SeparationFailure();
}

}  // namespace

Verdict sweep(const PickProblem& problem) {
  validate(problem);
  return sweep(problem, build_family(problem.spec, problem.options, problem.block_size()));
}

Verdict sweep(const PickProblem& problem, const std::vector<FamilyMember>& family) {
  validate(problem);
  const std::size_t k = problem.block_size();
  const std::size_t m = family.size();
  for (const auto& f : family)
    if (f.kernel.block_size() != k) throw InvalidShape("family block size does not match the targets");

  std::vector<PsdResult> results(m);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < m; i = next++) {
      const auto& ker = family[i].kernel;
      const Eigen::MatrixXcd p = problem.is_matrix() ? pick_matrix(ker, problem.nodes, problem.matrix_targets)
                                                     : pick_matrix(ker, problem.nodes, problem.targets);
      results[i] = is_psd(p, problem.options.tol);
    }
  };
  const std::size_t threads = std::min(sweep_threads(), std::max<std::size_t>(m, 1));
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    std::exception_ptr failure;
    std::mutex failure_mutex;
    for (std::size_t t = 0; t < threads; ++t)
      pool.emplace_back([&] {
        try {
          worker();
        } catch (...) {
          std::lock_guard<std::mutex> lock(failure_mutex);
          if (!failure) failure = std::current_exception();
          next = m;
        }
      });
    for (auto& th : pool) th.join();
    if (failure) std::rethrow_exception(failure);
  }

  // Deterministic fold in sample order.
  Verdict v;
  v.samples = m;
  bool all_psd = true;
  double sum = 0;
  v.lambda_min = std::numeric_limits<double>::infinity();
  v.lambda_max = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < m; ++i) {
    SampleRecord rec{i, family[i].kind, family[i].rank, family[i].parameters, results[i].lambda_min,
                     results[i].trace};
    v.lambda_min = std::min(v.lambda_min, rec.lambda_min);
    v.lambda_max = std::max(v.lambda_max, rec.lambda_min);
    sum += rec.lambda_min;
    all_psd = all_psd && results[i].psd;
    if (!v.witness && rec.margin() < -10.0 * problem.options.tol) v.witness = rec;
    v.records.push_back(std::move(rec));
  }
  if (m == 0) {
    v.lambda_min = v.lambda_max = 0;
  } else {
    v.lambda_mean = sum / static_cast<double>(m);
  }
  v.status = v.witness ? Status::Infeasible : (all_psd ? Status::FeasibleCandidate : Status::Undetermined);

  // Histogram of margins over ten equal bins.
  if (m > 0) {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (const auto& r : v.records) {
      lo = std::min(lo, r.margin());
      hi = std::max(hi, r.margin());
    }
    constexpr std::size_t kBins = 10;
    if (hi <= lo) hi = lo + 1e-300;
    for (std::size_t b = 0; b <= kBins; ++b) v.histogram_edges.push_back(lo + (hi - lo) * b / kBins);
    v.histogram_counts.assign(kBins, 0);
    for (const auto& r : v.records) {
      auto b = static_cast<std::size_t>((r.margin() - lo) / (hi - lo) * kBins);
      ++v.histogram_counts[std::min(b, kBins - 1)];
    }
  }
  return v;
}

}  // namespace pickfam
