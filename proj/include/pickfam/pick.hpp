#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "pickfam/daspace.hpp"
#include "pickfam/quotient.hpp"

namespace pickfam {

struct SweepOptions {
  std::size_t samples = 500;
  double radius = 4.0;
  std::uint64_t seed = 0;
  double tol = 1e-9;
  /// Adds samples / 10 compactified members built from non-unit generators.
  bool boundary = false;
  int truncation = kDefaultTruncation;
};

struct PickProblem {
  SubalgebraSpec spec = SubalgebraSpec::semigroup(NumericalSemigroup({1}));
  std::vector<Point> nodes;
  /// Exactly one of the two target lists is non-empty.
  std::vector<Complex> targets;
  std::vector<Eigen::MatrixXcd> matrix_targets;
  SweepOptions options;

  bool is_matrix() const { return !matrix_targets.empty(); }
  std::size_t block_size() const;
};

/// One kernel of the sampled family together with its parameter.
struct FamilyMember {
  enum class Kind { Classical, Unit, Boundary, Qs };
  Kind kind = Kind::Unit;
  /// Picard coordinates (Unit), flattened generator jets (Boundary) or
  /// flattened s x k parameter jets (Qs).
  std::vector<GaussRational> parameters;
  std::size_t rank = 1;
  KernelModel kernel;
};
const char* to_string(FamilyMember::Kind k);

/// Samples the family for `spec` with block size k (k = 1: scalar family).
/// Depends only on (spec, options, k), so it can be reused across problems.
std::vector<FamilyMember> build_family(const SubalgebraSpec& spec, const SweepOptions& options, std::size_t k = 1);

/// Distinct value tuples of the algebra generators on the nodes.
/// Throws InvalidArgument for repeated nodes.
bool separates(const SubalgebraSpec& spec, const std::vector<Point>& nodes);

/// [K(z_i, z_j)] as an (n k) x (n k) block matrix.
Eigen::MatrixXcd kernel_gram(const KernelModel& k, const std::vector<Point>& nodes);

/// Scalar Pick matrix [(1 - w_i conj(w_j)) K(z_i, z_j)], symmetrized.
Eigen::MatrixXcd pick_matrix(const KernelModel& k, const std::vector<Point>& nodes, const std::vector<Complex>& targets);
/// Block Pick matrix [K_ij - W_i K_ij W_j^*], symmetrized.
Eigen::MatrixXcd pick_matrix(const KernelModel& k, const std::vector<Point>& nodes,
                             const std::vector<Eigen::MatrixXcd>& targets);
/// Exact scalar Pick matrix at Gaussian-rational nodes and targets.
ExactMatrix pick_matrix_exact(const KernelModel& k, const std::vector<ExactPoint>& nodes,
                              const std::vector<GaussRational>& targets);

struct PsdResult {
  bool psd = false;
  double lambda_min = 0.0;
  double trace = 0.0;
};

/// PSD iff lambda_min >= -tol * max(trace, 1). Throws NumericalFailure on
/// non-finite entries.
PsdResult is_psd(const Eigen::MatrixXcd& h, double tol = 1e-9);

enum class Status { Infeasible, FeasibleCandidate, Undetermined };
const char* to_string(Status s);

struct SampleRecord {
  std::size_t index = 0;
  FamilyMember::Kind kind = FamilyMember::Kind::Unit;
  std::size_t rank = 1;
  std::vector<GaussRational> parameters;
  double lambda_min = 0.0;
  double trace = 0.0;
  /// lambda_min / max(trace, 1).
  double margin() const;
};

struct OracleRecord {
  double value = 0.0;
  double continuous_bound = 0.0;
  int degree = 0;
  int grid = 0;
  bool feasible = false;
};

struct Verdict {
  Status status = Status::Undetermined;
  std::optional<SampleRecord> witness;
  std::size_t samples = 0;
  double lambda_min = 0.0;
  double lambda_max = 0.0;
  double lambda_mean = 0.0;
  /// Counts of sample margins over `histogram_edges` (bins - 1 intervals).
  std::vector<double> histogram_edges;
  std::vector<std::size_t> histogram_counts;
  std::vector<SampleRecord> records;
  std::optional<OracleRecord> oracle;
};

/// Validates the problem, samples the family and tests every Pick matrix.
Verdict sweep(const PickProblem& problem);
/// Same, with a precomputed family (must match the problem's block size).
Verdict sweep(const PickProblem& problem, const std::vector<FamilyMember>& family);

/// Worker count for sweeps: PICKFAM_THREADS if set, else hardware threads.
std::size_t sweep_threads();

}  // namespace pickfam
