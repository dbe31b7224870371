#include "pickfam/io.hpp"

#include <fstream>
#include <sstream>

#include "pickfam/errors.hpp"
#include "pickfam/semigroup.hpp"

namespace pickfam::io {

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw InvalidArgument(path + ": malformed JSON: " + e.what());
  }
}

namespace {

const json& require(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw InvalidArgument(std::string("missing field \"") + key + "\"");
  return j.at(key);
}

std::string rational_text(const Rational& q) { return pickfam::to_string(q); }

}  // namespace

Rational parse_rational(const json& j) {
  if (j.is_string()) return pickfam::parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return Rational(j.get<long>());
  if (j.is_number()) return pickfam::parse_rational(j.dump());
  throw InvalidArgument("expected a rational number, got " + j.dump());
}

GaussRational parse_gauss(const json& j) {
  if (j.is_array()) {
    if (j.size() != 2) throw InvalidArgument("complex values are [re, im] pairs, got " + j.dump());
    return {parse_rational(j[0]), parse_rational(j[1])};
  }
  return GaussRational(parse_rational(j));
}

json to_json(const GaussRational& z) { return json::array({rational_text(z.re()), rational_text(z.im())}); }
json to_json(Complex z) { return json::array({z.real(), z.imag()}); }

// -------------------------------------------------------------------- spec

SubalgebraSpec parse_spec(const json& j) {
  if (!j.is_object()) throw InvalidArgument("spec must be a JSON object");
  if (j.contains("spec")) return parse_spec(j.at("spec"));
  const std::string kind = j.value("kind", std::string("semigroup"));
  if (kind == "semigroup") {
    const json& g = require(j, "generators");
    if (!g.is_array() || g.empty()) throw InvalidArgument("generators must be a non-empty array");
    std::vector<int> gens;
    for (const auto& x : g) {
      if (!x.is_number_integer()) throw InvalidArgument("generators must be integers");
      gens.push_back(x.get<int>());
    }
    return SubalgebraSpec::semigroup(NumericalSemigroup(gens));
  }
  if (kind == "one_plus_ideal") {
    const json& rs = require(j, "roots");
    if (!rs.is_array() || rs.empty()) throw InvalidArgument("roots must be a non-empty array");
    std::vector<Root> roots;
    for (const auto& r : rs) {
      Root root;
      if (r.is_object()) {
        root.location = parse_gauss(require(r, "location"));
        root.multiplicity = r.value("multiplicity", 1);
      } else {
        root.location = parse_gauss(r);
      }
      roots.push_back(root);
    }
    return SubalgebraSpec::one_plus_ideal(roots);
  }
  if (kind == "two_var_example") return SubalgebraSpec::two_var_example();
  throw InvalidArgument("unknown spec kind \"" + kind + "\"");
}

json to_json(const SubalgebraSpec& spec) {
  switch (spec.kind()) {
    case SubalgebraSpec::Kind::Semigroup:
      return {{"kind", "semigroup"}, {"generators", spec.numerical_semigroup().generators()}};
    case SubalgebraSpec::Kind::OnePlusIdeal: {
      json roots = json::array();
      for (const auto& r : spec.roots()) roots.push_back({{"location", to_json(r.location)}, {"multiplicity", r.multiplicity}});
      return {{"kind", "one_plus_ideal"}, {"roots", roots}};
    }
    case SubalgebraSpec::Kind::TwoVarExample:
      return {{"kind", "two_var_example"}};
  }
  return {};
}

// -------------------------------------------------------------------- jets

JetElement parse_jet(const json& j, const QuotientRing& ring) {
  const json& arr = j.is_object() ? require(j, "jets") : j;
  if (!arr.is_array()) throw InvalidArgument("jets must be an array of per-point coefficient arrays");
  std::vector<std::vector<GaussRational>> jets;
  for (const auto& point : arr) {
    if (!point.is_array()) throw InvalidArgument("each support point needs a coefficient array");
    std::vector<GaussRational> c;
    for (const auto& x : point) c.push_back(parse_gauss(x));
    jets.push_back(std::move(c));
  }
  JetElement a(std::move(jets));
  if (a.shape() != ring.jet_sizes()) throw InvalidArgument("jet shape does not match the quotient ring");
  return a;
}

json to_json(const JetElement& a) {
  json arr = json::array();
  for (const auto& point : a.jets()) {
    json p = json::array();
    for (const auto& c : point) p.push_back(to_json(c));
    arr.push_back(p);
  }
  return {{"jets", arr}};
}

Point parse_point(const json& j, int vars) {
  if (vars == 1) return {parse_gauss(j).to_complex()};
  if (!j.is_array() || static_cast<int>(j.size()) != vars)
    throw InvalidArgument("node must have " + std::to_string(vars) + " coordinates");
  Point z;
  for (const auto& c : j) z.push_back(parse_gauss(c).to_complex());
  return z;
}

// ----------------------------------------------------------------- problems

SweepOptions parse_sweep_options(const json& j, SweepOptions o) {
  if (j.is_null()) return o;
  if (!j.is_object()) throw InvalidArgument("sweep options must be an object");
  try {
    o.samples = j.value("samples", o.samples);
    o.radius = j.value("radius", o.radius);
    o.seed = j.value("seed", o.seed);
    o.tol = j.value("tol", o.tol);
    o.boundary = j.value("boundary", o.boundary);
    o.truncation = j.value("truncation", o.truncation);
  } catch (const json::exception& e) {
    throw InvalidArgument(std::string("bad sweep option: ") + e.what());
  }
  if (o.samples < 1) throw InvalidArgument("samples must be positive");
  if (!(o.radius > 0)) throw InvalidArgument("radius must be positive");
  if (!(o.tol > 0)) throw InvalidArgument("tol must be positive");
  if (o.truncation < 1) throw InvalidArgument("truncation must be positive");
  return o;
}

json to_json(const SweepOptions& o) {
  return {{"samples", o.samples}, {"radius", o.radius},   {"seed", o.seed},
          {"tol", o.tol},         {"boundary", o.boundary}, {"truncation", o.truncation}};
}

namespace {

bool is_matrix_target(const json& t) { return t.is_array() && !t.empty() && t[0].is_array(); }

Eigen::MatrixXcd parse_matrix(const json& t) {
  const auto rows = static_cast<Eigen::Index>(t.size());
  Eigen::MatrixXcd m(rows, rows);
  for (Eigen::Index r = 0; r < rows; ++r) {
    const json& row = t[static_cast<std::size_t>(r)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != rows)
      throw InvalidArgument("matrix targets must be square");
    for (Eigen::Index c = 0; c < rows; ++c) m(r, c) = parse_gauss(row[static_cast<std::size_t>(c)]).to_complex();
  }
  return m;
}

}  // namespace

ProblemFile parse_problem(const json& j) {
  ProblemFile pf;
  PickProblem& p = pf.problem;
  p.spec = parse_spec(require(j, "spec"));
  const json& nodes = require(j, "nodes");
  const json& targets = require(j, "targets");
  if (!nodes.is_array() || !targets.is_array()) throw InvalidArgument("nodes and targets must be arrays");
  for (const auto& z : nodes) p.nodes.push_back(parse_point(z, p.spec.vars()));
  for (const auto& t : targets) {
    if (is_matrix_target(t)) {
      p.matrix_targets.push_back(parse_matrix(t));
    } else {
      p.targets.push_back(parse_gauss(t).to_complex());
    }
  }
  if (!p.targets.empty() && !p.matrix_targets.empty()) throw InvalidArgument("mixed scalar and matrix targets");
  const json sweep = j.value("sweep", json::object());
  p.options = parse_sweep_options(sweep);
  pf.cross_check = sweep.is_object() && sweep.value("oracle", false);
  return pf;
}

json to_json(const SampleRecord& r) {
  json params = json::array();
  for (const auto& x : r.parameters) params.push_back(to_json(x));
  return {{"index", r.index},           {"kind", to_string(r.kind)}, {"rank", r.rank},
          {"parameters", params},       {"lambda_min", r.lambda_min}, {"trace", r.trace},
          {"margin", r.margin()}};
}

json to_json(const Verdict& v, const SweepOptions& options) {
  json out;
  out["status"] = to_string(v.status);
  out["seed"] = options.seed;
  out["options"] = to_json(options);
  out["samples"] = v.samples;
  out["witness"] = v.witness ? to_json(*v.witness) : json(nullptr);
  out["lambda_min"] = {{"min", v.lambda_min}, {"max", v.lambda_max}, {"mean", v.lambda_mean}};
  out["histogram"] = {{"edges", v.histogram_edges}, {"counts", v.histogram_counts}};
  if (v.oracle) {
    out["oracle"] = {{"value", v.oracle->value},   {"continuous_bound", v.oracle->continuous_bound},
                     {"degree", v.oracle->degree}, {"grid", v.oracle->grid},
                     {"feasible", v.oracle->feasible}};
  } else {
    out["oracle"] = nullptr;
  }
  return out;
}

std::string verdict_csv(const Verdict& v) {
  std::size_t width = 0;
  for (const auto& r : v.records) width = std::max(width, r.parameters.size());
  std::ostringstream os;
  os.precision(17);
  os << "index,kind,rank";
  for (std::size_t i = 0; i < width; ++i) os << ",p" << i << "_re,p" << i << "_im";
  os << ",lambda_min,trace\n";
  for (const auto& r : v.records) {
    os << r.index << ',' << to_string(r.kind) << ',' << r.rank;
    for (std::size_t i = 0; i < width; ++i) {
      if (i < r.parameters.size()) {
        os << ',' << r.parameters[i].re().get_d() << ',' << r.parameters[i].im().get_d();
      } else {
        os << ",,";
      }
    }
    os << ',' << r.lambda_min << ',' << r.trace << '\n';
  }
  return os.str();
}

// ------------------------------------------------------------------ kernels

json to_json(const MultiPoly& p) {
  json terms = json::array();
  for (const auto& [e, c] : p.terms()) terms.push_back({{"exponent", e}, {"coefficient", to_json(c)}});
  return {{"vars", p.vars()}, {"terms", terms}};
}

namespace {

json tail_json(const TailKernel& t) {
  return std::visit(
      [](const auto& x) -> json {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, NoTail>) {
          return {{"kind", "none"}};
        } else if constexpr (std::is_same_v<T, MonomialTail>) {
          return {{"kind", "monomial"}, {"exponent", x.exponent}};
        } else if constexpr (std::is_same_v<T, BlaschkeTail>) {
          json zeros = json::array();
          for (const auto& r : x.product.zeros())
            zeros.push_back({{"location", to_json(r.location)}, {"multiplicity", r.multiplicity}});
          return {{"kind", "blaschke"}, {"zeros", zeros}};
        } else {
          return {{"kind", "two_var"}};
        }
      },
      t);
}

json exact_matrix_json(const ExactMatrix& m) {
  json rows = json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(to_json(m(r, c)));
    rows.push_back(row);
  }
  return rows;
}

}  // namespace

json to_json(const KernelModel& k) {
  json basis = json::array();
  for (const auto& b : k.finite_basis()) {
    json rows = json::array();
    for (std::size_t r = 0; r < b.rows; ++r) {
      json row = json::array();
      for (std::size_t c = 0; c < b.cols; ++c) row.push_back({{"poly", to_json(b(r, c).poly)}, {"correction", to_json(b(r, c).correction)}});
      rows.push_back(row);
    }
    basis.push_back(rows);
  }
  return {{"vars", k.vars()},
          {"block_size", k.block_size()},
          {"value_rank", k.value_rank()},
          {"basis", basis},
          {"gram", exact_matrix_json(k.gram())},
          {"gram_inverse", exact_matrix_json(k.gram_inverse())},
          {"tail", tail_json(k.tail())},
          {"truncation_bound", k.truncation_bound()}};
}

// ------------------------------------------------------------------- oracle

MinimaxInstance parse_instance(const json& j) {
  const SubalgebraSpec spec = parse_spec(require(j, "spec"));
  if (spec.vars() != 1) throw InvalidArgument("the minimax oracle handles one-variable specs only");
  std::vector<Complex> nodes;
  std::vector<Complex> targets;
  for (const auto& z : require(j, "nodes")) nodes.push_back(parse_gauss(z).to_complex());
  for (const auto& t : require(j, "targets")) targets.push_back(parse_gauss(t).to_complex());
  const int degree = j.value("degree", 24);
  const int grid = j.value("grid", 512);
  const double delta = j.value("delta", 1e-6);
  MinimaxInstance inst = make_instance(spec, nodes, targets, degree, grid, delta);
  inst.max_iterations = j.value("max_iterations", inst.max_iterations);
  return inst;
}

json to_json(const MinimaxResult& r) {
  json w = json::array();
  for (const auto& c : r.witness) w.push_back(to_json(c));
  return {{"value", r.value},
          {"lower_bound", r.lower_bound},
          {"continuous_bound", r.continuous_bound},
          {"iterations", r.iterations},
          {"converged", r.converged},
          {"witness", w}};
}

json to_json(const CloseTrialStats& s) {
  return {{"seed", s.seed},
          {"trials", s.trials},
          {"hypotheses_met", s.hypotheses_met},
          {"violations", s.violations},
          {"pair_trials", s.pair_trials},
          {"pair_violations", s.pair_violations},
          {"min_overlap", s.min_overlap},
          {"max_epsilon", s.max_eps}};
}

json to_json(const SuiteResult& r) {
  return {{"name", r.name}, {"passed", r.passed}, {"cases", r.cases}, {"detail", r.detail}};
}

}  // namespace pickfam::io
