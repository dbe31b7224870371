#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "pickfam/daspace.hpp"
#include "pickfam/identities.hpp"
#include "pickfam/oracle.hpp"
#include "pickfam/pick.hpp"
#include "pickfam/quotient.hpp"

namespace pickfam::io {

using nlohmann::json;

/// Reads and parses a JSON file; throws InvalidArgument on I/O or syntax errors.
json read_json_file(const std::string& path);

/// Exact rationals are "p/q" strings; numbers and decimal strings are read exactly.
Rational parse_rational(const json& j);
/// [re, im] pair, or a single real value.
GaussRational parse_gauss(const json& j);
json to_json(const GaussRational& z);
json to_json(Complex z);

/// Tagged spec object, or the short form {"generators": [...]}.
/// A wrapping {"spec": {...}} object is accepted as well.
SubalgebraSpec parse_spec(const json& j);
json to_json(const SubalgebraSpec& spec);

/// {"jets": [[[re, im], ...], ...]} or the bare jets array.
JetElement parse_jet(const json& j, const QuotientRing& ring);
json to_json(const JetElement& a);

/// A node is one complex for one-variable specs, else an array of them.
Point parse_point(const json& j, int vars);

SweepOptions parse_sweep_options(const json& j, SweepOptions base = {});
json to_json(const SweepOptions& o);

/// Parsed problem file plus flags that live outside PickProblem.
struct ProblemFile {
  PickProblem problem;
  bool cross_check = false;
};
ProblemFile parse_problem(const json& j);

json to_json(const SampleRecord& r);
json to_json(const Verdict& v, const SweepOptions& options);
/// CSV rows (index, kind, rank, parameter re/im pairs, lambda_min, trace).
std::string verdict_csv(const Verdict& v);

json to_json(const MultiPoly& p);
json to_json(const KernelModel& k);

MinimaxInstance parse_instance(const json& j);
json to_json(const MinimaxResult& r);

json to_json(const CloseTrialStats& s);
json to_json(const SuiteResult& r);

}  // namespace pickfam::io
