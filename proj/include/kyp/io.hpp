#pragma once

#include <stdexcept>
#include <string>

#include "json.hpp"
#include "kyp/contraction.hpp"
#include "kyp/inequality.hpp"
#include "kyp/moebius.hpp"
#include "kyp/numerics.hpp"
#include "kyp/solver.hpp"
#include "kyp/system.hpp"

namespace kyp::io {

using Json = nlohmann::ordered_json;

/// Malformed input document; what() names the offending field.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// {"rows": r, "cols": c, "entries": [[re, im], ...]} in row-major order.
Json matrix_to_json(const CMatrix& m);
CMatrix matrix_from_json(const Json& j, const std::string& field);

/// {"state_dim", "input_dim", "output_dim", "A", "B", "C", "D"}.
Json system_to_json(const SystemRealization& sys);
SystemRealization system_from_json(const Json& j);

Json read_json_file(const std::string& path);
void write_json_file(const std::string& path, const Json& j);

SystemRealization load_system(const std::string& path);
void save_system(const std::string& path, const SystemRealization& sys);

/// A candidate X file holds either a matrix object or {"X": matrix}.
CMatrix load_candidate(const std::string& path, Index state_dim);

Json tolerances_to_json(const Tolerances& tol);
Json classification_to_json(const Classification& c);
Json shorted_defects_to_json(const ShortedDefects& d);
Json bounds_to_json(const SolutionBounds& b);
Json uniqueness_to_json(const UniquenessReport& u);
Json kyp_report_to_json(const KypReport& r);
/// Summary of a trace: counts, flags, first and last gaps.
Json trace_to_json(const IterationTrace& t);

}  // namespace kyp::io
