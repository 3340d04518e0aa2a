#pragma once

#include <iosfwd>
#include <span>
#include <string>

#include "json.hpp"

#include "drlab/drcalc.hpp"
#include "drlab/iterate.hpp"
#include "drlab/lab.hpp"
#include "drlab/linrel.hpp"
#include "drlab/matrix.hpp"

namespace drlab {

using Json = nlohmann::json;

// Parsers throw Errc::InvalidInput on malformed documents.

/// {"rows": r, "cols": c, "data": [row-major reals]}
Json to_json(const Matrix& m);
Matrix matrix_from_json(const Json& j);

/// {"n": n, "graph_basis": Matrix, "kind": "..."}; unknown keys are ignored.
Json to_json(const LinearRelation& a);
LinearRelation relation_from_json(const Json& j);

/// {"T", "symmetric", "firmly_nonexpansive", "proximal", "commutator_norm",
/// "recovered_C"}; commutator_norm is null when absent.
Json to_json(const DrDiagnosis& d);

Json to_json(const IterationTrace& t);
Json to_json(const EscapeReport& r);
Json to_json(const ClosednessReport& r);
Json to_json(const SweepConfig& c);
SweepConfig sweep_config_from_json(const Json& j);

/// Shortest decimal that reads back to the same double.
std::string format_double(double v);

/// Header `iter,x_1..x_n,shadow_1..shadow_n,step_norm`, one row per step.
void write_trace_csv(std::ostream& os, const IterationTrace& t);

/// Header `trial,commutator_norm,in_D,proximal,dist_to_perturbed`; the last
/// field is empty when no escape ran.
void write_sweep_csv(std::ostream& os, std::span<const SweepRecord> records);

Json read_json_file(const std::string& path);

}  // namespace drlab
