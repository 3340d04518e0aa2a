#include "drlab/io.hpp"

#include <charconv>
#include <fstream>
#include <ostream>

#include "drlab/error.hpp"

namespace drlab {

namespace {

Json vector_json(std::span<const double> v) { return Json(std::vector<double>(v.begin(), v.end())); }

Json optional_vector_json(const std::optional<Vector>& v) { return v ? vector_json(*v) : Json(nullptr); }

template <typename T>
T get_field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw Error(Errc::InvalidInput, std::string("missing field '") + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const Json::exception& e) {
    throw Error(Errc::InvalidInput, std::string("field '") + key + "': " + e.what());
  }
}

std::size_t get_count(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw Error(Errc::InvalidInput, std::string("missing field '") + key + "'");
  const Json& v = j.at(key);
  if (!v.is_number_unsigned()) throw Error(Errc::InvalidInput, std::string("field '") + key + "' must be a non-negative integer");
  return v.get<std::size_t>();
}

}  // namespace

Json to_json(const Matrix& m) {
  return Json{{"rows", m.rows()}, {"cols", m.cols()}, {"data", vector_json(m.data())}};
}

Matrix matrix_from_json(const Json& j) {
  const std::size_t rows = get_count(j, "rows");
  const std::size_t cols = get_count(j, "cols");
  if (!j.contains("data")) throw Error(Errc::InvalidInput, "missing field 'data'");
  const Json& data = j.at("data");
  if (!data.is_array()) throw Error(Errc::InvalidInput, "field 'data' must be an array");
  std::vector<double> values;
  values.reserve(data.size());
  for (const Json& v : data) {
    if (!v.is_number()) throw Error(Errc::InvalidInput, "matrix data must be numeric");
    values.push_back(v.get<double>());
  }
  return Matrix(rows, cols, std::move(values));
}

Json to_json(const LinearRelation& a) {
  return Json{{"n", a.n()}, {"graph_basis", to_json(a.graph_basis())}, {"kind", std::string(to_string(a.kind()))}};
}

LinearRelation relation_from_json(const Json& j) {
  const std::size_t n = get_count(j, "n");
  if (n < 1) throw Error(Errc::InvalidInput, "relation needs n >= 1");
  if (!j.contains("graph_basis")) throw Error(Errc::InvalidInput, "missing field 'graph_basis'");
  Matrix basis = matrix_from_json(j.at("graph_basis"));
  if (basis.rows() != 2 * n) throw Error(Errc::InvalidInput, "graph_basis must have 2n rows");
  RelationKind kind = RelationKind::Unspecified;
  if (j.contains("kind")) {
    const auto k = relation_kind_from_string(get_field<std::string>(j, "kind"));
    if (!k) throw Error(Errc::InvalidInput, "unknown relation kind");
    kind = *k;
  }
  return LinearRelation::from_basis(n, std::move(basis), kind);
}

Json to_json(const DrDiagnosis& d) {
  return Json{{"T", to_json(d.T)},
              {"symmetric", d.symmetric},
              {"firmly_nonexpansive", d.firmly_nonexpansive},
              {"proximal", d.proximal},
              {"commutator_norm", d.commutator_norm ? Json(*d.commutator_norm) : Json(nullptr)},
              {"recovered_C", to_json(d.recovered_C)}};
}

Json to_json(const IterationTrace& t) {
  Json iterates = Json::array();
  Json shadows = Json::array();
  for (const Vector& x : t.iterates) iterates.push_back(vector_json(x));
  for (const Vector& s : t.shadows) shadows.push_back(vector_json(s));
  return Json{{"iterates", std::move(iterates)},
              {"shadows", std::move(shadows)},
              {"step_norms", t.step_norms},
              {"converged", t.converged},
              {"limit", optional_vector_json(t.limit)},
              {"shadow_limit", optional_vector_json(t.shadow_limit)},
              {"iterations_used", t.iterations_used}};
}

Json to_json(const EscapeReport& r) {
  return Json{{"A_lambda", to_json(r.a_lambda)},
              {"B_lambda", to_json(r.b_lambda)},
              {"lambda_requested", r.lambda_requested},
              {"lambda_used", r.lambda_used},
              {"retried", r.retried},
              {"commutator_norm", r.commutator_norm},
              {"dist_A", r.dist_a},
              {"dist_B", r.dist_b},
              {"dist", r.dist},
              {"commute_tol", r.commute_tol}};
}

Json to_json(const ClosednessReport& r) {
  Json steps = Json::array();
  for (const ClosednessStep& s : r.steps) {
    steps.push_back({{"k", s.k},
                     {"dist_to_limit", s.dist_to_limit},
                     {"commutator_norm", s.commutator_norm},
                     {"in_D", s.in_D},
                     {"proximal", s.proximal}});
  }
  return Json{{"steps", std::move(steps)},
              {"all_terms_in_D", r.all_terms_in_D},
              {"dist_to_zero", r.dist_to_zero},
              {"limit_proximal", r.limit_proximal},
              {"passed", r.passed}};
}

Json to_json(const SweepConfig& c) {
  return Json{{"n", c.n},
              {"trials", c.trials},
              {"seed", c.seed},
              {"commute_tol", c.commute_tol},
              {"lambda_escape", c.lambda_escape}};
}

SweepConfig sweep_config_from_json(const Json& j) {
  if (!j.is_object()) throw Error(Errc::InvalidInput, "sweep config must be an object");
  SweepConfig c;
  if (j.contains("n")) c.n = get_count(j, "n");
  if (j.contains("trials")) c.trials = get_count(j, "trials");
  if (j.contains("seed")) c.seed = get_count(j, "seed");
  if (j.contains("commute_tol")) c.commute_tol = get_field<double>(j, "commute_tol");
  if (j.contains("lambda_escape")) c.lambda_escape = get_field<double>(j, "lambda_escape");
  c.validate();
  return c;
}

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

void write_trace_csv(std::ostream& os, const IterationTrace& t) {
  const std::size_t n = t.iterates.empty() ? 0 : t.iterates.front().size();
  os << "iter";
  for (std::size_t i = 1; i <= n; ++i) os << ",x_" << i;
  for (std::size_t i = 1; i <= n; ++i) os << ",shadow_" << i;
  os << ",step_norm\n";
  for (std::size_t k = 0; k < t.step_norms.size(); ++k) {
    os << k;
    for (double v : t.iterates[k]) os << ',' << format_double(v);
    for (double v : t.shadows[k]) os << ',' << format_double(v);
    os << ',' << format_double(t.step_norms[k]) << '\n';
  }
}

void write_sweep_csv(std::ostream& os, std::span<const SweepRecord> records) {
  os << "trial,commutator_norm,in_D,proximal,dist_to_perturbed\n";
  for (const SweepRecord& r : records) {
    os << r.trial << ',' << format_double(r.commutator_norm) << ',' << (r.in_D ? "true" : "false") << ','
       << (r.proximal ? "true" : "false") << ',';
    if (r.dist_to_perturbed) os << format_double(*r.dist_to_perturbed);
    os << '\n';
  }
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::InvalidInput, "cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const Json::exception& e) {
    throw Error(Errc::InvalidInput, path + ": " + e.what());
  }
}

}  // namespace drlab
