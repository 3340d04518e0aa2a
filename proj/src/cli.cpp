#include "drlab/cli.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <memory>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "drlab/drcalc.hpp"
#include "drlab/io.hpp"
#include "drlab/iterate.hpp"
#include "drlab/lab.hpp"
#include "drlab/linrel.hpp"

namespace drlab {

int exit_code_for(Errc code) noexcept {
  switch (code) {
    case Errc::InvalidInput: return kExitParse;
    case Errc::SingularMatrix:
    case Errc::NotSymmetric:
    case Errc::NotFirmlyNonexpansive:
    case Errc::NotMaximallyMonotone: return kExitInvalidOperator;
    case Errc::DimensionMismatch: return kExitDimension;
    case Errc::DimensionTooSmall:
    case Errc::PreconditionViolated:
    case Errc::NotInD: return kExitPrecondition;
    case Errc::EscapeFailed:
    case Errc::InternalInconsistency: break;
  }
  return kExitFailure;
}

namespace {

struct RelOptions {
  std::string matrix_file;
  std::string normal_cone_file;
  std::string resolvent_file;
  double tol = kDefaultTol;
};

struct PairOptions {
  std::string a_file;
  std::string b_file;
  double tol = kDefaultTol;
};

struct IterateOptions {
  PairOptions pair;
  std::string x0;
  std::size_t max_iter = kDefaultMaxIter;
  double tol = kDefaultIterTol;
  std::string out;
  bool json = false;
};

struct SweepOptions {
  SweepConfig cfg;
  std::string config_file;
  std::string out;
  unsigned threads = 1;
};

struct EscapeOptions {
  PairOptions pair;
  double lambda = 1e-3;
  double commute_tol = kDefaultCommuteTol;
};

LinearRelation load_relation(const std::string& path) { return relation_from_json(read_json_file(path)); }

Vector parse_vector(const std::string& text) {
  const auto first = text.find_first_not_of(" \t");
  if (first != std::string::npos && text[first] == '[') {
    try {
      return Json::parse(text).get<Vector>();
    } catch (const Json::exception& e) {
      throw Error(Errc::InvalidInput, std::string("--x0: ") + e.what());
    }
  }
  Vector v;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto b = item.find_first_not_of(" \t");
    const auto e = item.find_last_not_of(" \t");
    if (b == std::string::npos) throw Error(Errc::InvalidInput, "--x0 has an empty component");
    double value = 0.0;
    const char* begin = item.data() + b;
    const char* end = item.data() + e + 1;
    const auto res = std::from_chars(begin, end, value);
    if (res.ec != std::errc{} || res.ptr != end) throw Error(Errc::InvalidInput, "--x0 component '" + item + "'");
    v.push_back(value);
  }
  if (v.empty()) throw Error(Errc::InvalidInput, "--x0 is empty");
  return v;
}

int cmd_rel(const RelOptions& o, std::ostream& out) {
  const int given = !o.matrix_file.empty() + !o.normal_cone_file.empty() + !o.resolvent_file.empty();
  if (given != 1) throw Error(Errc::InvalidInput, "give exactly one of --matrix, --normal-cone, --resolvent");

  std::unique_ptr<LinearRelation> rel;
  if (!o.matrix_file.empty()) {
    rel = std::make_unique<LinearRelation>(from_matrix(matrix_from_json(read_json_file(o.matrix_file))));
  } else if (!o.normal_cone_file.empty()) {
    rel = std::make_unique<LinearRelation>(
        normal_cone_of_subspace(matrix_from_json(read_json_file(o.normal_cone_file))));
  } else {
    const Matrix j = matrix_from_json(read_json_file(o.resolvent_file));
    rel = std::make_unique<LinearRelation>(from_resolvent(ResolventMatrix(j)));
  }

  const bool monotone = is_monotone(*rel, o.tol);
  if (!is_maximally_monotone(*rel, o.tol)) {
    throw Error(Errc::NotMaximallyMonotone,
                monotone ? "graph dimension differs from n" : "relation is not monotone");
  }
  const ResolventMatrix j = resolvent_of(*rel, o.tol);
  const Matrix& jm = j.matrix();

  Json doc = to_json(*rel);
  doc["diagnostics"] = Json{{"monotone", monotone},
                            {"maximally_monotone", true},
                            {"symmetric", spectral_norm(jm - jm.transpose()) <= o.tol},
                            {"resolvent", to_json(jm)},
                            {"tol", o.tol}};
  out << doc.dump(2) << '\n';
  return kExitOk;
}

int cmd_dr(const PairOptions& o, std::ostream& out) {
  const LinearRelation a = load_relation(o.a_file);
  const LinearRelation b = load_relation(o.b_file);
  out << to_json(dr_operator(a, b, o.tol)).dump(2) << '\n';
  return kExitOk;
}

int cmd_iterate(const IterateOptions& o, std::ostream& out) {
  const LinearRelation a = load_relation(o.pair.a_file);
  const LinearRelation b = load_relation(o.pair.b_file);
  const Vector x0 = parse_vector(o.x0);
  if (x0.size() != a.n()) {
    throw Error(Errc::DimensionMismatch,
                "--x0 has " + std::to_string(x0.size()) + " components, relation has n = " + std::to_string(a.n()));
  }
  if (o.max_iter < 1) throw Error(Errc::InvalidInput, "--max-iter must be at least 1");
  if (!(o.tol > 0.0)) throw Error(Errc::InvalidInput, "--tol must be positive");
  if (a.n() != b.n()) throw Error(Errc::DimensionMismatch, "relations have different n");

  const IterationTrace trace = run_dr(a, b, x0, o.max_iter, o.tol);
  const SolutionSet z = solution_set(a, b);
  const Vector& shadow = trace.shadow_limit ? *trace.shadow_limit : trace.shadows.back();
  const double dist_z = distance_to_subspace(shadow, z.basis);

  std::ofstream file;
  if (!o.out.empty()) {
    file.open(o.out);
    if (!file) throw Error(Errc::InvalidInput, "cannot write " + o.out);
  }
  std::ostream& sink = o.out.empty() ? out : file;

  if (o.json) {
    Json doc = to_json(trace);
    doc["dist_shadow_to_Z"] = dist_z;
    doc["solution_set_dim"] = z.basis.cols();
    sink << doc.dump(2) << '\n';
    return kExitOk;
  }

  write_trace_csv(sink, trace);
  std::string shadow_text;
  for (std::size_t i = 0; i < shadow.size(); ++i) shadow_text += (i ? " " : "") + format_double(shadow[i]);
  sink << "# " << (trace.converged ? "converged" : "NoConvergence") << " iterations=" << trace.iterations_used
       << " shadow_limit=" << shadow_text << " dist_to_Z=" << format_double(dist_z)
       << " dim_Z=" << z.basis.cols() << '\n';
  return kExitOk;
}

int cmd_sweep(SweepOptions o, const std::vector<std::string>& explicit_flags, std::ostream& out,
              std::ostream& err) {
  if (!o.config_file.empty()) {
    SweepConfig from_file = sweep_config_from_json(read_json_file(o.config_file));
    // Flags given on the command line take precedence over the file.
    auto given = [&](const std::string& f) {
      return std::find(explicit_flags.begin(), explicit_flags.end(), f) != explicit_flags.end();
    };
    if (given("--n")) from_file.n = o.cfg.n;
    if (given("--trials")) from_file.trials = o.cfg.trials;
    if (given("--seed")) from_file.seed = o.cfg.seed;
    if (given("--commute-tol")) from_file.commute_tol = o.cfg.commute_tol;
    if (given("--lambda-escape")) from_file.lambda_escape = o.cfg.lambda_escape;
    o.cfg = from_file;
  }
  o.cfg.validate();
  const std::vector<SweepRecord> records = genericity_sweep(o.cfg, o.threads);

  std::ostream* summary = &err;
  if (o.out.empty()) {
    write_sweep_csv(out, records);
  } else {
    std::ofstream file(o.out);
    if (!file) throw Error(Errc::InvalidInput, "cannot write " + o.out);
    write_sweep_csv(file, records);
    summary = &out;
  }
  const auto hits = std::count_if(records.begin(), records.end(), [](const SweepRecord& r) { return r.in_D; });
  *summary << "n=" << o.cfg.n << " trials=" << o.cfg.trials << " seed=" << o.cfg.seed
           << " commute_tol=" << format_double(o.cfg.commute_tol) << " in_D=" << hits
           << " fraction_in_D=" << format_double(fraction_in_D(records)) << '\n';
  return kExitOk;
}

int cmd_escape(const EscapeOptions& o, std::ostream& out) {
  const LinearRelation a = load_relation(o.pair.a_file);
  const LinearRelation b = load_relation(o.pair.b_file);
  out << to_json(escape_from_D(a, b, o.lambda, o.commute_tol)).dump(2) << '\n';
  return kExitOk;
}

void add_pair_args(CLI::App* sub, PairOptions& p) {
  sub->add_option("a_file", p.a_file, "Relation JSON for A")->required();
  sub->add_option("b_file", p.b_file, "Relation JSON for B")->required();
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Douglas–Rachford operators of maximally monotone linear relations", "drlab"};
  app.require_subcommand(1);

  RelOptions rel;
  auto* rel_cmd = app.add_subcommand("rel", "Build a relation and print it with diagnostics");
  auto* m_opt = rel_cmd->add_option("--matrix", rel.matrix_file, "Matrix JSON; relation x ↦ Mx");
  auto* nc_opt = rel_cmd->add_option("--normal-cone", rel.normal_cone_file, "Matrix JSON whose columns span V");
  auto* r_opt = rel_cmd->add_option("--resolvent", rel.resolvent_file, "Matrix JSON of a firmly nonexpansive J");
  m_opt->excludes(nc_opt)->excludes(r_opt);
  nc_opt->excludes(r_opt);
  rel_cmd->add_option("--tol", rel.tol, "Monotonicity/symmetry tolerance")->capture_default_str();

  PairOptions dr;
  auto* dr_cmd = app.add_subcommand("dr", "Diagnose the DR operator of a pair");
  add_pair_args(dr_cmd, dr);
  dr_cmd->add_option("--tol", dr.tol, "Symmetry/firmness tolerance")->capture_default_str();

  IterateOptions it;
  auto* it_cmd = app.add_subcommand("iterate", "Run the DR iteration and write a CSV trace");
  add_pair_args(it_cmd, it.pair);
  it_cmd->add_option("--x0", it.x0, "Start point, e.g. 1,1 or [1,1]")->required();
  it_cmd->add_option("--max-iter", it.max_iter, "Iteration cap")->capture_default_str();
  it_cmd->add_option("--tol", it.tol, "Stop when ‖x_{k+1} − x_k‖ ≤ tol")->capture_default_str();
  it_cmd->add_option("--out", it.out, "CSV output path (default: stdout)");
  it_cmd->add_flag("--json", it.json, "Emit the trace as JSON instead of CSV");

  SweepOptions sw;
  auto* sw_cmd = app.add_subcommand("sweep", "Sample symmetric pairs and record membership in D");
  sw_cmd->add_option("--n", sw.cfg.n, "Dimension")->capture_default_str();
  sw_cmd->add_option("--trials", sw.cfg.trials, "Number of sampled pairs")->capture_default_str();
  sw_cmd->add_option("--seed", sw.cfg.seed, "64-bit seed")->capture_default_str();
  sw_cmd->add_option("--commute-tol", sw.cfg.commute_tol, "Commutator threshold for D")->capture_default_str();
  sw_cmd->add_option("--lambda-escape", sw.cfg.lambda_escape, "λ for escapes from D")->capture_default_str();
  sw_cmd->add_option("--config", sw.config_file, "SweepConfig JSON; flags override it");
  sw_cmd->add_option("--out", sw.out, "CSV output path (default: stdout)");
  sw_cmd->add_option("--threads", sw.threads, "Worker threads")->capture_default_str()->check(CLI::PositiveNumber);

  EscapeOptions es;
  auto* es_cmd = app.add_subcommand("escape", "Perturb a pair in D out of D");
  add_pair_args(es_cmd, es.pair);
  es_cmd->add_option("--lambda", es.lambda, "Blend weight in (0, 1)")->capture_default_str();
  es_cmd->add_option("--commute-tol", es.commute_tol, "Commutator threshold for D")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitParse;
  }

  try {
    if (*rel_cmd) return cmd_rel(rel, out);
    if (*dr_cmd) return cmd_dr(dr, out);
    if (*it_cmd) return cmd_iterate(it, out);
    if (*sw_cmd) {
      std::vector<std::string> given;
      for (const char* f : {"--n", "--trials", "--seed", "--commute-tol", "--lambda-escape"})
        if (sw_cmd->count(f) > 0) given.emplace_back(f);
      return cmd_sweep(sw, given, out, err);
    }
    if (*es_cmd) return cmd_escape(es, out);
  } catch (const Error& e) {
    err << "drlab: " << e.what() << '\n';
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    err << "drlab: " << e.what() << '\n';
    return kExitFailure;
  }
  return kExitParse;
}

}  // namespace drlab
