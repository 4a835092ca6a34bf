#include "interf/cli.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <sstream>

#include <CLI11.hpp>

#include "interf/circuit.hpp"
#include "interf/decoherence.hpp"
#include "interf/elements.hpp"
#include "interf/little_group.hpp"
#include "json_writer.hpp"

namespace interf::cli {

namespace {

// Bad arguments: exit 2.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string format = "text";
  std::string out_path;
  double tol = kClassifyTol;

  std::string circuit_path;
  std::string input_spec = "jones:1,0,0,0";
  std::string stokes_arg;
  std::string element_spec;
  std::string decompose_kind;
  std::string matrix_arg;
  std::optional<double> alpha, u, theta, eta;
};

struct Report {
  Json inputs = Json::object();
  Json results = Json::object();
  std::vector<std::string> warnings;
  std::ostringstream text;
};

constexpr const char* kPhaseWarning =
    "sign-convention: the phase shifter turns (S2, S3) by -phi (S12 -> exp(-i phi) S12); "
    "tables that print S2' = cos(phi) S2 - sin(phi) S3 use the opposite orientation";

// --- argument parsing helpers ----------------------------------------------

std::vector<double> parse_numbers(std::string_view text, std::size_t count, const char* what) {
  std::vector<double> values;
  std::string item;
  std::istringstream is{std::string(text)};
  while (std::getline(is, item, ',')) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    while (used < item.size() && std::isspace(static_cast<unsigned char>(item[used]))) ++used;
    if (item.empty() || used != item.size() || !std::isfinite(v))
      throw UsageError(std::string("invalid number '") + item + "' in " + what);
    values.push_back(v);
  }
  if (values.size() != count)
    throw UsageError(std::string(what) + " needs " + std::to_string(count) +
                     " comma-separated numbers");
  return values;
}

BeamInput parse_input_spec(const std::string& spec) {
  const auto colon = spec.find(':');
  if (colon == std::string::npos)
    throw UsageError("input must be jones:re1,im1,re2,im2 or stokes:s0,s1,s2,s3");
  const std::string kind = spec.substr(0, colon);
  const std::string_view rest = std::string_view(spec).substr(colon + 1);
  if (kind == "jones") {
    const auto v = parse_numbers(rest, 4, "jones input");
    return JonesVector{{v[0], v[1]}, {v[2], v[3]}};
  }
  if (kind == "stokes") {
    const auto v = parse_numbers(rest, 4, "stokes input");
    return StokesVector{v[0], v[1], v[2], v[3]};
  }
  throw UsageError("unknown input kind '" + kind + "'; expected jones or stokes");
}

StokesVector parse_stokes(const std::string& text) {
  std::string_view body = text;
  if (body.starts_with("stokes:")) body.remove_prefix(7);
  const auto v = parse_numbers(body, 4, "stokes vector");
  return {v[0], v[1], v[2], v[3]};
}

// "squeeze eta=0.6" -> "squeeze(eta=0.6)"; DSL text passes through.
std::string element_to_dsl(const std::string& spec) {
  if (spec.find('(') != std::string::npos) return spec;
  std::istringstream is(spec);
  std::string name, word, args;
  is >> name;
  while (is >> word) {
    if (!args.empty()) args += ", ";
    args += word;
  }
  return name + "(" + args + ")";
}

// --- JSON / text helpers ---------------------------------------------------

Json to_json(const StokesVector& s) { return Json::array({s.s0, s.s1, s.s2, s.s3}); }
Json to_json(Complex z) { return Json::array({z.real(), z.imag()}); }

Json to_json(const CoherencyMatrix& c) {
  Json j = Json::object();
  j["s11"] = c.s11;
  j["s22"] = c.s22;
  j["s12"] = to_json(c.s12);
  return j;
}

Json to_json(const PurityReport& p) {
  Json j = Json::object();
  j["trace"] = p.trace;
  j["trace_sq"] = p.trace_sq;
  j["det"] = p.det;
  j["degree_of_polarization"] = p.degree_of_polarization;
  return j;
}

Json to_json(const StateClass& c) {
  Json j = Json::object();
  j["tag"] = std::string(to_string(c.tag));
  j["invariant_norm"] = c.invariant_norm;
  j["eta_to_standard"] = c.eta_to_standard ? Json(*c.eta_to_standard) : Json(nullptr);
  return j;
}

Json to_json(const Transform4& t) {
  Json rows = Json::array();
  for (const auto& r : t.m) rows.push_back(Json::array({r[0], r[1], r[2], r[3]}));
  return rows;
}

Json to_json(const Element2& g) {
  Json j = Json::object();
  j["alpha"] = to_json(g.alpha);
  j["beta"] = to_json(g.beta);
  j["gamma"] = to_json(g.gamma);
  j["delta"] = to_json(g.delta);
  return j;
}

Json to_json(const Mat2& m) {
  return Json::array({Json::array({m.a, m.b}), Json::array({m.c, m.d})});
}

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::string text(const StokesVector& s) {
  return "(" + num(s.s0) + ", " + num(s.s1) + ", " + num(s.s2) + ", " + num(s.s3) + ")";
}

std::string text(const StateClass& c) {
  std::string out(to_string(c.tag));
  if (c.eta_to_standard) out += ", eta_to_standard = " + num(*c.eta_to_standard);
  return out;
}

void write_matrix(std::ostream& os, const Transform4& t) {
  for (const auto& r : t.m) {
    os << "  [";
    for (int j = 0; j < 4; ++j) os << (j ? ", " : "") << std::setw(20) << num(r[j]);
    os << "]\n";
  }
}


// --- commands ----------------------------------------------------------------

void cmd_simulate(const Options& o, Report& r) {
  std::ifstream in(o.circuit_path, std::ios::binary);
  if (!in) throw UsageError("cannot read circuit file '" + o.circuit_path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  const BeamInput input = parse_input_spec(o.input_spec);
  r.inputs["circuit_path"] = o.circuit_path;
  r.inputs["in"] = o.input_spec;
  r.inputs["tol"] = o.tol;

  const CircuitAst ast = parse(buf.str());
  const SimulationReport sim = evaluate(ast, input, o.tol);

  for (const Stage& st : ast.stages)
    if (st.kind == StageKind::phase && std::sin(st.arg("phi")) != 0.0) {
      r.warnings.emplace_back(kPhaseWarning);
      break;
    }

  Json& res = r.results;
  res["format"] = sim.format;
  res["circuit"] = unparse(ast);
  res["input_stokes"] = to_json(sim.input);
  Json stages = Json::array();
  for (const StageRecord& rec : sim.stages) {
    Json s = Json::object();
    s["name"] = rec.name;
    s["location"] = std::to_string(rec.where.line) + ":" + std::to_string(rec.where.column);
    Json params = Json::object();
    for (const auto& a : rec.parameters) params[a.name] = a.value;
    s["parameters"] = params;
    s["stokes_before"] = to_json(rec.before);
    s["stokes_after"] = to_json(rec.after);
    s["coherency_after"] = to_json(rec.coherency);
    s["purity_after"] = to_json(rec.purity);
    s["classification_after"] = to_json(rec.classification);
    stages.push_back(s);
  }
  res["stages"] = stages;
  Json fin = Json::object();
  fin["stokes"] = to_json(sim.final_stokes);
  fin["coherency"] = to_json(sim.final_coherency);
  fin["purity"] = to_json(sim.final_purity);
  fin["classification"] = to_json(sim.final_class);
  fin["jones"] = sim.final_jones ? Json::array({to_json(sim.final_jones->psi1),
                                                to_json(sim.final_jones->psi2)})
                                 : Json(nullptr);
  res["final"] = fin;

  auto& t = r.text;
  t << "circuit " << o.circuit_path << " (" << sim.format << "), input " << text(sim.input)
    << "\n";
  for (const StageRecord& rec : sim.stages) {
    t << rec.where.line << ":" << rec.where.column << "  " << rec.name << "(";
    for (std::size_t i = 0; i < rec.parameters.size(); ++i)
      t << (i ? ", " : "") << rec.parameters[i].name << "=" << num(rec.parameters[i].value);
    t << ")\n    stokes " << text(rec.after) << "  trace_sq " << num(rec.purity.trace_sq)
      << "  " << text(rec.classification) << "\n";
  }
  t << "final stokes " << text(sim.final_stokes) << "\n";
  t << "final purity: trace " << num(sim.final_purity.trace) << ", trace_sq "
    << num(sim.final_purity.trace_sq) << ", det " << num(sim.final_purity.det) << ", dop "
    << num(sim.final_purity.degree_of_polarization) << "\n";
  t << "classification: " << text(sim.final_class) << "\n";
  if (sim.final_jones)
    t << "final jones: (" << num(sim.final_jones->psi1.real()) << "+"
      << num(sim.final_jones->psi1.imag()) << "i, " << num(sim.final_jones->psi2.real())
      << "+" << num(sim.final_jones->psi2.imag()) << "i)\n";
  else
    t << "final jones: none (state passed through decoherence)\n";
}

void cmd_classify(const Options& o, Report& r) {
  const StokesVector s = parse_stokes(o.stokes_arg);
  r.inputs["stokes"] = to_json(s);
  r.inputs["tol"] = o.tol;
  const StateClass c = classify(s, o.tol);
  r.results["classification"] = to_json(c);
  r.results["degree_of_polarization"] = s.polarized_intensity() / s.s0;
  r.text << "stokes " << text(s) << "\n";
  r.text << "classification: " << text(c) << "\n";
  r.text << "minkowski norm: " << num(c.invariant_norm) << "\n";
  if (c.tag == StateTag::pure || c.tag == StateTag::impure) {
    const Standardization st = standardize(s, o.tol);
    r.results["standard"] = to_json(st.standard);
    r.results["standardizing_transform"] = to_json(st.transform);
    r.text << "standard form: " << text(st.standard) << "\n";
  }
}

void cmd_lift(const Options& o, Report& r) {
  r.inputs["element"] = o.element_spec;
  Element2 g;
  double intensity = 1.0;
  bool phase_seen = false;
  if (o.element_spec.starts_with("matrix:")) {
    const auto v = parse_numbers(std::string_view(o.element_spec).substr(7), 8, "matrix");
    g = {{v[0], v[1]}, {v[2], v[3]}, {v[4], v[5]}, {v[6], v[7]}};
    require_unimodular(g);
  } else {
    const CircuitAst ast = parse(element_to_dsl(o.element_spec));
    std::vector<Element2> chain;
    for (const Stage& st : ast.stages) {
      Attenuation el;
      switch (st.kind) {
        case StageKind::rotate: el = realize(spec::Rotation{st.arg("theta")}); break;
        case StageKind::split:
          el = realize(spec::Rotation{st.has("theta") ? st.arg("theta")
                                                      : split_angle(st.arg("ratio"))});
          break;
        case StageKind::phase:
          el = realize(spec::PhaseShift{st.arg("phi")});
          phase_seen = phase_seen || std::sin(st.arg("phi")) != 0.0;
          break;
        case StageKind::atten: el = realize(spec::Attenuate{st.arg("eta1"), st.arg("eta2")}); break;
        case StageKind::squeeze: el = realize(spec::Squeeze{st.arg("eta")}); break;
        case StageKind::decohere:
          throw UsageError("decohere has no 2x2 element and cannot be lifted");
      }
      chain.push_back(el.element);
      intensity *= el.overall * el.overall;
    }
    g = compose(chain);
  }
  if (phase_seen) r.warnings.emplace_back(kPhaseWarning);
  const Transform4 m = lift(g);
  r.results["element"] = to_json(g);
  r.results["intensity_factor"] = intensity;
  r.results["matrix"] = to_json(m);
  r.results["lorentz_residual"] = metric_defect(m);
  r.text << "element [[" << num(g.alpha.real()) << "+" << num(g.alpha.imag()) << "i, "
         << num(g.beta.real()) << "+" << num(g.beta.imag()) << "i], [" << num(g.gamma.real())
         << "+" << num(g.gamma.imag()) << "i, " << num(g.delta.real()) << "+"
         << num(g.delta.imag()) << "i]]\n";
  r.text << "stokes transform (intensity factor " << num(intensity) << "):\n";
  write_matrix(r.text, m);
  r.text << "lorentz residual: " << num(metric_defect(m)) << "\n";
}

Json diagnostics_json(const InterpolationParams& p, const Transform4& m) {
  const FamilyDiagnostics d = family_diagnostics(p);
  Json j = Json::object();
  j["metric_defect"] = d.metric_defect;
  j["fixed_point_residual"] = d.fixed_point_residual;
  j["fixed_point_det"] = d.fixed_point_det;
  j["distance_to_f1"] = max_abs_diff(m, f1(p.u));
  j["distance_to_rotation"] = max_abs_diff(m, rotator4(-2.0 * std::atan(0.5 * p.u)));
  return j;
}

void cmd_littlegroup(const Options& o, Report& r) {
  const bool by_alpha = o.alpha && o.u;
  const bool by_rotation = o.theta && o.eta;
  if (by_alpha == by_rotation)
    throw UsageError("littlegroup needs either --alpha and --u, or --theta and --eta");

  if (by_alpha) {
    r.inputs["alpha"] = *o.alpha;
    r.inputs["u"] = *o.u;
    const InterpolationParams p = InterpolationParams::from_alpha(*o.alpha, *o.u);
    const Transform4 m = closed_form_family(p);
    r.results["params"] = {{"alpha", p.alpha}, {"u", p.u}, {"w", p.w}};
    r.results["matrix"] = to_json(m);
    r.results["diagnostics"] = diagnostics_json(p, m);
    r.text << "closed-form family, alpha = " << num(p.alpha) << ", u = " << num(p.u)
           << ", w = " << num(p.w) << ":\n";
    write_matrix(r.text, m);
    r.text << "metric residual: " << num(metric_defect(m)) << "\n";
    r.text << "distance to f1(u): " << num(max_abs_diff(m, f1(p.u))) << "\n";
    if (metric_defect(m) > kLorentzTol)
      r.warnings.push_back("closed-form family is not metric-preserving at alpha = " +
                           num(p.alpha) + ", u = " + num(p.u) +
                           " (defect " + num(metric_defect(m)) + ")");
    return;
  }

  r.inputs["theta"] = *o.theta;
  r.inputs["eta"] = *o.eta;
  const Transform4 conj = conjugated_rotation(*o.theta, *o.eta);
  const InterpolationParams p = InterpolationParams::from_rotation(*o.theta, *o.eta);
  const Transform4 closed = closed_form_family(p);
  const StokesVector fixed{std::cosh(*o.eta), std::sinh(*o.eta), 0.0, 0.0};
  const double gap = max_abs_diff(conj, closed);
  r.results["conjugated_rotation"] = to_json(conj);
  r.results["metric_defect"] = metric_defect(conj);
  r.results["fixed_point_residual"] = max_abs_diff(conj * fixed, fixed);
  r.results["closed_form"] = {{"params", {{"alpha", p.alpha}, {"u", p.u}, {"w", p.w}}},
                              {"matrix", to_json(closed)},
                              {"diagnostics", diagnostics_json(p, closed)}};
  r.results["closed_form_gap"] = gap;
  r.text << "squeeze4(eta) rotator4(theta) squeeze4(-eta), theta = " << num(*o.theta)
         << ", eta = " << num(*o.eta) << ":\n";
  write_matrix(r.text, conj);
  r.text << "metric residual: " << num(metric_defect(conj)) << "\n";
  r.text << "closed-form family at alpha = " << num(p.alpha) << ", u = " << num(p.u)
         << ", w = " << num(p.w) << ":\n";
  write_matrix(r.text, closed);
  r.text << "max entry gap: " << num(gap) << "\n";
  if (gap > kLorentzTol)
    r.warnings.push_back("closed-form family differs from the conjugated rotation by " +
                         num(gap));
}

void cmd_decompose(const Options& o, Report& r) {
  const auto v = parse_numbers(o.matrix_arg, 4, "2x2 matrix");
  const Mat2 m{v[0], v[1], v[2], v[3]};
  r.inputs["kind"] = o.decompose_kind;
  r.inputs["matrix"] = to_json(m);
  Mat2 back;
  if (o.decompose_kind == "iwasawa") {
    const IwasawaFactors f = iwasawa_decompose(m);
    back = f.recompose();
    r.results["factors"] = {{"k", f.k}, {"a", f.a}, {"n", f.n}};
    r.text << "m = r_a(k) d_a(a) shear(n): k = " << num(f.k) << ", a = " << num(f.a)
           << ", n = " << num(f.n) << "\n";
  } else if (o.decompose_kind == "wigner") {
    const WignerFactors f = wigner_decompose(m);
    back = f.recompose();
    r.results["factors"] = {{"axis_angle", f.axis_angle},
                            {"squeeze_exponent", f.squeeze_exponent},
                            {"residual_rotation", f.residual_rotation},
                            {"wigner_angle", f.wigner_angle()}};
    r.text << "m = r_a(psi) d_a(sigma) r_a(omega): psi = " << num(f.axis_angle)
           << ", sigma = " << num(f.squeeze_exponent) << ", omega = "
           << num(f.residual_rotation) << "\n";
    r.text << "wigner angle: " << num(f.wigner_angle()) << "\n";
  } else {
    throw UsageError("decompose kind must be iwasawa or wigner");
  }
  r.results["recomposed"] = to_json(back);
  r.results["reconstruction_residual"] = max_abs_diff(back, m);
  r.text << "reconstruction residual: " << num(max_abs_diff(back, m)) << "\n";
}

void emit(const Options& o, const std::string& command, Report& r, std::ostream& out) {
  std::ostringstream body;
  if (o.format == "json") {
    Json env = Json::object();
    env["schema_version"] = kReportSchema;
    env["command"] = command;
    env["inputs"] = r.inputs;
    env["results"] = r.results;
    env["warnings"] = r.warnings;
    write_json(body, env);
  } else {
    body << r.text.str();
    for (const auto& w : r.warnings) body << "warning: " << w << "\n";
  }
  if (o.out_path.empty()) {
    out << body.str();
    return;
  }
  std::ofstream f(o.out_path, std::ios::binary | std::ios::trunc);
  if (!f) throw UsageError("cannot write '" + o.out_path + "'");
  f << body.str();
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Lorentz-group toolkit for two-beam interferometers", "interf"};
  app.require_subcommand(1);
  app.add_option("--format", o.format, "Output format")
      ->check(CLI::IsMember({"text", "json"}))
      ->capture_default_str();
  app.add_option("--out", o.out_path, "Write the report to this file");
  app.add_option("--tol", o.tol, "Classification tolerance relative to s0^2")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();

  auto* simulate = app.add_subcommand("simulate", "Propagate a beam through a circuit file");
  simulate->add_option("circuit", o.circuit_path, "Circuit file (circuit-v1)")->required();
  simulate->add_option("--in", o.input_spec, "jones:re1,im1,re2,im2 or stokes:s0,s1,s2,s3")
      ->capture_default_str();

  auto* classify_cmd = app.add_subcommand("classify", "Classify a Stokes vector");
  classify_cmd->add_option("stokes", o.stokes_arg, "s0,s1,s2,s3");
  classify_cmd->add_option("--in", o.stokes_arg, "stokes:s0,s1,s2,s3");

  auto* lift_cmd = app.add_subcommand("lift", "Lift an element or chain to its Stokes transform");
  lift_cmd->add_option("element", o.element_spec,
                       "e.g. \"squeeze eta=0.6\", \"rotate(theta=90 deg); phase(phi=1)\", "
                       "or matrix:re,im,re,im,re,im,re,im")
      ->required();

  auto* lg = app.add_subcommand("littlegroup", "Little-group interpolation diagnostics");
  lg->add_option("--alpha", o.alpha, "Interpolation parameter in [0, 1]");
  lg->add_option("--u", o.u, "Null-rotation parameter");
  lg->add_option("--theta", o.theta, "Rotation angle (radians)");
  lg->add_option("--eta", o.eta, "Boost rapidity");

  auto* dec = app.add_subcommand("decompose", "Iwasawa or Wigner factorization of a real 2x2");
  dec->add_option("kind", o.decompose_kind, "iwasawa or wigner")
      ->required()
      ->check(CLI::IsMember({"iwasawa", "wigner"}));
  dec->add_option("matrix", o.matrix_arg, "a,b,c,d (row-major, det 1)")->required();

  for (auto* sub : {simulate, classify_cmd, lift_cmd, lg, dec}) sub->fallthrough();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kUsageError;
  }

  const std::string command = app.get_subcommands().front()->get_name();
  Report r;
  try {
    if (command == "simulate") {
      cmd_simulate(o, r);
    } else if (command == "classify") {
      if (o.stokes_arg.empty()) throw UsageError("classify needs a Stokes vector");
      cmd_classify(o, r);
    } else if (command == "lift") {
      cmd_lift(o, r);
    } else if (command == "littlegroup") {
      cmd_littlegroup(o, r);
    } else {
      cmd_decompose(o, r);
    }
    emit(o, command, r, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kUsageError;
  } catch (const ParseError& e) {
    err << (command == "simulate" ? o.circuit_path + ":" : std::string()) << e.what() << "\n";
    return e.kind() == ParseError::Kind::syntax ? kUsageError : kDomainError;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << "\n";
    return kDomainError;
  }
  return kOk;
}

}  // namespace interf::cli
