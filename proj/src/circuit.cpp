#include "interf/circuit.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <sstream>

#include "interf/decoherence.hpp"
#include "interf/elements.hpp"

namespace interf {

namespace {

struct ArgRule {
  std::string_view name;
  bool angle;
};

struct StageRule {
  StageKind kind;
  std::string_view name;
  std::vector<ArgRule> args;  // canonical order
};

const std::vector<StageRule>& stage_rules() {
  static const std::vector<StageRule> rules{
      {StageKind::rotate, "rotate", {{"theta", true}}},
      {StageKind::split, "split", {{"theta", true}, {"ratio", false}}},
      {StageKind::phase, "phase", {{"phi", true}}},
      {StageKind::atten, "atten", {{"eta1", false}, {"eta2", false}}},
      {StageKind::squeeze, "squeeze", {{"eta", false}}},
      {StageKind::decohere, "decohere", {{"lambda", false}}},
  };
  return rules;
}

const StageRule& rule_for(StageKind kind) {
  for (const auto& r : stage_rules())
    if (r.kind == kind) return r;
  return stage_rules().front();
}

const StageRule* find_rule(std::string_view name) {
  for (const auto& r : stage_rules())
    if (r.name == name) return &r;
  return nullptr;
}

std::string expected_stage_names() {
  std::string out;
  for (const auto& r : stage_rules()) {
    if (!out.empty()) out += ", ";
    out += r.name;
  }
  return out;
}

// --- lexer -----------------------------------------------------------------

enum class Tok { ident, number, lparen, rparen, comma, semicolon, equals, end, invalid };

struct Token {
  Tok kind = Tok::end;
  std::string_view text;
  SourceLocation where;
};

std::string describe(const Token& t) {
  switch (t.kind) {
    case Tok::end: return "end of input";
    case Tok::invalid: {
      const unsigned char ch = static_cast<unsigned char>(t.text.front());
      if (ch >= 0x20 && ch < 0x7f) return "'" + std::string(t.text) + "'";
      std::ostringstream os;
      os << "byte 0x" << std::hex << static_cast<int>(ch);
      return os.str();
    }
    default: return "'" + std::string(t.text) + "'";
  }
}

bool is_digit(char c) { return c >= '0' && c <= '9'; }
bool is_ident_start(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_';
}
bool is_ident_char(char c) { return is_ident_start(c) || is_digit(c); }

class Lexer {
 public:
  explicit Lexer(std::string_view text) : text_(text) {}

  Token next() {
    skip_trivia();
    Token t;
    t.where = {line_, column_};
    if (pos_ >= text_.size()) return t;
    const std::size_t start = pos_;
    const char c = text_[pos_];
    auto single = [&](Tok kind) {
      advance();
      t.kind = kind;
      t.text = text_.substr(start, 1);
      return t;
    };
    switch (c) {
      case '(': return single(Tok::lparen);
      case ')': return single(Tok::rparen);
      case ',': return single(Tok::comma);
      case ';': return single(Tok::semicolon);
      case '=': return single(Tok::equals);
      default: break;
    }
    if (is_ident_start(c)) {
      while (pos_ < text_.size() && is_ident_char(text_[pos_])) advance();
      t.kind = Tok::ident;
    } else if (is_digit(c) || c == '.' || c == '+' || c == '-') {
      if (!scan_number()) {
        pos_ = start;
        return single(Tok::invalid);
      }
      t.kind = Tok::number;
    } else {
      return single(Tok::invalid);
    }
    t.text = text_.substr(start, pos_ - start);
    return t;
  }

 private:
  void advance() {
    if (text_[pos_] == '\n') {
      ++line_;
      column_ = 1;
    } else {
      ++column_;
    }
    ++pos_;
  }

  bool at_digit(std::size_t p) const { return p < text_.size() && is_digit(text_[p]); }

  void skip_trivia() {
    while (pos_ < text_.size()) {
      const char c = text_[pos_];
      if (c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v') {
        advance();
      } else if (c == '#') {
        while (pos_ < text_.size() && text_[pos_] != '\n') advance();
      } else {
        break;
      }
    }
  }

  // [+-]? (digits [. digits*] | . digits) ([eE] [+-]? digits)?
  bool scan_number() {
    std::size_t p = pos_;
    if (text_[p] == '+' || text_[p] == '-') ++p;
    bool mantissa = false;
    while (at_digit(p)) {
      ++p;
      mantissa = true;
    }
    if (p < text_.size() && text_[p] == '.') {
      ++p;
      while (at_digit(p)) {
        ++p;
        mantissa = true;
      }
    }
    if (!mantissa) return false;
    if (p < text_.size() && (text_[p] == 'e' || text_[p] == 'E')) {
      std::size_t q = p + 1;
      if (q < text_.size() && (text_[q] == '+' || text_[q] == '-')) ++q;
      if (at_digit(q)) {
        while (at_digit(q)) ++q;
        p = q;
      }
    }
    while (pos_ < p) advance();
    return true;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int column_ = 1;
};

// --- parser ----------------------------------------------------------------

struct RawArg {
  std::string_view name;
  double value = 0.0;
  bool deg = false;
  SourceLocation where;
  SourceLocation deg_where;
};

class Parser {
 public:
  explicit Parser(std::string_view text) : lexer_(text) { look_ = lexer_.next(); }

  CircuitAst circuit() {
    CircuitAst ast;
    ast.stages.push_back(stage());
    while (look_.kind == Tok::semicolon) {
      take();
      if (look_.kind == Tok::end) break;
      ast.stages.push_back(stage());
    }
    if (look_.kind != Tok::end) syntax(look_, "expected ';' or end of input");
    return ast;
  }

 private:
  Token take() {
    Token t = look_;
    look_ = lexer_.next();
    return t;
  }

  [[noreturn]] void syntax(const Token& at, const std::string& expected) {
    throw ParseError(ParseError::Kind::syntax, at.where,
                     expected + ", found " + describe(at));
  }

  [[noreturn]] void semantic(SourceLocation where, const std::string& message) {
    throw ParseError(ParseError::Kind::semantic, where, message);
  }

  Token expect(Tok kind, const char* expected) {
    if (look_.kind != kind) syntax(look_, expected);
    return take();
  }

  Stage stage() {
    if (look_.kind != Tok::ident) syntax(look_, "expected stage name");
    const Token name = take();
    const StageRule* rule = find_rule(name.text);
    if (rule == nullptr)
      throw ParseError(ParseError::Kind::syntax, name.where,
                       "unknown stage '" + std::string(name.text) + "'; expected one of " +
                           expected_stage_names());
    expect(Tok::lparen, "expected '('");
    std::vector<RawArg> raw;
    if (look_.kind != Tok::rparen) {
      raw.push_back(argument());
      while (look_.kind == Tok::comma) {
        take();
        raw.push_back(argument());
      }
    }
    expect(Tok::rparen, raw.empty() ? "expected argument name or ')'" : "expected ',' or ')'");
    return validate(*rule, name.where, raw);
  }

  RawArg argument() {
    if (look_.kind != Tok::ident) syntax(look_, "expected argument name");
    const Token name = take();
    expect(Tok::equals, "expected '='");
    if (look_.kind != Tok::number) syntax(look_, "expected number");
    const Token num = take();
    RawArg arg{name.text, to_double(num), false, name.where, {}};
    if (look_.kind == Tok::ident) {
      if (look_.text != "deg") syntax(look_, "expected 'deg', ',' or ')'");
      arg.deg = true;
      arg.deg_where = take().where;
    }
    return arg;
  }

  double to_double(const Token& num) {
    std::string_view s = num.text;
    if (!s.empty() && s.front() == '+') s.remove_prefix(1);
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size() || !std::isfinite(v))
      semantic(num.where, "number '" + std::string(num.text) + "' is out of range");
    return v;
  }

  Stage validate(const StageRule& rule, SourceLocation where, const std::vector<RawArg>& raw) {
    Stage st;
    st.kind = rule.kind;
    st.where = where;
    std::vector<const RawArg*> slots(rule.args.size(), nullptr);
    for (const RawArg& a : raw) {
      auto it = std::find_if(rule.args.begin(), rule.args.end(),
                             [&](const ArgRule& r) { return r.name == a.name; });
      if (it == rule.args.end()) {
        std::string names;
        for (const auto& r : rule.args) names += (names.empty() ? "" : ", ") + std::string(r.name);
        semantic(a.where, "unknown argument '" + std::string(a.name) + "' for " +
                              std::string(rule.name) + "; expected " + names);
      }
      const auto idx = static_cast<std::size_t>(it - rule.args.begin());
      if (slots[idx] != nullptr)
        semantic(a.where, "duplicate argument '" + std::string(a.name) + "'");
      if (a.deg && !it->angle)
        semantic(a.deg_where, "'deg' is only valid for angle arguments");
      slots[idx] = &a;
    }

    if (rule.kind == StageKind::split) {
      if (slots[0] && slots[1])
        semantic(slots[1]->where, "split takes either theta or ratio, not both");
      if (!slots[0] && !slots[1]) semantic(where, "split requires theta or ratio");
      if (slots[1] && !(slots[1]->value >= 0.0 && slots[1]->value <= 1.0))
        semantic(slots[1]->where, "ratio must lie in [0, 1]");
    } else {
      for (std::size_t i = 0; i < slots.size(); ++i)
        if (!slots[i])
          semantic(where, std::string(rule.name) + " requires argument '" +
                              std::string(rule.args[i].name) + "'");
    }

    for (std::size_t i = 0; i < slots.size(); ++i) {
      if (!slots[i]) continue;
      const RawArg& a = *slots[i];
      const bool nonnegative = rule.kind == StageKind::atten || rule.kind == StageKind::decohere;
      if (nonnegative && a.value < 0.0)
        semantic(a.where, std::string(a.name) + " must be nonnegative");
      const double value = a.deg ? a.value * M_PI / 180.0 : a.value;
      st.args.push_back({std::string(a.name), value});
    }
    return st;
  }

  Lexer lexer_;
  Token look_;
};

std::string format_number(double v) {
  std::array<char, 64> buf{};
  const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), ec == std::errc() ? ptr : buf.data());
}

}  // namespace

std::string_view to_string(StageKind kind) { return rule_for(kind).name; }

bool Stage::has(std::string_view name) const {
  return std::any_of(args.begin(), args.end(), [&](const StageArg& a) { return a.name == name; });
}

double Stage::arg(std::string_view name) const {
  for (const auto& a : args)
    if (a.name == name) return a.value;
  throw std::out_of_range("stage has no argument '" + std::string(name) + "'");
}

bool structurally_equal(const CircuitAst& x, const CircuitAst& y) {
  return std::equal(x.stages.begin(), x.stages.end(), y.stages.begin(), y.stages.end(),
                    [](const Stage& a, const Stage& b) {
                      return a.kind == b.kind && a.args == b.args;
                    });
}

ParseError::ParseError(Kind kind, SourceLocation where, const std::string& message)
    : std::runtime_error(std::to_string(where.line) + ":" + std::to_string(where.column) +
                         ": " + (kind == Kind::syntax ? "syntax error: " : "error: ") +
                         message),
      kind_(kind),
      where_(where),
      message_(message) {}

CircuitAst parse(std::string_view text) { return Parser(text).circuit(); }

std::string unparse(const CircuitAst& ast) {
  std::string out;
  for (std::size_t i = 0; i < ast.stages.size(); ++i) {
    const Stage& st = ast.stages[i];
    out += to_string(st.kind);
    out += '(';
    for (std::size_t j = 0; j < st.args.size(); ++j) {
      if (j) out += ", ";
      out += st.args[j].name + "=" + format_number(st.args[j].value);
    }
    out += ')';
    if (i + 1 < ast.stages.size()) out += ';';
    out += '\n';
  }
  return out;
}

// --- evaluation ------------------------------------------------------------

EvaluationError::EvaluationError(SourceLocation where, const std::string& message)
    : DomainError(std::to_string(where.line) + ":" + std::to_string(where.column) + ": " +
                  message),
      where_(where) {}

namespace {

struct BeamState {
  CoherencyMatrix coherency;
  std::optional<JonesVector> jones;
};

BeamState initial_state(const BeamInput& input) {
  const SourceLocation here{0, 0};
  if (const auto* j = std::get_if<JonesVector>(&input)) {
    if (!std::isfinite(j->intensity()) || !(j->intensity() > 0.0))
      throw EvaluationError(here, "input Jones vector must have finite, positive intensity");
    return {coherency_from_jones(*j), *j};
  }
  const auto& s = std::get<StokesVector>(input);
  if (!(s.s0 > 0.0)) throw EvaluationError(here, "input Stokes vector must have s0 > 0");
  try {
    return {coherency_from_stokes(s), std::nullopt};
  } catch (const DomainError& e) {
    throw EvaluationError(here, e.what());
  }
}

ElementSpec element_for(const Stage& st, std::vector<StageArg>& resolved) {
  resolved = st.args;
  switch (st.kind) {
    case StageKind::rotate: return spec::Rotation{st.arg("theta")};
    case StageKind::split: {
      if (st.has("theta")) return spec::Rotation{st.arg("theta")};
      const double theta = split_angle(st.arg("ratio"));
      resolved.push_back({"theta", theta});
      return spec::Rotation{theta};
    }
    case StageKind::phase: return spec::PhaseShift{st.arg("phi")};
    case StageKind::atten: return spec::Attenuate{st.arg("eta1"), st.arg("eta2")};
    case StageKind::squeeze: return spec::Squeeze{st.arg("eta")};
    case StageKind::decohere: break;
  }
  throw DomainError("decohere has no 2x2 element");
}

}  // namespace

SimulationReport evaluate(const CircuitAst& ast, const BeamInput& input, double rel_tol) {
  BeamState state = initial_state(input);
  SimulationReport report;
  report.input = stokes_from_coherency(state.coherency);

  for (const Stage& st : ast.stages) {
    StageRecord rec;
    rec.name = std::string(to_string(st.kind));
    rec.where = st.where;
    rec.before = stokes_from_coherency(state.coherency);
    try {
      if (st.kind == StageKind::decohere) {
        rec.parameters = st.args;
        const StokesVector out = decohere_channel(rec.before, st.arg("lambda"));
        state.coherency = coherency_from_stokes(out);
        state.jones.reset();
      } else {
        const Attenuation el = realize(element_for(st, rec.parameters));
        const double k2 = el.overall * el.overall;
        CoherencyMatrix c = conjugate(state.coherency, el.element);
        c.s11 *= k2;
        c.s22 *= k2;
        c.s12 *= k2;
        state.coherency = c;
        if (state.jones) {
          JonesVector j = act(el.element, *state.jones);
          j.psi1 *= el.overall;
          j.psi2 *= el.overall;
          state.jones = j;
        }
      }
      rec.after = stokes_from_coherency(state.coherency);
      rec.coherency = state.coherency;
      rec.purity = purity_report(state.coherency);
      rec.classification = classify(rec.after, rel_tol);
    } catch (const EvaluationError&) {
      throw;
    } catch (const DomainError& e) {
      throw EvaluationError(st.where, rec.name + ": " + e.what());
    } catch (const std::out_of_range& e) {
      throw EvaluationError(st.where, rec.name + ": " + e.what());
    }
    report.stages.push_back(std::move(rec));
  }

  report.final_coherency = state.coherency;
  report.final_stokes = stokes_from_coherency(state.coherency);
  report.final_jones = state.jones;
  try {
    report.final_purity = purity_report(state.coherency);
    report.final_class = classify(report.final_stokes, rel_tol);
  } catch (const DomainError& e) {
    throw EvaluationError({0, 0}, e.what());
  }
  return report;
}

}  // namespace interf
