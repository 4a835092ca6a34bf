/**
 * @file circuit.hpp
 * @brief Text format for interferometer chains (circuit-v1).
 *
 *   circuit  := stage { ";" stage } [";"] ;
 *   stage    := name "(" [arg {"," arg}] ")" ;
 *   name     := "rotate" | "split" | "phase" | "atten" | "squeeze" | "decohere" ;
 *   arg      := ident "=" number [ "deg" ] ;
 *
 * "#" starts a comment running to the end of the line. Stages are listed in
 * the order the beam meets them. Angles (theta, phi) are radians unless
 * followed by "deg".
 *
 *   rotate(theta=90 deg); phase(phi=0.5); atten(eta1=0.1, eta2=0.3)
 *   split(ratio=0.5)     # theta = -pi/2
 *   decohere(lambda=2)
 */

#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "interf/little_group.hpp"
#include "interf/stokes.hpp"

namespace interf {

inline constexpr std::string_view kCircuitFormat = "circuit-v1";

struct SourceLocation {
  int line = 1;
  int column = 1;
};

enum class StageKind { rotate, split, phase, atten, squeeze, decohere };

std::string_view to_string(StageKind kind);

struct StageArg {
  std::string name;
  double value = 0.0;  // radians for angles

  bool operator==(const StageArg&) const = default;
};

struct Stage {
  StageKind kind = StageKind::rotate;
  std::vector<StageArg> args;  // canonical order for the kind
  SourceLocation where;

  bool has(std::string_view name) const;
  double arg(std::string_view name) const;  // throws std::out_of_range
};

struct CircuitAst {
  std::vector<Stage> stages;
};

/// Equal stage kinds and arguments; source locations are ignored.
bool structurally_equal(const CircuitAst& x, const CircuitAst& y);

class ParseError : public std::runtime_error {
 public:
  enum class Kind { syntax, semantic };

  ParseError(Kind kind, SourceLocation where, const std::string& message);

  Kind kind() const { return kind_; }
  SourceLocation where() const { return where_; }
  const std::string& message() const { return message_; }

 private:
  Kind kind_;
  SourceLocation where_;
  std::string message_;
};

/// Throws ParseError (syntax or semantic) carrying line:column.
CircuitAst parse(std::string_view text);

/// Canonical text: radians, canonical argument order, shortest round-trip
/// numbers, one stage per line.
std::string unparse(const CircuitAst& ast);

using BeamInput = std::variant<JonesVector, StokesVector>;

struct StageRecord {
  std::string name;
  std::vector<StageArg> parameters;  // resolved, e.g. split carries theta
  SourceLocation where;
  StokesVector before;
  StokesVector after;
  CoherencyMatrix coherency;
  PurityReport purity;
  StateClass classification;
};

struct SimulationReport {
  std::string format = std::string(kCircuitFormat);
  StokesVector input;
  std::vector<StageRecord> stages;
  StokesVector final_stokes;
  CoherencyMatrix final_coherency;
  PurityReport final_purity;
  StateClass final_class;
  std::optional<JonesVector> final_jones;  // absent once a decohere stage ran
};

/// Raised by evaluate when a stage or the input violates a numeric
/// precondition; `where` is the stage location (0:0 for the input beam).
class EvaluationError : public DomainError {
 public:
  EvaluationError(SourceLocation where, const std::string& message);
  SourceLocation where() const { return where_; }

 private:
  SourceLocation where_;
};

SimulationReport evaluate(const CircuitAst& ast, const BeamInput& input,
                          double rel_tol = kClassifyTol);

}  // namespace interf
