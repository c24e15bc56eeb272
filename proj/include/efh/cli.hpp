#pragma once

#include "efh/algebra.hpp"
#include "efh/bredon.hpp"
#include "efh/facthom1d.hpp"

#include "json.hpp"

#include <stdexcept>
#include <string>
#include <vector>

namespace efh::cli {

using Json = nlohmann::ordered_json;

/// Malformed input; `pointer` is the JSON pointer of the offending value.
class SchemaError : public std::runtime_error {
public:
  SchemaError(std::string pointer, const std::string& what)
      : std::runtime_error(what), pointer_(std::move(pointer)) {}
  const std::string& pointer() const { return pointer_; }

private:
  std::string pointer_;
};

struct Output {
  int exit_code = 0;
  std::string out;
  std::string err;
};

/// Runs one job. `args` excludes the program name:
///   <command> <input> [--field q|fp:<p>] [--cap n] [--normalized true|false]
///   [--format table|json] [--oracle] [--trace-convention phi-left|phi-right]
/// `input` is a path, "-" for stdin, or "builtin:<name>".
/// Exit status 1 for usage and schema errors, 2 for mathematical ones.
Output run(const std::vector<std::string>& args, const std::string& stdin_text = {});

std::vector<std::string> builtin_names();
/// Throws SchemaError for unknown names.
Json builtin_document(const std::string& name);
/// Every builtin paired with each command that accepts it, as argument lists
/// (degree cap 3).
std::vector<std::vector<std::string>> corpus_jobs();

/// Groups are written as Cayley tables with element names; elements are
/// referred to by name (or index) elsewhere.
Json group_to_json(const FiniteGroup& g);
FiniteGroup group_from_json(const Json& j, const std::string& pointer = "");

/// Algebras are written as structure constants.
Json algebra_to_json(const Algebra& a);
Algebra algebra_from_json(const Json& j, const Field& field, const std::string& pointer = "");

Json twist_to_json(const AlgebraTwist& phi);
AlgebraTwist twist_from_json(const Json& j, const Algebra& a, const std::string& pointer = "");

Json orbifold_to_json(const OrbifoldCircle& o);
OrbifoldCircle orbifold_from_json(const Json& j, const std::string& pointer = "");

Json gcw_to_json(const GammaCWComplex& x);
GammaCWComplex gcw_from_json(const Json& j, const std::string& pointer = "");

}  // namespace efh::cli
