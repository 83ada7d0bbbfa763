// JSON encodings of behaviors, states and reports.
//
// Behavior files look like
//   {"parties": 2, "settings": [2, 2], "outcomes": [2, 2],
//    "table": {"0,0": [p00, p01, p10, p11], "0,1": [...], ...}}
// with one key per context (comma-separated settings) and the outcome
// vectors of that context in index order, party 0 most significant.
//
// States are {"qubits": n, "kind": "ket" | "density", "data": [[re, im], ...]}
// with density matrices stored row-major.
#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include <json.hpp>

#include "monogamy/entanglement.hpp"
#include "monogamy/localpoly.hpp"
#include "monogamy/model.hpp"
#include "monogamy/monogamy.hpp"
#include "monogamy/quantum.hpp"
#include "monogamy/sharing.hpp"

namespace monogamy::io {

using Json = nlohmann::json;

/// Malformed text or a document that does not match the expected schema.
/// `line` and `column` are 1-based and 0 when the error is not tied to a
/// position in the text.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t line = 0, std::size_t column = 0);
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

/// Parses JSON text, reporting syntax errors with line and column.
Json parse_json(std::string_view text);
std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view contents);

Json to_json(const Behavior& b);
/// Schema check plus range check of every probability against [-tol, 1+tol].
/// Normalization is left to validate_behavior.
Behavior behavior_from_json(const Json& j, double tol = kDefaultTolerance);
Behavior parse_behavior(std::string_view text, double tol = kDefaultTolerance);
Behavior read_behavior(const std::string& path, double tol = kDefaultTolerance);

Json to_json(const DensityMatrix& rho);
Json ket_to_json(std::span<const Complex> ket);
/// Either kind; a ket is turned into its projector.
DensityMatrix state_from_json(const Json& j);

Json to_json(const ValidationReport& r);
Json to_json(const SignallingReport& r);
Json to_json(const LocalDecomposition& d);
Json to_json(const ExtensionCertificate& c);
Json to_json(const CheckReport& r);
CheckReport check_report_from_json(const Json& j);
Json to_json(const TripleReport& r);
Json to_json(const TradeoffPoint& p);
Json to_json(const TangleReport& r);
TangleReport tangle_report_from_json(const Json& j);
Json to_json(const CgCandidate& c);
Json to_json(const PbProbeReport& r);

}  // namespace monogamy::io
