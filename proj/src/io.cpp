#include "monogamy/io.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace monogamy::io {

ParseError::ParseError(const std::string& what, std::size_t line, std::size_t column)
    : std::runtime_error(line ? what + " at line " + std::to_string(line) + ", column " +
                                    std::to_string(column)
                              : what),
      line_(line),
      column_(column) {}

Json parse_json(std::string_view text) {
  try {
    return Json::parse(text.begin(), text.end());
  } catch (const nlohmann::json::parse_error& e) {
    // e.byte is 1-based and points just past the offending character
    const std::size_t offset = std::min<std::size_t>(e.byte ? e.byte - 1 : 0, text.size());
    std::size_t line = 1, column = 1;
    for (std::size_t i = 0; i < offset; ++i) {
      if (text[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    std::string msg = e.what();
    if (const auto pos = msg.find("syntax error"); pos != std::string::npos) msg = msg.substr(pos);
    throw ParseError("malformed JSON: " + msg, line, column);
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, std::string_view contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << contents;
}

namespace {

std::string context_key(std::span<const int> ctx) {
  std::string key;
  for (std::size_t i = 0; i < ctx.size(); ++i) {
    if (i) key += ',';
    key += std::to_string(ctx[i]);
  }
  return key;
}

const Json& field(const Json& j, const char* name) {
  if (!j.is_object()) throw ParseError("expected a JSON object");
  const auto it = j.find(name);
  if (it == j.end()) throw ParseError(std::string("missing \"") + name + "\" key");
  return *it;
}

std::vector<int> int_list(const Json& j, const char* name, std::size_t n, int min) {
  const Json& v = field(j, name);
  if (!v.is_array() || v.size() != n)
    throw ParseError(std::string("\"") + name + "\" must be an array of " + std::to_string(n) +
                     " integers");
  std::vector<int> out;
  for (const auto& x : v) {
    if (!x.is_number_integer() || x.get<long long>() < min)
      throw ParseError(std::string("\"") + name + "\" entries must be integers >= " +
                       std::to_string(min));
    out.push_back(x.get<int>());
  }
  return out;
}

}  // namespace

Json to_json(const Behavior& b) {
  const Scenario& s = b.scenario();
  Json j;
  j["parties"] = s.parties();
  j["settings"] = s.settings();
  j["outcomes"] = s.outcomes();
  Json table = Json::object();
  for (std::size_t c = 0; c < s.context_count(); ++c) {
    Json row = Json::array();
    for (std::size_t o = 0; o < s.outcome_count(); ++o) row.push_back(b.at(c, o));
    table[context_key(s.context(c))] = std::move(row);
  }
  j["table"] = std::move(table);
  return j;
}

Behavior behavior_from_json(const Json& j, double tol) {
  const Json& np = field(j, "parties");
  if (!np.is_number_integer() || np.get<long long>() < 1)
    throw ParseError("\"parties\" must be a positive integer");
  const auto n = static_cast<std::size_t>(np.get<long long>());
  auto settings = int_list(j, "settings", n, 1);
  auto outcomes = int_list(j, "outcomes", n, 1);
  Scenario s;
  try {
    s = Scenario(std::move(settings), std::move(outcomes));
  } catch (const StructuralError& e) {
    throw ParseError(std::string("bad scenario: ") + e.what());
  }
  const Json& table = field(j, "table");
  if (!table.is_object()) throw ParseError("\"table\" must be an object keyed by context");
  if (table.size() != s.context_count())
    throw ParseError("\"table\" has " + std::to_string(table.size()) + " contexts, expected " +
                     std::to_string(s.context_count()));
  std::vector<double> values(s.table_size(), 0.0);
  for (std::size_t c = 0; c < s.context_count(); ++c) {
    const std::string key = context_key(s.context(c));
    const auto it = table.find(key);
    if (it == table.end()) throw ParseError("\"table\" is missing context \"" + key + "\"");
    if (!it->is_array() || it->size() != s.outcome_count())
      throw ParseError("context \"" + key + "\" must list " + std::to_string(s.outcome_count()) +
                       " probabilities");
    for (std::size_t o = 0; o < s.outcome_count(); ++o) {
      const Json& v = (*it)[o];
      if (!v.is_number()) throw ParseError("context \"" + key + "\" has a non-numeric entry");
      const double p = v.get<double>();
      if (!(p >= -tol && p <= 1.0 + tol))
        throw ParseError("context \"" + key + "\" entry " + std::to_string(o) +
                         " is outside [0,1]");
      values[c * s.outcome_count() + o] = p;
    }
  }
  return Behavior(s, std::move(values));
}

Behavior parse_behavior(std::string_view text, double tol) {
  return behavior_from_json(parse_json(text), tol);
}

Behavior read_behavior(const std::string& path, double tol) {
  return parse_behavior(read_file(path), tol);
}

namespace {

Json complex_list(std::span<const Complex> v) {
  Json a = Json::array();
  for (const auto& z : v) a.push_back({z.real(), z.imag()});
  return a;
}

std::vector<Complex> complex_from(const Json& a) {
  if (!a.is_array()) throw ParseError("\"data\" must be an array of [re, im] pairs");
  std::vector<Complex> out;
  for (const auto& z : a) {
    if (!z.is_array() || z.size() != 2 || !z[0].is_number() || !z[1].is_number())
      throw ParseError("\"data\" entries must be [re, im] pairs");
    out.emplace_back(z[0].get<double>(), z[1].get<double>());
  }
  return out;
}

}  // namespace

Json to_json(const DensityMatrix& rho) {
  return {{"qubits", rho.qubits()}, {"kind", "density"}, {"data", complex_list(rho.matrix().data())}};
}

Json ket_to_json(std::span<const Complex> ket) {
  int q = 0;
  while ((std::size_t{1} << q) < ket.size()) ++q;
  return {{"qubits", q}, {"kind", "ket"}, {"data", complex_list(ket)}};
}

DensityMatrix state_from_json(const Json& j) {
  const Json& nq = field(j, "qubits");
  if (!nq.is_number_integer() || nq.get<int>() < 1 || nq.get<int>() > 10)
    throw ParseError("\"qubits\" must be an integer in [1, 10]");
  const std::size_t dim = std::size_t{1} << nq.get<int>();
  const Json& kind = field(j, "kind");
  auto data = complex_from(field(j, "data"));
  try {
    if (kind == "ket") {
      if (data.size() != dim) throw ParseError("ket has the wrong length");
      return DensityMatrix::pure(data);
    }
    if (kind == "density") {
      if (data.size() != dim * dim) throw ParseError("density matrix has the wrong size");
      return DensityMatrix(ComplexMatrix(dim, std::move(data)), 1e-9);
    }
  } catch (const std::invalid_argument& e) {
    throw ParseError(std::string("invalid state: ") + e.what());
  }
  throw ParseError("\"kind\" must be \"ket\" or \"density\"");
}

Json to_json(const ValidationReport& r) {
  Json j;
  j["valid"] = r.valid;
  j["max_normalization_deviation"] = r.max_normalization_deviation;
  Json pos = Json::array();
  for (const auto& f : r.positivity_failures)
    pos.push_back({{"context", f.context}, {"outcome", f.outcome}, {"value", f.value}});
  j["positivity_failures"] = std::move(pos);
  Json norm = Json::array();
  for (const auto& d : r.normalization_deviations)
    norm.push_back({{"context", d.context}, {"sum", d.sum}, {"deviation", d.deviation}});
  j["normalization_deviations"] = std::move(norm);
  return j;
}

Json to_json(const SignallingReport& r) {
  Json j;
  j["no_signalling"] = r.is_no_signalling;
  j["max_violation"] = r.max_violation;
  if (!r.is_no_signalling) {
    const auto& w = r.witness;
    j["witness"] = {{"discarded_party", w.discarded_party},
                    {"setting_a", w.setting_a},
                    {"setting_b", w.setting_b},
                    {"remaining_settings", w.remaining_settings},
                    {"remaining_outcomes", w.remaining_outcomes}};
  }
  return j;
}

Json to_json(const LocalDecomposition& d) {
  Json j;
  j["local"] = d.is_local();
  if (d.model) {
    Json terms = Json::array();
    for (std::size_t l = 0; l < d.model->strategies.size(); ++l)
      terms.push_back({{"weight", d.model->weights[l]},
                       {"strategy", d.model->strategies[l].response}});
    j["terms"] = std::move(terms);
    j["reconstruction_error"] = d.model->reconstruction_error;
  }
  if (d.not_local) j["score"] = d.not_local->score;
  return j;
}

Json to_json(const ExtensionCertificate& c) {
  return {{"clones", c.clones},
          {"mode", c.mode == ShareMode::NoSignalling ? "ns" : "unrestricted"},
          {"symmetry_residual", c.symmetry_residual},
          {"marginal_residual", c.marginal_residual},
          {"signalling", c.signalling},
          {"extension", to_json(c.extension)}};
}

Json to_json(const CheckReport& r) {
  Json j = {{"id", to_string(r.id)}, {"lhs", r.lhs},     {"bound", r.bound},
            {"slack", r.slack},      {"pass", r.pass}};
  if (!r.label.empty()) j["label"] = r.label;
  return j;
}

CheckReport check_report_from_json(const Json& j) {
  CheckReport r;
  const std::string id = field(j, "id").get<std::string>();
  bool found = false;
  for (auto cand : {InequalityId::NsTradeoff, InequalityId::TvTradeoff, InequalityId::Strengthened,
                    InequalityId::NaiveTriple, InequalityId::Triple, InequalityId::Cylinder,
                    InequalityId::PawlowskiBrukner, InequalityId::KeyCorollary})
    if (to_string(cand) == id) {
      r.id = cand;
      found = true;
    }
  if (!found) throw ParseError("unknown inequality id \"" + id + "\"");
  r.lhs = field(j, "lhs").get<double>();
  r.bound = field(j, "bound").get<double>();
  r.slack = field(j, "slack").get<double>();
  r.pass = field(j, "pass").get<bool>();
  if (j.contains("label")) r.label = j["label"].get<std::string>();
  return r;
}

Json to_json(const TripleReport& r) {
  Json cyl = Json::array();
  for (const auto& c : r.cylinders) cyl.push_back(to_json(c));
  return {{"triple", to_json(r.triple)}, {"naive", to_json(r.naive)}, {"cylinders", cyl}};
}

Json to_json(const TradeoffPoint& p) {
  Json j;
  for (std::size_t i = 0; i < p.values.size(); ++i) j[p.labels[i]] = p.values[i];
  if (p.sigma_y_a) j["sigma_y_a"] = *p.sigma_y_a;
  if (p.sigma_y_b) j["sigma_y_b"] = *p.sigma_y_b;
  if (p.sigma_y_c) j["sigma_y_c"] = *p.sigma_y_c;
  if (p.corr_ac) j["corr_ac"] = *p.corr_ac;
  return j;
}

Json to_json(const TangleReport& r) {
  return {{"pivot", r.pivot},       {"partners", r.partners}, {"pairwise", r.pairwise},
          {"cut", r.cut},           {"residual", r.residual}, {"pass", r.passes}};
}

TangleReport tangle_report_from_json(const Json& j) {
  TangleReport r;
  r.pivot = field(j, "pivot").get<int>();
  r.partners = field(j, "partners").get<std::vector<int>>();
  r.pairwise = field(j, "pairwise").get<std::vector<double>>();
  r.cut = field(j, "cut").get<double>();
  r.residual = field(j, "residual").get<double>();
  r.passes = field(j, "pass").get<bool>();
  return r;
}

Json to_json(const CgCandidate& c) {
  return {{"mu", c.mu},
          {"angles", c.angles},
          {"C_ab", c.c_ab},
          {"C_ac", c.c_ac},
          {"min", c.min_value()}};
}

Json to_json(const PbProbeReport& r) {
  Json pats = Json::array();
  for (const auto& p : r.patterns)
    pats.push_back({{"signs", p.signs}, {"value", p.value}, {"C", p.c}});
  return {{"local_bound", r.local_bound},
          {"sign_patterns", pats},
          {"max_abs_sum", r.max_abs_sum},
          {"abs_sum_check", to_json(r.abs_sum_check)},
          {"one_sided_max", r.one_sided_max},
          {"one_sided_bound", 3.0 * r.local_bound},
          {"t_star", r.t_star},
          {"t_star_C", {{"C_ab", r.t_star_c[0]}, {"C_ac", r.t_star_c[1]}, {"C_ad", r.t_star_c[2]}}},
          {"pair_bound", r.pair_bound},
          {"t_star_exceeds_pair_bound", r.t_star > r.pair_bound + 1e-9},
          {"abs_sum_argmax", to_json(r.abs_sum_argmax)},
          {"t_star_argmax", to_json(r.t_star_argmax)}};
}

}  // namespace monogamy::io
