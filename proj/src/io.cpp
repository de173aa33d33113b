#include "qcause/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "qcause/error.hpp"

namespace qcause::io {

std::string format_number(double v) {
  if (v == 0.0) return "0";  // also folds -0
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 12);
  return std::string(buf, res.ptr);
}

std::string csv_row(const std::vector<double>& values) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i > 0) out += ',';
    out += format_number(values[i]);
  }
  return out;
}

namespace {

[[noreturn]] void parse_error(const std::string& what) { throw Error(Errc::parse, what); }

double number(const json& j, const std::string& where) {
  if (!j.is_number()) parse_error(where + ": expected a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) parse_error(where + ": non-finite value");
  return v;
}

const json& array_of(const json& j, std::size_t n, const std::string& where) {
  if (!j.is_array() || j.size() != n) {
    parse_error(where + ": expected an array of length " + std::to_string(n));
  }
  return j;
}

std::string idx(const std::string& base, std::initializer_list<int> ks) {
  std::string s = base;
  for (int k : ks) s += "[" + std::to_string(k) + "]";
  return s;
}

}  // namespace

json behavior_to_json(const InstrumentalBehavior& beh) {
  json pabx = json::array();
  for (int a = 0; a < 2; ++a) {
    json row = json::array();
    for (int b = 0; b < 2; ++b) row.push_back({beh(a, b, 0), beh(a, b, 1)});
    pabx.push_back(row);
  }
  return {{"pabx", pabx}};
}

json behavior_to_json(const InstrumentalBehavior& beh, const DoTable& table) {
  auto j = behavior_to_json(beh);
  j["do"] = do_table_to_json(table);
  return j;
}

BehaviorFile behavior_from_json(const json& j) {
  // Output of `construct` nests the behavior next to the model.
  if (j.is_object() && !j.contains("pabx") && j.contains("behavior")) return behavior_from_json(j["behavior"]);
  if (!j.is_object() || !j.contains("pabx")) parse_error("behavior: missing key \"pabx\"");
  BehaviorFile out;
  const auto& p = array_of(j["pabx"], 2, "pabx");
  for (int a = 0; a < 2; ++a) {
    array_of(p[a], 2, idx("pabx", {a}));
    for (int b = 0; b < 2; ++b) {
      array_of(p[a][b], 2, idx("pabx", {a, b}));
      for (int x = 0; x < 2; ++x) out.behavior(a, b, x) = number(p[a][b][x], idx("pabx", {a, b, x}));
    }
  }
  if (j.contains("do")) out.table = do_table_from_json(j["do"]);
  return out;
}

json do_table_to_json(const DoTable& t) {
  return json::array({{t(0, 0), t(0, 1)}, {t(1, 0), t(1, 1)}});
}

DoTable do_table_from_json(const json& j) {
  DoTable t;
  array_of(j, 2, "do");
  for (int b = 0; b < 2; ++b) {
    array_of(j[b], 2, idx("do", {b}));
    for (int a = 0; a < 2; ++a) t(b, a) = number(j[b][a], idx("do", {b, a}));
  }
  return t;
}

json bell_to_json(const BellBehavior& bell) {
  json p = json::array();
  for (int a = 0; a < 2; ++a) {
    json pa = json::array();
    for (int b = 0; b < 2; ++b) {
      json pb = json::array();
      for (int x = 0; x < 2; ++x) pb.push_back({bell(a, b, x, 0), bell(a, b, x, 1)});
      pa.push_back(pb);
    }
    p.push_back(pa);
  }
  return {{"pabxy", p}};
}

BellBehavior bell_from_json(const json& j) {
  if (!j.is_object() || !j.contains("pabxy")) parse_error("bell: missing key \"pabxy\"");
  BellBehavior bell;
  const auto& p = array_of(j["pabxy"], 2, "pabxy");
  for (int a = 0; a < 2; ++a) {
    array_of(p[a], 2, idx("pabxy", {a}));
    for (int b = 0; b < 2; ++b) {
      array_of(p[a][b], 2, idx("pabxy", {a, b}));
      for (int x = 0; x < 2; ++x) {
        array_of(p[a][b][x], 2, idx("pabxy", {a, b, x}));
        for (int y = 0; y < 2; ++y)
          bell(a, b, x, y) = number(p[a][b][x][y], idx("pabxy", {a, b, x, y}));
      }
    }
  }
  return bell;
}

json matrix_to_json(const ComplexMatrix& m) {
  json rows = json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back({m(r, c).real(), m(r, c).imag()});
    rows.push_back(row);
  }
  return rows;
}

ComplexMatrix matrix_from_json(const json& j) {
  if (!j.is_array() || j.empty() || !j[0].is_array() || j[0].empty()) {
    parse_error("matrix: expected a non-empty array of rows");
  }
  const std::size_t rows = j.size(), cols = j[0].size();
  ComplexMatrix m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    if (!j[r].is_array() || j[r].size() != cols) parse_error("matrix: ragged rows");
    for (std::size_t c = 0; c < cols; ++c) {
      const auto& e = j[r][c];
      if (!e.is_array() || e.size() != 2) parse_error("matrix: entries must be [re, im] pairs");
      m(r, c) = cplx(number(e[0], "matrix entry"), number(e[1], "matrix entry"));
    }
  }
  return m;
}

json model_to_json(const QuantumInstrumentModel& m) {
  json alice = json::array(), bob = json::array();
  for (int i = 0; i < 2; ++i) {
    alice.push_back({matrix_to_json(m.alice[i][0]), matrix_to_json(m.alice[i][1])});
    bob.push_back({matrix_to_json(m.bob[i][0]), matrix_to_json(m.bob[i][1])});
  }
  return {{"dims", {m.dim_a, m.dim_b}}, {"rho", matrix_to_json(m.rho)}, {"alice", alice}, {"bob", bob}};
}

QuantumInstrumentModel model_from_json(const json& j) {
  if (!j.is_object()) parse_error("model: expected an object");
  for (const char* key : {"dims", "rho", "alice", "bob"})
    if (!j.contains(key)) parse_error(std::string("model: missing key \"") + key + "\"");
  QuantumInstrumentModel m;
  const auto& dims = array_of(j["dims"], 2, "dims");
  for (int k = 0; k < 2; ++k)
    if (!dims[k].is_number_unsigned() || dims[k].get<std::size_t>() == 0) {
      parse_error("dims: expected positive integers");
    }
  m.dim_a = dims[0].get<std::size_t>();
  m.dim_b = dims[1].get<std::size_t>();
  m.rho = matrix_from_json(j["rho"]);
  const auto& alice = array_of(j["alice"], 2, "alice");
  const auto& bob = array_of(j["bob"], 2, "bob");
  for (int i = 0; i < 2; ++i) {
    array_of(alice[i], 2, idx("alice", {i}));
    array_of(bob[i], 2, idx("bob", {i}));
    for (int k = 0; k < 2; ++k) {
      m.alice[i][k] = matrix_from_json(alice[i][k]);
      m.bob[i][k] = matrix_from_json(bob[i][k]);
    }
  }
  return m;
}

json report_to_json(const BoundReport& r) {
  return {
      {"classical_six", r.classical_six},
      {"classical_max", r.classical_max},
      {"quantum", r.quantum},
      {"nonsignaling", r.nonsignaling},
      {"classical_max_clamped", r.classical_max_clamped},
      {"quantum_clamped", r.quantum_clamped},
      {"nonsignaling_clamped", r.nonsignaling_clamped},
      {"instrumental_slack", r.instrumental_slack},
  };
}

json interval_to_json(const AceInterval& iv) {
  if (!iv.feasible) return {{"feasible", false}};
  return {{"feasible", true},      {"delta_min", iv.delta_min}, {"delta_max", iv.delta_max},
          {"min_ace", iv.min_ace}, {"max_ace", iv.max_ace}};
}

json ns_vertices_to_json() {
  json out = json::array();
  for (const auto& v : ns_vertices()) {
    auto j = bell_to_json(v.bell);
    j["kind"] = v.kind == NSVertex::Kind::local ? "local" : "pr_box";
    out.push_back(std::move(j));
  }
  return out;
}

std::string behavior_csv(const InstrumentalBehavior& beh) {
  std::string out = "a,b,x,p\n";
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      for (int x = 0; x < 2; ++x)
        out += std::to_string(a) + "," + std::to_string(b) + "," + std::to_string(x) + "," +
               format_number(beh(a, b, x)) + "\n";
  return out;
}

json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::io, "cannot open " + path.string());
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw Error(Errc::parse, path.string() + ": " + e.what());
  }
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(Errc::io, "cannot write " + path.string());
  out << text;
  if (!out) throw Error(Errc::io, "write failed for " + path.string());
}

}  // namespace qcause::io
