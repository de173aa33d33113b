#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "qcause/bounds.hpp"
#include "qcause/polytopes.hpp"
#include "qcause/quantum.hpp"
#include "qcause/scenario.hpp"

namespace qcause::io {

using json = nlohmann::json;

/// printf("%.12g")-style text with a '.' decimal point,
/// independent of the global locale.
std::string format_number(double v);

/// Joins values with ',' using format_number.
std::string csv_row(const std::vector<double>& values);

struct BehaviorFile {
  InstrumentalBehavior behavior;
  std::optional<DoTable> table;
};

// Parsing checks shape and finiteness only and throws Error(Errc::parse);
// probability constraints are left to validate() so callers can report them.

/// {"pabx": [a][b][x], "do": [b][a] (optional)}
json behavior_to_json(const InstrumentalBehavior& beh);
json behavior_to_json(const InstrumentalBehavior& beh, const DoTable& table);
BehaviorFile behavior_from_json(const json& j);

/// [b][a]
json do_table_to_json(const DoTable& table);
DoTable do_table_from_json(const json& j);

/// {"pabxy": [a][b][x][y]}
json bell_to_json(const BellBehavior& bell);
BellBehavior bell_from_json(const json& j);

/// {"dims": [dA, dB], "rho": rows of [re, im], "alice": [x][a], "bob": [a][b]}
json matrix_to_json(const ComplexMatrix& m);
ComplexMatrix matrix_from_json(const json& j);
json model_to_json(const QuantumInstrumentModel& model);
QuantumInstrumentModel model_from_json(const json& j);

json report_to_json(const BoundReport& report);
json interval_to_json(const AceInterval& interval);
json ns_vertices_to_json();

/// Header "a,b,x,p" then one row per entry in (a, b, x) order.
std::string behavior_csv(const InstrumentalBehavior& beh);

json read_json_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, const std::string& text);

}  // namespace qcause::io
