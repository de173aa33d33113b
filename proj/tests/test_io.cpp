#include <doctest.h>

#include <clocale>
#include <cmath>
#include <filesystem>
#include <fstream>

#include "qcause/error.hpp"
#include "qcause/io.hpp"
#include "qcause/samplers.hpp"

using namespace qcause;

TEST_CASE("number formatting") {
  CHECK(io::format_number(0.0) == "0");
  CHECK(io::format_number(-0.0) == "0");
  CHECK(io::format_number(0.5) == "0.5");
  CHECK(io::format_number(1.0 / 3.0) == "0.333333333333");
  CHECK(io::format_number(3 - 2 * std::sqrt(2.0)) == "0.171572875254");
  CHECK(io::format_number(1e-20) == "1e-20");
  CHECK(io::format_number(-1234567.891) == "-1234567.891");
  CHECK(io::csv_row({1.0, 0.25, -2.0}) == "1,0.25,-2");
}

TEST_CASE("formatting ignores the C locale") {
  const char* previous = std::setlocale(LC_NUMERIC, nullptr);
  const std::string saved = previous ? previous : "C";
  for (const char* name : {"de_DE.UTF-8", "fr_FR.UTF-8", "de_DE"}) {
    if (std::setlocale(LC_NUMERIC, name) != nullptr) {
      CHECK(io::format_number(0.5) == "0.5");
      break;
    }
  }
  std::setlocale(LC_NUMERIC, saved.c_str());
}

TEST_CASE("behavior JSON round trip") {
  Rng rng(61);
  const auto m = random_qubit_model(rng);
  const auto beh = behavior(m);
  const auto t = do_table(m);
  const auto back = io::behavior_from_json(io::json::parse(io::behavior_to_json(beh, t).dump()));
  CHECK(back.behavior == beh);
  REQUIRE(back.table.has_value());
  CHECK(*back.table == t);
  CHECK_FALSE(io::behavior_from_json(io::behavior_to_json(beh)).table.has_value());
}

TEST_CASE("model and Bell JSON round trips") {
  Rng rng(62);
  const auto m = random_qubit_model(rng);
  const auto back = io::model_from_json(io::json::parse(io::model_to_json(m).dump()));
  CHECK(back.rho == m.rho);
  CHECK(back.alice[1][0] == m.alice[1][0]);
  CHECK(back.bob[0][1] == m.bob[0][1]);
  CHECK(behavior(back) == behavior(m));

  const auto bell = bell_behavior(m);
  CHECK(io::bell_from_json(io::bell_to_json(bell)) == bell);
  CHECK(io::ns_vertices_to_json().size() == 24);
}

TEST_CASE("malformed input is a parse error") {
  auto expect_parse = [](const io::json& j) {
    try {
      (void)io::behavior_from_json(j);
      FAIL("accepted " << j.dump());
    } catch (const Error& e) {
      CHECK(e.code() == Errc::parse);
    }
  };
  expect_parse(io::json::object());
  expect_parse({{"pabx", {1, 2}}});
  expect_parse(io::json::parse(R"({"pabx": [[[0.25,0.25],[0.25,0.25]],[[0.25,"x"],[0.25,0.25]]]})"));
  expect_parse(io::json::parse(R"({"pabx": [[[0.25,0.25],[0.25,0.25]],[[0.25,0.25],[0.25]]]})"));
  CHECK_THROWS_AS(io::model_from_json(io::json::parse(R"({"dims": [2, 2]})")), Error);
}

TEST_CASE("construct output is accepted as a behavior file") {
  const auto beh = InstrumentalBehavior::deterministic_chain();
  DoTable t;
  t(0, 0) = t(1, 1) = 1.0;
  const io::json wrapped{{"model", io::json::object()}, {"behavior", io::behavior_to_json(beh, t)}};
  const auto back = io::behavior_from_json(wrapped);
  CHECK(back.behavior == beh);
  CHECK(back.table.has_value());
  CHECK_THROWS_AS(io::behavior_from_json(io::json{{"behavior", io::json::object()}}), Error);
}

TEST_CASE("behavior CSV") {
  const auto csv = io::behavior_csv(InstrumentalBehavior::deterministic_chain());
  CHECK(csv.rfind("a,b,x,p\n0,0,0,1\n0,0,1,0\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 9);
}

TEST_CASE("files") {
  const auto dir = std::filesystem::temp_directory_path();
  const auto path = dir / "qcause_io_test.json";
  io::write_text_file(path, R"({"pabx": [[[1,0],[0,0]],[[0,0],[0,1]]]})");
  CHECK(io::behavior_from_json(io::read_json_file(path)).behavior ==
        InstrumentalBehavior::deterministic_chain());
  std::filesystem::remove(path);

  try {
    (void)io::read_json_file(dir / "qcause_missing_file.json");
    FAIL("missing file accepted");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::io);
  }
  io::write_text_file(path, "{not json");
  try {
    (void)io::read_json_file(path);
    FAIL("bad JSON accepted");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::parse);
  }
  std::filesystem::remove(path);
  CHECK_THROWS_AS(io::write_text_file(dir / "no_such_dir" / "x.csv", "x"), Error);
}

TEST_CASE("golden separable state, k = 4, seed = 7") {
  const auto j = io::read_json_file(std::filesystem::path(QCAUSE_TEST_DATA_DIR) / "separable_k4_seed7.json");
  const auto golden = io::matrix_from_json(j["rho"]);
  const auto now = separable_sample(2, 2, 4, 7);
  CHECK(now.max_abs_diff(golden) < 1e-15);
  CHECK(check_density(golden).is_psd);
}
