#include <doctest.h>

#include <set>
#include <sstream>

#include "qcause/acceptance.hpp"

using namespace qcause;

TEST_CASE("criteria registry") {
  const auto& all = acceptance_criteria();
  REQUIRE(all.size() == 10);
  std::set<std::string> names;
  for (std::size_t k = 0; k < all.size(); ++k) {
    CHECK(all[k].id == static_cast<int>(k) + 1);
    names.insert(all[k].name);
  }
  CHECK(names.size() == 10);
}

TEST_CASE("filter by tag, name and number") {
  AcceptanceOptions o;
  auto count = [&] {
    int n = 0;
    for (const auto& c : acceptance_criteria()) n += selected(c, o);
    return n;
  };
  CHECK(count() == 10);
  o.only = {"ns"};
  CHECK(count() == 2);
  for (const auto& c : acceptance_criteria())
    if (selected(c, o)) CHECK((c.id == 8 || c.id == 9));
  o.only = {"bell-cap", "1"};
  CHECK(count() == 2);
  o.only = {"nothing"};
  CHECK(count() == 0);
}

TEST_CASE("tampered reference constant fails the named criterion") {
  AcceptanceOptions o;
  o.only = {"1"};
  std::ostringstream out;
  auto r = run_acceptance(o, out);
  REQUIRE(r.size() == 1);
  CHECK(r[0].passed);

  o.overrides["optimal_violation"] = 0.17;
  out.str("");
  r = run_acceptance(o, out);
  REQUIRE(r.size() == 1);
  CHECK_FALSE(r[0].passed);
  CHECK(out.str().rfind("FAIL criterion 1 optimal-violation", 0) == 0);
}
