#include <cstring>
#include <string>

#include "doctest.h"
#include "fixtures.hpp"
#include "prn/prn.h"

namespace {
std::string take(char* s) {
  std::string out = s ? s : "";
  prn_string_free(s);
  return out;
}
} // namespace

TEST_CASE("C API: model info and unfolding") {
  prn_model* m = nullptr;
  REQUIRE(prn_model_load(fixtures::model_path("running_example.prn").c_str(), &m) == PRN_OK);
  prn_model_info info{};
  REQUIRE(prn_model_info_get(m, &info) == PRN_OK);
  CHECK(info.nodes == 3);
  CHECK(info.influences == 4);
  CHECK(info.parameters == 11);
  CHECK(info.parametrisations == 6912);
  CHECK(info.constraints == 8);

  char* text = nullptr;
  REQUIRE(prn_model_describe(m, &text) == PRN_OK);
  CHECK(take(text).find("parametrisations 6912") != std::string::npos);

  prn_prefix* p = nullptr;
  REQUIRE(prn_unfold(m, nullptr, &p) == PRN_OK);
  prn_prefix_stats st{};
  REQUIRE(prn_prefix_stats_get(p, &st) == PRN_OK);
  CHECK(st.complete == 1);
  CHECK(st.events <= st.events_with_cutoffs);
  size_t n = 0;
  REQUIRE(prn_prefix_reachable_count(p, &n) == PRN_OK);
  CHECK(n == 12);
  char* json = nullptr;
  REQUIRE(prn_prefix_report(p, 1, 0, 1, &json) == PRN_OK);
  std::string j = take(json);
  CHECK(j.find("\"reachable_states\": 12") != std::string::npos);
  CHECK(j.find("runtime_ms") == std::string::npos);
  char* states = nullptr;
  REQUIRE(prn_prefix_reachable_states(p, &states) == PRN_OK);
  CHECK(take(states).rfind("000\n", 0) == 0);
  prn_prefix_free(p);

  char* report = nullptr;
  CHECK(prn_verify_model(m, &report) == PRN_OK);
  CHECK(take(report).find("verified") != std::string::npos);
  prn_model_free(m);
}

TEST_CASE("C API: status codes") {
  prn_model* m = nullptr;
  CHECK(prn_model_load("/nonexistent/model.prn", &m) == PRN_INPUT_ERROR);
  CHECK(m == nullptr);
  CHECK(std::strlen(prn_last_error()) > 0);

  CHECK(prn_model_parse("node a 1\nedge a -> b\n", "bad", &m) == PRN_INPUT_ERROR);
  CHECK(std::string(prn_last_error()).find("line 2") != std::string::npos);
  CHECK(prn_model_parse(nullptr, "x", &m) == PRN_INPUT_ERROR);

  REQUIRE(prn_model_parse("node a 2\nedge a -> a sign=- observable\n", "loop", &m) == PRN_OK);
  prn_unfold_options opts{1, 0, 0};
  prn_prefix* p = nullptr;
  CHECK(prn_unfold(m, &opts, &p) == PRN_RESOURCE_LIMIT);
  REQUIRE(p != nullptr);
  prn_prefix_stats st{};
  prn_prefix_stats_get(p, &st);
  CHECK(st.complete == 0);
  prn_prefix_free(p);
  prn_model_free(m);

  char* report = nullptr;
  CHECK(prn_verify_random(1, 8, &report) == PRN_OK);
  CHECK(take(report).find("8/8 trials passed") != std::string::npos);
}
