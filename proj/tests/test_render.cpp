#include <doctest.h>

#include <fstream>
#include <sstream>

#include "collindiag/render.hpp"
#include "oracles.hpp"
#include "theil.hpp"

using namespace collindiag;

namespace {

DiagnosticsReport theil_report(std::vector<std::string> regressors = {"income", "relprice",
                                                                      "twentys"},
                               bool legacy = false) {
  const auto y = theil::consume();
  DiagnoseOptions opts;
  opts.dataset_id = "theil.csv";
  opts.dependent_name = "consume";
  opts.legacy_dummies = legacy;
  return diagnose(theil::design(regressors), std::span<const double>(y), {}, opts);
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace

TEST_CASE("json report fields") {
  const auto text = render(theil_report(), ReportFormat::Json);
  const auto doc = nlohmann::ordered_json::parse(text);
  CHECK(std::abs(doc["condition_number_with_intercept"].get<double>() - 53.3967) < 5e-3);
  CHECK(doc["verdict"]["kind"] == "non_essential");
  CHECK(doc["verdict"]["implicated"][0] == nlohmann::json::array({"intercept", "income"}));
  CHECK(doc["vif"]["entries"][2]["vif"].is_null());
  CHECK(doc["slm"].is_null());
  CHECK(doc["not_applicable"]["slm"].is_string());
  CHECK(doc["design"]["columns"][3]["role"] == "dummy");
  CHECK(doc["belsley"]["vdp"].size() == 4);
}

TEST_CASE("text report") {
  const auto full = render(theil_report(), ReportFormat::Text);
  CHECK(full.find("with intercept:    53.3967") != std::string::npos);
  CHECK(full.find("implicated: {intercept, income}") != std::string::npos);
  CHECK(full.find("not applicable (dummy column)") != std::string::npos);

  const auto none = render(theil_report({"relprice"}), ReportFormat::Text);
  CHECK(none.find("No problematic multicollinearity detected") != std::string::npos);
  CHECK(none.find("Simple linear model: intercept + relprice") != std::string::npos);
}

TEST_CASE("rendering is deterministic and json round-trips") {
  for (const auto& regs : std::vector<std::vector<std::string>>{
           {"income", "relprice", "twentys"}, {"income"}, {"twentys"}, {"relprice", "twentys"}}) {
    for (bool legacy : {false, true}) {
      const auto report = theil_report(regs, legacy);
      for (auto format : {ReportFormat::Text, ReportFormat::Json})
        CHECK(render(report, format) == render(theil_report(regs, legacy), format));

      const auto json = render(report, ReportFormat::Json);
      const auto back = report_from_json(nlohmann::ordered_json::parse(json));
      CHECK(render(back, ReportFormat::Json) == json);
      CHECK(render(back, ReportFormat::Text) == render(report, ReportFormat::Text));
    }
  }
}

TEST_CASE("json output matches the frozen golden file") {
  CHECK(render(theil_report(), ReportFormat::Json) ==
        slurp(std::string(COLLINDIAG_TEST_DIR) + "/golden/theil_full.json"));
  CHECK(render(theil_report({"income"}), ReportFormat::Json) ==
        slurp(std::string(COLLINDIAG_TEST_DIR) + "/golden/theil_income.json"));
}

TEST_CASE("malformed json is rejected") {
  auto doc = nlohmann::ordered_json::parse(render(theil_report(), ReportFormat::Json));
  doc["verdict"]["kind"] = "sometimes";
  CHECK_THROWS(report_from_json(doc));
  doc = nlohmann::ordered_json::parse(render(theil_report(), ReportFormat::Json));
  doc.erase("stewart");
  CHECK_THROWS(report_from_json(doc));
}

TEST_CASE("format names") {
  CHECK(parse_format("text") == ReportFormat::Text);
  CHECK(parse_format("json") == ReportFormat::Json);
  CHECK_FALSE(parse_format("xml").has_value());
}
