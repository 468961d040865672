#include "collindiag/cli.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <filesystem>

#include <CLI11.hpp>

#include "collindiag/dataset.hpp"
#include "collindiag/diagnose.hpp"
#include "collindiag/errors.hpp"
#include "collindiag/render.hpp"

namespace collindiag::cli {

Environment Environment::from_process() {
  Environment env;
  if (const char* f = std::getenv("COLLINDIAG_FORMAT"); f && *f) env.default_format = f;
  return env;
}

namespace {

struct AnalyzeOptions {
  std::string file;
  std::string dependent;
  std::vector<std::string> regressors;
  std::vector<std::string> roles;
  bool no_intercept = false;
  bool legacy = false;
  std::string format;
  ThresholdConfig thresholds;
};

bool iequals(std::string_view a, std::string_view b) {
  return a.size() == b.size() &&
         std::equal(a.begin(), a.end(), b.begin(), [](char x, char y) {
           return std::tolower(static_cast<unsigned char>(x)) ==
                  std::tolower(static_cast<unsigned char>(y));
         });
}

RoleOverrides parse_overrides(const std::vector<std::string>& specs) {
  RoleOverrides out;
  for (const auto& spec : specs) {
    const auto eq = spec.find('=');
    const auto role = eq == std::string::npos ? std::nullopt
                                              : parse_role(std::string_view(spec).substr(eq + 1));
    if (!role || *role == ColumnRole::Intercept || eq == 0)
      throw CLI::ValidationError("--role", "expected name=dummy|quantitative, got '" + spec + "'");
    out[spec.substr(0, eq)] = *role;
  }
  return out;
}

int analyze(const AnalyzeOptions& opts, const Environment& env, std::ostream& out) {
  const auto loaded = load_csv(opts.file, opts.dependent);

  std::vector<std::string> regressors = opts.regressors;
  if (regressors.empty()) {
    // A "year" column is an observation label, not a regressor, unless named.
    for (const auto& name : loaded.regressors.names())
      if (!iequals(name, "year")) regressors.push_back(name);
    if (regressors.empty()) throw DataError("no regressor columns left after excluding 'year'");
  }
  for (const auto& name : regressors)
    if (name == opts.dependent)
      throw DataError("dependent column '" + name + "' cannot also be a regressor");
  const Dataset data = loaded.regressors.select(regressors);

  const auto roles = infer_roles(data, parse_overrides(opts.roles));
  const DesignMatrix x = build_design(data, !opts.no_intercept, roles);

  DiagnoseOptions dopts;
  dopts.dataset_id = std::filesystem::path(opts.file).filename().string();
  dopts.legacy_dummies = opts.legacy;
  dopts.dependent_name = loaded.dependent_name;
  const auto report =
      diagnose(x, std::span<const double>(loaded.dependent), opts.thresholds, dopts);

  std::string format = opts.format;
  if (format.empty()) format = env.default_format.value_or("text");
  const auto parsed = parse_format(format);
  if (!parsed)
    throw CLI::ValidationError("--format", "unknown format '" + format + "' (text|json)");
  out << render(report, *parsed);
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
        const Environment& env) {
  CLI::App app{"Collinearity diagnostics for linear regression designs", "collindiag"};
  app.require_subcommand(1);

  AnalyzeOptions opts;
  const ThresholdConfig defaults;
  auto* cmd = app.add_subcommand("analyze", "Diagnose multicollinearity in a CSV dataset");
  cmd->add_option("file", opts.file, "CSV file with a header row")->required();
  cmd->add_option("--dependent", opts.dependent, "Name of the dependent column")->required();
  cmd->add_option("--regressors", opts.regressors,
                  "Comma-separated regressor columns (default: all but the dependent and 'year')")
      ->delimiter(',');
  cmd->add_option("--role", opts.roles, "Override a column role: name=dummy|quantitative");
  cmd->add_flag("--no-intercept", opts.no_intercept, "Do not add an intercept column");
  cmd->add_flag("--include-dummies-in-legacy-measures", opts.legacy,
                "Admit dummy columns into correlation and VIF (compatibility mode)");
  cmd->add_option("--format", opts.format, "Output format: text or json")
      ->check(CLI::IsMember({"text", "json"}));
  cmd->add_option("--cn-threshold", opts.thresholds.cn_problematic,
                  "Condition index treated as problematic")
      ->capture_default_str();
  cmd->add_option("--vif-threshold", opts.thresholds.vif, "VIF threshold")
      ->capture_default_str();
  cmd->add_option("--corr-threshold", opts.thresholds.corr, "Absolute correlation threshold")
      ->capture_default_str();
  cmd->add_option("--cv-threshold", opts.thresholds.cv, "Coefficient of variation threshold")
      ->capture_default_str();
  cmd->add_option("--vdp-threshold", opts.thresholds.vdp,
                  "Variance decomposition proportion threshold")
      ->capture_default_str();
  cmd->add_option("--dummy-threshold", opts.thresholds.dummy_proportion,
                  "Proportion of ones treated as problematic for a single dummy regressor")
      ->capture_default_str();

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
    opts.thresholds.cn_moderate = std::min(defaults.cn_moderate, opts.thresholds.cn_problematic);
    opts.thresholds.validate();
    return analyze(opts, env, out);
  } catch (const CLI::Success& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kUsage;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const DataError& e) {
    err << "data error: " << e.what() << "\n";
    return kDataError;
  } catch (const NumericalError& e) {
    err << "numerical error: " << e.what() << "\n";
    return kNumericalError;
  }
}

}  // namespace collindiag::cli
