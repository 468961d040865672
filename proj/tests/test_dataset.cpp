#include <doctest.h>

#include <cmath>
#include <numeric>
#include <random>
#include <sstream>

#include "collindiag/dataset.hpp"
#include "collindiag/errors.hpp"
#include "collindiag/numerics.hpp"
#include "oracles.hpp"
#include "theil.hpp"

using namespace collindiag;

namespace {

Dataset parse(const std::string& text) {
  std::istringstream in(text);
  return parse_csv(in);
}

std::string error_of(const std::string& text) {
  try {
    parse(text);
  } catch (const DataError& e) {
    return e.what();
  }
  return {};
}

double norm(const std::vector<double>& x) {
  return std::sqrt(std::inner_product(x.begin(), x.end(), x.begin(), 0.0));
}

}  // namespace

TEST_CASE("load_csv reads the bundled textile data") {
  const auto d = theil::load();
  CHECK(d.regressors.rows() == 17);
  CHECK(d.regressors.names() == std::vector<std::string>{"year", "income", "relprice", "twentys"});
  CHECK(d.dependent_name == "consume");
  REQUIRE(d.dependent.size() == 17);
  CHECK(d.dependent.front() == doctest::Approx(99.2));
  CHECK(d.dependent.back() == doctest::Approx(165.5));
  // row order preserved
  CHECK(d.regressors.column(0).front() == 1923);
  CHECK(d.regressors.column(0).back() == 1939);
}

TEST_CASE("parse_csv error paths") {
  CHECK(error_of("a,b\n") == "no observations");
  CHECK(error_of("") == "missing header row");

  const auto bad = error_of("a,b\n1,2\n3,4\n5,abc\n");
  CHECK(bad.find("row 3") != std::string::npos);
  CHECK(bad.find("'b'") != std::string::npos);

  CHECK(error_of("a,b\n1,2\n3\n").find("ragged row 2") != std::string::npos);
  CHECK(error_of("a,b\n1,nan\n").find("non-numeric") != std::string::npos);
  CHECK(error_of("a,a\n1,2\n").find("duplicate column") != std::string::npos);
  CHECK(error_of("a,\n1,2\n").find("empty column name") != std::string::npos);

  CHECK_THROWS_AS(load_csv(oracle::data_path("does-not-exist.csv"), "y"), DataError);
  CHECK_THROWS_WITH_AS(load_csv(oracle::data_path("theil.csv"), "nope"),
                       "unknown dependent column 'nope'", DataError);
}

TEST_CASE("parse_csv accepts CRLF, BOM, blank trailing lines and signed numbers") {
  const auto d = parse("\xEF\xBB\xBFx, y\r\n1.5,-2\r\n+3,4e1\r\n\r\n");
  CHECK(d.names() == std::vector<std::string>{"x", "y"});
  CHECK(d.rows() == 2);
  CHECK(d.values()(0, 1) == -2.0);
  CHECK(d.values()(1, 0) == 3.0);
  CHECK(d.values()(1, 1) == 40.0);
}

TEST_CASE("infer_roles") {
  const auto d = theil::load().regressors;
  const auto roles = infer_roles(d);
  CHECK(roles[1] == ColumnRole::Quantitative);  // income
  CHECK(roles[3] == ColumnRole::Dummy);         // twentys

  const auto ones = parse("c,x\n1,2\n1,5\n1,3\n");
  CHECK(infer_roles(ones)[0] == ColumnRole::Intercept);

  SUBCASE("overrides win") {
    const auto r = infer_roles(d, {{"twentys", ColumnRole::Quantitative}});
    CHECK(r[3] == ColumnRole::Quantitative);
  }
  SUBCASE("inconsistent overrides are rejected") {
    CHECK_THROWS_AS(infer_roles(d, {{"income", ColumnRole::Dummy}}), DataError);
    CHECK_THROWS_AS(infer_roles(d, {{"missing", ColumnRole::Dummy}}), DataError);
  }
  SUBCASE("constant non-one column is rejected") {
    CHECK_THROWS_WITH_AS(infer_roles(parse("c,x\n5,2\n5,5\n")),
                         "column 'c' is constant (zero variance)", DataError);
  }
  SUBCASE("single value in {0,1} is not a dummy") {
    CHECK_THROWS_AS(infer_roles(parse("z\n0\n0\n")), DataError);
  }
}

TEST_CASE("build_design") {
  const auto all = theil::load().regressors;

  SUBCASE("full design with intercept") {
    const auto x = theil::design();
    CHECK(x.cols() == 4);
    CHECK(x.has_intercept());
    CHECK(x.names() == std::vector<std::string>{"intercept", "income", "relprice", "twentys"});
    CHECK(x.column(0).values == std::vector<double>(17, 1.0));
  }
  SUBCASE("simple linear model") {
    const auto x = theil::design({"income"});
    CHECK(x.cols() == 2);
    CHECK(x.names() == std::vector<std::string>{"intercept", "income"});
  }
  SUBCASE("single column without intercept") {
    const auto d = all.select(std::vector<std::string>{"income"});
    const auto x = build_design(d, false, infer_roles(d));
    CHECK(x.cols() == 1);
    CHECK_FALSE(x.has_intercept());
  }
  SUBCASE("duplicate intercept") {
    const auto d = parse("one,x\n1,2\n1,5\n1,3\n");
    CHECK_THROWS_AS(build_design(d, true, infer_roles(d)), DataError);
    // Without the added intercept the user's column moves to the front.
    const auto x = build_design(parse("x,one\n2,1\n5,1\n3,1\n"), false,
                                std::vector{ColumnRole::Quantitative, ColumnRole::Intercept});
    CHECK(x.has_intercept());
    CHECK(x.column(0).name == "one");
  }
  SUBCASE("role count mismatch") {
    CHECK_THROWS_AS(build_design(all, true, std::vector{ColumnRole::Quantitative}), DataError);
  }
  SUBCASE("roles survive design construction") {
    const auto d = all.select(std::vector<std::string>{"income", "relprice", "twentys"});
    const auto roles = infer_roles(d);
    const auto x = build_design(d, false, roles);
    CHECK(x.roles() == roles);
    const auto xi = build_design(d, true, roles);
    const auto xr = xi.roles();
    CHECK(xr.front() == ColumnRole::Intercept);
    CHECK(std::vector<ColumnRole>(xr.begin() + 1, xr.end()) == roles);
  }
}

TEST_CASE("scale") {
  const auto x = theil::design();

  SUBCASE("unit length") {
    const auto u = scale(x, ScalingMode::UnitLength);
    for (double v : u.column(0).values) CHECK(v == doctest::Approx(1.0 / std::sqrt(17.0)));
    // twentys has 7 ones
    for (double v : u.column(3).values)
      CHECK((v == 0.0 || v == doctest::Approx(1.0 / std::sqrt(7.0))));
    for (const auto& c : u.columns()) CHECK(norm(c.values) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(u.roles() == x.roles());
  }
  SUBCASE("unit length is idempotent") {
    const auto once = scale(x, ScalingMode::UnitLength);
    const auto twice = scale(once, ScalingMode::UnitLength);
    for (std::size_t j = 0; j < x.cols(); ++j)
      for (std::size_t i = 0; i < x.rows(); ++i)
        CHECK(twice.column(j).values[i] == doctest::Approx(once.column(j).values[i]).epsilon(1e-15));
  }
  SUBCASE("centered unit length") {
    CHECK_THROWS_AS(scale(x, ScalingMode::CenteredUnitLength), DataError);
    const auto c = scale(x.without_intercept(), ScalingMode::CenteredUnitLength);
    for (const auto& col : c.columns()) {
      const double mean = std::accumulate(col.values.begin(), col.values.end(), 0.0) / 17.0;
      CHECK(std::abs(mean) < 1e-12);
      CHECK(std::abs(norm(col.values) - 1.0) < 1e-12);
    }
  }
  SUBCASE("raw is identity") {
    CHECK(scale(x, ScalingMode::Raw).column(1).values == x.column(1).values);
  }
}

TEST_CASE("centered cross-product equals the sample correlation matrix") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    const auto x = oracle::random_design(rng, 30, 4).without_intercept();
    const auto s = crossprod(scale(x, ScalingMode::CenteredUnitLength));
    for (std::size_t i = 0; i < x.cols(); ++i)
      for (std::size_t j = 0; j < x.cols(); ++j)
        CHECK(std::abs(s(i, j) - oracle::pearson(x.column(i).values, x.column(j).values)) < 1e-10);
  }
}
