#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "abar/abar_plus.hpp"
#include "abar/curve.hpp"
#include "abar/errors.hpp"
#include "abar/format.hpp"

using namespace abar;

namespace {

double trapezoid(const std::vector<double>& x, const std::vector<double>& f) {
  double s = 0.0;
  for (std::size_t i = 1; i < x.size(); ++i) s += 0.5 * (x[i] - x[i - 1]) * (f[i] + f[i - 1]);
  return s;
}

std::size_t count_lines(const std::string& s) {
  std::size_t n = 0;
  for (char c : s) n += c == '\n';
  return n;
}

}  // namespace

TEST_CASE("linear grid") {
  const auto g = linear_grid(0.0, 1.0, 2);
  REQUIRE(g.size() == 2);
  CHECK(g[0] == 0.0);
  CHECK(g[1] == 1.0);
  const auto h = linear_grid(0.3, 17.1, 1001);
  CHECK(h.back() == 17.1);
  for (std::size_t i = 1; i < h.size(); ++i) CHECK(h[i] > h[i - 1]);
}

TEST_CASE("curve evaluation") {
  CurveRequest req;
  req.params = AbarParams(5.0, 1.0);
  req.y_min = 0.0;
  req.y_max = 17.0;
  req.points = 2;
  req.quantities = {CurveQuantity::pdf, CurveQuantity::cdf};
  auto curve = evaluate_curve(req);
  CHECK(curve.y.size() == 2);
  CHECK(curve.names == std::vector<std::string>{"pdf", "cdf"});
  CHECK(curve.columns[1][0] == 0.0);

  req.points = 4001;
  req.quantities = {CurveQuantity::pdf, CurveQuantity::cdf, CurveQuantity::survival};
  curve = evaluate_curve(req);
  const auto& pdf_col = curve.columns[0];
  const auto& cdf_col = curve.columns[1];
  for (std::size_t i = 0; i < curve.y.size(); ++i) {
    CHECK(pdf_col[i] >= 0.0);
    if (i > 0) CHECK(cdf_col[i] >= cdf_col[i - 1]);
    CHECK(std::fabs(cdf_col[i] + curve.columns[2][i] - 1.0) <= 1e-14);
  }
  CHECK(std::fabs(trapezoid(curve.y, pdf_col) - 1.0) <= 1e-3);

  req.family = Family::abar_plus;
  req.y_max = 17.0 * 17.0;
  req.quantities = {CurveQuantity::pdf};
  curve = evaluate_curve(req);
  CHECK(std::fabs(trapezoid(curve.y, curve.columns[0]) - 1.0) <= 1e-3);
  CHECK(curve.columns[0][100] == plus_pdf(req.params, curve.y[100]));

  const std::string csv = to_csv(curve, describe(req));
  CHECK(count_lines(csv) == describe(req).size() + 1 + 4001);
  CHECK(csv.find("y,pdf\n") != std::string::npos);
  CHECK(csv.front() == '#');
}

TEST_CASE("curve request validation") {
  CurveRequest req;
  req.y_min = 2.0;
  req.y_max = 1.0;
  CHECK_THROWS_AS(req.validate(), InputError);
  req.y_min = -1.0;
  req.y_max = 1.0;
  CHECK_THROWS_AS(req.validate(), InputError);
  req.y_min = 0.0;
  req.points = 1;
  CHECK_THROWS_AS(req.validate(), InputError);
  req.points = 10;
  req.quantities.clear();
  CHECK_THROWS_AS(req.validate(), InputError);
  req.quantities = {CurveQuantity::cdf};
  CHECK_NOTHROW(req.validate());
  CHECK(parse_curve_quantity("survival") == CurveQuantity::survival);
  CHECK_THROWS_AS(parse_curve_quantity("hazard"), InputError);
}

TEST_CASE("figure recipes") {
  const auto recipes = parse_figure_recipes(default_figure_recipes_json());
  REQUIRE(recipes.size() == 4);
  CHECK(recipes[0].file == "fig1_abar_a5.csv");
  CHECK(recipes[1].sweep_values == std::vector<double>{0, 1, 5, 10, 20});
  CHECK(recipes[2].family == Family::abar_plus);

  for (const auto& r : recipes) {
    CAPTURE(r.file);
    const auto fig = render_figure(r);
    CHECK(fig.file == r.file);
    REQUIRE(fig.curve.columns.size() == r.sweep_values.size());
    CHECK(fig.curve.names[0] == "pdf_" + r.sweep + "_" + format_shortest(r.sweep_values[0]));
    CHECK(fig.curve.y.size() == r.points);
    for (const auto& column : fig.curve.columns) {
      CHECK(std::fabs(trapezoid(fig.curve.y, column) - 1.0) <= 1e-3);
    }
    CHECK(render_figure(r).csv == fig.csv);
  }

  CHECK_THROWS_AS(parse_figure_recipes("{"), InputError);
  CHECK_THROWS_AS(parse_figure_recipes(R"({"figures": [{"file": "x.csv"}]})"), InputError);
  CHECK_THROWS_AS(
      parse_figure_recipes(R"({"figures": [{"file": "x.csv", "family": "abar", "fixed": "a",
        "value": 1, "sweep": "a", "values": [1], "points": 10}]})"),
      InputError);
}

TEST_CASE("number formatting") {
  CHECK(format_shortest(0.1) == "0.1");
  CHECK(format_shortest(5.0) == "5");
  CHECK(format_shortest(1e-300) == "1e-300");
  for (double v : {0.1, 1.0 / 3.0, 5.798081084195270, 1e-308, 123456789.125,
                   std::numeric_limits<double>::denorm_min()}) {
    double back = 0.0;
    REQUIRE(parse_double(format_shortest(v), back));
    CHECK(back == v);
  }
  double out = 0.0;
  CHECK(parse_double("2.5", out));
  CHECK(out == 2.5);
  CHECK_FALSE(parse_double("", out));
  CHECK_FALSE(parse_double("2.5x", out));
  CHECK_FALSE(parse_double("abc", out));
}
