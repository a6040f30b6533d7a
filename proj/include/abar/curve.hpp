#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "abar/distribution.hpp"
#include "abar/sampling.hpp"

namespace abar {

enum class CurveQuantity { pdf, cdf, survival };

const char* to_string(CurveQuantity q);
CurveQuantity parse_curve_quantity(const std::string& text);

struct CurveRequest {
  Family family = Family::abar;
  AbarParams params{0.0, 1.0};
  double y_min = 0.0;
  double y_max = 1.0;
  std::size_t points = 2;
  std::vector<CurveQuantity> quantities{CurveQuantity::pdf};

  /// Throws InputError unless 0 <= y_min < y_max, points >= 2 and at least
  /// one quantity is requested.
  void validate() const;
};

/// Tabulated curve: `y` strictly increasing, one column per quantity.
struct DistributionCurve {
  std::vector<double> y;
  std::vector<std::string> names;
  std::vector<std::vector<double>> columns;
};

/// Evenly spaced grid from y_min to y_max inclusive; the last point is
/// exactly y_max.
std::vector<double> linear_grid(double y_min, double y_max, std::size_t points);

DistributionCurve evaluate_curve(const CurveRequest& req);

/// CSV with `#` provenance comments, a header row and shortest round-trip
/// numbers.
std::string to_csv(const DistributionCurve& curve,
                   const std::vector<std::string>& comments);

/// Comment lines describing a single-parameter curve request.
std::vector<std::string> describe(const CurveRequest& req);

/// One figure of a parameter sweep: `fixed` names the parameter held at
/// `fixed_value` while `sweep` steps through `sweep_values`. The y range is
/// [0, max(a + 12 sigma)] over the sweep (squared for abar_plus).
struct FigureRecipe {
  std::string file;
  Family family = Family::abar;
  std::string fixed;  // "a" or "sigma"
  double fixed_value = 0.0;
  std::string sweep;  // the other one
  std::vector<double> sweep_values;
  std::size_t points = 2;
};

/// The bundled recipe set (same content as data/figure_recipes.json).
const std::string& default_figure_recipes_json();

std::vector<FigureRecipe> parse_figure_recipes(const std::string& json_text);

struct RenderedFigure {
  std::string file;
  std::string csv;
  DistributionCurve curve;
};

RenderedFigure render_figure(const FigureRecipe& recipe);

}  // namespace abar
