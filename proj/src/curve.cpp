#include "abar/curve.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "json.hpp"

#include "abar/abar_plus.hpp"
#include "abar/errors.hpp"
#include "abar/format.hpp"

namespace abar {

const char* to_string(CurveQuantity q) {
  switch (q) {
    case CurveQuantity::pdf:
      return "pdf";
    case CurveQuantity::cdf:
      return "cdf";
    case CurveQuantity::survival:
      return "survival";
  }
  return "?";
}

CurveQuantity parse_curve_quantity(const std::string& text) {
  if (text == "pdf") return CurveQuantity::pdf;
  if (text == "cdf") return CurveQuantity::cdf;
  if (text == "survival") return CurveQuantity::survival;
  throw InputError("unknown curve quantity '" + text +
                   "' (expected pdf, cdf or survival)");
}

void CurveRequest::validate() const {
  if (!std::isfinite(y_min) || !std::isfinite(y_max) || y_min < 0.0 ||
      !(y_min < y_max)) {
    throw InputError("curve: requires finite 0 <= y_min < y_max");
  }
  if (points < 2) throw InputError("curve: points must be >= 2");
  if (quantities.empty()) {
    throw InputError("curve: at least one quantity is required");
  }
}

std::vector<double> linear_grid(double y_min, double y_max, std::size_t points) {
  std::vector<double> grid(points);
  const double span = y_max - y_min;
  const double last = static_cast<double>(points - 1);
  for (std::size_t i = 0; i < points; ++i) {
    grid[i] = y_min + span * (static_cast<double>(i) / last);
  }
  grid.back() = y_max;
  return grid;
}

namespace {

double evaluate(Family family, CurveQuantity q, const AbarParams& p, double y) {
  if (family == Family::abar) {
    switch (q) {
      case CurveQuantity::pdf:
        return pdf(p, y);
      case CurveQuantity::cdf:
        return cdf(p, y);
      case CurveQuantity::survival:
        return survival(p, y);
    }
  }
  switch (q) {
    case CurveQuantity::pdf:
      return plus_pdf(p, y);
    case CurveQuantity::cdf:
      return plus_cdf(p, y);
    case CurveQuantity::survival:
      return plus_survival(p, y);
  }
  return 0.0;
}

}  // namespace

DistributionCurve evaluate_curve(const CurveRequest& req) {
  req.validate();
  DistributionCurve curve;
  curve.y = linear_grid(req.y_min, req.y_max, req.points);
  for (CurveQuantity q : req.quantities) {
    curve.names.emplace_back(to_string(q));
    std::vector<double> column;
    column.reserve(curve.y.size());
    for (double y : curve.y) column.push_back(evaluate(req.family, q, req.params, y));
    curve.columns.push_back(std::move(column));
  }
  return curve;
}

std::string to_csv(const DistributionCurve& curve,
                   const std::vector<std::string>& comments) {
  std::ostringstream out;
  for (const auto& c : comments) out << "# " << c << "\n";
  out << "y";
  for (const auto& name : curve.names) out << "," << name;
  out << "\n";
  for (std::size_t i = 0; i < curve.y.size(); ++i) {
    out << format_shortest(curve.y[i]);
    for (const auto& column : curve.columns) {
      out << "," << format_shortest(column[i]);
    }
    out << "\n";
  }
  return out.str();
}

std::vector<std::string> describe(const CurveRequest& req) {
  std::ostringstream line;
  line << "family=" << to_string(req.family)
       << " a=" << format_shortest(req.params.a())
       << " sigma=" << format_shortest(req.params.sigma())
       << " y_min=" << format_shortest(req.y_min)
       << " y_max=" << format_shortest(req.y_max) << " points=" << req.points;
  return {line.str()};
}

const std::string& default_figure_recipes_json() {
  static const std::string text =
#include "figure_recipes.inc"
      ;
  return text;
}

std::vector<FigureRecipe> parse_figure_recipes(const std::string& json_text) {
  std::vector<FigureRecipe> recipes;
  try {
    const auto doc = nlohmann::json::parse(json_text);
    for (const auto& entry : doc.at("figures")) {
      FigureRecipe r;
      r.file = entry.at("file").get<std::string>();
      r.family = parse_family(entry.at("family").get<std::string>());
      r.fixed = entry.at("fixed").get<std::string>();
      r.fixed_value = entry.at("value").get<double>();
      r.sweep = entry.at("sweep").get<std::string>();
      r.sweep_values = entry.at("values").get<std::vector<double>>();
      r.points = entry.at("points").get<std::size_t>();
      const bool names_ok = (r.fixed == "a" && r.sweep == "sigma") ||
                            (r.fixed == "sigma" && r.sweep == "a");
      if (!names_ok || r.sweep_values.empty() || r.points < 2 ||
          r.file.empty() || r.file.find('/') != std::string::npos) {
        throw InputError("figure recipe '" + r.file + "' is malformed");
      }
      recipes.push_back(std::move(r));
    }
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("figure recipes: ") + e.what());
  }
  return recipes;
}

RenderedFigure render_figure(const FigureRecipe& recipe) {
  std::vector<AbarParams> members;
  double y_max = 0.0;
  for (double v : recipe.sweep_values) {
    const AbarParams p = recipe.fixed == "a" ? AbarParams(recipe.fixed_value, v)
                                             : AbarParams(v, recipe.fixed_value);
    members.push_back(p);
    y_max = std::max(y_max, p.a() + 12.0 * p.sigma());
  }
  if (recipe.family == Family::abar_plus) y_max *= y_max;

  RenderedFigure out;
  out.file = recipe.file;
  out.curve.y = linear_grid(0.0, y_max, recipe.points);
  for (std::size_t k = 0; k < members.size(); ++k) {
    out.curve.names.push_back("pdf_" + recipe.sweep + "_" +
                              format_shortest(recipe.sweep_values[k]));
    std::vector<double> column;
    column.reserve(out.curve.y.size());
    for (double y : out.curve.y) {
      column.push_back(evaluate(recipe.family, CurveQuantity::pdf, members[k], y));
    }
    out.curve.columns.push_back(std::move(column));
  }

  std::ostringstream sweep;
  sweep << "family=" << to_string(recipe.family) << " " << recipe.fixed << "="
        << format_shortest(recipe.fixed_value) << " sweep=" << recipe.sweep
        << ":";
  for (std::size_t k = 0; k < recipe.sweep_values.size(); ++k) {
    sweep << (k ? "," : "") << format_shortest(recipe.sweep_values[k]);
  }
  sweep << " points=" << recipe.points;
  out.csv = to_csv(out.curve, {"figure " + recipe.file, sweep.str(),
                               "sweep values are an artifact choice"});
  return out;
}

}  // namespace abar
