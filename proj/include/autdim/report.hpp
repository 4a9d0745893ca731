#pragma once

#include <string>
#include <variant>
#include <vector>

#include "json.hpp"

#include "autdim/dim_estimator.hpp"
#include "autdim/domain.hpp"
#include "autdim/estimates.hpp"
#include "autdim/gallery.hpp"
#include "autdim/metric.hpp"

namespace autdim {

using Json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

/// Pretty JSON with every floating-point number printed as %.17g; non-finite
/// values become the strings "inf", "-inf", "nan".
[[nodiscard]] std::string dump_json(const Json& j);

/// %.17g, with inf/nan spelled out.
[[nodiscard]] std::string fmt17(double x);

[[nodiscard]] Json to_json(const CxPoint& p);
[[nodiscard]] Json to_json(const DomainSpec& d);
[[nodiscard]] Json to_json(const MetricBounds& b);
[[nodiscard]] Json to_json(const LemmaReport& r);
[[nodiscard]] Json to_json(const DimReport& r);
[[nodiscard]] Json to_json(const OrbitReport& r);
[[nodiscard]] Json to_json(const ConvergenceReport& r);
[[nodiscard]] Json to_json(const SemicontinuityTable& t);

/// A rectangular table of numbers and labels.
struct Table {
    using Cell = std::variant<double, std::string>;
    std::vector<std::string> header;
    std::vector<std::vector<Cell>> rows;
};

[[nodiscard]] std::string to_csv(const Table& t);

/// Polyline chart of every numeric column against column `x`. Rows with a
/// non-numeric x are skipped. `log_y` plots log10 of positive values.
[[nodiscard]] std::string to_svg(const Table& t, std::size_t x, const std::string& title, bool log_y = false);

}  // namespace autdim
