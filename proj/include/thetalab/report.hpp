#pragma once

#include <string>

#include <json.hpp>

#include "thetalab/divisor.hpp"

namespace thetalab {

/// Fixed CSV column order for experiment rows.
std::string csv_header();
std::string csv_row(const CountReport& report, const BoundsVerdict& verdict);

nlohmann::json report_to_json(const CountReport& report, const BoundsVerdict& verdict);

}  // namespace thetalab
