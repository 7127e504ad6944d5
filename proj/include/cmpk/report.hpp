#pragma once

#include <cstdint>
#include <string>

#include <json.hpp>

#include "cmpk/assignment.hpp"

namespace cmpk {

/// Fortran `Iw` edit descriptor: right-justified in `width` columns, or
/// `width` asterisks when the value does not fit.
std::string fortran_int(std::int64_t value, int width);

/// Tabulation report: one line per (level, order), a subtotal line per
/// level and the closing dimension line. With `debug_face_checks`, the
/// first member of each order on the first face is listed first.
std::string paper_report(const DofTable& table, bool debug_face_checks = false);

/// {params, groups: [{level, vertices, order, members, ordinals}], totals}
nlohmann::ordered_json table_to_json(const DofTable& table);

/// Rebuilds a table from table_to_json output. Throws std::invalid_argument
/// if the groups do not form a valid partition for the stated params.
DofTable table_from_json(const nlohmann::json& doc);

/// Header plus one row per multi-index in enumeration order.
std::string table_to_csv(const DofTable& table);

}  // namespace cmpk
