#pragma once

#include "haptolab/grid.hpp"

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>

namespace haptolab {

// Decimal rendering with 17 significant digits (lossless for doubles).
std::string format_real(double value);

struct Snapshot {
    std::string name;
    double time = 0.0;
    ScalarField field;
};

// Grid snapshot CSV: a '#'-prefixed header carrying the field name, grid
// geometry and time, then one comma-separated line per grid row (j = 0 first).
void write_snapshot(std::ostream& out, const ScalarField& field, std::string_view name, double time);
void write_snapshot(const std::filesystem::path& path, const ScalarField& field, std::string_view name, double time);

Snapshot read_snapshot(std::istream& in);
Snapshot read_snapshot(const std::filesystem::path& path);

}  // namespace haptolab
