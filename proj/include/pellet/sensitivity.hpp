#pragma once

#include <optional>
#include <string>
#include <vector>

#include "pellet/dataio.hpp"

namespace pellet {

struct SensitivityCell {
    double multiplier = 1.0;
    double pellet_price = 0.0;  // $/t
    double s_ec = 0.0;          // $/y
    double s_em = 0.0;          // kgCO2e/y
};

struct SensitivityGrid {
    std::vector<double> fossil_multipliers;
    std::vector<double> pellet_prices;
    std::vector<SensitivityCell> cells;  // row-major: multiplier, then price

    /// Multiplier 1.0 with each country's own break-even price.
    std::optional<SensitivityCell> baseline;
    std::string baseline_note;  // why the baseline is absent, if it is

    const SensitivityCell& at(std::size_t m, std::size_t p) const { return cells[m * pellet_prices.size() + p]; }
};

/// Scenario A replacement for every grid cell. Fuel prices are scaled by the
/// multiplier and the pellet price replaces the break-even price for all countries.
/// Throws DataError when a fuel price cannot be resolved for some country.
SensitivityGrid sweep(const Dataset& dataset, const ModelConfig& config, unsigned jobs = 1);

/// Rows are multipliers, columns are pellet prices, values are s_ec.
std::string sensitivity_wide_csv(const SensitivityGrid& grid);
/// One row per cell with both savings.
std::string sensitivity_long_csv(const SensitivityGrid& grid);

}  // namespace pellet
