#pragma once

#include <stdexcept>

#include "pellet/dataio.hpp"

namespace pellet {

// Reference plant, 40,080 t/y.
namespace reference_plant {
inline constexpr double kEquipmentPurchase = 1'249'570.0;
inline constexpr double kDirectFactor = 3.25;       // of equipment
inline constexpr double kIndirectFactor = 0.22;     // of direct
inline constexpr double kMiscFactor = 0.10;         // of direct + indirect
inline constexpr double kWorkingCapital = 0.05;     // of TFC
inline constexpr double kStartup = 0.15;            // of TFC

inline constexpr double kRawMaterial = 482'600.0;
inline constexpr double kLabor = 812'800.0;
inline constexpr double kLaborOverhead = 558'800.0;
inline constexpr double kLaborSupervision = 152'400.0;
inline constexpr double kUtilities = 203'200.0;
inline constexpr double kMaintenance = 152'400.0;
inline constexpr double kInsuranceTax = 101'600.0;
inline constexpr double kAdditional = 76'200.0;
}  // namespace reference_plant

struct OpexBreakdown {
    double raw_material = 0.0;
    double labor_all = 0.0;
    double utilities = 0.0;
    double maintenance = 0.0;
    double insurance_tax = 0.0;
    double additional = 0.0;

    double total() const { return raw_material + labor_all + utilities + maintenance + insurance_tax + additional; }
};

struct CostEstimate {
    double epc = 0.0;
    double direct = 0.0;
    double indirect = 0.0;
    double misc = 0.0;
    double tfc = 0.0;
    double working_capital = 0.0;
    double startup = 0.0;
    double capex = 0.0;
    OpexBreakdown opex_parts;
    double opex_total = 0.0;
};

/// Capital side of the estimate. Throws std::domain_error for a non-positive index.
CostEstimate capex(double construction_index);

OpexBreakdown opex(double labor_index, double raw_index, double electricity_index, double construction_index);

struct ResolvedIndexes {
    Resolved labor, raw_material, construction, electricity;
};

ResolvedIndexes resolve_indexes(const CountryProfile& country, const Dataset& dataset);

CostEstimate estimate_costs(const ResolvedIndexes& idx);

}  // namespace pellet
