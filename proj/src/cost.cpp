#include "pellet/cost.hpp"

#include <string>

namespace pellet {

namespace {

void require_positive(double v, const char* name) {
    if (!(v > 0.0)) throw std::domain_error(std::string(name) + " index must be > 0");
}

}  // namespace

CostEstimate capex(double construction_index) {
    using namespace reference_plant;
    require_positive(construction_index, "construction");
    CostEstimate c;
    c.epc = kEquipmentPurchase * construction_index;
    c.direct = kDirectFactor * c.epc;
    c.indirect = kIndirectFactor * c.direct;
    c.misc = kMiscFactor * (c.direct + c.indirect);
    c.tfc = c.direct + c.indirect + c.misc;
    c.working_capital = kWorkingCapital * c.tfc;
    c.startup = kStartup * c.tfc;
    c.capex = c.tfc + c.working_capital + c.startup;
    return c;
}

OpexBreakdown opex(double labor, double raw, double electricity, double construction) {
    using namespace reference_plant;
    require_positive(labor, "labor");
    require_positive(raw, "raw material");
    require_positive(electricity, "electricity");
    require_positive(construction, "construction");
    OpexBreakdown o;
    o.raw_material = kRawMaterial * raw;
    // overhead and supervision follow the labor index too
    o.labor_all = (kLabor + kLaborOverhead + kLaborSupervision) * labor;
    o.utilities = kUtilities * electricity;
    o.maintenance = kMaintenance * construction;
    o.insurance_tax = kInsuranceTax;
    o.additional = kAdditional;
    return o;
}

ResolvedIndexes resolve_indexes(const CountryProfile& country, const Dataset& dataset) {
    return {resolve(Field::of(FieldKind::pli_labor), country, dataset),
            resolve(Field::of(FieldKind::pli_raw_material), country, dataset),
            resolve(Field::of(FieldKind::pli_construction), country, dataset),
            resolve(Field::of(FieldKind::pli_electricity), country, dataset)};
}

CostEstimate estimate_costs(const ResolvedIndexes& idx) {
    auto c = capex(idx.construction.value);
    c.opex_parts = opex(idx.labor.value, idx.raw_material.value, idx.electricity.value, idx.construction.value);
    c.opex_total = c.opex_parts.total();
    return c;
}

}  // namespace pellet
