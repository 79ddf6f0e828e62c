#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pellet/clasp.hpp"
#include "pellet/cost.hpp"
#include "pellet/dataio.hpp"
#include "pellet/energy.hpp"
#include "pellet/recop.hpp"
#include "pellet/residue.hpp"

namespace pellet {

/// How far the per-country chain runs. Each stage includes the ones before it.
enum class Stage { residue = 1, msp = 2, recop = 3 };

struct RunOptions {
    Stage upto = Stage::recop;
    unsigned jobs = 1;
    std::optional<std::string> country;  // restrict to one country
};

struct ProvenanceTag {
    std::string field;
    Provenance source = Provenance::country;
};

struct CountryReport {
    std::string country;
    std::string continent;
    PerCrop<double> production{};  // t/y
    ResidueAssessment residue;
    EnergyPotential energy;
    std::optional<CostEstimate> cost;
    std::optional<ClaspInputs> clasp_inputs;
    std::optional<MspResult> msp;
    std::optional<PerFuel<double>> fuel_prices;  // resolved, $/t
    std::optional<PerFuel<double>> fuel_consumption;  // TJ/y
    std::optional<FuelEconomics> economics;
    std::optional<ReplacementPlan> plan;
    std::vector<ProvenanceTag> provenance;  // every resolved nullable field
};

struct CountryError {
    std::string country;
    std::string message;
};

struct GlobalReport {
    std::size_t countries = 0;
    double production = 0.0;       // t/y
    double cr_total = 0.0;         // t/y
    double cr_removable_dry = 0.0; // t/y
    double current_uses = 0.0;     // t/y
    double cr_final = 0.0;         // t/y
    double pellet_energy = 0.0;    // TJ/y
    // populated from the recop stage
    double s_ec = 0.0;             // $/y
    double s_em = 0.0;             // kgCO2e/y
    double fossil_consumption = 0.0;  // TJ/y, coal + oil + gas
    double fossil_replaced = 0.0;     // TJ/y
    double replaced_fraction = 0.0;
    PerFuel<int> rank_first{};
    // populated from the msp stage
    std::optional<double> mean_msp;         // $/t, unweighted country mean
    std::optional<double> mean_msp_per_tj;  // $/TJ
};

struct PipelineResult {
    Stage stage = Stage::recop;
    Scenario scenario = Scenario::A;
    double carbon_tax = 0.0;
    std::vector<CountryReport> countries;  // sorted by name
    std::vector<CountryError> errors;      // sorted by name
    GlobalReport global;
};

/// Evaluates every country independently; a failing country is reported in
/// `errors` and excluded from the totals. Output is identical for any job count.
PipelineResult run_pipeline(const Dataset& dataset, const RunOptions& options = {});

/// Financial inputs for one country under the dataset config.
ClaspInputs clasp_inputs_for(const CostEstimate& cost, double discount_rate, double tax_rate, const ModelConfig& cfg);

GlobalReport aggregate(const std::vector<CountryReport>& countries, Stage stage);

// ---------------------------------------------------------------------------
// Year-on-year growth of a production series.

struct GrowthStep {
    int from_year = 0;
    int to_year = 0;
    std::optional<double> growth;  // unset when the base year is zero
};

struct GrowthSummary {
    std::vector<GrowthStep> steps;
    double average = 0.0;  // over steps with a nonzero base
};

/// Series of (calendar year, tons). Years must be consecutive and ascending.
/// Throws std::invalid_argument for fewer than two points, gaps, or all-zero bases.
GrowthSummary yoy_growth(const std::vector<std::pair<int, double>>& series);

}  // namespace pellet
