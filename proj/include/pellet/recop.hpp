#pragma once

#include <array>

#include "pellet/dataio.hpp"
#include "pellet/types.hpp"

namespace pellet {

inline constexpr double kMwhPerTj = 277.78;

/// $/t over MJ/kg gives $/GJ; times 1000 gives $/TJ.
inline double fuel_lcoe(double price_usd_per_t, double lhv_mj_per_kg) {
    return price_usd_per_t / (lhv_mj_per_kg * 1e-3);
}

/// kgCO2e/t over MJ/kg, to kgCO2e/TJ.
inline double emission_intensity(double ef_kg_per_t, double lhv_mj_per_kg) {
    return ef_kg_per_t / (lhv_mj_per_kg * 1e-3);
}

struct EnergyCarrier {
    double price = 0.0;               // $/t
    double lcoe = 0.0;                // $/TJ
    double lcoe_mwh = 0.0;            // $/MWh
    double emission_intensity = 0.0;  // kgCO2e/TJ
};

struct FuelEconomics {
    PerFuel<EnergyCarrier> fuels;
    EnergyCarrier pellet;
};

EnergyCarrier make_carrier(double price, double lhv, double ef);

FuelEconomics build_fuel_economics(const PerFuel<double>& fuel_prices, const PerFuel<FuelProperties>& props,
                                   double pellet_price, double pellet_lhv, double pellet_ef);

/// Linear score weights: score = cost_weight·Δlcoe + emission_weight·Δintensity.
struct ScoreWeights {
    double cost = 1.0;
    double emission = 0.0;
};

/// A: cost only. B: emissions only. C: cost plus carbon tax ($/tCO2e) on kg intensities.
ScoreWeights score_weights(Scenario scenario, double carbon_tax);

struct Ranking {
    std::array<FuelKind, 3> order{FuelKind::coal, FuelKind::natural_gas, FuelKind::oil};
    PerFuel<double> score{};  // per TJ replaced
};

/// Descending score; equal scores fall back to coal, natural gas, oil.
Ranking rank_fuels(const FuelEconomics& econ, Scenario scenario, double carbon_tax);
Ranking rank_fuels(const FuelEconomics& econ, const ScoreWeights& weights);

struct Allocation {
    PerFuel<double> allocated{};  // TJ/y
    double unused = 0.0;          // TJ/y
};

/// Greedy fill in rank order, regardless of score sign.
Allocation allocate(double pellet_energy, const PerFuel<double>& consumption, const Ranking& ranking);

struct Savings {
    double economic = 0.0;   // $/y, may be negative
    double emissions = 0.0;  // kgCO2e/y
};

Savings savings(const Allocation& allocation, const FuelEconomics& econ);

struct ReplacementPlan {
    Scenario scenario = Scenario::A;
    double carbon_tax = 0.0;
    Ranking ranking;
    Allocation allocation;
    PerFuel<double> replaced_fraction{};
    double replaced_fraction_overall = 0.0;
    double unused_pellet_energy = 0.0;
    double s_ec = 0.0;
    double s_em = 0.0;
};

ReplacementPlan plan_replacement(double pellet_energy, const PerFuel<double>& consumption, const FuelEconomics& econ,
                                 Scenario scenario, double carbon_tax);

}  // namespace pellet
