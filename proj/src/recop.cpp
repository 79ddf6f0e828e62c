#include "pellet/recop.hpp"

#include <algorithm>

namespace pellet {

EnergyCarrier make_carrier(double price, double lhv, double ef) {
    EnergyCarrier c;
    c.price = price;
    c.lcoe = fuel_lcoe(price, lhv);
    c.lcoe_mwh = c.lcoe / kMwhPerTj;
    c.emission_intensity = emission_intensity(ef, lhv);
    return c;
}

FuelEconomics build_fuel_economics(const PerFuel<double>& fuel_prices, const PerFuel<FuelProperties>& props,
                                   double pellet_price, double pellet_lhv, double pellet_ef) {
    FuelEconomics econ;
    for (auto f : kAllFuels) econ.fuels[f] = make_carrier(fuel_prices[f], props[f].lhv, props[f].ef);
    econ.pellet = make_carrier(pellet_price, pellet_lhv, pellet_ef);
    return econ;
}

ScoreWeights score_weights(Scenario scenario, double carbon_tax) {
    switch (scenario) {
        case Scenario::A: return {1.0, 0.0};
        case Scenario::B: return {0.0, 1.0};
        case Scenario::C: return {1.0, carbon_tax / 1000.0};  // $/t -> $/kg
    }
    return {1.0, 0.0};
}

Ranking rank_fuels(const FuelEconomics& econ, Scenario scenario, double carbon_tax) {
    return rank_fuels(econ, score_weights(scenario, carbon_tax));
}

Ranking rank_fuels(const FuelEconomics& econ, const ScoreWeights& w) {
    Ranking r;
    for (auto f : kAllFuels) {
        const auto& fuel = econ.fuels[f];
        const double cost_margin = fuel.lcoe - econ.pellet.lcoe;
        const double emission_margin = fuel.emission_intensity - econ.pellet.emission_intensity;
        r.score[f] = w.cost * cost_margin + w.emission * emission_margin;
    }
    std::stable_sort(r.order.begin(), r.order.end(), [&](FuelKind a, FuelKind b) {
        if (r.score[a] != r.score[b]) return r.score[a] > r.score[b];
        return canonical_rank(a) < canonical_rank(b);
    });
    return r;
}

Allocation allocate(double pellet_energy, const PerFuel<double>& consumption, const Ranking& ranking) {
    Allocation a;
    double remaining = pellet_energy;
    for (auto f : ranking.order) {
        const double take = std::min(remaining, consumption[f]);
        a.allocated[f] = take;
        remaining -= take;
    }
    a.unused = remaining;
    return a;
}

Savings savings(const Allocation& allocation, const FuelEconomics& econ) {
    Savings s;
    for (auto f : kAllFuels) {
        const double nrg = allocation.allocated[f];
        s.economic += nrg * (econ.fuels[f].lcoe - econ.pellet.lcoe);
        s.emissions += nrg * (econ.fuels[f].emission_intensity - econ.pellet.emission_intensity);
    }
    return s;
}

ReplacementPlan plan_replacement(double pellet_energy, const PerFuel<double>& consumption, const FuelEconomics& econ,
                                 Scenario scenario, double carbon_tax) {
    ReplacementPlan p;
    p.scenario = scenario;
    p.carbon_tax = carbon_tax;
    p.ranking = rank_fuels(econ, scenario, carbon_tax);
    p.allocation = allocate(pellet_energy, consumption, p.ranking);
    p.unused_pellet_energy = p.allocation.unused;
    double replaced = 0.0, consumed = 0.0;
    for (auto f : kAllFuels) {
        p.replaced_fraction[f] = consumption[f] > 0.0 ? p.allocation.allocated[f] / consumption[f] : 0.0;
        replaced += p.allocation.allocated[f];
        consumed += consumption[f];
    }
    p.replaced_fraction_overall = consumed > 0.0 ? replaced / consumed : 0.0;
    const auto s = savings(p.allocation, econ);
    p.s_ec = s.economic;
    p.s_em = s.emissions;
    return p;
}

}  // namespace pellet
