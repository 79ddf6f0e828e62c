#include "pellet/sensitivity.hpp"

#include "pellet/csv.hpp"
#include "pellet/kernels/batch.hpp"
#include "pellet/parallel.hpp"
#include "pellet/pipeline.hpp"

namespace pellet {

namespace {

std::pair<double, double> sum_savings(const kernels::RecopColumns& cols) {
    double s_ec = 0.0, s_em = 0.0;
    for (std::size_t i = 0; i < cols.size(); ++i) {
        s_ec += cols.s_ec[i];
        s_em += cols.s_em[i];
    }
    return {s_ec, s_em};
}

}  // namespace

SensitivityGrid sweep(const Dataset& dataset, const ModelConfig& config, unsigned jobs) {
    config.validate();
    Dataset d = dataset;
    d.config = config;

    const auto energy = run_pipeline(d, {Stage::residue, jobs, std::nullopt});
    const std::size_t n = energy.countries.size();

    kernels::RecopColumns base;
    base.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        const auto& r = energy.countries[i];
        const auto& c = *d.find(r.country);
        base.pellet_energy[i] = r.energy.pellet_energy;
        base.pellet_lhv[i] = r.energy.weighted_lhv;
        for (auto f : kAllFuels) {
            base.fuel_price[f][i] = resolve(Field::price(f), c, d).value;
            base.consumption[f][i] = c.fuel_consumption[f];
        }
    }

    const auto& kernel = kernels::active_kernels();
    const ScoreWeights weights = score_weights(Scenario::A, 0.0);

    SensitivityGrid grid;
    grid.fossil_multipliers = config.fossil_multipliers;
    grid.pellet_prices = config.pellet_prices;
    const std::size_t np = grid.pellet_prices.size();
    grid.cells.resize(grid.fossil_multipliers.size() * np);

    parallel_for(grid.cells.size(), jobs, [&](std::size_t k) {
        const double m = grid.fossil_multipliers[k / np];
        const double price = grid.pellet_prices[k % np];
        kernels::RecopColumns cols = base;
        kernel.recop({d.fuels, d.pellet_ef, weights, m, price}, cols);
        const auto [s_ec, s_em] = sum_savings(cols);
        grid.cells[k] = {m, price, s_ec, s_em};
    });

    const auto priced = run_pipeline(d, {Stage::msp, jobs, std::nullopt});
    if (!priced.errors.empty()) {
        grid.baseline_note = std::to_string(priced.errors.size()) + " countries have no break-even price";
    } else {
        kernels::RecopColumns cols = base;
        for (std::size_t i = 0; i < n; ++i) cols.pellet_price[i] = priced.countries[i].msp->msp;
        kernel.recop({d.fuels, d.pellet_ef, weights, 1.0, std::nullopt}, cols);
        const auto [s_ec, s_em] = sum_savings(cols);
        grid.baseline = SensitivityCell{1.0, priced.global.mean_msp.value_or(0.0), s_ec, s_em};
    }
    return grid;
}

std::string sensitivity_wide_csv(const SensitivityGrid& grid) {
    std::vector<std::string> header{"fossil_multiplier"};
    for (double p : grid.pellet_prices) header.push_back("s_ec_at_" + csv::format_number(p));
    std::string out = csv::join_row(header);
    for (std::size_t m = 0; m < grid.fossil_multipliers.size(); ++m) {
        std::vector<std::string> row{csv::format_number(grid.fossil_multipliers[m])};
        for (std::size_t p = 0; p < grid.pellet_prices.size(); ++p) row.push_back(csv::format_number(grid.at(m, p).s_ec));
        out += csv::join_row(row);
    }
    return out;
}

std::string sensitivity_long_csv(const SensitivityGrid& grid) {
    std::string out = csv::join_row({"fossil_multiplier", "pellet_price_usd_per_t", "s_ec_usd_per_y", "s_em_kg_per_y"});
    for (const auto& c : grid.cells)
        out += csv::join_row({csv::format_number(c.multiplier), csv::format_number(c.pellet_price),
                              csv::format_number(c.s_ec), csv::format_number(c.s_em)});
    return out;
}

}  // namespace pellet
