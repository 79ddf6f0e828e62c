#include "pellet/pipeline.hpp"

#include <algorithm>
#include <stdexcept>

#include "pellet/kernels/batch.hpp"
#include "pellet/parallel.hpp"

namespace pellet {

namespace {

void tag(CountryReport& r, const Field& field, Provenance source) {
    r.provenance.push_back({field_name(field), source});
}

double resolve_tagged(CountryReport& r, const Field& field, const CountryProfile& c, const Dataset& d) {
    const auto v = resolve(field, c, d);
    tag(r, field, v.source);
    return v.value;
}

void run_financials(CountryReport& r, const CountryProfile& c, const Dataset& d, Stage upto) {
    const auto& cfg = d.config;
    const auto idx = resolve_indexes(c, d);
    tag(r, Field::of(FieldKind::pli_labor), idx.labor.source);
    tag(r, Field::of(FieldKind::pli_raw_material), idx.raw_material.source);
    tag(r, Field::of(FieldKind::pli_construction), idx.construction.source);
    tag(r, Field::of(FieldKind::pli_electricity), idx.electricity.source);
    r.cost = estimate_costs(idx);

    const double rate = resolve_tagged(r, Field::of(FieldKind::discount_rate), c, d);
    const double tax = resolve_tagged(r, Field::of(FieldKind::tax_rate), c, d);
    r.clasp_inputs = clasp_inputs_for(*r.cost, rate, tax, cfg);
    r.msp = solve_msp(*r.clasp_inputs);
    r.msp->msp_per_tj = per_tj(r.msp->msp, r.energy.weighted_lhv);

    if (upto < Stage::recop) return;
    PerFuel<double> prices;
    for (auto f : kAllFuels) prices[f] = resolve_tagged(r, Field::price(f), c, d);
    r.fuel_prices = prices;
    r.fuel_consumption = c.fuel_consumption;
    r.economics = build_fuel_economics(prices, d.fuels, r.msp->msp, r.energy.weighted_lhv, d.pellet_ef);
    r.plan = plan_replacement(r.energy.pellet_energy, c.fuel_consumption, *r.economics, cfg.scenario, cfg.carbon_tax);
}

}  // namespace

ClaspInputs clasp_inputs_for(const CostEstimate& cost, double discount_rate, double tax_rate, const ModelConfig& cfg) {
    ClaspInputs in;
    in.capex = cost.capex;
    in.opex = cost.opex_total;
    in.quantity = cfg.plant_capacity;
    in.years = cfg.horizon_years;
    in.discount_rate = discount_rate;
    in.tax_rate = tax_rate;
    in.salvage_rate = cfg.salvage_rate;
    in.tfc = cost.capex * cfg.tfc_capex_ratio;
    in.target_npv = cfg.target_npv;
    return in;
}

PipelineResult run_pipeline(const Dataset& d, const RunOptions& opt) {
    PipelineResult out;
    out.stage = opt.upto;
    out.scenario = d.config.scenario;
    out.carbon_tax = d.config.carbon_tax;

    std::vector<const CountryProfile*> selected;
    for (const auto& c : d.countries)
        if (!opt.country || c.name == *opt.country) selected.push_back(&c);
    if (opt.country && selected.empty()) out.errors.push_back({*opt.country, "country not found in dataset"});
    std::sort(selected.begin(), selected.end(),
              [](const CountryProfile* a, const CountryProfile* b) { return a->name < b->name; });

    const std::size_t n = selected.size();
    std::vector<CountryReport> reports(n);

    kernels::ResidueColumns cols;
    cols.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        const auto& c = *selected[i];
        auto& r = reports[i];
        r.country = c.name;
        r.continent = c.continent;
        r.production = c.production;
        for (auto crop : kAllCrops) {
            cols.production[crop][i] = c.production[crop];
            const auto dmr = resolve(Field::dmr(crop), c, d);
            cols.dmr[crop][i] = dmr.value;
            r.residue.dmr[crop] = dmr.value;
            r.residue.dmr_source[crop] = dmr.source;
            tag(r, Field::dmr(crop), dmr.source);
        }
        for (auto a : kAllAnimals) cols.livestock[a][i] = c.livestock[a];
        cols.bagasse[i] = c.bagasse_bioenergy;
        cols.other[i] = c.other_residue_bioenergy;
    }
    const kernels::ResidueParams params{d.crops, d.livestock_rates, d.config.pellet_efficiency};
    kernels::active_kernels().residue(params, cols);

    for (std::size_t i = 0; i < n; ++i) {
        auto& a = reports[i].residue;
        for (auto crop : kAllCrops) {
            a.cr_total[crop] = cols.cr_total[crop][i];
            a.cr_removable_dry[crop] = cols.removable[crop][i];
            a.cr_final_by_crop[crop] = cols.final_by_crop[crop][i];
        }
        a.feed_bedding_use = cols.feed[i];
        a.bioenergy_use_bagasse = cols.bagasse[i];
        a.bioenergy_use_other_attributed = cols.attributed_other[i];
        a.cr_final = cols.cr_final[i];
        a.use_saturated = cols.saturated[i] != 0;
        auto& e = reports[i].energy;
        e.weighted_lhv = cols.weighted_lhv[i];
        e.pellet_mass = cols.pellet_mass[i];
        e.pellet_energy = cols.pellet_energy[i];
        e.lhv_basis = static_cast<LhvBasis>(cols.lhv_basis[i]);
    }

    std::vector<std::optional<std::string>> failures(n);
    if (opt.upto >= Stage::msp) {
        parallel_for(n, opt.jobs, [&](std::size_t i) {
            try {
                run_financials(reports[i], *selected[i], d, opt.upto);
            } catch (const std::exception& e) {
                failures[i] = e.what();
            }
        });
    }

    for (std::size_t i = 0; i < n; ++i) {
        if (failures[i]) out.errors.push_back({reports[i].country, *failures[i]});
        else out.countries.push_back(std::move(reports[i]));
    }
    std::stable_sort(out.errors.begin(), out.errors.end(),
                     [](const CountryError& a, const CountryError& b) { return a.country < b.country; });
    out.global = aggregate(out.countries, opt.upto);
    return out;
}

GlobalReport aggregate(const std::vector<CountryReport>& countries, Stage stage) {
    GlobalReport g;
    g.countries = countries.size();
    double msp_sum = 0.0, msp_tj_sum = 0.0;
    for (const auto& r : countries) {
        for (auto c : kAllCrops) {
            g.production += r.production[c];
            g.cr_total += r.residue.cr_total[c];
            g.cr_removable_dry += r.residue.cr_removable_dry[c];
        }
        g.current_uses += r.residue.current_uses();
        g.cr_final += r.residue.cr_final;
        g.pellet_energy += r.energy.pellet_energy;
        if (stage >= Stage::msp && r.msp) {
            msp_sum += r.msp->msp;
            msp_tj_sum += r.msp->msp_per_tj.value_or(0.0);
        }
        if (stage >= Stage::recop && r.plan) {
            g.s_ec += r.plan->s_ec;
            g.s_em += r.plan->s_em;
            for (auto f : kAllFuels) {
                g.fossil_replaced += r.plan->allocation.allocated[f];
                g.fossil_consumption += (*r.fuel_consumption)[f];
            }
            g.rank_first[r.plan->ranking.order[0]] += 1;
        }
    }
    if (stage >= Stage::msp && !countries.empty()) {
        g.mean_msp = msp_sum / static_cast<double>(countries.size());
        g.mean_msp_per_tj = msp_tj_sum / static_cast<double>(countries.size());
    }
    if (g.fossil_consumption > 0.0) g.replaced_fraction = g.fossil_replaced / g.fossil_consumption;
    return g;
}

GrowthSummary yoy_growth(const std::vector<std::pair<int, double>>& series) {
    if (series.size() < 2) throw std::invalid_argument("growth needs at least two years");
    GrowthSummary s;
    double sum = 0.0;
    int counted = 0;
    for (std::size_t i = 0; i + 1 < series.size(); ++i) {
        const auto [y0, v0] = series[i];
        const auto [y1, v1] = series[i + 1];
        if (y1 != y0 + 1) throw std::invalid_argument("years must be consecutive: " + std::to_string(y0) + " -> " + std::to_string(y1));
        if (v0 < 0.0 || v1 < 0.0) throw std::invalid_argument("production must be >= 0");
        GrowthStep step{y0, y1, std::nullopt};
        if (v0 > 0.0) {
            step.growth = (v1 - v0) / v0;
            sum += *step.growth;
            ++counted;
        }
        s.steps.push_back(step);
    }
    if (counted == 0) throw std::invalid_argument("every base year is zero");
    s.average = sum / counted;
    return s;
}

}  // namespace pellet
