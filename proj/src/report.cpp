#include "pellet/report.hpp"

#include <fstream>
#include <stdexcept>

#include <json.hpp>

#include "pellet/csv.hpp"

namespace pellet::report {

namespace {

using nlohmann::ordered_json;
using csv::format_number;

std::string_view basis_name(LhvBasis b) {
    switch (b) {
        case LhvBasis::final_residue: return "final";
        case LhvBasis::removable_residue: return "removable";
        case LhvBasis::unweighted: return "unweighted";
    }
    return "?";
}

std::string stage_name(Stage s) {
    switch (s) {
        case Stage::residue: return "residue";
        case Stage::msp: return "msp";
        case Stage::recop: return "recop";
    }
    return "?";
}

std::string fallbacks(const CountryReport& r) {
    std::string out;
    for (const auto& t : r.provenance) {
        if (t.source == Provenance::country) continue;
        if (!out.empty()) out += ';';
        out += t.field + '=' + std::string(to_string(t.source));
    }
    return out;
}

template <typename E, typename T, typename Fn>
ordered_json per_kind(const EnumArray<E, T>& values, Fn&& conv) {
    ordered_json j = ordered_json::object();
    for (std::size_t i = 0; i < EnumCount<E>::value; ++i) {
        const auto k = static_cast<E>(i);
        j[std::string(to_string(k))] = conv(values[k]);
    }
    return j;
}

template <typename E>
ordered_json per_kind(const EnumArray<E, double>& values) {
    return per_kind(values, [](double v) { return v; });
}

ordered_json carrier_json(const EnergyCarrier& c) {
    return {{"price_usd_per_t", c.price},
            {"lcoe_usd_per_tj", c.lcoe},
            {"lcoe_usd_per_mwh", c.lcoe_mwh},
            {"emission_intensity_kg_per_tj", c.emission_intensity}};
}

ordered_json country_json(const CountryReport& r) {
    ordered_json j;
    j["country"] = r.country;
    j["continent"] = r.continent;
    const auto& a = r.residue;
    ordered_json res;
    res["production_t"] = per_kind(r.production);
    res["cr_total_t"] = per_kind(a.cr_total);
    res["dmr"] = per_kind(a.dmr);
    res["cr_removable_dry_t"] = per_kind(a.cr_removable_dry);
    res["feed_bedding_use_t"] = a.feed_bedding_use;
    res["bioenergy_use_bagasse_t"] = a.bioenergy_use_bagasse;
    res["bioenergy_use_other_attributed_t"] = a.bioenergy_use_other_attributed;
    res["cr_final_t"] = a.cr_final;
    res["cr_final_by_crop_t"] = per_kind(a.cr_final_by_crop);
    res["use_saturated"] = a.use_saturated;
    j["residue"] = res;
    j["energy"] = {{"weighted_lhv_mj_per_kg", r.energy.weighted_lhv},
                   {"lhv_basis", basis_name(r.energy.lhv_basis)},
                   {"pellet_mass_t", r.energy.pellet_mass},
                   {"pellet_energy_tj", r.energy.pellet_energy}};
    if (r.cost) {
        const auto& c = *r.cost;
        const auto& o = c.opex_parts;
        j["cost"] = {{"epc_usd", c.epc},
                     {"direct_usd", c.direct},
                     {"indirect_usd", c.indirect},
                     {"misc_usd", c.misc},
                     {"tfc_usd", c.tfc},
                     {"working_capital_usd", c.working_capital},
                     {"startup_usd", c.startup},
                     {"capex_usd", c.capex},
                     {"opex",
                      {{"raw_material", o.raw_material},
                       {"labor", o.labor_all},
                       {"utilities", o.utilities},
                       {"maintenance", o.maintenance},
                       {"insurance_tax", o.insurance_tax},
                       {"additional", o.additional}}},
                     {"opex_usd_per_y", c.opex_total}};
    }
    if (r.clasp_inputs && r.msp) {
        const auto& in = *r.clasp_inputs;
        ordered_json m;
        m["discount_rate"] = in.discount_rate;
        m["tax_rate"] = in.tax_rate;
        m["years"] = in.years;
        m["quantity_t_per_y"] = in.quantity;
        m["depreciable_base_usd"] = in.tfc;
        m["msp_usd_per_t"] = r.msp->msp;
        m["msp_usd_per_tj"] = r.msp->msp_per_tj ? ordered_json(*r.msp->msp_per_tj) : ordered_json();
        m["npv_at_msp_usd"] = r.msp->npv_at_msp;
        ordered_json trace = ordered_json::array();
        for (const auto& y : r.msp->annual_trace)
            trace.push_back({{"year", y.year},
                             {"revenue", y.revenue},
                             {"opex", y.opex},
                             {"depreciation", y.depreciation},
                             {"tax", y.tax},
                             {"cash_flow", y.cash_flow},
                             {"discounted", y.discounted}});
        m["annual_trace"] = trace;
        j["msp"] = m;
    }
    if (r.plan && r.economics) {
        const auto& p = *r.plan;
        ordered_json rp;
        rp["scenario"] = to_string(p.scenario);
        rp["carbon_tax_usd_per_t"] = p.carbon_tax;
        ordered_json carriers = per_kind(r.economics->fuels, carrier_json);
        carriers["pellet"] = carrier_json(r.economics->pellet);
        rp["carriers"] = carriers;
        rp["fuel_consumption_tj"] = per_kind(*r.fuel_consumption);
        ordered_json order = ordered_json::array();
        for (auto f : p.ranking.order) order.push_back(to_string(f));
        rp["ranking"] = order;
        rp["score"] = per_kind(p.ranking.score);
        rp["allocated_tj"] = per_kind(p.allocation.allocated);
        rp["replaced_fraction"] = per_kind(p.replaced_fraction);
        rp["replaced_fraction_overall"] = p.replaced_fraction_overall;
        rp["unused_pellet_energy_tj"] = p.unused_pellet_energy;
        rp["s_ec_usd_per_y"] = p.s_ec;
        rp["s_em_kg_per_y"] = p.s_em;
        j["replacement"] = rp;
    }
    ordered_json prov = ordered_json::object();
    for (const auto& t : r.provenance) prov[t.field] = to_string(t.source);
    j["provenance"] = prov;
    return j;
}

std::string dump(const ordered_json& j) { return j.dump(2) + "\n"; }

}  // namespace

std::vector<std::string> countries_csv_columns(Stage stage) {
    std::vector<std::string> cols{"country", "continent"};
    for (auto c : kAllCrops) cols.push_back("production_" + std::string(to_string(c)) + "_t");
    for (auto c : kAllCrops) cols.push_back("cr_total_" + std::string(to_string(c)) + "_t");
    for (auto c : kAllCrops) cols.push_back("cr_removable_dry_" + std::string(to_string(c)) + "_t");
    cols.insert(cols.end(), {"feed_bedding_use_t", "bioenergy_use_bagasse_t", "bioenergy_use_other_attributed_t",
                             "cr_final_t", "use_saturated", "weighted_lhv_mj_per_kg", "lhv_basis", "pellet_mass_t",
                             "pellet_energy_tj"});
    if (stage >= Stage::msp)
        cols.insert(cols.end(), {"capex_usd", "opex_usd_per_y", "discount_rate", "tax_rate", "msp_usd_per_t",
                                 "msp_usd_per_tj", "npv_at_msp_usd"});
    if (stage >= Stage::recop) {
        cols.insert(cols.end(), {"scenario", "carbon_tax_usd_per_t", "rank_1", "rank_2", "rank_3"});
        for (auto f : kAllFuels) cols.push_back("lcoe_" + std::string(to_string(f)) + "_usd_per_tj");
        cols.push_back("lcoe_pellet_usd_per_tj");
        for (auto f : kAllFuels) cols.push_back("allocated_" + std::string(to_string(f)) + "_tj");
        cols.insert(cols.end(), {"unused_pellet_energy_tj", "replaced_fraction", "s_ec_usd_per_y", "s_em_kg_per_y"});
    }
    cols.push_back("fallbacks");
    return cols;
}

std::string countries_csv(const PipelineResult& result) {
    std::string out = csv::join_row(countries_csv_columns(result.stage));
    for (const auto& r : result.countries) {
        std::vector<std::string> row{r.country, r.continent};
        for (auto c : kAllCrops) row.push_back(format_number(r.production[c]));
        for (auto c : kAllCrops) row.push_back(format_number(r.residue.cr_total[c]));
        for (auto c : kAllCrops) row.push_back(format_number(r.residue.cr_removable_dry[c]));
        row.push_back(format_number(r.residue.feed_bedding_use));
        row.push_back(format_number(r.residue.bioenergy_use_bagasse));
        row.push_back(format_number(r.residue.bioenergy_use_other_attributed));
        row.push_back(format_number(r.residue.cr_final));
        row.push_back(r.residue.use_saturated ? "1" : "0");
        row.push_back(format_number(r.energy.weighted_lhv));
        row.emplace_back(basis_name(r.energy.lhv_basis));
        row.push_back(format_number(r.energy.pellet_mass));
        row.push_back(format_number(r.energy.pellet_energy));
        if (result.stage >= Stage::msp) {
            row.push_back(format_number(r.cost->capex));
            row.push_back(format_number(r.cost->opex_total));
            row.push_back(format_number(r.clasp_inputs->discount_rate));
            row.push_back(format_number(r.clasp_inputs->tax_rate));
            row.push_back(format_number(r.msp->msp));
            row.push_back(format_number(r.msp->msp_per_tj));
            row.push_back(format_number(r.msp->npv_at_msp));
        }
        if (result.stage >= Stage::recop) {
            const auto& p = *r.plan;
            row.emplace_back(to_string(p.scenario));
            row.push_back(format_number(p.carbon_tax));
            for (auto f : p.ranking.order) row.emplace_back(to_string(f));
            for (auto f : kAllFuels) row.push_back(format_number(r.economics->fuels[f].lcoe));
            row.push_back(format_number(r.economics->pellet.lcoe));
            for (auto f : kAllFuels) row.push_back(format_number(p.allocation.allocated[f]));
            row.push_back(format_number(p.unused_pellet_energy));
            row.push_back(format_number(p.replaced_fraction_overall));
            row.push_back(format_number(p.s_ec));
            row.push_back(format_number(p.s_em));
        }
        row.push_back(fallbacks(r));
        out += csv::join_row(row);
    }
    return out;
}

std::string countries_json(const PipelineResult& result) {
    ordered_json arr = ordered_json::array();
    for (const auto& r : result.countries) arr.push_back(country_json(r));
    return dump(arr);
}

std::string global_json(const PipelineResult& result) {
    const auto& g = result.global;
    ordered_json j;
    j["stage"] = stage_name(result.stage);
    j["countries"] = g.countries;
    j["errors"] = result.errors.size();
    j["production_t"] = g.production;
    j["cr_total_t"] = g.cr_total;
    j["cr_removable_dry_t"] = g.cr_removable_dry;
    j["current_uses_t"] = g.current_uses;
    j["cr_final_t"] = g.cr_final;
    j["pellet_energy_tj"] = g.pellet_energy;
    if (result.stage >= Stage::msp) {
        j["mean_msp_usd_per_t"] = g.mean_msp ? ordered_json(*g.mean_msp) : ordered_json();
        j["mean_msp_usd_per_tj"] = g.mean_msp_per_tj ? ordered_json(*g.mean_msp_per_tj) : ordered_json();
    }
    if (result.stage >= Stage::recop) {
        j["scenario"] = to_string(result.scenario);
        j["carbon_tax_usd_per_t"] = result.carbon_tax;
        j["s_ec_usd_per_y"] = g.s_ec;
        j["s_em_kg_per_y"] = g.s_em;
        j["fossil_consumption_tj"] = g.fossil_consumption;
        j["fossil_replaced_tj"] = g.fossil_replaced;
        j["replaced_fraction"] = g.replaced_fraction;
        j["rank_first_countries"] = per_kind(g.rank_first, [](int v) { return v; });
    }
    return dump(j);
}

std::string errors_txt(const PipelineResult& result) {
    std::string out;
    for (const auto& e : result.errors) out += e.country + ": " + e.message + "\n";
    return out;
}

std::string residue_long_csv(const PipelineResult& result) {
    std::string out = csv::join_row({"country", "crop", "production_t", "dmr", "cr_total_t", "cr_removable_dry_t",
                                     "cr_final_t"});
    for (const auto& r : result.countries)
        for (auto c : kAllCrops)
            out += csv::join_row({r.country, std::string(to_string(c)), format_number(r.production[c]),
                                  format_number(r.residue.dmr[c]), format_number(r.residue.cr_total[c]),
                                  format_number(r.residue.cr_removable_dry[c]),
                                  format_number(r.residue.cr_final_by_crop[c])});
    return out;
}

std::string replacement_long_csv(const PipelineResult& result) {
    std::string out = csv::join_row({"country", "fuel", "rank", "score", "lcoe_usd_per_tj", "consumption_tj",
                                     "allocated_tj", "replaced_fraction"});
    for (const auto& r : result.countries) {
        if (!r.plan) continue;
        const auto& p = *r.plan;
        for (std::size_t k = 0; k < p.ranking.order.size(); ++k) {
            const auto f = p.ranking.order[k];
            out += csv::join_row({r.country, std::string(to_string(f)), std::to_string(k + 1),
                                  format_number(p.ranking.score[f]), format_number(r.economics->fuels[f].lcoe),
                                  format_number((*r.fuel_consumption)[f]), format_number(p.allocation.allocated[f]),
                                  format_number(p.replaced_fraction[f])});
        }
    }
    return out;
}

std::string msp_long_csv(const PipelineResult& result) {
    std::string out = csv::join_row({"country", "continent", "capex_usd", "opex_usd_per_y", "msp_usd_per_t",
                                     "msp_usd_per_tj"});
    for (const auto& r : result.countries) {
        if (!r.msp) continue;
        out += csv::join_row({r.country, r.continent, format_number(r.cost->capex), format_number(r.cost->opex_total),
                              format_number(r.msp->msp), format_number(r.msp->msp_per_tj)});
    }
    return out;
}

std::string sensitivity_json(const SensitivityGrid& grid) {
    ordered_json j;
    j["fossil_multipliers"] = grid.fossil_multipliers;
    j["pellet_prices_usd_per_t"] = grid.pellet_prices;
    ordered_json cells = ordered_json::array();
    for (const auto& c : grid.cells)
        cells.push_back({{"fossil_multiplier", c.multiplier},
                         {"pellet_price_usd_per_t", c.pellet_price},
                         {"s_ec_usd_per_y", c.s_ec},
                         {"s_em_kg_per_y", c.s_em}});
    j["cells"] = cells;
    if (grid.baseline)
        j["baseline"] = {{"fossil_multiplier", grid.baseline->multiplier},
                         {"mean_msp_usd_per_t", grid.baseline->pellet_price},
                         {"s_ec_usd_per_y", grid.baseline->s_ec},
                         {"s_em_kg_per_y", grid.baseline->s_em}};
    else
        j["baseline"] = {{"unavailable", grid.baseline_note}};
    return dump(j);
}

void write_text(const std::filesystem::path& file, const std::string& text) {
    std::ofstream out(file, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + file.string());
    out << text;
    if (!out) throw std::runtime_error("write failed: " + file.string());
}

std::vector<std::string> write_pipeline(const PipelineResult& result, const std::filesystem::path& dir,
                                        Format format) {
    std::filesystem::create_directories(dir);
    std::vector<std::pair<std::string, std::string>> files;
    if (format == Format::csv) {
        files.emplace_back("countries.csv", countries_csv(result));
        files.emplace_back("residue_long.csv", residue_long_csv(result));
        if (result.stage >= Stage::msp) files.emplace_back("msp_long.csv", msp_long_csv(result));
        if (result.stage >= Stage::recop) files.emplace_back("replacement_long.csv", replacement_long_csv(result));
    } else {
        files.emplace_back("countries.json", countries_json(result));
    }
    files.emplace_back("global.json", global_json(result));
    files.emplace_back("errors.txt", errors_txt(result));

    std::vector<std::string> names;
    for (const auto& [name, text] : files) {
        write_text(dir / name, text);
        names.push_back(name);
    }
    return names;
}

std::vector<std::string> write_sensitivity(const SensitivityGrid& grid, const std::filesystem::path& dir,
                                           Format format) {
    std::filesystem::create_directories(dir);
    if (format == Format::json) {
        write_text(dir / "sensitivity.json", sensitivity_json(grid));
        return {"sensitivity.json"};
    }
    write_text(dir / "sensitivity.csv", sensitivity_wide_csv(grid));
    write_text(dir / "sensitivity_long.csv", sensitivity_long_csv(grid));
    return {"sensitivity.csv", "sensitivity_long.csv"};
}

}  // namespace pellet::report
