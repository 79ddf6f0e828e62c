#include "pellet/dataio.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <set>

#include <json.hpp>

#include "pellet/csv.hpp"

namespace pellet {

namespace {

using Kind = DataError::Kind;

const std::vector<std::string> kCountryColumns{
    "country",         "continent",       "prod_maize_t",       "prod_rice_t",
    "prod_sugarcane_t", "prod_wheat_t",   "dmr_maize",          "dmr_rice",
    "dmr_sugarcane",   "dmr_wheat",       "cattle",             "horses",
    "sheep",           "swine",           "bagasse_bioenergy_t", "other_bioenergy_t",
    "pli_labor",       "pli_raw",         "pli_construction",   "pli_electricity",
    "discount_rate",   "tax_rate",        "price_coal_usd_t",   "price_oil_usd_t",
    "price_gas_usd_t", "cons_coal_tj",    "cons_oil_tj",        "cons_gas_tj",
};
const std::vector<std::string> kCropColumns{"crop", "rtp", "srr", "dmr_world", "lhv_mj_per_kg"};
const std::vector<std::string> kFuelColumns{"fuel", "lhv_mj_per_kg", "ef_kgco2e_per_t"};

const char* price_column(FuelKind f) {
    switch (f) {
        case FuelKind::coal: return "price_coal_usd_t";
        case FuelKind::oil: return "price_oil_usd_t";
        case FuelKind::natural_gas: return "price_gas_usd_t";
    }
    return "";
}

const char* consumption_column(FuelKind f) {
    switch (f) {
        case FuelKind::coal: return "cons_coal_tj";
        case FuelKind::oil: return "cons_oil_tj";
        case FuelKind::natural_gas: return "cons_gas_tj";
    }
    return "";
}

/// Row accessor with column lookup by name and located error messages.
class RowReader {
public:
    RowReader(std::string_view source, const csv::Table& table, const std::vector<std::string>& expected)
        : source_(source) {
        std::set<std::string> seen;
        for (std::size_t i = 0; i < table.header.size(); ++i) {
            const auto& h = table.header[i];
            if (std::find(expected.begin(), expected.end(), h) == expected.end())
                fail(Kind::schema, 1, "unknown column '" + h + "'");
            if (!seen.insert(h).second) fail(Kind::schema, 1, "duplicate column '" + h + "'");
            index_[h] = i;
        }
        for (const auto& e : expected)
            if (!index_.count(e)) fail(Kind::schema, 1, "missing column '" + e + "'");
        width_ = table.header.size();
    }

    void bind(const std::vector<std::string>& row, int line) {
        if (row.size() != width_) {
            fail(Kind::schema, line,
                 "expected " + std::to_string(width_) + " fields, got " + std::to_string(row.size()));
        }
        row_ = &row;
        line_ = line;
    }

    std::string text(const std::string& col) const { return (*row_)[index_.at(col)]; }

    std::optional<double> number(const std::string& col) const {
        try {
            auto v = csv::parse_number(text(col));
            if (v && !std::isfinite(*v)) fail(Kind::schema, line_, "non-finite value in '" + col + "'");
            return v;
        } catch (const std::invalid_argument& e) {
            fail(Kind::schema, line_, "column '" + col + "': " + e.what());
        }
    }

    /// Absent quantities are real zeros.
    double quantity(const std::string& col) const {
        const auto v = number(col).value_or(0.0);
        if (v < 0.0) fail(Kind::negative_quantity, line_, "negative value in '" + col + "'");
        return v;
    }

    std::optional<double> fraction(const std::string& col, bool allow_zero = true) const {
        const auto v = number(col);
        if (v && (*v > 1.0 || *v < 0.0 || (!allow_zero && *v == 0.0)))
            fail(Kind::schema, line_, "'" + col + "' out of range: " + csv::format_number(*v));
        return v;
    }

    std::optional<double> index_ratio(const std::string& col) const {
        const auto v = number(col);
        if (v && *v <= 0.0) fail(Kind::bad_index, line_, "index ratio '" + col + "' must be > 0");
        return v;
    }

    std::optional<double> price(const std::string& col) const {
        const auto v = number(col);
        if (v && *v < 0.0) fail(Kind::negative_quantity, line_, "negative price in '" + col + "'");
        return v;
    }

    int line() const { return line_; }

    [[noreturn]] void fail(Kind kind, int line, const std::string& msg) const {
        throw DataError(kind, std::string(source_) + ":" + std::to_string(line) + ": " + msg);
    }

private:
    std::string_view source_;
    std::map<std::string, std::size_t> index_;
    std::size_t width_ = 0;
    const std::vector<std::string>* row_ = nullptr;
    int line_ = 0;
};

csv::Table parse_table(std::string_view text, std::string_view source) {
    try {
        return csv::parse(text);
    } catch (const std::runtime_error& e) {
        throw DataError(Kind::schema, std::string(source) + ": " + e.what());
    }
}

std::string read_required(const std::filesystem::path& p) {
    if (!std::filesystem::exists(p)) throw DataError(Kind::missing_file, "missing file: " + p.string());
    return csv::read_file(p.string());
}

std::optional<double> field_value(const Field& field, const CountryProfile& c) {
    switch (field.kind) {
        case FieldKind::dmr: return c.dmr_override[field.crop];
        case FieldKind::pli_labor: return c.pli.labor;
        case FieldKind::pli_raw_material: return c.pli.raw_material;
        case FieldKind::pli_construction: return c.pli.construction;
        case FieldKind::pli_electricity: return c.pli.electricity;
        case FieldKind::discount_rate: return c.discount_rate;
        case FieldKind::tax_rate: return c.tax_rate;
        case FieldKind::fuel_price: return c.fuel_price[field.fuel];
    }
    return std::nullopt;
}

}  // namespace

void ModelConfig::validate() const {
    auto bad = [](const std::string& m) { throw DataError(Kind::schema, "config: " + m); };
    if (!(plant_capacity > 0.0)) bad("plant_capacity must be > 0");
    if (horizon_years < 1) bad("horizon_years must be >= 1");
    if (!(salvage_rate >= 0.0 && salvage_rate < 1.0)) bad("salvage_rate must be in [0,1)");
    if (!(tfc_capex_ratio > 0.0 && tfc_capex_ratio <= 1.0)) bad("tfc_capex_ratio must be in (0,1]");
    if (!(pellet_efficiency > 0.0 && pellet_efficiency <= 1.0)) bad("pellet_efficiency must be in (0,1]");
    if (!(carbon_tax >= 0.0)) bad("carbon_tax must be >= 0");
    if (!std::isfinite(target_npv)) bad("target_npv must be finite");
    if (fossil_multipliers.empty() || pellet_prices.empty()) bad("sensitivity axes must be non-empty");
    for (double m : fossil_multipliers)
        if (!(m > 0.0)) bad("fossil multipliers must be > 0");
    for (double p : pellet_prices)
        if (!(p >= 0.0)) bad("pellet prices must be >= 0");
}

Dataset Dataset::defaults() {
    Dataset d;
    d.crops[CropKind::maize] = {1.00, 0.50, 0.7374, 17.3};
    d.crops[CropKind::rice] = {1.40, 0.60, 0.8774, 14.6};
    d.crops[CropKind::sugarcane] = {1.00, 0.875, 0.4388, 17.3};
    d.crops[CropKind::wheat] = {1.30, 0.40, 0.8627, 17.2};
    d.livestock_rates[AnimalKind::cattle] = 0.375;
    d.livestock_rates[AnimalKind::horses] = 1.500;
    d.livestock_rates[AnimalKind::sheep] = 0.100;
    d.livestock_rates[AnimalKind::swine] = 0.063;
    d.fuels[FuelKind::coal] = {23.9, 2592.0};
    d.fuels[FuelKind::oil] = {42.0, 2977.0};
    d.fuels[FuelKind::natural_gas] = {42.0, 2114.0};
    d.pellet_ef = 151.0;
    return d;
}

const CountryProfile* Dataset::find(std::string_view name) const {
    for (const auto& c : countries)
        if (c.name == name) return &c;
    return nullptr;
}

PerCrop<CropCoefficients> parse_crops(std::string_view text, std::string_view source) {
    const auto table = parse_table(text, source);
    RowReader r(source, table, kCropColumns);
    PerCrop<CropCoefficients> out;
    PerCrop<bool> seen{};
    for (std::size_t i = 0; i < table.rows.size(); ++i) {
        r.bind(table.rows[i], table.line_numbers[i]);
        const auto crop = parse_crop(r.text("crop"));
        if (!crop) r.fail(Kind::schema, r.line(), "unknown crop '" + r.text("crop") + "'");
        if (seen[*crop]) r.fail(Kind::schema, r.line(), "duplicate crop '" + r.text("crop") + "'");
        seen[*crop] = true;
        auto required = [&](const std::string& col) {
            auto v = r.number(col);
            if (!v) r.fail(Kind::schema, r.line(), "'" + col + "' is required");
            return *v;
        };
        CropCoefficients cc;
        cc.rtp = required("rtp");
        cc.srr = required("srr");
        cc.dmr_default = required("dmr_world");
        cc.lhv = required("lhv_mj_per_kg");
        if (!(cc.rtp > 0.0)) r.fail(Kind::schema, r.line(), "rtp must be > 0");
        if (!(cc.srr >= 0.0 && cc.srr <= 1.0)) r.fail(Kind::schema, r.line(), "srr must be in [0,1]");
        if (!(cc.dmr_default > 0.0 && cc.dmr_default <= 1.0))
            r.fail(Kind::schema, r.line(), "dmr_world must be in (0,1]");
        if (!(cc.lhv > 0.0)) r.fail(Kind::schema, r.line(), "lhv must be > 0");
        out[*crop] = cc;
    }
    for (auto c : kAllCrops)
        if (!seen[c])
            throw DataError(Kind::schema, std::string(source) + ": missing crop '" + std::string(to_string(c)) + "'");
    return out;
}

std::vector<CountryProfile> parse_countries(std::string_view text, std::string_view source) {
    const auto table = parse_table(text, source);
    std::vector<CountryProfile> out;
    if (table.header.empty()) return out;
    RowReader r(source, table, kCountryColumns);
    std::set<std::string> names;
    for (std::size_t i = 0; i < table.rows.size(); ++i) {
        r.bind(table.rows[i], table.line_numbers[i]);
        CountryProfile c;
        c.name = r.text("country");
        c.continent = r.text("continent");
        if (c.name.empty()) r.fail(Kind::schema, r.line(), "empty country name");
        if (csv::is_null(c.continent)) r.fail(Kind::schema, r.line(), "missing continent for '" + c.name + "'");
        if (!names.insert(c.name).second)
            r.fail(Kind::duplicate_country, r.line(), "duplicate country '" + c.name + "'");
        for (auto crop : kAllCrops) {
            const std::string n(to_string(crop));
            c.production[crop] = r.quantity("prod_" + n + "_t");
            c.dmr_override[crop] = r.fraction("dmr_" + n, false);
        }
        for (auto a : kAllAnimals) c.livestock[a] = r.quantity(std::string(to_string(a)));
        c.bagasse_bioenergy = r.quantity("bagasse_bioenergy_t");
        c.other_residue_bioenergy = r.quantity("other_bioenergy_t");
        c.pli.labor = r.index_ratio("pli_labor");
        c.pli.raw_material = r.index_ratio("pli_raw");
        c.pli.construction = r.index_ratio("pli_construction");
        c.pli.electricity = r.index_ratio("pli_electricity");
        c.discount_rate = r.fraction("discount_rate");
        c.tax_rate = r.fraction("tax_rate");
        for (auto f : kAllFuels) {
            c.fuel_price[f] = r.price(price_column(f));
            c.fuel_consumption[f] = r.quantity(consumption_column(f));
        }
        out.push_back(std::move(c));
    }
    return out;
}

void parse_fuels(std::string_view text, PerFuel<FuelProperties>& fuels, double& pellet_ef,
                 std::string_view source) {
    const auto table = parse_table(text, source);
    RowReader r(source, table, kFuelColumns);
    PerFuel<bool> seen{};
    bool pellet_seen = false;
    for (std::size_t i = 0; i < table.rows.size(); ++i) {
        r.bind(table.rows[i], table.line_numbers[i]);
        const auto name = r.text("fuel");
        const auto ef = r.number("ef_kgco2e_per_t");
        if (!ef || *ef < 0.0) r.fail(Kind::schema, r.line(), "ef must be present and >= 0");
        if (name == "pellet") {
            if (pellet_seen) r.fail(Kind::schema, r.line(), "duplicate pellet row");
            pellet_seen = true;
            pellet_ef = *ef;
            continue;
        }
        const auto fuel = parse_fuel(name);
        if (!fuel) r.fail(Kind::schema, r.line(), "unknown fuel '" + name + "'");
        if (seen[*fuel]) r.fail(Kind::schema, r.line(), "duplicate fuel '" + name + "'");
        seen[*fuel] = true;
        const auto lhv = r.number("lhv_mj_per_kg");
        if (!lhv || !(*lhv > 0.0)) r.fail(Kind::schema, r.line(), "lhv must be present and > 0");
        fuels[*fuel] = {*lhv, *ef};
    }
    for (auto f : kAllFuels)
        if (!seen[f])
            throw DataError(Kind::schema, std::string(source) + ": missing fuel '" + std::string(to_string(f)) + "'");
}

ModelConfig parse_config(std::string_view json_text) {
    ModelConfig cfg;
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::exception& e) {
        throw DataError(Kind::schema, std::string("config: ") + e.what());
    }
    if (!j.is_object()) throw DataError(Kind::schema, "config: top level must be an object");
    try {
        for (const auto& [key, value] : j.items()) {
            if (key == "plant_capacity") cfg.plant_capacity = value.get<double>();
            else if (key == "horizon_years") cfg.horizon_years = value.get<int>();
            else if (key == "salvage_rate") cfg.salvage_rate = value.get<double>();
            else if (key == "tfc_capex_ratio") cfg.tfc_capex_ratio = value.get<double>();
            else if (key == "pellet_efficiency") cfg.pellet_efficiency = value.get<double>();
            else if (key == "carbon_tax") cfg.carbon_tax = value.get<double>();
            else if (key == "target_npv") cfg.target_npv = value.get<double>();
            else if (key == "fossil_multipliers") cfg.fossil_multipliers = value.get<std::vector<double>>();
            else if (key == "pellet_prices") cfg.pellet_prices = value.get<std::vector<double>>();
            else if (key == "scenario") {
                const auto s = parse_scenario(value.get<std::string>());
                if (!s) throw DataError(Kind::schema, "config: scenario must be A, B or C");
                cfg.scenario = *s;
            } else {
                throw DataError(Kind::schema, "config: unknown key '" + key + "'");
            }
        }
    } catch (const nlohmann::json::exception& e) {
        throw DataError(Kind::schema, std::string("config: ") + e.what());
    }
    cfg.validate();
    return cfg;
}

ModelConfig load_config(const std::filesystem::path& file) {
    return parse_config(read_required(file));
}

std::string config_to_json(const ModelConfig& cfg) {
    nlohmann::ordered_json j;
    j["plant_capacity"] = cfg.plant_capacity;
    j["horizon_years"] = cfg.horizon_years;
    j["salvage_rate"] = cfg.salvage_rate;
    j["tfc_capex_ratio"] = cfg.tfc_capex_ratio;
    j["pellet_efficiency"] = cfg.pellet_efficiency;
    j["scenario"] = std::string(to_string(cfg.scenario));
    j["carbon_tax"] = cfg.carbon_tax;
    j["target_npv"] = cfg.target_npv;
    j["fossil_multipliers"] = cfg.fossil_multipliers;
    j["pellet_prices"] = cfg.pellet_prices;
    return j.dump(2) + "\n";
}

Dataset load_dataset(const DataPaths& paths, const ModelConfig& config) {
    config.validate();
    Dataset d = Dataset::defaults();
    d.config = config;
    const auto crops_path = paths.crops_file();
    d.crops = parse_crops(read_required(crops_path), crops_path.filename().string());
    const auto fuels_path = paths.fuels_file();
    parse_fuels(read_required(fuels_path), d.fuels, d.pellet_ef, fuels_path.filename().string());
    const auto countries_path = paths.countries_file();
    d.countries = parse_countries(read_required(countries_path), countries_path.filename().string());
    return d;
}

std::string write_crops_csv(const PerCrop<CropCoefficients>& crops) {
    std::string out = csv::join_row(kCropColumns);
    for (auto c : kAllCrops) {
        const auto& cc = crops[c];
        out += csv::join_row({std::string(to_string(c)), csv::format_number(cc.rtp), csv::format_number(cc.srr),
                              csv::format_number(cc.dmr_default), csv::format_number(cc.lhv)});
    }
    return out;
}

std::string write_fuels_csv(const PerFuel<FuelProperties>& fuels, double pellet_ef) {
    std::string out = csv::join_row(kFuelColumns);
    for (auto f : kAllFuels)
        out += csv::join_row({std::string(to_string(f)), csv::format_number(fuels[f].lhv),
                              csv::format_number(fuels[f].ef)});
    out += csv::join_row({"pellet", "-", csv::format_number(pellet_ef)});
    return out;
}

std::string write_countries_csv(const std::vector<CountryProfile>& countries) {
    std::string out = csv::join_row(kCountryColumns);
    using csv::format_number;
    for (const auto& c : countries) {
        std::vector<std::string> row{c.name, c.continent};
        for (auto crop : kAllCrops) row.push_back(format_number(c.production[crop]));
        for (auto crop : kAllCrops) row.push_back(format_number(c.dmr_override[crop]));
        for (auto a : kAllAnimals) row.push_back(format_number(c.livestock[a]));
        row.push_back(format_number(c.bagasse_bioenergy));
        row.push_back(format_number(c.other_residue_bioenergy));
        row.push_back(format_number(c.pli.labor));
        row.push_back(format_number(c.pli.raw_material));
        row.push_back(format_number(c.pli.construction));
        row.push_back(format_number(c.pli.electricity));
        row.push_back(format_number(c.discount_rate));
        row.push_back(format_number(c.tax_rate));
        // column order: coal, oil, gas
        for (auto f : kAllFuels) row.push_back(format_number(c.fuel_price[f]));
        for (auto f : kAllFuels) row.push_back(format_number(c.fuel_consumption[f]));
        out += csv::join_row(row);
    }
    return out;
}

void save_dataset(const Dataset& d, const std::filesystem::path& dir) {
    std::filesystem::create_directories(dir);
    auto put = [&](const char* name, const std::string& text) {
        std::ofstream out(dir / name, std::ios::binary);
        if (!out) throw std::runtime_error("cannot write " + (dir / name).string());
        out << text;
    };
    put("crops.csv", write_crops_csv(d.crops));
    put("fuels.csv", write_fuels_csv(d.fuels, d.pellet_ef));
    put("countries.csv", write_countries_csv(d.countries));
    put("config.json", config_to_json(d.config));
}

std::string field_name(const Field& field) {
    switch (field.kind) {
        case FieldKind::dmr: return "dmr_" + std::string(to_string(field.crop));
        case FieldKind::pli_labor: return "pli_labor";
        case FieldKind::pli_raw_material: return "pli_raw";
        case FieldKind::pli_construction: return "pli_construction";
        case FieldKind::pli_electricity: return "pli_electricity";
        case FieldKind::discount_rate: return "discount_rate";
        case FieldKind::tax_rate: return "tax_rate";
        case FieldKind::fuel_price: return price_column(field.fuel);
    }
    return "?";
}

Resolved resolve(const Field& field, const CountryProfile& country, const Dataset& dataset) {
    if (const auto own = field_value(field, country)) return {*own, Provenance::country};

    if (field.kind == FieldKind::dmr) return {dataset.crops[field.crop].dmr_default, Provenance::world_average};

    double continent_sum = 0.0, world_sum = 0.0;
    int continent_n = 0, world_n = 0;
    for (const auto& other : dataset.countries) {
        const auto v = field_value(field, other);
        if (!v) continue;
        world_sum += *v;
        ++world_n;
        if (other.continent == country.continent) {
            continent_sum += *v;
            ++continent_n;
        }
    }
    if (continent_n > 0) return {continent_sum / continent_n, Provenance::continent};
    if (world_n > 0) return {world_sum / world_n, Provenance::world};
    throw DataError(Kind::unresolvable,
                    "no country has data for '" + field_name(field) + "' (needed by '" + country.name + "')");
}

}  // namespace pellet
