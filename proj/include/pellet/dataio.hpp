#pragma once

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "pellet/types.hpp"

namespace pellet {

struct CropCoefficients {
    double rtp = 0.0;          // residue tons per production ton
    double srr = 0.0;          // sustainably removable fraction
    double dmr_default = 0.0;  // world-average dry matter ratio
    double lhv = 0.0;          // MJ/kg

    friend bool operator==(const CropCoefficients&, const CropCoefficients&) = default;
};

/// Per-animal daily residue use for feed and bedding, kg/day.
using LivestockRates = PerAnimal<double>;

struct FuelProperties {
    double lhv = 0.0;  // MJ/kg
    double ef = 0.0;   // kgCO2e/t

    friend bool operator==(const FuelProperties&, const FuelProperties&) = default;
};

/// Price level index ratios against the reference plant's country.
struct PriceLevelIndexes {
    std::optional<double> labor;
    std::optional<double> raw_material;
    std::optional<double> construction;
    std::optional<double> electricity;

    friend bool operator==(const PriceLevelIndexes&, const PriceLevelIndexes&) = default;
};

struct CountryProfile {
    std::string name;
    std::string continent;
    PerCrop<double> production;  // t/y
    PerCrop<std::optional<double>> dmr_override;
    PerAnimal<double> livestock;  // head
    double bagasse_bioenergy = 0.0;        // t/y
    double other_residue_bioenergy = 0.0;  // t/y, before cereal attribution
    PriceLevelIndexes pli;
    std::optional<double> discount_rate;
    std::optional<double> tax_rate;
    PerFuel<std::optional<double>> fuel_price;  // $/t
    PerFuel<double> fuel_consumption;           // TJ/y

    friend bool operator==(const CountryProfile&, const CountryProfile&) = default;
};

struct ModelConfig {
    double plant_capacity = 40080.0;  // t/y
    int horizon_years = 20;
    double salvage_rate = 0.10;
    double tfc_capex_ratio = 1.0 / 1.2;
    double pellet_efficiency = 0.95;
    Scenario scenario = Scenario::A;
    double carbon_tax = 0.0;  // $/tCO2e
    double target_npv = 0.0;  // $
    std::vector<double> fossil_multipliers{0.25, 0.50, 0.75, 1.00, 1.25, 1.50, 1.75};
    std::vector<double> pellet_prices{10, 29, 48, 67, 86, 105, 124, 143, 162, 181, 200};

    /// Throws DataError(schema) when an invariant is violated.
    void validate() const;

    friend bool operator==(const ModelConfig&, const ModelConfig&) = default;
};

struct Dataset {
    PerCrop<CropCoefficients> crops;
    LivestockRates livestock_rates;
    std::vector<CountryProfile> countries;
    PerFuel<FuelProperties> fuels;
    double pellet_ef = 151.0;  // kgCO2e/t
    ModelConfig config;

    /// Published constants, no countries.
    static Dataset defaults();

    const CountryProfile* find(std::string_view name) const;

    friend bool operator==(const Dataset&, const Dataset&) = default;
};

class DataError : public std::runtime_error {
public:
    enum class Kind {
        missing_file,
        schema,
        duplicate_country,
        negative_quantity,
        bad_index,
        unresolvable,
    };

    DataError(Kind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
    Kind kind() const noexcept { return kind_; }

private:
    Kind kind_;
};

/// Input locations. Unset entries fall back to `<dir>/<default name>`.
struct DataPaths {
    std::filesystem::path dir;
    std::optional<std::filesystem::path> crops{};
    std::optional<std::filesystem::path> countries{};
    std::optional<std::filesystem::path> fuels{};

    std::filesystem::path crops_file() const { return crops.value_or(dir / "crops.csv"); }
    std::filesystem::path countries_file() const { return countries.value_or(dir / "countries.csv"); }
    std::filesystem::path fuels_file() const { return fuels.value_or(dir / "fuels.csv"); }
};

Dataset load_dataset(const DataPaths& paths, const ModelConfig& config);

/// Parses config.json. Keys are ModelConfig field names; absent keys keep defaults.
ModelConfig load_config(const std::filesystem::path& file);
ModelConfig parse_config(std::string_view json_text);
std::string config_to_json(const ModelConfig& config);

// Parsers over in-memory text; `source` names the origin in error messages.
PerCrop<CropCoefficients> parse_crops(std::string_view text, std::string_view source = "crops.csv");
std::vector<CountryProfile> parse_countries(std::string_view text,
                                            std::string_view source = "countries.csv");
void parse_fuels(std::string_view text, PerFuel<FuelProperties>& fuels, double& pellet_ef,
                 std::string_view source = "fuels.csv");

std::string write_crops_csv(const PerCrop<CropCoefficients>& crops);
std::string write_countries_csv(const std::vector<CountryProfile>& countries);
std::string write_fuels_csv(const PerFuel<FuelProperties>& fuels, double pellet_ef);

/// Writes crops.csv, countries.csv, fuels.csv and config.json into `dir`.
void save_dataset(const Dataset& dataset, const std::filesystem::path& dir);

// ---------------------------------------------------------------------------
// Fallback resolution for nullable country fields.

enum class FieldKind {
    dmr,
    pli_labor,
    pli_raw_material,
    pli_construction,
    pli_electricity,
    discount_rate,
    tax_rate,
    fuel_price,
};

struct Field {
    FieldKind kind;
    CropKind crop = CropKind::maize;  // for dmr
    FuelKind fuel = FuelKind::coal;   // for fuel_price

    static Field dmr(CropKind c) { return {FieldKind::dmr, c, FuelKind::coal}; }
    static Field price(FuelKind f) { return {FieldKind::fuel_price, CropKind::maize, f}; }
    static Field of(FieldKind k) { return {k, CropKind::maize, FuelKind::coal}; }
};

std::string field_name(const Field& field);

struct Resolved {
    double value = 0.0;
    Provenance source = Provenance::country;
};

/// Country value, else continent mean, else world mean. DMR skips the continent
/// tier and falls back to the crop's world-average coefficient.
Resolved resolve(const Field& field, const CountryProfile& country, const Dataset& dataset);

}  // namespace pellet
