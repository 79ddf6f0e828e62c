#include "pellet/types.hpp"

namespace pellet {

std::string_view to_string(CropKind c) {
    switch (c) {
        case CropKind::maize: return "maize";
        case CropKind::rice: return "rice";
        case CropKind::sugarcane: return "sugarcane";
        case CropKind::wheat: return "wheat";
    }
    return "?";
}

std::string_view to_string(FuelKind f) {
    switch (f) {
        case FuelKind::coal: return "coal";
        case FuelKind::oil: return "oil";
        case FuelKind::natural_gas: return "natural_gas";
    }
    return "?";
}

std::string_view to_string(AnimalKind a) {
    switch (a) {
        case AnimalKind::cattle: return "cattle";
        case AnimalKind::horses: return "horses";
        case AnimalKind::sheep: return "sheep";
        case AnimalKind::swine: return "swine";
    }
    return "?";
}

std::string_view to_string(Scenario s) {
    switch (s) {
        case Scenario::A: return "A";
        case Scenario::B: return "B";
        case Scenario::C: return "C";
    }
    return "?";
}

std::string_view to_string(Provenance p) {
    switch (p) {
        case Provenance::country: return "country";
        case Provenance::continent: return "continent";
        case Provenance::world: return "world";
        case Provenance::world_average: return "world-average";
    }
    return "?";
}

std::optional<CropKind> parse_crop(std::string_view s) {
    for (auto c : kAllCrops)
        if (to_string(c) == s) return c;
    return std::nullopt;
}

std::optional<FuelKind> parse_fuel(std::string_view s) {
    for (auto f : kAllFuels)
        if (to_string(f) == s) return f;
    if (s == "gas") return FuelKind::natural_gas;
    return std::nullopt;
}

std::optional<Scenario> parse_scenario(std::string_view s) {
    if (s == "A" || s == "a") return Scenario::A;
    if (s == "B" || s == "b") return Scenario::B;
    if (s == "C" || s == "c") return Scenario::C;
    return std::nullopt;
}

}  // namespace pellet
