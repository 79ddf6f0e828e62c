#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <type_traits>

namespace pellet {

enum class CropKind { maize, rice, sugarcane, wheat };
enum class FuelKind { coal, oil, natural_gas };
enum class AnimalKind { cattle, horses, sheep, swine };
enum class Scenario { A, B, C };

inline constexpr std::array<CropKind, 4> kAllCrops{CropKind::maize, CropKind::rice,
                                                   CropKind::sugarcane, CropKind::wheat};
inline constexpr std::array<FuelKind, 3> kAllFuels{FuelKind::coal, FuelKind::oil,
                                                   FuelKind::natural_gas};
inline constexpr std::array<AnimalKind, 4> kAllAnimals{AnimalKind::cattle, AnimalKind::horses,
                                                       AnimalKind::sheep, AnimalKind::swine};

template <typename E>
struct EnumCount;
template <>
struct EnumCount<CropKind> : std::integral_constant<std::size_t, 4> {};
template <>
struct EnumCount<FuelKind> : std::integral_constant<std::size_t, 3> {};
template <>
struct EnumCount<AnimalKind> : std::integral_constant<std::size_t, 4> {};

/// Fixed-size table with one slot per enumerator. Every kind is always present.
template <typename E, typename T>
struct EnumArray {
    std::array<T, EnumCount<E>::value> values{};

    constexpr T& operator[](E e) { return values[static_cast<std::size_t>(e)]; }
    constexpr const T& operator[](E e) const { return values[static_cast<std::size_t>(e)]; }

    constexpr auto begin() { return values.begin(); }
    constexpr auto end() { return values.end(); }
    constexpr auto begin() const { return values.begin(); }
    constexpr auto end() const { return values.end(); }

    friend bool operator==(const EnumArray&, const EnumArray&) = default;
};

template <typename T>
using PerCrop = EnumArray<CropKind, T>;
template <typename T>
using PerFuel = EnumArray<FuelKind, T>;
template <typename T>
using PerAnimal = EnumArray<AnimalKind, T>;

std::string_view to_string(CropKind c);
std::string_view to_string(FuelKind f);
std::string_view to_string(AnimalKind a);
std::string_view to_string(Scenario s);

std::optional<CropKind> parse_crop(std::string_view s);
std::optional<FuelKind> parse_fuel(std::string_view s);
std::optional<Scenario> parse_scenario(std::string_view s);

/// Position in the canonical tie-break order coal < natural gas < oil.
constexpr int canonical_rank(FuelKind f) {
    switch (f) {
        case FuelKind::coal: return 0;
        case FuelKind::natural_gas: return 1;
        case FuelKind::oil: return 2;
    }
    return 3;
}

/// Which resolution tier produced a value.
enum class Provenance { country, continent, world, world_average };

std::string_view to_string(Provenance p);

}  // namespace pellet
