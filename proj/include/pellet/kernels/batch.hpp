#pragma once

// Column-oriented batch kernels over many countries at once.
//
// Each kernel has a scalar reference built from the per-country module
// functions and an AVX2 variant that performs the same IEEE operations in the
// same order, so both produce bit-identical output. The variant is chosen at
// runtime from CPU support; PELLET_ISA=scalar|avx2 overrides the choice.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "pellet/dataio.hpp"
#include "pellet/recop.hpp"

namespace pellet::kernels {

enum class Isa { scalar, avx2 };

std::string_view to_string(Isa isa);
std::optional<Isa> parse_isa(std::string_view s);

// ---------------------------------------------------------------------------
// Residue and pellet energy

struct ResidueParams {
    PerCrop<CropCoefficients> crops;
    LivestockRates livestock_rates{};
    double efficiency = 0.95;
};

struct ResidueColumns {
    std::size_t size() const { return bagasse.size(); }
    void resize(std::size_t n);

    // inputs
    PerCrop<std::vector<double>> production;
    PerCrop<std::vector<double>> dmr;  // resolved
    PerAnimal<std::vector<double>> livestock;
    std::vector<double> bagasse;
    std::vector<double> other;

    // outputs
    PerCrop<std::vector<double>> cr_total;
    PerCrop<std::vector<double>> removable;
    PerCrop<std::vector<double>> final_by_crop;
    std::vector<double> feed;
    std::vector<double> attributed_other;
    std::vector<double> cr_final;
    std::vector<double> weighted_lhv;
    std::vector<double> pellet_mass;
    std::vector<double> pellet_energy;
    std::vector<std::uint8_t> saturated;
    std::vector<std::uint8_t> lhv_basis;  // LhvBasis
};

// ---------------------------------------------------------------------------
// Fuel replacement (greedy allocation plus savings)

struct RecopParams {
    PerFuel<FuelProperties> fuels;
    double pellet_ef = 151.0;
    ScoreWeights weights{};
    double fuel_price_multiplier = 1.0;
    std::optional<double> pellet_price_override;  // $/t, replaces the per-country column
};

struct RecopColumns {
    std::size_t size() const { return pellet_energy.size(); }
    void resize(std::size_t n);

    // inputs
    std::vector<double> pellet_energy;  // TJ/y
    std::vector<double> pellet_lhv;     // MJ/kg
    std::vector<double> pellet_price;   // $/t
    PerFuel<std::vector<double>> fuel_price;
    PerFuel<std::vector<double>> consumption;

    // outputs
    PerFuel<std::vector<double>> allocated;
    std::vector<double> unused;
    std::vector<double> s_ec;
    std::vector<double> s_em;
};

struct KernelTable {
    Isa isa;
    void (*residue)(const ResidueParams&, ResidueColumns&);
    void (*recop)(const RecopParams&, RecopColumns&);
};

bool isa_supported(Isa isa);

/// Table for a specific instruction set. Throws std::runtime_error if unsupported.
const KernelTable& kernel_table(Isa isa);

/// Best supported table, honoring PELLET_ISA and any override.
const KernelTable& active_kernels();

/// Forces a choice for subsequent active_kernels() calls; nullopt restores auto-detection.
void set_isa_override(std::optional<Isa> isa);

// Implementations, exposed for equivalence tests.
namespace scalar {
void residue(const ResidueParams& p, ResidueColumns& cols);
void residue_range(const ResidueParams& p, ResidueColumns& cols, std::size_t begin, std::size_t end);
void recop(const RecopParams& p, RecopColumns& cols);
void recop_range(const RecopParams& p, RecopColumns& cols, std::size_t begin, std::size_t end);
}  // namespace scalar

#if defined(PELLET_HAVE_AVX2_KERNELS)
namespace avx2 {
void residue(const ResidueParams& p, ResidueColumns& cols);
void recop(const RecopParams& p, RecopColumns& cols);
}  // namespace avx2
#endif

}  // namespace pellet::kernels
