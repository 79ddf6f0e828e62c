#pragma once

#include "pellet/dataio.hpp"
#include "pellet/types.hpp"

namespace pellet {

/// Share of "other vegetal residue" bioenergy attributed to maize, rice and wheat:
/// cereals' share of primary crop output times the three crops' share of cereals.
inline constexpr double kCerealShareOfCrops = 0.313;
inline constexpr double kFocalShareOfCereals = 0.91;

inline constexpr double kDaysPerYear = 365.0;

/// Total residue: production times residue-to-production ratio.
inline double total_residue(double production, double rtp) { return production * rtp; }

/// Sustainably removable residue on a dry basis. `srr` is the removable fraction.
inline double removable_dry_residue(double cr_total, double srr, double dmr) { return cr_total * srr * dmr; }

/// Annual residue tonnage consumed as feed and bedding.
double feed_bedding_use(const PerAnimal<double>& head_counts, const LivestockRates& rates_kg_per_day);

struct BioenergyUse {
    double bagasse = 0.0;
    double attributed_other = 0.0;
};

BioenergyUse bioenergy_use(double bagasse, double other);

struct ResidueAssessment {
    PerCrop<double> cr_total{};
    PerCrop<double> cr_removable_dry{};
    PerCrop<double> dmr{};
    PerCrop<Provenance> dmr_source{};
    double feed_bedding_use = 0.0;
    double bioenergy_use_bagasse = 0.0;
    double bioenergy_use_other_attributed = 0.0;
    double cr_final = 0.0;
    PerCrop<double> cr_final_by_crop{};
    bool use_saturated = false;

    double removable_total() const;
    double current_uses() const {
        return feed_bedding_use + bioenergy_use_bagasse + bioenergy_use_other_attributed;
    }
};

/// Subtracts competing uses from the pooled removable tonnage and clamps at zero.
/// Per-crop final tonnage is a pro-rata split by removable share.
/// Expects cr_total, cr_removable_dry and the use fields to be filled in.
void finalize_residue(ResidueAssessment& a);

/// Full per-country chain; DMR is resolved through the dataset fallback.
ResidueAssessment assess_residue(const CountryProfile& country, const Dataset& dataset);

}  // namespace pellet
