#include "pellet/residue.hpp"

#include <algorithm>

namespace pellet {

double feed_bedding_use(const PerAnimal<double>& head_counts, const LivestockRates& rates) {
    double total = 0.0;
    for (auto a : kAllAnimals) total += head_counts[a] * rates[a] * kDaysPerYear / 1000.0;
    return total;
}

BioenergyUse bioenergy_use(double bagasse, double other) {
    return {bagasse, other * kCerealShareOfCrops * kFocalShareOfCereals};
}

double ResidueAssessment::removable_total() const {
    double s = 0.0;
    for (auto c : kAllCrops) s += cr_removable_dry[c];
    return s;
}

void finalize_residue(ResidueAssessment& a) {
    const double removable = a.removable_total();
    const double net = removable - a.feed_bedding_use - a.bioenergy_use_bagasse - a.bioenergy_use_other_attributed;
    a.use_saturated = net <= 0.0 && a.current_uses() > 0.0;
    a.cr_final = std::max(0.0, net);
    for (auto c : kAllCrops)
        a.cr_final_by_crop[c] = removable > 0.0 ? a.cr_final * a.cr_removable_dry[c] / removable : 0.0;
}

ResidueAssessment assess_residue(const CountryProfile& country, const Dataset& dataset) {
    ResidueAssessment a;
    for (auto c : kAllCrops) {
        const auto& coeff = dataset.crops[c];
        const auto dmr = resolve(Field::dmr(c), country, dataset);
        a.dmr[c] = dmr.value;
        a.dmr_source[c] = dmr.source;
        a.cr_total[c] = total_residue(country.production[c], coeff.rtp);
        a.cr_removable_dry[c] = removable_dry_residue(a.cr_total[c], coeff.srr, dmr.value);
    }
    a.feed_bedding_use = feed_bedding_use(country.livestock, dataset.livestock_rates);
    const auto bio = bioenergy_use(country.bagasse_bioenergy, country.other_residue_bioenergy);
    a.bioenergy_use_bagasse = bio.bagasse;
    a.bioenergy_use_other_attributed = bio.attributed_other;
    finalize_residue(a);
    return a;
}

}  // namespace pellet
