#include "pellet/energy.hpp"
#include "pellet/kernels/batch.hpp"
#include "pellet/residue.hpp"

namespace pellet::kernels {

void ResidueColumns::resize(std::size_t n) {
    for (auto c : kAllCrops) {
        production[c].resize(n);
        dmr[c].resize(n);
        cr_total[c].resize(n);
        removable[c].resize(n);
        final_by_crop[c].resize(n);
    }
    for (auto a : kAllAnimals) livestock[a].resize(n);
    for (auto* v : {&bagasse, &other, &feed, &attributed_other, &cr_final, &weighted_lhv, &pellet_mass,
                    &pellet_energy})
        v->resize(n);
    saturated.resize(n);
    lhv_basis.resize(n);
}

void RecopColumns::resize(std::size_t n) {
    for (auto f : kAllFuels) {
        fuel_price[f].resize(n);
        consumption[f].resize(n);
        allocated[f].resize(n);
    }
    for (auto* v : {&pellet_energy, &pellet_lhv, &pellet_price, &unused, &s_ec, &s_em}) v->resize(n);
}

namespace scalar {

void residue_range(const ResidueParams& p, ResidueColumns& cols, std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
        ResidueAssessment a;
        for (auto c : kAllCrops) {
            a.dmr[c] = cols.dmr[c][i];
            a.cr_total[c] = total_residue(cols.production[c][i], p.crops[c].rtp);
            a.cr_removable_dry[c] = removable_dry_residue(a.cr_total[c], p.crops[c].srr, a.dmr[c]);
        }
        PerAnimal<double> heads;
        for (auto an : kAllAnimals) heads[an] = cols.livestock[an][i];
        a.feed_bedding_use = feed_bedding_use(heads, p.livestock_rates);
        const auto bio = bioenergy_use(cols.bagasse[i], cols.other[i]);
        a.bioenergy_use_bagasse = bio.bagasse;
        a.bioenergy_use_other_attributed = bio.attributed_other;
        finalize_residue(a);
        const auto e = assess_energy(a, p.crops, p.efficiency);

        for (auto c : kAllCrops) {
            cols.cr_total[c][i] = a.cr_total[c];
            cols.removable[c][i] = a.cr_removable_dry[c];
            cols.final_by_crop[c][i] = a.cr_final_by_crop[c];
        }
        cols.feed[i] = a.feed_bedding_use;
        cols.attributed_other[i] = a.bioenergy_use_other_attributed;
        cols.cr_final[i] = a.cr_final;
        cols.saturated[i] = a.use_saturated ? 1 : 0;
        cols.weighted_lhv[i] = e.weighted_lhv;
        cols.pellet_mass[i] = e.pellet_mass;
        cols.pellet_energy[i] = e.pellet_energy;
        cols.lhv_basis[i] = static_cast<std::uint8_t>(e.lhv_basis);
    }
}

void residue(const ResidueParams& p, ResidueColumns& cols) { residue_range(p, cols, 0, cols.size()); }

void recop_range(const RecopParams& p, RecopColumns& cols, std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
        PerFuel<double> prices, consumption;
        for (auto f : kAllFuels) {
            prices[f] = cols.fuel_price[f][i] * p.fuel_price_multiplier;
            consumption[f] = cols.consumption[f][i];
        }
        const double pellet_price = p.pellet_price_override.value_or(cols.pellet_price[i]);
        const auto econ = build_fuel_economics(prices, p.fuels, pellet_price, cols.pellet_lhv[i], p.pellet_ef);
        const auto ranking = rank_fuels(econ, p.weights);
        const auto alloc = allocate(cols.pellet_energy[i], consumption, ranking);
        const auto s = savings(alloc, econ);
        for (auto f : kAllFuels) cols.allocated[f][i] = alloc.allocated[f];
        cols.unused[i] = alloc.unused;
        cols.s_ec[i] = s.economic;
        cols.s_em[i] = s.emissions;
    }
}

void recop(const RecopParams& p, RecopColumns& cols) { recop_range(p, cols, 0, cols.size()); }

}  // namespace scalar
}  // namespace pellet::kernels
