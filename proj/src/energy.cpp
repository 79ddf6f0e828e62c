#include "pellet/energy.hpp"

namespace pellet {

double weighted_lhv(const PerCrop<double>& shares, const PerCrop<CropCoefficients>& crops) {
    double weighted = 0.0, total = 0.0;
    for (auto c : kAllCrops) {
        weighted += shares[c] * crops[c].lhv;
        total += shares[c];
    }
    if (!(total > 0.0)) throw NoResidueError();
    return weighted / total;
}

EnergyPotential pellet_energy(double cr_final, double lhv, double efficiency) {
    EnergyPotential e;
    e.weighted_lhv = lhv;
    e.pellet_mass = cr_final * efficiency;
    e.pellet_energy = e.pellet_mass * lhv * 1e-3;
    return e;
}

EnergyPotential assess_energy(const ResidueAssessment& residue, const PerCrop<CropCoefficients>& crops,
                              double efficiency) {
    double lhv = 0.0;
    LhvBasis basis = LhvBasis::final_residue;
    try {
        lhv = weighted_lhv(residue.cr_final_by_crop, crops);
    } catch (const NoResidueError&) {
        try {
            lhv = weighted_lhv(residue.cr_removable_dry, crops);
            basis = LhvBasis::removable_residue;
        } catch (const NoResidueError&) {
            PerCrop<double> equal;
            for (auto& s : equal) s = 1.0;
            lhv = weighted_lhv(equal, crops);
            basis = LhvBasis::unweighted;
        }
    }
    auto e = pellet_energy(residue.cr_final, lhv, efficiency);
    e.lhv_basis = basis;
    return e;
}

}  // namespace pellet
