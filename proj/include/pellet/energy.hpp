#pragma once

#include <stdexcept>

#include "pellet/dataio.hpp"
#include "pellet/residue.hpp"

namespace pellet {

class NoResidueError : public std::domain_error {
public:
    NoResidueError() : std::domain_error("no residue: all crop shares are zero") {}
};

/// How the pellet heating value was weighted.
enum class LhvBasis { final_residue, removable_residue, unweighted };

struct EnergyPotential {
    double weighted_lhv = 0.0;   // MJ/kg
    double pellet_mass = 0.0;    // t/y
    double pellet_energy = 0.0;  // TJ/y
    LhvBasis lhv_basis = LhvBasis::final_residue;
};

/// Share-weighted mean LHV. Throws NoResidueError when every share is zero.
double weighted_lhv(const PerCrop<double>& shares, const PerCrop<CropCoefficients>& crops);

/// t · MJ/kg = GJ; /1000 gives TJ.
EnergyPotential pellet_energy(double cr_final, double weighted_lhv, double efficiency);

/// Weights by final per-crop tonnage. When nothing is left after competing uses the
/// removable pool supplies the weights, and with no residue at all the plain crop mean
/// is used, so a pellet LHV (needed for $/TJ figures) always exists.
EnergyPotential assess_energy(const ResidueAssessment& residue, const PerCrop<CropCoefficients>& crops,
                              double efficiency);

}  // namespace pellet
