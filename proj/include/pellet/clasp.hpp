#pragma once

#include <optional>
#include <stdexcept>
#include <vector>

namespace pellet {

/// Financial inputs for the break-even price solve. One plant, constant annual flows.
struct ClaspInputs {
    double capex = 0.0;         // $
    double opex = 0.0;          // $/y
    double quantity = 0.0;      // t/y of pellets sold
    int years = 20;
    double discount_rate = 0.0;
    double tax_rate = 0.0;
    double salvage_rate = 0.10;
    double tfc = 0.0;           // depreciable base, $
    double target_npv = 0.0;    // $

    /// Throws std::domain_error on q <= 0, n < 1, r < 0, tr outside [0,1).
    void validate() const;
};

struct Depreciation {
    double salvage = 0.0;  // $
    double annual = 0.0;   // $/y, straight-line
};

Depreciation depreciation(const ClaspInputs& in);

/// Sum over t = 1..n of (1+r)^-t.
double annuity_factor(double rate, int years);

/// Net present value at a pellet price. Loss years carry a negative tax.
double npv(double price, const ClaspInputs& in);

struct YearCashFlow {
    int year = 0;
    double revenue = 0.0;
    double opex = 0.0;
    double depreciation = 0.0;
    double tax = 0.0;
    double cash_flow = 0.0;
    double discounted = 0.0;
};

struct MspResult {
    double msp = 0.0;         // $/t
    double npv_at_msp = 0.0;  // $
    std::vector<YearCashFlow> annual_trace;
    std::optional<double> msp_per_tj;  // $/TJ, when an LHV is attached
};

class SolveError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Direct inversion; NPV is affine in price.
double msp_closed_form(const ClaspInputs& in);

/// Bisection over [lo, hi]. Throws SolveError when the target is not bracketed.
double msp_bisection(const ClaspInputs& in, double lo = 0.0, double hi = 1e6);

/// Closed form with a bisection fallback, plus the cash-flow trace.
MspResult solve_msp(const ClaspInputs& in);

std::vector<YearCashFlow> cash_flow_trace(double price, const ClaspInputs& in);

/// $/t to $/TJ using an LHV in MJ/kg.
inline double per_tj(double usd_per_ton, double lhv_mj_per_kg) { return usd_per_ton / (lhv_mj_per_kg * 1e-3); }

}  // namespace pellet
