#include "pellet/clasp.hpp"

#include <cmath>
#include <string>

namespace pellet {

void ClaspInputs::validate() const {
    if (!(quantity > 0.0)) throw std::domain_error("output quantity must be > 0");
    if (years < 1) throw std::domain_error("horizon must be >= 1 year");
    if (!(discount_rate >= 0.0)) throw std::domain_error("discount rate must be >= 0");
    if (tax_rate >= 1.0) throw std::domain_error("tax rate of 1 leaves no after-tax revenue");
    if (!(tax_rate >= 0.0)) throw std::domain_error("tax rate must be in [0,1)");
    if (!(salvage_rate >= 0.0 && salvage_rate <= 1.0)) throw std::domain_error("salvage rate must be in [0,1]");
    if (!std::isfinite(capex) || !std::isfinite(opex) || !std::isfinite(tfc) || !std::isfinite(target_npv))
        throw std::domain_error("non-finite financial input");
}

Depreciation depreciation(const ClaspInputs& in) {
    Depreciation d;
    d.salvage = in.salvage_rate * in.tfc;
    d.annual = (in.tfc - d.salvage) / in.years;
    return d;
}

double annuity_factor(double rate, int years) {
    double sum = 0.0;
    double discount = 1.0;
    for (int t = 1; t <= years; ++t) {
        discount /= (1.0 + rate);
        sum += discount;
    }
    return sum;
}

double npv(double price, const ClaspInputs& in) {
    const auto dep = depreciation(in);
    const double revenue = price * in.quantity;
    const double tax = in.tax_rate * (revenue - in.opex - dep.annual);
    const double cash_flow = revenue - in.opex - tax;
    return cash_flow * annuity_factor(in.discount_rate, in.years) +
           dep.salvage / std::pow(1.0 + in.discount_rate, in.years) - in.capex;
}

double msp_closed_form(const ClaspInputs& in) {
    in.validate();
    // NPV(P) = slope·P + NPV(0)
    const double slope = in.quantity * (1.0 - in.tax_rate) * annuity_factor(in.discount_rate, in.years);
    const double base = npv(0.0, in);
    return (in.target_npv - base) / slope;
}

double msp_bisection(const ClaspInputs& in, double lo, double hi) {
    in.validate();
    double f_lo = npv(lo, in) - in.target_npv;
    const double f_hi = npv(hi, in) - in.target_npv;
    if (f_lo == 0.0) return lo;
    if (f_hi == 0.0) return hi;
    if ((f_lo > 0.0) == (f_hi > 0.0))
        throw SolveError("break-even price not bracketed by [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
    for (int iter = 0; iter < 200; ++iter) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        const double f_mid = npv(mid, in) - in.target_npv;
        if (f_mid == 0.0) return mid;
        if ((f_mid > 0.0) == (f_lo > 0.0)) {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

std::vector<YearCashFlow> cash_flow_trace(double price, const ClaspInputs& in) {
    const auto dep = depreciation(in);
    std::vector<YearCashFlow> rows;
    rows.reserve(static_cast<std::size_t>(in.years));
    double discount = 1.0;
    for (int t = 1; t <= in.years; ++t) {
        discount /= (1.0 + in.discount_rate);
        YearCashFlow y;
        y.year = t;
        y.revenue = price * in.quantity;
        y.opex = in.opex;
        y.depreciation = dep.annual;
        y.tax = in.tax_rate * (y.revenue - in.opex - dep.annual);
        y.cash_flow = y.revenue - in.opex - y.tax;
        y.discounted = y.cash_flow * discount;
        rows.push_back(y);
    }
    return rows;
}

MspResult solve_msp(const ClaspInputs& in) {
    MspResult r;
    r.msp = msp_closed_form(in);
    if (!std::isfinite(r.msp)) r.msp = msp_bisection(in);
    r.npv_at_msp = npv(r.msp, in);
    r.annual_trace = cash_flow_trace(r.msp, in);
    return r;
}

}  // namespace pellet
