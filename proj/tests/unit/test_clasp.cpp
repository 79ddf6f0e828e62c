#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <random>

#include "pellet/clasp.hpp"
#include "pellet/cost.hpp"
#include "pellet/csv.hpp"

using namespace pellet;

namespace {

ClaspInputs canada(double r = 0.0, double tr = 0.0) {
    ClaspInputs in;
    in.capex = 6'540'000.0;
    in.opex = 2'540'000.0;
    in.quantity = 40'080.0;
    in.years = 20;
    in.discount_rate = r;
    in.tax_rate = tr;
    in.salvage_rate = 0.10;
    in.tfc = 5'450'000.0;
    return in;
}

// Year-by-year sum, no closed forms.
double npv_by_year(double price, const ClaspInputs& in) {
    const double salvage = in.salvage_rate * in.tfc;
    const double dep = (in.tfc - salvage) / in.years;
    double total = -in.capex;
    for (int t = 1; t <= in.years; ++t) {
        const double ebt = price * in.quantity - in.opex - dep;
        const double cf = price * in.quantity - in.opex - in.tax_rate * ebt;
        total += cf / std::pow(1.0 + in.discount_rate, t);
    }
    return total + salvage / std::pow(1.0 + in.discount_rate, in.years);
}

}  // namespace

TEST_CASE("depreciation") {
    auto d = depreciation(canada());
    CHECK(d.salvage == 545'000.0);
    CHECK(d.annual == 245'250.0);
    auto in = canada();
    in.salvage_rate = 1.0;
    CHECK(depreciation(in).annual == 0.0);
    in.salvage_rate = 0.0;
    in.years = 1;
    CHECK(depreciation(in).annual == in.tfc);
}

TEST_CASE("npv") {
    const auto in = canada();
    CHECK(npv(0.0, in) == doctest::Approx(-20 * in.opex + 545'000.0 - in.capex));
    CHECK(std::abs(npv(70.852, in)) < 100.0);
    for (double p : {0.0, 50.0, 123.4}) {
        for (double r : {0.0, 0.07}) {
            for (double tr : {0.0, 0.3}) {
                auto x = canada(r, tr);
                CHECK(npv(p, x) == doctest::Approx(npv_by_year(p, x)).epsilon(1e-12));
            }
        }
    }
}

TEST_CASE("break-even price anchor") {
    const double msp = msp_closed_form(canada());
    CHECK(msp == doctest::Approx((2'540'000.0 + 299'750.0) / 40'080.0).epsilon(1e-12));
    CHECK(std::abs(msp - 70.85) <= 0.01);
    auto in = canada(0.05, 0.2);
    in.target_npv = npv(0.0, in);
    CHECK(std::abs(msp_closed_form(in)) < 1e-9);
}

TEST_CASE("tax rate has no effect at zero discount when the depreciable base is the full investment") {
    for (double tr : {0.0, 0.1, 0.25, 0.5, 0.9}) {
        auto in = canada(0.0, tr);
        in.tfc = in.capex;
        auto ref = canada();
        ref.tfc = ref.capex;
        CHECK(msp_closed_form(in) == doctest::Approx(msp_closed_form(ref)).epsilon(1e-12));
    }
}

TEST_CASE("closed form and bisection agree; npv vanishes at the solution") {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < 500; ++i) {
        ClaspInputs in;
        in.capex = 1e6 + 2e7 * u(rng);
        in.tfc = in.capex * (0.5 + 0.5 * u(rng));
        in.opex = 1e5 + 8e6 * u(rng);
        in.quantity = 5e3 + 2e5 * u(rng);
        in.years = 1 + static_cast<int>(40 * u(rng));
        in.discount_rate = 0.2 * u(rng);
        in.tax_rate = 0.6 * u(rng);
        in.salvage_rate = 0.3 * u(rng);
        const double a = msp_closed_form(in);
        const double b = msp_bisection(in);
        CHECK(std::abs(a - b) <= 0.01);
        CHECK(std::abs(npv(a, in)) <= 0.01);
        CHECK(std::abs(npv_by_year(a, in)) <= 0.01);
    }
}

TEST_CASE("break-even price rises with costs and falls with output") {
    const auto base = canada(0.06, 0.25);
    const double p0 = msp_closed_form(base);
    auto more_capex = base;
    more_capex.capex *= 1.1;
    CHECK(msp_closed_form(more_capex) > p0);
    auto more_opex = base;
    more_opex.opex *= 1.1;
    CHECK(msp_closed_form(more_opex) > p0);
    auto more_q = base;
    more_q.quantity *= 1.1;
    CHECK(msp_closed_form(more_q) < p0);
    auto higher_r = base;
    higher_r.discount_rate = 0.09;
    CHECK(msp_closed_form(higher_r) > p0);

    auto scaled = base;
    scaled.capex *= 3;
    scaled.opex *= 3;
    scaled.tfc *= 3;
    scaled.quantity *= 3;
    CHECK(msp_closed_form(scaled) == doctest::Approx(p0).epsilon(1e-12));
}

TEST_CASE("invalid inputs") {
    auto in = canada();
    in.quantity = 0;
    CHECK_THROWS_AS(msp_closed_form(in), std::domain_error);
    in = canada(0.0, 1.0);
    CHECK_THROWS_AS(msp_closed_form(in), std::domain_error);
    in = canada(-0.1, 0.0);
    CHECK_THROWS_AS(msp_closed_form(in), std::domain_error);
    in = canada();
    CHECK_THROWS_AS(msp_bisection(in, 100.0, 200.0), SolveError);
}

TEST_CASE("solve_msp carries a consistent trace") {
    auto r = solve_msp(canada(0.08, 0.25));
    REQUIRE(r.annual_trace.size() == 20);
    double sum = 0.0;
    for (const auto& y : r.annual_trace) sum += y.discounted;
    const double pv_salvage = 545'000.0 / std::pow(1.08, 20);
    CHECK(sum + pv_salvage - 6'540'000.0 == doctest::Approx(0.0).epsilon(1e-6).scale(1e6));
    CHECK(per_tj(r.msp, 16.0) == doctest::Approx(r.msp / 0.016));
}

TEST_CASE("world-average plant lands near the reference average price") {
    const auto file = std::filesystem::path(PELLET_TEST_DATA) / "global2021" / "plant_costs.csv";
    const auto table = csv::parse(csv::read_file(file.string()));
    double capex_sum = 0.0, opex_sum = 0.0;
    for (const auto& row : table.rows) {
        capex_sum += *csv::parse_number(row[1]);
        opex_sum += *csv::parse_number(row[2]);
    }
    const double n = static_cast<double>(table.rows.size());
    ClaspInputs in = canada();
    in.capex = capex_sum / n;
    in.opex = opex_sum / n;
    in.tfc = in.capex / 1.2;
    const double msp = msp_closed_form(in);
    CHECK(msp == doctest::Approx(106.0).epsilon(0.01));
    CHECK(per_tj(msp, 16.0) == doctest::Approx(6'600.0).epsilon(0.01));

    // positive rates only add capital charges: within +10% over typical ranges
    for (double r : {0.03, 0.05, 0.08}) {
        for (double tr : {0.0, 0.3}) {
            in.discount_rate = r;
            in.tax_rate = tr;
            const double m = msp_closed_form(in);
            CHECK(m > msp);
            CHECK(m < 1.10 * 106.0);
        }
    }
}
