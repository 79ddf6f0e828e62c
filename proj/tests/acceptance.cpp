// Acceptance checks. Prints one PASS/FAIL line per criterion; exits nonzero
// if any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <random>
#include <sstream>
#include <string>

#include "pellet/clasp.hpp"
#include "pellet/cost.hpp"
#include "pellet/csv.hpp"
#include "pellet/pipeline.hpp"
#include "pellet/recop.hpp"
#include "pellet/sensitivity.hpp"
#include "support/synthetic.hpp"

using namespace pellet;

namespace {

namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

const fs::path kData = PELLET_TEST_DATA;

struct Outcome {
    bool pass = false;
    std::string detail;
};

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::string fmt(const char* f, double a, double b = 0, double c = 0) {
    char buf[256];
    std::snprintf(buf, sizeof buf, f, a, b, c);
    return buf;
}

Dataset reference_fixture() { return load_dataset({kData / "global2021"}, ModelConfig{}); }

Outcome ac1() {
    const auto t0 = Clock::now();
    const auto d = reference_fixture();
    const auto r = run_pipeline(d, {Stage::residue, 1, std::nullopt});
    const double elapsed = seconds_since(t0);

    const auto table = csv::parse(csv::read_file((kData / "global2021" / "residue_totals.csv").string()));
    int cells = 0, bad = 0;
    double worst = 0.0;
    std::string first_bad;
    for (const auto& row : table.rows) {
        const CountryReport* rep = nullptr;
        for (const auto& c : r.countries)
            if (c.country == row[0]) rep = &c;
        if (!rep) {
            ++bad;
            first_bad = row[0] + " missing";
            continue;
        }
        for (std::size_t k = 0; k < 4; ++k) {
            const auto expected = csv::parse_number(row[k + 1]);
            if (!expected) continue;
            ++cells;
            const double mt = rep->residue.cr_total[static_cast<CropKind>(k)] / 1e6;
            const double shown = std::round(mt * 100.0) / 100.0;
            const double err = std::abs(shown - *expected);
            worst = std::max(worst, err);
            if (err > 0.01 + 1e-9) {
                ++bad;
                if (first_bad.empty()) first_bad = row[0];
            }
        }
    }
    Outcome o;
    o.pass = bad == 0 && cells > 0 && elapsed < 1.0 && r.countries.size() == 178;
    o.detail = std::to_string(cells) + " cells, " + std::to_string(bad) + " outside 0.01 Mt" +
               fmt(" (worst %.3f Mt), %.3f s for ", worst, elapsed) + std::to_string(r.countries.size()) +
               " countries" + (first_bad.empty() ? "" : ", first mismatch " + first_bad);
    return o;
}

Outcome ac2() {
    const auto r = run_pipeline(reference_fixture(), {Stage::residue, 1, std::nullopt});
    const double gt = r.global.cr_final / 1e9;
    return {std::abs(gt - 1.44) <= 0.03 * 1.44, fmt("world cr_final %.4f Gt (target 1.44 +/- 3%%)", gt)};
}

Outcome ac3() {
    const auto r = run_pipeline(reference_fixture(), {Stage::residue, 1, std::nullopt});
    const double mtj = r.global.pellet_energy / 1e6;
    return {std::abs(mtj - 21.9) <= 0.05 * 21.9,
            fmt("world pellet energy %.3f M TJ at efficiency 0.95 (target 21.9 +/- 5%%)", mtj)};
}

Outcome ac4() {
    const auto c = capex(1.0);
    const double o = opex(1, 1, 1, 1).total();
    const bool pass = std::abs(c.capex - 6'540'000.0) <= 1.0 && std::abs(o - 2'540'000.0) <= 1.0;
    return {pass, fmt("CAPEX %.2f, OPEX %.2f", c.capex, o)};
}

Outcome ac5() {
    std::mt19937_64 rng(20240601);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const auto t0 = Clock::now();
    double worst_gap = 0.0, worst_npv = 0.0;
    for (int i = 0; i < 1000; ++i) {
        ClaspInputs in;
        in.capex = 5e5 + 3e7 * u(rng);
        in.tfc = in.capex * (0.4 + 0.6 * u(rng));
        in.opex = 5e4 + 1e7 * u(rng);
        in.quantity = 1e3 + 3e5 * u(rng);
        in.years = 1 + static_cast<int>(40 * u(rng));
        in.discount_rate = 0.25 * u(rng);
        in.tax_rate = 0.6 * u(rng);
        in.salvage_rate = 0.5 * u(rng);
        const double a = msp_closed_form(in);
        const double b = msp_bisection(in);
        worst_gap = std::max(worst_gap, std::abs(a - b));
        worst_npv = std::max(worst_npv, std::abs(npv(a, in)));
    }
    const double elapsed = seconds_since(t0);
    return {worst_gap <= 0.01 && worst_npv <= 0.01 && elapsed < 1.0,
            fmt("max |closed - bisection| %.2e $/t, max |NPV(msp)| %.2e $, %.3f s", worst_gap, worst_npv, elapsed)};
}

Outcome ac6() {
    const ModelConfig cfg;
    const auto cost = estimate_costs({{1.0}, {1.0}, {1.0}, {1.0}});
    const double msp0 = solve_msp(clasp_inputs_for(cost, 0.0, 0.0, cfg)).msp;
    const bool anchor = std::abs(msp0 - 70.85) <= 0.01;

    double worst_rel = 0.0, at_tr = 0.0, worst_msp = msp0;
    for (double tr : {0.1, 0.25, 0.4, 0.6}) {
        const double m = solve_msp(clasp_inputs_for(cost, 0.0, tr, cfg)).msp;
        const double rel = std::abs(m - msp0) / msp0;
        if (rel > worst_rel) {
            worst_rel = rel;
            at_tr = tr;
            worst_msp = m;
        }
    }
    const bool neutral = worst_rel <= 1e-6;
    std::string d = fmt("r=0 tr=0 MSP %.4f $/t", msp0) + (anchor ? " (anchor ok)" : " (anchor off)") +
        fmt("; tax neutrality worst rel diff %.3e at tr=%.2f (MSP %.4f)", worst_rel, at_tr, worst_msp);
    if (!neutral) d += "; depreciable base is CAPEX/1.2, so tax on the untaxed-but-invested 20% shifts MSP";
    return {anchor && neutral, d};
}

Outcome ac7() {
    FuelEconomics e;
    e.fuels[FuelKind::coal].lcoe = 4'403.0;
    e.fuels[FuelKind::oil].lcoe = 14'036.0;
    e.fuels[FuelKind::natural_gas].lcoe = 13'563.0;
    e.pellet.lcoe = 6'600.0;
    const auto fuels = Dataset::defaults().fuels;
    for (auto f : kAllFuels) e.fuels[f].emission_intensity = emission_intensity(fuels[f].ef, fuels[f].lhv);
    e.pellet.emission_intensity = emission_intensity(151.0, 16.0);

    const auto a = rank_fuels(e, Scenario::A, 0.0);
    const bool order_ok = a.order == std::array<FuelKind, 3>{FuelKind::oil, FuelKind::natural_gas, FuelKind::coal};

    // C at zero tax must reproduce A bit for bit, on the anchor and on random countries
    bool same = rank_fuels(e, Scenario::C, 0.0).order == a.order && rank_fuels(e, Scenario::C, 0.0).score == a.score;
    const auto d = testing::random_dataset(500, 77);
    Dataset dc = d;
    dc.config.scenario = Scenario::C;
    dc.config.carbon_tax = 0.0;
    const auto ra = run_pipeline(d);
    const auto rc = run_pipeline(dc);
    for (std::size_t i = 0; i < ra.countries.size() && same; ++i) {
        const auto& pa = *ra.countries[i].plan;
        const auto& pc = *rc.countries[i].plan;
        same = pa.ranking.order == pc.ranking.order && pa.ranking.score == pc.ranking.score &&
               pa.allocation.allocated == pc.allocation.allocated && pa.s_ec == pc.s_ec && pa.s_em == pc.s_em;
    }
    same = same && ra.global.s_ec == rc.global.s_ec;
    std::string order;
    for (auto f : a.order) order += std::string(order.empty() ? "" : ",") + std::string(to_string(f));
    return {order_ok && same, "scenario A order [" + order + "]; scenario C at zero tax " +
                                  (same ? "identical to A" : "differs from A") + " (anchor + 500 countries)"};
}

Outcome ac8() {
    auto d = testing::random_dataset(10'000, 8080);
    const auto a = run_pipeline(d, {Stage::recop, 2, std::nullopt});
    d.config.scenario = Scenario::B;
    const auto b = run_pipeline(d, {Stage::recop, 2, std::nullopt});
    if (!a.errors.empty() || !b.errors.empty()) return {false, "unexpected country errors"};

    double worst_cons = 0.0;
    int over = 0, dominated = 0;
    for (std::size_t i = 0; i < a.countries.size(); ++i) {
        for (const auto* r : {&a.countries[i], &b.countries[i]}) {
            const auto& p = *r->plan;
            double sum = p.allocation.unused;
            for (auto f : kAllFuels) {
                sum += p.allocation.allocated[f];
                if (p.allocation.allocated[f] > (*r->fuel_consumption)[f]) ++over;
            }
            const double e = r->energy.pellet_energy;
            if (e > 0) worst_cons = std::max(worst_cons, std::abs(sum - e) / e);
            else worst_cons = std::max(worst_cons, std::abs(sum));
        }
        const double sa = a.countries[i].plan->s_em, sb = b.countries[i].plan->s_em;
        if (sb < sa - 1e-12 * (std::abs(sa) + std::abs(sb))) ++dominated;
    }
    const bool pass = worst_cons <= 1e-9 && over == 0 && dominated == 0 && b.global.s_em >= a.global.s_em;
    return {pass, "10000 countries: max conservation error " + fmt("%.2e", worst_cons) + ", " + std::to_string(over) +
                      " over-allocations, " + std::to_string(dominated) + " countries with s_em(B) < s_em(A)"};
}

Outcome ac9() {
    const auto d = testing::random_dataset(30, 9090);
    const auto g = sweep(d, d.config, 2);
    int violations = 0, multi = 0;
    for (std::size_t m = 0; m < g.fossil_multipliers.size(); ++m) {
        int changes = 0;
        for (std::size_t p = 1; p < g.pellet_prices.size(); ++p) {
            if (g.at(m, p).s_ec > g.at(m, p - 1).s_ec) ++violations;
            if ((g.at(m, p).s_ec < 0) != (g.at(m, p - 1).s_ec < 0)) ++changes;
        }
        if (changes > 1) ++multi;
    }
    for (std::size_t p = 0; p < g.pellet_prices.size(); ++p)
        for (std::size_t m = 1; m < g.fossil_multipliers.size(); ++m)
            if (g.at(m, p).s_ec < g.at(m - 1, p).s_ec) ++violations;
    return {violations == 0 && multi == 0, std::to_string(g.cells.size()) + " cells, " + std::to_string(violations) +
                                               " monotonicity violations, " + std::to_string(multi) +
                                               " rows with more than one sign change"};
}

Outcome ac10() {
    std::vector<std::pair<std::string, Dataset>> sets;
    sets.emplace_back("demo", load_dataset({kData / "demo"}, load_config(kData / "demo" / "config.json")));
    sets.emplace_back("synthetic-300", testing::random_dataset(300, 1010));
    bool pass = true;
    std::ostringstream detail;
    for (auto& [name, d] : sets) {
        d.config.scenario = Scenario::A;
        const auto a = run_pipeline(d);
        d.config.scenario = Scenario::B;
        const auto b = run_pipeline(d);
        double ec = 0.0, em = 0.0;
        for (const auto& c : a.countries) {
            ec += c.plan->s_ec;
            em += c.plan->s_em;
        }
        const bool sums = a.errors.empty() && ec == a.global.s_ec && em == a.global.s_em;
        const bool order = b.global.s_em > a.global.s_em;
        pass = pass && sums && order;
        detail << name << ": totals " << (sums ? "exact" : "MISMATCH") << ", s_em B/A = " << fmt("%.3f", b.global.s_em / a.global.s_em)
               << "; ";
    }
    detail << "headline magnitudes need per-country price and rate files that are not available, so they are not checked";
    return {pass, detail.str()};
}

}  // namespace

int main() {
    const std::pair<const char*, std::function<Outcome()>> checks[] = {
        {"AC1", ac1}, {"AC2", ac2}, {"AC3", ac3}, {"AC4", ac4}, {"AC5", ac5},
        {"AC6", ac6}, {"AC7", ac7}, {"AC8", ac8}, {"AC9", ac9}, {"AC10", ac10},
    };
    int failed = 0;
    for (const auto& [id, fn] : checks) {
        Outcome o;
        try {
            o = fn();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        if (!o.pass) ++failed;
        std::printf("%s %s: %s\n", o.pass ? "PASS" : "FAIL", id, o.detail.c_str());
    }
    std::printf("%d of %zu criteria failed\n", failed, std::size(checks));
    return failed == 0 ? 0 : 1;
}
