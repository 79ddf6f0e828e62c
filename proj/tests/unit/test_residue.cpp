#include <doctest.h>

#include <random>

#include "pellet/residue.hpp"
#include "support/synthetic.hpp"

using namespace pellet;

namespace {

// Straight-line re-derivation kept apart from the library code path.
double oracle_final(const CountryProfile& c, const Dataset& d) {
    const double rtp[] = {1.00, 1.40, 1.00, 1.30};
    const double srr[] = {0.50, 0.60, 0.875, 0.40};
    const double dmr_world[] = {0.7374, 0.8774, 0.4388, 0.8627};
    const double kg_per_day[] = {0.375, 1.5, 0.1, 0.063};
    double removable = 0.0;
    for (int k = 0; k < 4; ++k) {
        const auto crop = static_cast<CropKind>(k);
        const double dmr = c.dmr_override[crop].value_or(dmr_world[k]);
        removable += c.production[crop] * rtp[k] * srr[k] * dmr;
    }
    double feed = 0.0;
    for (int k = 0; k < 4; ++k) feed += c.livestock[static_cast<AnimalKind>(k)] * kg_per_day[k] * 365.0 / 1000.0;
    const double uses = feed + c.bagasse_bioenergy + c.other_residue_bioenergy * 0.313 * 0.91;
    (void)d;
    return removable > uses ? removable - uses : 0.0;
}

CountryProfile blank() {
    CountryProfile c;
    c.name = "X";
    c.continent = "Asia";
    return c;
}

}  // namespace

TEST_CASE("total residue") {
    CHECK(total_residue(3.90e6, 1.30) == doctest::Approx(5.07e6).epsilon(1e-12));
    CHECK(total_residue(0.0, 1.3) == 0.0);
    CHECK(total_residue(12.75e6, 1.00) == 12.75e6);
}

TEST_CASE("removable dry residue") {
    CHECK(removable_dry_residue(5.07e6, 0.40, 0.8627) == doctest::Approx(1.749556e6).epsilon(1e-6));
    CHECK(removable_dry_residue(123.0, 1.0, 1.0) == 123.0);
}

TEST_CASE("feed and bedding use") {
    const auto rates = Dataset::defaults().livestock_rates;
    PerAnimal<double> heads{};
    heads[AnimalKind::cattle] = 5.12e6;
    heads[AnimalKind::horses] = 0.02e6;
    heads[AnimalKind::sheep] = 13.53e6;
    CHECK(feed_bedding_use(heads, rates) == doctest::Approx(1'205'595.0).epsilon(1e-12));
    CHECK(feed_bedding_use(PerAnimal<double>{}, rates) == 0.0);
}

TEST_CASE("bioenergy use attribution") {
    auto b = bioenergy_use(0.0, 1e6);
    CHECK(b.bagasse == 0.0);
    CHECK(b.attributed_other == doctest::Approx(284'830.0).epsilon(1e-12));
    b = bioenergy_use(500.0, 0.0);
    CHECK(b.bagasse == 500.0);
    CHECK(b.attributed_other == 0.0);
}

TEST_CASE("final residue subtracts uses and clamps") {
    ResidueAssessment a;
    a.cr_removable_dry[CropKind::maize] = 6e6;
    a.cr_removable_dry[CropKind::wheat] = 4e6;
    a.feed_bedding_use = 2e6;
    a.bioenergy_use_bagasse = 1e6;
    finalize_residue(a);
    CHECK(a.cr_final == 7e6);
    CHECK_FALSE(a.use_saturated);
    CHECK(a.cr_final_by_crop[CropKind::maize] == doctest::Approx(4.2e6));
    CHECK(a.cr_final_by_crop[CropKind::wheat] == doctest::Approx(2.8e6));

    ResidueAssessment s;
    s.cr_removable_dry[CropKind::rice] = 1e6;
    s.feed_bedding_use = 2e6;
    finalize_residue(s);
    CHECK(s.cr_final == 0.0);
    CHECK(s.use_saturated);
    CHECK(s.cr_final_by_crop[CropKind::rice] == 0.0);

    ResidueAssessment none;
    finalize_residue(none);
    CHECK(none.cr_final == 0.0);
    CHECK_FALSE(none.use_saturated);
}

TEST_CASE("Afghanistan wheat through the full chain") {
    Dataset d = Dataset::defaults();
    auto c = blank();
    c.production[CropKind::wheat] = 3.90e6;
    const auto a = assess_residue(c, d);
    CHECK(a.cr_total[CropKind::wheat] == doctest::Approx(5.07e6).epsilon(1e-12));
    CHECK(a.cr_removable_dry[CropKind::wheat] == doctest::Approx(1'749'555.6).epsilon(1e-12));
    CHECK(a.dmr_source[CropKind::wheat] == Provenance::world_average);
    CHECK(a.cr_final == a.removable_total());
}

TEST_CASE("agrees with an independent oracle on random countries") {
    const Dataset d = testing::random_dataset(200, 42);
    for (const auto& c : d.countries) {
        const auto a = assess_residue(c, d);
        CHECK(a.cr_final == doctest::Approx(oracle_final(c, d)).epsilon(1e-12).scale(1.0));
        double split = 0.0;
        for (auto crop : kAllCrops) split += a.cr_final_by_crop[crop];
        CHECK(split == doctest::Approx(a.cr_final).epsilon(1e-12));
        CHECK(a.cr_final >= 0.0);
        CHECK(a.cr_final <= a.removable_total());
    }
}

TEST_CASE("scaling every input scales the result") {
    const Dataset d = testing::random_dataset(50, 7);
    for (const auto& c : d.countries) {
        CountryProfile k = c;
        for (auto& p : k.production) p *= 3.0;
        for (auto& h : k.livestock) h *= 3.0;
        k.bagasse_bioenergy *= 3.0;
        k.other_residue_bioenergy *= 3.0;
        CHECK(assess_residue(k, d).cr_final == doctest::Approx(3.0 * assess_residue(c, d).cr_final).epsilon(1e-12));
    }
}

TEST_CASE("more production never lowers final residue; more use never raises it") {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(0.0, 1e7);
    const Dataset d = testing::random_dataset(50, 9);
    for (const auto& c : d.countries) {
        const double base = assess_residue(c, d).cr_final;
        for (auto crop : kAllCrops) {
            CountryProfile more = c;
            more.production[crop] += u(rng);
            CHECK(assess_residue(more, d).cr_final >= base);
        }
        CountryProfile used = c;
        used.bagasse_bioenergy += u(rng);
        CHECK(assess_residue(used, d).cr_final <= base);
    }
}
