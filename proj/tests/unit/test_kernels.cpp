#include <doctest.h>

#include <cstring>
#include <random>

#include "pellet/energy.hpp"
#include "pellet/kernels/batch.hpp"
#include "pellet/residue.hpp"
#include "support/synthetic.hpp"

using namespace pellet;
using namespace pellet::kernels;

namespace {

bool same_bits(const std::vector<double>& a, const std::vector<double>& b) {
    return a.size() == b.size() && (a.empty() || std::memcmp(a.data(), b.data(), a.size() * sizeof(double)) == 0);
}

template <typename E>
bool same_bits(const EnumArray<E, std::vector<double>>& a, const EnumArray<E, std::vector<double>>& b) {
    for (std::size_t i = 0; i < EnumCount<E>::value; ++i)
        if (!same_bits(a[static_cast<E>(i)], b[static_cast<E>(i)])) return false;
    return true;
}

ResidueParams residue_params() {
    const auto d = Dataset::defaults();
    return {d.crops, d.livestock_rates, 0.95};
}

ResidueColumns residue_inputs(std::size_t n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    ResidueColumns c;
    c.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        const int mode = static_cast<int>(i % 5);  // 0 empty, 1 saturated, others random
        for (auto crop : kAllCrops) {
            c.production[crop][i] = mode == 0 || u(rng) < 0.2 ? 0.0 : 5e7 * u(rng);
            c.dmr[crop][i] = 0.3 + 0.7 * u(rng);
        }
        for (auto a : kAllAnimals) c.livestock[a][i] = (mode == 1 ? 5e8 : 5e7) * u(rng);
        c.bagasse[i] = u(rng) < 0.5 ? 0.0 : 5e6 * u(rng);
        c.other[i] = 1e7 * u(rng);
    }
    return c;
}

RecopColumns recop_inputs(std::size_t n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    RecopColumns c;
    c.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        c.pellet_energy[i] = i % 7 == 0 ? 0.0 : 3e6 * u(rng);
        c.pellet_lhv[i] = 14.6 + 2.7 * u(rng);
        c.pellet_price[i] = 300 * u(rng);
        for (auto f : kAllFuels) {
            c.fuel_price[f][i] = 1000 * u(rng);
            c.consumption[f][i] = u(rng) < 0.1 ? 0.0 : 1e6 * u(rng);
        }
        if (i % 6 == 0) {
            // equal scores exercise the tie order
            c.fuel_price[FuelKind::oil][i] = c.fuel_price[FuelKind::natural_gas][i];
        }
        if (i % 11 == 0) {
            for (auto f : kAllFuels) c.fuel_price[f][i] = 0.0;
        }
    }
    return c;
}

void check_residue_equal(const ResidueColumns& a, const ResidueColumns& b) {
    CHECK(same_bits(a.cr_total, b.cr_total));
    CHECK(same_bits(a.removable, b.removable));
    CHECK(same_bits(a.final_by_crop, b.final_by_crop));
    CHECK(same_bits(a.feed, b.feed));
    CHECK(same_bits(a.attributed_other, b.attributed_other));
    CHECK(same_bits(a.cr_final, b.cr_final));
    CHECK(same_bits(a.weighted_lhv, b.weighted_lhv));
    CHECK(same_bits(a.pellet_mass, b.pellet_mass));
    CHECK(same_bits(a.pellet_energy, b.pellet_energy));
    CHECK(a.saturated == b.saturated);
    CHECK(a.lhv_basis == b.lhv_basis);
}

void check_recop_equal(const RecopColumns& a, const RecopColumns& b) {
    CHECK(same_bits(a.allocated, b.allocated));
    CHECK(same_bits(a.unused, b.unused));
    CHECK(same_bits(a.s_ec, b.s_ec));
    CHECK(same_bits(a.s_em, b.s_em));
}

}  // namespace

TEST_CASE("instruction set selection") {
    CHECK(parse_isa("scalar") == Isa::scalar);
    CHECK(parse_isa("avx2") == Isa::avx2);
    CHECK_FALSE(parse_isa("neon").has_value());
    CHECK(isa_supported(Isa::scalar));
    set_isa_override(Isa::scalar);
    CHECK(active_kernels().isa == Isa::scalar);
    set_isa_override(std::nullopt);
    if (!isa_supported(Isa::avx2)) CHECK_THROWS(set_isa_override(Isa::avx2));
}

TEST_CASE("scalar residue kernel matches the per-country functions") {
    const auto d = testing::random_dataset(40, 21);
    const auto p = residue_params();
    ResidueColumns cols;
    cols.resize(d.countries.size());
    for (std::size_t i = 0; i < d.countries.size(); ++i) {
        const auto& c = d.countries[i];
        for (auto crop : kAllCrops) {
            cols.production[crop][i] = c.production[crop];
            cols.dmr[crop][i] = resolve(Field::dmr(crop), c, d).value;
        }
        for (auto a : kAllAnimals) cols.livestock[a][i] = c.livestock[a];
        cols.bagasse[i] = c.bagasse_bioenergy;
        cols.other[i] = c.other_residue_bioenergy;
    }
    scalar::residue(p, cols);
    for (std::size_t i = 0; i < d.countries.size(); ++i) {
        const auto a = assess_residue(d.countries[i], d);
        const auto e = assess_energy(a, d.crops, 0.95);
        CHECK(cols.cr_final[i] == a.cr_final);
        CHECK(cols.pellet_energy[i] == e.pellet_energy);
        CHECK(cols.weighted_lhv[i] == e.weighted_lhv);
        CHECK((cols.saturated[i] != 0) == a.use_saturated);
    }
}

TEST_CASE("scalar recop kernel matches the per-country plan") {
    const auto d = Dataset::defaults();
    auto cols = recop_inputs(50, 4);
    const RecopParams p{d.fuels, d.pellet_ef, score_weights(Scenario::B, 0.0), 1.0, std::nullopt};
    scalar::recop(p, cols);
    for (std::size_t i = 0; i < cols.size(); ++i) {
        PerFuel<double> prices, cons;
        for (auto f : kAllFuels) {
            prices[f] = cols.fuel_price[f][i];
            cons[f] = cols.consumption[f][i];
        }
        const auto econ = build_fuel_economics(prices, d.fuels, cols.pellet_price[i], cols.pellet_lhv[i], d.pellet_ef);
        const auto plan = plan_replacement(cols.pellet_energy[i], cons, econ, Scenario::B, 0.0);
        CHECK(cols.s_ec[i] == plan.s_ec);
        CHECK(cols.s_em[i] == plan.s_em);
        CHECK(cols.unused[i] == plan.unused_pellet_energy);
    }
}

#if defined(PELLET_HAVE_AVX2_KERNELS)
TEST_CASE("vector kernels are bit-identical to the scalar reference") {
    if (!isa_supported(Isa::avx2)) {
        MESSAGE("AVX2 not available on this CPU; skipped");
        return;
    }
    const auto d = Dataset::defaults();
    for (std::size_t n : {0u, 1u, 3u, 4u, 5u, 7u, 8u, 13u, 1001u}) {
        CAPTURE(n);
        auto a = residue_inputs(n, 100 + n);
        auto b = a;
        scalar::residue(residue_params(), a);
        avx2::residue(residue_params(), b);
        check_residue_equal(a, b);

        for (auto scenario : {Scenario::A, Scenario::B, Scenario::C}) {
            for (std::optional<double> override : {std::optional<double>{}, std::optional<double>{48.0}}) {
                const RecopParams p{d.fuels, d.pellet_ef, score_weights(scenario, 85.0), 0.75, override};
                auto x = recop_inputs(n, 200 + n);
                auto y = x;
                scalar::recop(p, x);
                avx2::recop(p, y);
                check_recop_equal(x, y);
            }
        }
    }
}
#endif
