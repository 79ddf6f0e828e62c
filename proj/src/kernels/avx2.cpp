// Built with -mavx2 and -ffp-contract=off. No FMA: every product and sum is
// rounded exactly where the scalar reference rounds it.

#include <immintrin.h>

#include "pellet/energy.hpp"
#include "pellet/kernels/batch.hpp"

namespace pellet::kernels::avx2 {

namespace {

constexpr std::size_t kLanes = 4;

// EnumArray of vector registers without dropping their alignment attributes.
template <typename E>
struct Vec {
    __m256d v[EnumCount<E>::value];
    __m256d& operator[](E e) { return v[static_cast<std::size_t>(e)]; }
};

inline __m256d load(const std::vector<double>& v, std::size_t i) { return _mm256_loadu_pd(v.data() + i); }
inline void store(std::vector<double>& v, std::size_t i, __m256d x) { _mm256_storeu_pd(v.data() + i, x); }
inline __m256d splat(double x) { return _mm256_set1_pd(x); }

inline void store_mask(std::vector<std::uint8_t>& v, std::size_t i, __m256d mask, std::uint8_t on,
                       std::uint8_t off) {
    const int bits = _mm256_movemask_pd(mask);
    for (std::size_t k = 0; k < kLanes; ++k) v[i + k] = (bits >> k) & 1 ? on : off;
}

}  // namespace

void residue(const ResidueParams& p, ResidueColumns& cols) {
    const std::size_t n = cols.size();
    const std::size_t body = n - n % kLanes;
    const __m256d zero = _mm256_setzero_pd();

    PerCrop<double> equal;
    for (auto& s : equal) s = 1.0;
    const __m256d unweighted_lhv = splat(weighted_lhv(equal, p.crops));

    for (std::size_t i = 0; i < body; i += kLanes) {
        Vec<CropKind> rem;
        __m256d removable = zero;
        for (auto c : kAllCrops) {
            const __m256d total = _mm256_mul_pd(load(cols.production[c], i), splat(p.crops[c].rtp));
            rem[c] = _mm256_mul_pd(_mm256_mul_pd(total, splat(p.crops[c].srr)), load(cols.dmr[c], i));
            store(cols.cr_total[c], i, total);
            store(cols.removable[c], i, rem[c]);
            removable = _mm256_add_pd(removable, rem[c]);
        }

        __m256d feed = zero;
        for (auto a : kAllAnimals) {
            __m256d t = _mm256_mul_pd(load(cols.livestock[a], i), splat(p.livestock_rates[a]));
            t = _mm256_div_pd(_mm256_mul_pd(t, splat(kDaysPerYear)), splat(1000.0));
            feed = _mm256_add_pd(feed, t);
        }
        const __m256d bagasse = load(cols.bagasse, i);
        const __m256d attributed = _mm256_mul_pd(_mm256_mul_pd(load(cols.other, i), splat(kCerealShareOfCrops)),
                                                 splat(kFocalShareOfCereals));

        const __m256d net = _mm256_sub_pd(_mm256_sub_pd(_mm256_sub_pd(removable, feed), bagasse), attributed);
        const __m256d uses = _mm256_add_pd(_mm256_add_pd(feed, bagasse), attributed);
        const __m256d saturated =
            _mm256_and_pd(_mm256_cmp_pd(net, zero, _CMP_LE_OQ), _mm256_cmp_pd(uses, zero, _CMP_GT_OQ));
        const __m256d final_total = _mm256_max_pd(net, zero);
        const __m256d has_removable = _mm256_cmp_pd(removable, zero, _CMP_GT_OQ);

        __m256d w_final = zero, t_final = zero, w_rem = zero, t_rem = zero;
        for (auto c : kAllCrops) {
            const __m256d share =
                _mm256_blendv_pd(zero, _mm256_div_pd(_mm256_mul_pd(final_total, rem[c]), removable), has_removable);
            store(cols.final_by_crop[c], i, share);
            const __m256d lhv = splat(p.crops[c].lhv);
            w_final = _mm256_add_pd(w_final, _mm256_mul_pd(share, lhv));
            t_final = _mm256_add_pd(t_final, share);
            w_rem = _mm256_add_pd(w_rem, _mm256_mul_pd(rem[c], lhv));
            t_rem = _mm256_add_pd(t_rem, rem[c]);
        }
        const __m256d use_final = _mm256_cmp_pd(t_final, zero, _CMP_GT_OQ);
        const __m256d use_rem = _mm256_andnot_pd(use_final, _mm256_cmp_pd(t_rem, zero, _CMP_GT_OQ));
        __m256d lhv = unweighted_lhv;
        lhv = _mm256_blendv_pd(lhv, _mm256_div_pd(w_rem, t_rem), use_rem);
        lhv = _mm256_blendv_pd(lhv, _mm256_div_pd(w_final, t_final), use_final);

        const __m256d mass = _mm256_mul_pd(final_total, splat(p.efficiency));
        const __m256d energy = _mm256_mul_pd(_mm256_mul_pd(mass, lhv), splat(1e-3));

        store(cols.feed, i, feed);
        store(cols.attributed_other, i, attributed);
        store(cols.cr_final, i, final_total);
        store(cols.weighted_lhv, i, lhv);
        store(cols.pellet_mass, i, mass);
        store(cols.pellet_energy, i, energy);
        store_mask(cols.saturated, i, saturated, 1, 0);
        const int final_bits = _mm256_movemask_pd(use_final);
        const int rem_bits = _mm256_movemask_pd(use_rem);
        for (std::size_t k = 0; k < kLanes; ++k) {
            const auto basis = (final_bits >> k) & 1 ? LhvBasis::final_residue
                               : (rem_bits >> k) & 1 ? LhvBasis::removable_residue
                                                     : LhvBasis::unweighted;
            cols.lhv_basis[i + k] = static_cast<std::uint8_t>(basis);
        }
    }
    scalar::residue_range(p, cols, body, n);
}

void recop(const RecopParams& p, RecopColumns& cols) {
    const std::size_t n = cols.size();
    const std::size_t body = n - n % kLanes;
    const __m256d zero = _mm256_setzero_pd();
    const __m256d one = splat(1.0);

    PerFuel<double> denom, intensity;
    for (auto f : kAllFuels) {
        denom[f] = p.fuels[f].lhv * 1e-3;
        intensity[f] = p.fuels[f].ef / denom[f];
    }

    for (std::size_t i = 0; i < body; i += kLanes) {
        const __m256d pellet_denom = _mm256_mul_pd(load(cols.pellet_lhv, i), splat(1e-3));
        const __m256d pellet_price =
            p.pellet_price_override ? splat(*p.pellet_price_override) : load(cols.pellet_price, i);
        const __m256d pellet_lcoe = _mm256_div_pd(pellet_price, pellet_denom);
        const __m256d pellet_intensity = _mm256_div_pd(splat(p.pellet_ef), pellet_denom);

        Vec<FuelKind> cost_margin, emission_margin, score, cons;
        for (auto f : kAllFuels) {
            const __m256d price = _mm256_mul_pd(load(cols.fuel_price[f], i), splat(p.fuel_price_multiplier));
            cost_margin[f] = _mm256_sub_pd(_mm256_div_pd(price, splat(denom[f])), pellet_lcoe);
            emission_margin[f] = _mm256_sub_pd(splat(intensity[f]), pellet_intensity);
            score[f] = _mm256_add_pd(_mm256_mul_pd(splat(p.weights.cost), cost_margin[f]),
                                     _mm256_mul_pd(splat(p.weights.emission), emission_margin[f]));
            cons[f] = load(cols.consumption[f], i);
        }

        // rank position of each fuel: how many others sort ahead of it
        Vec<FuelKind> pos;
        for (auto f : kAllFuels) {
            pos[f] = zero;
            for (auto j : kAllFuels) {
                if (j == f) continue;
                __m256d ahead = _mm256_cmp_pd(score[j], score[f], _CMP_GT_OQ);
                if (canonical_rank(j) < canonical_rank(f))
                    ahead = _mm256_or_pd(ahead, _mm256_cmp_pd(score[j], score[f], _CMP_EQ_OQ));
                pos[f] = _mm256_add_pd(pos[f], _mm256_and_pd(ahead, one));
            }
        }

        __m256d remaining = load(cols.pellet_energy, i);
        Vec<FuelKind> alloc;
        for (auto f : kAllFuels) alloc[f] = zero;
        for (int k = 0; k < 3; ++k) {
            const __m256d slot = splat(static_cast<double>(k));
            __m256d c = zero;
            Vec<FuelKind> here;
            for (auto f : kAllFuels) {
                here[f] = _mm256_cmp_pd(pos[f], slot, _CMP_EQ_OQ);
                c = _mm256_blendv_pd(c, cons[f], here[f]);
            }
            const __m256d take = _mm256_min_pd(c, remaining);
            remaining = _mm256_sub_pd(remaining, take);
            for (auto f : kAllFuels) alloc[f] = _mm256_blendv_pd(alloc[f], take, here[f]);
        }

        __m256d s_ec = zero, s_em = zero;
        for (auto f : kAllFuels) {
            s_ec = _mm256_add_pd(s_ec, _mm256_mul_pd(alloc[f], cost_margin[f]));
            s_em = _mm256_add_pd(s_em, _mm256_mul_pd(alloc[f], emission_margin[f]));
            store(cols.allocated[f], i, alloc[f]);
        }
        store(cols.unused, i, remaining);
        store(cols.s_ec, i, s_ec);
        store(cols.s_em, i, s_em);
    }
    scalar::recop_range(p, cols, body, n);
}

}  // namespace pellet::kernels::avx2
