#include <atomic>
#include <cstdlib>
#include <stdexcept>
#include <string>

#include "pellet/kernels/batch.hpp"

namespace pellet::kernels {

namespace {

constexpr KernelTable kScalarTable{Isa::scalar, &scalar::residue, &scalar::recop};
#if defined(PELLET_HAVE_AVX2_KERNELS)
constexpr KernelTable kAvx2Table{Isa::avx2, &avx2::residue, &avx2::recop};
#endif

// -1 = auto
std::atomic<int> g_override{-1};

Isa detect() {
    if (const char* env = std::getenv("PELLET_ISA")) {
        if (const auto isa = parse_isa(env); isa && isa_supported(*isa)) return *isa;
    }
    return isa_supported(Isa::avx2) ? Isa::avx2 : Isa::scalar;
}

}  // namespace

std::string_view to_string(Isa isa) {
    switch (isa) {
        case Isa::scalar: return "scalar";
        case Isa::avx2: return "avx2";
    }
    return "?";
}

std::optional<Isa> parse_isa(std::string_view s) {
    if (s == "scalar") return Isa::scalar;
    if (s == "avx2") return Isa::avx2;
    return std::nullopt;
}

bool isa_supported(Isa isa) {
    switch (isa) {
        case Isa::scalar: return true;
        case Isa::avx2:
#if defined(PELLET_HAVE_AVX2_KERNELS)
            return __builtin_cpu_supports("avx2");
#else
            return false;
#endif
    }
    return false;
}

const KernelTable& kernel_table(Isa isa) {
    if (!isa_supported(isa)) throw std::runtime_error("kernel set not available: " + std::string(to_string(isa)));
#if defined(PELLET_HAVE_AVX2_KERNELS)
    if (isa == Isa::avx2) return kAvx2Table;
#endif
    return kScalarTable;
}

const KernelTable& active_kernels() {
    const int forced = g_override.load(std::memory_order_relaxed);
    if (forced >= 0) return kernel_table(static_cast<Isa>(forced));
    static const Isa detected = detect();
    return kernel_table(detected);
}

void set_isa_override(std::optional<Isa> isa) {
    if (isa && !isa_supported(*isa))
        throw std::runtime_error("kernel set not available: " + std::string(to_string(*isa)));
    g_override.store(isa ? static_cast<int>(*isa) : -1, std::memory_order_relaxed);
}

}  // namespace pellet::kernels
