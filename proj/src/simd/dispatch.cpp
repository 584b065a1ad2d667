/**
 * @file dispatch.cpp
 * @brief Runtime kernel selection. The best supported ISA is picked on first
 *        use; tests and tools may pin a specific one with set_active.
 */
#include <atomic>
#include <string>

#include "edgealign/errors.h"
#include "edgealign/simd/kernels.h"

namespace edgealign::simd {

const Kernels& scalar_kernels();
#if defined(EDGEALIGN_HAVE_AVX2) && (defined(__x86_64__) || defined(__i386__))
const Kernels& avx2_kernels();
#endif

bool supported(Isa isa) {
    switch (isa) {
        case Isa::Scalar:
            return true;
        case Isa::Avx2:
#if defined(EDGEALIGN_HAVE_AVX2) && (defined(__x86_64__) || defined(__i386__))
            return __builtin_cpu_supports("avx2") != 0;
#else
            return false;
#endif
    }
    return false;
}

Isa detect_best() {
    return supported(Isa::Avx2) ? Isa::Avx2 : Isa::Scalar;
}

namespace {
std::atomic<Isa>& active_slot() {
    static std::atomic<Isa> slot{detect_best()};
    return slot;
}
}  // namespace

Isa active_isa() {
    return active_slot().load(std::memory_order_relaxed);
}

void set_active(Isa isa) {
    if (!supported(isa)) {
        throw InvalidArgument(std::string("kernel ISA not supported on this CPU: ") +
                              isa_name(isa));
    }
    active_slot().store(isa, std::memory_order_relaxed);
}

const Kernels& kernels(Isa isa) {
    if (!supported(isa)) {
        throw InvalidArgument(std::string("kernel ISA not supported on this CPU: ") +
                              isa_name(isa));
    }
#if defined(EDGEALIGN_HAVE_AVX2) && (defined(__x86_64__) || defined(__i386__))
    if (isa == Isa::Avx2) {
        return avx2_kernels();
    }
#endif
    return scalar_kernels();
}

const Kernels& active() {
    return kernels(active_isa());
}

const char* isa_name(Isa isa) {
    switch (isa) {
        case Isa::Scalar:
            return "scalar";
        case Isa::Avx2:
            return "avx2";
    }
    return "unknown";
}

}  // namespace edgealign::simd
