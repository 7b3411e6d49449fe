#include "nsinf/kernels.hpp"

#include <atomic>

namespace nsinf::kernels {

namespace {

const Backend* pick_default() {
#if defined(__x86_64__)
    if (avx2_supported()) return &avx2_backend();
#elif defined(__aarch64__)
    return &neon_backend();
#endif
    return &scalar_backend();
}

std::atomic<const Backend*> g_active{nullptr};

} // namespace

#if defined(__x86_64__)
bool avx2_supported() { return __builtin_cpu_supports("avx2"); }
#endif

const Backend& active() {
    const Backend* b = g_active.load(std::memory_order_acquire);
    if (!b) {
        b = pick_default();
        g_active.store(b, std::memory_order_release);
    }
    return *b;
}

bool force_backend(std::string_view name) {
    if (name == "auto") {
        g_active.store(pick_default(), std::memory_order_release);
        return true;
    }
    if (name == "scalar") {
        g_active.store(&scalar_backend(), std::memory_order_release);
        return true;
    }
#if defined(__x86_64__)
    if (name == "avx2" && avx2_supported()) {
        g_active.store(&avx2_backend(), std::memory_order_release);
        return true;
    }
#endif
#if defined(__aarch64__)
    if (name == "neon") {
        g_active.store(&neon_backend(), std::memory_order_release);
        return true;
    }
#endif
    return false;
}

} // namespace nsinf::kernels
