#include "opo/kernels.hpp"

#include <atomic>
#include <cstdlib>
#include <cstring>

namespace opo::kernels {

namespace {

bool detect_avx2()
{
#if defined(__x86_64__) || defined(__i386__)
    __builtin_cpu_init();
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
    return false;
#endif
}

Isa detect()
{
    if (const char* env = std::getenv("OPO_SIMD"); env && std::strcmp(env, "scalar") == 0)
        return Isa::scalar;
    return detect_avx2() ? Isa::avx2 : Isa::scalar;
}

std::atomic<int> g_isa{-1};

} // namespace

bool avx2_available()
{
    static const bool ok = detect_avx2();
    return ok;
}

Isa active()
{
    int v = g_isa.load(std::memory_order_relaxed);
    if (v < 0) {
        v = int(detect());
        g_isa.store(v, std::memory_order_relaxed);
    }
    return Isa(v);
}

const char* isa_name(Isa isa) { return isa == Isa::avx2 ? "avx2" : "scalar"; }

void force(Isa isa)
{
    if (isa == Isa::avx2 && !avx2_available()) isa = Isa::scalar;
    g_isa.store(int(isa), std::memory_order_relaxed);
}

void reset() { g_isa.store(-1, std::memory_order_relaxed); }

void poly_eval(const cplx* c, int ncoef, const cplx* z, cplx* out, std::size_t n)
{
    if (active() == Isa::avx2) avx2::poly_eval(c, ncoef, z, out, n);
    else scalar::poly_eval(c, ncoef, z, out, n);
}

void weighted_abs2(const cplx* K, const double* w, int m, double* out, std::size_t n)
{
    if (active() == Isa::avx2) avx2::weighted_abs2(K, w, m, out, n);
    else scalar::weighted_abs2(K, w, m, out, n);
}

void accumulate_abs2(const cplx* x, double* acc, std::size_t n)
{
    if (active() == Isa::avx2) avx2::accumulate_abs2(x, acc, n);
    else scalar::accumulate_abs2(x, acc, n);
}

namespace scalar {

void poly_eval(const cplx* c, int ncoef, const cplx* z, cplx* out, std::size_t n)
{
    for (std::size_t i = 0; i < n; ++i) {
        cplx acc = 0.0;
        for (int k = ncoef - 1; k >= 0; --k) acc = acc * z[i] + c[k];
        out[i] = acc;
    }
}

void weighted_abs2(const cplx* K, const double* w, int m, double* out, std::size_t n)
{
    for (std::size_t i = 0; i < n; ++i) {
        double s = 0.0;
        for (int k = 0; k < m; ++k) s += w[k] * std::norm(K[i * m + k]);
        out[i] = s;
    }
}

void accumulate_abs2(const cplx* x, double* acc, std::size_t n)
{
    for (std::size_t i = 0; i < n; ++i) acc[i] += std::norm(x[i]);
}

} // namespace scalar

} // namespace opo::kernels
