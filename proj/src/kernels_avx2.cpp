#include "opo/kernels.hpp"

#if defined(__x86_64__) || defined(__i386__)
#include <immintrin.h>
#define OPO_HAVE_X86 1
#endif

namespace opo::kernels::avx2 {

#ifdef OPO_HAVE_X86

namespace {

// Two complex numbers per register, laid out [re0 im0 re1 im1].
__attribute__((target("avx2,fma"))) inline __m256d cmul(__m256d a, __m256d b)
{
    const __m256d ar = _mm256_movedup_pd(a);
    const __m256d ai = _mm256_permute_pd(a, 0xF);
    const __m256d bs = _mm256_permute_pd(b, 0x5);
    return _mm256_fmaddsub_pd(ar, b, _mm256_mul_pd(ai, bs));
}

__attribute__((target("avx2,fma"))) inline __m256d bcast(const cplx& c)
{
    return _mm256_broadcast_pd(reinterpret_cast<const __m128d*>(&c));
}

} // namespace

__attribute__((target("avx2,fma")))
void poly_eval(const cplx* c, int ncoef, const cplx* z, cplx* out, std::size_t n)
{
    std::size_t i = 0;
    const double* zd = reinterpret_cast<const double*>(z);
    double* od = reinterpret_cast<double*>(out);
    for (; i + 2 <= n; i += 2) {
        const __m256d zz = _mm256_loadu_pd(zd + 2 * i);
        __m256d acc = _mm256_setzero_pd();
        for (int k = ncoef - 1; k >= 0; --k) acc = _mm256_add_pd(cmul(acc, zz), bcast(c[k]));
        _mm256_storeu_pd(od + 2 * i, acc);
    }
    if (i < n) scalar::poly_eval(c, ncoef, z + i, out + i, n - i);
}

__attribute__((target("avx2,fma")))
void weighted_abs2(const cplx* K, const double* w, int m, double* out, std::size_t n)
{
    const double* kd = reinterpret_cast<const double*>(K);
    for (std::size_t i = 0; i < n; ++i) {
        const double* row = kd + 2 * i * std::size_t(m);
        __m256d acc = _mm256_setzero_pd();
        int k = 0;
        for (; k + 2 <= m; k += 2) {
            const __m256d v = _mm256_loadu_pd(row + 2 * k);
            const __m256d wv = _mm256_setr_pd(w[k], w[k], w[k + 1], w[k + 1]);
            acc = _mm256_fmadd_pd(_mm256_mul_pd(v, v), wv, acc);
        }
        const __m128d lo = _mm256_castpd256_pd128(acc), hi = _mm256_extractf128_pd(acc, 1);
        const __m128d s2 = _mm_add_pd(lo, hi);
        double s = _mm_cvtsd_f64(_mm_add_sd(s2, _mm_unpackhi_pd(s2, s2)));
        for (; k < m; ++k) {
            const double re = row[2 * k], im = row[2 * k + 1];
            s += w[k] * (re * re + im * im);
        }
        out[i] = s;
    }
}

__attribute__((target("avx2,fma")))
void accumulate_abs2(const cplx* x, double* acc, std::size_t n)
{
    const double* xd = reinterpret_cast<const double*>(x);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        const __m256d v = _mm256_loadu_pd(xd + 2 * i);
        const __m256d sq = _mm256_mul_pd(v, v);
        const __m256d h = _mm256_hadd_pd(sq, sq);                 // [s0 s0 s1 s1]
        const __m256d p = _mm256_permute4x64_pd(h, 0x08);          // [s0 s1 ..]
        const __m128d cur = _mm_loadu_pd(acc + i);
        _mm_storeu_pd(acc + i, _mm_add_pd(cur, _mm256_castpd256_pd128(p)));
    }
    if (i < n) scalar::accumulate_abs2(x + i, acc + i, n - i);
}

#else

void poly_eval(const cplx* c, int ncoef, const cplx* z, cplx* out, std::size_t n)
{
    scalar::poly_eval(c, ncoef, z, out, n);
}
void weighted_abs2(const cplx* K, const double* w, int m, double* out, std::size_t n)
{
    scalar::weighted_abs2(K, w, m, out, n);
}
void accumulate_abs2(const cplx* x, double* acc, std::size_t n)
{
    scalar::accumulate_abs2(x, acc, n);
}

#endif

} // namespace opo::kernels::avx2
