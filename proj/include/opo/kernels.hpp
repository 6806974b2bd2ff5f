#pragma once

#include <cstddef>

#include "opo/types.hpp"

// Hot inner loops with a portable reference path and an AVX2 path picked at runtime.
namespace opo::kernels {

enum class Isa { scalar, avx2 };

Isa active();
const char* isa_name(Isa isa);
bool avx2_available();
// Force a path (tests, benchmarking). Requesting avx2 on a CPU without it falls back to scalar.
void force(Isa isa);
void reset();

// out[i] = sum_k c[k] z[i]^k
void poly_eval(const cplx* c, int ncoef, const cplx* z, cplx* out, std::size_t n);
// out[i] = sum_k w[k] |K[i*m + k]|^2
void weighted_abs2(const cplx* K, const double* w, int m, double* out, std::size_t n);
// acc[i] += |x[i]|^2
void accumulate_abs2(const cplx* x, double* acc, std::size_t n);

namespace scalar {
void poly_eval(const cplx* c, int ncoef, const cplx* z, cplx* out, std::size_t n);
void weighted_abs2(const cplx* K, const double* w, int m, double* out, std::size_t n);
void accumulate_abs2(const cplx* x, double* acc, std::size_t n);
}

namespace avx2 {
void poly_eval(const cplx* c, int ncoef, const cplx* z, cplx* out, std::size_t n);
void weighted_abs2(const cplx* K, const double* w, int m, double* out, std::size_t n);
void accumulate_abs2(const cplx* x, double* acc, std::size_t n);
}

} // namespace opo::kernels
