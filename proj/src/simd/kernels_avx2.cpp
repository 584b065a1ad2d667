/**
 * @file kernels_avx2.cpp
 * @brief AVX2 kernel variants. Each lane performs exactly the operation
 *        sequence of the scalar reference (see kernels_scalar.cpp), so with
 *        FP contraction off the outputs are bit-identical.
 */
#include "edgealign/simd/kernels.h"

#if defined(EDGEALIGN_HAVE_AVX2) && (defined(__x86_64__) || defined(__i386__))

#include <immintrin.h>

#include <cmath>
#include <limits>

namespace edgealign::simd {
namespace {

inline double hmax_pd(__m256d v) {
    __m128d lo = _mm256_castpd256_pd128(v);
    const __m128d hi = _mm256_extractf128_pd(v, 1);
    lo = _mm_max_pd(lo, hi);
    const __m128d sh = _mm_unpackhi_pd(lo, lo);
    lo = _mm_max_sd(lo, sh);
    return _mm_cvtsd_f64(lo);
}

void sobel_row_avx2(const double* above, const double* mid, const double* below,
                    int width, double* gx, double* gy, double* mag) {
    const int last = width - 2;  // inclusive last interior column
    int x = 1;
    for (; x + 3 <= last; x += 4) {
        const __m256d a = _mm256_loadu_pd(above + x - 1);
        const __m256d b = _mm256_loadu_pd(above + x);
        const __m256d c = _mm256_loadu_pd(above + x + 1);
        const __m256d d = _mm256_loadu_pd(mid + x - 1);
        const __m256d f = _mm256_loadu_pd(mid + x + 1);
        const __m256d g = _mm256_loadu_pd(below + x - 1);
        const __m256d h = _mm256_loadu_pd(below + x);
        const __m256d i = _mm256_loadu_pd(below + x + 1);

        const __m256d ew = _mm256_sub_pd(f, d);
        const __m256d ns = _mm256_sub_pd(h, b);
        const __m256d sx = _mm256_add_pd(
            _mm256_add_pd(_mm256_sub_pd(c, a), _mm256_add_pd(ew, ew)),
            _mm256_sub_pd(i, g));
        const __m256d sy = _mm256_add_pd(
            _mm256_add_pd(_mm256_sub_pd(g, a), _mm256_add_pd(ns, ns)),
            _mm256_sub_pd(i, c));

        _mm256_storeu_pd(gx + x, sx);
        _mm256_storeu_pd(gy + x, sy);
        const __m256d m = _mm256_sqrt_pd(
            _mm256_add_pd(_mm256_mul_pd(sx, sx), _mm256_mul_pd(sy, sy)));
        _mm256_storeu_pd(mag + x, m);
    }
    for (; x <= last; ++x) {
        const double a = above[x - 1], b = above[x], c = above[x + 1];
        const double d = mid[x - 1], f = mid[x + 1];
        const double g = below[x - 1], h = below[x], i = below[x + 1];
        const double ew = f - d;
        const double ns = h - b;
        const double sx = ((c - a) + (ew + ew)) + (i - g);
        const double sy = ((g - a) + (ns + ns)) + (i - c);
        gx[x] = sx;
        gy[x] = sy;
        mag[x] = std::sqrt(sx * sx + sy * sy);
    }
}

void downsample_row_avx2(const double* top, const double* bot, int out_width,
                         double* out) {
    int i = 0;
    const __m256d quarter = _mm256_set1_pd(0.25);
    for (; i + 4 <= out_width; i += 4) {
        const __m256d ta = _mm256_loadu_pd(top + 2 * i);
        const __m256d tb = _mm256_loadu_pd(top + 2 * i + 4);
        const __m256d ba = _mm256_loadu_pd(bot + 2 * i);
        const __m256d bb = _mm256_loadu_pd(bot + 2 * i + 4);
        // hadd lane order is [p0, p2, p1, p3]; permute restores index order.
        const __m256d t = _mm256_hadd_pd(ta, tb);
        const __m256d u = _mm256_hadd_pd(ba, bb);
        __m256d s = _mm256_mul_pd(_mm256_add_pd(t, u), quarter);
        s = _mm256_permute4x64_pd(s, _MM_SHUFFLE(3, 1, 2, 0));
        _mm256_storeu_pd(out + i, s);
    }
    for (; i < out_width; ++i) {
        const double t = top[2 * i] + top[2 * i + 1];
        const double u = bot[2 * i] + bot[2 * i + 1];
        out[i] = (t + u) * 0.25;
    }
}

double vote_span_avx2(const double* gx, const double* gy, const double* mag,
                      int x0, int x1, double dx, double dy, double eps_mag,
                      bool absolute) {
    const int n = x1 - x0 + 1;
    if (n <= 0) {
        return -std::numeric_limits<double>::infinity();
    }
    const double* pgx = gx + x0;
    const double* pgy = gy + x0;
    const double* pmag = mag + x0;

    const __m256d vdx = _mm256_set1_pd(dx);
    const __m256d vdy = _mm256_set1_pd(dy);
    const __m256d veps = _mm256_set1_pd(eps_mag);
    const __m256d vzero = _mm256_setzero_pd();
    const __m256d vninf = _mm256_set1_pd(-std::numeric_limits<double>::infinity());
    const __m256d sign_mask = _mm256_set1_pd(-0.0);
    const __m256i lane_ids = _mm256_setr_epi64x(0, 1, 2, 3);

    __m256d vbest = vninf;
    for (int i = 0; i < n; i += 4) {
        const int rem = n - i;
        __m256d mg, vx, vy;
        __m256i lane_mask = _mm256_set1_epi64x(-1);
        if (rem >= 4) {
            mg = _mm256_loadu_pd(pmag + i);
            vx = _mm256_loadu_pd(pgx + i);
            vy = _mm256_loadu_pd(pgy + i);
        } else {
            lane_mask = _mm256_cmpgt_epi64(_mm256_set1_epi64x(rem), lane_ids);
            mg = _mm256_maskload_pd(pmag + i, lane_mask);
            vx = _mm256_maskload_pd(pgx + i, lane_mask);
            vy = _mm256_maskload_pd(pgy + i, lane_mask);
        }
        const __m256d dot =
            _mm256_add_pd(_mm256_mul_pd(vdx, vx), _mm256_mul_pd(vdy, vy));
        const __m256d q = _mm256_div_pd(dot, mg);
        const __m256d ok = _mm256_cmp_pd(mg, veps, _CMP_GE_OQ);
        __m256d cand = _mm256_blendv_pd(vzero, q, ok);
        if (absolute) {
            cand = _mm256_andnot_pd(sign_mask, cand);
        }
        // dead lanes must not reach the max
        cand = _mm256_blendv_pd(vninf, cand, _mm256_castsi256_pd(lane_mask));
        vbest = _mm256_max_pd(vbest, cand);
    }
    return hmax_pd(vbest);
}

}  // namespace

const Kernels& avx2_kernels() {
    static const Kernels table{sobel_row_avx2, downsample_row_avx2,
                               vote_span_avx2};
    return table;
}

}  // namespace edgealign::simd

#endif  // EDGEALIGN_HAVE_AVX2 && x86
