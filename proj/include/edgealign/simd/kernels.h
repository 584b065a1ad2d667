/**
 * @file kernels.h
 * @brief Scalar reference kernels and SIMD variants for the arithmetic inner
 *        loops, selected at runtime.
 *
 * Every variant of a kernel must produce bit-identical output. The per-element
 * operation sequence is fixed (documented on each entry) and each operation is
 * a single IEEE-754 rounding, which is why the build disables FP contraction.
 * The only reduction is max, which is order-independent for the NaN-free
 * inputs callers guarantee.
 */
#pragma once

namespace edgealign::simd {

enum class Isa { Scalar, Avx2 };

struct Kernels {
    /// 3x3 Sobel over one row: writes gx/gy/mag for interior columns
    /// [1, width-2]. With the neighborhood labelled
    ///   a b c   (above)
    ///   d . f   (mid)
    ///   g h i   (below)
    /// the fixed operation order is
    ///   gx  = ((c - a) + 2*(f - d)) + (i - g)
    ///   gy  = ((g - a) + 2*(h - b)) + (i - c)
    ///   mag = sqrt(gx*gx + gy*gy)
    /// where 2*t is computed as t + t.
    void (*sobel_row)(const double* above, const double* mid, const double* below,
                      int width, double* gx, double* gy, double* mag);

    /// 2x2 box mean of two source rows:
    ///   out[i] = ((top[2i] + top[2i+1]) + (bot[2i] + bot[2i+1])) * 0.25
    void (*downsample_row)(const double* top, const double* bot, int out_width,
                           double* out);

    /// Max orientation vote over columns [x0, x1] of one gradient row.
    /// Candidate per column: (dx*gx + dy*gy) / mag when mag >= eps_mag, else
    /// 0; the absolute value of that when `absolute` is set. Returns -inf
    /// when the span is empty (x0 > x1).
    double (*vote_span)(const double* gx, const double* gy, const double* mag,
                        int x0, int x1, double dx, double dy, double eps_mag,
                        bool absolute);
};

bool supported(Isa isa);
Isa detect_best();

Isa active_isa();
void set_active(Isa isa);  // throws InvalidArgument if unsupported here
const Kernels& kernels(Isa isa);
const Kernels& active();
const char* isa_name(Isa isa);

}  // namespace edgealign::simd
