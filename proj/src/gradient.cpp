/**
 * @file gradient.cpp
 * @brief Dense Sobel gradients over the working image.
 */
#include "edgealign/gradient.h"

#include "edgealign/errors.h"
#include "edgealign/simd/kernels.h"

namespace edgealign {

GradientField compute_gradients(const Image& image) {
    if (image.width < 3 || image.height < 3) {
        throw SizeError("compute_gradients needs at least 3x3, got " +
                        std::to_string(image.width) + "x" +
                        std::to_string(image.height));
    }
    GradientField field(image.width, image.height);
    const auto& k = simd::active();
    for (int y = 1; y + 1 < image.height; ++y) {
        const std::size_t row = field.index(0, y);
        k.sobel_row(image.row(y - 1), image.row(y), image.row(y + 1),
                    image.width, field.gx.data() + row, field.gy.data() + row,
                    field.mag.data() + row);
    }
    return field;
}

}  // namespace edgealign
