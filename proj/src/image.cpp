#include "wcr/image.hpp"

namespace wcr {

double det_squared_norm(const ImageGrid& img) {
    const int h = img.height;
    const int w = img.width;
    std::vector<double> row_sums(static_cast<std::size_t>(h), 0.0);
#pragma omp parallel for schedule(static)
    for (int r = 0; r < h; ++r) {
        double s = 0.0;
        for (int c = 0; c < w; ++c) {
            const double v = img.at(r, c);
            s += v * v;
        }
        row_sums[static_cast<std::size_t>(r)] = s;
    }
    double total = 0.0;
    for (int r = 0; r < h; ++r) total += row_sums[static_cast<std::size_t>(r)];
    return total;
}

double det_dot(const ImageGrid& a, const ImageGrid& b) {
    require_same_shape(a, b, "det_dot");
    const int h = a.height;
    const int w = a.width;
    std::vector<double> row_sums(static_cast<std::size_t>(h), 0.0);
#pragma omp parallel for schedule(static)
    for (int r = 0; r < h; ++r) {
        double s = 0.0;
        for (int c = 0; c < w; ++c) s += a.at(r, c) * b.at(r, c);
        row_sums[static_cast<std::size_t>(r)] = s;
    }
    double total = 0.0;
    for (int r = 0; r < h; ++r) total += row_sums[static_cast<std::size_t>(r)];
    return total;
}

} // namespace wcr
