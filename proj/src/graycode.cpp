#include "graycode.hpp"

#include <stdexcept>

namespace lmg {

GrayCode binary_reflected_gray(int width) {
    if (width < 1) throw std::invalid_argument("binary_reflected_gray: width must be >= 1");
    GrayCode g;
    g.width = width;
    std::vector<std::uint32_t> cur = {0, 1};
    for (int v = 2; v <= width; ++v) {
        std::vector<std::uint32_t> next;
        next.reserve(cur.size() * 2);
        for (std::uint32_t c : cur) next.push_back(c);
        for (auto it = cur.rbegin(); it != cur.rend(); ++it)
            next.push_back((std::uint32_t{1} << (v - 1)) | *it);
        cur = std::move(next);
    }
    g.codes = std::move(cur);
    return g;
}

namespace {
std::uint32_t reverse_bits(std::uint32_t x, int width) {
    std::uint32_t r = 0;
    for (int i = 0; i < width; ++i)
        if (x & (1u << i)) r |= 1u << (width - 1 - i);
    return r;
}
}  // namespace

GrayCode literal_bit_reversed_gray(int width) {
    if (width < 1) throw std::invalid_argument("literal_bit_reversed_gray: width must be >= 1");
    GrayCode g;
    g.width = width;
    std::vector<std::uint32_t> cur = {0, 1};
    for (int v = 2; v <= width; ++v) {
        std::vector<std::uint32_t> next;
        next.reserve(cur.size() * 2);
        for (std::uint32_t c : cur) next.push_back(c);
        for (std::uint32_t c : cur)
            next.push_back((std::uint32_t{1} << (v - 1)) | reverse_bits(c, v - 1));
        cur = std::move(next);
    }
    g.codes = std::move(cur);
    return g;
}

int qubit_count(int particles) {
    if (particles < 2) throw std::invalid_argument("qubit_count: need N >= 2");
    const int d = particles / 2 + 1;
    int nu = 0;
    while ((1 << nu) < d) ++nu;
    return nu > 0 ? nu : 1;
}

std::vector<QuasiSpinLabel> jm_labels(int particles) {
    if (particles < 2) throw std::invalid_argument("jm_labels: need N >= 2");
    const int d = particles / 2 + 1;
    const double j = particles / 2.0;
    std::vector<QuasiSpinLabel> out;
    out.reserve(d);
    for (int k = 0; k < d; ++k) out.push_back({j, -j + 2.0 * k, k});
    return out;
}

}  // namespace lmg
