#pragma once

#include <cstdint>
#include <vector>

namespace lmg {

// Ordered binary reflected Gray code on `width` bits. Adjacent codewords
// (cyclically) differ in exactly one bit; the sequence is a permutation of
// 0..2^width-1.
struct GrayCode {
    int width = 0;
    std::vector<std::uint32_t> codes;
};

// Standard reflected construction: G_v = (0.G_{v-1}, 1.reverse(G_{v-1})).
// Reproduces the orderings used by the encoded ansatz states, e.g.
// (00,01,11,10) for width 2 and (000,001,011,010,110,111,101,100) for width 3.
// Equals k ^ (k >> 1) elementwise. width must be >= 1.
GrayCode binary_reflected_gray(int width);

// Alternate construction that reads the recursion's reflection step as
// "entries in the same order with their bits reversed" instead of reversing
// the order of entries. The two readings agree only for width 1; for every
// width >= 2 the per-entry-bit-reversal sequence differs from the standard
// ordering and breaks single-bit adjacency at the reflection seam (checked
// exhaustively for width <= 10 in the tests). Kept for documentation; nothing
// downstream uses it.
GrayCode literal_bit_reversed_gray(int width);

struct QuasiSpinLabel {
    double j = 0;       // N/2
    double m = 0;       // -j + 2k
    int gray_index = 0;  // k, bound to codeword g_k
};

// Number of qubits for the Gray encoding of N spins: ceil(log2(floor(N/2)+1)).
int qubit_count(int particles);

// d = floor(N/2)+1 relevant |J,M> states with maximal J, in Gray order.
std::vector<QuasiSpinLabel> jm_labels(int particles);

}  // namespace lmg
