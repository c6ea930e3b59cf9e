#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <bit>
#include <cmath>
#include <set>

#include "graycode.hpp"

using namespace lmg;

TEST_CASE("binary reflected gray code orderings") {
    CHECK_THROWS_AS(binary_reflected_gray(0), std::invalid_argument);

    const auto g1 = binary_reflected_gray(1);
    CHECK(g1.codes == std::vector<std::uint32_t>{0, 1});

    const auto g2 = binary_reflected_gray(2);
    CHECK(g2.codes == std::vector<std::uint32_t>{0b00, 0b01, 0b11, 0b10});

    const auto g3 = binary_reflected_gray(3);
    CHECK(g3.codes == std::vector<std::uint32_t>{0b000, 0b001, 0b011, 0b010, 0b110, 0b111, 0b101,
                                                 0b100});
}

TEST_CASE("adjacency and permutation properties, width 1..10") {
    for (int w = 1; w <= 10; ++w) {
        const auto g = binary_reflected_gray(w);
        REQUIRE(int(g.codes.size()) == 1 << w);
        std::set<std::uint32_t> seen(g.codes.begin(), g.codes.end());
        CHECK(seen.size() == g.codes.size());
        CHECK(*seen.rbegin() == std::uint32_t(1 << w) - 1);
        for (std::size_t k = 0; k + 1 < g.codes.size(); ++k)
            CHECK(std::popcount(g.codes[k] ^ g.codes[k + 1]) == 1);
        // cyclic closure
        CHECK(std::popcount(g.codes.front() ^ g.codes.back()) == 1);
        // matches the k ^ (k >> 1) closed form
        for (std::size_t k = 0; k < g.codes.size(); ++k)
            CHECK(g.codes[k] == (std::uint32_t(k) ^ (std::uint32_t(k) >> 1)));
    }
}

// The recursion's reflection step read as "same order, bits reversed" is not
// the construction the encoded states use: it already deviates at width 2 and
// breaks adjacency at the reflection seam for every width >= 2. The standard
// reflected-order construction is the one the encoded states rely on.
TEST_CASE("literal bit-reversal reading diverges from the standard construction") {
    CHECK(literal_bit_reversed_gray(1).codes == binary_reflected_gray(1).codes);
    for (int w = 2; w <= 10; ++w) {
        const auto lit = literal_bit_reversed_gray(w);
        CHECK(lit.codes != binary_reflected_gray(w).codes);
        const std::size_t seam = lit.codes.size() / 2 - 1;
        CHECK(std::popcount(lit.codes[seam] ^ lit.codes[seam + 1]) != 1);
    }
    CHECK(literal_bit_reversed_gray(2).codes == std::vector<std::uint32_t>{0b00, 0b01, 0b10, 0b11});
}

TEST_CASE("qubit_count") {
    CHECK_THROWS_AS(qubit_count(1), std::invalid_argument);
    CHECK(qubit_count(2) == 1);
    CHECK(qubit_count(3) == 1);
    CHECK(qubit_count(4) == 2);
    CHECK(qubit_count(7) == 2);
    CHECK(qubit_count(9) == 3);
    CHECK(qubit_count(15) == 3);
    CHECK(qubit_count(16) == 4);
}

TEST_CASE("jm labels") {
    const auto l5 = jm_labels(5);
    REQUIRE(l5.size() == 3);
    CHECK(l5[0].j == doctest::Approx(2.5));
    CHECK(l5[0].m == doctest::Approx(-2.5));
    CHECK(l5[1].m == doctest::Approx(-0.5));
    CHECK(l5[2].m == doctest::Approx(1.5));
    CHECK(l5[2].gray_index == 2);

    const auto l2 = jm_labels(2);
    REQUIRE(l2.size() == 2);
    CHECK(l2[0].m == doctest::Approx(-1.0));
    CHECK(l2[1].m == doctest::Approx(1.0));

    const auto l4 = jm_labels(4);
    REQUIRE(l4.size() == 3);
    CHECK(l4[0].m == doctest::Approx(-2.0));
    CHECK(l4[1].m == doctest::Approx(0.0));
    CHECK(l4[2].m == doctest::Approx(2.0));
}

TEST_CASE("label consistency for N in 2..31") {
    for (int n = 2; n <= 31; ++n) {
        const auto labels = jm_labels(n);
        CHECK(int(labels.size()) == n / 2 + 1);
        for (const auto& l : labels) {
            CHECK(std::abs(l.m) <= l.j + 1e-12);
            // M = -J + 2k, so (M + J)/2 is a whole number
            const double r = (l.m + l.j) / 2.0;
            CHECK(std::abs(r - std::round(r)) < 1e-12);
        }
    }
}
