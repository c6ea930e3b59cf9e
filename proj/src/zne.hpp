#pragma once

#include <vector>

#include "circuit.hpp"
#include "rng.hpp"
#include "vqe.hpp"

namespace lmg {

enum class ZneMethod { FIIM, SIIM };

// Zero-noise extrapolation series over CZ identity insertions. The abscissa r
// counts CZ executions: 2n+1 per gate for FIIM folds, and the circuit's total
// CZ count plus 2n for SIIM points (the per-CZ-number average construction).
struct ZneSeries {
    ZneMethod method = ZneMethod::FIIM;
    struct Point {
        int r = 1;
        EnergyEstimate energy;
    };
    std::vector<Point> points;
};

// Every CZ replaced by 2n+1 consecutive CZs on the same pair; other gates
// untouched. Noiseless simulation is unchanged (CZ^2 = I).
Circuit fiim_fold(const Circuit& c, int insertions);

// One variant per CZ location; variant k folds only the k-th CZ by 2n extra
// executions. Requires at least one CZ.
std::vector<Circuit> siim_variants(const Circuit& c, int insertions);

struct Extrapolation {
    double intercept = 0.0;   // energy at r = 0
    double std_error = 0.0;   // propagated uncertainty of the intercept
    double slope = 0.0;
    double reduced_chi_square = 0.0;  // 0 when dof = 0
};

// Least-squares line through (r, E). `weighted` uses per-point std_errors
// (the default); pass false for a plain unweighted fit. Needs >= 2 distinct
// r values.
Extrapolation extrapolate_linear(const ZneSeries& series, bool weighted = true);

// Measure the folded family of `problem`'s circuit at `angles` and build the
// series: FIIM yields one point per insertion count; SIIM averages the
// per-location variants at each insertion count (variant mean, std error of
// the mean).
ZneSeries zne_series(const VqeProblem& problem, const std::vector<double>& angles,
                     ZneMethod method, const std::vector<int>& insertions, long shots,
                     const NoiseModel& noise, const RngStream& rng, int threads = 1);

}  // namespace lmg
