#include "zne.hpp"

#include <cmath>
#include <set>
#include <stdexcept>

namespace lmg {

Circuit fiim_fold(const Circuit& c, int insertions) {
    if (insertions < 0) throw std::invalid_argument("fiim_fold: insertions must be >= 0");
    Circuit out(c.width);
    for (const auto& g : c.gates) {
        out.push(g);
        if (g.kind == Gate::Kind::CZ)
            for (int i = 0; i < 2 * insertions; ++i) out.push(g);
    }
    return out;
}

std::vector<Circuit> siim_variants(const Circuit& c, int insertions) {
    if (insertions < 0) throw std::invalid_argument("siim_variants: insertions must be >= 0");
    const int ncz = c.cz_count();
    if (ncz == 0) throw std::invalid_argument("siim_variants: circuit has no CZ gates");
    std::vector<Circuit> variants;
    variants.reserve(ncz);
    for (int loc = 0; loc < ncz; ++loc) {
        Circuit out(c.width);
        int seen = 0;
        for (const auto& g : c.gates) {
            out.push(g);
            if (g.kind == Gate::Kind::CZ) {
                if (seen == loc)
                    for (int i = 0; i < 2 * insertions; ++i) out.push(g);
                ++seen;
            }
        }
        variants.push_back(std::move(out));
    }
    return variants;
}

Extrapolation extrapolate_linear(const ZneSeries& series, bool weighted) {
    if (series.points.size() < 2)
        throw std::invalid_argument("extrapolate_linear: need >= 2 points");
    std::set<int> rs;
    for (const auto& p : series.points) rs.insert(p.r);
    if (rs.size() != series.points.size())
        throw std::invalid_argument("extrapolate_linear: r values must be distinct");

    double sw = 0, sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (const auto& p : series.points) {
        double w = 1.0;
        if (weighted) {
            const double s = std::max(p.energy.std_error, 1e-12);
            w = 1.0 / (s * s);
        }
        const double x = p.r, y = p.energy.value;
        sw += w;
        sx += w * x;
        sy += w * y;
        sxx += w * x * x;
        sxy += w * x * y;
    }
    const double den = sw * sxx - sx * sx;
    if (std::abs(den) < 1e-30) throw std::invalid_argument("extrapolate_linear: degenerate fit");
    Extrapolation out;
    out.intercept = (sxx * sy - sx * sxy) / den;
    out.slope = (sw * sxy - sx * sy) / den;
    out.std_error = std::sqrt(std::max(0.0, sxx / den));
    double chi2 = 0.0;
    for (const auto& p : series.points) {
        const double resid = p.energy.value - (out.intercept + out.slope * p.r);
        const double s = std::max(p.energy.std_error, 1e-12);
        chi2 += (resid * resid) / (s * s);
    }
    const int dof = int(series.points.size()) - 2;
    out.reduced_chi_square = dof > 0 ? chi2 / dof : 0.0;
    return out;
}

ZneSeries zne_series(const VqeProblem& problem, const std::vector<double>& angles,
                     ZneMethod method, const std::vector<int>& insertions, long shots,
                     const NoiseModel& noise, const RngStream& rng, int threads) {
    const Circuit prep = problem.preparation_circuit(angles);
    const int ncz = prep.cz_count();
    ZneSeries series;
    series.method = method;
    std::uint64_t stream_idx = 0;
    for (int n : insertions) {
        if (method == ZneMethod::FIIM) {
            ZneSeries::Point pt;
            pt.r = 2 * n + 1;
            pt.energy =
                problem.estimate_circuit(fiim_fold(prep, n), shots, noise, rng.child(stream_idx++), threads);
            series.points.push_back(std::move(pt));
        } else {
            if (ncz == 0) throw std::invalid_argument("zne_series: SIIM needs >= 1 CZ");
            ZneSeries::Point pt;
            pt.r = ncz + 2 * n;
            if (n == 0) {
                pt.energy = problem.estimate_circuit(prep, shots, noise, rng.child(stream_idx++), threads);
            } else {
                // average over the per-location variants; the mean's std error
                const auto variants = siim_variants(prep, n);
                double mean = 0.0, var = 0.0;
                std::vector<std::pair<std::string, double>> pg;
                long spc = shots;
                for (const auto& v : variants) {
                    const EnergyEstimate e =
                        problem.estimate_circuit(v, shots, noise, rng.child(stream_idx++), threads);
                    mean += e.value / double(variants.size());
                    var += e.std_error * e.std_error / double(variants.size() * variants.size());
                    spc = e.shots_per_circuit;
                }
                pt.energy.value = mean;
                pt.energy.std_error = std::sqrt(var);
                pt.energy.shots_per_circuit = spc;
            }
            series.points.push_back(std::move(pt));
        }
    }
    return series;
}

}  // namespace lmg
