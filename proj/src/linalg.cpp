#include "linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace lmg {

EigenResult jacobi_eigensolve(SymMatrix m, bool want_vectors) {
    const std::size_t n = m.n;
    std::vector<std::vector<double>> v;
    if (want_vectors) {
        v.assign(n, std::vector<double>(n, 0.0));
        for (std::size_t i = 0; i < n; ++i) v[i][i] = 1.0;  // v[col][row] layout below
    }

    auto off_norm = [&] {
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j) s += m.at(i, j) * m.at(i, j);
        return std::sqrt(s);
    };

    double scale = 0.0;
    for (double x : m.a) scale = std::max(scale, std::abs(x));
    const double tol = std::max(1e-300, scale * 1e-15);

    for (int sweep = 0; sweep < 100 && off_norm() > tol; ++sweep) {
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const double apq = m.at(p, q);
                if (std::abs(apq) <= tol * 1e-2) continue;
                const double theta = (m.at(q, q) - m.at(p, p)) / (2.0 * apq);
                const double t = (theta >= 0 ? 1.0 : -1.0) /
                                 (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                for (std::size_t k = 0; k < n; ++k) {
                    const double akp = m.at(k, p), akq = m.at(k, q);
                    m.at(k, p) = c * akp - s * akq;
                    m.at(k, q) = s * akp + c * akq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const double apk = m.at(p, k), aqk = m.at(q, k);
                    m.at(p, k) = c * apk - s * aqk;
                    m.at(q, k) = s * apk + c * aqk;
                }
                if (want_vectors) {
                    for (std::size_t k = 0; k < n; ++k) {
                        const double vkp = v[p][k], vkq = v[q][k];
                        v[p][k] = c * vkp - s * vkq;
                        v[q][k] = s * vkp + c * vkq;
                    }
                }
            }
        }
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](std::size_t i, std::size_t j) { return m.at(i, i) < m.at(j, j); });

    EigenResult r;
    r.values.reserve(n);
    for (std::size_t k : order) r.values.push_back(m.at(k, k));
    if (want_vectors) {
        r.vectors.reserve(n);
        for (std::size_t k : order) r.vectors.push_back(v[k]);
    }
    return r;
}

double lowest_eigenvalue(const SymMatrix& m) {
    return jacobi_eigensolve(m, false).values.front();
}

std::vector<double> solve_dense(std::vector<std::vector<double>> a, std::vector<double> b) {
    const std::size_t n = b.size();
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        for (std::size_t r = col + 1; r < n; ++r)
            if (std::abs(a[r][col]) > std::abs(a[piv][col])) piv = r;
        if (std::abs(a[piv][col]) < 1e-14) throw std::runtime_error("solve_dense: singular system");
        std::swap(a[col], a[piv]);
        std::swap(b[col], b[piv]);
        for (std::size_t r = col + 1; r < n; ++r) {
            const double f = a[r][col] / a[col][col];
            for (std::size_t c = col; c < n; ++c) a[r][c] -= f * a[col][c];
            b[r] -= f * b[col];
        }
    }
    std::vector<double> x(n, 0.0);
    for (std::size_t i = n; i-- > 0;) {
        double s = b[i];
        for (std::size_t j = i + 1; j < n; ++j) s -= a[i][j] * x[j];
        x[i] = s / a[i][i];
    }
    return x;
}

Svd2xN svd_2xn(const std::vector<double>& m, std::size_t cols) {
    if (m.size() != 2 * cols) throw std::invalid_argument("svd_2xn: bad shape");
    // b = m m^T is 2x2 symmetric; closed-form rotation diagonalizes it.
    double b00 = 0, b01 = 0, b11 = 0;
    for (std::size_t j = 0; j < cols; ++j) {
        b00 += m[j] * m[j];
        b01 += m[j] * m[cols + j];
        b11 += m[cols + j] * m[cols + j];
    }
    double c = 1.0, s = 0.0;
    if (std::abs(b01) > 1e-300) {
        const double theta = (b11 - b00) / (2.0 * b01);
        const double t = (theta >= 0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        c = 1.0 / std::sqrt(t * t + 1.0);
        s = t * c;
    }
    // eigenvalues of b with eigenvectors (c,s) and (-s,c)
    double l0 = c * c * b00 - 2 * s * c * b01 + s * s * b11;
    double l1 = s * s * b00 + 2 * s * c * b01 + c * c * b11;
    double u0[2] = {c, -s}, u1[2] = {s, c};
    if (l0 < l1) {
        std::swap(l0, l1);
        std::swap(u0[0], u1[0]);
        std::swap(u0[1], u1[1]);
    }
    Svd2xN out;
    out.s[0] = std::sqrt(std::max(0.0, l0));
    out.s[1] = std::sqrt(std::max(0.0, l1));
    out.u[0][0] = u0[0]; out.u[1][0] = u0[1];
    out.u[0][1] = u1[0]; out.u[1][1] = u1[1];

    out.v.assign(cols, std::vector<double>(cols, 0.0));
    // v_k = m^T u_k / s_k for significant singular values
    std::size_t rank = 0;
    for (std::size_t k = 0; k < 2; ++k) {
        if (out.s[k] < 1e-13) break;
        for (std::size_t j = 0; j < cols; ++j)
            out.v[k][j] = (m[j] * out.u[0][k] + m[cols + j] * out.u[1][k]) / out.s[k];
        ++rank;
    }
    // complete remaining columns from the standard basis by Gram-Schmidt
    std::size_t have = rank;
    for (std::size_t e = 0; e < cols && have < cols; ++e) {
        std::vector<double> w(cols, 0.0);
        w[e] = 1.0;
        for (std::size_t k = 0; k < have; ++k) {
            double dot = 0.0;
            for (std::size_t j = 0; j < cols; ++j) dot += out.v[k][j] * w[j];
            for (std::size_t j = 0; j < cols; ++j) w[j] -= dot * out.v[k][j];
        }
        double nrm = 0.0;
        for (double x : w) nrm += x * x;
        nrm = std::sqrt(nrm);
        if (nrm < 1e-8) continue;
        for (std::size_t j = 0; j < cols; ++j) out.v[have][j] = w[j] / nrm;
        ++have;
    }
    if (have != cols) throw std::runtime_error("svd_2xn: completion failed");
    return out;
}

}  // namespace lmg
