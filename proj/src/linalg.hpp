#pragma once

#include <cstddef>
#include <vector>

namespace lmg {

// Dense real symmetric matrix, row-major.
struct SymMatrix {
    std::size_t n = 0;
    std::vector<double> a;  // n*n entries

    SymMatrix() = default;
    explicit SymMatrix(std::size_t dim) : n(dim), a(dim * dim, 0.0) {}
    double& at(std::size_t i, std::size_t j) { return a[i * n + j]; }
    double at(std::size_t i, std::size_t j) const { return a[i * n + j]; }
};

struct EigenResult {
    std::vector<double> values;            // ascending
    std::vector<std::vector<double>> vectors;  // vectors[k] is the k-th eigenvector
};

// Cyclic Jacobi rotations on a real symmetric matrix. Converges to machine
// precision for the sizes used here (d <= 8 in production, <= 256 in tests).
EigenResult jacobi_eigensolve(SymMatrix m, bool want_vectors = true);

double lowest_eigenvalue(const SymMatrix& m);

// Solve a small linear system A x = b by Gaussian elimination with partial
// pivoting. Throws std::runtime_error if A is singular to working precision.
std::vector<double> solve_dense(std::vector<std::vector<double>> a, std::vector<double> b);

// SVD of a 2 x c real matrix (c in {2, 4}): m = u * diag(s) * v^T with
// u 2x2 orthogonal, s[0] >= s[1] >= 0, and v completed to a c x c orthogonal
// matrix by Gram-Schmidt (columns beyond the rank are an arbitrary orthonormal
// completion). Singular-value ties are ordered by index.
struct Svd2xN {
    double u[2][2];
    double s[2];
    std::vector<std::vector<double>> v;  // c columns, each of length c
};
Svd2xN svd_2xn(const std::vector<double>& m, std::size_t cols);

}  // namespace lmg
