#pragma once

#include <cstddef>
#include <vector>

namespace tnet {

// Dense symmetric matrix stored row-major.
struct SymMatrix {
    int n = 0;
    std::vector<double> a;  // n*n

    SymMatrix() = default;
    explicit SymMatrix(int n_) : n(n_), a(static_cast<size_t>(n_) * n_, 0.0) {}

    double& at(int i, int j) { return a[static_cast<size_t>(i) * n + j]; }
    double at(int i, int j) const { return a[static_cast<size_t>(i) * n + j]; }
};

struct EigenDecomposition {
    std::vector<double> values;               // ascending
    std::vector<std::vector<double>> vectors;  // vectors[k] is the k-th eigenvector
};

// Cyclic Jacobi eigensolver for symmetric matrices. Eigenvalues ascending,
// each eigenvector's first nonzero coordinate made positive. Throws
// std::runtime_error if the off-diagonal norm fails to vanish.
EigenDecomposition sym_eigen(const SymMatrix& m);

// Classical multidimensional scaling of a (symmetric, zero-diagonal) distance
// matrix into `dim` coordinates: double-center the squared distances and keep
// the top eigenpairs, zeroing negative eigenvalues.
std::vector<std::vector<double>> classical_mds(const SymMatrix& dist, int dim);

}  // namespace tnet
