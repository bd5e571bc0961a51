#include "tnet/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace tnet {

EigenDecomposition sym_eigen(const SymMatrix& m) {
    const int n = m.n;
    std::vector<double> a = m.a;
    std::vector<double> v(static_cast<size_t>(n) * n, 0.0);
    for (int i = 0; i < n; ++i) v[static_cast<size_t>(i) * n + i] = 1.0;

    auto A = [&](int i, int j) -> double& { return a[static_cast<size_t>(i) * n + j]; };
    auto V = [&](int i, int j) -> double& { return v[static_cast<size_t>(i) * n + j]; };

    double norm = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) norm += A(i, j) * A(i, j);
    norm = std::sqrt(norm);
    const double tol = (norm > 0.0 ? norm : 1.0) * 1e-14;

    const int max_sweeps = 64;
    int sweep = 0;
    for (; sweep < max_sweeps; ++sweep) {
        double off = 0.0;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) off += A(i, j) * A(i, j);
        if (std::sqrt(2.0 * off) <= tol) break;

        for (int p = 0; p < n - 1; ++p) {
            for (int q = p + 1; q < n; ++q) {
                const double apq = A(p, q);
                if (std::abs(apq) <= tol * 1e-2 / (n > 1 ? n : 1)) continue;
                const double app = A(p, p), aqq = A(q, q);
                const double theta = (aqq - app) / (2.0 * apq);
                const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                                 (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                for (int k = 0; k < n; ++k) {
                    const double akp = A(k, p), akq = A(k, q);
                    A(k, p) = c * akp - s * akq;
                    A(k, q) = s * akp + c * akq;
                }
                for (int k = 0; k < n; ++k) {
                    const double apk = A(p, k), aqk = A(q, k);
                    A(p, k) = c * apk - s * aqk;
                    A(q, k) = s * apk + c * aqk;
                }
                for (int k = 0; k < n; ++k) {
                    const double vkp = V(k, p), vkq = V(k, q);
                    V(k, p) = c * vkp - s * vkq;
                    V(k, q) = s * vkp + c * vkq;
                }
            }
        }
    }
    if (sweep == max_sweeps) throw std::runtime_error("sym_eigen: Jacobi sweeps did not converge");

    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int i, int j) {
        const double di = a[static_cast<size_t>(i) * n + i];
        const double dj = a[static_cast<size_t>(j) * n + j];
        return di < dj || (di == dj && i < j);
    });

    EigenDecomposition out;
    out.values.resize(n);
    out.vectors.assign(n, std::vector<double>(n));
    for (int k = 0; k < n; ++k) {
        const int src = order[k];
        out.values[k] = a[static_cast<size_t>(src) * n + src];
        for (int i = 0; i < n; ++i) out.vectors[k][i] = v[static_cast<size_t>(i) * n + src];
        // sign convention: first nonzero coordinate positive
        for (int i = 0; i < n; ++i) {
            if (out.vectors[k][i] != 0.0) {
                if (out.vectors[k][i] < 0.0)
                    for (int j = 0; j < n; ++j) out.vectors[k][j] = -out.vectors[k][j];
                break;
            }
        }
    }
    return out;
}

std::vector<std::vector<double>> classical_mds(const SymMatrix& dist, int dim) {
    const int n = dist.n;
    SymMatrix b(n);
    // B = -1/2 * J D^2 J with J = I - 11^T/n
    std::vector<double> row_mean(n, 0.0);
    double grand = 0.0;
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            const double d2 = dist.at(i, j) * dist.at(i, j);
            row_mean[i] += d2;
            grand += d2;
        }
        row_mean[i] /= n;
    }
    grand /= static_cast<double>(n) * n;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const double d2 = dist.at(i, j) * dist.at(i, j);
            b.at(i, j) = -0.5 * (d2 - row_mean[i] - row_mean[j] + grand);
        }

    const EigenDecomposition eig = sym_eigen(b);
    std::vector<std::vector<double>> pts(n, std::vector<double>(dim, 0.0));
    for (int k = 0; k < dim && k < n; ++k) {
        const int idx = n - 1 - k;  // largest first
        const double lam = eig.values[idx];
        const double scale = lam > 0.0 ? std::sqrt(lam) : 0.0;
        for (int i = 0; i < n; ++i) pts[i][k] = scale * eig.vectors[idx][i];
    }
    return pts;
}

}  // namespace tnet
