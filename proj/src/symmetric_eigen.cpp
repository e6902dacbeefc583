#include "achci/symmetric_eigen.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

namespace achci {

namespace {

constexpr int kMaxQlIterations = 60;

// Householder tridiagonalization (EISPACK tred2 ordering). The working
// matrix is stored transposed, w(j, k) == V[k][j], so the O(n^3) loops
// stride along rows. On exit d holds the diagonal, e the subdiagonal in
// e[1..n-1], and w the accumulated orthogonal transform (transposed).
void tridiagonalize(DenseMatrix& w, std::vector<double>& d, std::vector<double>& e) {
    const std::size_t n = w.rows();
    for (std::size_t j = 0; j < n; ++j) d[j] = w(j, n - 1);

    for (std::size_t i = n - 1; i > 0; --i) {
        double scale = 0.0;
        double h = 0.0;
        for (std::size_t k = 0; k < i; ++k) scale += std::abs(d[k]);
        if (scale == 0.0) {
            e[i] = d[i - 1];
            for (std::size_t j = 0; j < i; ++j) {
                d[j] = w(j, i - 1);
                w(j, i) = 0.0;
                w(i, j) = 0.0;
            }
        } else {
            for (std::size_t k = 0; k < i; ++k) {
                d[k] /= scale;
                h += d[k] * d[k];
            }
            double f = d[i - 1];
            double g = std::sqrt(h);
            if (f > 0) g = -g;
            e[i] = scale * g;
            h -= f * g;
            d[i - 1] = f - g;
            for (std::size_t j = 0; j < i; ++j) e[j] = 0.0;

            for (std::size_t j = 0; j < i; ++j) {
                f = d[j];
                w(i, j) = f;
                auto col = w.row(j);
                g = e[j] + col[j] * f;
                for (std::size_t k = j + 1; k < i; ++k) {
                    g += col[k] * d[k];
                    e[k] += col[k] * f;
                }
                e[j] = g;
            }
            f = 0.0;
            for (std::size_t j = 0; j < i; ++j) {
                e[j] /= h;
                f += e[j] * d[j];
            }
            const double hh = f / (h + h);
            for (std::size_t j = 0; j < i; ++j) e[j] -= hh * d[j];
            for (std::size_t j = 0; j < i; ++j) {
                f = d[j];
                g = e[j];
                auto col = w.row(j);
                for (std::size_t k = j; k < i; ++k) col[k] -= (f * e[k] + g * d[k]);
                d[j] = col[i - 1];
                col[i] = 0.0;
            }
        }
        d[i] = h;
    }

    for (std::size_t i = 0; i + 1 < n; ++i) {
        w(i, n - 1) = w(i, i);
        w(i, i) = 1.0;
        const double h = d[i + 1];
        auto next = w.row(i + 1);
        if (h != 0.0) {
            for (std::size_t k = 0; k <= i; ++k) d[k] = next[k] / h;
            for (std::size_t j = 0; j <= i; ++j) {
                auto col = w.row(j);
                double g = 0.0;
                for (std::size_t k = 0; k <= i; ++k) g += next[k] * col[k];
                for (std::size_t k = 0; k <= i; ++k) col[k] -= g * d[k];
            }
        }
        for (std::size_t k = 0; k <= i; ++k) next[k] = 0.0;
    }
    for (std::size_t j = 0; j < n; ++j) {
        d[j] = w(j, n - 1);
        w(j, n - 1) = 0.0;
    }
    w(n - 1, n - 1) = 1.0;
    e[0] = 0.0;
}

// Implicit QL on the tridiagonal (d, e), applying rotations to the rows of w.
void tridiagonal_ql(DenseMatrix& w, std::vector<double>& d, std::vector<double>& e) {
    const std::size_t n = d.size();
    for (std::size_t i = 1; i < n; ++i) e[i - 1] = e[i];
    e[n - 1] = 0.0;

    double f = 0.0;
    double tst1 = 0.0;
    const double eps = std::numeric_limits<double>::epsilon();
    for (std::size_t l = 0; l < n; ++l) {
        tst1 = std::max(tst1, std::abs(d[l]) + std::abs(e[l]));
        std::size_t m = l;
        while (m < n && std::abs(e[m]) > eps * tst1) ++m;

        if (m > l) {
            int iter = 0;
            do {
                if (++iter > kMaxQlIterations) {
                    throw EigenError("QL iteration did not converge for eigenvalue " +
                                         std::to_string(l + 1) + ", residual " +
                                         std::to_string(std::abs(e[l])),
                                     std::abs(e[l]));
                }
                double g = d[l];
                double p = (d[l + 1] - g) / (2.0 * e[l]);
                double r = std::hypot(p, 1.0);
                if (p < 0) r = -r;
                d[l] = e[l] / (p + r);
                d[l + 1] = e[l] * (p + r);
                const double dl1 = d[l + 1];
                double h = g - d[l];
                for (std::size_t i = l + 2; i < n; ++i) d[i] -= h;
                f += h;

                p = d[m];
                double c = 1.0;
                double c2 = c;
                double c3 = c;
                const double el1 = e[l + 1];
                double s = 0.0;
                double s2 = 0.0;
                for (std::size_t i = m; i-- > l;) {
                    c3 = c2;
                    c2 = c;
                    s2 = s;
                    g = c * e[i];
                    h = c * p;
                    r = std::hypot(p, e[i]);
                    e[i + 1] = s * r;
                    s = e[i] / r;
                    c = p / r;
                    p = c * d[i] - s * g;
                    d[i + 1] = h + s * (c * g + s * d[i]);

                    auto lo = w.row(i);
                    auto hi = w.row(i + 1);
                    for (std::size_t k = 0; k < n; ++k) {
                        const double t = hi[k];
                        hi[k] = s * lo[k] + c * t;
                        lo[k] = c * lo[k] - s * t;
                    }
                }
                p = -s * s2 * c3 * el1 * e[l] / dl1;
                e[l] = s * p;
                d[l] = c * p;
            } while (std::abs(e[l]) > eps * tst1);
        }
        d[l] += f;
        e[l] = 0.0;
    }
}

}  // namespace

SymmetricEigen symmetric_eigen(const DenseMatrix& a) {
    if (a.rows() != a.cols()) throw std::invalid_argument("symmetric_eigen: matrix is not square");
    const std::size_t n = a.rows();
    SymmetricEigen out;
    if (n == 0) return out;

    // A is symmetric, so its transpose is itself.
    DenseMatrix w = a;
    std::vector<double> d(n);
    std::vector<double> e(n);
    if (n == 1) {
        out.values = {a(0, 0)};
        out.vectors = DenseMatrix(1, 1);
        out.vectors(0, 0) = 1.0;
        return out;
    }
    tridiagonalize(w, d, e);
    tridiagonal_ql(w, d, e);

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t x, std::size_t y) { return d[x] > d[y]; });
    out.values.resize(n);
    out.vectors = DenseMatrix(n, n);
    for (std::size_t r = 0; r < n; ++r) {
        out.values[r] = d[order[r]];
        const auto src = w.row(order[r]);
        std::copy(src.begin(), src.end(), out.vectors.row(r).begin());
    }
    return out;
}

}  // namespace achci
