#include "achci/mds.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <ostream>
#include <stdexcept>

#include "achci/tsplib_io.hpp"

namespace achci {

GramMatrix gram_from_costs(const CostMatrix& c) {
    const std::size_t n = c.size();
    if (n < 3) throw std::invalid_argument("gram_from_costs needs at least 3 nodes");
    validate_costs(c);

    const std::size_t m = n - 1;
    std::vector<double> to_origin(m);
    for (std::size_t i = 0; i < m; ++i) to_origin[i] = c(i + 1, 0) * c(i + 1, 0);

    GramMatrix g{DenseMatrix(m, m)};
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = i; j < m; ++j) {
            const double cij = c(i + 1, j + 1);
            const double v = 0.5 * (to_origin[i] + to_origin[j] - cij * cij);
            g.m(i, j) = v;
            g.m(j, i) = v;
        }
    }
    return g;
}

Embedding2D embed_2d(const GramMatrix& gram) {
    const std::size_t m = gram.m.rows();
    if (m < 2) throw std::invalid_argument("embed_2d needs a Gram matrix of order at least 2");

    const SymmetricEigen eig = symmetric_eigen(gram.m);

    Embedding2D out;
    for (double lambda : eig.values) {
        if (lambda < 0.0) {
            ++out.spectrum.negatives_clamped;
            out.spectrum.negative_mass += -lambda;
        }
    }
    out.lambda1 = std::max(eig.values[0], 0.0);
    out.lambda2 = std::max(eig.values[1], 0.0);

    std::array<std::vector<double>, 2> axes;
    for (std::size_t a = 0; a < 2; ++a) {
        const auto v = eig.vectors.row(a);
        double vmax = 0.0;
        for (double x : v) vmax = std::max(vmax, std::abs(x));
        double sign = 1.0;
        for (double x : v) {
            if (std::abs(x) > 1e-12 * vmax) {
                sign = x > 0 ? 1.0 : -1.0;
                break;
            }
        }
        const double sigma = std::sqrt(a == 0 ? out.lambda1 : out.lambda2);
        axes[a].resize(m);
        for (std::size_t i = 0; i < m; ++i) axes[a][i] = sign * sigma * v[i];
    }

    out.coords.reserve(m + 1);
    out.coords.push_back({0.0, 0.0});
    for (std::size_t i = 0; i < m; ++i) out.coords.push_back({axes[0][i], axes[1][i]});
    return out;
}

Embedding2D embed_costs(const CostMatrix& c) { return embed_2d(gram_from_costs(c)); }

double embedding_stress(const CostMatrix& c, const Embedding2D& e) {
    const std::size_t n = c.size();
    if (e.coords.size() != n) throw std::invalid_argument("embedding_stress: size mismatch");
    double num = 0.0;
    double den = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const double r = distance(e.coords[i], e.coords[j]) - c(i, j);
            num += r * r;
            den += c(i, j) * c(i, j);
        }
    }
    return den > 0.0 ? std::sqrt(num / den) : 0.0;
}

void write_embedding_csv(std::ostream& out, const Embedding2D& e) {
    out << "index,x,y\n";
    for (std::size_t i = 0; i < e.coords.size(); ++i) {
        out << (i + 1) << ',' << format_double(e.coords[i].x) << ',' << format_double(e.coords[i].y)
            << '\n';
    }
}

}  // namespace achci
