#pragma once

#include <cstddef>
#include <iosfwd>
#include <vector>

#include "achci/cost_matrix.hpp"
#include "achci/geometry.hpp"
#include "achci/symmetric_eigen.hpp"

namespace achci {

/// Inner products of the position vectors of nodes 2..n relative to node 1,
/// an (n-1) x (n-1) symmetric matrix. Entry (i, j) refers to nodes i+2, j+2.
struct GramMatrix {
    DenseMatrix m;
};

struct SpectrumSummary {
    std::size_t negatives_clamped = 0;
    double negative_mass = 0.0;  ///< sum of |lambda| over negative eigenvalues
};

/// Planar coordinates whose pairwise distances approximate the costs.
/// coords[0] is node 1, fixed at the origin.
struct Embedding2D {
    std::vector<Point> coords;
    double lambda1 = 0.0;
    double lambda2 = 0.0;
    SpectrumSummary spectrum;
};

/// M(i, j) = (C(i+1, 0)^2 + C(0, j+1)^2 - C(i+1, j+1)^2) / 2, node 1 as origin.
GramMatrix gram_from_costs(const CostMatrix& c);

/// Classical MDS projection onto the two dominant eigenvectors of M.
///
/// Negative eigenvalues (M is indefinite when the costs are not Euclidean)
/// are clamped to zero and counted. Each retained eigenvector is signed so
/// its first non-negligible component is positive.
Embedding2D embed_2d(const GramMatrix& gram);

Embedding2D embed_costs(const CostMatrix& c);

/// sqrt( sum_{i<j} (|e_i - e_j| - C_ij)^2 / sum_{i<j} C_ij^2 ).
double embedding_stress(const CostMatrix& c, const Embedding2D& e);

/// CSV with header "index,x,y" and 1-based indices.
void write_embedding_csv(std::ostream& out, const Embedding2D& e);

}  // namespace achci
