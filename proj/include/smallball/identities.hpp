// SPDX-License-Identifier: MIT
#pragma once

#include <span>
#include <vector>

#include "smallball/contour.hpp"
#include "smallball/quadrature.hpp"

namespace smallball {

/// Simplex D^n_T = {u_j > 0, u_1 + ... + u_n < T} with weights a_j >= 0.
struct SimplexInstance {
    static constexpr int kMaxDimension = 6;

    std::vector<double> a;
    double horizon = 1.0;

    int dimension() const { return static_cast<int>(a.size()); }

    /// 1 <= n <= 6, a_j >= 0 finite, T > 0; DimensionTooLarge above 6,
    /// DomainError otherwise.
    void validate() const;
};

/// int_{D^n_T} prod u_j^{p_j - 1} du = T^{sum p} prod Gamma(p_j) / Gamma(sum p + 1).
double dirichlet_moment(std::span<const double> p, double horizon);

/// int_{D^n_T} e^{-sum a_j u_j} du by nested adaptive quadrature, one level
/// per coordinate, each level with abs_tol / n.
QuadratureResult simplex_exp_direct(const SimplexInstance& inst, const QuadratureConfig& cfg);

/// (T^n / 2 pi i) int_gamma prod_j (z + T a_j)^{-1} e^z z^{-1} dz. Raises
/// Error(ImaginaryResidue) when |Im| exceeds 10 abs_tol.
QuadratureResult simplex_exp_contour(const SimplexInstance& inst, const ContourSpec& contour,
                                     const QuadratureConfig& cfg);

}  // namespace smallball
