// Numerical norms and seminorms on the disc, and finite sections of
// g-operators on the weighted Bergman scale:
//   ||f||_{a,p}^p = (a+1) int_D |f|^p (1-|z|^2)^a dA   (dA normalized),
//   ||f||_{-1,p}  = Hardy circle norm,
//   Bloch / H^inf / Garsia-BMOA suprema over finite grids (lower bounds).
#pragma once

#include "paraprod/rewrite.hpp"
#include "paraprod/series.hpp"

#include <functional>
#include <span>

namespace paraprod {

// ||z^n||^2 on A^2_alpha (alpha >= 0 integer) or H^2 (alpha = -1), exactly:
// 1 for alpha = -1, (alpha+1)! n! / (n+alpha+1)! otherwise.
Rat moment(int n, int alpha);

struct QuadConfig {
    int radial_nodes = 24;     // Gauss-Legendre nodes per radial panel
    int angular_nodes = 256;   // uniform circle nodes
    int boundary_levels = 10;  // geometric panels [1-2^-j, 1-2^-j-1] toward t=1
};

using PointFn = std::function<Cplx(Cplx)>;

double bergman_norm(const CSeries& f, double alpha, double p, const QuadConfig& cfg = {});
double bergman_norm_fn(const PointFn& f, double alpha, double p, const QuadConfig& cfg = {});

double hardy_norm(const CSeries& f, double p, int angular_nodes = 512);
double hardy_norm_fn(const PointFn& f, double p, int angular_nodes = 512);

// max over the grid of (1-|z|^2) |f'(z)|; a lower bound for the Bloch seminorm.
double bloch_seminorm(const CSeries& f, std::span<const Cplx> grid);
// same quantity from a pointwise derivative evaluator (exact near the boundary).
double bloch_seminorm_fn(const PointFn& f_deriv, std::span<const Cplx> grid);

// Garsia BMOA seminorm of a polynomial (finite series), via the identity
// ||f∘phi_a - f(a)||_{H^2}^2 = P[|f|^2](a) - |f(a)|^2 (Poisson average);
// sup over the a-grid, trapezoid with angular_nodes circle points (exact for
// polynomials of degree < angular_nodes/2 up to rounding).
double garsia_bmoa(const CSeries& f, std::span<const Cplx> a_grid, int angular_nodes = 512);

// max |f| over the grid; a lower bound for the H^inf norm.
double sup_norm(const CSeries& f, std::span<const Cplx> grid);

// default grid: radii 1 - 10^-j (j = 1..levels) times `rays` directions
std::vector<Cplx> boundary_ladder_grid(int levels = 6, int rays = 16);

struct OperatorMatrix {
    // Column j holds the coefficients of L e_j in the orthonormal basis
    // e_n = z^n / sqrt(moment(n)); columns are exact images (g polynomial), so
    // the truncated norm is a certified lower bound of ||L||, nondecreasing in N.
    int rows = 0, cols = 0;
    int alpha = 0;
    std::vector<Cplx> a; // column-major

    Cplx& at(int i, int j) { return a[static_cast<size_t>(j) * rows + i]; }
    Cplx at(int i, int j) const { return a[static_cast<size_t>(j) * rows + i]; }
};

OperatorMatrix operator_matrix(const ExprPtr& e, const Poly& g, int alpha, int n_columns);

struct PowerIterationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Largest singular value by power iteration on A^H A; relative tolerance tol.
double operator_norm_trunc(const OperatorMatrix& m, double tol = 1e-10, int max_iterations = 20000);

} // namespace paraprod
