#pragma once

#include <cstddef>
#include <vector>

#include "rangelab/linalg.hpp"

namespace rangelab {

/// Elliptical disk given by its two foci and the full minor-axis length.
/// Degenerates to a segment (minor_axis = 0) or a point (foci equal too).
struct Ellipse {
    Complex focus1;
    Complex focus2;
    double minor_axis = 0.0;

    double major_axis() const;
    Complex center() const { return 0.5 * (focus1 + focus2); }
    double area() const;
    /// dist(z, f1) + dist(z, f2) - major_axis; <= 0 means z is in the disk.
    double boundary_defect(Complex z) const;
    bool contains(Complex z, double tol = 0.0) const { return boundary_defect(z) <= tol; }
};

/// Outer description of a compact convex region: support-function samples on
/// a uniform direction grid plus a cloud of points known to lie inside.
struct ConvexRegion {
    std::vector<double> directions;
    std::vector<double> support;
    std::vector<Complex> inner_points;

    std::size_t grid_size() const { return directions.size(); }
    /// True when z satisfies every sampled half-plane constraint. A true
    /// answer is rigorous only up to the grid resolution; false is rigorous.
    bool contains(Complex z, double tol) const;
    /// max over the grid of Re(e^{-i theta} z) - h(theta).
    double violation(Complex z) const;
};

/// Support function value of W(A) in direction theta together with a unit
/// witness vector. h = lambda_max((e^{-i theta} A + e^{i theta} A^*)/2) and
/// boundary_point = <A x, x> is a boundary point of W(A) with outer normal
/// direction theta.
struct SupportPoint {
    double h = 0.0;
    CVector witness;
    Complex boundary_point;
};

SupportPoint nr_support(const CMatrix& a, double theta);

/// Samples the support function of W(A) on a uniform K-grid; the inner points
/// are the witnesses' Rayleigh quotients, which are exact members of W(A).
ConvexRegion nr_region(const CMatrix& a, std::size_t grid = 720);

bool nr_contains(const CMatrix& a, Complex z, std::size_t grid = 720, double tol = 1e-9);

/// Elliptical range of a 2x2 matrix: foci at the eigenvalues (sorted
/// lexicographically by (Re, Im)), minor axis sqrt(tr(A^*A) - |l1|^2 - |l2|^2).
Ellipse ellipse_2x2(const CMatrix& a);

/// Checks whether e^{i phi} a11 + e^{-i phi} conj(a11) is the top eigenvalue
/// of A_phi = e^{i phi} A + e^{-i phi} A^* within tol (an unscaled convention,
/// unlike nr_support's). When it is, the (1, j) entries of A_phi for j >= 2
/// must vanish, forcing |a_1j| = |a_j1|; a violation of that consequence is
/// reported as an internal consistency failure.
bool boundary_certificate(const CMatrix& a, double phi, double tol);

struct InternalConsistencyError : std::logic_error {
    using std::logic_error::logic_error;
};

/// Finds a unit vector x with x^* A x = xi for 2x2 A and xi in W(A);
/// coarse grid over (cos a, e^{ib} sin a) followed by pattern-search
/// refinement. residual reports |x^* A x - xi| actually achieved.
struct PointWitness2 {
    CVector x;
    double residual = 0.0;
};
PointWitness2 nr_point_witness_2x2(const CMatrix& a, Complex xi, int grid = 64);

}  // namespace rangelab
