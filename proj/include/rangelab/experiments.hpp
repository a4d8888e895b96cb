#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "rangelab/dilation.hpp"
#include "rangelab/scalar_distance.hpp"

namespace rangelab {

/// Unitary-similarity + scaling normal form used by the dilation-gap
/// experiment: c_norm = phase * D^* C D / R has leading 2x2 block
/// [[g, f], [1, g]] with f real in [0, 1], unit distance to the scalars
/// (attained at g), first column (g, 1, 0, ..., 0)^t and second row
/// (1, g, 0, ..., 0). The basis columns come from a top singular pair of
/// C - mu I with orthogonal left/right vectors, completed deterministically.
struct StampfliForm {
    CMatrix c_norm;
    Complex g;
    double f = 0.0;
    double R = 0.0;       // min distance ||C - mu I||
    Complex mu_star;      // minimizer for the original C
    CMatrix basis;        // D with c_norm = phase * D^* C D / R
    Complex phase;        // the scalar phase absorbed into c_norm
    double structure_defect = 0.0;  // largest entry that the form requires zero
};
StampfliForm normalize_stampfli(const CMatrix& c);

/// Thrown by verify_main when the weight belongs to the other experiment.
struct RoutedToVerifyKey : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct DilationTrial {
    std::uint64_t seed = 0;
    std::size_t pad = 0;
    bool certified = false;
    double residual = 0.0;
    double margin = 0.0;  // certified distance beyond the disk radius
};

/// Report of the strict-gap experiment: for a weight that is not rank-one
/// normal, a rank-one nilpotent contraction T is constructed whose weighted
/// range is a disk of radius r, and every sampled unitary dilation U is asked
/// to certify a point at distance >= gap_target beyond r inside its range.
struct MainReport {
    std::string branch;  // "scalar-C" | "case-I (f<1)" | "case-II (f=1)"
    CMatrix t_used;
    double r = 0.0;
    double gap_target = 0.0;
    double theta = 0.0;
    Complex target;  // certified point (branch-dependent; scalar branch uses a circle of targets)
    StampfliForm form;
    std::vector<DilationTrial> per_dilation;
    bool all_pass = false;
};
MainReport verify_main(const CMatrix& c, std::size_t num_dilations,
                       const std::vector<std::size_t>& pads, std::uint64_t seed,
                       double tol = 1e-6);

/// Report of the intersection experiment for rank-one normal weights:
/// containment of the weighted range of T in every sampled dilation's range,
/// plus the Hausdorff distance of the finite-sample intersection estimate as
/// the dilation count doubles.
struct KeyReport {
    Complex gamma;
    double containment_violation = 0.0;
    bool containment_ok = false;
    std::vector<std::size_t> counts;
    std::vector<double> hausdorff;
    bool hausdorff_monotone = false;
    bool all_pass = false;
};
KeyReport verify_key(const CMatrix& c, const CMatrix& t, std::size_t num_dilations,
                     std::size_t grid, std::uint64_t seed, double tol = 1e-6);

nlohmann::json report_to_json(const MainReport& report);
nlohmann::json report_to_json(const KeyReport& report);

/// Hausdorff distance between convex regions sampled on the same direction
/// grid: max |h1 - h2| over directions.
double hausdorff_support(const std::vector<double>& h1, const std::vector<double>& h2);

}  // namespace rangelab
