#pragma once

// Dense-truncation brute-force validators for the closed-form identities the
// library relies on, plus seeded random instance generation.  Truncation cuts
// the last k shift columns of the window, so every comparison excludes the
// trailing rows/columns that carry those artifacts; interior agreement is
// exact up to rounding.

#include <cstdint>
#include <vector>

#include "shiftpert/defect_analysis.hpp"
#include "shiftpert/operator_model.hpp"

namespace shiftpert {

struct OracleConfig {
    Index n = 0;               // truncation size; 0 = auto (d + (r+2)k + 8)
    double tol_match = 1e-10;  // entrywise comparison tolerance
    std::uint64_t seed = 0;
};

struct CheckResult {
    bool pass = false;
    double max_discrepancy = 0.0;
    Index n_used = 0;
};

// I - T_N*T_N and I - T_N T_N* against the closed-form defect grams.
// Requires N >= d + 2k + 4.
CheckResult dense_defect_check(const OperatorSpec& spec, const OracleConfig& config = {});

// Dense T_N^r against stage_block plus the shifted identity columns.
// Requires N >= d + (r+1)k + 4.
CheckResult power_decomposition_check(const OperatorSpec& spec, Index r,
                                      const OracleConfig& config = {});

struct KernelConditionReport {
    Index r = 0;
    bool psd_gram_t = false;
    bool psd_gram_tstar = false;
    Index joint_kernel_dim = 0;  // window-restricted joint equality solutions
    bool pass = false;           // both stage grams PSD
};

// Stage inequalities as PSD of the stage grams, plus the joint
// equality-solution dimension.  Requires a contraction.
KernelConditionReport kernel_condition_check(const OperatorSpec& spec, Index r,
                                             const Tolerance& tol = {});

struct AnalyticProbeStage {
    Index m = 0;
    Index window_rank = 0;   // overlap directions with cosine > 1e-6
    double max_overlap = 0;  // largest principal-angle cosine
    Vector direction;        // window-side direction of the largest overlap
};

// Principal-angle overlap of col(T_N^m) with span{e_0..e_{d+k-1}} for
// m = 1..m_max.  A persistent overlap direction corroborates
// non-analyticity; this is a diagnostic, never a verdict.
std::vector<AnalyticProbeStage> analytic_probe(const OperatorSpec& spec, Index m_max,
                                               const OracleConfig& config = {},
                                               const Tolerance& tol = {});

// Seeded complex-Gaussian coefficient block rescaled so sigma_max = 1-margin.
// Deterministic per seed (hand-rolled Box-Muller over mt19937_64 draws).
OperatorSpec random_contraction(Index d, Index k, std::uint64_t seed, double margin = 0.05);

// Seeded standard complex Gaussian matrix (shared by tests and search).
Matrix gaussian_matrix(Index rows, Index cols, std::uint64_t seed);

}  // namespace shiftpert
