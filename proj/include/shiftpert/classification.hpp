#pragma once

// Decision procedures for the classified properties of T = S_k + F:
// contraction, hyponormality, non-zero point spectrum, analyticity, and
// complete non-unitarity, aggregated into a certified report.
//
// Every verdict reduces to a finite matrix computation:
//  - contraction        <=>  G_T >= 0
//  - hyponormal         <=>  G_Tstar - embed(G_T) >= 0
//  - lambda != 0 is an eigenvalue of T
//                       <=>  ker[(A1 - lambda I); B] != {0},
//    with A1 the top d x d block of C and B the bottom k x d block; such
//    eigenvectors are supported on e_0..e_{d-1}
//  - analytic           <=>  no non-zero eigenvalue (when A1 is a contraction)
//  - completely non-unitary: certified or refuted by finite witnesses, or
//    reported Inconclusive at the iteration cap.

#include <optional>
#include <string>
#include <vector>

#include "shiftpert/defect_analysis.hpp"
#include "shiftpert/hermitian_kernel.hpp"
#include "shiftpert/operator_model.hpp"

namespace shiftpert {

enum class Verdict { True, False, NotApplicable, Inconclusive };

enum class CnuVerdict { Certified, NotCnu, Inconclusive };

struct CnuStatus {
    CnuVerdict verdict = CnuVerdict::Inconclusive;
    // NotCnu: unit vector with ||Tv|| = ||T*v|| = ||v|| (within 1e-8); either
    // a unimodular eigenvector or a direction orthogonal to the stabilized
    // reducing subspace.
    Vector witness;
    std::optional<Complex> witness_eigenvalue;
    int depth_used = 0;
    // Inconclusive only: per-stage dimensions of the cumulative joint
    // equality space of the stage defect conditions, r = 1..size().
    std::vector<Index> joint_kernel_dims;
};

struct EigenCriterionBlocks {
    Matrix a1;  // d x d top block of C
    Matrix b;   // k x d bottom block of C
};

struct ClassificationReport {
    Index d = 0;
    Index k = 0;
    bool is_contraction = false;
    Index dim_dt = 0;
    Index dim_dtstar = 0;
    bool inclusion = false;
    std::optional<double> douglas_lambda;
    Verdict hyponormal = Verdict::NotApplicable;
    std::vector<EigenPair> point_spectrum;  // non-zero eigenvalues of T
    Verdict analytic = Verdict::Inconclusive;
    std::optional<CnuStatus> cnu;  // nullopt = n/a (non-contraction)
    bool in_paper_class = false;
    std::vector<std::string> marginal_flags;
};

bool is_contraction(const OperatorSpec& spec, const Tolerance& tol);

// Requires a contraction (classify reports n/a otherwise).
bool is_hyponormal(const OperatorSpec& spec, const Tolerance& tol);

EigenCriterionBlocks eigen_blocks(const OperatorSpec& spec);

// Non-zero eigenvalues of T with orthonormal bases of their (finitely
// supported, length-d) eigenvectors.  Valid for non-contractions too; see
// is_analytic for how the results are interpreted in that case.
std::vector<EigenPair> nonzero_point_spectrum(const OperatorSpec& spec, const Tolerance& tol);

// True/False under the A1-contraction hypothesis; a found eigenvalue forces
// False regardless; Inconclusive when A1 is not a contraction and no
// eigenvalue was found.
Verdict is_analytic(const OperatorSpec& spec, const Tolerance& tol);

// Three-phase certificate search; throws for non-contraction input.
CnuStatus cnu_status(const OperatorSpec& spec, const Tolerance& tol, int max_depth = 64);

ClassificationReport classify(const OperatorSpec& spec, const Tolerance& tol = {},
                              int max_depth = 64);

}  // namespace shiftpert
