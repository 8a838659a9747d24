#pragma once

// Golden cases: fixed operators with independently known verdicts and defect
// matrices, used as the regression corpus.  Only fields an expectation pins
// are compared; everything else is left to the property suites.

#include <optional>
#include <string>
#include <vector>

#include "shiftpert/classification.hpp"
#include "shiftpert/io.hpp"
#include "shiftpert/operator_model.hpp"

namespace shiftpert {

struct GoldenCase {
    std::string name;
    std::string note;  // what the operator is and why the expectations hold
    OperatorSpec spec;

    std::optional<bool> contraction;
    std::optional<Index> dim_dt;
    std::optional<Index> dim_dtstar;
    std::optional<bool> inclusion;
    std::optional<Verdict> hyponormal;
    std::optional<Verdict> analytic;
    std::optional<CnuVerdict> cnu;
    std::optional<bool> in_paper_class;

    bool spectrum_specified = false;
    std::vector<Complex> point_spectrum;  // expected non-zero eigenvalues

    std::optional<Matrix> gram_t;
    std::optional<Matrix> gram_tstar;
    std::optional<Matrix> commutator;        // G_Tstar - embed(G_T)
    std::optional<Vector> defect_direction;  // unit direction spanning ran G_T
};

std::vector<GoldenCase> golden_cases();

struct CaseResult {
    std::string name;
    bool pass = false;
    std::vector<std::string> diffs;
};

struct CorpusResult {
    std::vector<CaseResult> cases;
    bool all_pass = false;
};

// Classifies every golden spec and diffs it against the pinned expectations;
// matrix entries compare at match_tol.  Failures are reported, not thrown.
CorpusResult run_corpus(const Tolerance& tol, double match_tol = 1e-10, int max_depth = 64);

Json expectations_to_json(const GoldenCase& c);

}  // namespace shiftpert
