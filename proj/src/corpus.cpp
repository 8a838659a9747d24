#include "shiftpert/corpus.hpp"

#include <cmath>
#include <sstream>

#include "shiftpert/defect_analysis.hpp"

namespace shiftpert {

namespace {

Matrix from_rows(std::initializer_list<std::initializer_list<double>> rows) {
    const Index r = static_cast<Index>(rows.size());
    const Index c = static_cast<Index>(rows.begin()->size());
    Matrix m(r, c);
    Index i = 0;
    for (const auto& row : rows) {
        Index j = 0;
        for (double x : row) m(i, j++) = Complex(x, 0.0);
        ++i;
    }
    return m;
}

GoldenCase rank_one_case(std::string name, std::string note, Index k,
                         std::initializer_list<double> alpha) {
    Vector a(static_cast<Index>(alpha.size()));
    Index i = 0;
    for (double x : alpha) a[i++] = Complex(x, 0.0);
    GoldenCase c;
    c.name = std::move(name);
    c.note = std::move(note);
    c.spec = rank_one_operator(k, a);
    return c;
}

}  // namespace

std::vector<GoldenCase> golden_cases() {
    std::vector<GoldenCase> cases;

    {
        // Rank-one perturbation of the multiplicity-2 shift:
        // T e_0 = (1/2) e_1 + (1/2) e_2, T e_j = e_{j+2} otherwise.
        GoldenCase c = rank_one_case(
            "example_2_1",
            "T e_0 = a e_1 + a e_2 with a = 1/2 on top of the multiplicity-2 shift; "
            "hyponormal and analytic with defect dims (1, 3)",
            2, {0.0, 0.5, 0.5});
        c.contraction = true;
        c.dim_dt = 1;
        c.dim_dtstar = 3;
        c.inclusion = true;
        c.hyponormal = Verdict::True;
        c.analytic = Verdict::True;
        c.cnu = CnuVerdict::Certified;
        c.in_paper_class = true;
        c.spectrum_specified = true;  // expected empty
        c.gram_t = from_rows({{0.5}});
        c.gram_tstar = from_rows({{1.0, 0.0, 0.0}, {0.0, 0.75, -0.25}, {0.0, -0.25, 0.75}});
        c.commutator = from_rows({{0.5, 0.0, 0.0}, {0.0, 0.75, -0.25}, {0.0, -0.25, 0.75}});
        cases.push_back(std::move(c));
    }

    {
        // T e_0 = T e_1 = (1/2) e_0 on top of the multiplicity-1 shift acting
        // from e_2 on: a contraction with defect inclusion that is neither
        // hyponormal nor analytic (eigenvalue 1/2 at e_0).
        GoldenCase c;
        c.name = "example_3_3";
        c.note = "T e_0 = T e_1 = (1/2) e_0, T e_j = e_{j+1} for j >= 2; inclusion holds "
                 "but the commutator block has a negative corner and 1/2 is an eigenvalue";
        c.spec = build_operator(2, 1, from_rows({{0.5, 0.5}, {0.0, 0.0}, {0.0, 0.0}}));
        c.contraction = true;
        c.dim_dt = 2;
        c.dim_dtstar = 3;
        c.inclusion = true;
        c.hyponormal = Verdict::False;
        c.analytic = Verdict::False;
        c.cnu = CnuVerdict::Certified;
        c.in_paper_class = true;
        c.spectrum_specified = true;
        c.point_spectrum = {Complex(0.5, 0.0)};
        c.gram_t = from_rows({{0.75, -0.25}, {-0.25, 0.75}});
        c.gram_tstar = from_rows({{0.5, 0.0, 0.0}, {0.0, 1.0, 0.0}, {0.0, 0.0, 1.0}});
        c.commutator = from_rows({{-0.25, 0.25, 0.0}, {0.25, 0.25, 0.0}, {0.0, 0.0, 1.0}});
        cases.push_back(std::move(c));
    }

    {
        // T e_0 = T e_1 = (1/sqrt 2) e_0: the defect space of T is spanned by
        // (e_0 - e_1)/sqrt 2, which the defect space of T* misses entirely.
        const double s = 1.0 / std::sqrt(2.0);
        GoldenCase c;
        c.name = "intro_counterexample";
        c.note = "T e_0 = T e_1 = (1/sqrt2) e_0, T e_j = e_{j+1} for j >= 2; the defect "
                 "inclusion fails and dim D_T = 1 < d";
        c.spec = build_operator(2, 1, from_rows({{s, s}, {0.0, 0.0}, {0.0, 0.0}}));
        c.contraction = true;
        c.dim_dt = 1;
        c.dim_dtstar = 2;
        c.inclusion = false;
        c.hyponormal = Verdict::False;
        c.analytic = Verdict::False;
        c.cnu = CnuVerdict::Certified;
        c.in_paper_class = false;
        c.spectrum_specified = true;
        c.point_spectrum = {Complex(s, 0.0)};
        c.gram_t = from_rows({{0.5, -0.5}, {-0.5, 0.5}});
        Vector direction(2);
        direction << Complex(s, 0.0), Complex(-s, 0.0);
        c.defect_direction = direction;
        cases.push_back(std::move(c));
    }

    {
        GoldenCase c = rank_one_case(
            "rank_one_zero_head",
            "rank-one column (0, 0.3, 0.4) over the multiplicity-2 shift: no eigenvalue, "
            "so analytic, and every rank-one contraction column is hyponormal",
            2, {0.0, 0.3, 0.4});
        c.contraction = true;
        c.dim_dt = 1;
        c.dim_dtstar = 3;
        c.inclusion = true;
        c.hyponormal = Verdict::True;
        c.analytic = Verdict::True;
        c.cnu = CnuVerdict::Certified;
        c.in_paper_class = true;
        c.spectrum_specified = true;
        cases.push_back(std::move(c));
    }

    {
        GoldenCase c = rank_one_case(
            "rank_one_eigenvalue",
            "rank-one column (0.5, 0) over the multiplicity-1 shift: T e_0 = (1/2) e_0, "
            "so 1/2 is an eigenvalue and T is not analytic, yet still hyponormal",
            1, {0.5, 0.0});
        c.contraction = true;
        c.dim_dt = 1;
        c.dim_dtstar = 2;
        c.inclusion = true;
        c.hyponormal = Verdict::True;
        c.analytic = Verdict::False;
        c.cnu = CnuVerdict::Certified;
        c.in_paper_class = true;
        c.spectrum_specified = true;
        c.point_spectrum = {Complex(0.5, 0.0)};
        cases.push_back(std::move(c));
    }

    {
        GoldenCase c = rank_one_case(
            "rank_one_mixed",
            "rank-one column (0.5, 0.25, 0.25): the head entry is non-zero but so is a "
            "later one, which blocks the eigenvalue equation, so T is analytic",
            2, {0.5, 0.25, 0.25});
        c.contraction = true;
        c.dim_dt = 1;
        c.dim_dtstar = 3;
        c.inclusion = true;
        c.hyponormal = Verdict::True;
        c.analytic = Verdict::True;
        c.cnu = CnuVerdict::Certified;
        c.in_paper_class = true;
        c.spectrum_specified = true;
        cases.push_back(std::move(c));
    }

    return cases;
}

namespace {

void check(bool ok, std::vector<std::string>& diffs, const std::string& message) {
    if (!ok) diffs.push_back(message);
}

std::string matrix_diff(const Matrix& got, const Matrix& want, double match_tol,
                        const std::string& label) {
    if (got.rows() != want.rows() || got.cols() != want.cols()) {
        return label + ": shape mismatch";
    }
    const double diff = (got - want).cwiseAbs().maxCoeff();
    if (diff > match_tol) {
        return label + ": max entry discrepancy " + format_real(diff);
    }
    return {};
}

}  // namespace

CorpusResult run_corpus(const Tolerance& tol, double match_tol, int max_depth) {
    CorpusResult result;
    result.all_pass = true;
    for (const GoldenCase& c : golden_cases()) {
        CaseResult r;
        r.name = c.name;
        const ClassificationReport report = classify(c.spec, tol, max_depth);
        const DefectGrams grams = defect_grams(c.spec);

        if (c.contraction) {
            check(report.is_contraction == *c.contraction, r.diffs,
                  "contraction: got " + std::string(report.is_contraction ? "true" : "false"));
        }
        if (c.dim_dt) {
            check(report.dim_dt == *c.dim_dt, r.diffs,
                  "dim_DT: got " + std::to_string(report.dim_dt));
        }
        if (c.dim_dtstar) {
            check(report.dim_dtstar == *c.dim_dtstar, r.diffs,
                  "dim_DTstar: got " + std::to_string(report.dim_dtstar));
        }
        if (c.inclusion) {
            check(report.inclusion == *c.inclusion, r.diffs,
                  "inclusion: got " + std::string(report.inclusion ? "true" : "false"));
        }
        if (c.hyponormal) {
            check(report.hyponormal == *c.hyponormal, r.diffs,
                  "hyponormal: got " + verdict_string(report.hyponormal));
        }
        if (c.analytic) {
            check(report.analytic == *c.analytic, r.diffs,
                  "analytic: got " + verdict_string(report.analytic));
        }
        if (c.cnu) {
            check(report.cnu && report.cnu->verdict == *c.cnu, r.diffs,
                  "cnu: got " +
                      (report.cnu ? cnu_verdict_string(report.cnu->verdict) : std::string("n/a")));
        }
        if (c.in_paper_class) {
            check(report.in_paper_class == *c.in_paper_class, r.diffs,
                  "in_paper_class: got " +
                      std::string(report.in_paper_class ? "true" : "false"));
        }
        if (c.spectrum_specified) {
            check(report.point_spectrum.size() == c.point_spectrum.size(), r.diffs,
                  "point_spectrum: got " + std::to_string(report.point_spectrum.size()) +
                      " eigenvalue group(s), expected " +
                      std::to_string(c.point_spectrum.size()));
            for (Complex expected : c.point_spectrum) {
                bool found = false;
                for (const EigenPair& ep : report.point_spectrum) {
                    if (std::abs(ep.value - expected) <= 1e-8) found = true;
                }
                check(found, r.diffs, "point_spectrum: missing " + format_complex(expected));
            }
        }
        if (c.gram_t) {
            const std::string diff = matrix_diff(grams.gram_t, *c.gram_t, match_tol, "gram_T");
            if (!diff.empty()) r.diffs.push_back(diff);
        }
        if (c.gram_tstar) {
            const std::string diff =
                matrix_diff(grams.gram_tstar, *c.gram_tstar, match_tol, "gram_Tstar");
            if (!diff.empty()) r.diffs.push_back(diff);
        }
        if (c.commutator) {
            const Matrix commutator =
                grams.gram_tstar - embed_top_left(grams.gram_t, c.spec.d + c.spec.k);
            const std::string diff = matrix_diff(commutator, *c.commutator, match_tol, "commutator");
            if (!diff.empty()) r.diffs.push_back(diff);
        }
        if (c.defect_direction) {
            const Matrix basis = column_space_basis(grams.gram_t, tol);
            if (basis.cols() != 1) {
                r.diffs.push_back("defect_direction: ran G_T is not one-dimensional");
            } else {
                const Vector v = basis.col(0);
                const Vector& u = *c.defect_direction;
                const Complex overlap = u.dot(v);  // conjugates u
                const double sin_angle = (v - overlap * u).norm();
                check(sin_angle <= 1e-8, r.diffs,
                      "defect_direction: angle " + format_real(sin_angle));
            }
        }

        r.pass = r.diffs.empty();
        result.all_pass = result.all_pass && r.pass;
        result.cases.push_back(std::move(r));
    }
    return result;
}

Json expectations_to_json(const GoldenCase& c) {
    Json doc;
    doc["name"] = c.name;
    doc["note"] = c.note;
    Json expected;
    if (c.contraction) expected["is_contraction"] = *c.contraction ? "true" : "false";
    if (c.dim_dt) expected["dim_DT"] = *c.dim_dt;
    if (c.dim_dtstar) expected["dim_DTstar"] = *c.dim_dtstar;
    if (c.inclusion) expected["inclusion"] = *c.inclusion ? "true" : "false";
    if (c.hyponormal) expected["hyponormal"] = verdict_string(*c.hyponormal);
    if (c.analytic) expected["analytic"] = verdict_string(*c.analytic);
    if (c.cnu) expected["cnu"] = cnu_verdict_string(*c.cnu);
    if (c.in_paper_class) expected["in_paper_class"] = *c.in_paper_class ? "true" : "false";
    if (c.spectrum_specified) {
        Json spectrum = Json::array();
        for (Complex z : c.point_spectrum) spectrum.push_back(complex_to_json(z));
        expected["point_spectrum"] = std::move(spectrum);
    }
    doc["expected"] = std::move(expected);
    Json matrices;
    if (c.gram_t) matrices["gram_T"] = matrix_to_json(*c.gram_t);
    if (c.gram_tstar) matrices["gram_Tstar"] = matrix_to_json(*c.gram_tstar);
    if (c.commutator) matrices["commutator"] = matrix_to_json(*c.commutator);
    if (c.defect_direction) matrices["defect_direction"] = vector_to_json(*c.defect_direction);
    if (!matrices.is_null()) doc["expected_matrices"] = std::move(matrices);
    return doc;
}

}  // namespace shiftpert
