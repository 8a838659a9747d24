#include "shiftpert/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace shiftpert {

namespace {

Complex parse_entry(const Json& cell, Index row, Index col) {
    const std::string where =
        "C[" + std::to_string(row) + "][" + std::to_string(col) + "]";
    if (!cell.is_array() || cell.size() != 2 || !cell[0].is_number() || !cell[1].is_number()) {
        throw SpecParseError(where + ": expected a 2-array [re, im] of numbers");
    }
    return Complex(cell[0].get<double>(), cell[1].get<double>());
}

}  // namespace

OperatorSpec parse_operator_spec(const std::string& text) {
    Json doc;
    try {
        doc = Json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw SpecParseError(std::string("invalid JSON: ") + e.what());
    }
    if (!doc.is_object()) throw SpecParseError("top level: expected an object");
    for (const char* field : {"d", "k"}) {
        if (!doc.contains(field) || !doc[field].is_number_integer() ||
            doc[field].get<long long>() < 1) {
            throw SpecParseError(std::string(field) + ": expected a positive integer");
        }
    }
    const Index d = doc["d"].get<Index>();
    const Index k = doc["k"].get<Index>();
    if (!doc.contains("C") || !doc["C"].is_array()) {
        throw SpecParseError("C: expected an array of rows");
    }
    const Json& rows = doc["C"];
    if (static_cast<Index>(rows.size()) != d + k) {
        throw SpecParseError("C: expected " + std::to_string(d + k) + " rows, got " +
                             std::to_string(rows.size()));
    }
    Matrix coeff(d + k, d);
    for (Index i = 0; i < d + k; ++i) {
        const Json& row = rows[static_cast<std::size_t>(i)];
        if (!row.is_array() || static_cast<Index>(row.size()) != d) {
            throw SpecParseError("C[" + std::to_string(i) + "]: expected " + std::to_string(d) +
                                 " entries");
        }
        for (Index j = 0; j < d; ++j) {
            coeff(i, j) = parse_entry(row[static_cast<std::size_t>(j)], i, j);
        }
    }
    if (!coeff.allFinite()) throw SpecParseError("C: contains a non-finite entry");
    return build_operator(d, k, coeff);
}

OperatorSpec load_operator_spec(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw SpecParseError("cannot open " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_operator_spec(buffer.str());
}

Json spec_to_json(const OperatorSpec& spec) {
    Json doc;
    doc["d"] = spec.d;
    doc["k"] = spec.k;
    Json rows = Json::array();
    for (Index i = 0; i < spec.coeff.rows(); ++i) {
        Json row = Json::array();
        for (Index j = 0; j < spec.coeff.cols(); ++j) {
            row.push_back(complex_to_json(spec.coeff(i, j)));
        }
        rows.push_back(std::move(row));
    }
    doc["C"] = std::move(rows);
    return doc;
}

std::string verdict_string(Verdict v) {
    switch (v) {
        case Verdict::True: return "true";
        case Verdict::False: return "false";
        case Verdict::NotApplicable: return "n/a";
        case Verdict::Inconclusive: return "inconclusive";
    }
    return "inconclusive";
}

std::string cnu_verdict_string(CnuVerdict v) {
    switch (v) {
        case CnuVerdict::Certified: return "certified";
        case CnuVerdict::NotCnu: return "not_cnu";
        case CnuVerdict::Inconclusive: return "inconclusive";
    }
    return "inconclusive";
}

std::string format_real(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", x);
    return buf;
}

std::string format_complex(Complex z) {
    char buf[128];
    std::snprintf(buf, sizeof(buf), "%.12g%+.12gi", z.real(), z.imag());
    return buf;
}

Json complex_to_json(Complex z) { return Json::array({z.real(), z.imag()}); }

Json matrix_to_json(const Matrix& m) {
    Json rows = Json::array();
    for (Index i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (Index j = 0; j < m.cols(); ++j) row.push_back(complex_to_json(m(i, j)));
        rows.push_back(std::move(row));
    }
    return rows;
}

Json vector_to_json(const Vector& v) {
    Json out = Json::array();
    for (Index i = 0; i < v.size(); ++i) out.push_back(complex_to_json(v[i]));
    return out;
}

Json report_to_json(const ClassificationReport& report) {
    Json doc;
    doc["d"] = report.d;
    doc["k"] = report.k;
    doc["is_contraction"] = report.is_contraction ? "true" : "false";
    doc["dim_DT"] = report.dim_dt;
    doc["dim_DTstar"] = report.dim_dtstar;
    doc["inclusion"] = report.inclusion ? "true" : "false";
    if (report.douglas_lambda) {
        doc["douglas_lambda"] = *report.douglas_lambda;
    } else {
        doc["douglas_lambda"] = "none";
    }
    doc["hyponormal"] = verdict_string(report.hyponormal);
    Json spectrum = Json::array();
    for (const EigenPair& ep : report.point_spectrum) {
        Json entry;
        entry["value"] = complex_to_json(ep.value);
        Json vectors = Json::array();
        for (Index c = 0; c < ep.vectors.cols(); ++c) {
            vectors.push_back(vector_to_json(ep.vectors.col(c)));
        }
        entry["vectors"] = std::move(vectors);
        spectrum.push_back(std::move(entry));
    }
    doc["point_spectrum"] = std::move(spectrum);
    doc["analytic"] = verdict_string(report.analytic);
    if (report.cnu) {
        Json cnu;
        cnu["verdict"] = cnu_verdict_string(report.cnu->verdict);
        cnu["depth_used"] = report.cnu->depth_used;
        if (report.cnu->witness.size() > 0) {
            cnu["witness"] = vector_to_json(report.cnu->witness);
        }
        if (report.cnu->witness_eigenvalue) {
            cnu["witness_eigenvalue"] = complex_to_json(*report.cnu->witness_eigenvalue);
        }
        if (!report.cnu->joint_kernel_dims.empty()) {
            cnu["joint_kernel_dims"] = report.cnu->joint_kernel_dims;
        }
        doc["cnu"] = std::move(cnu);
    } else {
        doc["cnu"] = "n/a";
    }
    doc["in_paper_class"] = report.in_paper_class ? "true" : "false";
    doc["marginal_flags"] = report.marginal_flags;
    return doc;
}

std::string report_to_text(const ClassificationReport& report) {
    std::ostringstream out;
    out << "operator: d=" << report.d << " k=" << report.k << "\n";
    out << "contraction:    " << (report.is_contraction ? "true" : "false") << "\n";
    out << "dim_DT:         " << report.dim_dt << "\n";
    out << "dim_DTstar:     " << report.dim_dtstar << "\n";
    out << "inclusion:      " << (report.inclusion ? "true" : "false") << "\n";
    out << "douglas_lambda: "
        << (report.douglas_lambda ? format_real(*report.douglas_lambda) : std::string("none"))
        << "\n";
    out << "hyponormal:     " << verdict_string(report.hyponormal) << "\n";
    out << "point_spectrum:";
    if (report.point_spectrum.empty()) {
        out << " (empty)";
    } else {
        for (const EigenPair& ep : report.point_spectrum) {
            out << " " << format_complex(ep.value) << " (multiplicity " << ep.vectors.cols()
                << ")";
        }
    }
    out << "\n";
    out << "analytic:       " << verdict_string(report.analytic) << "\n";
    out << "cnu:            ";
    if (report.cnu) {
        out << cnu_verdict_string(report.cnu->verdict) << " (depth " << report.cnu->depth_used
            << ")";
    } else {
        out << "n/a";
    }
    out << "\n";
    out << "in_paper_class: " << (report.in_paper_class ? "true" : "false") << "\n";
    out << "marginal_flags:";
    if (report.marginal_flags.empty()) {
        out << " (none)";
    } else {
        for (const std::string& flag : report.marginal_flags) out << " " << flag;
    }
    out << "\n";
    return out.str();
}

}  // namespace shiftpert
