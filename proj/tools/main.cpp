// Command-line front end: classify an operator spec file, verify the
// closed-form identities against dense truncations, batch-classify random
// contractions, and run the golden corpus.
//
// Exit codes: 0 success, 1 check/corpus failure, 2 usage or input error.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "shiftpert/classification.hpp"
#include "shiftpert/corpus.hpp"
#include "shiftpert/io.hpp"
#include "shiftpert/oracle.hpp"

namespace {

using namespace shiftpert;

struct CommonFlags {
    double eps_psd = Tolerance{}.eps_psd;
    double eps_rank = Tolerance{}.eps_rank;
    double eps_eig = Tolerance{}.eps_eig;
    int max_depth = 64;

    Tolerance tolerance() const { return Tolerance{eps_psd, eps_rank, eps_eig}; }
};

void add_common_flags(CLI::App* cmd, CommonFlags& flags) {
    cmd->add_option("--eps-psd", flags.eps_psd, "semidefiniteness slack")
        ->capture_default_str();
    cmd->add_option("--eps-rank", flags.eps_rank,
                    "relative singular-value threshold for ranks")
        ->capture_default_str();
    cmd->add_option("--eps-eig", flags.eps_eig, "eigenvalue grouping radius")
        ->capture_default_str();
    cmd->add_option("--max-depth", flags.max_depth, "cnu iteration cap")
        ->capture_default_str();
}

std::string bool_string(bool b) { return b ? "true" : "false"; }

std::string csv_row(Index index, const ClassificationReport& r) {
    std::string row;
    row += std::to_string(index);
    row += "," + std::to_string(r.d);
    row += "," + std::to_string(r.k);
    row += "," + bool_string(r.is_contraction);
    row += "," + std::to_string(r.dim_dt);
    row += "," + std::to_string(r.dim_dtstar);
    row += "," + bool_string(r.inclusion);
    row += ",";
    row += r.douglas_lambda ? format_real(*r.douglas_lambda) : std::string("none");
    row += "," + verdict_string(r.hyponormal);
    row += "," + verdict_string(r.analytic);
    row += ",";
    row += r.cnu ? cnu_verdict_string(r.cnu->verdict) : std::string("n/a");
    return row;
}

int run_classify(const std::string& path, const CommonFlags& flags, const std::string& format) {
    OperatorSpec spec;
    try {
        spec = load_operator_spec(path);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    const ClassificationReport report = classify(spec, flags.tolerance(), flags.max_depth);
    if (format == "json") {
        std::cout << report_to_json(report).dump(2) << "\n";
    } else {
        std::cout << report_to_text(report);
    }
    return 0;
}

struct VerifyFlags {
    std::string path;
    bool random = false;
    Index samples = 10;
    std::uint64_t seed = 0;
    Index d = 0;  // 0 = cycle 1..4
    Index k = 0;  // 0 = cycle 1..3
    double margin = 0.05;
    Index r_max = 4;
    Index n = 0;
    double tol_match = 1e-10;
};

bool verify_one(const OperatorSpec& spec, const VerifyFlags& vf, const Tolerance& tol,
                const std::string& label) {
    OracleConfig config;
    config.n = vf.n;
    config.tol_match = vf.tol_match;
    bool all_pass = true;

    const CheckResult defect = dense_defect_check(spec, config);
    std::printf("%s defect      %s (max discrepancy %s, N=%lld)\n", label.c_str(),
                defect.pass ? "pass" : "FAIL", format_real(defect.max_discrepancy).c_str(),
                static_cast<long long>(defect.n_used));
    all_pass = all_pass && defect.pass;

    for (Index r = 1; r <= vf.r_max; ++r) {
        const CheckResult power = power_decomposition_check(spec, r, config);
        std::printf("%s power r=%lld %s (max discrepancy %s, N=%lld)\n", label.c_str(),
                    static_cast<long long>(r), power.pass ? "pass" : "FAIL",
                    format_real(power.max_discrepancy).c_str(),
                    static_cast<long long>(power.n_used));
        all_pass = all_pass && power.pass;
    }

    if (is_contraction(spec, tol)) {
        for (Index r = 1; r <= vf.r_max; ++r) {
            const KernelConditionReport kc = kernel_condition_check(spec, r, tol);
            std::printf("%s kernel r=%lld %s (G_r psd=%s, H_r psd=%s, joint kernel dim=%lld)\n",
                        label.c_str(), static_cast<long long>(r), kc.pass ? "pass" : "FAIL",
                        bool_string(kc.psd_gram_t).c_str(), bool_string(kc.psd_gram_tstar).c_str(),
                        static_cast<long long>(kc.joint_kernel_dim));
            all_pass = all_pass && kc.pass;
        }
    } else {
        std::printf("%s kernel      skipped (not a contraction)\n", label.c_str());
    }
    return all_pass;
}

int run_verify(const VerifyFlags& vf, const CommonFlags& flags) {
    const Tolerance tol = flags.tolerance();
    try {
        if (vf.random) {
            if (vf.samples < 1) {
                std::cerr << "error: --samples must be >= 1\n";
                return 2;
            }
            bool all_pass = true;
            for (Index i = 0; i < vf.samples; ++i) {
                const Index d = vf.d > 0 ? vf.d : (i % 4) + 1;
                const Index k = vf.k > 0 ? vf.k : (i % 3) + 1;
                const OperatorSpec spec = random_contraction(d, k, vf.seed + i, vf.margin);
                char label[96];
                std::snprintf(label, sizeof(label), "sample %lld (d=%lld,k=%lld):",
                              static_cast<long long>(i), static_cast<long long>(d),
                              static_cast<long long>(k));
                all_pass = verify_one(spec, vf, tol, label) && all_pass;
            }
            return all_pass ? 0 : 1;
        }
        if (vf.path.empty()) {
            std::cerr << "error: give an operator spec file or --random\n";
            return 2;
        }
        const OperatorSpec spec = load_operator_spec(vf.path);
        return verify_one(spec, vf, tol, "check:") ? 0 : 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}

struct SearchFlags {
    Index d = 1;
    Index k = 1;
    Index samples = 0;
    std::uint64_t seed = 0;
    double margin = 0.05;
    unsigned jobs = 1;
};

int run_search(const SearchFlags& sf, const CommonFlags& flags) {
    if (sf.samples < 1 || sf.d < 1 || sf.k < 1) {
        std::cerr << "error: --samples, --d and --k must be >= 1\n";
        return 2;
    }
    const Tolerance tol = flags.tolerance();

    std::vector<ClassificationReport> reports(static_cast<std::size_t>(sf.samples));
    const unsigned jobs = std::max(1u, sf.jobs);
    if (jobs == 1) {
        for (Index i = 0; i < sf.samples; ++i) {
            reports[static_cast<std::size_t>(i)] =
                classify(random_contraction(sf.d, sf.k, sf.seed + i, sf.margin), tol,
                         flags.max_depth);
        }
    } else {
        // Samples are independent; rows are emitted by index, so the output
        // does not depend on scheduling.
        std::vector<std::thread> workers;
        for (unsigned w = 0; w < jobs; ++w) {
            workers.emplace_back([&, w]() {
                for (Index i = w; i < sf.samples; i += jobs) {
                    reports[static_cast<std::size_t>(i)] =
                        classify(random_contraction(sf.d, sf.k, sf.seed + i, sf.margin), tol,
                                 flags.max_depth);
                }
            });
        }
        for (auto& t : workers) t.join();
    }

    std::printf("index,d,k,contraction,dim_DT,dim_DTstar,inclusion,douglas_lambda,hyponormal,analytic,cnu\n");
    Index contractions = 0;
    Index inclusion_true = 0;
    Index hyponormal_and_inclusion = 0;
    for (Index i = 0; i < sf.samples; ++i) {
        const ClassificationReport& r = reports[static_cast<std::size_t>(i)];
        std::printf("%s\n", csv_row(i, r).c_str());
        if (r.is_contraction) ++contractions;
        if (r.inclusion) {
            ++inclusion_true;
            if (r.hyponormal == Verdict::True) ++hyponormal_and_inclusion;
        }
    }
    const double fraction =
        inclusion_true > 0
            ? static_cast<double>(hyponormal_and_inclusion) / static_cast<double>(inclusion_true)
            : 0.0;
    std::printf("# summary: samples=%lld contractions=%lld inclusion_true=%lld "
                "hyponormal_given_inclusion=%lld fraction_hyponormal_given_inclusion=%.6f\n",
                static_cast<long long>(sf.samples), static_cast<long long>(contractions),
                static_cast<long long>(inclusion_true),
                static_cast<long long>(hyponormal_and_inclusion), fraction);
    return 0;
}

int run_corpus_cmd(const CommonFlags& flags, const std::string& format,
                   const std::string& export_dir, double match_tol) {
    const CorpusResult result = run_corpus(flags.tolerance(), match_tol, flags.max_depth);

    if (!export_dir.empty()) {
        try {
            std::filesystem::create_directories(export_dir);
            for (const GoldenCase& c : golden_cases()) {
                std::ofstream spec_out(export_dir + "/" + c.name + ".json");
                spec_out << spec_to_json(c.spec).dump(2) << "\n";
                std::ofstream exp_out(export_dir + "/" + c.name + ".expected.json");
                exp_out << expectations_to_json(c).dump(2) << "\n";
            }
        } catch (const std::exception& e) {
            std::cerr << "error: export failed: " << e.what() << "\n";
            return 2;
        }
    }

    if (format == "json") {
        Json doc = Json::array();
        for (const CaseResult& c : result.cases) {
            Json entry;
            entry["name"] = c.name;
            entry["pass"] = c.pass;
            entry["diffs"] = c.diffs;
            doc.push_back(std::move(entry));
        }
        std::cout << doc.dump(2) << "\n";
    } else {
        for (const CaseResult& c : result.cases) {
            std::printf("case %-22s %s\n", c.name.c_str(), c.pass ? "pass" : "FAIL");
            for (const std::string& diff : c.diffs) std::printf("  %s\n", diff.c_str());
        }
        std::printf("corpus: %s\n", result.all_pass ? "all cases pass" : "FAILURES above");
    }
    return result.all_pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"classify shift-plus-finite-rank operators T = S_k + F"};
    app.require_subcommand(1);

    CommonFlags classify_flags;
    std::string classify_path;
    std::string classify_format = "text";
    CLI::App* classify_cmd =
        app.add_subcommand("classify", "classify an operator spec file");
    classify_cmd->add_option("path", classify_path, "operator spec JSON file")->required();
    classify_cmd->add_option("--format", classify_format, "text or json")
        ->check(CLI::IsMember({"text", "json"}))
        ->capture_default_str();
    add_common_flags(classify_cmd, classify_flags);

    CommonFlags verify_common;
    VerifyFlags verify_flags;
    CLI::App* verify_cmd = app.add_subcommand(
        "verify", "dense-truncation checks of the closed-form identities");
    verify_cmd->add_option("path", verify_flags.path, "operator spec JSON file");
    verify_cmd->add_flag("--random", verify_flags.random, "verify seeded random contractions");
    verify_cmd->add_option("--samples", verify_flags.samples, "random sample count")
        ->capture_default_str();
    verify_cmd->add_option("--seed", verify_flags.seed, "base seed")->capture_default_str();
    verify_cmd->add_option("--d", verify_flags.d, "perturbed columns (0 = cycle 1..4)");
    verify_cmd->add_option("--k", verify_flags.k, "shift multiplicity (0 = cycle 1..3)");
    verify_cmd->add_option("--margin", verify_flags.margin, "contraction margin")
        ->capture_default_str();
    verify_cmd->add_option("--r-max", verify_flags.r_max, "largest power to check")
        ->capture_default_str();
    verify_cmd->add_option("--N", verify_flags.n, "truncation size (0 = auto)");
    verify_cmd->add_option("--tol-match", verify_flags.tol_match,
                           "entrywise comparison tolerance")
        ->capture_default_str();
    add_common_flags(verify_cmd, verify_common);

    CommonFlags search_common;
    SearchFlags search_flags;
    CLI::App* search_cmd = app.add_subcommand(
        "search",
        "classify seeded random contractions; CSV columns: index,d,k,contraction,"
        "dim_DT,dim_DTstar,inclusion,douglas_lambda,hyponormal,analytic,cnu, then a "
        "# summary line with counts and the hyponormal fraction among inclusion=true");
    search_cmd->add_option("--d", search_flags.d, "perturbed columns")->capture_default_str();
    search_cmd->add_option("--k", search_flags.k, "shift multiplicity")->capture_default_str();
    search_cmd->add_option("--samples", search_flags.samples, "sample count")->required();
    search_cmd->add_option("--seed", search_flags.seed, "base seed")->capture_default_str();
    search_cmd->add_option("--margin", search_flags.margin, "contraction margin")
        ->capture_default_str();
    search_cmd->add_option("--jobs", search_flags.jobs, "worker threads")->capture_default_str();
    add_common_flags(search_cmd, search_common);

    CommonFlags corpus_common;
    std::string corpus_format = "text";
    std::string corpus_export;
    double corpus_match_tol = 1e-10;
    CLI::App* corpus_cmd = app.add_subcommand("corpus", "run the golden corpus");
    corpus_cmd->add_option("--format", corpus_format, "text or json")
        ->check(CLI::IsMember({"text", "json"}))
        ->capture_default_str();
    corpus_cmd->add_option("--export", corpus_export,
                           "write spec + expectations JSON files into this directory");
    corpus_cmd->add_option("--match-tol", corpus_match_tol, "entrywise matrix tolerance")
        ->capture_default_str();
    add_common_flags(corpus_cmd, corpus_common);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    if (classify_cmd->parsed()) return run_classify(classify_path, classify_flags, classify_format);
    if (verify_cmd->parsed()) return run_verify(verify_flags, verify_common);
    if (search_cmd->parsed()) return run_search(search_flags, search_common);
    if (corpus_cmd->parsed()) {
        return run_corpus_cmd(corpus_common, corpus_format, corpus_export, corpus_match_tol);
    }
    return 2;
}
