#include <doctest.h>

#include <cctype>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace {

struct CliResult {
    int exit_code = -1;
    std::string output;
};

CliResult run_cli(const std::string& args) {
    const std::string command = std::string(SHIFTPERT_CLI_PATH) + " " + args + " 2>&1";
    FILE* pipe = popen(command.c_str(), "r");
    REQUIRE(pipe != nullptr);
    CliResult result;
    char buffer[4096];
    while (std::size_t n = std::fread(buffer, 1, sizeof(buffer), pipe)) {
        result.output.append(buffer, n);
    }
    const int status = pclose(pipe);
    result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return result;
}

std::string corpus_file(const std::string& name) {
    return std::string(SHIFTPERT_CORPUS_DIR) + "/" + name;
}

}  // namespace

TEST_CASE("classify reports the shipped corpus files") {
    const CliResult r33 = run_cli("classify " + corpus_file("example_3_3.json"));
    CHECK(r33.exit_code == 0);
    CHECK(r33.output.find("hyponormal:     false") != std::string::npos);
    CHECK(r33.output.find("analytic:       false") != std::string::npos);

    const CliResult r21 = run_cli("classify " + corpus_file("example_2_1.json"));
    CHECK(r21.exit_code == 0);
    CHECK(r21.output.find("in_paper_class: true") != std::string::npos);

    const CliResult json =
        run_cli("classify --format json " + corpus_file("example_3_3.json"));
    CHECK(json.exit_code == 0);
    CHECK(json.output.find("\"hyponormal\": \"false\"") != std::string::npos);
}

TEST_CASE("classify error paths exit with 2") {
    const CliResult missing = run_cli("classify /nonexistent/file.json");
    CHECK(missing.exit_code == 2);

    char path[] = "/tmp/shiftpert_badspec_XXXXXX";
    const int fd = mkstemp(path);
    REQUIRE(fd >= 0);
    {
        std::ofstream out(path);
        out << "{\"d\": 1, \"k\": 1, \"C\": [[[0,0]]]}";  // one row short
    }
    const CliResult malformed = run_cli(std::string("classify ") + path);
    CHECK(malformed.exit_code == 2);
    CHECK(malformed.output.find("C:") != std::string::npos);
    std::remove(path);
}

TEST_CASE("verify exit codes") {
    const CliResult ok = run_cli("verify " + corpus_file("example_2_1.json") + " --r-max 4");
    CHECK(ok.exit_code == 0);
    CHECK(ok.output.find("FAIL") == std::string::npos);

    const CliResult random = run_cli("verify --random --samples 12 --seed 3");
    CHECK(random.exit_code == 0);

    const CliResult undersized =
        run_cli("verify " + corpus_file("example_2_1.json") + " --N 2");
    CHECK(undersized.exit_code == 2);

    const CliResult no_input = run_cli("verify");
    CHECK(no_input.exit_code == 2);

    // an impossible match tolerance turns rounding into a check failure
    const CliResult failing = run_cli("verify --random --samples 2 --seed 5 --tol-match 0");
    CHECK(failing.exit_code == 1);
    CHECK(failing.output.find("FAIL") != std::string::npos);

    // non-contraction input: identity checks still run, stage PSD is skipped
    char path[] = "/tmp/shiftpert_noncontraction_XXXXXX";
    const int fd = mkstemp(path);
    REQUIRE(fd >= 0);
    {
        std::ofstream out(path);
        out << "{\"d\": 1, \"k\": 1, \"C\": [[[1.0, 0.0]], [[1.0, 0.0]]]}";
    }
    const CliResult expanding = run_cli(std::string("verify ") + path);
    CHECK(expanding.exit_code == 0);
    CHECK(expanding.output.find("skipped (not a contraction)") != std::string::npos);
    std::remove(path);
}

TEST_CASE("search CSV output and flag validation") {
    const CliResult small = run_cli("search --d 1 --k 1 --samples 25 --seed 1");
    CHECK(small.exit_code == 0);
    CHECK(small.output.find("index,d,k,contraction,dim_DT,dim_DTstar,inclusion,"
                            "douglas_lambda,hyponormal,analytic,cnu") != std::string::npos);
    // every rank-one contraction is hyponormal
    CHECK(small.output.find("fraction_hyponormal_given_inclusion=1.000000") !=
          std::string::npos);

    const CliResult wide = run_cli("search --d 2 --k 1 --samples 60 --seed 1");
    CHECK(wide.exit_code == 0);
    // inclusion without hyponormality shows up in this family
    bool found = false;
    std::istringstream lines(wide.output);
    std::string line;
    while (std::getline(lines, line)) {
        if (line.empty() || !std::isdigit(static_cast<unsigned char>(line[0]))) continue;
        std::vector<std::string> fields;
        std::istringstream cells(line);
        std::string cell;
        while (std::getline(cells, cell, ',')) fields.push_back(cell);
        REQUIRE(fields.size() == 11);
        if (fields[6] == "true" && fields[8] == "false") found = true;
    }
    CHECK(found);

    const CliResult zero = run_cli("search --d 1 --k 1 --samples 0");
    CHECK(zero.exit_code == 2);
}

TEST_CASE("search parallel output matches the sequential one") {
    const CliResult seq = run_cli("search --d 2 --k 2 --samples 40 --seed 9");
    const CliResult par = run_cli("search --d 2 --k 2 --samples 40 --seed 9 --jobs 4");
    CHECK(seq.exit_code == 0);
    CHECK(par.exit_code == 0);
    CHECK(seq.output == par.output);
}

TEST_CASE("corpus exit codes and formats") {
    const CliResult ok = run_cli("corpus");
    CHECK(ok.exit_code == 0);
    CHECK(ok.output.find("all cases pass") != std::string::npos);

    const CliResult loose = run_cli("corpus --eps-psd 1.0");
    CHECK(loose.exit_code == 1);
    CHECK(loose.output.find("example_3_3") != std::string::npos);

    const CliResult json = run_cli("corpus --format json");
    CHECK(json.exit_code == 0);
    CHECK(json.output.find("\"pass\": true") != std::string::npos);
}

TEST_CASE("corpus and search runs are byte-identical across invocations") {
    const CliResult c1 = run_cli("corpus");
    const CliResult c2 = run_cli("corpus");
    CHECK(c1.output == c2.output);

    const CliResult s1 = run_cli("search --d 2 --k 1 --samples 30 --seed 4");
    const CliResult s2 = run_cli("search --d 2 --k 1 --samples 30 --seed 4");
    CHECK(s1.output == s2.output);
}

TEST_CASE("usage errors exit with 2") {
    CHECK(run_cli("").exit_code == 2);
    CHECK(run_cli("frobnicate").exit_code == 2);
    CHECK(run_cli("--help").exit_code == 0);
}
