// Acceptance harness: one PASS/FAIL line per criterion, with the key values,
// the runtime and its budget. Exit status 1 when any criterion fails.

#include <array>
#include <chrono>
#include <cstdio>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include "covmaps/suites.hpp"

using namespace covmaps;

namespace {

constexpr std::array<double, 9> kBudgetSeconds{5, 10, 20, 30, 30, 10, 30, 60, 180};

std::string format_checks(const SuiteResult& s) {
    std::ostringstream out;
    out.precision(3);
    for (const SuiteCheck& c : s.checks) {
        out << " " << c.name << "=" << c.value;
        if (!c.passed) out << "(!tol " << c.tolerance << ")";
    }
    return out.str();
}

bool report(int id, bool passed, double seconds, const std::string& title, const std::string& values) {
    const double budget = kBudgetSeconds[static_cast<std::size_t>(id - 1)];
    const bool ok = passed && seconds < budget;
    std::printf("[%s] criterion %d %s: %.2fs / %.0fs budget |%s\n", ok ? "PASS" : "FAIL", id, title.c_str(), seconds,
                budget, values.c_str());
    std::fflush(stdout);
    return ok;
}

}  // namespace

int main() {
    bool all = true;
    for (const SuiteResult& s : run_suites(SuiteOptions{}))
        all = report(s.id, s.passed(), s.seconds, s.title, format_checks(s)) && all;

    const auto start = std::chrono::steady_clock::now();
    const std::string cmd = std::string("\"") + COVMAPS_CLI + "\" selftest --n 3 2>&1";
    std::string output;
    int status = -1;
    if (FILE* pipe = popen(cmd.c_str(), "r")) {
        std::array<char, 512> buf{};
        while (std::fgets(buf.data(), static_cast<int>(buf.size()), pipe)) output += buf.data();
        status = pclose(pipe);
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const int code = status != -1 && WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    all = report(9, code == 0, seconds, "end-to-end selftest --n 3", " exit=" + std::to_string(code)) && all;
    if (code != 0) std::fputs(output.c_str(), stdout);
    return all ? 0 : 1;
}
