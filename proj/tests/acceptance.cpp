// Runs every acceptance criterion and prints one PASS/FAIL line each.
// Exit status is 1 if a criterion fails that is not in the documented known-failure list.

#include <cstdio>
#include <string>

#include "mould/acceptance.hpp"

int main(int argc, char** argv) {
    mould::AcceptanceOptions opt;
    for (int i = 1; i < argc; ++i) opt.only.emplace_back(argv[i]);
    int failed = 0, unexpected = 0;
    auto results = mould::run_acceptance(opt, [&](const mould::CriterionResult& r) {
        std::printf("%s\n", mould::format_line(r).c_str());
        std::fflush(stdout);
        if (!r.pass) {
            ++failed;
            if (!mould::known_failure(r.id)) ++unexpected;
        }
    });
    std::printf("%zu criteria lines, %d failed (%d outside the known C_1 sign conflict)\n", results.size(), failed,
                unexpected);
    return unexpected == 0 ? 0 : 1;
}
