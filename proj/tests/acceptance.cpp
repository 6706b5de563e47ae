// Runs the acceptance criteria and prints one PASS/FAIL line per criterion.
// Usage: acceptance [id ...]   (default: all nine)

#include <cstdio>
#include <cstdlib>
#include <vector>

#include "repro.hpp"

int main(int argc, char** argv)
{
    std::vector<int> ids;
    for (int i = 1; i < argc; ++i)
        ids.push_back(std::atoi(argv[i]));
    if (ids.empty())
        ids = {1, 2, 3, 4, 5, 6, 7, 8, 9};

    std::vector<illposed::repro::Outcome> outcomes;
    for (int id : ids) {
        outcomes.push_back(illposed::repro::run(id));
        std::fputs(illposed::repro::format(outcomes.back()).c_str(), stdout);
        std::fflush(stdout);
    }
    int failed = 0;
    std::puts("\nsummary:");
    for (const auto& o : outcomes) {
        std::fputs(illposed::repro::format(o, false).c_str(), stdout);
        failed += o.passed ? 0 : 1;
    }
    std::printf("%d of %zu criteria passed\n", static_cast<int>(outcomes.size()) - failed, outcomes.size());
    return failed == 0 ? 0 : 1;
}
