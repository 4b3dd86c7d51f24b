#ifndef KESTEN_ACCEPTANCE_HPP
#define KESTEN_ACCEPTANCE_HPP

#include <filesystem>
#include <ostream>
#include <string>
#include <vector>

namespace kesten {

struct CriterionResult {
    int id = 0;
    std::string name;
    bool pass = false;
    std::string observed;
    std::string expected;
};

struct AcceptanceOutcome {
    std::vector<CriterionResult> results;
    bool all_pass() const {
        for (const auto& r : results)
            if (!r.pass) return false;
        return true;
    }
};

// Runs every acceptance criterion with pinned seeds, printing one pass/fail
// line per criterion to `log`. The numeric pipeline executes twice - once at
// `threads`, once at the complementary thread count - and the resulting CSV
// trees are compared byte for byte (the determinism criterion). Outputs land
// under out_dir; acceptance.csv summarizes the verdicts.
AcceptanceOutcome run_acceptance(const std::filesystem::path& out_dir, int threads, std::ostream& log);

}  // namespace kesten

#endif  // KESTEN_ACCEPTANCE_HPP
