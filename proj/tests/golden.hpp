#pragma once
// Golden trace cases: NAME.in (code text), NAME.trace, NAME.final.

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "setm/machine.hpp"
#include "setm/stdlib.hpp"
#include "setm/tapecode.hpp"

namespace setm::testing {

inline std::string slurp(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("missing golden file " + path);
    std::ostringstream s;
    s << f.rdbuf();
    return s.str();
}

struct GoldenCase {
    std::string name;
    MachineKind kind;
};

inline const std::vector<GoldenCase>& golden_cases() {
    static const std::vector<GoldenCase> cs{
        {"end_0", MachineKind::end},        {"end_1", MachineKind::end},
        {"end_2", MachineKind::end},        {"erase_1", MachineKind::erase},
        {"erase_2", MachineKind::erase},    {"traverse2_1", MachineKind::traverse2},
        {"traverse2_2", MachineKind::traverse2}, {"copy_1", MachineKind::copy},
        {"copy_2", MachineKind::copy}};
    return cs;
}

struct GoldenResult {
    std::string trace, want_trace, final, want_final;
    std::uint64_t steps = 0;
    bool halted = false;
    bool ok() const { return halted && trace == want_trace && final == want_final && steps < 100; }
};

inline GoldenResult run_golden(const std::string& dir, const GoldenCase& c) {
    const std::string base = dir + "/" + c.name;
    const MachineTable m = builtin(c.kind);
    GoldenResult g;
    g.want_trace = slurp(base + ".trace");
    g.want_final = slurp(base + ".final");
    std::ostringstream t;
    auto r = run(m, parse_code_text(slurp(base + ".in")), 100,
                 [&](const TraceRecord& rec) { t << format_trace(rec, m) << '\n'; });
    g.trace = t.str();
    if (auto* h = std::get_if<Halted>(&r)) {
        g.halted = true;
        g.steps = h->steps;
        g.final = code_text(h->final);
    }
    return g;
}

}  // namespace setm::testing
