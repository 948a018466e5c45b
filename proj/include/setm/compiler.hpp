#pragma once
// Translation of REC terms into machine tables, and the sweep comparing
// compiled machines with the interpreter.
//
// A compiled machine for a term of arity k reads codes (all marks 1) in
// components 0..k-1 and leaves a code of the value in component 0, every
// other component blank.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "setm/hfset.hpp"
#include "setm/machine.hpp"
#include "setm/rec.hpp"

namespace setm {

MachineTable compile(const RecTerm& t);

// Input (X_1..X_n, Z*) where every root child c of Z* carries, at its first
// child marked 2, a 2-marked code of F(x.., c). Writes a 2-marked code of
// G(union of those, x.., z) at the root's first blank child.
MachineTable compile_recursion_kernel(const MachineTable& g, std::size_t n);

enum class CaseVerdict { agree, disagree, fuel_out, crash, undefined };
std::string_view case_verdict_name(CaseVerdict v) noexcept;

struct EquivCase {
    std::vector<HFSet> args;
    std::uint64_t seed = 0;
    CaseVerdict verdict = CaseVerdict::agree;
    std::optional<HFSet> expected, got;
    std::uint64_t steps = 0;
    std::string detail;
};

struct EquivReport {
    std::string term;
    std::size_t rank_bound = 0, seeds = 0;
    std::uint64_t fuel = 0;
    std::size_t agreements = 0, disagreements = 0, fuel_outs = 0, crashes = 0, undefined = 0;
    std::size_t invariance_errors = 0;  // argument tuples whose outputs differ across seeds
    std::vector<EquivCase> cases;

    bool ok() const noexcept {
        return disagreements == 0 && fuel_outs == 0 && crashes == 0 && invariance_errors == 0;
    }
    std::string to_json() const;
};

// Sweeps every argument tuple over enumerate_universe(rank_bound) and the woo
// seeds 0..seeds-1. `fuel` bounds machine steps; the interpreter keeps its
// default budget. threads = 0 picks the hardware concurrency.
EquivReport equiv_check(const RecTerm& t, const std::string& name, std::size_t rank_bound,
                        std::size_t seeds, std::uint64_t fuel, unsigned threads = 0);

}  // namespace setm
