#pragma once
// The four hand-written machines, machine combinators and the generated
// machines for comparison, canonicalization, pairing, ordinals and deciding
// membership and equality.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "setm/assembler.hpp"
#include "setm/machine.hpp"

namespace setm {

enum class MachineKind { end, erase, traverse2, copy };
std::string_view builtin_source(MachineKind k);
MachineTable builtin(MachineKind k);

// Input layout expected by erase, traverse2 and copy: component c carries a
// ** at the first blank child of its root.
Marking delimit(const Marking& x, std::size_t component = 0);

// One step that halts in place.
const MachineTable& identity_machine();

MachineTable compose(const MachineTable& m1, const MachineTable& m2);
MachineTable if_then_else(const MachineTable& mb, const MachineTable& m1, const MachineTable& m2,
                          std::size_t n);
MachineTable while_loop(const MachineTable& m, const MachineTable& mb, std::size_t n);

struct IterationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
// X_0 = X, X_{k+1} = M(X_k), stopping at the first k with MB(X_k) = 0.
Marking reference_iterate(const MachineTable& m, const MachineTable& mb, const Marking& x,
                          std::uint64_t fuel);

MachineTable erase_below(std::size_t target, std::size_t num_components);
const MachineTable& subtree_copy();

enum class Direction { x_to_y, y_to_x };
const MachineTable& m_equal();
const MachineTable& m_exists_equal();
const MachineTable& m_forall_exists(Direction d);

const MachineTable& m_local_canonicalize();
const MachineTable& m_canonical_pending();  // Boolean: root not yet processed
const MachineTable& m_canonicalize();

enum class PairKind { pair, opair, pairing };
const MachineTable& m_pair(PairKind k);

enum class OrdKind { succ, alpha_c, cwo };
const MachineTable& m_ord(OrdKind k);

enum class DecideKind { member, equal };
const MachineTable& m_decide(DecideKind k);

enum class ContractKind { boolean, preserves_components };
struct ContractReport {
    ContractKind kind;
    bool verdict = true;
    std::optional<Marking> counterexample;
    std::string detail;
};
ContractReport validate_contract(const MachineTable& m, ContractKind kind,
                                 const std::vector<Marking>& corpus, std::uint64_t fuel);

// Boolean outputs: code of 0 is verdict 0, code of 1 is verdict 1.
Marking boolean_code(bool v);
std::optional<bool> boolean_value(const Marking& x);

std::vector<std::string> stdlib_names();
MachineTable stdlib_machine(std::string_view name);

namespace tasm {
// Macros shared with the compiler. Home -> home.
S succ_inline(Assembler& a, S in, int c, int scratch);
S pairing_inline(Assembler& a, S in, int wa, int ca, int wb, int cb, int dst, int scratch);
S child_walker(Assembler& a, S in, int w, int t);  // t := w anchored at its cursor, then down
}  // namespace tasm

}  // namespace setm
