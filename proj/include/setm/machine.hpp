#pragma once
// Machine tables, single steps, bounded runs, limit configurations and the
// encoding-invariant function a machine computes.

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <variant>
#include <vector>

#include "setm/hfset.hpp"
#include "setm/ordinal.hpp"
#include "setm/tapecode.hpp"

namespace setm {

enum class Move : std::uint8_t { s, z, u, plus, uplus, jplus, jminus };
inline constexpr std::size_t kNumMoves = 7;
std::string_view move_name(Move m) noexcept;
Move parse_move(std::string_view text);

using StateId = std::uint32_t;
inline constexpr StateId kHalt = 0;  // named "H"

struct Action {
    Mark write = Mark::m0;
    Move move = Move::s;
    StateId next = kHalt;
    friend bool operator==(const Action&, const Action&) = default;
};

struct Rule {
    StateId state;
    Mark read;
    Action action;
    friend bool operator==(const Rule&, const Rule&) = default;
};

struct TableError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

class MachineTable {
public:
    MachineTable();

    StateId add_state(std::string name);  // name must be new
    StateId state(std::string_view name);  // find or add
    std::optional<StateId> find_state(std::string_view name) const;
    const std::string& name(StateId s) const { return names_.at(s); }

    void add_rule(StateId s, Mark read, Action a);
    const Action* lookup(StateId s, Mark read) const noexcept {
        const std::size_t i = std::size_t{s} * kNumMarks + index_of(read);
        return i < defined_.size() && defined_[i] ? &actions_[i] : nullptr;
    }

    StateId start() const noexcept { return start_; }
    void set_start(StateId s);

    std::size_t num_states() const noexcept { return names_.size() - 1; }  // excluding H
    std::size_t num_rules() const noexcept { return rule_count_; }
    std::vector<Rule> rules() const;

    std::string to_stm() const;

private:
    std::vector<std::string> names_;
    std::unordered_map<std::string, StateId> by_name_;
    std::vector<Action> actions_;
    std::vector<bool> defined_;
    StateId start_ = kHalt;
    std::size_t rule_count_ = 0;
};

MachineTable parse_table(std::string_view text);

struct Configuration {
    Ordinal time;
    Address head;
    Marking tape;
    StateId state = kHalt;
};

enum class MoveError { root_violation, jminus_at_zero };
std::variant<Address, MoveError> apply_move(const Address& a, Move mv);

struct StepError {
    enum class Kind { no_rule, root_violation, jminus_at_zero } kind;
    StateId state;
    Mark read;
};
std::variant<Configuration, StepError> step(const Configuration& c, const MachineTable& m);

enum class CrashReason { no_rule, root_violation, jminus_at_zero, bad_halt };
std::string_view crash_reason_name(CrashReason r) noexcept;

struct Halted {
    Marking final;
    std::uint64_t steps = 0;
};
struct Crashed {
    CrashReason reason;
    Configuration at;
};
struct FuelExhausted {
    Configuration last;
};
using RunOutcome = std::variant<Halted, Crashed, FuelExhausted>;

std::string describe(const RunOutcome& r, const MachineTable& m);

struct TraceRecord {
    std::uint64_t time;
    Address head;
    StateId state;
    Mark read;
    Action action;
};
using TraceSink = std::function<void(const TraceRecord&)>;
std::string format_trace(const TraceRecord& r, const MachineTable& m);

// Picks the fast engine when every path entry is finite.
RunOutcome run(const MachineTable& m, const Marking& x, std::uint64_t fuel,
               const TraceSink& trace = {});
// Steps Configuration values one at a time; accepts transfinite addresses.
RunOutcome run_reference(const MachineTable& m, const Marking& x, std::uint64_t fuel,
                         const TraceSink& trace = {});

std::optional<Configuration> limit_config(
    const TransfiniteSeq<Address>& positions, const TransfiniteSeq<std::size_t>& states,
    const std::map<Address, TransfiniteSeq<Mark>>& cells);

struct RunFailure : std::runtime_error {
    RunFailure(std::string what, RunOutcome o)
        : std::runtime_error(std::move(what)), outcome(std::move(o)) {}
    RunOutcome outcome;
};
struct InvarianceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Runs m on num_codes encodings of args and returns the common decoded output.
std::vector<HFSet> fm_eval(const MachineTable& m, const std::vector<HFSet>& args,
                           std::size_t num_codes, std::uint64_t fuel);

}  // namespace setm
