#include "setm/machine.hpp"

#include <algorithm>
#include <array>
#include <sstream>

namespace setm {

namespace {

constexpr std::array<std::string_view, kNumMoves> kMoveNames = {"s",  "z",  "u", "+",
                                                                "u+", "j+", "j-"};

}  // namespace

std::string_view move_name(Move m) noexcept { return kMoveNames[static_cast<std::size_t>(m)]; }

Move parse_move(std::string_view text) {
    for (std::size_t i = 0; i < kNumMoves; ++i)
        if (kMoveNames[i] == text) return static_cast<Move>(i);
    throw ParseError("unknown move '" + std::string(text) + "'");
}

MachineTable::MachineTable() { add_state("H"); }

StateId MachineTable::add_state(std::string name) {
    if (by_name_.contains(name)) throw TableError("duplicate state name '" + name + "'");
    auto id = static_cast<StateId>(names_.size());
    by_name_.emplace(name, id);
    names_.push_back(std::move(name));
    actions_.resize(names_.size() * kNumMarks);
    defined_.resize(names_.size() * kNumMarks, false);
    return id;
}

StateId MachineTable::state(std::string_view name) {
    if (auto s = find_state(name)) return *s;
    return add_state(std::string(name));
}

std::optional<StateId> MachineTable::find_state(std::string_view name) const {
    auto it = by_name_.find(std::string(name));
    if (it == by_name_.end()) return std::nullopt;
    return it->second;
}

void MachineTable::add_rule(StateId s, Mark read, Action a) {
    if (s >= names_.size() || a.next >= names_.size()) throw TableError("rule names unknown state");
    if (s == kHalt) throw TableError("the halt state H has no rules");
    const std::size_t i = std::size_t{s} * kNumMarks + index_of(read);
    if (defined_[i])
        throw TableError("duplicate rule for (" + names_[s] + ", " + std::string(mark_name(read)) +
                         ")");
    defined_[i] = true;
    actions_[i] = a;
    ++rule_count_;
}

void MachineTable::set_start(StateId s) {
    if (s >= names_.size()) throw TableError("unknown start state");
    start_ = s;
}

std::vector<Rule> MachineTable::rules() const {
    std::vector<Rule> out;
    out.reserve(rule_count_);
    for (std::size_t i = 0; i < defined_.size(); ++i)
        if (defined_[i])
            out.push_back(Rule{static_cast<StateId>(i / kNumMarks), kAllMarks[i % kNumMarks],
                               actions_[i]});
    return out;
}

std::string MachineTable::to_stm() const {
    std::string out = "start " + names_[start_] + "\n";
    for (const auto& r : rules()) {
        out += names_[r.state];
        out += ' ';
        out += mark_name(r.read);
        out += " => ";
        out += mark_name(r.action.write);
        out += ' ';
        out += move_name(r.action.move);
        out += ' ';
        out += names_[r.action.next];
        out += '\n';
    }
    return out;
}

MachineTable parse_table(std::string_view text) {
    MachineTable m;
    std::optional<std::string> start_name;
    std::optional<StateId> first_declared;
    std::istringstream in{std::string(text)};
    std::string line;
    std::size_t lineno = 0;
    auto fail = [&](const std::string& what) -> TableError {
        return TableError("line " + std::to_string(lineno) + ": " + what);
    };
    while (std::getline(in, line)) {
        ++lineno;
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        std::istringstream words(line);
        std::vector<std::string> tok;
        for (std::string w; words >> w;) tok.push_back(w);
        if (tok.empty()) continue;
        if (tok[0] == "start") {
            if (tok.size() != 2) throw fail("expected 'start <state>'");
            if (start_name) throw fail("second start header");
            if (tok[1] == "H") throw fail("H cannot be the start state");
            start_name = tok[1];
            continue;
        }
        if (tok.size() != 6 || tok[2] != "=>")
            throw fail("expected 'state mark => mark move state'");
        try {
            Mark read = parse_mark(tok[1]);
            Mark write = parse_mark(tok[3]);
            Move mv = parse_move(tok[4]);
            if (tok[0] == "H") throw fail("rules out of H are not allowed");
            StateId s = m.state(tok[0]);
            if (!first_declared) first_declared = s;
            StateId n = m.state(tok[5]);
            m.add_rule(s, read, Action{write, mv, n});
        } catch (const ParseError& e) {
            throw fail(e.what());
        } catch (const TableError& e) {
            if (std::string_view(e.what()).starts_with("line ")) throw;
            throw fail(e.what());
        }
    }
    if (start_name)
        m.set_start(m.state(*start_name));
    else if (first_declared)
        m.set_start(*first_declared);
    else
        m.set_start(m.state("l0"));
    return m;
}

std::variant<Address, MoveError> apply_move(const Address& a, Move mv) {
    Address b = a;
    switch (mv) {
        case Move::s:
            break;
        case Move::z:
            b.path.emplace_back();
            break;
        case Move::u:
            if (b.path.empty()) return MoveError::root_violation;
            b.path.pop_back();
            break;
        case Move::plus:
            if (b.path.empty()) return MoveError::root_violation;
            b.path.back() = b.path.back().succ();
            break;
        case Move::uplus:
            if (b.path.size() < 2) return MoveError::root_violation;
            b.path.pop_back();
            b.path.back() = b.path.back().succ();
            break;
        case Move::jplus:
            ++b.component;
            break;
        case Move::jminus:
            if (b.component == 0) return MoveError::jminus_at_zero;
            --b.component;
            break;
    }
    return b;
}

std::variant<Configuration, StepError> step(const Configuration& c, const MachineTable& m) {
    Mark read = c.tape.get(c.head);
    const Action* act = m.lookup(c.state, read);
    if (!act) return StepError{StepError::Kind::no_rule, c.state, read};
    auto moved = apply_move(c.head, act->move);
    if (auto* err = std::get_if<MoveError>(&moved))
        return StepError{*err == MoveError::root_violation ? StepError::Kind::root_violation
                                                           : StepError::Kind::jminus_at_zero,
                         c.state, read};
    Configuration next{c.time.succ(), std::get<Address>(std::move(moved)), c.tape, act->next};
    next.tape.set(c.head, act->write);
    return next;
}

std::string_view crash_reason_name(CrashReason r) noexcept {
    switch (r) {
        case CrashReason::no_rule: return "NoRule";
        case CrashReason::root_violation: return "RootViolation";
        case CrashReason::jminus_at_zero: return "JMinusAtZero";
        case CrashReason::bad_halt: return "BadHalt";
    }
    return "?";
}

std::string describe(const RunOutcome& r, const MachineTable& m) {
    if (auto* h = std::get_if<Halted>(&r)) return "halted after " + std::to_string(h->steps) + " steps";
    if (auto* c = std::get_if<Crashed>(&r))
        return "crashed (" + std::string(crash_reason_name(c->reason)) + ") at time " +
               c->at.time.to_string() + ", head " + address_to_string(c->at.head) + ", state " +
               m.name(c->at.state) + ", mark " + std::string(mark_name(c->at.tape.get(c->at.head)));
    const auto& f = std::get<FuelExhausted>(r);
    return "fuel exhausted at time " + f.last.time.to_string() + ", state " + m.name(f.last.state);
}

std::string format_trace(const TraceRecord& r, const MachineTable& m) {
    std::string out = std::to_string(r.time);
    out += ' ';
    out += std::to_string(r.head.component);
    out += ' ';
    out += path_to_string(r.head.path);
    out += ' ';
    out += m.name(r.state);
    out += ' ';
    out += m.name(r.state);
    out += '/';
    out += mark_name(r.read);
    out += ' ';
    out += mark_name(r.action.write);
    out += ' ';
    out += move_name(r.action.move);
    return out;
}

namespace {

CrashReason reason_of(StepError::Kind k) {
    switch (k) {
        case StepError::Kind::no_rule: return CrashReason::no_rule;
        case StepError::Kind::root_violation: return CrashReason::root_violation;
        case StepError::Kind::jminus_at_zero: return CrashReason::jminus_at_zero;
    }
    return CrashReason::no_rule;
}

RunOutcome finish_halt(Configuration c, std::uint64_t steps) {
    if (!(c.head == Address{0, {}}) || !is_well_formed(c.tape))
        return Crashed{CrashReason::bad_halt, std::move(c)};
    return Halted{std::move(c.tape), steps};
}

// Tape as a trie over natural-number paths, one tree per component.
class TrieTape {
public:
    using NodeId = std::int32_t;

    explicit TrieTape(const Marking& x) {
        for (const auto& [a, m] : x.cells()) {
            NodeId n = root(a.component);
            for (const auto& o : a.path) n = child(n, static_cast<std::size_t>(*o.as_natural()));
            nodes_[n].mark = m;
        }
    }

    NodeId root(std::size_t comp) {
        while (roots_.size() <= comp) {
            roots_.push_back(make(-1, 0, roots_.size()));
        }
        return roots_[comp];
    }

    NodeId child(NodeId n, std::size_t i) {
        if (nodes_[n].kids.size() <= i) nodes_[n].kids.resize(i + 1, -1);
        NodeId k = nodes_[n].kids[i];
        if (k < 0) {
            k = make(n, static_cast<std::uint32_t>(i), nodes_[n].comp);
            nodes_[n].kids[i] = k;
        }
        return k;
    }

    Mark mark(NodeId n) const { return nodes_[n].mark; }
    void write(NodeId n, Mark m) { nodes_[n].mark = m; }

    // nullopt on a move error; error kind in err
    std::optional<NodeId> move(NodeId n, Move mv, StepError::Kind& err) {
        const Node& node = nodes_[n];
        switch (mv) {
            case Move::s: return n;
            case Move::z: return child(n, 0);
            case Move::u:
                if (node.parent < 0) break;
                return node.parent;
            case Move::plus:
                if (node.parent < 0) break;
                return child(node.parent, node.index + 1);
            case Move::uplus: {
                if (node.parent < 0) break;
                const Node& p = nodes_[node.parent];
                if (p.parent < 0) break;
                return child(p.parent, p.index + 1);
            }
            case Move::jplus: return translate(n, node.comp + 1);
            case Move::jminus:
                if (node.comp == 0) {
                    err = StepError::Kind::jminus_at_zero;
                    return std::nullopt;
                }
                return translate(n, node.comp - 1);
        }
        err = StepError::Kind::root_violation;
        return std::nullopt;
    }

    Address address(NodeId n) const {
        Address a{nodes_[n].comp, {}};
        for (NodeId k = n; nodes_[k].parent >= 0; k = nodes_[k].parent)
            a.path.push_back(Ordinal::natural(nodes_[k].index));
        std::reverse(a.path.begin(), a.path.end());
        return a;
    }

    Marking marking() const {
        Marking x;
        for (std::size_t i = 0; i < nodes_.size(); ++i)
            if (nodes_[i].mark != Mark::m0) x.set(address(static_cast<NodeId>(i)), nodes_[i].mark);
        return x;
    }

private:
    struct Node {
        Mark mark = Mark::m0;
        NodeId parent = -1;
        std::uint32_t index = 0;
        std::size_t comp = 0;
        std::vector<NodeId> kids;
    };

    NodeId make(NodeId parent, std::uint32_t index, std::size_t comp) {
        nodes_.push_back(Node{Mark::m0, parent, index, comp, {}});
        return static_cast<NodeId>(nodes_.size() - 1);
    }

    NodeId translate(NodeId n, std::size_t comp) {
        scratch_.clear();
        for (NodeId k = n; nodes_[k].parent >= 0; k = nodes_[k].parent)
            scratch_.push_back(nodes_[k].index);
        NodeId t = root(comp);
        for (auto it = scratch_.rbegin(); it != scratch_.rend(); ++it) t = child(t, *it);
        return t;
    }

    std::vector<Node> nodes_;
    std::vector<NodeId> roots_;
    std::vector<std::uint32_t> scratch_;
};

bool all_finite(const Marking& x) {
    for (const auto& [a, m] : x.cells())
        for (const auto& o : a.path)
            if (!o.is_natural()) return false;
    return true;
}

RunOutcome run_fast(const MachineTable& m, const Marking& x, std::uint64_t fuel,
                    const TraceSink& trace) {
    TrieTape tape(x);
    TrieTape::NodeId head = tape.root(0);
    StateId state = m.start();
    std::uint64_t t = 0;
    auto snapshot = [&]() {
        return Configuration{Ordinal::natural(t), tape.address(head), tape.marking(), state};
    };
    while (state != kHalt) {
        if (t >= fuel) return FuelExhausted{snapshot()};
        const Mark read = tape.mark(head);
        const Action* act = m.lookup(state, read);
        if (!act) return Crashed{CrashReason::no_rule, snapshot()};
        StepError::Kind err{};
        auto next = tape.move(head, act->move, err);
        if (!next) return Crashed{reason_of(err), snapshot()};
        if (trace) trace(TraceRecord{t, tape.address(head), state, read, *act});
        tape.write(head, act->write);
        head = *next;
        state = act->next;
        ++t;
    }
    return finish_halt(snapshot(), t);
}

}  // namespace

RunOutcome run_reference(const MachineTable& m, const Marking& x, std::uint64_t fuel,
                         const TraceSink& trace) {
    Configuration c{Ordinal{}, Address{0, {}}, x, m.start()};
    std::uint64_t t = 0;
    while (c.state != kHalt) {
        if (t >= fuel) return FuelExhausted{std::move(c)};
        auto next = step(c, m);
        if (auto* e = std::get_if<StepError>(&next)) return Crashed{reason_of(e->kind), std::move(c)};
        if (trace) {
            Mark read = c.tape.get(c.head);
            trace(TraceRecord{t, c.head, c.state, read, *m.lookup(c.state, read)});
        }
        c = std::get<Configuration>(std::move(next));
        ++t;
    }
    return finish_halt(std::move(c), t);
}

RunOutcome run(const MachineTable& m, const Marking& x, std::uint64_t fuel, const TraceSink& trace) {
    if (all_finite(x)) return run_fast(m, x, fuel, trace);
    return run_reference(m, x, fuel, trace);
}

std::optional<Configuration> limit_config(const TransfiniteSeq<Address>& positions,
                                          const TransfiniteSeq<std::size_t>& states,
                                          const std::map<Address, TransfiniteSeq<Mark>>& cells) {
    if (!(positions.length == states.length))
        throw InvalidSequence("limit_config: sequences have different lengths");
    for (const auto& [a, seq] : cells)
        if (!(seq.length == positions.length))
            throw InvalidSequence("limit_config: cell " + address_to_string(a) +
                                  " has a different length");
    Configuration c;
    c.time = positions.length;
    c.head = weak_liminf(positions);
    c.state = static_cast<StateId>(least_cofinal(states));
    for (const auto& [a, seq] : cells) {
        auto m = pointwise_limit(seq);
        if (!m) return std::nullopt;
        c.tape.set(a, *m);
    }
    return c;
}

std::vector<HFSet> fm_eval(const MachineTable& m, const std::vector<HFSet>& args,
                           std::size_t num_codes, std::uint64_t fuel) {
    if (num_codes == 0) throw std::invalid_argument("fm_eval: num_codes must be at least 1");
    std::optional<std::vector<HFSet>> common;
    for (std::size_t seed = 0; seed < num_codes; ++seed) {
        auto out = run(m, encode_args(args, seed), fuel);
        auto* h = std::get_if<Halted>(&out);
        if (!h)
            throw RunFailure("encoding seed " + std::to_string(seed) + ": " + describe(out, m),
                             std::move(out));
        auto value = decode_marking(h->final);
        if (!common) {
            common = std::move(value);
        } else if (*common != value) {
            auto show = [](const std::vector<HFSet>& v) {
                std::string s = "(";
                for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + v[i].to_string();
                return s + ")";
            };
            throw InvarianceError("encoding seed " + std::to_string(seed) + " decodes to " +
                                  show(value) + " but seed 0 decodes to " + show(*common));
        }
    }
    return *common;
}

}  // namespace setm
