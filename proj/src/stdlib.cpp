#include "setm/stdlib.hpp"

#include <array>
#include <mutex>

namespace setm {

using tasm::Assembler;
using tasm::MarkSet;
using tasm::marks;
using tasm::nonzero_marks;
using tasm::S;

namespace {

constexpr std::string_view kEnd = R"(# puts ** on the first blank child of the root
start l0
l0 1 => * z l1
l1 0 => ** u H
l1 1 => 1 + l1
)";

constexpr std::string_view kErase = R"(# erases a delimited first component
start l0
l0 1 => * z l1
l1 0 => 0 u+ l1
l1 1 => 0 z l1
l1 ** => 0 u H
)";

constexpr std::string_view kTraverse2 = R"(# replaces the 1 marks of a delimited first component by 2
start l0
l0 1 => * z l1
l1 0 => 0 u+ l1
l1 1 => 2 z l1
l1 ** => 0 u H
)";

constexpr std::string_view kCopy = R"(# copies a delimited first component below the root of the second
start l0
l0 1 => * z l1
l1 0 => 0 u+ l1
l1 1 => 1 s l2
l1 ** => 0 u H
l2 1 => 1 j+ l3
l3 0 => 1 j- l4
l4 1 => 1 z l1
)";

}  // namespace

std::string_view builtin_source(MachineKind k) {
    switch (k) {
        case MachineKind::end: return kEnd;
        case MachineKind::erase: return kErase;
        case MachineKind::traverse2: return kTraverse2;
        case MachineKind::copy: return kCopy;
    }
    return {};
}

MachineTable builtin(MachineKind k) { return parse_table(builtin_source(k)); }

Marking delimit(const Marking& x, std::size_t component) {
    Marking out = x;
    std::uint64_t k = 0;
    while (out.get(Address{component, nat_path({k})}) != Mark::m0) ++k;
    out.set(Address{component, nat_path({k})}, Mark::dstar);
    return out;
}

const MachineTable& identity_machine() {
    static const MachineTable m = [] {
        MachineTable t;
        StateId s = t.add_state("l0");
        t.set_start(s);
        for (Mark mk : kAllMarks) t.add_rule(s, mk, Action{mk, Move::s, kHalt});
        return t;
    }();
    return m;
}

MachineTable compose(const MachineTable& m1, const MachineTable& m2) {
    Assembler a;
    S in = a.fresh(), mid = a.fresh();
    a.embed(m1, in, mid);
    a.embed(m2, mid, a.halt());
    return a.finish(in);
}

namespace {

// Copies components 0..n-1 to n..2n-1, runs mb there and erases its verdict.
std::pair<S, S> guard(Assembler& a, S in, const MachineTable& mb, int n) {
    S x = in;
    for (int i = 0; i < n; ++i) x = a.copy_comp(x, i, n + i, 2 * n);
    S y = a.fresh();
    a.embed(mb, x, y, n);
    auto [zero, one] = a.test_first_child(y, n);
    return {a.erase_comp(zero, n), a.erase_comp(one, n)};
}

}  // namespace

MachineTable if_then_else(const MachineTable& mb, const MachineTable& m1, const MachineTable& m2,
                          std::size_t n) {
    Assembler a;
    S in = a.fresh();
    auto [zero, one] = guard(a, in, mb, static_cast<int>(n));
    a.embed(m1, zero, a.halt());
    a.embed(m2, one, a.halt());
    return a.finish(in);
}

MachineTable while_loop(const MachineTable& m, const MachineTable& mb, std::size_t n) {
    Assembler a;
    S loop = a.fresh();
    auto [zero, one] = guard(a, loop, mb, static_cast<int>(n));
    a.merge(zero, a.halt());
    a.embed(m, one, loop);
    return a.finish(loop);
}

Marking boolean_code(bool v) {
    Marking x;
    x.set(Address{0, {}}, Mark::m1);
    if (v) x.set(Address{0, nat_path({0})}, Mark::m1);
    return x;
}

std::optional<bool> boolean_value(const Marking& x) {
    if (x == boolean_code(false)) return false;
    if (x == boolean_code(true)) return true;
    return std::nullopt;
}

Marking reference_iterate(const MachineTable& m, const MachineTable& mb, const Marking& x,
                          std::uint64_t fuel) {
    Marking cur = x;
    std::uint64_t left = fuel;
    auto spend = [&](const MachineTable& t, const Marking& in, const char* what) {
        auto r = run(t, in, left);
        auto* h = std::get_if<Halted>(&r);
        if (!h) throw IterationError(std::string(what) + ": " + describe(r, t));
        left -= h->steps;
        return h->final;
    };
    while (true) {
        auto verdict = boolean_value(spend(mb, cur, "guard"));
        if (!verdict) throw IterationError("guard did not output a Boolean");
        if (!*verdict) return cur;
        cur = spend(m, cur, "body");
    }
}

namespace tasm {

S child_walker(Assembler& a, S in, int w, int t) {
    S x = a.w_copy(a.to_cursor(in, 0, w), w, t);
    x = a.w_down(a.w_anchor_here(a.hop(x, w, t)));
    return a.to_root(x, t, 0);
}

S succ_inline(Assembler& a, S in, int c, int scratch) {
    const int copy = scratch, w = scratch + 1;
    S x = a.copy_comp(in, c, copy, scratch + 1);
    x = a.w_init(x, w);
    x = a.to_first_blank_child(x, w, c);
    x = a.implant_comp(x, copy, w, c, scratch + 2);
    x = a.w_clear(a.to_cursor(x, 0, w), w, 0);
    return a.erase_comp(x, copy);
}

S pairing_inline(Assembler& a, S in, int wa, int ca, int wb, int cb, int dst, int scratch) {
    // dst is blank; wa, wb sit on the first children of the two nodes
    const int wd = scratch, sub = scratch + 1;
    S x = a.write_code0(in, dst);
    x = a.w_down(a.to_cursor(a.w_init(x, wd), 0, wd));
    S loop = a.fresh(), done = a.fresh(), crash = a.crash();
    a.merge(a.to_root(x, wd, 0), loop);

    const std::vector<MarkSet> nb = {nonzero_marks(), marks({Mark::m0})};
    auto pa = a.peek(a.to_cursor(a.find(loop), 0, wa), wa, ca, nb);
    auto pb_node = a.peek(a.hop(pa[0], wa, wb), wb, cb, nb);
    auto pb_blank = a.peek(a.hop(pa[1], wa, wb), wb, cb, nb);
    a.merge(pb_node[1], crash);
    a.merge(pb_blank[0], crash);
    a.merge(a.to_root(pb_blank[1], wb, 0), done);

    // slot j := {{a_j},{a_j,b_j}}
    S y = a.hop(pb_node[0], wb, wd);
    y = a.w_down(a.poke(y, wd, dst, Mark::m1));
    y = a.w_down(a.poke(y, wd, dst, Mark::m1));
    y = a.implant_subtree(a.to_root(y, wd, 0), wa, ca, wd, dst, sub);
    y = a.w_next(a.w_up(a.to_cursor(y, 0, wd)));
    y = a.w_down(a.poke(y, wd, dst, Mark::m1));
    y = a.implant_subtree(a.to_root(y, wd, 0), wa, ca, wd, dst, sub);
    y = a.w_next(a.to_cursor(y, 0, wd));
    y = a.implant_subtree(a.to_root(y, wd, 0), wb, cb, wd, dst, sub);
    y = a.w_next(a.w_up(a.w_up(a.to_cursor(y, 0, wd))));
    y = a.w_next(a.hop(y, wd, wa));
    y = a.w_next(a.hop(y, wa, wb));
    a.merge(a.to_root(y, wb, 0), loop);

    return a.w_clear(a.to_cursor(a.find(done), 0, wd), wd, 0);
}

}  // namespace tasm

namespace {

S clear_walker(Assembler& a, S in, int w) { return a.w_clear(a.to_cursor(in, 0, w), w, 0); }

S verdict(Assembler& a, S in, int c, bool v) { return a.write_boolean(in, c, v); }

MachineTable build_erase_below(int target, int ncomp) {
    Assembler a;
    S in = a.fresh();
    const int w = ncomp, f = ncomp + 1;
    S x = a.w_init(in, w);
    Assembler::Hook find_mark = [&](S h) {
        MarkSet raised = marks({Mark::s0, Mark::s1, Mark::s2, Mark::s3, Mark::s4});
        auto ex = a.peek(h, w, target, {raised, ~raised});
        S c = a.w_copy(ex[0], w, f);
        return a.join({c, ex[1]});
    };
    x = a.run_walk(x, w, target, nonzero_marks(), find_mark, nullptr, nullptr);
    x = clear_walker(a, x, w);
    auto found = a.read(a.jump(x, 0, f), {nonzero_marks()});
    x = a.jump(found[0], f, 0);
    x = a.erase_below(x, f, target, ncomp + 2);
    a.merge(clear_walker(a, x, f), a.halt());
    return a.finish(in);
}

}  // namespace

MachineTable erase_below(std::size_t target, std::size_t num_components) {
    if (target >= num_components)
        throw std::invalid_argument("erase_below: target component out of range");
    return build_erase_below(static_cast<int>(target), static_cast<int>(num_components));
}

const MachineTable& subtree_copy() {
    static const MachineTable m = [] {
        Assembler a;
        S in = a.fresh();
        const int w = 2, f0 = 3, f1 = 4;
        const MarkSet raised = marks({Mark::s0, Mark::s1, Mark::s2, Mark::s3, Mark::s4});
        S x = in;
        for (int c : {0, 1}) {
            const int f = c == 0 ? f0 : f1;
            x = a.w_init(x, w);
            Assembler::Hook find_mark = [&](S h) {
                auto ex = a.peek(h, w, c, {raised, ~raised});
                return a.join({a.w_copy(ex[0], w, f), ex[1]});
            };
            x = a.run_walk(x, w, c, nonzero_marks(), find_mark, nullptr, nullptr);
            x = clear_walker(a, x, w);
            x = a.jump(a.read(a.jump(x, 0, f), {nonzero_marks()})[0], f, 0);
        }
        x = a.erase_below(x, f1, 1, 5);
        // the mark at eta0 moves to eta1
        const std::vector<Mark> raised_list = {Mark::s0, Mark::s1, Mark::s2, Mark::s3, Mark::s4};
        std::vector<MarkSet> cls;
        for (Mark m : raised_list) cls.push_back(marks({m}));
        auto ex = a.peek(a.to_cursor(x, 0, f0), f0, 0, cls);
        S joined = a.fresh();
        for (std::size_t i = 0; i < ex.size(); ++i)
            a.merge(a.to_root(a.poke(a.hop(ex[i], f0, f1), f1, 1, raised_list[i]), f1, 0), joined);
        x = a.find(joined);
        x = tasm::child_walker(a, x, f0, 5);
        x = tasm::child_walker(a, x, f1, 6);
        x = a.lockstep_copy(x, 5, 0, 6, 1, Assembler::identity_map());
        for (int w2 : {5, 6, f0, f1}) x = clear_walker(a, x, w2);
        a.merge(x, a.halt());
        return a.finish(in);
    }();
    return m;
}

namespace {

MachineTable build_compare(int which, Direction d) {
    Assembler a;
    S in = a.fresh();
    const int wa = 3, wb = 4;
    S x = a.w_init(a.w_init(in, wa), wb);
    std::pair<S, S> r;
    if (which == 0) r = a.lockstep_equal(x, wa, 0, wb, 1);
    else if (which == 1) r = a.exists_equal(x, wa, 0, wb, 1, 5);
    else if (d == Direction::x_to_y) r = a.forall_exists(x, wa, 0, wb, 1, 5);
    else r = a.forall_exists(x, wb, 1, wa, 0, 5);
    for (auto [s, v] : {std::pair{r.first, true}, std::pair{r.second, false}}) {
        S y = clear_walker(a, clear_walker(a, s, wa), wb);
        a.merge(verdict(a, y, 2, v), a.halt());
    }
    return a.finish(in);
}

}  // namespace

const MachineTable& m_equal() {
    static const MachineTable m = build_compare(0, Direction::x_to_y);
    return m;
}
const MachineTable& m_exists_equal() {
    static const MachineTable m = build_compare(1, Direction::x_to_y);
    return m;
}
const MachineTable& m_forall_exists(Direction d) {
    static const MachineTable xy = build_compare(2, Direction::x_to_y);
    static const MachineTable yx = build_compare(2, Direction::y_to_x);
    return d == Direction::x_to_y ? xy : yx;
}

const MachineTable& m_local_canonicalize() {
    // Component 0 holds a code whose nodes of rank <= alpha carry 2 and are
    // canonical; afterwards the same holds for rank alpha+1.
    static const MachineTable m = [] {
        Assembler a;
        S in = a.fresh();
        const int w1 = 1, w2 = 2;
        S x = a.w_init(in, w1);

        // nodes marked 1 whose children all carry 2 become 1*
        Assembler::Hook candidate = [&](S h) {
            S out = a.fresh(), loop = a.fresh();
            auto self = a.peek(h, w1, 0, {marks({Mark::m1}), ~marks({Mark::m1})});
            a.merge(self[1], out);
            a.merge(a.w_down(self[0]), loop);
            auto kid = a.peek(a.find(loop), w1, 0,
                              {marks({Mark::m2}), marks({Mark::m0}), ~marks({Mark::m2, Mark::m0})});
            a.merge(a.w_next(kid[0]), loop);
            a.merge(a.poke(a.w_up(kid[1]), w1, 0, Mark::s1), out);
            a.merge(a.w_up(kid[2]), out);
            return a.find(out);
        };
        x = a.run_walk(x, w1, 0, nonzero_marks(), nullptr, nullptr, candidate);

        // for candidates nu before rho with equal decodes, rho's subtree := nu's
        Assembler::Hook rho_hook = [&](S h) {
            S out = a.fresh();
            auto self = a.peek(h, w2, 0, {marks({Mark::s1}), ~marks({Mark::s1})});
            a.merge(self[1], out);
            S home = a.to_root(self[0], w2, 0);
            auto [f1, n1] = a.forall_exists(home, w1, 0, w2, 0, 3);
            auto [f2, n2] = a.forall_exists(f1, w2, 0, w1, 0, 3);
            S r = a.erase_below(f2, w2, 0, 3);
            r = tasm::child_walker(a, r, w1, 3);
            r = tasm::child_walker(a, r, w2, 4);
            r = a.lockstep_copy(r, 3, 0, 4, 0, Assembler::identity_map());
            r = clear_walker(a, clear_walker(a, r, 3), 4);
            S back = a.join({r, n1, n2});
            a.merge(a.to_cursor(back, 0, w2), out);
            return a.find(out);
        };
        Assembler::Hook nu_hook = [&](S h) {
            S out = a.fresh();
            auto self = a.peek(h, w1, 0, {marks({Mark::s1}), ~marks({Mark::s1})});
            a.merge(self[1], out);
            S y = a.hop(a.w_copy(self[0], w1, w2), w1, w2);
            auto inner = a.walk(w2, 0, nonzero_marks(), rho_hook, nullptr, nullptr);
            a.merge(y, inner.after);
            S z = a.w_clear(a.to_cursor(inner.exit, 0, w2), w2, w1);
            a.merge(a.to_cursor(z, w1, w1), out);
            return a.find(out);
        };
        x = a.run_walk(x, w1, 0, nonzero_marks(), nu_hook, nullptr, nullptr);

        // 1* becomes 2
        Assembler::Hook settle = [&](S h) {
            auto ex = a.peek_rewrite(h, w1, 0, {nonzero_marks()},
                                     [](Mark m) { return m == Mark::s1 ? Mark::m2 : m; });
            return ex[0];
        };
        x = a.run_walk(x, w1, 0, nonzero_marks(), settle, nullptr, nullptr);
        a.merge(clear_walker(a, x, w1), a.halt());
        return a.finish(in);
    }();
    return m;
}

const MachineTable& m_canonical_pending() {
    static const MachineTable m = [] {
        Assembler a;
        S in = a.fresh();
        auto ex = a.read(in, {marks({Mark::m2}), ~marks({Mark::m2})});
        for (int v : {0, 1}) {
            S x = a.erase_comp(ex[static_cast<std::size_t>(v)], 0);
            a.merge(a.write_boolean(x, 0, v == 1), a.halt());
        }
        return a.finish(in);
    }();
    return m;
}

const MachineTable& m_canonicalize() {
    static const MachineTable m = [] {
        Assembler a;
        S in = a.fresh();
        const int w = 1;
        // leaves get 2, inner nodes 1
        S x = a.w_init(in, w);
        Assembler::Hook to2 = [&](S h) {
            return a.peek_rewrite(h, w, 0, {nonzero_marks()}, [](Mark) { return Mark::m2; })[0];
        };
        Assembler::Hook to1 = [&](S h) {
            return a.peek_rewrite(h, w, 0, {nonzero_marks()}, [](Mark) { return Mark::m1; })[0];
        };
        x = a.run_walk(x, w, 0, nonzero_marks(), nullptr, to2, to1);
        x = clear_walker(a, x, w);
        S y = a.fresh();
        a.embed(while_loop(m_local_canonicalize(), m_canonical_pending(), 1), x, y);
        y = a.w_init(y, w);
        y = a.run_walk(y, w, 0, nonzero_marks(), to1, nullptr, nullptr);
        a.merge(clear_walker(a, y, w), a.halt());
        return a.finish(in);
    }();
    return m;
}

namespace {

MachineTable build_pair(PairKind k) {
    Assembler a;
    S in = a.fresh();
    const int w = 3;
    S x = in;
    if (k == PairKind::pairing) {
        x = a.w_init(a.w_init(x, 3), 4);
        x = a.to_root(a.w_down(a.to_cursor(x, 0, 3)), 3, 0);
        x = a.to_root(a.w_down(a.to_cursor(x, 0, 4)), 4, 0);
        x = tasm::pairing_inline(a, x, 3, 0, 4, 1, 2, 5);
        x = clear_walker(a, clear_walker(a, x, 3), 4);
        a.merge(x, a.halt());
        return a.finish(in);
    }
    x = a.w_init(a.write_code0(x, 2), w);
    S c = a.w_down(a.to_cursor(x, 0, w));
    if (k == PairKind::pair) {
        x = a.implant_comp(a.to_root(c, w, 0), 0, w, 2, 4);
        c = a.w_next(a.to_cursor(x, 0, w));
        x = a.implant_comp(a.to_root(c, w, 0), 1, w, 2, 4);
    } else {
        c = a.w_down(a.poke(c, w, 2, Mark::m1));
        x = a.implant_comp(a.to_root(c, w, 0), 0, w, 2, 4);
        c = a.w_next(a.w_up(a.to_cursor(x, 0, w)));
        c = a.w_down(a.poke(c, w, 2, Mark::m1));
        x = a.implant_comp(a.to_root(c, w, 0), 0, w, 2, 4);
        c = a.w_next(a.to_cursor(x, 0, w));
        x = a.implant_comp(a.to_root(c, w, 0), 1, w, 2, 4);
    }
    a.merge(clear_walker(a, x, w), a.halt());
    return a.finish(in);
}

MachineTable build_ord(OrdKind k) {
    Assembler a;
    S in = a.fresh();
    if (k == OrdKind::succ) {
        a.merge(tasm::succ_inline(a, in, 0, 1), a.halt());
        return a.finish(in);
    }
    const int wa = 2;
    S x = a.w_init(a.write_code0(in, 1), wa);
    S loop = a.fresh(), done = a.fresh();
    a.merge(a.w_down(a.to_cursor(x, 0, wa)), loop);
    auto ex = a.peek(a.find(loop), wa, 0, {nonzero_marks(), marks({Mark::m0})});
    a.merge(a.to_root(ex[1], wa, 0), done);
    S y = tasm::succ_inline(a, a.to_root(ex[0], wa, 0), 1, 3);
    a.merge(a.w_next(a.to_cursor(y, 0, wa)), loop);
    x = clear_walker(a, a.find(done), wa);
    if (k == OrdKind::cwo) {
        x = a.w_init(a.w_init(x, 3), 4);
        x = a.to_root(a.w_down(a.to_cursor(x, 0, 3)), 3, 0);
        x = a.to_root(a.w_down(a.to_cursor(x, 0, 4)), 4, 0);
        x = tasm::pairing_inline(a, x, 3, 0, 4, 1, 2, 5);
        x = clear_walker(a, clear_walker(a, x, 3), 4);
    }
    a.merge(x, a.halt());
    return a.finish(in);
}

MachineTable build_decide(DecideKind k) {
    Assembler a;
    S in = a.fresh();
    // Z := {x, y} as a code with children [x, y] in component 2
    const int w = 3;
    S x = a.w_init(a.write_code0(in, 2), w);
    x = a.to_root(a.w_down(a.to_cursor(x, 0, w)), w, 0);
    x = a.implant_comp(x, 0, w, 2, 4);
    x = a.to_root(a.w_next(a.to_cursor(x, 0, w)), w, 0);
    x = a.implant_comp(x, 1, w, 2, 4);
    x = clear_walker(a, x, w);
    x = a.erase_comp(a.erase_comp(x, 0), 1);
    x = a.move_comp(x, 2, 0, 3);
    S y = a.fresh();
    a.embed(m_canonicalize(), x, y);
    // walkers on Z[0] and Z[1]
    y = a.w_init(a.w_init(y, 1), 2);
    y = a.to_root(a.w_down(a.to_cursor(y, 0, 1)), 1, 0);
    y = a.to_root(a.w_next(a.w_down(a.to_cursor(y, 0, 2))), 2, 0);
    auto r = k == DecideKind::member ? a.exists_equal(y, 1, 0, 2, 0, 3)
                                     : a.subtree_equal(y, 1, 0, 2, 0, 3);
    for (auto [s, v] : {std::pair{r.first, true}, std::pair{r.second, false}}) {
        S z = a.erase_comp(clear_walker(a, clear_walker(a, s, 1), 2), 0);
        a.merge(verdict(a, z, 0, v), a.halt());
    }
    return a.finish(in);
}

}  // namespace

const MachineTable& m_pair(PairKind k) {
    static const std::array<MachineTable, 3> ms = {build_pair(PairKind::pair),
                                                   build_pair(PairKind::opair),
                                                   build_pair(PairKind::pairing)};
    return ms[static_cast<std::size_t>(k)];
}

const MachineTable& m_ord(OrdKind k) {
    static const std::array<MachineTable, 3> ms = {
        build_ord(OrdKind::succ), build_ord(OrdKind::alpha_c), build_ord(OrdKind::cwo)};
    return ms[static_cast<std::size_t>(k)];
}

const MachineTable& m_decide(DecideKind k) {
    static const MachineTable member = build_decide(DecideKind::member);
    static const MachineTable equal = build_decide(DecideKind::equal);
    return k == DecideKind::member ? member : equal;
}

ContractReport validate_contract(const MachineTable& m, ContractKind kind,
                                 const std::vector<Marking>& corpus, std::uint64_t fuel) {
    ContractReport rep{kind, true, std::nullopt, {}};
    for (const auto& x : corpus) {
        auto r = run(m, x, fuel);
        std::string problem;
        if (auto* h = std::get_if<Halted>(&r)) {
            if (kind == ContractKind::boolean && !boolean_value(h->final))
                problem = "output is neither the code of 0 nor the code of 1";
            if (kind == ContractKind::preserves_components &&
                h->final.num_components() != x.num_components())
                problem = "component count changed from " + std::to_string(x.num_components()) +
                          " to " + std::to_string(h->final.num_components());
        } else {
            problem = describe(r, m);
        }
        if (!problem.empty()) {
            rep.verdict = false;
            rep.counterexample = x;
            rep.detail = problem;
            return rep;
        }
    }
    return rep;
}

std::vector<std::string> stdlib_names() {
    return {"end",           "erase",          "traverse2",         "copy",
            "identity",      "equal",          "exists-equal",      "forall-exists-xy",
            "forall-exists-yx", "local-canonicalize", "canonical-pending", "canonicalize",
            "pair",          "opair",          "pairing",           "succ",
            "alpha-c",       "cwo",            "member",            "equal-sets",
            "erase-below",   "subtree-copy"};
}

MachineTable stdlib_machine(std::string_view name) {
    if (name == "end") return builtin(MachineKind::end);
    if (name == "erase") return builtin(MachineKind::erase);
    if (name == "traverse2") return builtin(MachineKind::traverse2);
    if (name == "copy") return builtin(MachineKind::copy);
    if (name == "identity") return identity_machine();
    if (name == "equal") return m_equal();
    if (name == "exists-equal") return m_exists_equal();
    if (name == "forall-exists-xy") return m_forall_exists(Direction::x_to_y);
    if (name == "forall-exists-yx") return m_forall_exists(Direction::y_to_x);
    if (name == "local-canonicalize") return m_local_canonicalize();
    if (name == "canonical-pending") return m_canonical_pending();
    if (name == "canonicalize") return m_canonicalize();
    if (name == "pair") return m_pair(PairKind::pair);
    if (name == "opair") return m_pair(PairKind::opair);
    if (name == "pairing") return m_pair(PairKind::pairing);
    if (name == "succ") return m_ord(OrdKind::succ);
    if (name == "alpha-c") return m_ord(OrdKind::alpha_c);
    if (name == "cwo") return m_ord(OrdKind::cwo);
    if (name == "member") return m_decide(DecideKind::member);
    if (name == "equal-sets") return m_decide(DecideKind::equal);
    if (name == "erase-below") return erase_below(0, 1);
    if (name == "subtree-copy") return subtree_copy();
    throw std::invalid_argument("unknown stdlib machine '" + std::string(name) + "'");
}

}  // namespace setm
