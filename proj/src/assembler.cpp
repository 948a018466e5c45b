#include "setm/assembler.hpp"

#include <algorithm>
#include <deque>
#include <stdexcept>
#include <unordered_map>

namespace setm::tasm {

namespace {

// walker marks
constexpr Mark kPath = Mark::m1;
constexpr Mark kCur = Mark::m2;
constexpr Mark kRootAnchor = Mark::m3;
constexpr Mark kRootAnchorCur = Mark::m4;
constexpr Mark kAnchor = Mark::s1;
constexpr Mark kAnchorCur = Mark::s2;
constexpr Mark kRoot = Mark::star;

Move toward(int from, int to) {
    if (from == to) return Move::s;
    return from < to ? Move::jplus : Move::jminus;
}


}  // namespace

MarkSet marks(std::initializer_list<Mark> ms) {
    MarkSet s;
    for (Mark m : ms) s.set(index_of(m));
    return s;
}

MarkSet nonzero_marks() {
    MarkSet s;
    s.set();
    s.reset(index_of(Mark::m0));
    return s;
}

Assembler::Assembler() { fresh(); }

S Assembler::fresh() {
    rules_.emplace_back();
    parent_.push_back(static_cast<S>(parent_.size()));
    return static_cast<S>(parent_.size() - 1);
}

S Assembler::find(S s) {
    while (parent_[s] != s) {
        parent_[s] = parent_[parent_[s]];
        s = parent_[s];
    }
    return s;
}

void Assembler::rule(S s, Mark read, Mark write, Move mv, S next) {
    s = find(s);
    if (s == halt()) throw std::logic_error("assembler: rule out of the halt state");
    Raw& r = rules_[s][index_of(read)];
    if (r.defined) throw std::logic_error("assembler: conflicting rule");
    r = Raw{true, write, mv, next};
}

void Assembler::merge(S a, S b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (b == halt()) std::swap(a, b);
    for (std::size_t i = 0; i < kNumMarks; ++i) {
        if (!rules_[b][i].defined) continue;
        if (a == halt()) throw std::logic_error("assembler: merging a busy state into halt");
        if (rules_[a][i].defined) throw std::logic_error("assembler: merge conflict");
        rules_[a][i] = rules_[b][i];
    }
    rules_[b] = {};
    parent_[b] = a;
}

S Assembler::join(std::initializer_list<S> ss) {
    S out = fresh();
    for (S s : ss) merge(out, s);
    return find(out);
}

void Assembler::embed(const MachineTable& m, S entry, S exit, int offset) {
    std::vector<S> map(m.num_states() + 1);
    for (auto& h : map) h = fresh();
    merge(jump(entry, 0, offset), map[m.start()]);
    for (const auto& r : m.rules())
        rule(map[r.state], r.read, r.action.write, r.action.move, map[r.action.next]);
    merge(jump(map[kHalt], offset, 0), exit);
}

MachineTable Assembler::finish(S start) {
    MachineTable t;
    std::unordered_map<S, StateId> ids;
    std::deque<S> todo;
    auto id_of = [&](S s) {
        s = find(s);
        if (s == halt()) return kHalt;
        auto [it, fresh_id] = ids.emplace(s, 0);
        if (fresh_id) {
            it->second = t.add_state("q" + std::to_string(ids.size() - 1));
            todo.push_back(s);
        }
        return it->second;
    };
    t.set_start(id_of(start));
    while (!todo.empty()) {
        S s = todo.front();
        todo.pop_front();
        StateId sid = ids.at(s);
        for (std::size_t i = 0; i < kNumMarks; ++i) {
            const Raw& r = rules_[s][i];
            if (r.defined) t.add_rule(sid, kAllMarks[i], Action{r.write, r.move, id_of(r.next)});
        }
    }
    return t;
}

// ---- elementary steps ----------------------------------------------------

S Assembler::step(S in, Move mv) {
    S out = fresh();
    for (Mark m : kAllMarks) rule(in, m, m, mv, out);
    return out;
}

S Assembler::write(S in, Mark w, Move mv) {
    S out = fresh();
    for (Mark m : kAllMarks) rule(in, m, w, mv, out);
    return out;
}

std::vector<S> Assembler::read(S in, const std::vector<MarkSet>& classes, Move mv) {
    return rewrite(in, classes, [](Mark m) { return m; }, mv);
}

std::vector<S> Assembler::rewrite(S in, const std::vector<MarkSet>& classes,
                                  const std::function<Mark(Mark)>& f, Move mv) {
    std::vector<S> out;
    MarkSet seen;
    for (const auto& c : classes) {
        S e = fresh();
        for (Mark m : kAllMarks) {
            if (!c.test(index_of(m)) || seen.test(index_of(m))) continue;
            seen.set(index_of(m));
            rule(in, m, f(m), mv, e);
        }
        out.push_back(e);
    }
    return out;
}

S Assembler::jump(S in, int from, int to) {
    if (from < 0 || to < 0) throw std::logic_error("assembler: negative component");
    while (from != to) {
        in = step(in, toward(from, to));
        from += from < to ? 1 : -1;
    }
    return in;
}

S Assembler::crash() { return fresh(); }

// ---- components ------------------------------------------------------------

S Assembler::erase_comp(S in, int c) {
    S r = jump(in, 0, c);
    S d = fresh(), u = fresh(), done = fresh();
    rule(r, Mark::m0, Mark::m0, Move::s, done);
    for (Mark m : kAllMarks) {
        if (m == Mark::m0) continue;
        rule(r, m, Mark::m4, Move::z, d);
        rule(d, m, Mark::m0, Move::z, d);
    }
    rule(d, Mark::m0, Mark::m0, Move::u, u);
    rule(u, Mark::m0, Mark::m0, Move::plus, d);
    rule(u, Mark::m4, Mark::m0, Move::s, done);
    return jump(done, c, 0);
}

S Assembler::write_code0(S in, int c) { return jump(write(jump(in, 0, c), Mark::m1), c, 0); }

S Assembler::write_boolean(S in, int c, bool value) {
    S x = jump(in, 0, c);
    if (value) x = write(write(x, Mark::m1, Move::z), Mark::m1, Move::u);
    else x = write(x, Mark::m1);
    return jump(x, c, 0);
}

S Assembler::copy_comp(S in, int src, int dst, int scratch) {
    const int w = scratch;
    S x = w_init(in, w);
    Hook enter = [&](S e) {
        std::vector<MarkSet> cls;
        for (Mark m : kAllMarks)
            if (m != Mark::m0) cls.push_back(marks({m}));
        auto ex = peek(e, w, src, cls);
        S out = fresh();
        for (std::size_t i = 0; i < ex.size(); ++i) merge(out, poke(ex[i], w, dst, kAllMarks[i + 1]));
        return out;
    };
    x = run_walk(x, w, src, nonzero_marks(), enter, nullptr, nullptr);
    return w_clear(to_cursor(x, 0, w), w, 0);
}

S Assembler::move_comp(S in, int src, int dst, int scratch) {
    if (src == dst) return in;
    return erase_comp(copy_comp(in, src, dst, scratch), src);
}

std::pair<S, S> Assembler::test_first_child(S in, int c) {
    S x = step(jump(in, 0, c), Move::z);
    auto ex = read(x, {marks({Mark::m0}), nonzero_marks()}, Move::u);
    return {jump(ex[0], c, 0), jump(ex[1], c, 0)};
}

// ---- walkers ---------------------------------------------------------------

S Assembler::w_init(S in, int w) {
    S x = jump(in, 0, w);
    S y = fresh();
    rule(x, Mark::m0, kRootAnchorCur, Move::s, y);
    return jump(y, w, 0);
}

S Assembler::to_cursor(S in, int from, int w) {
    S root = jump(in, from, w);
    S scan = fresh(), out = fresh();
    rule(root, kRoot, kRoot, Move::z, scan);
    rule(root, kRootAnchor, kRootAnchor, Move::z, scan);
    rule(root, kRootAnchorCur, kRootAnchorCur, Move::s, out);
    rule(scan, Mark::m0, Mark::m0, Move::plus, scan);
    rule(scan, kPath, kPath, Move::z, scan);
    rule(scan, kAnchor, kAnchor, Move::z, scan);
    rule(scan, kCur, kCur, Move::s, out);
    rule(scan, kAnchorCur, kAnchorCur, Move::s, out);
    return out;
}

S Assembler::to_root(S in, int w, int target) {
    S loop = fresh();
    merge(loop, in);
    loop = find(loop);
    S out = fresh();
    for (Mark m : {kPath, kCur, kAnchor, kAnchorCur}) rule(loop, m, m, Move::u, loop);
    for (Mark m : {kRoot, kRootAnchor, kRootAnchorCur}) rule(loop, m, m, toward(w, target), out);
    if (w == target) return out;
    return jump(out, w + (w < target ? 1 : -1), target);
}

S Assembler::w_down(S in) {
    S x = fresh(), out = fresh();
    rule(in, kCur, kPath, Move::z, x);
    rule(in, kRootAnchorCur, kRootAnchor, Move::z, x);
    rule(in, kAnchorCur, kAnchor, Move::z, x);
    rule(x, Mark::m0, kCur, Move::s, out);
    return out;
}

S Assembler::w_next(S in) {
    S x = fresh(), out = fresh();
    rule(in, kCur, Mark::m0, Move::plus, x);
    rule(x, Mark::m0, kCur, Move::s, out);
    return out;
}

S Assembler::w_up(S in) {
    S x = fresh(), out = fresh();
    rule(in, kCur, Mark::m0, Move::u, x);
    rule(x, kPath, kCur, Move::s, out);
    rule(x, kRootAnchor, kRootAnchorCur, Move::s, out);
    rule(x, kAnchor, kAnchorCur, Move::s, out);
    return out;
}

std::pair<S, S> Assembler::w_is_anchor(S in) {
    auto ex = read(in, {marks({kRootAnchorCur, kAnchorCur}), marks({kCur})});
    return {ex[0], ex[1]};
}

S Assembler::w_reset(S in) {
    S loop = fresh();
    merge(loop, in);
    auto [yes, no] = w_is_anchor(find(loop));
    merge(w_up(no), loop);
    return yes;
}

S Assembler::w_anchor_here(S in) {
    S climb = fresh(), top = fresh(), out = fresh();
    rule(in, kCur, kAnchorCur, Move::u, climb);
    rule(in, kRootAnchorCur, kRootAnchorCur, Move::s, out);
    rule(in, kAnchorCur, kAnchorCur, Move::s, out);
    rule(climb, kPath, kPath, Move::u, climb);
    rule(climb, kAnchor, kPath, Move::u, climb);
    rule(climb, kRootAnchor, kRoot, Move::s, top);
    rule(climb, kRoot, kRoot, Move::s, top);
    // the root is reached without moving up from it; descend again
    merge(to_cursor(top, 0, 0), out);
    return out;
}

S Assembler::w_copy(S in, int w, int w2) {
    S root = to_root(in, w, w);
    S scan = fresh(), out = fresh();
    std::vector<MarkSet> rcls = {marks({kRoot}), marks({kRootAnchor}), marks({kRootAnchorCur})};
    auto rex = read(root, rcls);
    for (std::size_t i = 0; i < rcls.size(); ++i) {
        Mark m = (i == 0) ? kRoot : (i == 1 ? kRootAnchor : kRootAnchorCur);
        S y = poke(rex[i], w, w2, m);
        if (m == kRootAnchorCur) merge(y, out);
        else merge(step(y, Move::z), scan);
    }
    rule(find(scan), Mark::m0, Mark::m0, Move::plus, scan);
    std::vector<Mark> path_marks = {kPath, kAnchor, kCur, kAnchorCur};
    std::vector<MarkSet> pcls;
    for (Mark m : path_marks) pcls.push_back(marks({m}));
    auto pex = read(find(scan), pcls);
    for (std::size_t i = 0; i < path_marks.size(); ++i) {
        S y = poke(pex[i], w, w2, path_marks[i]);
        if (path_marks[i] == kCur || path_marks[i] == kAnchorCur) merge(y, out);
        else merge(step(y, Move::z), scan);
    }
    return out;
}

S Assembler::w_clear(S in, int w, int home) {
    S loop = fresh(), out = fresh();
    merge(loop, in);
    loop = find(loop);
    for (Mark m : {kPath, kCur, kAnchor, kAnchorCur}) rule(loop, m, Mark::m0, Move::u, loop);
    for (Mark m : {kRoot, kRootAnchor, kRootAnchorCur})
        rule(loop, m, Mark::m0, toward(w, home), out);
    if (w == home) return out;
    return jump(out, w + (w < home ? 1 : -1), home);
}

std::vector<S> Assembler::peek_rewrite(S in, int w, int d, const std::vector<MarkSet>& classes,
                                       const std::function<Mark(Mark)>& f) {
    S at = jump(in, w, d);
    auto ex = rewrite(at, classes, f, toward(d, w));
    if (w != d)
        for (auto& e : ex) e = jump(e, d + (d < w ? 1 : -1), w);
    return ex;
}

std::vector<S> Assembler::peek(S in, int w, int d, const std::vector<MarkSet>& classes) {
    return peek_rewrite(in, w, d, classes, [](Mark m) { return m; });
}

S Assembler::poke(S in, int w, int d, Mark m) {
    MarkSet all;
    all.set();
    return peek_rewrite(in, w, d, {all}, [m](Mark) { return m; })[0];
}

// ---- traversals --------------------------------------------------------------

Assembler::WalkPorts Assembler::walk(int w, int d, MarkSet nodes, const Hook& enter,
                                     const Hook& leave_leaf, const Hook& leave_inner) {
    WalkPorts p{fresh(), fresh(), fresh()};
    const std::vector<MarkSet> cls = {nodes, ~nodes};
    S enter_s = fresh(), v_first = fresh(), v_next = fresh();

    auto init = peek(to_cursor(p.start, 0, w), w, d, cls);
    merge(init[0], enter_s);
    merge(to_root(init[1], w, 0), p.exit);

    S e = find(enter_s);
    if (enter) e = enter(e);
    merge(w_down(e), v_first);

    auto first = peek(find(v_first), w, d, cls);
    merge(first[0], enter_s);
    S leaf = w_up(first[1]);
    if (leave_leaf) leaf = leave_leaf(leaf);
    merge(leaf, p.after);

    auto next = peek(find(v_next), w, d, cls);
    merge(next[0], enter_s);
    S inner = w_up(next[1]);
    if (leave_inner) inner = leave_inner(inner);
    merge(inner, p.after);

    auto [at_anchor, below] = w_is_anchor(find(p.after));
    merge(to_root(at_anchor, w, 0), p.exit);
    merge(w_next(below), v_next);
    return WalkPorts{find(p.start), find(p.after), find(p.exit)};
}

S Assembler::run_walk(S in, int w, int d, MarkSet nodes, const Hook& enter, const Hook& leave_leaf,
                      const Hook& leave_inner) {
    auto p = walk(w, d, nodes, enter, leave_leaf, leave_inner);
    merge(in, p.start);
    return p.exit;
}

std::array<Mark, kNumMarks> Assembler::identity_map() {
    std::array<Mark, kNumMarks> m{};
    for (std::size_t i = 0; i < kNumMarks; ++i) m[i] = kAllMarks[i];
    return m;
}

std::array<Mark, kNumMarks> Assembler::const_map(Mark to) {
    std::array<Mark, kNumMarks> m{};
    for (std::size_t i = 0; i < kNumMarks; ++i) m[i] = i == 0 ? Mark::m0 : to;
    return m;
}

S Assembler::lockstep_copy(S in, int sw, int s, int dw, int d,
                           const std::array<Mark, kNumMarks>& map) {
    S probe = fresh(), up = fresh(), out = fresh();
    merge(to_cursor(in, 0, sw), probe);

    std::vector<MarkSet> cls;
    std::vector<Mark> target;
    MarkSet blank;
    for (std::size_t i = 0; i < kNumMarks; ++i) {
        if (map[i] == Mark::m0) {
            blank.set(i);
            continue;
        }
        auto it = std::find(target.begin(), target.end(), map[i]);
        if (it == target.end()) {
            target.push_back(map[i]);
            cls.push_back(MarkSet{});
            it = target.end() - 1;
        }
        cls[static_cast<std::size_t>(it - target.begin())].set(i);
    }
    cls.push_back(blank);
    auto ex = peek(find(probe), sw, s, cls);
    for (std::size_t k = 0; k < target.size(); ++k) {
        S x = hop(w_down(ex[k]), sw, dw);
        x = w_down(poke(x, dw, d, target[k]));
        merge(hop(x, dw, sw), probe);
    }
    auto [sw_done, sw_more] = w_is_anchor(w_up(ex.back()));
    merge(to_root(w_up(hop(sw_done, sw, dw)), dw, 0), out);
    auto [dw_done, dw_more] = w_is_anchor(w_up(hop(sw_more, sw, dw)));
    merge(to_root(dw_done, dw, 0), out);
    merge(dw_more, up);
    // up: both cursors move to the next sibling
    S x = w_next(find(up));
    x = w_next(hop(x, dw, sw));
    merge(x, probe);
    return find(out);
}

std::pair<S, S> Assembler::lockstep_equal(S in, int wa, int a, int wb, int b) {
    S eq = fresh(), ne = fresh(), probe = fresh(), fail_b = fresh();
    const MarkSet blank = marks({Mark::m0});
    // anchors themselves blank
    auto pre = peek(to_cursor(in, 0, wa), wa, a, {blank, nonzero_marks()});
    auto pre_b = peek(hop(pre[0], wa, wb), wb, b, {blank, nonzero_marks()});
    merge(to_root(pre_b[0], wb, 0), eq);
    merge(to_root(pre_b[1], wb, 0), ne);
    merge(pre[1], probe);

    std::vector<MarkSet> single;
    for (Mark m : kAllMarks) single.push_back(marks({m}));
    auto ex = peek(find(probe), wa, a, single);
    for (std::size_t i = 0; i < kNumMarks; ++i) {
        MarkSet same = marks({kAllMarks[i]});
        auto cmp = peek(hop(ex[i], wa, wb), wb, b, {same, ~same});
        merge(cmp[1], fail_b);
        if (kAllMarks[i] == Mark::m0) {
            S x = w_up(hop(w_up(cmp[0]), wb, wa));
            auto [done, more] = w_is_anchor(x);
            merge(to_root(done, wa, 0), eq);
            S y = w_next(hop(w_next(more), wa, wb));
            merge(hop(y, wb, wa), probe);
        } else {
            S x = w_down(hop(w_down(cmp[0]), wb, wa));
            merge(x, probe);
        }
    }
    S r = w_reset(find(fail_b));
    r = w_reset(hop(r, wb, wa));
    merge(to_root(r, wa, 0), ne);
    return {find(eq), find(ne)};
}

std::pair<S, S> Assembler::subtree_equal(S in, int wa, int a, int wb, int b, int scratch) {
    const int ta = scratch, tb = scratch + 1;
    S x = w_copy(to_cursor(in, 0, wa), wa, ta);
    x = w_anchor_here(hop(x, wa, ta));
    x = w_copy(hop(x, ta, wb), wb, tb);
    x = w_anchor_here(hop(x, wb, tb));
    auto [eq, ne] = lockstep_equal(to_root(x, tb, 0), ta, a, tb, b);
    auto clear_both = [&](S s) {
        s = w_clear(to_cursor(s, 0, ta), ta, tb);
        return w_clear(to_cursor(s, tb, tb), tb, 0);
    };
    return {clear_both(eq), clear_both(ne)};
}

std::pair<S, S> Assembler::forall_exists(S in, int wa, int a, int wb, int b, int scratch) {
    const int wc = scratch, wd = scratch + 1;
    S yes = fresh(), no = fresh(), outer = fresh(), inner = fresh();
    S x = w_copy(to_cursor(in, 0, wa), wa, wc);
    merge(w_down(hop(x, wa, wc)), outer);

    auto o = peek(find(outer), wc, a, {nonzero_marks(), marks({Mark::m0})});
    merge(w_clear(o[1], wc, 0), yes);
    S y = w_copy(hop(o[0], wc, wb), wb, wd);
    merge(w_down(hop(y, wb, wd)), inner);

    auto i = peek(find(inner), wd, b, {nonzero_marks(), marks({Mark::m0})});
    S nf = w_clear(i[1], wd, wc);
    merge(w_clear(to_cursor(nf, wc, wc), wc, 0), no);
    auto [eq, ne] = subtree_equal(to_root(i[0], wd, 0), wc, a, wd, b, scratch + 2);
    merge(w_next(to_cursor(ne, 0, wd)), inner);
    S f = w_clear(to_cursor(eq, 0, wd), wd, wc);
    merge(w_next(to_cursor(f, wc, wc)), outer);
    return {find(yes), find(no)};
}

std::pair<S, S> Assembler::exists_equal(S in, int wa, int a, int wb, int b, int scratch) {
    const int wd = scratch;
    S yes = fresh(), no = fresh(), loop = fresh();
    S x = w_copy(to_cursor(in, 0, wb), wb, wd);
    merge(w_down(hop(x, wb, wd)), loop);
    auto l = peek(find(loop), wd, b, {nonzero_marks(), marks({Mark::m0})});
    merge(w_clear(l[1], wd, 0), no);
    auto [eq, ne] = subtree_equal(to_root(l[0], wd, 0), wa, a, wd, b, scratch + 1);
    merge(w_clear(to_cursor(eq, 0, wd), wd, 0), yes);
    merge(w_next(to_cursor(ne, 0, wd)), loop);
    return {find(yes), find(no)};
}

S Assembler::erase_below(S in, int w, int d, int scratch) {
    const int e = scratch;
    S x = w_copy(to_cursor(in, 0, w), w, e);
    x = to_root(w_anchor_here(hop(x, w, e)), e, 0);
    Hook zero = [&](S h) {
        auto [anchor, below] = w_is_anchor(h);
        return join({anchor, poke(below, e, d, Mark::m0)});
    };
    x = run_walk(x, e, d, nonzero_marks(), nullptr, zero, zero);
    return w_clear(to_cursor(x, 0, e), e, 0);
}

S Assembler::implant_comp(S in, int src, int dw, int d, int scratch, Mark as) {
    const int sw = scratch;
    S x = w_init(in, sw);
    x = lockstep_copy(x, sw, src, dw, d, const_map(as));
    return w_clear(to_cursor(x, 0, sw), sw, 0);
}

S Assembler::implant_subtree(S in, int sw, int s, int dw, int d, int scratch, Mark as) {
    const int t = scratch;
    S x = w_copy(to_cursor(in, 0, sw), sw, t);
    x = to_root(w_anchor_here(hop(x, sw, t)), t, 0);
    x = lockstep_copy(x, t, s, dw, d, const_map(as));
    return w_clear(to_cursor(x, 0, t), t, 0);
}

S Assembler::to_first_blank_child(S in, int dw, int d) {
    S loop = fresh();
    merge(w_down(to_cursor(in, 0, dw)), loop);
    auto ex = peek(find(loop), dw, d, {nonzero_marks(), marks({Mark::m0})});
    merge(w_next(ex[0]), loop);
    return to_root(ex[1], dw, 0);
}

}  // namespace setm::tasm
