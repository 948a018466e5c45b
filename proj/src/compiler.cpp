#include "setm/compiler.hpp"

#include <atomic>
#include <map>
#include <thread>

#include <nlohmann/json.hpp>

#include "setm/stdlib.hpp"
#include "setm/tapecode.hpp"

namespace setm {

using tasm::Assembler;
using tasm::marks;
using tasm::MarkSet;
using tasm::nonzero_marks;
using tasm::S;

namespace {

S embed_at(Assembler& a, S in, const MachineTable& m, int offset) {
    S out = a.fresh();
    a.embed(m, in, out, offset);
    return out;
}

S clear_walker(Assembler& a, S in, int w) { return a.w_clear(a.to_cursor(in, 0, w), w, 0); }

// home -> home; w_t copies w with its anchor moved to w's cursor
S anchored_copy(Assembler& a, S in, int w, int t) {
    S x = a.w_copy(a.to_cursor(in, 0, w), w, t);
    return a.to_root(a.w_anchor_here(a.hop(x, w, t)), t, 0);
}

// (w, cursor) at a node -> (w, cursor) at its child marked 2
S to_storage(Assembler& a, S in, int w, int d) {
    S loop = a.fresh(), out = a.fresh();
    a.merge(a.w_down(in), loop);
    auto ex = a.peek(a.find(loop), w, d, {marks({Mark::m1}), marks({Mark::m2})});
    a.merge(a.w_next(ex[0]), loop);
    a.merge(ex[1], out);
    return a.find(out);
}

struct RecFrame {
    int n;     // number of parameters x..
    int W;     // the worked copy of z: nodes 1, storage 2
    int w;     // walker over W
    int base;  // first free component
};

// One adornment: at (w, cursor) on a node eta of W whose children are adorned,
// writes G(union of the children's values, x.., Z_eta) at eta's storage slot.
S adorn_node(Assembler& a, S in, const RecFrame& f, const MachineTable& g) {
    const int wa = f.base, wb = f.base + 1, du = f.base + 2, t = f.base + 3, o = f.base + 4;
    S x = a.to_root(in, f.w, 0);

    // union of the children's storage forests into o
    x = a.w_init(a.write_code0(x, o), du);
    x = a.to_root(a.w_down(a.to_cursor(x, 0, du)), du, 0);
    x = tasm::child_walker(a, x, f.w, wa);
    S kids = a.fresh(), done = a.fresh();
    a.merge(x, kids);
    auto c = a.peek(a.to_cursor(a.find(kids), 0, wa), wa, f.W, {marks({Mark::m1}), ~marks({Mark::m1})});
    a.merge(c[1], done);
    S st = tasm::child_walker(a, a.to_root(to_storage(a, c[0], wa, f.W), wa, 0), wa, wb);
    S elems = a.fresh();
    a.merge(st, elems);
    auto e = a.peek(a.to_cursor(a.find(elems), 0, wb), wb, f.W, {nonzero_marks(), marks({Mark::m0})});
    S y = a.implant_subtree(a.to_root(e[0], wb, 0), wb, f.W, du, o, t);
    y = a.to_root(a.w_next(a.to_cursor(y, 0, du)), du, 0);
    a.merge(a.to_root(a.w_next(a.to_cursor(y, 0, wb)), wb, 0), elems);
    S back = a.w_clear(e[1], wb, 0);
    back = a.w_next(a.w_up(a.to_cursor(back, 0, wa)));
    a.merge(a.to_root(back, wa, 0), kids);
    x = clear_walker(a, a.to_root(a.find(done), wa, 0), wa);
    x = clear_walker(a, x, du);

    // parameters, then Z_eta without storage
    for (int i = 0; i < f.n; ++i) x = a.copy_comp(x, i, o + 1 + i, t);
    x = a.w_init(anchored_copy(a, x, f.w, t), du);
    auto only_nodes = Assembler::const_map(Mark::m1);
    for (Mark m : kAllMarks)
        if (m != Mark::m1) only_nodes[index_of(m)] = Mark::m0;
    x = a.lockstep_copy(x, t, f.W, du, o + f.n + 1, only_nodes);
    x = clear_walker(a, clear_walker(a, x, t), du);

    x = embed_at(a, x, g, o);

    // store the value
    x = a.w_copy(a.to_cursor(x, 0, f.w), f.w, t);
    x = a.to_first_blank_child(a.to_root(x, f.w, 0), t, f.W);
    x = a.implant_comp(x, o, t, f.W, du, Mark::m2);
    x = a.erase_comp(clear_walker(a, x, t), o);
    return a.to_cursor(x, 0, f.w);
}

class Compiler {
public:
    MachineTable compile(const RecTerm& t) {
        if (auto it = cache_.find(&t.node()); it != cache_.end()) return it->second;
        MachineTable m = build(t);
        keep_.push_back(t);
        cache_.emplace(&t.node(), m);
        return m;
    }

private:
    std::map<const RecTerm::Node*, MachineTable> cache_;
    std::vector<RecTerm> keep_;

    MachineTable build(const RecTerm& t) {
        const auto& nd = t.node();
        Assembler a;
        S in = a.fresh();
        S x = in;
        const int k = static_cast<int>(t.arity());
        switch (nd.kind) {
            case RecKind::zero:
                x = a.write_code0(a.erase_comp(x, 0), 0);
                break;
            case RecKind::proj: {
                const int src = static_cast<int>(nd.i) - 1;
                for (int c = 0; c < k; ++c)
                    if (c != src) x = a.erase_comp(x, c);
                x = a.move_comp(x, src, 0, k);
                break;
            }
            case RecKind::adjoin: {
                x = a.to_first_blank_child(a.w_init(x, 2), 2, 0);
                x = a.implant_comp(x, 1, 2, 0, 3);
                x = a.erase_comp(clear_walker(a, x, 2), 1);
                break;
            }
            case RecKind::cond: {
                x = a.copy_comp(a.copy_comp(x, 0, 4, 6), 1, 5, 6);
                x = embed_at(a, x, m_decide(DecideKind::member), 4);
                auto [no, yes] = a.test_first_child(x, 4);
                S done = a.fresh();
                for (auto [s, keep] : {std::pair{yes, 2}, std::pair{no, 3}}) {
                    S y = a.erase_comp(s, 4);
                    for (int c : {0, 1, 2, 3})
                        if (c != keep) y = a.erase_comp(y, c);
                    a.merge(a.move_comp(y, keep, 0, 1), done);
                }
                x = a.find(done);
                break;
            }
            case RecKind::comp1: {
                const int m = static_cast<int>(t.kid(1).arity()), n = k - m, A = m + n;
                for (int i = 0; i < m; ++i) x = a.move_comp(x, i, A + i, A + m);
                x = embed_at(a, x, compile(t.kid(1)), A);
                x = a.move_comp(x, A, 0, A + 1);
                for (int j = 0; j < n; ++j) x = a.move_comp(x, m + j, 1 + j, A + 1);
                x = embed_at(a, x, compile(t.kid(0)), 0);
                break;
            }
            case RecKind::comp2: {
                const int m = static_cast<int>(t.kid(1).arity()), n = k - m, A = m + n;
                for (int i = 0; i < m; ++i) x = a.copy_comp(x, i, A + i, A + m);
                x = embed_at(a, x, compile(t.kid(1)), A);
                x = a.move_comp(x, A, A + 1, A + 2);
                for (int j = n - 1; j >= 0; --j) x = a.move_comp(x, m + j, m + j + 1, A + 2);
                x = a.move_comp(x, A + 1, m, A + 2);
                x = embed_at(a, x, compile(t.kid(0)), 0);
                break;
            }
            case RecKind::recursion: {
                const int n = k - 1;
                const RecFrame f{n, n + 1, n + 2, n + 3};
                const MachineTable g = compile(t.kid(0));
                x = a.w_init(a.copy_comp(x, n, f.W, f.w), f.w);
                std::optional<std::pair<S, S>> body;  // one copy serves both hooks
                Assembler::Hook hook = [&](S h) {
                    if (!body) {
                        S entry = a.fresh();
                        body = {entry, adorn_node(a, entry, f, g)};
                    }
                    a.merge(h, body->first);
                    return body->second;
                };
                x = a.run_walk(x, f.w, f.W, marks({Mark::m1}), nullptr, hook, hook);
                x = clear_walker(a, x, f.w);
                for (int c = 0; c <= n; ++c) x = a.erase_comp(x, c);
                x = a.w_init(x, f.w);
                x = a.to_root(to_storage(a, a.to_cursor(x, 0, f.w), f.w, f.W), f.w, 0);
                x = a.w_init(x, f.base);
                x = a.implant_subtree(x, f.w, f.W, f.base, 0, f.base + 1);
                x = clear_walker(a, clear_walker(a, x, f.base), f.w);
                x = a.erase_comp(x, f.W);
                break;
            }
            case RecKind::mu: {
                const int n = k;
                const MachineTable g = compile(t.kid(0));
                Assembler b;
                S bin = b.fresh();
                auto [empty, nonempty] = b.test_first_child(embed_at(b, bin, g, 0), 0);
                for (auto [s, v] : {std::pair{empty, false}, std::pair{nonempty, true}})
                    b.merge(b.write_boolean(b.erase_comp(s, 0), 0, v), b.halt());
                const MachineTable mb = b.finish(bin);
                Assembler s;
                S sin = s.fresh();
                s.merge(tasm::succ_inline(s, sin, n, n + 1), s.halt());
                const MachineTable body = s.finish(sin);
                x = embed_at(a, a.write_code0(x, n), while_loop(body, mb, static_cast<std::size_t>(n + 1)), 0);
                for (int c = 0; c < n; ++c) x = a.erase_comp(x, c);
                x = a.move_comp(x, n, 0, n + 1);
                break;
            }
            case RecKind::rwoo: {
                const int n = k;
                for (int i = 0; i < n; ++i) x = build_woo(a, x, i, n + i, 2 * n);
                x = embed_at(a, x, compile(t.kid(0)), 0);
                break;
            }
        }
        a.merge(x, a.halt());
        return a.finish(in);
    }

    // dst := Kuratowski pairs (e, k) over the distinct decoded root children
    // of src in child order, k counting from 0.
    static S build_woo(Assembler& a, S in, int src, int dst, int C) {
        const int num = C + 1, wa = C + 2, wf = C + 3, wc = C + 4;
        S x = a.copy_comp(in, src, C, C + 1);
        x = embed_at(a, x, m_canonicalize(), C);
        x = a.write_code0(a.write_code0(x, dst), num);
        x = a.to_root(a.w_down(a.to_cursor(a.w_init(x, wa), 0, wa)), wa, 0);
        x = a.to_root(a.w_down(a.to_cursor(a.w_init(x, wf), 0, wf)), wf, 0);

        S loop = a.fresh(), done = a.fresh(), next = a.fresh();
        a.merge(x, loop);
        auto el = a.peek(a.to_cursor(a.find(loop), 0, wa), wa, C, {nonzero_marks(), marks({Mark::m0})});
        a.merge(a.to_root(el[1], wa, 0), done);

        // already paired?
        S scan = a.fresh(), fresh_el = a.fresh();
        S y = a.to_root(a.w_down(a.to_cursor(a.w_init(a.to_root(el[0], wa, 0), wc), 0, wc)), wc, 0);
        a.merge(y, scan);
        auto pr = a.peek(a.to_cursor(a.find(scan), 0, wc), wc, dst, {nonzero_marks(), marks({Mark::m0})});
        a.merge(a.w_clear(pr[1], wc, 0), fresh_el);
        auto [eq, ne] = a.subtree_equal(a.to_root(a.w_down(a.w_down(pr[0])), wc, 0), wa, C, wc, dst, C + 5);
        a.merge(clear_walker(a, eq, wc), next);
        a.merge(a.to_root(a.w_next(a.w_up(a.w_up(a.to_cursor(ne, 0, wc)))), wc, 0), scan);

        // slot := {{e},{e,k}}
        S z = a.to_cursor(a.find(fresh_el), 0, wf);
        z = a.w_down(a.poke(z, wf, dst, Mark::m1));
        z = a.w_down(a.poke(z, wf, dst, Mark::m1));
        z = a.implant_subtree(a.to_root(z, wf, 0), wa, C, wf, dst, wc);
        z = a.w_next(a.w_up(a.to_cursor(z, 0, wf)));
        z = a.w_down(a.poke(z, wf, dst, Mark::m1));
        z = a.implant_subtree(a.to_root(z, wf, 0), wa, C, wf, dst, wc);
        z = a.w_next(a.to_cursor(z, 0, wf));
        z = a.implant_comp(a.to_root(z, wf, 0), num, wf, dst, wc);
        z = a.w_next(a.w_up(a.w_up(a.to_cursor(z, 0, wf))));
        z = tasm::succ_inline(a, a.to_root(z, wf, 0), num, wc);
        a.merge(z, next);

        a.merge(a.to_root(a.w_next(a.to_cursor(a.find(next), 0, wa)), wa, 0), loop);
        x = clear_walker(a, clear_walker(a, a.find(done), wa), wf);
        return a.erase_comp(a.erase_comp(x, num), C);
    }
};

}  // namespace

MachineTable compile(const RecTerm& t) { return Compiler().compile(t); }

MachineTable compile_recursion_kernel(const MachineTable& g, std::size_t n) {
    const int ni = static_cast<int>(n);
    const RecFrame f{ni, ni, ni + 1, ni + 2};
    Assembler a;
    S in = a.fresh();
    S x = a.to_cursor(a.w_init(in, f.w), 0, f.w);
    x = adorn_node(a, x, f, g);
    a.merge(a.w_clear(x, f.w, 0), a.halt());
    return a.finish(in);
}

// ---- equivalence sweep ----------------------------------------------------------

std::string_view case_verdict_name(CaseVerdict v) noexcept {
    switch (v) {
        case CaseVerdict::agree: return "agree";
        case CaseVerdict::disagree: return "disagree";
        case CaseVerdict::fuel_out: return "fuel-out";
        case CaseVerdict::crash: return "crash";
        case CaseVerdict::undefined: return "undefined";
    }
    return "?";
}

namespace {

std::vector<std::vector<HFSet>> tuples(const std::vector<HFSet>& u, std::size_t k) {
    std::vector<std::vector<HFSet>> out{{}};
    for (std::size_t i = 0; i < k; ++i) {
        std::vector<std::vector<HFSet>> next;
        for (const auto& p : out)
            for (const auto& x : u) {
                next.push_back(p);
                next.back().push_back(x);
            }
        out = std::move(next);
    }
    return out;
}

EquivCase run_case(const MachineTable& m, const RecTerm& t, std::vector<HFSet> args,
                   std::uint64_t seed, std::uint64_t fuel) {
    EquivCase c{std::move(args), seed, CaseVerdict::agree, std::nullopt, std::nullopt, 0, {}};
    try {
        EvalEnv env;
        env.seed = seed;
        c.expected = eval(t, c.args, env);
    } catch (const EvalError& e) {
        c.verdict = CaseVerdict::undefined;
        c.detail = e.what();
        return c;
    }
    auto r = run(m, encode_args(c.args, seed), fuel);
    if (auto* h = std::get_if<Halted>(&r)) {
        c.steps = h->steps;
        if (h->final.num_components() > 1) {
            c.verdict = CaseVerdict::disagree;
            c.detail = "output has " + std::to_string(h->final.num_components()) + " components";
            return c;
        }
        c.got = decode_marking(h->final).at(0);
        if (*c.got != *c.expected) c.verdict = CaseVerdict::disagree;
    } else {
        c.verdict = std::holds_alternative<FuelExhausted>(r) ? CaseVerdict::fuel_out
                                                             : CaseVerdict::crash;
        c.detail = describe(r, m);
        if (c.verdict == CaseVerdict::fuel_out) c.steps = fuel;
    }
    return c;
}

}  // namespace

EquivReport equiv_check(const RecTerm& t, const std::string& name, std::size_t rank_bound,
                        std::size_t seeds, std::uint64_t fuel, unsigned threads) {
    EquivReport rep;
    rep.term = name;
    rep.rank_bound = rank_bound;
    rep.seeds = seeds;
    rep.fuel = fuel;
    const MachineTable m = compile(t);
    const auto all = tuples(enumerate_universe(rank_bound), t.arity());
    rep.cases.resize(all.size() * seeds);

    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i; (i = next++) < rep.cases.size();)
            rep.cases[i] = run_case(m, t, all[i / seeds], i % seeds, fuel);
    };
    std::vector<std::jthread> pool;
    for (unsigned k = 1; k < threads; ++k) pool.emplace_back(worker);
    worker();
    pool.clear();

    for (std::size_t tu = 0; tu < all.size(); ++tu) {
        std::optional<HFSet> first;
        bool varies = false;
        for (std::size_t s = 0; s < seeds; ++s) {
            const auto& c = rep.cases[tu * seeds + s];
            if (!c.got) continue;
            if (!first) first = c.got;
            else if (*first != *c.got) varies = true;
        }
        if (varies) ++rep.invariance_errors;
    }
    for (const auto& c : rep.cases) {
        switch (c.verdict) {
            case CaseVerdict::agree: ++rep.agreements; break;
            case CaseVerdict::disagree: ++rep.disagreements; break;
            case CaseVerdict::fuel_out: ++rep.fuel_outs; break;
            case CaseVerdict::crash: ++rep.crashes; break;
            case CaseVerdict::undefined: ++rep.undefined; break;
        }
    }
    return rep;
}

std::string EquivReport::to_json() const {
    using nlohmann::json;
    json cs = json::array();
    for (const auto& c : cases) {
        json args = json::array();
        for (const auto& x : c.args) args.push_back(x.to_string());
        json j{{"term", term},
               {"args", args},
               {"seed", c.seed},
               {"verdict", case_verdict_name(c.verdict)},
               {"steps", c.steps}};
        if (c.expected) j["expected"] = c.expected->to_string();
        if (c.got) j["got"] = c.got->to_string();
        if (!c.detail.empty()) j["detail"] = c.detail;
        cs.push_back(std::move(j));
    }
    json out{{"term", term},
             {"rank_bound", rank_bound},
             {"seeds", seeds},
             {"fuel", fuel},
             {"summary",
              {{"agree", agreements},
               {"disagree", disagreements},
               {"fuel_out", fuel_outs},
               {"crash", crashes},
               {"undefined", undefined},
               {"invariance_errors", invariance_errors}}},
             {"cases", cs}};
    return out.dump(2) + "\n";
}

}  // namespace setm
