#include "setm/rec.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <optional>
#include <unordered_map>

namespace setm {

std::string_view tier_name(Tier t) noexcept {
    switch (t) {
        case Tier::prec: return "pREC";
        case Tier::minrec: return "minREC";
        case Tier::rec: return "REC";
    }
    return "?";
}

Tier parse_tier(std::string_view s) {
    if (s == "pREC") return Tier::prec;
    if (s == "minREC") return Tier::minrec;
    if (s == "REC") return Tier::rec;
    throw std::invalid_argument("unknown tier '" + std::string(s) + "' (pREC, minREC or REC)");
}

// ---- terms -------------------------------------------------------------------

RecTerm RecTerm::make(Node n) {
    for (const auto& k : n.kids) n.tier = std::max(n.tier, k.tier());
    return RecTerm(std::make_shared<const Node>(std::move(n)));
}

RecTerm RecTerm::zero() { return make(Node{RecKind::zero, 0, 0, {}, 1, Tier::prec}); }

RecTerm RecTerm::proj(std::size_t n, std::size_t i) {
    if (n == 0 || i == 0 || i > n)
        throw ArityError("proj " + std::to_string(n) + " " + std::to_string(i) +
                         ": need 1 <= i <= n");
    return make(Node{RecKind::proj, n, i, {}, n, Tier::prec});
}

RecTerm RecTerm::adjoin() { return make(Node{RecKind::adjoin, 0, 0, {}, 2, Tier::prec}); }
RecTerm RecTerm::cond() { return make(Node{RecKind::cond, 0, 0, {}, 4, Tier::prec}); }

RecTerm RecTerm::comp1(RecTerm g, RecTerm h) {
    const std::size_t m = h.arity(), n = g.arity() - 1;
    return make(Node{RecKind::comp1, 0, 0, {std::move(g), std::move(h)}, m + n, Tier::prec});
}

RecTerm RecTerm::comp2(RecTerm g, RecTerm h) {
    const std::size_t m = h.arity();
    if (g.arity() < m + 1)
        throw ArityError("comp2: outer arity " + std::to_string(g.arity()) +
                         " is less than inner arity + 1 = " + std::to_string(m + 1));
    const std::size_t n = g.arity() - m - 1;
    return make(Node{RecKind::comp2, 0, 0, {std::move(g), std::move(h)}, m + n, Tier::prec});
}

RecTerm RecTerm::recursion(RecTerm g) {
    if (g.arity() < 2) throw ArityError("rec: the step function needs arity at least 2");
    const std::size_t a = g.arity() - 1;
    return make(Node{RecKind::recursion, 0, 0, {std::move(g)}, a, Tier::prec});
}

RecTerm RecTerm::mu(RecTerm g) {
    if (g.arity() < 2) throw ArityError("mu: the searched function needs arity at least 2");
    const std::size_t a = g.arity() - 1;
    return make(Node{RecKind::mu, 0, 0, {std::move(g)}, a, Tier::minrec});
}

RecTerm RecTerm::rwoo(RecTerm g) {
    if (g.arity() < 2 || g.arity() % 2 != 0)
        throw ArityError("rwoo: the function needs a positive even arity");
    const std::size_t a = g.arity() / 2;
    return make(Node{RecKind::rwoo, 0, 0, {std::move(g)}, a, Tier::rec});
}

RecTerm RecTerm::apply(RecTerm f, const std::vector<RecTerm>& gs) {
    if (gs.size() != f.arity())
        throw ArityError("application: function of arity " + std::to_string(f.arity()) +
                         " given " + std::to_string(gs.size()) + " arguments");
    const std::size_t m = gs.front().arity();
    for (const auto& g : gs)
        if (g.arity() != m) throw ArityError("application: arguments of different arities");
    // D(x.., z1..zk) = f(z1..zk), then plug g1..gk in turn
    RecTerm t = comp1(std::move(f), proj(m + 1, m + 1));
    for (const auto& g : gs) t = comp2(std::move(t), g);
    return t;
}

std::string RecTerm::to_string() const {
    const Node& n = *node_;
    switch (n.kind) {
        case RecKind::zero: return "zero";
        case RecKind::proj: return "(proj " + std::to_string(n.n) + " " + std::to_string(n.i) + ")";
        case RecKind::adjoin: return "adjoin";
        case RecKind::cond: return "cond";
        case RecKind::comp1: return "(comp1 " + kid(0).to_string() + " " + kid(1).to_string() + ")";
        case RecKind::comp2: return "(comp2 " + kid(0).to_string() + " " + kid(1).to_string() + ")";
        case RecKind::recursion: return "(rec " + kid(0).to_string() + ")";
        case RecKind::mu: return "(mu " + kid(0).to_string() + ")";
        case RecKind::rwoo: return "(rwoo " + kid(0).to_string() + ")";
    }
    return "?";
}

std::size_t RecTerm::size() const {
    std::size_t s = 1;
    for (const auto& k : node_->kids) s += k.size();
    return s;
}

// ---- parser ------------------------------------------------------------------

RecParseError::RecParseError(std::size_t l, std::size_t c, const std::string& msg)
    : std::runtime_error("line " + std::to_string(l) + ", column " + std::to_string(c) + ": " +
                         msg),
      line(l),
      col(c) {}

namespace {

struct Sexp {
    std::string atom;  // empty for lists
    std::vector<Sexp> items;
    std::size_t line = 0, col = 0;
    bool is_list() const { return atom.empty(); }
};

class Reader {
public:
    explicit Reader(std::string_view t) : text_(t) {}

    std::vector<Sexp> all() {
        std::vector<Sexp> out;
        while (skip(), pos_ < text_.size()) out.push_back(one());
        return out;
    }

private:
    std::string_view text_;
    std::size_t pos_ = 0, line_ = 1, col_ = 1;

    void advance() {
        if (text_[pos_] == '\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
        ++pos_;
    }

    void skip() {
        while (pos_ < text_.size()) {
            char c = text_[pos_];
            if (c == ';') {
                while (pos_ < text_.size() && text_[pos_] != '\n') advance();
            } else if (std::isspace(static_cast<unsigned char>(c))) {
                advance();
            } else {
                break;
            }
        }
    }

    Sexp one() {
        skip();
        if (pos_ >= text_.size()) throw RecParseError(line_, col_, "unexpected end of input");
        Sexp s;
        s.line = line_;
        s.col = col_;
        char c = text_[pos_];
        if (c == ')') throw RecParseError(line_, col_, "unexpected ')'");
        if (c == '(') {
            advance();
            while (true) {
                skip();
                if (pos_ >= text_.size()) throw RecParseError(s.line, s.col, "unclosed '('");
                if (text_[pos_] == ')') {
                    advance();
                    break;
                }
                s.items.push_back(one());
            }
            if (s.items.empty()) throw RecParseError(s.line, s.col, "empty list");
            return s;
        }
        while (pos_ < text_.size()) {
            char d = text_[pos_];
            if (d == '(' || d == ')' || d == ';' || std::isspace(static_cast<unsigned char>(d)))
                break;
            s.atom.push_back(d);
            advance();
        }
        return s;
    }
};

class TermBuilder {
public:
    std::map<std::string, RecTerm> defs;

    RecTerm build(const Sexp& s) {
        try {
            return build_unchecked(s);
        } catch (const ArityError& e) {
            throw RecParseError(s.line, s.col, e.what());
        }
    }

    std::size_t number(const Sexp& s) {
        std::size_t v = 0;
        const auto& a = s.atom;
        auto [p, ec] = std::from_chars(a.data(), a.data() + a.size(), v);
        if (a.empty() || ec != std::errc() || p != a.data() + a.size())
            throw RecParseError(s.line, s.col, "expected a natural number");
        return v;
    }

private:
    RecTerm build_unchecked(const Sexp& s) {
        if (!s.is_list()) {
            if (s.atom == "zero") return RecTerm::zero();
            if (s.atom == "adjoin") return RecTerm::adjoin();
            if (s.atom == "cond") return RecTerm::cond();
            if (auto it = defs.find(s.atom); it != defs.end()) return it->second;
            throw RecParseError(s.line, s.col, "unknown name '" + s.atom + "'");
        }
        const Sexp& head = s.items.front();
        auto want = [&](std::size_t k) {
            if (s.items.size() != k + 1)
                throw RecParseError(s.line, s.col,
                                    "'" + head.atom + "' takes " + std::to_string(k) + " operands");
        };
        if (!head.is_list()) {
            const std::string& h = head.atom;
            if (h == "proj") {
                want(2);
                return RecTerm::proj(number(s.items[1]), number(s.items[2]));
            }
            if (h == "comp1" || h == "comp2") {
                want(2);
                RecTerm g = build(s.items[1]), k = build(s.items[2]);
                return h == "comp1" ? RecTerm::comp1(g, k) : RecTerm::comp2(g, k);
            }
            if (h == "rec" || h == "mu" || h == "rwoo") {
                want(1);
                RecTerm g = build(s.items[1]);
                if (h == "rec") return RecTerm::recursion(g);
                return h == "mu" ? RecTerm::mu(g) : RecTerm::rwoo(g);
            }
            if (h == "def") throw RecParseError(s.line, s.col, "def is only allowed at top level");
        }
        RecTerm f = build(head);
        std::vector<RecTerm> gs;
        for (std::size_t k = 1; k < s.items.size(); ++k) gs.push_back(build(s.items[k]));
        return RecTerm::apply(f, gs);
    }
};

constexpr std::string_view kPrelude = R"(
(def singleton (adjoin (zero (proj 1 1)) (proj 1 1)))
(def upair (adjoin (adjoin (zero (proj 2 1)) (proj 2 1)) (proj 2 2)))
(def vn_succ (adjoin (proj 1 1) (proj 1 1)))
(def char_in (cond (proj 2 1) (proj 2 2) (singleton (zero (proj 2 1))) (zero (proj 2 1))))
; F(x, z) is z for z in x and the union of the values below otherwise
(def bigunion_below (rec (cond (proj 3 3) (proj 3 2) (proj 3 3) (proj 3 1))))
(def bigunion (bigunion_below (proj 1 1) (proj 1 1)))
(def union (bigunion (upair (proj 2 1) (proj 2 2))))
(def trcl (rec (union (proj 2 2) (proj 2 1))))
(def least_not_in (mu (cond (proj 2 2) (proj 2 1) (singleton (zero (proj 2 1))) (zero (proj 2 1)))))
)";

RecTerm parse_with(std::string_view text, TermBuilder& b) {
    std::optional<RecTerm> main, last_def;
    for (const Sexp& s : Reader(text).all()) {
        if (s.is_list() && !s.items.front().is_list() && s.items.front().atom == "def") {
            if (s.items.size() != 3 || s.items[1].is_list())
                throw RecParseError(s.line, s.col, "expected (def name term)");
            RecTerm t = b.build(s.items[2]);
            b.defs.insert_or_assign(s.items[1].atom, t);
            last_def = t;
            continue;
        }
        if (main) throw RecParseError(s.line, s.col, "more than one top-level term");
        main = b.build(s);
    }
    if (main) return *main;
    if (last_def) return *last_def;
    throw RecParseError(1, 1, "no term");
}

const std::map<std::string, RecTerm>& prelude() {
    static const std::map<std::string, RecTerm> defs = [] {
        TermBuilder b;
        parse_with(kPrelude, b);
        return b.defs;
    }();
    return defs;
}

}  // namespace

RecTerm parse_rec(std::string_view text, Tier tier) {
    TermBuilder b;
    b.defs = prelude();
    RecTerm t = parse_with(text, b);
    if (t.tier() > tier)
        throw RecParseError(1, 1, "term needs tier " + std::string(tier_name(t.tier())) +
                                      ", outside " + std::string(tier_name(tier)));
    return t;
}

std::vector<std::string> derived_names() {
    return {"singleton", "upair", "vn_succ", "char_in", "bigunion", "union", "trcl",
            "least_not_in"};
}

RecTerm derived(std::string_view name) {
    auto it = prelude().find(std::string(name));
    if (it == prelude().end() || name == "bigunion_below")
        throw std::invalid_argument("unknown derived term '" + std::string(name) + "'");
    return it->second;
}

// ---- evaluation ----------------------------------------------------------------

std::vector<HFSet> woo_arguments(const std::vector<HFSet>& args, std::uint64_t seed,
                                 WooMode mode) {
    std::vector<HFSet> out;
    for (std::size_t i = 0; i < args.size(); ++i) {
        const HFSet& dom = mode == WooMode::trcl ? hf_trcl(args[i]) : args[i];
        out.push_back(woo_graph(sample_woo(dom, seed + i)));
    }
    return out;
}

namespace {

struct MemoKey {
    const RecTerm::Node* node;
    std::vector<HFSet> args;
    bool operator==(const MemoKey&) const = default;
};
struct MemoHash {
    std::size_t operator()(const MemoKey& k) const noexcept {
        std::size_t h = std::hash<const void*>{}(k.node);
        for (const auto& a : k.args) h = h * 1000003u ^ a.hash();
        return h;
    }
};

class Evaluator {
public:
    explicit Evaluator(const EvalEnv& env) : env_(env), fuel_(env.fuel) {}

    HFSet eval(const RecTerm& t, const std::vector<HFSet>& a) {
        if (fuel_ == 0) throw EvalError(EvalError::Kind::fuel, "evaluation fuel exhausted");
        --fuel_;
        const auto& n = t.node();
        switch (n.kind) {
            case RecKind::zero: return HFSet();
            case RecKind::proj: return a[n.i - 1];
            case RecKind::adjoin: return a[0].adjoin(a[1]);
            case RecKind::cond: return a[1].contains(a[0]) ? a[2] : a[3];
            case RecKind::comp1: {
                const std::size_t m = t.kid(1).arity();
                std::vector<HFSet> inner(a.begin(), a.begin() + static_cast<long>(m));
                std::vector<HFSet> outer{eval(t.kid(1), inner)};
                outer.insert(outer.end(), a.begin() + static_cast<long>(m), a.end());
                return eval(t.kid(0), outer);
            }
            case RecKind::comp2: {
                const std::size_t m = t.kid(1).arity();
                std::vector<HFSet> inner(a.begin(), a.begin() + static_cast<long>(m));
                std::vector<HFSet> outer = inner;
                outer.push_back(eval(t.kid(1), inner));
                outer.insert(outer.end(), a.begin() + static_cast<long>(m), a.end());
                return eval(t.kid(0), outer);
            }
            case RecKind::recursion: {
                MemoKey key{&n, a};
                if (auto it = memo_.find(key); it != memo_.end()) return it->second;
                std::vector<HFSet> below = a;
                HFSet s;
                for (const auto& u : a.back().elements()) {
                    below.back() = u;
                    s = s.unite(eval(t, below));
                }
                std::vector<HFSet> g{s};
                g.insert(g.end(), a.begin(), a.end());
                HFSet v = eval(t.kid(0), g);
                memo_.emplace(std::move(key), v);
                return v;
            }
            case RecKind::mu: {
                std::vector<HFSet> g = a;
                g.emplace_back();
                while (true) {
                    if (eval(t.kid(0), g).empty()) return g.back();
                    g.back() = g.back().adjoin(g.back());
                }
            }
            case RecKind::rwoo: {
                std::vector<HFSet> g = a;
                for (auto& f : woo_arguments(a, env_.seed, env_.woo_mode)) g.push_back(std::move(f));
                return eval(t.kid(0), g);
            }
        }
        return HFSet();
    }

private:
    const EvalEnv& env_;
    std::uint64_t fuel_;
    std::unordered_map<MemoKey, HFSet, MemoHash> memo_;
};

}  // namespace

HFSet eval(const RecTerm& t, const std::vector<HFSet>& args, const EvalEnv& env) {
    if (args.size() != t.arity())
        throw EvalError(EvalError::Kind::arity, "term of arity " + std::to_string(t.arity()) +
                                                    " given " + std::to_string(args.size()) +
                                                    " arguments");
    if (t.tier() > env.tier)
        throw EvalError(EvalError::Kind::tier, "term needs tier " +
                                                   std::string(tier_name(t.tier())) +
                                                   " but the environment allows " +
                                                   std::string(tier_name(env.tier)));
    return Evaluator(env).eval(t, args);
}

WooInvariance check_woo_invariance(const RecTerm& g, const std::vector<HFSet>& args,
                                   std::size_t trials, const EvalEnv& env) {
    WooInvariance r;
    for (std::size_t k = 0; k < trials; ++k) {
        std::vector<HFSet> full = args;
        for (auto& f : woo_arguments(args, env.seed + k, env.woo_mode)) full.push_back(std::move(f));
        r.outputs.push_back(eval(g, full, env));
        if (r.outputs.back() != r.outputs.front()) r.verdict = false;
    }
    return r;
}

}  // namespace setm
