#pragma once
// Set recursive functions on hereditarily finite sets: terms, a parser for
// the s-expression syntax and a direct evaluator.

#include <cstdint>
#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "setm/hfset.hpp"

namespace setm {

enum class RecKind { zero, proj, adjoin, cond, comp1, comp2, recursion, mu, rwoo };
enum class Tier { prec, minrec, rec };

std::string_view tier_name(Tier t) noexcept;
Tier parse_tier(std::string_view s);

class RecTerm {
public:
    struct Node {
        RecKind kind;
        std::size_t n = 0, i = 0;  // proj only
        std::vector<RecTerm> kids;
        std::size_t arity = 0;
        Tier tier = Tier::prec;
    };

    static RecTerm zero();
    static RecTerm proj(std::size_t n, std::size_t i);  // 1 <= i <= n
    static RecTerm adjoin();
    static RecTerm cond();
    static RecTerm comp1(RecTerm g, RecTerm h);  // G(H(x..), y..)
    static RecTerm comp2(RecTerm g, RecTerm h);  // G(x.., H(x..), y..)
    static RecTerm recursion(RecTerm g);
    static RecTerm mu(RecTerm g);
    static RecTerm rwoo(RecTerm g);
    // f(g1(x..), ..., gk(x..)) through the two composition forms.
    static RecTerm apply(RecTerm f, const std::vector<RecTerm>& gs);

    RecKind kind() const noexcept { return node_->kind; }
    std::size_t arity() const noexcept { return node_->arity; }
    Tier tier() const noexcept { return node_->tier; }
    const Node& node() const noexcept { return *node_; }
    const RecTerm& kid(std::size_t k) const { return node_->kids.at(k); }

    std::string to_string() const;  // core syntax, no sugar
    std::size_t size() const;        // number of nodes

private:
    explicit RecTerm(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
    static RecTerm make(Node n);
    std::shared_ptr<const Node> node_;
};

struct ArityError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct RecParseError : std::runtime_error {
    RecParseError(std::size_t line, std::size_t col, const std::string& msg);
    std::size_t line, col;
};

// A file is a sequence of (def name term) forms and at most one bare term; the
// bare term, or else the last definition, is the result. Derived names are
// predefined and may be shadowed.
// Terms outside `tier` are rejected.
RecTerm parse_rec(std::string_view text, Tier tier = Tier::rec);

enum class WooMode { elements, trcl };

struct EvalEnv {
    std::uint64_t seed = 0;
    std::uint64_t fuel = 1'000'000;
    Tier tier = Tier::rec;
    WooMode woo_mode = WooMode::elements;
};

struct EvalError : std::runtime_error {
    enum class Kind { fuel, tier, arity } kind;
    EvalError(Kind k, const std::string& msg) : std::runtime_error(msg), kind(k) {}
};

HFSet eval(const RecTerm& t, const std::vector<HFSet>& args, const EvalEnv& env = {});

// The woo graphs handed to G by rwoo for argument tuple `args` under `seed`.
std::vector<HFSet> woo_arguments(const std::vector<HFSet>& args, std::uint64_t seed,
                                 WooMode mode);

struct WooInvariance {
    bool verdict = true;
    std::vector<HFSet> outputs;  // one per trial
};
// Evaluates G(x.., f..) under `trials` woo tuples (seeds env.seed, env.seed+1, ...).
WooInvariance check_woo_invariance(const RecTerm& g, const std::vector<HFSet>& args,
                                   std::size_t trials, const EvalEnv& env = {});

std::vector<std::string> derived_names();
RecTerm derived(std::string_view name);

}  // namespace setm
