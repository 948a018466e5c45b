#include <doctest.h>

#include <random>

#include "golden.hpp"
#include "loops.hpp"
#include "setm/stdlib.hpp"
#include "support.hpp"

using namespace setm;
using namespace setm::testing;

namespace {

Marking final_of(const MachineTable& m, const Marking& x, std::uint64_t fuel = 2'000'000) {
    auto r = run(m, x, fuel);
    auto* h = std::get_if<Halted>(&r);
    if (!h) throw std::runtime_error(describe(r, m));
    return h->final;
}

std::vector<HFSet> decoded(const MachineTable& m, const Marking& x) {
    return decode_marking(final_of(m, x));
}

Address at(std::size_t c, std::initializer_list<std::uint64_t> p) { return Address{c, nat_path(p)}; }

}  // namespace

TEST_CASE("builtin tables match the transcribed tables") {
    for (auto [k, file] : {std::pair{MachineKind::end, "table_end.stm"},
                           std::pair{MachineKind::erase, "table_erase.stm"},
                           std::pair{MachineKind::traverse2, "table_traverse2.stm"},
                           std::pair{MachineKind::copy, "table_copy.stm"}}) {
        const MachineTable want = parse_table(slurp(std::string(SETM_GOLDEN_DIR) + "/" + file));
        CHECK(builtin(k).rules() == want.rules());
        CHECK(parse_table(builtin_source(k)).rules() == want.rules());
    }
}

TEST_CASE("builtin golden traces") {
    for (const auto& c : golden_cases()) {
        CAPTURE(c.name);
        const auto g = run_golden(SETM_GOLDEN_DIR, c);
        CHECK(g.halted);
        CHECK(g.trace == g.want_trace);
        CHECK(g.final == g.want_final);
        CHECK(g.steps < 100);
    }
}

TEST_CASE("copy and erase over small sets") {
    for (const auto& x : enumerate_universe(3))
        for (std::uint64_t seed = 0; seed < 3; ++seed) {
            const Marking in = delimit(encode_args({x, HFSet{}}, seed));
            const Marking out = final_of(builtin(MachineKind::copy), in);
            CHECK(decode_basic(out.support(1)) == x);
            CHECK(induced(out, Address{1, {}}) == induced(encode_args({x}, seed), Address{0, {}}));
            const Marking er = final_of(builtin(MachineKind::erase), delimit(encode_args({x}, seed)));
            Marking want;
            want.set(Address{0, {}}, Mark::star);
            CHECK(er == want);
        }
}

TEST_CASE("delimit") {
    const Marking x = delimit(encode_args({hf_from_numeral(2)}, 0));
    CHECK(x.get(at(0, {2})) == Mark::dstar);
    CHECK(x.size() == 5);
}

TEST_CASE("compose") {
    for (const auto& x : enumerate_universe(2)) {
        const Marking in = encode_args({x}, 1);
        CHECK(final_of(compose(builtin(MachineKind::end), identity_machine()), in) ==
              final_of(builtin(MachineKind::end), in));
    }
    CHECK(decoded(compose(m_ord(OrdKind::succ), m_ord(OrdKind::succ)), encode_args({hf_from_numeral(1)}, 0)) ==
          std::vector<HFSet>{hf_from_numeral(3)});
    // end leaves * at the root, where erase has no rule
    auto r = run(compose(builtin(MachineKind::end), builtin(MachineKind::erase)),
                 encode_args({hf_from_numeral(1)}, 0), 100);
    REQUIRE(std::holds_alternative<Crashed>(r));
    CHECK(std::get<Crashed>(r).reason == CrashReason::no_rule);
}

TEST_CASE("if_then_else") {
    const MachineTable zero = compiled("zero");
    for (const auto& x : enumerate_universe(2)) {
        const Marking in = encode_args({x}, 0);
        CHECK(final_of(if_then_else(zero, builtin(MachineKind::end), builtin(MachineKind::erase), 1), in) ==
              final_of(builtin(MachineKind::end), in));
    }
    const MachineTable branch =
        if_then_else(m_decide(DecideKind::member), m_pair(PairKind::pair), identity_machine(), 2);
    std::mt19937_64 rng(11);
    const auto u3 = enumerate_universe(3);
    for (int i = 0; i < 10; ++i) {
        const HFSet x = u3[rng() % u3.size()], y = u3[rng() % u3.size()];
        const auto out = decoded(branch, encode_args({x, y}, 0));
        if (hf_member(x, y)) CHECK(out == std::vector<HFSet>{x, y});
        else CHECK(out == std::vector<HFSet>{x, y, hf_upair(x, y)});
    }
}

TEST_CASE("while_loop and reference_iterate") {
    for (const auto& c : loop_cases()) {
        CAPTURE(c.name);
        const MachineTable w = while_loop(c.body, c.guard, c.n);
        for (const auto& x : c.inputs) CHECK(final_of(w, x, 20'000'000) == reference_iterate(c.body, c.guard, x, 20'000'000));
    }
}

TEST_CASE("loop fixpoints") {
    const MachineTable w = while_loop(compiled("bigunion"), nonempty_guard(), 1);
    for (const auto& x : enumerate_universe(3)) CHECK(decoded(w, encode_args({x}, 2)) == std::vector<HFSet>{HFSet{}});
    const MachineTable mu = while_loop(succ_first_of_two(), m_decide(DecideKind::member), 2);
    for (const auto& y : enumerate_universe(3)) {
        std::uint64_t k = 0;
        while (y.contains(hf_from_numeral(k))) ++k;
        CHECK(decoded(mu, encode_args({HFSet{}, y}, 0)) == std::vector<HFSet>{hf_from_numeral(k), y});
    }
}

TEST_CASE("reference_iterate errors") {
    const MachineTable always1 = compiled("(vn_succ zero)");
    CHECK_THROWS_AS(reference_iterate(identity_machine(), always1, encode_args({HFSet{}}, 0), 100000),
                    IterationError);
    CHECK_THROWS_AS(reference_iterate(identity_machine(), identity_machine(), encode_args({hf_from_numeral(2)}, 0), 100),
                    IterationError);
}

TEST_CASE("erase_below") {
    const Marking two = encode_args({hf_from_numeral(2)}, 0);
    Marking x = two;
    x.set(at(0, {}), Mark::s1);
    Marking want;
    want.set(at(0, {}), Mark::s1);
    CHECK(final_of(erase_below(0, 1), x) == want);

    Marking leaf = two;
    leaf.set(at(0, {0}), Mark::s1);
    CHECK(final_of(erase_below(0, 1), leaf) == leaf);

    Marking mid = two;
    mid.set(at(0, {1}), Mark::s2);
    Marking want_mid = mid;
    want_mid.set(at(0, {1, 0}), Mark::m0);
    CHECK(final_of(erase_below(0, 1), mid) == want_mid);

    Marking other = encode_args({hf_from_numeral(1), hf_from_numeral(2)}, 0);
    other.set(at(1, {1}), Mark::s0);
    Marking want_other = other;
    want_other.set(at(1, {1, 0}), Mark::m0);
    CHECK(final_of(erase_below(1, 2), other) == want_other);

    CHECK(std::holds_alternative<Crashed>(run(erase_below(0, 1), two, 10000)));
    CHECK_THROWS(erase_below(2, 2));
}

TEST_CASE("subtree_copy") {
    for (const auto& x : enumerate_universe(3)) {
        Marking in = encode_args({x, HFSet{}}, 1);
        in.set(at(0, {}), Mark::s1);
        in.set(at(1, {}), Mark::s1);
        const Marking out = final_of(subtree_copy(), in);
        CHECK(induced(out, Address{1, {}}) == induced(in, Address{0, {}}));
        CHECK(induced(out, Address{0, {}}) == induced(in, Address{0, {}}));
        CHECK(final_of(subtree_copy(), out) == out);
    }
    // a leaf source replaces the target subtree by a single node
    Marking in = encode_args({hf_from_numeral(2), hf_from_numeral(2)}, 0);
    in.set(at(0, {0}), Mark::s1);
    in.set(at(1, {1}), Mark::s1);
    const Marking out = final_of(subtree_copy(), in);
    CHECK(out.get(at(1, {1, 0})) == Mark::m0);
    CHECK(out.get(at(1, {1})) == Mark::s1);
    CHECK(out.get(at(1, {0})) == Mark::m1);
    CHECK(induced(out, Address{0, {}}) == induced(in, Address{0, {}}));
}

TEST_CASE("literal comparison machines") {
    auto verdict = [](const MachineTable& m, const Marking& x) {
        const Marking out = final_of(m, x);
        return decode_basic(out.support(2)) == hf_from_numeral(1);
    };
    auto both = [](const BasicCode& a, const BasicCode& b) {
        Marking x = code_marking(a);
        for (const auto& p : b) x.set(Address{1, p}, Mark::m1);
        return x;
    };
    const BasicCode c2 = encode_tree(hf_from_numeral(2), seeded_chooser(0));
    CHECK(verdict(m_equal(), both(c2, c2)));
    BasicCode dup{Path{}, nat_path({0}), nat_path({1})};
    CHECK_FALSE(verdict(m_equal(), both(encode_tree(hf_from_numeral(1), seeded_chooser(0)), dup)));
    CHECK(verdict(m_exists_equal(), both(BasicCode{Path{}}, c2)));
    CHECK(verdict(m_exists_equal(), both(BasicCode{Path{}}, dup)));
    CHECK_FALSE(verdict(m_exists_equal(), both(c2, c2)));

    // literal-level oracles over pairs of rank-2 codes with two orders each
    std::vector<BasicCode> codes;
    for (const auto& x : enumerate_universe(2))
        for (std::uint64_t s = 0; s < 2; ++s) codes.push_back(encode_tree(x, seeded_chooser(s)));
    codes.push_back(dup);
    auto kids = [](const BasicCode& s) {
        std::vector<Marking> v;
        for (std::uint64_t k = 0; s.contains(nat_path({k})); ++k)
            v.push_back(induced(code_marking(s), Address{0, nat_path({k})}));
        return v;
    };
    for (const auto& a : codes)
        for (const auto& b : codes) {
            const Marking ma = code_marking(a), x = both(a, b);
            const auto ka = kids(a), kb = kids(b);
            bool ex = false;
            for (const auto& k : kb) ex = ex || k == ma;
            bool fe_xy = true, fe_yx = true;
            for (const auto& k : ka) {
                bool f = false;
                for (const auto& l : kb) f = f || k == l;
                fe_xy = fe_xy && f;
            }
            for (const auto& l : kb) {
                bool f = false;
                for (const auto& k : ka) f = f || k == l;
                fe_yx = fe_yx && f;
            }
            CHECK(verdict(m_equal(), x) == (a == b));
            CHECK(verdict(m_exists_equal(), x) == ex);
            CHECK(verdict(m_forall_exists(Direction::x_to_y), x) == fe_xy);
            CHECK(verdict(m_forall_exists(Direction::y_to_x), x) == fe_yx);
            const Marking out = final_of(m_equal(), x);
            CHECK(induced(out, Address{0, {}}) == ma);
        }
}

TEST_CASE("canonicalize") {
    const Marking e = encode_args({HFSet{}}, 0);
    CHECK(final_of(m_canonicalize(), e) == e);
    for (const auto& x : adversarial_codes()) {
        const Marking out = final_of(m_canonicalize(), x, 50'000'000);
        CHECK(is_canonical(out));
        CHECK(decode_marking(out) == decode_marking(x));
        for (const auto& [a, m] : out.cells()) CHECK(m == Mark::m1);
    }
    // two shapes of {0}: the 1-child shape is lex-first and wins
    BasicCode s;
    for (auto p : {nat_path({}), nat_path({0}), nat_path({0, 0}), nat_path({1}), nat_path({1, 0}),
                   nat_path({1, 1})})
        s.insert(p);
    const Marking out = final_of(m_canonicalize(), code_marking(s));
    CHECK(induced(out, Address{0, nat_path({0})}) == induced(out, Address{0, nat_path({1})}));
    CHECK(induced(out, Address{0, nat_path({1})}) == encode_args({hf_from_numeral(1)}, 0));
}

TEST_CASE("pair, opair and pairing") {
    const HFSet z{}, one = hf_from_numeral(1);
    CHECK(decoded(m_pair(PairKind::pair), encode_args({z, z}, 0))[2] == one);
    CHECK(decoded(m_pair(PairKind::opair), encode_args({z, one}, 0))[2] == hf_kpair(z, one));
    const HFSet a = hf_from_numeral(2), b = HFSet::parse("{{{}}}");
    CHECK(decoded(m_pair(PairKind::pairing), encode_args({hf_singleton(a), hf_singleton(b)}, 0))[2] ==
          hf_singleton(hf_kpair(a, b)));
    for (const auto& x : enumerate_universe(2))
        for (const auto& y : enumerate_universe(2)) {
            const auto p = decoded(m_pair(PairKind::pair), encode_args({x, y}, 1));
            CHECK(p == std::vector<HFSet>{x, y, hf_upair(x, y)});
            const auto o = decoded(m_pair(PairKind::opair), encode_args({x, y}, 1));
            CHECK(o == std::vector<HFSet>{x, y, hf_kpair(x, y)});
        }
    auto bad = run(m_pair(PairKind::pairing), encode_args({one, a}, 0), 100000);
    CHECK(std::holds_alternative<Crashed>(bad));
}

TEST_CASE("ordinal machines") {
    for (std::uint64_t k = 0; k < 5; ++k)
        CHECK(decoded(m_ord(OrdKind::succ), encode_args({hf_from_numeral(k)}, 0)) ==
              std::vector<HFSet>{hf_from_numeral(k + 1)});
    CHECK(decoded(m_ord(OrdKind::alpha_c), encode_args({hf_from_numeral(2)}, 0))[1] == hf_from_numeral(2));
    BasicCode dup{Path{}, nat_path({0}), nat_path({1})};
    const auto d = decoded(m_ord(OrdKind::alpha_c), code_marking(dup));
    CHECK(d[0] == hf_from_numeral(1));
    CHECK(d[1] == hf_from_numeral(2));
    for (const auto& x : enumerate_universe(3))
        for (std::uint64_t seed = 0; seed < 2; ++seed) {
            const Marking in = encode_args({x}, seed);
            const auto out = decoded(m_ord(OrdKind::cwo), in);
            REQUIRE(out.size() == 3);
            CHECK(out[0] == x);
            CHECK(out[1] == hf_from_numeral(x.size()));
            std::vector<HFSet> graph;
            for (std::uint64_t k = 0; k < x.size(); ++k)
                graph.push_back(hf_kpair(decode_marking(induced(in, Address{0, nat_path({k})}))[0],
                                         hf_from_numeral(k)));
            CHECK(out[2] == HFSet::of(graph));
        }
}

TEST_CASE("membership and equality deciders") {
    auto decide = [](DecideKind k, const HFSet& x, const HFSet& y, std::uint64_t seed) {
        const Marking out = final_of(m_decide(k), encode_args({x, y}, seed));
        auto v = boolean_value(out);
        REQUIRE(v.has_value());
        return *v;
    };
    CHECK(decide(DecideKind::member, hf_from_numeral(0), hf_from_numeral(2), 0));
    CHECK_FALSE(decide(DecideKind::member, hf_from_numeral(2), hf_from_numeral(2), 0));
    for (const auto& x : enumerate_universe(2)) {
        CHECK(decide(DecideKind::equal, x, x, 0));
        const Marking in = encode_args({x}, 0);
        Marking both = in;
        const Marking other = encode_args({x}, 1);
        for (const auto& [a, m] : other.cells()) both.set(Address{1, a.path}, m);
        CHECK(boolean_value(final_of(m_decide(DecideKind::equal), both)) == true);
    }
}

TEST_CASE("booleans") {
    CHECK(decode_marking(boolean_code(false)) == std::vector<HFSet>{hf_from_numeral(0)});
    CHECK(decode_marking(boolean_code(true)) == std::vector<HFSet>{hf_from_numeral(1)});
    CHECK(boolean_value(boolean_code(true)) == true);
    CHECK_FALSE(boolean_value(encode_args({hf_from_numeral(2)}, 0)).has_value());
}

TEST_CASE("validate_contract") {
    std::vector<Marking> pairs;
    for (const auto& x : enumerate_universe(2))
        for (const auto& y : enumerate_universe(2)) pairs.push_back(encode_args({x, y}, 0));
    CHECK(validate_contract(m_decide(DecideKind::member), ContractKind::boolean, pairs, 1'000'000).verdict);
    std::vector<Marking> two;
    for (const auto& x : enumerate_universe(2)) two.push_back(delimit(encode_args({x, HFSet{}}, 0)));
    CHECK(validate_contract(builtin(MachineKind::copy), ContractKind::preserves_components, two, 10000).verdict);
    const auto r = validate_contract(builtin(MachineKind::end), ContractKind::boolean, pairs, 10000);
    CHECK_FALSE(r.verdict);
    CHECK(r.counterexample.has_value());
}

TEST_CASE("stdlib registry") {
    for (const auto& n : stdlib_names()) {
        CAPTURE(n);
        const MachineTable m = stdlib_machine(n);
        CHECK(m.num_rules() > 0);
        CHECK(parse_table(m.to_stm()).rules() == m.rules());
    }
    CHECK_THROWS(stdlib_machine("no-such-machine"));
}
