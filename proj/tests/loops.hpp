#pragma once
// Body/guard pairs for while_loop, each with its inputs.

#include <string>
#include <vector>

#include "setm/compiler.hpp"
#include "setm/rec.hpp"
#include "setm/stdlib.hpp"
#include "support.hpp"

namespace setm::testing {

struct LoopCase {
    std::string name;
    MachineTable body, guard;
    std::size_t n = 1;
    std::vector<Marking> inputs;
};

// leaves 2, inner nodes 1: the state the canonicalization loop starts from
inline Marking premark(const Marking& x) {
    Marking out;
    for (const auto& [a, m] : x.cells()) {
        Path c = a.path;
        c.push_back(Ordinal{});
        out.set(a, x.get(Address{a.component, c}) == Mark::m0 ? Mark::m2 : Mark::m1);
    }
    return out;
}

// Codes with repeated or differently shaped equal subtrees.
inline std::vector<Marking> adversarial_codes() {
    auto code = [](std::initializer_list<std::initializer_list<std::uint64_t>> ps) {
        BasicCode s;
        for (auto p : ps) s.insert(nat_path(p));
        return code_marking(s);
    };
    std::vector<Marking> v{
        code({{}, {0}, {1}}),
        code({{}, {0}, {1}, {2}}),
        code({{}, {0}, {0, 0}, {1}, {1, 0}, {1, 1}}),
        code({{}, {0}, {0, 0}, {0, 1}, {1}, {1, 0}}),
        code({{}, {0}, {0, 0}, {1}, {1, 0}, {2}}),
        code({{}, {0}, {0, 0}, {0, 0, 0}, {1}, {1, 0}, {1, 0, 0}, {1, 0, 1}}),
        code({{}, {0}, {1}, {1, 0}, {1, 1}, {1, 1, 0}, {2}, {2, 0}, {2, 1}, {2, 1, 0}, {2, 1, 1}}),
        code({{}, {0}, {0, 0}, {0, 1}, {0, 1, 0}, {1}, {1, 0}, {1, 0, 0}, {1, 1}}),
    };
    std::mt19937_64 rng(2024);
    while (v.size() < 40) {
        Marking x = code_marking(random_basic_code(rng, 9));
        if (!is_canonical(x)) v.push_back(std::move(x));
    }
    return v;
}

inline MachineTable compiled(const std::string& src) { return compile(parse_rec(src)); }

// Boolean: component 0 is nonempty.
inline MachineTable nonempty_guard() {
    tasm::Assembler a;
    tasm::S in = a.fresh();
    auto [blank, nz] = a.test_first_child(in, 0);
    a.merge(a.write_boolean(a.erase_comp(blank, 0), 0, false), a.halt());
    a.merge(a.write_boolean(a.erase_comp(nz, 0), 0, true), a.halt());
    return a.finish(in);
}

// Successor of the ordinal name in component 0, component 1 untouched.
inline MachineTable succ_first_of_two() {
    tasm::Assembler a;
    tasm::S in = a.fresh();
    a.merge(tasm::succ_inline(a, in, 0, 2), a.halt());
    return a.finish(in);
}

inline std::vector<Marking> codes_of(const std::vector<HFSet>& xs, std::uint64_t seeds) {
    std::vector<Marking> v;
    for (const auto& x : xs)
        for (std::uint64_t s = 0; s < seeds; ++s) v.push_back(encode_args({x}, s));
    return v;
}

inline std::vector<Marking> numerals(std::uint64_t upto) {
    std::vector<Marking> v;
    for (std::uint64_t k = 0; k <= upto; ++k) v.push_back(encode_args({hf_from_numeral(k)}, 0));
    return v;
}

inline std::vector<LoopCase> loop_cases() {
    const std::string one = "(vn_succ zero)", two = "(vn_succ (vn_succ zero))",
                      three = "(vn_succ (vn_succ (vn_succ zero)))";
    const auto u2 = enumerate_universe(2), u3 = enumerate_universe(3);
    std::vector<LoopCase> cs;
    cs.push_back({"guard always 0", m_ord(OrdKind::succ), compiled("zero"), 1, codes_of(u2, 2)});
    cs.push_back({"bigunion until empty", compiled("bigunion"), nonempty_guard(), 1, codes_of(u3, 2)});
    {
        std::vector<Marking> in;
        for (const auto& x : adversarial_codes()) in.push_back(premark(x));
        for (const auto& x : codes_of(u2, 3)) in.push_back(premark(x));
        cs.push_back({"canonicalization", m_local_canonicalize(), m_canonical_pending(), 1, in});
    }
    cs.push_back({"mu: least numeral outside 3", m_ord(OrdKind::succ),
                  compiled("(char_in (proj 1 1) " + three + ")"), 1, numerals(4)});
    cs.push_back({"mu: least numeral outside {0,2}", m_ord(OrdKind::succ),
                  compiled("(char_in (proj 1 1) (upair zero " + two + "))"), 1, numerals(3)});
    {
        std::vector<Marking> in;
        for (const auto& y : u3) {
            Marking x = encode_args({HFSet{}, y}, 1);
            in.push_back(x);
        }
        cs.push_back({"mu: least numeral outside y", succ_first_of_two(), m_decide(DecideKind::member),
                      2, in});
    }
    cs.push_back({"compiled successor inside 3", compiled("vn_succ"),
                  compiled("(char_in (proj 1 1) " + three + ")"), 1, codes_of(u2, 2)});
    cs.push_back({"singleton tower", compiled("singleton"),
                  compiled("(char_in (proj 1 1) (adjoin (upair zero " + one + ") (singleton " + one +
                           ")))"),
                  1, codes_of(u2, 2)});
    cs.push_back({"bigunion while empty is a member", compiled("bigunion"),
                  compiled("(char_in zero (proj 1 1))"), 1, codes_of(u3, 2)});
    cs.push_back({"adjoin empty inside rank 2", compiled("(upair (proj 1 1) zero)"),
                  compiled("(char_in (proj 1 1) (adjoin (adjoin (upair zero " + one + ") (singleton " +
                           one + ")) " + two + "))"),
                  1, codes_of(u2, 2)});
    cs.push_back({"identity body under always 0", identity_machine(), compiled("zero"), 1,
                  codes_of(u3, 1)});
    return cs;
}

}  // namespace setm::testing
