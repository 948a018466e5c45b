#include <doctest.h>

#include <vector>

#include "setm/ordinal.hpp"

using namespace setm;

namespace {

const Ordinal w = Ordinal::omega();

// 0..9, w..w+9 listed in increasing order
std::vector<Ordinal> below_omega_two() {
    std::vector<Ordinal> v;
    for (std::uint64_t n = 0; n < 10; ++n) v.push_back(Ordinal::natural(n));
    for (std::uint64_t n = 0; n < 10; ++n) v.push_back(w + Ordinal::natural(n));
    return v;
}

Address addr(std::size_t c, Path p) { return Address{c, std::move(p)}; }

}  // namespace

TEST_CASE("ord_compare examples") {
    CHECK(ord_compare(Ordinal{}, Ordinal{}) == Ordering::equal);
    CHECK(ord_compare(w, Ordinal::natural(3)) == Ordering::greater);
    CHECK(ord_compare(w.succ(), w.times(2)) == Ordering::less);
}

TEST_CASE("ord_compare agrees with an explicit enumeration below w*2") {
    const auto v = below_omega_two();
    for (std::size_t i = 0; i < v.size(); ++i)
        for (std::size_t j = 0; j < v.size(); ++j) {
            const Ordering want = i < j ? Ordering::less : i == j ? Ordering::equal : Ordering::greater;
            CHECK(ord_compare(v[i], v[j]) == want);
        }
    for (const auto& a : v) CHECK(ord_compare(a, w.times(2)) == Ordering::less);
}

TEST_CASE("ord_succ") {
    CHECK(ord_succ(Ordinal{}) == Ordinal::natural(1));
    CHECK(ord_succ(Ordinal::natural(2)) == Ordinal::natural(3));
    const Ordinal ws = ord_succ(w);
    CHECK(ws.to_string() == "w+1");
    CHECK(w < ws);
    for (std::uint64_t n = 0; n < 100; ++n) CHECK(Ordinal::natural(n) < w);
    CHECK(ord_succ(ws).is_successor());
    CHECK(w.is_limit());
    CHECK(w.times(2).is_limit());
}

TEST_CASE("ordinal text round trip") {
    for (const char* s : {"0", "7", "w", "w+1", "w*2", "w^2+w*3+4", "w^(w)", "w^(w+1)*2"})
        CHECK(Ordinal::parse(s).to_string() == s);
    CHECK(Ordinal::parse("w^w") == Ordinal::omega_power(Ordinal::omega()));
    CHECK_THROWS_AS(Ordinal::parse("w+"), ParseError);
}

TEST_CASE("addition absorbs smaller terms") {
    CHECK(Ordinal::natural(1) + w == w);
    CHECK(w + Ordinal::natural(1) == w.succ());
    CHECK(w.times(2) + w == w.times(3));
}

TEST_CASE("lex_compare examples") {
    CHECK(lex_compare(nat_path({1}), nat_path({1, 0})) == Ordering::less);
    CHECK(lex_compare(Path{}, Path{}) == Ordering::equal);
    CHECK(lex_compare(nat_path({0, 5}), nat_path({1})) == Ordering::less);
}

TEST_CASE("lex order is a strict total order on short paths over {0,1,5}") {
    std::vector<Path> ps{Path{}};
    for (std::uint64_t a : {0, 1, 5}) {
        ps.push_back(nat_path({a}));
        for (std::uint64_t b : {0, 1, 5}) ps.push_back(nat_path({a, b}));
    }
    for (const auto& a : ps) {
        CHECK(lex_compare(a, a) == Ordering::equal);
        for (const auto& b : ps) {
            const auto ab = lex_compare(a, b), ba = lex_compare(b, a);
            if (a != b) {
                CHECK(ab != Ordering::equal);
                CHECK((ab == Ordering::less) == (ba == Ordering::greater));
            }
            if (is_strict_initial_segment(a, b)) CHECK(ab == Ordering::less);
            for (const auto& c : ps)
                if (ab == Ordering::less && lex_compare(b, c) == Ordering::less)
                    CHECK(lex_compare(a, c) == Ordering::less);
        }
    }
}

TEST_CASE("is_initial_segment") {
    CHECK(is_initial_segment(Path{}, nat_path({3, 1})));
    CHECK_FALSE(is_initial_segment(nat_path({0}), nat_path({1, 0})));
    CHECK(is_initial_segment(Path{Ordinal{}, w}, Path{Ordinal{}, w, Ordinal::natural(2)}));
    CHECK(is_initial_segment(nat_path({2}), nat_path({2})));
    CHECK_FALSE(is_strict_initial_segment(nat_path({2}), nat_path({2})));
}

TEST_CASE("paths and addresses print and parse") {
    CHECK(path_to_string(Path{Ordinal::natural(1), w}) == "[1,w]");
    CHECK(parse_path("[1,w+2]") == Path{Ordinal::natural(1), w + Ordinal::natural(2)});
    CHECK(address_to_string(addr(3, nat_path({2, 5}))) == "3:[2,5]");
    CHECK(parse_address("0:[]") == addr(0, {}));
    CHECK(addr(0, nat_path({9})) < addr(1, Path{}));
}

TEST_CASE("weak_liminf") {
    TransfiniteSeq<Address> c{w, {}, Constant<Address>{addr(0, nat_path({5}))}};
    CHECK(weak_liminf(c) == addr(0, nat_path({5})));
    TransfiniteSeq<Address> y{w, {}, Cycle<Address>{{addr(0, nat_path({0, 0})), addr(0, nat_path({0}))}}};
    CHECK(weak_liminf(y) == addr(0, nat_path({0})));
    TransfiniteSeq<Address> r{w, {}, Ramp{addr(0, {}), w}};
    CHECK(weak_liminf(r) == addr(0, Path{w}));
}

TEST_CASE("least_cofinal and pointwise_limit") {
    CHECK(least_cofinal({w, {}, Constant<std::size_t>{3}}) == 3);
    CHECK(least_cofinal({w, {}, Cycle<std::size_t>{{1, 2}}}) == 1);
    CHECK(least_cofinal({w, {}, Cycle<std::size_t>{{5, 2, 7}}}) == 2);
    CHECK(pointwise_limit<int>({w, {}, Constant<int>{2}}) == 2);
    CHECK_FALSE(pointwise_limit<int>({w, {}, Cycle<int>{{0, 1}}}).has_value());
    CHECK(pointwise_limit<int>({w, {{Ordinal{}, 1}, {Ordinal::natural(4), 0}}, Constant<int>{7}}) == 7);
}

TEST_CASE("sequence validation") {
    CHECK_THROWS_AS(weak_liminf({Ordinal::natural(3), {}, Constant<Address>{}}), InvalidSequence);
    CHECK_THROWS_AS(least_cofinal({w, {}, Cycle<std::size_t>{{}}}), InvalidSequence);
    CHECK_THROWS_AS(least_cofinal({w, {}, Cycle<std::size_t>{{2, 2}}}), InvalidSequence);
    CHECK_THROWS_AS(weak_liminf({w.times(2), {}, Ramp{addr(0, {}), w}}), InvalidSequence);
    CHECK_THROWS_AS(least_cofinal({w, {{Ordinal::natural(3), 1}, {Ordinal::natural(1), 1}},
                                   Constant<std::size_t>{0}}),
                    InvalidSequence);
}
