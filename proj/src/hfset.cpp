#include "setm/hfset.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <numeric>
#include <random>
#include <stdexcept>

#include "setm/ordinal.hpp"

namespace setm {

struct HFSet::Rep {
    std::vector<HFSet> elems;
    std::size_t hash = 0x9e3779b97f4a7c15ULL;
    std::size_t rank = 0;
};

namespace {

const std::shared_ptr<const HFSet::Rep>& empty_rep() {
    static const auto rep = std::make_shared<const HFSet::Rep>();
    return rep;
}

}  // namespace

HFSet::HFSet() : rep_(empty_rep()) {}

HFSet HFSet::of(std::vector<HFSet> elements) {
    std::sort(elements.begin(), elements.end());
    elements.erase(std::unique(elements.begin(), elements.end()), elements.end());
    if (elements.empty()) return HFSet{};
    auto rep = std::make_shared<Rep>();
    std::size_t h = 0x51ed270b27a3f1d5ULL ^ elements.size();
    std::size_t r = 0;
    for (const auto& e : elements) {
        h ^= e.hash() + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
        r = std::max(r, e.rank() + 1);
    }
    rep->elems = std::move(elements);
    rep->hash = h;
    rep->rank = r;
    return HFSet{std::shared_ptr<const Rep>(std::move(rep))};
}

const std::vector<HFSet>& HFSet::elements() const noexcept { return rep_->elems; }
std::size_t HFSet::rank() const noexcept { return rep_->rank; }
std::size_t HFSet::hash() const noexcept { return rep_->hash; }

bool HFSet::contains(const HFSet& y) const {
    const auto& e = elements();
    return std::binary_search(e.begin(), e.end(), y);
}

HFSet HFSet::adjoin(const HFSet& y) const {
    if (contains(y)) return *this;
    auto e = elements();
    e.push_back(y);
    return of(std::move(e));
}

HFSet HFSet::unite(const HFSet& y) const {
    auto e = elements();
    e.insert(e.end(), y.elements().begin(), y.elements().end());
    return of(std::move(e));
}

std::strong_ordering operator<=>(const HFSet& a, const HFSet& b) {
    if (a.rep_ == b.rep_) return std::strong_ordering::equal;
    const auto& x = a.elements();
    const auto& y = b.elements();
    auto ix = x.rbegin(), iy = y.rbegin();
    for (; ix != x.rend() && iy != y.rend(); ++ix, ++iy)
        if (auto c = *ix <=> *iy; c != 0) return c;
    return x.size() <=> y.size();
}

bool operator==(const HFSet& a, const HFSet& b) {
    if (a.rep_ == b.rep_) return true;
    if (a.hash() != b.hash() || a.size() != b.size()) return false;
    return a.elements() == b.elements();
}

std::string HFSet::to_string() const {
    std::string out = "{";
    bool first = true;
    for (const auto& e : elements()) {
        if (!first) out += ',';
        first = false;
        out += e.to_string();
    }
    return out + '}';
}

namespace {

struct SetParser {
    std::string_view s;
    std::size_t pos = 0;

    void skip() {
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    }
    [[noreturn]] void fail(const std::string& what) const {
        throw ParseError("set literal: " + what + " at offset " + std::to_string(pos));
    }
    HFSet value() {
        skip();
        if (pos >= s.size()) fail("unexpected end");
        if (s[pos] == '{') {
            ++pos;
            std::vector<HFSet> elems;
            skip();
            if (pos < s.size() && s[pos] == '}') {
                ++pos;
                return HFSet{};
            }
            while (true) {
                elems.push_back(value());
                skip();
                if (pos < s.size() && s[pos] == ',') {
                    ++pos;
                    continue;
                }
                if (pos < s.size() && s[pos] == '}') {
                    ++pos;
                    break;
                }
                fail("expected ',' or '}'");
            }
            return HFSet::of(std::move(elems));
        }
        if (std::isdigit(static_cast<unsigned char>(s[pos]))) {
            std::uint64_t n = 0;
            auto [p, ec] = std::from_chars(s.data() + pos, s.data() + s.size(), n);
            if (ec != std::errc{} || n > 4096) fail("numeral out of range");
            pos = static_cast<std::size_t>(p - s.data());
            return hf_from_numeral(n);
        }
        fail(std::string("unexpected character '") + s[pos] + "'");
    }
};

}  // namespace

HFSet HFSet::parse(std::string_view text) {
    SetParser p{text};
    HFSet v = p.value();
    p.skip();
    if (p.pos != text.size()) p.fail("trailing input");
    return v;
}

bool hf_member(const HFSet& x, const HFSet& y) { return y.contains(x); }
std::size_t hf_rank(const HFSet& x) { return x.rank(); }

HFSet hf_trcl(const HFSet& x) {
    std::vector<HFSet> acc;
    std::vector<HFSet> todo(x.elements().begin(), x.elements().end());
    while (!todo.empty()) {
        HFSet y = std::move(todo.back());
        todo.pop_back();
        if (std::find(acc.begin(), acc.end(), y) != acc.end()) continue;
        todo.insert(todo.end(), y.elements().begin(), y.elements().end());
        acc.push_back(std::move(y));
    }
    return HFSet::of(std::move(acc));
}

HFSet hf_from_numeral(std::uint64_t n) {
    HFSet v;
    for (std::uint64_t i = 0; i < n; ++i) v = v.adjoin(v);
    return v;
}

HFSet hf_singleton(const HFSet& x) { return HFSet::of({x}); }
HFSet hf_upair(const HFSet& x, const HFSet& y) { return HFSet::of({x, y}); }
HFSet hf_kpair(const HFSet& x, const HFSet& y) {
    return hf_upair(hf_singleton(x), hf_upair(x, y));
}

std::uint64_t ackermann(const HFSet& x) {
    std::uint64_t sum = 0;
    for (const auto& e : x.elements()) {
        std::uint64_t k = ackermann(e);
        if (k >= 64) throw std::overflow_error("Ackermann number exceeds 64 bits");
        sum |= std::uint64_t{1} << k;
    }
    return sum;
}

HFSet from_ackermann(std::uint64_t n) {
    std::vector<HFSet> elems;
    for (std::uint64_t k = 0; k < 64; ++k)
        if (n >> k & 1) elems.push_back(from_ackermann(k));
    return HFSet::of(std::move(elems));
}

bool is_valid_woo(const Woo& w) {
    if (w.order.size() != w.subject.size()) return false;
    auto sorted = w.order;
    std::sort(sorted.begin(), sorted.end());
    return sorted == w.subject.elements();
}

Woo sample_woo(const HFSet& x, std::uint64_t seed) {
    Woo w{x, x.elements()};
    const std::size_t n = w.order.size();
    if (n <= 20) {
        // lexicographic unranking of seed mod n!
        std::vector<std::uint64_t> fact(n + 1, 1);
        for (std::size_t i = 1; i <= n; ++i) fact[i] = fact[i - 1] * i;
        std::uint64_t k = seed % fact[n];
        std::vector<HFSet> pool = std::move(w.order);
        w.order.clear();
        for (std::size_t i = n; i > 0; --i) {
            auto idx = static_cast<std::size_t>(k / fact[i - 1]);
            k %= fact[i - 1];
            w.order.push_back(pool[idx]);
            pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(idx));
        }
    } else if (seed != 0) {
        std::mt19937_64 rng(seed);
        std::shuffle(w.order.begin(), w.order.end(), rng);
    }
    return w;
}

HFSet woo_graph(const Woo& w) {
    std::vector<HFSet> pairs;
    HFSet numeral;
    for (const auto& e : w.order) {
        pairs.push_back(hf_kpair(e, numeral));
        numeral = numeral.adjoin(numeral);
    }
    return HFSet::of(std::move(pairs));
}

std::vector<HFSet> enumerate_universe(std::size_t rank_bound) {
    if (rank_bound > 4)
        throw std::invalid_argument("enumerate_universe: rank bound " +
                                    std::to_string(rank_bound) +
                                    " too large; rank 5 alone has 2^65536 sets");
    std::uint64_t count = 1;  // |V_{r+1}| = 2^|V_r|
    for (std::size_t r = 0; r < rank_bound; ++r) count = std::uint64_t{1} << count;
    std::vector<HFSet> out;
    out.reserve(count);
    for (std::uint64_t i = 0; i < count; ++i) out.push_back(from_ackermann(i));
    return out;
}

}  // namespace setm
