#pragma once
// Hereditarily finite sets in canonical form: elements sorted by Ackermann
// number, no duplicates. Values are immutable and cheap to copy.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

namespace setm {

class HFSet {
public:
    struct Rep;

    HFSet();  // the empty set
    static HFSet of(std::vector<HFSet> elements);  // any order, duplicates allowed

    const std::vector<HFSet>& elements() const noexcept;
    std::size_t size() const noexcept { return elements().size(); }
    bool empty() const noexcept { return elements().empty(); }
    std::size_t rank() const noexcept;
    std::size_t hash() const noexcept;

    bool contains(const HFSet& y) const;
    HFSet adjoin(const HFSet& y) const;  // this ∪ {y}
    HFSet unite(const HFSet& y) const;

    // Ackermann order.
    friend std::strong_ordering operator<=>(const HFSet& a, const HFSet& b);
    friend bool operator==(const HFSet& a, const HFSet& b);

    std::string to_string() const;
    static HFSet parse(std::string_view text);

private:
    explicit HFSet(std::shared_ptr<const Rep> rep) : rep_(std::move(rep)) {}
    std::shared_ptr<const Rep> rep_;
};

struct HFHash {
    std::size_t operator()(const HFSet& x) const noexcept { return x.hash(); }
};

bool hf_member(const HFSet& x, const HFSet& y);
std::size_t hf_rank(const HFSet& x);
HFSet hf_trcl(const HFSet& x);
HFSet hf_from_numeral(std::uint64_t n);
HFSet hf_singleton(const HFSet& x);
HFSet hf_upair(const HFSet& x, const HFSet& y);
HFSet hf_kpair(const HFSet& x, const HFSet& y);  // {{x},{x,y}}

// Throws std::overflow_error when the number does not fit in 64 bits.
std::uint64_t ackermann(const HFSet& x);
HFSet from_ackermann(std::uint64_t n);

struct Woo {
    HFSet subject;
    std::vector<HFSet> order;  // position = ordinal image
};

bool is_valid_woo(const Woo& w);
// Deterministic in (x, seed); seed 0 is Ackermann order.
Woo sample_woo(const HFSet& x, std::uint64_t seed);
// Graph of the woo as a set of Kuratowski pairs (element, numeral).
HFSet woo_graph(const Woo& w);

// All sets of rank at most rank_bound (at most 4), in Ackermann order.
std::vector<HFSet> enumerate_universe(std::size_t rank_bound);

}  // namespace setm

template <>
struct std::hash<setm::HFSet> {
    std::size_t operator()(const setm::HFSet& x) const noexcept { return x.hash(); }
};
