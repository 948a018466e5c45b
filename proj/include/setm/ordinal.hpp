#pragma once
// Ordinals below epsilon_0 in Cantor normal form, ordinal paths, tape
// addresses and finitely described transfinite sequences.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <type_traits>
#include <utility>
#include <variant>
#include <vector>

namespace setm {

class Ordinal {
public:
    struct Term;

    Ordinal() = default;  // zero
    static Ordinal natural(std::uint64_t n);
    static Ordinal omega();
    static Ordinal omega_power(Ordinal exponent, std::uint64_t coeff = 1);

    bool is_zero() const noexcept;
    bool is_natural() const noexcept;
    // present iff finite
    std::optional<std::uint64_t> as_natural() const noexcept;
    bool is_limit() const noexcept;
    bool is_successor() const noexcept;

    const std::vector<Term>& terms() const noexcept { return terms_; }

    Ordinal succ() const;
    Ordinal operator+(const Ordinal& rhs) const;
    Ordinal times(std::uint64_t c) const;  // this * c, c finite

    friend std::strong_ordering operator<=>(const Ordinal& a, const Ordinal& b);
    friend bool operator==(const Ordinal& a, const Ordinal& b);

    std::string to_string() const;
    static Ordinal parse(std::string_view text);

private:
    std::vector<Term> terms_;
};

struct Ordinal::Term {
    Ordinal exponent;
    std::uint64_t coeff = 1;
};

inline bool Ordinal::is_zero() const noexcept { return terms_.empty(); }
inline bool Ordinal::is_successor() const noexcept { return !is_zero() && !is_limit(); }

struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class Ordering { less, equal, greater };
Ordering to_ordering(std::strong_ordering o) noexcept;

Ordering ord_compare(const Ordinal& a, const Ordinal& b);
Ordinal ord_succ(const Ordinal& a);

using Path = std::vector<Ordinal>;

std::strong_ordering lex_order(const Path& a, const Path& b);
Ordering lex_compare(const Path& a, const Path& b);
bool is_initial_segment(const Path& a, const Path& b);         // a ◁ b, a == b allowed
bool is_strict_initial_segment(const Path& a, const Path& b);  // proper prefix

Path nat_path(std::initializer_list<std::uint64_t> entries);
std::string path_to_string(const Path& p);
Path parse_path(std::string_view text);

struct Address {
    std::size_t component = 0;
    Path path;

    friend std::strong_ordering operator<=>(const Address& a, const Address& b);
    friend bool operator==(const Address& a, const Address& b) = default;
};

std::string address_to_string(const Address& a);
Address parse_address(std::string_view text);

// Finite descriptions of sequences of limit length.
template <class V>
struct Constant {
    V value;
};
template <class V>
struct Cycle {
    std::vector<V> values;  // each occurs cofinally
};
struct Ramp {
    Address base;   // value at gamma is base.path ⌢ gamma
    Ordinal limit;  // must equal the sequence length
};

struct InvalidSequence : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

template <class V>
struct TransfiniteSeq {
    Ordinal length;
    std::vector<std::pair<Ordinal, V>> pieces;
    std::variant<Constant<V>, Cycle<V>, Ramp> tail;

    void validate() const {
        if (!length.is_limit())
            throw InvalidSequence("sequence length must be a limit ordinal");
        for (std::size_t i = 0; i < pieces.size(); ++i) {
            if (!(pieces[i].first < length))
                throw InvalidSequence("piece start beyond length");
            if (i > 0 && !(pieces[i - 1].first < pieces[i].first))
                throw InvalidSequence("piece starts must increase");
        }
        if (auto* c = std::get_if<Cycle<V>>(&tail)) {
            if (c->values.empty()) throw InvalidSequence("empty cycle");
            for (std::size_t i = 0; i < c->values.size(); ++i)
                for (std::size_t j = i + 1; j < c->values.size(); ++j)
                    if (c->values[i] == c->values[j])
                        throw InvalidSequence("cycle values must be distinct");
        }
        if (auto* r = std::get_if<Ramp>(&tail)) {
            if constexpr (!std::is_same_v<V, Address>)
                throw InvalidSequence("ramp tails describe addresses only");
            if (!(r->limit == length)) throw InvalidSequence("ramp limit must equal length");
        }
    }
};

// ≺-least address dominating cofinally many terms.
Address weak_liminf(const TransfiniteSeq<Address>& seq);
// Smallest value occurring cofinally.
std::size_t least_cofinal(const TransfiniteSeq<std::size_t>& seq);

// Pointwise limit of an eventually constant sequence; nullopt when undefined.
template <class V>
std::optional<V> pointwise_limit(const TransfiniteSeq<V>& seq) {
    seq.validate();
    if (auto* c = std::get_if<Constant<V>>(&seq.tail)) return c->value;
    if (auto* c = std::get_if<Cycle<V>>(&seq.tail)) {
        if (c->values.size() == 1) return c->values.front();
        return std::nullopt;
    }
    return std::nullopt;
}

}  // namespace setm
