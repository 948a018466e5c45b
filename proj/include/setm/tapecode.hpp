#pragma once
// Marks, tape markings, basic codes and the maps between codes and sets.

#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "setm/hfset.hpp"
#include "setm/ordinal.hpp"

namespace setm {

enum class Mark : std::uint8_t { m0, m1, m2, m3, m4, s0, s1, s2, s3, s4, star, dstar };
inline constexpr std::size_t kNumMarks = 12;
inline constexpr std::array<Mark, kNumMarks> kAllMarks = {
    Mark::m0, Mark::m1, Mark::m2, Mark::m3, Mark::m4,   Mark::s0,
    Mark::s1, Mark::s2, Mark::s3, Mark::s4, Mark::star, Mark::dstar};

constexpr std::size_t index_of(Mark m) noexcept { return static_cast<std::size_t>(m); }
constexpr bool is_raised(Mark m) noexcept { return m >= Mark::s0 && m <= Mark::s4; }
std::string_view mark_name(Mark m) noexcept;
Mark parse_mark(std::string_view text);

struct PathLess {
    bool operator()(const Path& a, const Path& b) const { return lex_order(a, b) < 0; }
};

using BasicCode = std::set<Path, PathLess>;

class Marking {
public:
    using Cells = std::map<Address, Mark>;

    Mark get(const Address& a) const;
    void set(const Address& a, Mark m);  // writing 0 erases
    const Cells& cells() const noexcept { return cells_; }
    bool empty() const noexcept { return cells_.empty(); }
    std::size_t size() const noexcept { return cells_.size(); }
    std::size_t num_components() const;
    BasicCode support(std::size_t component) const;

    friend bool operator==(const Marking&, const Marking&) = default;

private:
    Cells cells_;
};

bool is_basic_code(const BasicCode& s);
bool is_well_formed(const Marking& x);
std::size_t num_components(const Marking& x);
Marking induced(const Marking& x, const Address& eta);
std::size_t node_rank(const BasicCode& s, const Path& p);
std::size_t marking_rank(const Marking& x);

HFSet decode_basic(const BasicCode& s);
// Decoded value of every component; requires a well-formed marking.
std::vector<HFSet> decode_marking(const Marking& x);
HFSet decode_oracle_g(const BasicCode& s);

// Enumerates the elements of a set reached during encoding.
using WooChooser = std::function<std::vector<HFSet>(const HFSet&)>;
WooChooser seeded_chooser(std::uint64_t seed);
BasicCode encode_tree(const HFSet& x, const WooChooser& w);
std::vector<std::pair<HFSet, Path>> encode_oracle_f(const HFSet& x, const Woo& w);

Marking code_marking(const BasicCode& s, std::size_t component = 0, Mark m = Mark::m1);
// One component per argument, each encoded under the seeded chooser.
Marking encode_args(const std::vector<HFSet>& args, std::uint64_t seed);

bool code_equiv(const BasicCode& a, const BasicCode& b);
bool is_canonical(const Marking& x);

// Text format: one address per line, optional "n:" prefix, optional "= mark".
Marking parse_code_text(std::string_view text);
std::string code_text(const Marking& x);

}  // namespace setm
