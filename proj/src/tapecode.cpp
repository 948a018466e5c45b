#include "setm/tapecode.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

namespace setm {

namespace {

constexpr std::array<std::string_view, kNumMarks> kMarkNames = {
    "0", "1", "2", "3", "4", "0*", "1*", "2*", "3*", "4*", "*", "**"};

Path child(const Path& p, std::uint64_t i) {
    Path c = p;
    c.push_back(Ordinal::natural(i));
    return c;
}

void require_basic(const BasicCode& s, const char* who) {
    if (!is_basic_code(s)) throw std::invalid_argument(std::string(who) + ": not a basic code");
}

}  // namespace

std::string_view mark_name(Mark m) noexcept { return kMarkNames[index_of(m)]; }

Mark parse_mark(std::string_view text) {
    for (std::size_t i = 0; i < kNumMarks; ++i)
        if (kMarkNames[i] == text) return kAllMarks[i];
    throw ParseError("unknown mark '" + std::string(text) + "'");
}

Mark Marking::get(const Address& a) const {
    auto it = cells_.find(a);
    return it == cells_.end() ? Mark::m0 : it->second;
}

void Marking::set(const Address& a, Mark m) {
    if (m == Mark::m0)
        cells_.erase(a);
    else
        cells_[a] = m;
}

std::size_t Marking::num_components() const {
    return cells_.empty() ? 0 : cells_.rbegin()->first.component + 1;
}

BasicCode Marking::support(std::size_t component) const {
    BasicCode s;
    auto it = cells_.lower_bound(Address{component, {}});
    for (; it != cells_.end() && it->first.component == component; ++it) s.insert(it->first.path);
    return s;
}

bool is_basic_code(const BasicCode& s) {
    if (s.empty() || !s.contains(Path{})) return false;
    for (const auto& p : s) {
        if (p.empty()) continue;
        auto last = p.back().as_natural();
        // a transfinite index would need infinitely many earlier siblings
        if (!last) return false;
        Path parent(p.begin(), p.end() - 1);
        if (!s.contains(parent)) return false;
        if (*last > 0 && !s.contains(child(parent, *last - 1))) return false;
    }
    return true;
}

std::size_t num_components(const Marking& x) { return x.num_components(); }

bool is_well_formed(const Marking& x) {
    for (std::size_t k = 0; k < x.num_components(); ++k)
        if (!is_basic_code(x.support(k))) return false;
    return true;
}

Marking induced(const Marking& x, const Address& eta) {
    Marking out;
    auto it = x.cells().lower_bound(eta);
    for (; it != x.cells().end(); ++it) {
        const auto& [a, m] = *it;
        if (a.component != eta.component || !is_initial_segment(eta.path, a.path)) break;
        out.set(Address{0, Path(a.path.begin() + static_cast<std::ptrdiff_t>(eta.path.size()),
                                a.path.end())},
                m);
    }
    return out;
}

std::size_t node_rank(const BasicCode& s, const Path& p) {
    if (!s.contains(p)) throw std::invalid_argument("node_rank: path not in code");
    std::size_t r = 0;
    for (std::uint64_t i = 0;; ++i) {
        Path c = child(p, i);
        if (!s.contains(c)) break;
        r = std::max(r, node_rank(s, c) + 1);
    }
    return r;
}

std::size_t marking_rank(const Marking& x) {
    std::size_t r = 0;
    for (std::size_t k = 0; k < x.num_components(); ++k) {
        auto s = x.support(k);
        if (s.contains(Path{})) r = std::max(r, node_rank(s, Path{}));
    }
    return r;
}

namespace {

HFSet decode_at(const BasicCode& s, const Path& p) {
    std::vector<HFSet> elems;
    for (std::uint64_t i = 0;; ++i) {
        Path c = child(p, i);
        if (!s.contains(c)) break;
        elems.push_back(decode_at(s, c));
    }
    return HFSet::of(std::move(elems));
}

}  // namespace

HFSet decode_basic(const BasicCode& s) {
    require_basic(s, "decode_basic");
    return decode_at(s, Path{});
}

std::vector<HFSet> decode_marking(const Marking& x) {
    if (!is_well_formed(x)) throw std::invalid_argument("decode: marking is not well formed");
    std::vector<HFSet> out;
    for (std::size_t k = 0; k < x.num_components(); ++k) out.push_back(decode_basic(x.support(k)));
    return out;
}

HFSet decode_oracle_g(const BasicCode& s) {
    require_basic(s, "decode_oracle_g");
    std::map<Path, HFSet, PathLess> g;
    // stage 0: maximal paths
    for (const auto& p : s) {
        auto next = s.upper_bound(p);
        if (next == s.end() || !is_strict_initial_segment(p, *next)) g.emplace(p, HFSet{});
    }
    while (true) {
        std::vector<std::pair<Path, HFSet>> stage;
        for (const auto& nu : s) {
            if (g.contains(nu)) continue;
            bool ready = true;
            std::vector<HFSet> kids;
            for (auto it = s.upper_bound(nu); it != s.end() && is_strict_initial_segment(nu, *it);
                 ++it) {
                auto gi = g.find(*it);
                if (gi == g.end()) {
                    ready = false;
                    break;
                }
                if (it->size() == nu.size() + 1) kids.push_back(gi->second);
            }
            if (ready) stage.emplace_back(nu, HFSet::of(std::move(kids)));
        }
        if (stage.empty()) break;  // g(alpha) = g(alpha+1)
        for (auto& [p, v] : stage) g.emplace(std::move(p), std::move(v));
    }
    return g.at(Path{});
}

WooChooser seeded_chooser(std::uint64_t seed) {
    return [seed](const HFSet& v) { return sample_woo(v, seed).order; };
}

namespace {

void encode_into(const HFSet& v, const Path& p, const WooChooser& w, BasicCode& out) {
    out.insert(p);
    auto order = w(v);
    for (std::size_t i = 0; i < order.size(); ++i) encode_into(order[i], child(p, i), w, out);
}

}  // namespace

BasicCode encode_tree(const HFSet& x, const WooChooser& w) {
    BasicCode out;
    encode_into(x, Path{}, w, out);
    return out;
}

std::vector<std::pair<HFSet, Path>> encode_oracle_f(const HFSet& x, const Woo& w) {
    if (!is_valid_woo(w) || !(w.subject == hf_trcl(hf_singleton(x))))
        throw std::invalid_argument("encode_oracle_f: w must enumerate trcl({x})");
    std::vector<std::pair<HFSet, Path>> f{{x, Path{}}};
    BasicCode ran{Path{}};
    auto in_dom = [&](const HFSet& u) {
        return std::any_of(f.begin(), f.end(), [&](const auto& e) { return e.first == u; });
    };
    while (true) {
        bool grew = false;
        for (const auto& u : w.order) {
            if (in_dom(u)) continue;
            // w-least assigned parent reached from x through assigned sets
            const Path* parent = nullptr;
            for (const auto& v : w.order) {
                if (!v.contains(u)) continue;
                auto it = std::find_if(f.begin(), f.end(), [&](const auto& e) { return e.first == v; });
                if (it != f.end()) {
                    parent = &it->second;
                    break;
                }
            }
            if (!parent) continue;
            std::uint64_t gamma = 0;
            while (ran.contains(child(*parent, gamma))) ++gamma;
            Path rho = child(*parent, gamma);
            ran.insert(rho);
            f.emplace_back(u, std::move(rho));
            grew = true;
            break;
        }
        if (!grew) break;
    }
    return f;
}

Marking code_marking(const BasicCode& s, std::size_t component, Mark m) {
    Marking x;
    for (const auto& p : s) x.set(Address{component, p}, m);
    return x;
}

Marking encode_args(const std::vector<HFSet>& args, std::uint64_t seed) {
    Marking x;
    auto w = seeded_chooser(seed);
    for (std::size_t k = 0; k < args.size(); ++k)
        for (const auto& p : encode_tree(args[k], w)) x.set(Address{k, p}, Mark::m1);
    return x;
}

namespace {

std::string shape_at(const BasicCode& s, const Path& p) {
    std::vector<std::string> kids;
    for (std::uint64_t i = 0;; ++i) {
        Path c = child(p, i);
        if (!s.contains(c)) break;
        kids.push_back(shape_at(s, c));
    }
    std::sort(kids.begin(), kids.end());
    std::string out = "(";
    for (auto& k : kids) out += k;
    return out + ")";
}

}  // namespace

bool code_equiv(const BasicCode& a, const BasicCode& b) {
    require_basic(a, "code_equiv");
    require_basic(b, "code_equiv");
    return shape_at(a, Path{}) == shape_at(b, Path{});
}

namespace {

// Literal serialization of the induced submarking and decoded value.
std::string literal_at(const Marking& x, const Address& a, const BasicCode& s,
                       std::unordered_map<HFSet, std::string, HFHash>& seen, bool& ok,
                       HFSet& value) {
    std::string lit = std::string(mark_name(x.get(a))) + "(";
    std::vector<HFSet> elems;
    for (std::uint64_t i = 0;; ++i) {
        Address c{a.component, child(a.path, i)};
        if (!s.contains(c.path)) break;
        HFSet v;
        lit += literal_at(x, c, s, seen, ok, v);
        lit += ',';
        elems.push_back(std::move(v));
    }
    lit += ')';
    value = HFSet::of(std::move(elems));
    auto [it, fresh] = seen.emplace(value, lit);
    if (!fresh && it->second != lit) ok = false;
    return lit;
}

}  // namespace

bool is_canonical(const Marking& x) {
    if (!is_well_formed(x)) throw std::invalid_argument("is_canonical: marking is not well formed");
    std::unordered_map<HFSet, std::string, HFHash> seen;
    bool ok = true;
    for (std::size_t k = 0; k < x.num_components(); ++k) {
        HFSet v;
        literal_at(x, Address{k, {}}, x.support(k), seen, ok, v);
    }
    return ok;
}

Marking parse_code_text(std::string_view text) {
    Marking x;
    std::size_t lineno = 0;
    std::istringstream in{std::string(text)};
    std::string line;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        try {
            Mark m = Mark::m1;
            std::string_view body = line;
            if (auto eq = body.find('='); eq != std::string_view::npos) {
                auto rhs = body.substr(eq + 1);
                auto b = rhs.find_first_not_of(" \t\r"), e = rhs.find_last_not_of(" \t\r");
                if (b == std::string_view::npos) throw ParseError("missing mark after '='");
                m = parse_mark(rhs.substr(b, e - b + 1));
                body = body.substr(0, eq);
            }
            x.set(parse_address(body), m);
        } catch (const ParseError& e) {
            throw ParseError("line " + std::to_string(lineno) + ": " + e.what());
        }
    }
    return x;
}

std::string code_text(const Marking& x) {
    std::string out;
    for (const auto& [a, m] : x.cells()) {
        out += address_to_string(a);
        if (m != Mark::m1) out += " = " + std::string(mark_name(m));
        out += '\n';
    }
    return out;
}

}  // namespace setm
