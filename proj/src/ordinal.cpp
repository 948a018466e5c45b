#include "setm/ordinal.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>

namespace setm {

Ordinal Ordinal::natural(std::uint64_t n) {
    Ordinal o;
    if (n > 0) o.terms_.push_back(Term{Ordinal{}, n});
    return o;
}

Ordinal Ordinal::omega() { return omega_power(natural(1)); }

Ordinal Ordinal::omega_power(Ordinal exponent, std::uint64_t coeff) {
    Ordinal o;
    if (coeff > 0) o.terms_.push_back(Term{std::move(exponent), coeff});
    return o;
}

bool Ordinal::is_natural() const noexcept {
    return terms_.empty() || (terms_.size() == 1 && terms_[0].exponent.is_zero());
}

std::optional<std::uint64_t> Ordinal::as_natural() const noexcept {
    if (terms_.empty()) return 0;
    if (is_natural()) return terms_[0].coeff;
    return std::nullopt;
}

bool Ordinal::is_limit() const noexcept {
    return !terms_.empty() && !terms_.back().exponent.is_zero();
}

Ordinal Ordinal::succ() const { return *this + natural(1); }

Ordinal Ordinal::operator+(const Ordinal& rhs) const {
    if (rhs.is_zero()) return *this;
    const Ordinal& lead = rhs.terms_.front().exponent;
    Ordinal out;
    for (const auto& t : terms_) {
        if (t.exponent < lead) break;
        out.terms_.push_back(t);
    }
    auto it = rhs.terms_.begin();
    if (!out.terms_.empty() && out.terms_.back().exponent == lead) {
        out.terms_.back().coeff += it->coeff;
        ++it;
    }
    out.terms_.insert(out.terms_.end(), it, rhs.terms_.end());
    return out;
}

Ordinal Ordinal::times(std::uint64_t c) const {
    // (w^a*k + rest) * c = w^a*(k*c) + rest
    if (c == 0 || is_zero()) return {};
    Ordinal out = *this;
    out.terms_.front().coeff *= c;
    return out;
}

std::strong_ordering operator<=>(const Ordinal& a, const Ordinal& b) {
    const std::size_t n = std::min(a.terms_.size(), b.terms_.size());
    for (std::size_t i = 0; i < n; ++i) {
        if (auto c = a.terms_[i].exponent <=> b.terms_[i].exponent; c != 0) return c;
        if (auto c = a.terms_[i].coeff <=> b.terms_[i].coeff; c != 0) return c;
    }
    return a.terms_.size() <=> b.terms_.size();
}

bool operator==(const Ordinal& a, const Ordinal& b) { return (a <=> b) == 0; }

std::string Ordinal::to_string() const {
    if (terms_.empty()) return "0";
    std::string out;
    for (const auto& t : terms_) {
        if (!out.empty()) out += '+';
        if (t.exponent.is_zero()) {
            out += std::to_string(t.coeff);
            continue;
        }
        out += 'w';
        if (!(t.exponent == natural(1))) {
            out += '^';
            if (t.exponent.is_natural())
                out += t.exponent.to_string();
            else
                out += '(' + t.exponent.to_string() + ')';
        }
        if (t.coeff > 1) out += '*' + std::to_string(t.coeff);
    }
    return out;
}

namespace {

struct OrdinalParser {
    std::string_view s;
    std::size_t pos = 0;

    void skip() {
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    }
    bool eat(char c) {
        skip();
        if (pos < s.size() && s[pos] == c) {
            ++pos;
            return true;
        }
        return false;
    }
    [[noreturn]] void fail(const std::string& what) const {
        throw ParseError("ordinal: " + what + " at offset " + std::to_string(pos) + " in '" +
                         std::string(s) + "'");
    }
    std::uint64_t number() {
        skip();
        std::uint64_t v = 0;
        auto [p, ec] = std::from_chars(s.data() + pos, s.data() + s.size(), v);
        if (ec != std::errc{}) fail("expected number");
        pos = static_cast<std::size_t>(p - s.data());
        return v;
    }
    Ordinal exponent() {
        if (eat('(')) {
            Ordinal e = sum();
            if (!eat(')')) fail("expected ')'");
            return e;
        }
        if (eat('w')) return Ordinal::omega();
        return Ordinal::natural(number());
    }
    Ordinal term() {
        if (eat('w')) {
            Ordinal e = Ordinal::natural(1);
            if (eat('^')) e = exponent();
            std::uint64_t c = 1;
            if (eat('*')) c = number();
            return Ordinal::omega_power(std::move(e), c);
        }
        return Ordinal::natural(number());
    }
    Ordinal sum() {
        Ordinal acc = term();
        while (eat('+')) acc = acc + term();
        return acc;
    }
};

}  // namespace

Ordinal Ordinal::parse(std::string_view text) {
    OrdinalParser p{text};
    Ordinal o = p.sum();
    p.skip();
    if (p.pos != text.size()) p.fail("trailing input");
    return o;
}

Ordering to_ordering(std::strong_ordering o) noexcept {
    if (o < 0) return Ordering::less;
    if (o > 0) return Ordering::greater;
    return Ordering::equal;
}

Ordering ord_compare(const Ordinal& a, const Ordinal& b) { return to_ordering(a <=> b); }
Ordinal ord_succ(const Ordinal& a) { return a.succ(); }

std::strong_ordering lex_order(const Path& a, const Path& b) {
    const std::size_t n = std::min(a.size(), b.size());
    for (std::size_t i = 0; i < n; ++i)
        if (auto c = a[i] <=> b[i]; c != 0) return c;
    return a.size() <=> b.size();
}

Ordering lex_compare(const Path& a, const Path& b) { return to_ordering(lex_order(a, b)); }

bool is_initial_segment(const Path& a, const Path& b) {
    return a.size() <= b.size() && std::equal(a.begin(), a.end(), b.begin());
}

bool is_strict_initial_segment(const Path& a, const Path& b) {
    return a.size() < b.size() && is_initial_segment(a, b);
}

Path nat_path(std::initializer_list<std::uint64_t> entries) {
    Path p;
    p.reserve(entries.size());
    for (auto e : entries) p.push_back(Ordinal::natural(e));
    return p;
}

std::string path_to_string(const Path& p) {
    std::string out = "[";
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (i) out += ',';
        out += p[i].to_string();
    }
    return out + ']';
}

Path parse_path(std::string_view text) {
    auto l = text.find('['), r = text.rfind(']');
    if (l == std::string_view::npos || r == std::string_view::npos || r < l)
        throw ParseError("path: expected [..] in '" + std::string(text) + "'");
    for (std::size_t i = 0; i < text.size(); ++i)
        if ((i < l || i > r) && !std::isspace(static_cast<unsigned char>(text[i])))
            throw ParseError("path: stray characters in '" + std::string(text) + "'");
    Path p;
    std::string_view body = text.substr(l + 1, r - l - 1);
    if (body.find_first_not_of(" \t") == std::string_view::npos) return p;
    std::size_t start = 0;
    while (true) {
        auto comma = body.find(',', start);
        p.push_back(Ordinal::parse(body.substr(start, comma - start)));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return p;
}

std::strong_ordering operator<=>(const Address& a, const Address& b) {
    if (auto c = a.component <=> b.component; c != 0) return c;
    return lex_order(a.path, b.path);
}

std::string address_to_string(const Address& a) {
    return std::to_string(a.component) + ':' + path_to_string(a.path);
}

Address parse_address(std::string_view text) {
    auto colon = text.find(':');
    if (colon == std::string_view::npos) return Address{0, parse_path(text)};
    Address a;
    auto head = text.substr(0, colon);
    auto b = head.find_first_not_of(" \t"), e = head.find_last_not_of(" \t");
    if (b == std::string_view::npos) throw ParseError("address: missing component");
    head = head.substr(b, e - b + 1);
    auto [p, ec] = std::from_chars(head.data(), head.data() + head.size(), a.component);
    if (ec != std::errc{} || p != head.data() + head.size())
        throw ParseError("address: bad component in '" + std::string(text) + "'");
    a.path = parse_path(text.substr(colon + 1));
    return a;
}

Address weak_liminf(const TransfiniteSeq<Address>& seq) {
    seq.validate();
    if (auto* c = std::get_if<Constant<Address>>(&seq.tail)) return c->value;
    if (auto* c = std::get_if<Cycle<Address>>(&seq.tail))
        return *std::min_element(c->values.begin(), c->values.end());
    const auto& r = std::get<Ramp>(seq.tail);
    Address out = r.base;
    out.path.push_back(r.limit);
    return out;
}

std::size_t least_cofinal(const TransfiniteSeq<std::size_t>& seq) {
    seq.validate();
    if (auto* c = std::get_if<Constant<std::size_t>>(&seq.tail)) return c->value;
    if (auto* c = std::get_if<Cycle<std::size_t>>(&seq.tail))
        return *std::min_element(c->values.begin(), c->values.end());
    throw InvalidSequence("state sequences cannot have a ramp tail");
}

}  // namespace setm
