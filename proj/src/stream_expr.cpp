#include "nbl/stream_expr.hpp"

#include <algorithm>
#include <limits>

namespace nbl {

namespace {

std::vector<std::uint64_t> canonicalize(std::vector<std::uint64_t> offsets) {
    std::sort(offsets.begin(), offsets.end());
    std::vector<std::uint64_t> out;
    out.reserve(offsets.size());
    for (std::size_t i = 0; i < offsets.size();) {
        std::size_t j = i;
        while (j < offsets.size() && offsets[j] == offsets[i]) ++j;
        if ((j - i) % 2 == 1) out.push_back(offsets[i]);
        i = j;
    }
    return out;
}

std::uint64_t checked_add(std::uint64_t a, std::uint64_t b) {
    if (a > std::numeric_limits<std::uint64_t>::max() - b) {
        throw Error("shift offset overflow");
    }
    return a + b;
}

}  // namespace

Product::Product(std::vector<std::uint64_t> offsets) : terms_(canonicalize(std::move(offsets))) {}

Product::Product(std::initializer_list<std::uint64_t> offsets)
    : terms_(canonicalize(std::vector<std::uint64_t>(offsets))) {}

int Product::sample(const NoiseSource& source, SampleIndex n) const {
    int v = 1;
    for (auto t : terms_) v *= source(checked_add(n, t));
    return v;
}

Superposition::Superposition(std::vector<Product> members) : members_(std::move(members)) {
    std::sort(members_.begin(), members_.end());
    if (std::adjacent_find(members_.begin(), members_.end()) != members_.end()) {
        throw Error("duplicate superposition member");
    }
}

std::uint64_t Superposition::max_offset() const noexcept {
    std::uint64_t m = 0;
    for (const auto& p : members_) m = std::max(m, p.max_offset());
    return m;
}

int Superposition::sample(const NoiseSource& source, SampleIndex n) const {
    int v = 0;
    for (const auto& p : members_) v += p.sample(source, n);
    return v;
}

const Product& StreamExpr::as_product() const {
    if (const auto* p = std::get_if<Product>(&node_)) return *p;
    throw Error("expression is not a product");
}

const Superposition& StreamExpr::as_superposition() const {
    if (const auto* s = std::get_if<Superposition>(&node_)) return *s;
    throw Error("expression is not a superposition");
}

std::uint64_t StreamExpr::max_offset() const noexcept {
    return std::visit([](const auto& n) { return n.max_offset(); }, node_);
}

int StreamExpr::sample(const NoiseSource& source, SampleIndex n) const {
    return std::visit([&](const auto& node) { return node.sample(source, n); }, node_);
}

Product shift(const Product& p, ShiftOffset d) {
    std::vector<std::uint64_t> terms = p.terms();
    for (auto& t : terms) t = checked_add(t, d.periods);
    return Product(std::move(terms));
}

Superposition shift(const Superposition& s, ShiftOffset d) {
    std::vector<Product> members;
    members.reserve(s.size());
    for (const auto& p : s.members()) members.push_back(shift(p, d));
    return Superposition(std::move(members));
}

StreamExpr shift(const StreamExpr& e, ShiftOffset d) {
    if (e.is_product()) return shift(e.as_product(), d);
    return shift(e.as_superposition(), d);
}

Product multiply(const Product& a, const Product& b) {
    std::vector<std::uint64_t> terms = a.terms();
    terms.insert(terms.end(), b.terms().begin(), b.terms().end());
    return Product(std::move(terms));
}

StreamExpr multiply(const StreamExpr& a, const StreamExpr& b) {
    if (!a.is_product() || !b.is_product()) throw Error("product-only operation");
    return multiply(a.as_product(), b.as_product());
}

StreamExpr superpose(std::vector<Product> members) { return Superposition(std::move(members)); }

std::string canonical_form(const Product& p) {
    std::string out = "P{";
    for (std::size_t i = 0; i < p.terms().size(); ++i) {
        if (i) out += ',';
        out += std::to_string(p.terms()[i]);
    }
    out += '}';
    return out;
}

std::string canonical_form(const StreamExpr& e) {
    if (e.is_product()) return canonical_form(e.as_product());
    std::string out = "S[";
    const auto& members = e.as_superposition().members();
    for (std::size_t i = 0; i < members.size(); ++i) {
        if (i) out += ',';
        out += canonical_form(members[i]);
    }
    out += ']';
    return out;
}

}  // namespace nbl
