#pragma once

#include <compare>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <variant>
#include <vector>

#include "nbl/noise_source.hpp"

namespace nbl {

/// A forward time shift measured in whole RTW periods. Any shift of one
/// period or more is longer than the correlation time of the source.
struct ShiftOffset {
    std::uint64_t periods = 0;

    friend constexpr auto operator<=>(const ShiftOffset&, const ShiftOffset&) = default;
};

/// Product of shifted copies of the single noise source.
///
/// Terms are kept canonical: sorted ascending, with pairs of equal offsets
/// removed (u(n)^2 = 1). Structural equality therefore decides stream
/// equality. The empty product is the constant +1 stream.
class Product {
public:
    Product() = default;
    /// Accepts any multiset of offsets and canonicalizes it.
    explicit Product(std::vector<std::uint64_t> offsets);
    Product(std::initializer_list<std::uint64_t> offsets);

    const std::vector<std::uint64_t>& terms() const noexcept { return terms_; }
    bool is_constant() const noexcept { return terms_.empty(); }
    std::uint64_t max_offset() const noexcept { return terms_.empty() ? 0 : terms_.back(); }

    int sample(const NoiseSource& source, SampleIndex n) const;

    friend bool operator==(const Product&, const Product&) = default;
    friend auto operator<=>(const Product& a, const Product& b) { return a.terms_ <=> b.terms_; }

private:
    std::vector<std::uint64_t> terms_;
};

/// Integer-valued sum of distinct products. Members are stored sorted.
class Superposition {
public:
    Superposition() = default;
    /// Throws Error on duplicate members.
    explicit Superposition(std::vector<Product> members);

    const std::vector<Product>& members() const noexcept { return members_; }
    std::size_t size() const noexcept { return members_.size(); }
    std::uint64_t max_offset() const noexcept;

    int sample(const NoiseSource& source, SampleIndex n) const;

    friend bool operator==(const Superposition&, const Superposition&) = default;

private:
    std::vector<Product> members_;
};

/// Symbolic signal on one wire: a product string or a superposition of them.
class StreamExpr {
public:
    StreamExpr() = default;
    StreamExpr(Product p) : node_(std::move(p)) {}
    StreamExpr(Superposition s) : node_(std::move(s)) {}

    bool is_product() const noexcept { return std::holds_alternative<Product>(node_); }
    bool is_superposition() const noexcept { return !is_product(); }
    /// Throws Error if this is not a Product.
    const Product& as_product() const;
    /// Throws Error if this is not a Superposition.
    const Superposition& as_superposition() const;
    std::uint64_t max_offset() const noexcept;

    int sample(const NoiseSource& source, SampleIndex n) const;

    friend bool operator==(const StreamExpr&, const StreamExpr&) = default;

private:
    std::variant<Product, Superposition> node_;
};

/// Adds d to every term offset. Throws Error on offset overflow.
Product shift(const Product& p, ShiftOffset d);
Superposition shift(const Superposition& s, ShiftOffset d);
StreamExpr shift(const StreamExpr& e, ShiftOffset d);

Product multiply(const Product& a, const Product& b);
/// Product-only; throws Error("product-only operation") for superpositions.
StreamExpr multiply(const StreamExpr& a, const StreamExpr& b);

/// Throws Error on duplicate members.
StreamExpr superpose(std::vector<Product> members);

/// "P{0,3,5}" for products, "S[P{0},P{1,2}]" for superpositions.
std::string canonical_form(const Product& p);
std::string canonical_form(const StreamExpr& e);

}  // namespace nbl
