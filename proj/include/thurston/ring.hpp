#pragma once

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "thurston/error.hpp"

namespace thurston {

namespace detail {
struct RingImpl;
}

class RingElement;

/// A finite commutative ring with identity: either Z/n or F_{p^k} given by a
/// monic irreducible modulus polynomial.
///
/// Elements are indexed 0..size()-1. For Z/n the index is the residue; for
/// F_{p^k} it is sum c_i p^i over the coefficient vector (c_0, ..., c_{k-1}),
/// so ascending index is the enumeration order used throughout the library.
///
/// Ring is a cheap handle to immutable shared state. Two handles compare equal
/// when they describe the same ring, even if they were built separately.
class Ring {
public:
    enum class Kind { Zn, Fpk };

    static constexpr std::uint32_t max_size = 1u << 16;

    /// Parses `Z/<n>` or `F:<p>:<k>:<c0>,...,<ck>`.
    static Ring parse(std::string_view spec);
    static Ring integers_mod(std::uint32_t n);
    static Ring galois_field(std::uint32_t p, std::uint32_t k, std::vector<std::uint32_t> modulus);

    Kind kind() const noexcept;
    std::uint32_t size() const noexcept;
    std::uint32_t characteristic() const noexcept;
    std::uint32_t degree() const noexcept;
    /// Modulus polynomial coefficients c_0..c_k (Fpk only; empty for Zn).
    const std::vector<std::uint32_t>& modulus() const noexcept;
    /// Canonical ring-spec string.
    std::string spec() const;

    RingElement zero() const;
    RingElement one() const;
    /// Image of an integer under Z -> R.
    RingElement from_integer(std::int64_t value) const;
    RingElement from_index(std::uint32_t index) const;
    RingElement from_coefficients(std::span<const std::uint32_t> coeffs) const;

    /// All elements in ascending index order.
    std::vector<RingElement> elements() const;
    /// Sh(R) = { x : x and 1-x are units }, in enumeration order.
    std::vector<RingElement> shapes() const;
    std::vector<RingElement> units() const;
    const std::vector<std::uint32_t>& unit_indices() const noexcept;
    const std::vector<std::uint32_t>& shape_indices() const noexcept;

    // Index-level arithmetic. No ring checks; used by the hot loops.
    std::uint32_t add(std::uint32_t a, std::uint32_t b) const noexcept;
    std::uint32_t sub(std::uint32_t a, std::uint32_t b) const noexcept;
    std::uint32_t neg(std::uint32_t a) const noexcept;
    std::uint32_t mul(std::uint32_t a, std::uint32_t b) const noexcept;
    bool is_unit(std::uint32_t a) const noexcept;
    /// Throws NotAUnit.
    std::uint32_t inverse(std::uint32_t a) const;
    /// True iff the ideal (a, b) is the whole ring.
    bool generates_unit_ideal(std::uint32_t a, std::uint32_t b) const noexcept;

    std::vector<std::uint32_t> coefficients(std::uint32_t index) const;
    std::string format(std::uint32_t index) const;

    friend bool operator==(const Ring& a, const Ring& b) noexcept;

private:
    explicit Ring(std::shared_ptr<const detail::RingImpl> impl) : impl_(std::move(impl)) {}

    std::shared_ptr<const detail::RingImpl> impl_;

    friend class RingElement;
};

/// An element tagged with its ring. Mixing rings in one operation throws
/// RingMismatch; a default-constructed element belongs to no ring and every
/// operation on it throws.
class RingElement {
public:
    RingElement() = default;
    RingElement(Ring ring, std::uint32_t index) : ring_(std::move(ring)), index_(index), valid_(true) {}

    bool valid() const noexcept { return valid_; }
    const Ring& ring() const;
    std::uint32_t index() const noexcept { return index_; }

    bool is_zero() const noexcept { return valid_ && index_ == 0; }
    bool is_one() const;
    bool is_unit() const;
    /// Throws NotAUnit.
    RingElement inverse() const;
    RingElement pow(std::uint64_t exponent) const;

    std::string to_string() const;

    friend RingElement operator+(const RingElement& a, const RingElement& b);
    friend RingElement operator-(const RingElement& a, const RingElement& b);
    friend RingElement operator*(const RingElement& a, const RingElement& b);
    friend RingElement operator-(const RingElement& a);

    RingElement& operator+=(const RingElement& b) { return *this = *this + b; }
    RingElement& operator-=(const RingElement& b) { return *this = *this - b; }
    RingElement& operator*=(const RingElement& b) { return *this = *this * b; }

    /// Ring equality. Throws RingMismatch across rings.
    friend bool operator==(const RingElement& a, const RingElement& b);

private:
    Ring ring_{nullptr};
    std::uint32_t index_ = 0;
    bool valid_ = false;
};

/// Throws RingMismatch unless both elements belong to the same ring.
void require_same_ring(const RingElement& a, const RingElement& b);

std::ostream& operator<<(std::ostream& os, const RingElement& x);

} // namespace thurston
