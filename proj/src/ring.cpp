#include "thurston/ring.hpp"

#include <algorithm>
#include <charconv>
#include <numeric>
#include <ostream>
#include <sstream>

namespace thurston {

namespace detail {

using Poly = std::vector<std::uint32_t>; // coefficients, lowest degree first

struct RingImpl {
    Ring::Kind kind = Ring::Kind::Zn;
    std::uint32_t size = 0;
    std::uint32_t p = 0; // characteristic (Fpk) or modulus (Zn)
    std::uint32_t k = 1;
    Poly modulus;
    std::vector<std::uint32_t> powers; // p^i, i = 0..k
    std::vector<std::uint16_t> mul_table; // Fpk with size <= 256
    std::vector<std::uint32_t> units;
    std::vector<std::uint32_t> shapes;
    std::vector<std::uint8_t> unit_flag;

    Poly decode(std::uint32_t index) const {
        Poly c(k);
        for (std::uint32_t i = 0; i < k; ++i) {
            c[i] = index % p;
            index /= p;
        }
        return c;
    }

    std::uint32_t encode(const Poly& c) const {
        std::uint32_t index = 0;
        for (std::uint32_t i = 0; i < k && i < c.size(); ++i) index += c[i] * powers[i];
        return index;
    }

    std::uint32_t poly_mul(std::uint32_t a, std::uint32_t b) const;
    std::uint32_t poly_inverse(std::uint32_t a) const;
};

namespace {

std::uint64_t mod_pow(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
    std::uint64_t r = 1 % m;
    base %= m;
    while (exp > 0) {
        if (exp & 1) r = r * base % m;
        base = base * base % m;
        exp >>= 1;
    }
    return r;
}

void trim(Poly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

// Remainder of a modulo b over F_p; b must be nonzero after trimming.
Poly poly_rem(Poly a, Poly b, std::uint32_t p) {
    trim(a);
    trim(b);
    const std::uint64_t lead_inv = mod_pow(b.back(), p - 2, p);
    while (a.size() >= b.size() && !a.empty()) {
        const std::uint64_t factor = a.back() * lead_inv % p;
        const std::size_t shift = a.size() - b.size();
        for (std::size_t i = 0; i < b.size(); ++i) {
            a[i + shift] = static_cast<std::uint32_t>((a[i + shift] + p - factor * b[i] % p) % p);
        }
        trim(a);
    }
    return a;
}

// (quotient, remainder) of a by b over F_p.
std::pair<Poly, Poly> poly_divmod(Poly a, Poly b, std::uint32_t p) {
    trim(a);
    trim(b);
    Poly q(a.size() >= b.size() ? a.size() - b.size() + 1 : 0, 0);
    const std::uint64_t lead_inv = mod_pow(b.back(), p - 2, p);
    while (a.size() >= b.size() && !a.empty()) {
        const std::uint64_t factor = a.back() * lead_inv % p;
        const std::size_t shift = a.size() - b.size();
        q[shift] = static_cast<std::uint32_t>(factor);
        for (std::size_t i = 0; i < b.size(); ++i) {
            a[i + shift] = static_cast<std::uint32_t>((a[i + shift] + p - factor * b[i] % p) % p);
        }
        trim(a);
    }
    return {q, a};
}

Poly poly_sub_mul(const Poly& a, const Poly& q, const Poly& b, std::uint32_t p) {
    // a - q*b
    Poly r(std::max(a.size(), q.size() + b.size()), 0);
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i];
    for (std::size_t i = 0; i < q.size(); ++i) {
        for (std::size_t j = 0; j < b.size(); ++j) {
            const std::uint64_t t = static_cast<std::uint64_t>(q[i]) * b[j] % p;
            r[i + j] = static_cast<std::uint32_t>((r[i + j] + p - t) % p);
        }
    }
    trim(r);
    return r;
}

bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d) {
        if (n % d == 0) return false;
    }
    return true;
}

// Exhaustive search for a monic divisor of degree 1..k/2.
bool is_irreducible(const Poly& f, std::uint32_t p, std::uint32_t k) {
    for (std::uint32_t d = 1; d <= k / 2; ++d) {
        std::uint64_t count = 1;
        for (std::uint32_t i = 0; i < d; ++i) count *= p;
        for (std::uint64_t code = 0; code < count; ++code) {
            Poly g(d + 1, 0);
            std::uint64_t c = code;
            for (std::uint32_t i = 0; i < d; ++i) {
                g[i] = static_cast<std::uint32_t>(c % p);
                c /= p;
            }
            g[d] = 1;
            if (poly_rem(f, g, p).empty()) return false;
        }
    }
    return true;
}

std::uint32_t parse_uint(std::string_view text, std::string_view what) {
    std::uint64_t value = 0;
    const char* first = text.data();
    const char* last = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (text.empty() || ec != std::errc{} || ptr != last || value > 0xffffffffull) {
        throw Error(Errc::ParseError, "invalid " + std::string(what) + " '" + std::string(text) + "'");
    }
    return static_cast<std::uint32_t>(value);
}

std::string_view strip(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\n' || s.front() == '\r')) {
        s.remove_prefix(1);
    }
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\n' || s.back() == '\r')) {
        s.remove_suffix(1);
    }
    return s;
}

void finish(RingImpl& r) {
    r.unit_flag.assign(r.size, 0);
    if (r.kind == Ring::Kind::Zn) {
        for (std::uint32_t a = 0; a < r.size; ++a) r.unit_flag[a] = std::gcd(a, r.size) == 1;
    } else {
        for (std::uint32_t a = 1; a < r.size; ++a) r.unit_flag[a] = 1;
        if (r.size <= 256) {
            r.mul_table.resize(static_cast<std::size_t>(r.size) * r.size);
            for (std::uint32_t a = 0; a < r.size; ++a) {
                for (std::uint32_t b = 0; b < r.size; ++b) {
                    r.mul_table[a * r.size + b] = static_cast<std::uint16_t>(r.poly_mul(a, b));
                }
            }
        }
    }
    for (std::uint32_t a = 0; a < r.size; ++a) {
        if (r.unit_flag[a]) r.units.push_back(a);
    }
    // one is index 1 in both encodings
    for (std::uint32_t a = 0; a < r.size; ++a) {
        std::uint32_t one_minus;
        if (r.kind == Ring::Kind::Zn) {
            one_minus = (1 + r.size - a) % r.size;
        } else {
            Poly c = r.decode(a);
            for (auto& ci : c) ci = (r.p - ci) % r.p;
            c[0] = (c[0] + 1) % r.p;
            one_minus = r.encode(c);
        }
        if (r.unit_flag[a] && r.unit_flag[one_minus]) r.shapes.push_back(a);
    }
}

} // namespace

std::uint32_t RingImpl::poly_mul(std::uint32_t a, std::uint32_t b) const {
    const Poly x = decode(a);
    const Poly y = decode(b);
    Poly prod(2 * k, 0);
    for (std::uint32_t i = 0; i < k; ++i) {
        if (x[i] == 0) continue;
        for (std::uint32_t j = 0; j < k; ++j) {
            prod[i + j] = static_cast<std::uint32_t>((prod[i + j] + static_cast<std::uint64_t>(x[i]) * y[j]) % p);
        }
    }
    // reduce by the monic modulus, top degree first
    for (std::uint32_t d = 2 * k - 1; d >= k; --d) {
        const std::uint64_t c = prod[d];
        if (c == 0) continue;
        prod[d] = 0;
        for (std::uint32_t i = 0; i < k; ++i) {
            const std::uint64_t t = c * modulus[i] % p;
            prod[d - k + i] = static_cast<std::uint32_t>((prod[d - k + i] + p - t) % p);
        }
    }
    prod.resize(k);
    return encode(prod);
}

// Extended Euclid in F_p[x] against the modulus polynomial.
std::uint32_t RingImpl::poly_inverse(std::uint32_t a) const {
    Poly r0 = modulus;
    Poly r1 = decode(a);
    trim(r1);
    Poly s0;
    Poly s1{1};
    while (!r1.empty()) {
        auto [q, r2] = poly_divmod(r0, r1, p);
        Poly s2 = poly_sub_mul(s0, q, s1, p);
        r0 = std::move(r1);
        r1 = std::move(r2);
        s0 = std::move(s1);
        s1 = std::move(s2);
    }
    // r0 is a nonzero constant since the modulus is irreducible
    const std::uint64_t c_inv = mod_pow(r0[0], p - 2, p);
    Poly result(k, 0);
    for (std::size_t i = 0; i < s0.size() && i < k; ++i) {
        result[i] = static_cast<std::uint32_t>(s0[i] * c_inv % p);
    }
    return encode(result);
}

} // namespace detail

using detail::RingImpl;

Ring Ring::integers_mod(std::uint32_t n) {
    if (n < 2) throw Error(Errc::ModulusTooSmall, "Z/" + std::to_string(n) + ": modulus must be at least 2");
    if (n > max_size) throw Error(Errc::RingTooLarge, "Z/" + std::to_string(n) + " exceeds 65536 elements");
    auto impl = std::make_shared<RingImpl>();
    impl->kind = Kind::Zn;
    impl->size = n;
    impl->p = n;
    impl->k = 1;
    impl->powers = {1, n};
    detail::finish(*impl);
    return Ring(std::move(impl));
}

Ring Ring::galois_field(std::uint32_t p, std::uint32_t k, std::vector<std::uint32_t> modulus) {
    if (!detail::is_prime(p)) throw Error(Errc::NotPrime, std::to_string(p) + " is not prime");
    if (k < 1) throw Error(Errc::ParseError, "field degree must be at least 1");
    std::uint64_t size = 1;
    for (std::uint32_t i = 0; i < k; ++i) {
        size *= p;
        if (size > max_size) {
            throw Error(Errc::RingTooLarge, "F_" + std::to_string(p) + "^" + std::to_string(k) + " exceeds 65536 elements");
        }
    }
    if (modulus.size() != k + 1) {
        throw Error(Errc::ParseError, "modulus polynomial needs " + std::to_string(k + 1) + " coefficients");
    }
    for (auto c : modulus) {
        if (c >= p) throw Error(Errc::ParseError, "modulus coefficient " + std::to_string(c) + " not reduced mod " + std::to_string(p));
    }
    if (modulus.back() != 1) throw Error(Errc::ParseError, "modulus polynomial must be monic");
    if (!detail::is_irreducible(modulus, p, k)) {
        throw Error(Errc::ReduciblePolynomial, "modulus polynomial is reducible over F_" + std::to_string(p));
    }
    auto impl = std::make_shared<RingImpl>();
    impl->kind = Kind::Fpk;
    impl->size = static_cast<std::uint32_t>(size);
    impl->p = p;
    impl->k = k;
    impl->modulus = std::move(modulus);
    impl->powers.resize(k + 1);
    impl->powers[0] = 1;
    for (std::uint32_t i = 1; i <= k; ++i) impl->powers[i] = impl->powers[i - 1] * p;
    detail::finish(*impl);
    return Ring(std::move(impl));
}

Ring Ring::parse(std::string_view spec) {
    const std::string_view s = detail::strip(spec);
    if (s.size() > 2 && s.substr(0, 2) == "Z/") {
        return integers_mod(detail::parse_uint(s.substr(2), "modulus"));
    }
    if (s.size() > 2 && s.substr(0, 2) == "F:") {
        std::string_view rest = s.substr(2);
        const auto c1 = rest.find(':');
        if (c1 == std::string_view::npos) throw Error(Errc::ParseError, "expected F:<p>:<k>:<c0,...,ck>, got '" + std::string(s) + "'");
        const auto c2 = rest.find(':', c1 + 1);
        if (c2 == std::string_view::npos) throw Error(Errc::ParseError, "expected F:<p>:<k>:<c0,...,ck>, got '" + std::string(s) + "'");
        const std::uint32_t p = detail::parse_uint(rest.substr(0, c1), "characteristic");
        const std::uint32_t k = detail::parse_uint(rest.substr(c1 + 1, c2 - c1 - 1), "degree");
        std::vector<std::uint32_t> coeffs;
        std::string_view list = rest.substr(c2 + 1);
        while (true) {
            const auto comma = list.find(',');
            coeffs.push_back(detail::parse_uint(list.substr(0, comma), "coefficient"));
            if (comma == std::string_view::npos) break;
            list.remove_prefix(comma + 1);
        }
        return galois_field(p, k, std::move(coeffs));
    }
    throw Error(Errc::ParseError, "unrecognized ring spec '" + std::string(s) + "'");
}

Ring::Kind Ring::kind() const noexcept { return impl_->kind; }
std::uint32_t Ring::size() const noexcept { return impl_->size; }
std::uint32_t Ring::characteristic() const noexcept { return impl_->p; }
std::uint32_t Ring::degree() const noexcept { return impl_->k; }
const std::vector<std::uint32_t>& Ring::modulus() const noexcept { return impl_->modulus; }
const std::vector<std::uint32_t>& Ring::unit_indices() const noexcept { return impl_->units; }
const std::vector<std::uint32_t>& Ring::shape_indices() const noexcept { return impl_->shapes; }

std::string Ring::spec() const {
    if (impl_->kind == Kind::Zn) return "Z/" + std::to_string(impl_->size);
    std::string s = "F:" + std::to_string(impl_->p) + ":" + std::to_string(impl_->k) + ":";
    for (std::size_t i = 0; i < impl_->modulus.size(); ++i) {
        if (i) s += ',';
        s += std::to_string(impl_->modulus[i]);
    }
    return s;
}

RingElement Ring::zero() const { return RingElement(*this, 0); }
RingElement Ring::one() const { return RingElement(*this, 1); }

RingElement Ring::from_integer(std::int64_t value) const {
    const std::int64_t m = impl_->p;
    const std::int64_t r = ((value % m) + m) % m;
    // for Fpk the prime subfield sits at indices 0..p-1
    return RingElement(*this, static_cast<std::uint32_t>(r));
}

RingElement Ring::from_index(std::uint32_t index) const {
    if (index >= impl_->size) throw Error(Errc::ParseError, "element index " + std::to_string(index) + " out of range for " + spec());
    return RingElement(*this, index);
}

RingElement Ring::from_coefficients(std::span<const std::uint32_t> coeffs) const {
    if (coeffs.size() != impl_->k) {
        throw Error(Errc::ParseError, "expected " + std::to_string(impl_->k) + " coefficients for " + spec());
    }
    detail::Poly c(coeffs.begin(), coeffs.end());
    for (auto ci : c) {
        if (ci >= impl_->p) throw Error(Errc::ParseError, "coefficient " + std::to_string(ci) + " not reduced for " + spec());
    }
    return RingElement(*this, impl_->encode(c));
}

std::vector<RingElement> Ring::elements() const {
    std::vector<RingElement> out;
    out.reserve(impl_->size);
    for (std::uint32_t i = 0; i < impl_->size; ++i) out.emplace_back(*this, i);
    return out;
}

std::vector<RingElement> Ring::shapes() const {
    std::vector<RingElement> out;
    for (auto i : impl_->shapes) out.emplace_back(*this, i);
    return out;
}

std::vector<RingElement> Ring::units() const {
    std::vector<RingElement> out;
    for (auto i : impl_->units) out.emplace_back(*this, i);
    return out;
}

std::uint32_t Ring::add(std::uint32_t a, std::uint32_t b) const noexcept {
    const RingImpl& r = *impl_;
    if (r.kind == Kind::Zn || r.k == 1) return (a + b) % r.p;
    std::uint32_t out = 0;
    for (std::uint32_t i = 0; i < r.k; ++i) {
        out += ((a % r.p + b % r.p) % r.p) * r.powers[i];
        a /= r.p;
        b /= r.p;
    }
    return out;
}

std::uint32_t Ring::neg(std::uint32_t a) const noexcept {
    const RingImpl& r = *impl_;
    if (r.kind == Kind::Zn || r.k == 1) return (r.p - a) % r.p;
    std::uint32_t out = 0;
    for (std::uint32_t i = 0; i < r.k; ++i) {
        out += ((r.p - a % r.p) % r.p) * r.powers[i];
        a /= r.p;
    }
    return out;
}

std::uint32_t Ring::sub(std::uint32_t a, std::uint32_t b) const noexcept { return add(a, neg(b)); }

std::uint32_t Ring::mul(std::uint32_t a, std::uint32_t b) const noexcept {
    const RingImpl& r = *impl_;
    if (r.kind == Kind::Zn || r.k == 1) {
        return static_cast<std::uint32_t>(static_cast<std::uint64_t>(a) * b % r.p);
    }
    if (!r.mul_table.empty()) return r.mul_table[a * r.size + b];
    return r.poly_mul(a, b);
}

bool Ring::is_unit(std::uint32_t a) const noexcept { return a < impl_->size && impl_->unit_flag[a]; }

std::uint32_t Ring::inverse(std::uint32_t a) const {
    if (!is_unit(a)) throw Error(Errc::NotAUnit, format(a) + " is not a unit in " + spec());
    const RingImpl& r = *impl_;
    if (r.kind == Kind::Zn || r.k == 1) {
        // extended Euclid on (a, n)
        std::int64_t old_r = a, cur_r = r.p;
        std::int64_t old_s = 1, cur_s = 0;
        while (cur_r != 0) {
            const std::int64_t q = old_r / cur_r;
            std::tie(old_r, cur_r) = std::make_pair(cur_r, old_r - q * cur_r);
            std::tie(old_s, cur_s) = std::make_pair(cur_s, old_s - q * cur_s);
        }
        const std::int64_t n = r.p;
        return static_cast<std::uint32_t>(((old_s % n) + n) % n);
    }
    return r.poly_inverse(a);
}

bool Ring::generates_unit_ideal(std::uint32_t a, std::uint32_t b) const noexcept {
    if (impl_->kind == Kind::Fpk) return a != 0 || b != 0;
    return std::gcd(std::gcd(a, b), impl_->size) == 1;
}

std::vector<std::uint32_t> Ring::coefficients(std::uint32_t index) const { return impl_->decode(index); }

std::string Ring::format(std::uint32_t index) const {
    if (impl_->kind == Kind::Zn) return std::to_string(index);
    std::string s = "[";
    const auto c = impl_->decode(index);
    for (std::size_t i = 0; i < c.size(); ++i) {
        if (i) s += ',';
        s += std::to_string(c[i]);
    }
    return s + "]";
}

bool operator==(const Ring& a, const Ring& b) noexcept {
    if (a.impl_ == b.impl_) return true;
    if (!a.impl_ || !b.impl_) return false;
    return a.impl_->kind == b.impl_->kind && a.impl_->size == b.impl_->size && a.impl_->p == b.impl_->p &&
           a.impl_->k == b.impl_->k && a.impl_->modulus == b.impl_->modulus;
}

// ---------------------------------------------------------------------------

const Ring& RingElement::ring() const {
    if (!valid_) throw Error(Errc::RingMismatch, "element has no ring");
    return ring_;
}

void require_same_ring(const RingElement& a, const RingElement& b) {
    if (!a.valid() || !b.valid()) throw Error(Errc::RingMismatch, "operation on an element with no ring");
    if (!(a.ring() == b.ring())) {
        throw Error(Errc::RingMismatch, "elements of " + a.ring().spec() + " and " + b.ring().spec() + " mixed");
    }
}

bool RingElement::is_one() const { return ring().size() > 1 && index_ == 1; }

bool RingElement::is_unit() const { return ring().is_unit(index_); }

RingElement RingElement::inverse() const { return RingElement(ring(), ring().inverse(index_)); }

RingElement RingElement::pow(std::uint64_t exponent) const {
    const Ring& r = ring();
    std::uint32_t result = 1, base = index_;
    while (exponent > 0) {
        if (exponent & 1) result = r.mul(result, base);
        base = r.mul(base, base);
        exponent >>= 1;
    }
    return RingElement(r, result);
}

std::string RingElement::to_string() const {
    if (!valid_) return "<none>";
    return ring_.format(index_);
}

RingElement operator+(const RingElement& a, const RingElement& b) {
    require_same_ring(a, b);
    return RingElement(a.ring_, a.ring_.add(a.index_, b.index_));
}

RingElement operator-(const RingElement& a, const RingElement& b) {
    require_same_ring(a, b);
    return RingElement(a.ring_, a.ring_.sub(a.index_, b.index_));
}

RingElement operator*(const RingElement& a, const RingElement& b) {
    require_same_ring(a, b);
    return RingElement(a.ring_, a.ring_.mul(a.index_, b.index_));
}

RingElement operator-(const RingElement& a) { return RingElement(a.ring(), a.ring_.neg(a.index_)); }

bool operator==(const RingElement& a, const RingElement& b) {
    require_same_ring(a, b);
    return a.index_ == b.index_;
}

std::ostream& operator<<(std::ostream& os, const RingElement& x) { return os << x.to_string(); }

} // namespace thurston
