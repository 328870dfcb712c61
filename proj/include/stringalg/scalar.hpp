#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>

namespace stringalg {

// Exact field element: a reduced rational with 64-bit parts, or a residue
// modulo a prime. Rationals combine with residues by reduction mod p.
// Rational overflow throws Error(Overflow) instead of wrapping.
class Scalar {
public:
    constexpr Scalar() noexcept = default;
    Scalar(std::int64_t value) noexcept : num_(value) {} // NOLINT(google-explicit-constructor)
    Scalar(std::int64_t num, std::int64_t den);

    static Scalar residue(std::int64_t value, std::uint32_t prime);

    std::uint32_t characteristic() const noexcept { return prime_; }
    bool is_zero() const noexcept { return num_ == 0; }
    bool is_one() const noexcept { return num_ == 1 && den_ == 1; }
    std::int64_t numerator() const noexcept { return num_; }
    std::int64_t denominator() const noexcept { return den_; }

    Scalar operator-() const;
    Scalar& operator+=(const Scalar& rhs);
    Scalar& operator-=(const Scalar& rhs);
    Scalar& operator*=(const Scalar& rhs);
    Scalar& operator/=(const Scalar& rhs);

    friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
    friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
    friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
    friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }
    friend bool operator==(const Scalar& a, const Scalar& b);

    Scalar inverse() const;

    // "3", "-1/2"; residues print as their representative in [0, p).
    std::string to_string() const;
    static Scalar parse(std::string_view text, std::uint32_t prime = 0);

private:
    Scalar reduced_to(std::uint32_t prime) const;
    static std::uint32_t common_field(const Scalar& a, const Scalar& b);

    std::int64_t num_ = 0;
    std::int64_t den_ = 1;
    std::uint32_t prime_ = 0;
};

std::ostream& operator<<(std::ostream& os, const Scalar& s);

// Ground field selector: characteristic 0 means exact rationals.
struct Field {
    std::uint32_t characteristic = 0;

    static Field rationals() { return {}; }
    static Field prime(std::uint32_t p); // throws OutOfRange unless p is prime

    Scalar one() const { return from_int(1); }
    Scalar zero() const { return from_int(0); }
    Scalar from_int(std::int64_t v) const;
};

} // namespace stringalg
