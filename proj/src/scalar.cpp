#include "stringalg/scalar.hpp"

#include "stringalg/errors.hpp"

#include <charconv>
#include <limits>
#include <numeric>
#include <ostream>

namespace stringalg {

namespace {

using wide = __int128;

std::int64_t narrow(wide v) {
    if (v > std::numeric_limits<std::int64_t>::max() || v < std::numeric_limits<std::int64_t>::min())
        throw Error(ErrorCode::Overflow, "rational arithmetic overflow");
    return static_cast<std::int64_t>(v);
}

wide gcd_wide(wide a, wide b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b != 0) {
        wide t = a % b;
        a = b;
        b = t;
    }
    return a;
}

std::int64_t mod_pos(wide v, std::uint32_t p) {
    wide r = v % p;
    if (r < 0) r += p;
    return static_cast<std::int64_t>(r);
}

std::int64_t mod_inverse(std::int64_t a, std::uint32_t p) {
    // Fermat: a^(p-2) mod p
    wide base = mod_pos(a, p), result = 1;
    std::uint64_t e = p - 2;
    while (e > 0) {
        if (e & 1U) result = result * base % p;
        base = base * base % p;
        e >>= 1U;
    }
    return static_cast<std::int64_t>(result);
}

Scalar make_rational(wide num, wide den) {
    if (den == 0) throw Error(ErrorCode::OutOfRange, "division by zero");
    if (den < 0) {
        num = -num;
        den = -den;
    }
    wide g = gcd_wide(num, den);
    if (g > 1) {
        num /= g;
        den /= g;
    }
    return Scalar(narrow(num), narrow(den));
}

} // namespace

Scalar::Scalar(std::int64_t num, std::int64_t den) {
    if (den == 0) throw Error(ErrorCode::OutOfRange, "zero denominator");
    wide n = num, d = den;
    if (d < 0) {
        n = -n;
        d = -d;
    }
    wide g = gcd_wide(n, d);
    if (g > 1) {
        n /= g;
        d /= g;
    }
    num_ = narrow(n);
    den_ = narrow(d);
}

Scalar Scalar::residue(std::int64_t value, std::uint32_t prime) {
    Scalar s;
    s.prime_ = prime;
    s.num_ = prime == 0 ? value : mod_pos(value, prime);
    return s;
}

Scalar Scalar::reduced_to(std::uint32_t prime) const {
    if (prime == prime_) return *this;
    if (prime_ != 0) throw Error(ErrorCode::ShapeMismatch, "mixing scalars of different characteristic");
    std::int64_t d = mod_pos(den_, prime);
    if (d == 0) throw Error(ErrorCode::OutOfRange, "denominator vanishes modulo the characteristic");
    return residue(static_cast<std::int64_t>(static_cast<wide>(mod_pos(num_, prime)) * mod_inverse(d, prime) % prime),
                   prime);
}

std::uint32_t Scalar::common_field(const Scalar& a, const Scalar& b) {
    if (a.prime_ == b.prime_) return a.prime_;
    if (a.prime_ == 0) return b.prime_;
    if (b.prime_ == 0) return a.prime_;
    throw Error(ErrorCode::ShapeMismatch, "mixing scalars of different characteristic");
}

Scalar Scalar::operator-() const {
    if (prime_ != 0) return residue(num_ == 0 ? 0 : prime_ - num_, prime_);
    Scalar r = *this;
    r.num_ = narrow(-static_cast<wide>(num_));
    return r;
}

Scalar& Scalar::operator+=(const Scalar& rhs) {
    std::uint32_t p = common_field(*this, rhs);
    if (p != 0) {
        Scalar a = reduced_to(p), b = rhs.reduced_to(p);
        *this = residue(static_cast<std::int64_t>((static_cast<wide>(a.num_) + b.num_) % p), p);
        return *this;
    }
    if (den_ == 1 && rhs.den_ == 1) {
        num_ = narrow(static_cast<wide>(num_) + rhs.num_);
        return *this;
    }
    *this = make_rational(static_cast<wide>(num_) * rhs.den_ + static_cast<wide>(rhs.num_) * den_,
                          static_cast<wide>(den_) * rhs.den_);
    return *this;
}

Scalar& Scalar::operator-=(const Scalar& rhs) { return *this += -rhs; }

Scalar& Scalar::operator*=(const Scalar& rhs) {
    std::uint32_t p = common_field(*this, rhs);
    if (p != 0) {
        Scalar a = reduced_to(p), b = rhs.reduced_to(p);
        *this = residue(static_cast<std::int64_t>(static_cast<wide>(a.num_) * b.num_ % p), p);
        return *this;
    }
    if (num_ == 0 || rhs.num_ == 0) {
        *this = Scalar();
        return *this;
    }
    if (den_ == 1 && rhs.den_ == 1) {
        num_ = narrow(static_cast<wide>(num_) * rhs.num_);
        return *this;
    }
    *this = make_rational(static_cast<wide>(num_) * rhs.num_, static_cast<wide>(den_) * rhs.den_);
    return *this;
}

Scalar& Scalar::operator/=(const Scalar& rhs) { return *this *= rhs.inverse(); }

Scalar Scalar::inverse() const {
    if (num_ == 0) throw Error(ErrorCode::OutOfRange, "division by zero");
    if (prime_ != 0) return residue(mod_inverse(num_, prime_), prime_);
    return make_rational(den_, num_);
}

bool operator==(const Scalar& a, const Scalar& b) {
    std::uint32_t p = Scalar::common_field(a, b);
    if (p == 0) return a.num_ == b.num_ && a.den_ == b.den_;
    return a.reduced_to(p).num_ == b.reduced_to(p).num_;
}

std::string Scalar::to_string() const {
    if (den_ == 1) return std::to_string(num_);
    return std::to_string(num_) + "/" + std::to_string(den_);
}

Scalar Scalar::parse(std::string_view text, std::uint32_t prime) {
    auto parse_int = [&](std::string_view part) {
        std::int64_t v = 0;
        auto [ptr, ec] = std::from_chars(part.data(), part.data() + part.size(), v);
        if (ec != std::errc() || ptr != part.data() + part.size())
            throw Error(ErrorCode::Syntax, "bad scalar '" + std::string(text) + "'");
        return v;
    };
    auto slash = text.find('/');
    Scalar r = slash == std::string_view::npos
                   ? Scalar(parse_int(text))
                   : Scalar(parse_int(text.substr(0, slash)), parse_int(text.substr(slash + 1)));
    return prime == 0 ? r : r.reduced_to(prime);
}

std::ostream& operator<<(std::ostream& os, const Scalar& s) { return os << s.to_string(); }

Field Field::prime(std::uint32_t p) {
    bool ok = p >= 2;
    for (std::uint32_t d = 2; ok && static_cast<std::uint64_t>(d) * d <= p; ++d)
        if (p % d == 0) ok = false;
    if (!ok) throw Error(ErrorCode::OutOfRange, "characteristic " + std::to_string(p) + " is not prime");
    return Field{p};
}

Scalar Field::from_int(std::int64_t v) const { return characteristic == 0 ? Scalar(v) : Scalar::residue(v, characteristic); }

} // namespace stringalg
