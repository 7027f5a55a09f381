#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <variant>

#include <gmpxx.h>

namespace tauq {

/// Element of a base field. Prime-field elements are stored as a residue in
/// [0, p); rationals are stored as a machine integer until an operation needs
/// a GMP rational. The owning Field interprets the value.
class Scalar {
public:
    Scalar() = default;

private:
    friend class Field;
    explicit Scalar(std::int64_t v) : v_(v) {}
    explicit Scalar(mpq_class q) : v_(std::move(q)) {}

    std::variant<std::int64_t, mpq_class> v_{std::int64_t{0}};
};

/// Base field descriptor: either the rationals or F_p for a prime p.
class Field {
public:
    Field() = default;  // rationals

    static Field rationals() { return Field{}; }
    static Field prime(std::uint32_t p);
    /// Accepts "Q" or "F<p>" (p prime).
    static Field parse(std::string_view text);

    bool is_rational() const { return p_ == 0; }
    bool is_finite() const { return p_ != 0; }
    std::uint32_t characteristic() const { return p_; }
    std::string name() const;

    Scalar zero() const { return Scalar{std::int64_t{0}}; }
    Scalar one() const { return Scalar{std::int64_t{1}}; }
    Scalar from_int(std::int64_t v) const;
    Scalar from_rational(const mpq_class& q) const;
    /// Residue / numerator lookup used by fast F_p code paths.
    std::uint32_t residue(const Scalar& a) const;
    mpq_class to_rational(const Scalar& a) const;

    Scalar add(const Scalar& a, const Scalar& b) const;
    Scalar sub(const Scalar& a, const Scalar& b) const;
    Scalar mul(const Scalar& a, const Scalar& b) const;
    Scalar neg(const Scalar& a) const;
    Scalar inv(const Scalar& a) const;  // throws std::domain_error on zero
    Scalar div(const Scalar& a, const Scalar& b) const { return mul(a, inv(b)); }
    /// a += c * b, the elimination kernel.
    void axpy(Scalar& a, const Scalar& c, const Scalar& b) const;

    bool is_zero(const Scalar& a) const;
    bool is_one(const Scalar& a) const;
    bool equal(const Scalar& a, const Scalar& b) const;
    std::string format(const Scalar& a) const;

    friend bool operator==(const Field& a, const Field& b) { return a.p_ == b.p_; }

private:
    explicit Field(std::uint32_t p) : p_(p) {}
    static Scalar normalize(mpq_class q);

    std::uint32_t p_ = 0;
};

bool is_prime(std::uint32_t n);

}  // namespace tauq
