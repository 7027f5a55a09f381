#include "tauq/field.hpp"

#include <charconv>
#include <stdexcept>

#include "tauq/errors.hpp"

namespace tauq {

namespace {

std::int64_t mod(std::int64_t v, std::uint32_t p) {
    std::int64_t r = v % static_cast<std::int64_t>(p);
    return r < 0 ? r + p : r;
}

// Small-integer fast path bound: products of two such values fit in int64.
constexpr std::int64_t kSmall = std::int64_t{1} << 30;

bool small(std::int64_t v) { return v > -kSmall && v < kSmall; }

mpq_class as_mpq(const std::variant<std::int64_t, mpq_class>& v) {
    if (auto* i = std::get_if<std::int64_t>(&v)) return mpq_class(mpz_class(static_cast<long>(*i)));
    return std::get<mpq_class>(v);
}

}  // namespace

bool is_prime(std::uint32_t n) {
    if (n < 2) return false;
    for (std::uint32_t d = 2; static_cast<std::uint64_t>(d) * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

Field Field::prime(std::uint32_t p) {
    if (!is_prime(p)) throw PreconditionError("field characteristic " + std::to_string(p) + " is not prime");
    // Keep products of residues inside int64.
    if (p >= (1u << 31)) throw PreconditionError("prime " + std::to_string(p) + " too large");
    return Field{p};
}

Field Field::parse(std::string_view text) {
    if (text == "Q") return rationals();
    if (text.size() >= 2 && text[0] == 'F') {
        std::uint32_t p = 0;
        auto [ptr, ec] = std::from_chars(text.data() + 1, text.data() + text.size(), p);
        if (ec == std::errc{} && ptr == text.data() + text.size()) return prime(p);
    }
    throw PreconditionError("unknown field '" + std::string(text) + "' (expected Q or F<p>)");
}

std::string Field::name() const { return p_ == 0 ? "Q" : "F" + std::to_string(p_); }

Scalar Field::normalize(mpq_class q) {
    q.canonicalize();
    if (q.get_den() == 1 && q.get_num().fits_slong_p()) {
        long v = q.get_num().get_si();
        if (small(v)) return Scalar{static_cast<std::int64_t>(v)};
    }
    return Scalar{std::move(q)};
}

Scalar Field::from_int(std::int64_t v) const {
    if (p_ != 0) return Scalar{mod(v, p_)};
    if (small(v)) return Scalar{v};
    return Scalar{mpq_class(mpz_class(static_cast<long>(v)))};
}

Scalar Field::from_rational(const mpq_class& q) const {
    if (p_ == 0) return normalize(q);
    mpz_class num = q.get_num() % p_;
    mpz_class den = q.get_den() % p_;
    if (den == 0) throw PreconditionError("denominator vanishes in " + name());
    Scalar n = from_int(num.get_si());
    return mul(n, inv(from_int(den.get_si())));
}

std::uint32_t Field::residue(const Scalar& a) const {
    if (p_ == 0) throw std::logic_error("residue() on the rationals");
    return static_cast<std::uint32_t>(std::get<std::int64_t>(a.v_));
}

mpq_class Field::to_rational(const Scalar& a) const { return as_mpq(a.v_); }

Scalar Field::add(const Scalar& a, const Scalar& b) const {
    auto* x = std::get_if<std::int64_t>(&a.v_);
    auto* y = std::get_if<std::int64_t>(&b.v_);
    if (p_ != 0) {
        std::int64_t s = *x + *y;
        return Scalar{s >= p_ ? s - p_ : s};
    }
    if (x && y) {
        std::int64_t s = *x + *y;
        if (small(s)) return Scalar{s};
    }
    return normalize(as_mpq(a.v_) + as_mpq(b.v_));
}

Scalar Field::sub(const Scalar& a, const Scalar& b) const { return add(a, neg(b)); }

Scalar Field::neg(const Scalar& a) const {
    if (auto* x = std::get_if<std::int64_t>(&a.v_)) {
        if (p_ != 0) return Scalar{*x == 0 ? 0 : p_ - *x};
        return Scalar{-*x};
    }
    return Scalar{mpq_class(-std::get<mpq_class>(a.v_))};
}

Scalar Field::mul(const Scalar& a, const Scalar& b) const {
    auto* x = std::get_if<std::int64_t>(&a.v_);
    auto* y = std::get_if<std::int64_t>(&b.v_);
    if (p_ != 0) return Scalar{(*x * *y) % p_};
    if (x && y) {
        std::int64_t m = *x * *y;
        if (small(m)) return Scalar{m};
    }
    return normalize(as_mpq(a.v_) * as_mpq(b.v_));
}

Scalar Field::inv(const Scalar& a) const {
    if (is_zero(a)) throw std::domain_error("inverse of zero");
    if (p_ != 0) {
        // Fermat: a^(p-2).
        std::int64_t base = std::get<std::int64_t>(a.v_), r = 1;
        for (std::uint32_t e = p_ - 2; e; e >>= 1) {
            if (e & 1) r = r * base % p_;
            base = base * base % p_;
        }
        return Scalar{r};
    }
    mpq_class q = as_mpq(a.v_);
    return normalize(1 / q);
}

void Field::axpy(Scalar& a, const Scalar& c, const Scalar& b) const {
    if (p_ != 0) {
        std::int64_t& x = std::get<std::int64_t>(a.v_);
        x = (x + std::get<std::int64_t>(c.v_) * std::get<std::int64_t>(b.v_)) % p_;
        return;
    }
    a = add(a, mul(c, b));
}

bool Field::is_zero(const Scalar& a) const {
    if (auto* x = std::get_if<std::int64_t>(&a.v_)) return *x == 0;
    return std::get<mpq_class>(a.v_) == 0;
}

bool Field::is_one(const Scalar& a) const {
    if (auto* x = std::get_if<std::int64_t>(&a.v_)) return *x == 1;
    return std::get<mpq_class>(a.v_) == 1;
}

bool Field::equal(const Scalar& a, const Scalar& b) const { return is_zero(sub(a, b)); }

std::string Field::format(const Scalar& a) const {
    if (auto* x = std::get_if<std::int64_t>(&a.v_)) return std::to_string(*x);
    return std::get<mpq_class>(a.v_).get_str();
}

}  // namespace tauq
