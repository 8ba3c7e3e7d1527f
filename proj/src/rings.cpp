#include "kzero/rings.hpp"

#include <algorithm>
#include <sstream>

#include "kzero/checked.hpp"
#include "kzero/errors.hpp"

namespace kzero::rings {

using detail::add_i64;
using detail::mul_i64;
using detail::neg_i64;
using detail::sub_i64;

namespace {

bool is_prime_power(std::int64_t n) {
    for (std::int64_t d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
            while (n % d == 0) n /= d;
            return n == 1;
        }
    }
    return n > 1; // n itself prime
}

std::int64_t norm_mod(std::int64_t x, std::int64_t n) {
    x %= n;
    return x < 0 ? x + n : x;
}

std::string poly_str(const poly::Coeffs& c, const std::string& var) {
    if (c.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (int i = poly::deg(c); i >= 0; --i) {
        if (c[i] == 0) continue;
        if (!first) os << "+";
        first = false;
        if (i == 0 || c[i] != 1) os << c[i];
        if (i > 0) {
            if (c[i] != 1) os << "*";
            os << var;
            if (i > 1) os << "^" << i;
        }
    }
    return os.str();
}

} // namespace

Ring Ring::integers() {
    auto d = std::make_shared<Data>();
    d->kind = RingKind::Integers;
    return Ring(std::move(d));
}

// Scalar moduli are capped so that products of two reduced residues never
// overflow int64.
constexpr std::int64_t kMaxScalarModulus = std::int64_t{1} << 31;

Ring Ring::integers_mod(std::int64_t n) {
    if (n < 2) throw UsageError("IntegersMod requires n >= 2");
    if (n > kMaxScalarModulus) throw ResourceError("IntegersMod modulus too large");
    auto d = std::make_shared<Data>();
    d->kind = RingKind::IntegersMod;
    d->n = n;
    d->field = poly::is_prime(n);
    d->local = is_prime_power(n);
    return Ring(std::move(d));
}

Ring Ring::prime_field(std::int64_t p) {
    if (p > kMaxScalarModulus) throw ResourceError("PrimeField modulus too large");
    if (!poly::is_prime(p)) throw UsageError("PrimeField modulus must be prime");
    auto d = std::make_shared<Data>();
    d->kind = RingKind::PrimeField;
    d->n = p;
    d->field = true;
    d->local = true;
    return Ring(std::move(d));
}

Ring Ring::poly_ring(std::int64_t p, std::string var) {
    if (!poly::is_prime(p)) throw UsageError("PolyRing base must be a prime field");
    if (var.empty()) throw UsageError("PolyRing needs a variable name");
    auto d = std::make_shared<Data>();
    d->kind = RingKind::PolyRing;
    d->n = p;
    d->var = std::move(var);
    return Ring(std::move(d));
}

Ring Ring::poly_quot(std::int64_t p, poly::Coeffs modulus, std::string var) {
    if (!poly::is_prime(p)) throw UsageError("PolyQuot base must be a prime field");
    if (var.empty()) throw UsageError("PolyQuot needs a variable name");
    modulus = poly::canon(std::move(modulus), p);
    if (poly::deg(modulus) < 1 || !poly::is_monic(modulus))
        throw UsageError("PolyQuot modulus must be monic of degree >= 1");
    auto d = std::make_shared<Data>();
    d->kind = RingKind::PolyQuot;
    d->n = p;
    d->var = std::move(var);
    d->fmod = std::move(modulus);
    auto facs = poly::factor(d->fmod, p);
    d->local = facs.factors.size() == 1;
    d->field = d->local && facs.factors[0].mult == 1;
    return Ring(std::move(d));
}

bool Ring::is_finite() const {
    switch (data_->kind) {
    case RingKind::Integers:
    case RingKind::PolyRing: return false;
    default: return true;
    }
}

bool Ring::is_euclidean() const {
    switch (data_->kind) {
    case RingKind::Integers:
    case RingKind::PolyRing: return true;
    default: return data_->field; // fields trivially
    }
}

const poly::Coeffs& Ring::quot_modulus() const {
    if (data_->kind != RingKind::PolyQuot) throw UsageError("quot_modulus: not a polynomial quotient ring");
    return data_->fmod;
}

const std::string& Ring::variable() const {
    if (data_->kind != RingKind::PolyRing && data_->kind != RingKind::PolyQuot)
        throw UsageError("variable: not a polynomial ring");
    return data_->var;
}

bool Ring::operator==(const Ring& other) const {
    if (data_ == other.data_) return true;
    if (data_->kind != other.data_->kind) return false;
    return data_->n == other.data_->n && data_->var == other.data_->var && data_->fmod == other.data_->fmod;
}

RingElem Ring::make(std::vector<std::int64_t> payload) const { return RingElem(*this, std::move(payload)); }

RingElem Ring::zero() const {
    switch (data_->kind) {
    case RingKind::PolyRing:
    case RingKind::PolyQuot: return make({});
    default: return make({0});
    }
}

RingElem Ring::one() const { return from_int(1); }

RingElem Ring::from_int(std::int64_t v) const {
    switch (data_->kind) {
    case RingKind::Integers: return make({v});
    case RingKind::IntegersMod:
    case RingKind::PrimeField: return make({norm_mod(v, data_->n)});
    case RingKind::PolyRing:
    case RingKind::PolyQuot: return from_coeffs({v});
    }
    throw InternalError("bad ring kind");
}

RingElem Ring::from_coeffs(poly::Coeffs c) const {
    switch (data_->kind) {
    case RingKind::PolyRing: return make(poly::canon(std::move(c), data_->n));
    case RingKind::PolyQuot: {
        auto r = poly::rem(poly::canon(std::move(c), data_->n), data_->fmod, data_->n);
        return make(std::move(r));
    }
    default:
        if (c.size() > 1) throw UsageError("coefficient list on a scalar ring");
        return from_int(c.empty() ? 0 : c[0]);
    }
}

void Ring::check_owner(const RingElem& a) const {
    if (a.ring() != *this) throw UsageError("mixed-ring operands");
}

RingElem Ring::add(const RingElem& a, const RingElem& b) const {
    check_owner(a);
    check_owner(b);
    switch (data_->kind) {
    case RingKind::Integers: return make({add_i64(a.payload()[0], b.payload()[0])});
    case RingKind::IntegersMod:
    case RingKind::PrimeField: return make({norm_mod(a.payload()[0] + b.payload()[0], data_->n)});
    default: return make(poly::add(a.payload(), b.payload(), data_->n));
    }
}

RingElem Ring::sub(const RingElem& a, const RingElem& b) const { return add(a, neg(b)); }

RingElem Ring::neg(const RingElem& a) const {
    check_owner(a);
    switch (data_->kind) {
    case RingKind::Integers: return make({neg_i64(a.payload()[0])});
    case RingKind::IntegersMod:
    case RingKind::PrimeField: return make({norm_mod(-a.payload()[0], data_->n)});
    default: return make(poly::neg(a.payload(), data_->n));
    }
}

RingElem Ring::mul(const RingElem& a, const RingElem& b) const {
    check_owner(a);
    check_owner(b);
    switch (data_->kind) {
    case RingKind::Integers: return make({mul_i64(a.payload()[0], b.payload()[0])});
    case RingKind::IntegersMod:
    case RingKind::PrimeField: return make({norm_mod(a.payload()[0] * b.payload()[0], data_->n)});
    case RingKind::PolyRing: return make(poly::mul(a.payload(), b.payload(), data_->n));
    case RingKind::PolyQuot:
        return make(poly::rem(poly::mul(a.payload(), b.payload(), data_->n), data_->fmod, data_->n));
    }
    throw InternalError("bad ring kind");
}

std::optional<RingElem> Ring::inv(const RingElem& a) const {
    check_owner(a);
    switch (data_->kind) {
    case RingKind::Integers: {
        std::int64_t v = a.payload()[0];
        if (v == 1 || v == -1) return make({v});
        return std::nullopt;
    }
    case RingKind::IntegersMod:
    case RingKind::PrimeField: {
        std::int64_t v = a.payload()[0], n = data_->n;
        std::int64_t r0 = n, r1 = v, s0 = 0, s1 = 1;
        while (r1 != 0) {
            std::int64_t q = r0 / r1;
            std::int64_t t = r0 - q * r1;
            r0 = r1;
            r1 = t;
            t = s0 - q * s1;
            s0 = s1;
            s1 = t;
        }
        if (r0 != 1) return std::nullopt;
        return make({norm_mod(s0, n)});
    }
    case RingKind::PolyRing:
        if (a.poly_degree() == 0) return make({poly::inv_scalar(a.payload()[0], data_->n)});
        return std::nullopt;
    case RingKind::PolyQuot: {
        auto r = poly::inv_mod(a.payload(), data_->fmod, data_->n);
        if (!r) return std::nullopt;
        return make(std::move(*r));
    }
    }
    throw InternalError("bad ring kind");
}

bool Ring::is_unit(const RingElem& a) const { return inv(a).has_value(); }

std::pair<RingElem, RingElem> Ring::divmod(const RingElem& a, const RingElem& b) const {
    check_owner(a);
    check_owner(b);
    if (!is_euclidean()) throw UsageError("divmod requires a Euclidean ring");
    if (b.is_zero()) throw UsageError("division by zero");
    if (data_->kind == RingKind::Integers) {
        std::int64_t q, r;
        detail::divmod_i64(a.payload()[0], b.payload()[0], q, r);
        return {make({q}), make({r})};
    }
    if (data_->kind == RingKind::PolyRing) {
        auto [q, r] = poly::divmod(a.payload(), b.payload(), data_->n);
        return {make(std::move(q)), make(std::move(r))};
    }
    // field: exact division
    return {mul(a, *inv(b)), zero()};
}

bool Ring::elem_less(const RingElem& a, const RingElem& b) {
    const auto& x = a.payload();
    const auto& y = b.payload();
    if (x.size() != y.size()) return x.size() < y.size();
    return std::lexicographical_compare(x.rbegin(), x.rend(), y.rbegin(), y.rend());
}

std::int64_t Ring::element_count(std::int64_t cap) const {
    switch (data_->kind) {
    case RingKind::IntegersMod:
    case RingKind::PrimeField:
        if (data_->n > cap) throw ResourceError("ring too large to enumerate");
        return data_->n;
    case RingKind::PolyQuot: {
        std::int64_t c = 1;
        for (int i = 0; i < poly::deg(data_->fmod); ++i) {
            c = mul_i64(c, data_->n);
            if (c > cap) throw ResourceError("ring too large to enumerate");
        }
        return c;
    }
    default: throw UsageError("enumeration requires a finite ring");
    }
}

std::vector<RingElem> Ring::elements(std::int64_t cap) const {
    std::int64_t count = element_count(cap);
    std::vector<RingElem> out;
    out.reserve(count);
    if (data_->kind == RingKind::PolyQuot) {
        int d = poly::deg(data_->fmod);
        for (std::int64_t idx = 0; idx < count; ++idx) {
            poly::Coeffs c(d, 0);
            std::int64_t v = idx;
            for (int i = 0; i < d; ++i) {
                c[i] = v % data_->n;
                v /= data_->n;
            }
            poly::trim(c);
            out.push_back(make(std::move(c)));
        }
    } else {
        for (std::int64_t v = 0; v < count; ++v) out.push_back(make({v}));
    }
    return out;
}

Ring Ring::cover() const {
    switch (data_->kind) {
    case RingKind::IntegersMod: return integers();
    case RingKind::PolyQuot: return poly_ring(data_->n, data_->var);
    default: return *this;
    }
}

RingElem Ring::cover_modulus() const {
    switch (data_->kind) {
    case RingKind::IntegersMod: return integers().from_int(data_->n);
    case RingKind::PolyQuot: return poly_ring(data_->n, data_->var).from_coeffs(data_->fmod);
    default: throw UsageError("cover_modulus: ring is not a quotient");
    }
}

RingElem Ring::lift(const RingElem& a) const {
    check_owner(a);
    switch (data_->kind) {
    case RingKind::IntegersMod: return integers().from_int(a.payload()[0]);
    case RingKind::PolyQuot: return poly_ring(data_->n, data_->var).from_coeffs(a.payload());
    default: return a;
    }
}

RingElem Ring::reduce_from_cover(const RingElem& a) const {
    if (a.ring() != cover()) throw UsageError("reduce_from_cover: element not in the cover ring");
    switch (data_->kind) {
    case RingKind::IntegersMod: return from_int(a.payload()[0]);
    case RingKind::PolyQuot: return from_coeffs(a.payload());
    default: return a;
    }
}

std::string Ring::describe() const {
    std::ostringstream os;
    switch (data_->kind) {
    case RingKind::Integers: os << "Z"; break;
    case RingKind::IntegersMod: os << "Z/" << data_->n; break;
    case RingKind::PrimeField: os << "F_" << data_->n; break;
    case RingKind::PolyRing: os << "F_" << data_->n << "[" << data_->var << "]"; break;
    case RingKind::PolyQuot:
        os << "F_" << data_->n << "[" << data_->var << "]/(" << poly_str(data_->fmod, data_->var) << ")";
        break;
    }
    return os.str();
}

std::string Ring::format(const RingElem& a) const {
    check_owner(a);
    switch (data_->kind) {
    case RingKind::PolyRing:
    case RingKind::PolyQuot: return poly_str(a.payload(), data_->var);
    default: return std::to_string(a.payload()[0]);
    }
}

std::int64_t RingElem::scalar() const {
    if (v_.size() != 1 || ring_.kind() == RingKind::PolyRing || ring_.kind() == RingKind::PolyQuot)
        throw UsageError("scalar() on a polynomial element");
    return v_[0];
}

poly::Coeffs RingElem::coeffs() const {
    if (ring_.kind() != RingKind::PolyRing && ring_.kind() != RingKind::PolyQuot)
        throw UsageError("coeffs() on a scalar element");
    return v_;
}

bool RingElem::is_zero() const {
    switch (ring_.kind()) {
    case RingKind::PolyRing:
    case RingKind::PolyQuot: return v_.empty();
    default: return v_[0] == 0;
    }
}

bool RingElem::is_one() const {
    switch (ring_.kind()) {
    case RingKind::PolyRing:
    case RingKind::PolyQuot: return v_.size() == 1 && v_[0] == 1;
    default: return v_[0] == 1;
    }
}

int RingElem::poly_degree() const { return static_cast<int>(v_.size()) - 1; }

bool RingElem::operator==(const RingElem& other) const { return ring_ == other.ring_ && v_ == other.v_; }

// ---------------------------------------------------------------------------

Surjection Surjection::make(Ring source, Ring target) {
    auto bad = [](const char* leg, const Ring& r) -> Surjection {
        throw UsageError(std::string("unsupported ") + leg + " ring for surjection: " + r.describe());
    };
    switch (source.kind()) {
    case RingKind::Integers:
        if (target.kind() == RingKind::IntegersMod || target.kind() == RingKind::PrimeField)
            return Surjection(source, target);
        return bad("target", target);
    case RingKind::IntegersMod:
        if ((target.kind() == RingKind::IntegersMod || target.kind() == RingKind::PrimeField) &&
            source.characteristic_modulus() % target.characteristic_modulus() == 0)
            return Surjection(source, target);
        return bad("target", target);
    case RingKind::PrimeField:
        if (target.kind() == RingKind::PrimeField && target.characteristic_modulus() == source.characteristic_modulus())
            return Surjection(source, target);
        return bad("target", target);
    case RingKind::PolyRing: {
        if (target.kind() == RingKind::PolyQuot && target.characteristic_modulus() == source.characteristic_modulus() &&
            target.variable() == source.variable())
            return Surjection(source, target);
        if (target.kind() == RingKind::PrimeField && target.characteristic_modulus() == source.characteristic_modulus())
            return Surjection(source, target); // evaluation at 0, i.e. mod (var)
        return bad("target", target);
    }
    case RingKind::PolyQuot: {
        if (target.kind() == RingKind::PolyQuot && target.characteristic_modulus() == source.characteristic_modulus() &&
            target.variable() == source.variable() &&
            poly::rem(source.quot_modulus(), target.quot_modulus(), source.characteristic_modulus()).empty())
            return Surjection(source, target);
        if (target.kind() == RingKind::PrimeField && target.characteristic_modulus() == source.characteristic_modulus() &&
            source.quot_modulus().size() >= 2 && source.quot_modulus()[0] == 0)
            return Surjection(source, target); // t divides f: reduce mod (var)
        return bad("target", target);
    }
    }
    throw InternalError("bad ring kind");
}

RingElem Surjection::reduce(const RingElem& a) const {
    if (a.ring() != source_) throw UsageError("reduce: element not in the source ring");
    switch (target_.kind()) {
    case RingKind::IntegersMod:
    case RingKind::PrimeField:
        if (source_.kind() == RingKind::PolyRing || source_.kind() == RingKind::PolyQuot) {
            const auto& c = a.payload();
            return target_.from_int(c.empty() ? 0 : c[0]); // constant term = value mod (var)
        }
        return target_.from_int(a.payload()[0]);
    case RingKind::PolyQuot: return target_.from_coeffs(a.payload());
    default: throw InternalError("surjection with non-quotient target");
    }
}

RingElem Surjection::lift(const RingElem& b) const {
    if (b.ring() != target_) throw UsageError("lift: element not in the target ring");
    switch (source_.kind()) {
    case RingKind::Integers:
    case RingKind::IntegersMod:
    case RingKind::PrimeField: return source_.from_int(b.payload()[0]);
    case RingKind::PolyRing:
    case RingKind::PolyQuot:
        if (target_.kind() == RingKind::PrimeField) return source_.from_coeffs({b.payload()[0]});
        return source_.from_coeffs(b.payload());
    }
    throw InternalError("bad ring kind");
}

std::string Surjection::describe() const { return source_.describe() + " ->> " + target_.describe(); }

} // namespace kzero::rings
