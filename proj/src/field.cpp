#include "pfaff/field.hpp"

#include "pfaff/errors.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace pfaff {

namespace {

bool small_prime(std::int64_t p) {
    if (p < 2) return false;
    for (std::int64_t d = 2; d * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

std::int64_t mod_pow64(std::int64_t a, std::int64_t n, std::int64_t p) {
    std::int64_t r = 1 % p;
    a = ((a % p) + p) % p;
    while (n > 0) {
        if (n & 1) r = r * a % p;
        a = a * a % p;
        n >>= 1;
    }
    return r;
}

// Irreducible polynomials over F_2 used for F_2, F_4, F_8, F_16.
std::uint16_t binary_modulus(int k) {
    switch (k) {
        case 1: return 0b11;     // x + 1
        case 2: return 0b111;    // x^2 + x + 1
        case 3: return 0b1011;   // x^3 + x + 1
        case 4: return 0b10011;  // x^4 + x + 1
        default: throw field_error("binary field degree must be between 1 and 4");
    }
}

std::uint8_t binary_mul(std::uint8_t a, std::uint8_t b, int k, std::uint16_t mod) {
    std::uint16_t acc = 0;
    std::uint16_t aa = a;
    while (b) {
        if (b & 1) acc ^= aa;
        aa <<= 1;
        b >>= 1;
    }
    for (int bit = 2 * (k - 1); bit >= k; --bit)
        if (acc & (std::uint16_t(1) << bit)) acc ^= mod << (bit - k);
    return static_cast<std::uint8_t>(acc & ((1u << k) - 1));
}

std::uint8_t binary_pow(std::uint8_t a, std::uint64_t n, int k, std::uint16_t mod) {
    std::uint8_t r = 1;
    while (n) {
        if (n & 1) r = binary_mul(r, a, k, mod);
        a = binary_mul(a, a, k, mod);
        n >>= 1;
    }
    return r;
}

std::uint64_t rng_below(std::mt19937_64& rng, std::uint64_t n) { return rng() % n; }

} // namespace

Field::Field(Info info) : info_(std::make_shared<const Info>(std::move(info))) {}

const Field::Info& Field::inf() const {
    if (!info_) throw field_error("operation on a null field");
    return *info_;
}

Field Field::rationals() {
    Info i;
    i.kind = FieldKind::rationals;
    return Field(std::move(i));
}

Field Field::prime(std::int64_t p) {
    if (!small_prime(p) || p > 97) throw field_error("prime field modulus must be a prime <= 97");
    Info i;
    i.kind = FieldKind::prime;
    i.p = p;
    if (p > 2) {
        for (std::int64_t n = 2; n < p; ++n)
            if (mod_pow64(n, (p - 1) / 2, p) != 1) {
                i.least_nonsquare = n;
                break;
            }
    }
    return Field(std::move(i));
}

Field Field::binary(int k) {
    std::uint16_t mod = binary_modulus(k);
    Info i;
    i.kind = FieldKind::binary;
    i.p = 2;
    i.k = k;
    i.modulus_bits = mod;
    return Field(std::move(i));
}

Field Field::function_field(std::int64_t p, std::vector<std::string> vars) {
    if (!small_prime(p) || p > 97)
        throw field_error("function field characteristic must be a prime <= 97");
    if (vars.empty() || vars.size() > 2)
        throw field_error("function fields support one or two variables");
    for (const auto& v : vars) {
        if (v.empty() || !std::isalpha(static_cast<unsigned char>(v[0])))
            throw field_error("variable names must start with a letter");
        for (char c : v)
            if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_')
                throw field_error("variable names must be alphanumeric");
        if (v == "g") throw field_error("'g' is reserved for binary field generators");
    }
    if (vars.size() == 2 && vars[0] == vars[1])
        throw field_error("function field variables must be distinct");
    Info i;
    i.kind = FieldKind::function;
    i.p = p;
    i.vars = std::move(vars);
    if (p > 2) {
        for (std::int64_t n = 2; n < p; ++n)
            if (mod_pow64(n, (p - 1) / 2, p) != 1) {
                i.least_nonsquare = n;
                break;
            }
    }
    return Field(std::move(i));
}

FieldKind Field::kind() const { return inf().kind; }

std::int64_t Field::characteristic() const {
    switch (inf().kind) {
        case FieldKind::rationals: return 0;
        default: return inf().p;
    }
}

std::int64_t Field::p() const { return inf().p; }
int Field::k() const { return inf().k; }
const std::vector<std::string>& Field::vars() const { return inf().vars; }

bool Field::operator==(const Field& o) const {
    if (info_ == o.info_) return true;
    if (!info_ || !o.info_) return false;
    return info_->kind == o.info_->kind && info_->p == o.info_->p && info_->k == o.info_->k &&
           info_->vars == o.info_->vars;
}

std::string Field::describe() const {
    switch (inf().kind) {
        case FieldKind::rationals: return "Q";
        case FieldKind::prime: return "F_" + std::to_string(inf().p);
        case FieldKind::binary: return "F_" + std::to_string(std::int64_t(1) << inf().k);
        case FieldKind::function: {
            std::string s = "F_" + std::to_string(inf().p) + "(";
            for (std::size_t i = 0; i < inf().vars.size(); ++i) {
                if (i) s += ",";
                s += inf().vars[i];
            }
            return s + ")";
        }
    }
    throw field_error("unreachable");
}

std::string Field::token() const {
    switch (inf().kind) {
        case FieldKind::rationals: return "Q";
        case FieldKind::prime: return "Fp:" + std::to_string(inf().p);
        case FieldKind::binary: return "F2k:" + std::to_string(inf().k);
        case FieldKind::function: {
            std::string s = "Fpt:" + std::to_string(inf().p) + ":";
            for (std::size_t i = 0; i < inf().vars.size(); ++i) {
                if (i) s += ",";
                s += inf().vars[i];
            }
            return s;
        }
    }
    throw field_error("unreachable");
}

std::optional<Field> Field::from_token(std::string_view tok) {
    try {
        if (tok == "Q") return rationals();
        auto starts = [&](std::string_view pre) {
            return tok.size() > pre.size() && tok.substr(0, pre.size()) == pre;
        };
        if (starts("Fp:")) return prime(std::stoll(std::string(tok.substr(3))));
        if (starts("F2k:")) return binary(std::stoi(std::string(tok.substr(4))));
        if (starts("Fpt:")) {
            std::string rest(tok.substr(4));
            auto colon = rest.find(':');
            if (colon == std::string::npos) return std::nullopt;
            std::int64_t p = std::stoll(rest.substr(0, colon));
            std::string varlist = rest.substr(colon + 1);
            std::vector<std::string> vars;
            std::stringstream ss(varlist);
            std::string item;
            while (std::getline(ss, item, ',')) vars.push_back(item);
            return function_field(p, std::move(vars));
        }
    } catch (const std::exception&) {
        return std::nullopt;
    }
    return std::nullopt;
}

FieldElement::FieldElement(Field f, mpq_class q) : field_(std::move(f)), v_(std::move(q)) {}
FieldElement::FieldElement(Field f, std::int64_t r) : field_(std::move(f)), v_(r) {}
FieldElement::FieldElement(Field f, std::uint8_t b) : field_(std::move(f)), v_(b) {}
FieldElement::FieldElement(Field f, RatFunc r) : field_(std::move(f)), v_(std::move(r)) {}

FieldElement Field::zero() const { return integer(0); }
FieldElement Field::one() const { return integer(1); }

FieldElement Field::integer(std::int64_t n) const {
    switch (inf().kind) {
        case FieldKind::rationals: {
            mpq_class q(static_cast<long>(n));
            return FieldElement(*this, std::move(q));
        }
        case FieldKind::prime: return FieldElement(*this, ((n % inf().p) + inf().p) % inf().p);
        case FieldKind::binary:
            return FieldElement(*this, static_cast<std::uint8_t>(((n % 2) + 2) % 2));
        case FieldKind::function:
            return FieldElement(*this, RatFunc{MPoly::constant(inf().p, n),
                                               MPoly::constant(inf().p, 1)});
    }
    throw field_error("unreachable");
}

FieldElement Field::from_rational(const mpq_class& q) const {
    if (inf().kind != FieldKind::rationals)
        throw field_error("from_rational requires the rational field");
    mpq_class c = q;
    c.canonicalize();
    return FieldElement(*this, std::move(c));
}

FieldElement Field::variable(int index) const {
    if (inf().kind != FieldKind::function) throw field_error("field has no variables");
    if (index < 0 || static_cast<std::size_t>(index) >= inf().vars.size())
        throw field_error("variable index out of range");
    return FieldElement(*this, RatFunc{MPoly::variable(inf().p, index),
                                       MPoly::constant(inf().p, 1)});
}

FieldElement Field::generator() const {
    if (inf().kind != FieldKind::binary || inf().k < 2)
        throw field_error("field has no generator symbol");
    return FieldElement(*this, static_cast<std::uint8_t>(0b10));
}

std::uint64_t Field::enumerable_size() const {
    switch (inf().kind) {
        case FieldKind::prime: return static_cast<std::uint64_t>(inf().p);
        case FieldKind::binary: return std::uint64_t(1) << inf().k;
        default: return 0;
    }
}

std::vector<FieldElement> Field::enumerate() const {
    std::vector<FieldElement> out;
    switch (inf().kind) {
        case FieldKind::prime:
            for (std::int64_t r = 0; r < inf().p; ++r) out.push_back(FieldElement(*this, r));
            return out;
        case FieldKind::binary:
            for (std::uint8_t b = 0; b < (1u << inf().k); ++b)
                out.push_back(FieldElement(*this, b));
            return out;
        default: throw field_error("field is not enumerable");
    }
}

std::vector<FieldElement> Field::f2_basis() const {
    if (characteristic() != 2) throw field_error("squares basis requires characteristic 2");
    std::vector<FieldElement> out{one()};
    if (inf().kind == FieldKind::function) {
        out.push_back(variable(0));
        if (inf().vars.size() == 2) {
            out.push_back(variable(1));
            out.push_back(variable(0) * variable(1));
        }
    }
    return out;
}

void FieldElement::require_usable() const {
    if (field_.null()) throw field_error("operation on a null element");
}

void FieldElement::require_same(const FieldElement& o) const {
    require_usable();
    o.require_usable();
    if (field_ != o.field_) throw field_error("elements belong to different fields");
}

bool FieldElement::is_zero() const {
    require_usable();
    switch (field_.kind()) {
        case FieldKind::rationals: return std::get<mpq_class>(v_) == 0;
        case FieldKind::prime: return std::get<std::int64_t>(v_) == 0;
        case FieldKind::binary: return std::get<std::uint8_t>(v_) == 0;
        case FieldKind::function: return std::get<RatFunc>(v_).num.is_zero();
    }
    throw field_error("unreachable");
}

bool FieldElement::is_one() const {
    require_usable();
    return *this == field_.one();
}

FieldElement FieldElement::operator+(const FieldElement& o) const {
    require_same(o);
    switch (field_.kind()) {
        case FieldKind::rationals:
            return FieldElement(field_, mpq_class(std::get<mpq_class>(v_) + std::get<mpq_class>(o.v_)));
        case FieldKind::prime:
            return FieldElement(field_,
                                (std::get<std::int64_t>(v_) + std::get<std::int64_t>(o.v_)) %
                                    field_.p());
        case FieldKind::binary:
            return FieldElement(field_, static_cast<std::uint8_t>(std::get<std::uint8_t>(v_) ^
                                                                  std::get<std::uint8_t>(o.v_)));
        case FieldKind::function: {
            const RatFunc& a = std::get<RatFunc>(v_);
            const RatFunc& b = std::get<RatFunc>(o.v_);
            return FieldElement(field_, RatFunc::make(a.num * b.den + b.num * a.den, a.den * b.den));
        }
    }
    throw field_error("unreachable");
}

FieldElement FieldElement::operator-() const {
    require_usable();
    switch (field_.kind()) {
        case FieldKind::rationals: return FieldElement(field_, mpq_class(-std::get<mpq_class>(v_)));
        case FieldKind::prime:
            return FieldElement(field_, (field_.p() - std::get<std::int64_t>(v_)) % field_.p());
        case FieldKind::binary: return *this;
        case FieldKind::function: {
            const RatFunc& a = std::get<RatFunc>(v_);
            return FieldElement(field_, RatFunc{-a.num, a.den});
        }
    }
    throw field_error("unreachable");
}

FieldElement FieldElement::operator-(const FieldElement& o) const { return *this + (-o); }

FieldElement FieldElement::operator*(const FieldElement& o) const {
    require_same(o);
    switch (field_.kind()) {
        case FieldKind::rationals:
            return FieldElement(field_, mpq_class(std::get<mpq_class>(v_) * std::get<mpq_class>(o.v_)));
        case FieldKind::prime:
            return FieldElement(field_,
                                std::get<std::int64_t>(v_) * std::get<std::int64_t>(o.v_) %
                                    field_.p());
        case FieldKind::binary:
            return FieldElement(field_,
                                binary_mul(std::get<std::uint8_t>(v_), std::get<std::uint8_t>(o.v_),
                                           field_.k(), binary_modulus(field_.k())));
        case FieldKind::function: {
            const RatFunc& a = std::get<RatFunc>(v_);
            const RatFunc& b = std::get<RatFunc>(o.v_);
            return FieldElement(field_, RatFunc::make(a.num * b.num, a.den * b.den));
        }
    }
    throw field_error("unreachable");
}

FieldElement FieldElement::inverse() const {
    require_usable();
    if (is_zero()) throw field_error("inverse of zero");
    switch (field_.kind()) {
        case FieldKind::rationals:
            return FieldElement(field_, mpq_class(1 / std::get<mpq_class>(v_)));
        case FieldKind::prime:
            return FieldElement(field_, mod_pow64(std::get<std::int64_t>(v_), field_.p() - 2,
                                                  field_.p()));
        case FieldKind::binary:
            return FieldElement(field_,
                                binary_pow(std::get<std::uint8_t>(v_),
                                           (std::uint64_t(1) << field_.k()) - 2, field_.k(),
                                           binary_modulus(field_.k())));
        case FieldKind::function: {
            const RatFunc& a = std::get<RatFunc>(v_);
            return FieldElement(field_, RatFunc::make(a.den, a.num));
        }
    }
    throw field_error("unreachable");
}

FieldElement FieldElement::operator/(const FieldElement& o) const { return *this * o.inverse(); }

bool FieldElement::operator==(const FieldElement& o) const {
    require_same(o);
    switch (field_.kind()) {
        case FieldKind::rationals: return std::get<mpq_class>(v_) == std::get<mpq_class>(o.v_);
        case FieldKind::prime: return std::get<std::int64_t>(v_) == std::get<std::int64_t>(o.v_);
        case FieldKind::binary: return std::get<std::uint8_t>(v_) == std::get<std::uint8_t>(o.v_);
        case FieldKind::function: return std::get<RatFunc>(v_) == std::get<RatFunc>(o.v_);
    }
    throw field_error("unreachable");
}

FieldElement FieldElement::pow(std::int64_t n) const {
    require_usable();
    if (n < 0) return inverse().pow(-n);
    FieldElement r = field_.one();
    FieldElement b = *this;
    while (n > 0) {
        if (n & 1) r = r * b;
        b = b * b;
        n >>= 1;
    }
    return r;
}

std::optional<FieldElement> FieldElement::sqrt() const {
    require_usable();
    switch (field_.kind()) {
        case FieldKind::rationals: {
            const mpq_class& q = std::get<mpq_class>(v_);
            if (q == 0) return field_.zero();
            if (q < 0) return std::nullopt;
            mpz_class num = q.get_num(), den = q.get_den();
            if (!mpz_perfect_square_p(num.get_mpz_t()) || !mpz_perfect_square_p(den.get_mpz_t()))
                return std::nullopt;
            mpz_class rn, rd;
            mpz_sqrt(rn.get_mpz_t(), num.get_mpz_t());
            mpz_sqrt(rd.get_mpz_t(), den.get_mpz_t());
            mpq_class root(rn, rd);
            root.canonicalize();
            return FieldElement(field_, std::move(root));
        }
        case FieldKind::prime: {
            std::int64_t x = std::get<std::int64_t>(v_);
            std::int64_t p = field_.p();
            if (p == 2) return *this;
            for (std::int64_t r = 0; r <= p / 2; ++r)
                if (r * r % p == x) return FieldElement(field_, r);
            return std::nullopt;
        }
        case FieldKind::binary: {
            // Squaring is an automorphism; x^(2^(k-1)) is the unique root.
            std::uint8_t r = binary_pow(std::get<std::uint8_t>(v_),
                                        std::uint64_t(1) << (field_.k() - 1), field_.k(),
                                        binary_modulus(field_.k()));
            return FieldElement(field_, r);
        }
        case FieldKind::function: {
            const RatFunc& a = std::get<RatFunc>(v_);
            if (a.num.is_zero()) return field_.zero();
            std::int64_t p = field_.p();
            MPoly w = a.num * a.den; // x = w / den^2
            SquareDecomposition dec = w.decompose_square();
            if (!(dec.s.is_constant() && dec.s.constant_value() == 1)) return std::nullopt;
            std::int64_t croot = -1;
            for (std::int64_t r = 0; r <= p / 2; ++r)
                if (r * r % p == dec.c) {
                    croot = r;
                    break;
                }
            if (croot < 0) return std::nullopt;
            RatFunc root = RatFunc::make(dec.r.scaled(croot), a.den);
            if (p > 2 && !root.num.is_zero()) {
                std::int64_t l = root.num.leading_coefficient();
                if (l > p - l) root.num = -root.num;
            }
            return FieldElement(field_, std::move(root));
        }
    }
    throw field_error("unreachable");
}

std::optional<FieldElement> FieldElement::fourth_root() const {
    auto s = sqrt();
    if (!s) return std::nullopt;
    return s->sqrt();
}

FieldElement FieldElement::square_class() const {
    require_usable();
    if (is_zero()) throw field_error("zero has no square class");
    switch (field_.kind()) {
        case FieldKind::rationals: {
            const mpq_class& q = std::get<mpq_class>(v_);
            mpz_class m = q.get_num() * q.get_den();
            int sign = mpz_sgn(m.get_mpz_t());
            mpz_class n = abs(m);
            mpz_class result = 1;
            unsigned long d = 2;
            mpz_class dd;
            while (true) {
                dd = d;
                if (dd * dd > n) break;
                if (d > 2000000)
                    throw field_error("square-class factorization exceeds supported size");
                if (mpz_divisible_ui_p(n.get_mpz_t(), d)) {
                    int e = 0;
                    while (mpz_divisible_ui_p(n.get_mpz_t(), d)) {
                        mpz_divexact_ui(n.get_mpz_t(), n.get_mpz_t(), d);
                        ++e;
                    }
                    if (e % 2) result *= d;
                }
                d = (d == 2) ? 3 : d + 2;
            }
            if (n > 1) result *= n; // leftover cofactor is prime
            if (sign < 0) result = -result;
            mpq_class out(result);
            return FieldElement(field_, std::move(out));
        }
        case FieldKind::prime: {
            std::int64_t p = field_.p();
            if (p == 2) return field_.one();
            std::int64_t x = std::get<std::int64_t>(v_);
            bool square = mod_pow64(x, (p - 1) / 2, p) == 1;
            return square ? field_.one() : field_.integer(field_.inf().least_nonsquare);
        }
        case FieldKind::binary: return field_.one();
        case FieldKind::function: {
            const RatFunc& a = std::get<RatFunc>(v_);
            std::int64_t p = field_.p();
            MPoly w = a.num * a.den;
            SquareDecomposition dec = w.decompose_square();
            std::int64_t cclass = 1;
            if (p > 2 && mod_pow64(dec.c, (p - 1) / 2, p) != 1)
                cclass = field_.inf().least_nonsquare;
            return FieldElement(field_, RatFunc::make(dec.s.scaled(cclass),
                                                      MPoly::constant(p, 1)));
        }
    }
    throw field_error("unreachable");
}

std::vector<FieldElement> FieldElement::f2_coordinate_roots() const {
    require_usable();
    if (field_.characteristic() != 2)
        throw field_error("squares coordinates require characteristic 2");
    switch (field_.kind()) {
        case FieldKind::prime: return {*this};
        case FieldKind::binary: return {*sqrt()};
        case FieldKind::function: {
            const RatFunc& a = std::get<RatFunc>(v_);
            std::size_t nvars = field_.vars().size();
            std::size_t nbasis = std::size_t(1) << nvars;
            // x = num*den / den^2; split num*den by exponent parity per variable.
            MPoly w = a.num * a.den;
            std::vector<MPoly> parts(nbasis, MPoly(2));
            for (const auto& t : w.terms()) {
                std::size_t idx = nvars == 1
                                      ? static_cast<std::size_t>(t.e[0] % 2)
                                      : static_cast<std::size_t>(t.e[0] % 2) +
                                            2 * static_cast<std::size_t>(t.e[1] % 2);
                // Remove the parity bit, then halve: the remainder is a square root.
                MPoly half = MPoly::constant(2, t.c);
                half = half * MPoly::variable(2, 0).pow(t.e[0] / 2);
                half = half * MPoly::variable(2, 1).pow(t.e[1] / 2);
                parts[idx] = parts[idx] + half;
            }
            std::vector<FieldElement> out;
            for (std::size_t i = 0; i < nbasis; ++i)
                out.push_back(FieldElement(field_, RatFunc::make(parts[i], a.den)));
            return out;
        }
        default: throw field_error("squares coordinates require characteristic 2");
    }
}

std::vector<FieldElement> FieldElement::f2_coordinates() const {
    std::vector<FieldElement> roots = f2_coordinate_roots();
    for (auto& r : roots) r = r * r;
    return roots;
}

mpq_class FieldElement::rational_value() const {
    require_usable();
    if (field_.kind() != FieldKind::rationals) throw field_error("rational value of a non-rational element");
    return std::get<mpq_class>(v_);
}

std::string FieldElement::str() const {
    require_usable();
    switch (field_.kind()) {
        case FieldKind::rationals: return std::get<mpq_class>(v_).get_str();
        case FieldKind::prime: return std::to_string(std::get<std::int64_t>(v_));
        case FieldKind::binary: {
            std::uint8_t b = std::get<std::uint8_t>(v_);
            if (b == 0) return "0";
            std::string out;
            for (int bit = field_.k() - 1; bit >= 0; --bit) {
                if (!(b & (1u << bit))) continue;
                if (!out.empty()) out += " + ";
                if (bit == 0) out += "1";
                else if (bit == 1) out += "g";
                else out += "g^" + std::to_string(bit);
            }
            return out;
        }
        case FieldKind::function: {
            const RatFunc& a = std::get<RatFunc>(v_);
            std::string num = a.num.str(field_.vars().size() == 2
                                            ? std::vector<std::string>{field_.vars()[0],
                                                                       field_.vars()[1]}
                                            : std::vector<std::string>{field_.vars()[0], "_"});
            if (a.den.is_constant()) return num;
            std::string den = a.den.str(field_.vars().size() == 2
                                            ? std::vector<std::string>{field_.vars()[0],
                                                                       field_.vars()[1]}
                                            : std::vector<std::string>{field_.vars()[0], "_"});
            return "(" + num + ")/(" + den + ")";
        }
    }
    throw field_error("unreachable");
}

FieldElement Field::sample(std::mt19937_64& rng, bool polynomial_only) const {
    switch (inf().kind) {
        case FieldKind::rationals: {
            std::int64_t num = static_cast<std::int64_t>(rng_below(rng, 19)) - 9;
            std::int64_t den = polynomial_only ? 1 : static_cast<std::int64_t>(rng_below(rng, 4)) + 1;
            mpq_class q(static_cast<long>(num), static_cast<long>(den));
            q.canonicalize();
            return FieldElement(*this, std::move(q));
        }
        case FieldKind::prime:
            return FieldElement(*this, static_cast<std::int64_t>(rng_below(rng, static_cast<std::uint64_t>(inf().p))));
        case FieldKind::binary:
            return FieldElement(*this,
                                static_cast<std::uint8_t>(rng_below(rng, std::uint64_t(1) << inf().k)));
        case FieldKind::function: {
            auto random_poly = [&]() {
                MPoly f(inf().p);
                std::size_t nterms = 1 + rng_below(rng, 3);
                for (std::size_t i = 0; i < nterms; ++i) {
                    int e0 = static_cast<int>(rng_below(rng, 3));
                    int e1 = inf().vars.size() == 2 ? static_cast<int>(rng_below(rng, 3)) : 0;
                    std::int64_t c = static_cast<std::int64_t>(rng_below(rng, static_cast<std::uint64_t>(inf().p)));
                    MPoly term = MPoly::constant(inf().p, c) *
                                 MPoly::variable(inf().p, 0).pow(e0) *
                                 MPoly::variable(inf().p, 1).pow(e1);
                    f = f + term;
                }
                return f;
            };
            MPoly num = random_poly();
            MPoly den = MPoly::constant(inf().p, 1);
            if (!polynomial_only && rng_below(rng, 2) == 0) {
                den = random_poly();
                while (den.is_zero()) den = random_poly();
            }
            return FieldElement(*this, RatFunc::make(std::move(num), std::move(den)));
        }
    }
    throw field_error("unreachable");
}

// ---------------------------------------------------------------------------
// Element grammar:
//   expr   := ['-'] term (('+'|'-') term)*
//   term   := factor (('*'|'/') factor)*
//   factor := atom ['^' ['-'] digits]
//   atom   := digits | name | '(' expr ')'
// where name is a field variable or the binary-field generator 'g'.
// ---------------------------------------------------------------------------

namespace {

struct Token {
    enum Kind { integer, name, op, end } kind;
    std::string text;
    std::size_t pos;
};

std::vector<Token> tokenize(std::string_view text) {
    std::vector<Token> out;
    std::size_t i = 0;
    while (i < text.size()) {
        char c = text[i];
        if (std::isspace(static_cast<unsigned char>(c))) {
            ++i;
            continue;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t j = i;
            while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
            out.push_back({Token::integer, std::string(text.substr(i, j - i)), i});
            i = j;
            continue;
        }
        if (std::isalpha(static_cast<unsigned char>(c))) {
            std::size_t j = i;
            while (j < text.size() && (std::isalnum(static_cast<unsigned char>(text[j])) ||
                                       text[j] == '_'))
                ++j;
            out.push_back({Token::name, std::string(text.substr(i, j - i)), i});
            i = j;
            continue;
        }
        if (c == '+' || c == '-' || c == '*' || c == '/' || c == '^' || c == '(' || c == ')') {
            out.push_back({Token::op, std::string(1, c), i});
            ++i;
            continue;
        }
        throw parse_error(std::string("unexpected character '") + c + "'", i);
    }
    out.push_back({Token::end, "", text.size()});
    return out;
}

class ElementParser {
public:
    ElementParser(const Field& f, std::vector<Token> toks)
        : field_(f), toks_(std::move(toks)) {}

    FieldElement run() {
        FieldElement v = expr();
        if (cur().kind != Token::end) throw parse_error("trailing input", cur().pos);
        return v;
    }

private:
    const Field& field_;
    std::vector<Token> toks_;
    std::size_t i_ = 0;

    const Token& cur() const { return toks_[i_]; }
    void advance() { ++i_; }
    bool eat_op(const char* s) {
        if (cur().kind == Token::op && cur().text == s) {
            advance();
            return true;
        }
        return false;
    }

    FieldElement expr() {
        bool neg = eat_op("-");
        FieldElement v = term();
        if (neg) v = -v;
        while (true) {
            if (eat_op("+")) v = v + term();
            else if (eat_op("-")) v = v - term();
            else return v;
        }
    }

    FieldElement term() {
        FieldElement v = factor();
        while (true) {
            if (eat_op("*")) v = v * factor();
            else if (eat_op("/")) {
                std::size_t pos = cur().pos;
                FieldElement d = factor();
                if (d.is_zero()) throw parse_error("division by zero", pos);
                v = v / d;
            } else return v;
        }
    }

    FieldElement factor() {
        FieldElement v = atom();
        if (eat_op("^")) {
            bool neg = eat_op("-");
            if (cur().kind != Token::integer) throw parse_error("expected exponent", cur().pos);
            if (cur().text.size() > 9) throw parse_error("exponent too large", cur().pos);
            std::int64_t e = std::stoll(cur().text);
            advance();
            if (neg && v.is_zero()) throw parse_error("division by zero", cur().pos);
            v = v.pow(neg ? -e : e);
        }
        return v;
    }

    FieldElement atom() {
        const Token& t = cur();
        if (t.kind == Token::integer) {
            advance();
            mpz_class z(t.text);
            if (field_.kind() == FieldKind::rationals)
                return field_.from_rational(mpq_class(z));
            // Finite characteristic: reduce the digits modulo p.
            mpz_class pz(static_cast<long>(field_.p()));
            mpz_class r = z % pz;
            return field_.integer(r.get_si());
        }
        if (t.kind == Token::name) {
            advance();
            if (field_.kind() == FieldKind::function) {
                const auto& vars = field_.vars();
                for (std::size_t v = 0; v < vars.size(); ++v)
                    if (vars[v] == t.text) return field_.variable(static_cast<int>(v));
            }
            if (field_.kind() == FieldKind::binary && field_.k() >= 2 && t.text == "g")
                return field_.generator();
            throw parse_error("unknown symbol '" + t.text + "'", t.pos);
        }
        if (t.kind == Token::op && t.text == "(") {
            advance();
            FieldElement v = expr();
            if (!eat_op(")")) throw parse_error("expected ')'", cur().pos);
            return v;
        }
        throw parse_error("expected a value", t.pos);
    }
};

} // namespace

FieldElement Field::parse(std::string_view text) const {
    ElementParser p(*this, tokenize(text));
    try {
        return p.run();
    } catch (const field_error& e) {
        throw parse_error(e.what(), 0);
    }
}

} // namespace pfaff
