#include "pfaff/mpoly.hpp"

#include "pfaff/errors.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace pfaff {

namespace {

std::int64_t mod_reduce(std::int64_t a, std::int64_t p) {
    std::int64_t r = a % p;
    return r < 0 ? r + p : r;
}

std::int64_t mod_pow(std::int64_t a, std::int64_t n, std::int64_t p) {
    std::int64_t r = 1 % p;
    a = mod_reduce(a, p);
    while (n > 0) {
        if (n & 1) r = r * a % p;
        a = a * a % p;
        n >>= 1;
    }
    return r;
}

std::int64_t mod_inverse(std::int64_t a, std::int64_t p) {
    a = mod_reduce(a, p);
    if (a == 0) throw field_error("division by zero in F_p");
    return mod_pow(a, p - 2, p);
}

// Dense ascending-coefficient view of a polynomial that involves only one variable.
std::vector<std::int64_t> to_dense(const MPoly& f, int var) {
    std::vector<std::int64_t> out(static_cast<std::size_t>(std::max(0, f.degree(var)) + 1), 0);
    if (f.is_zero()) return out;
    for (const auto& t : f.terms()) out[static_cast<std::size_t>(t.e[static_cast<std::size_t>(var)])] = t.c;
    return out;
}

MPoly from_dense(const std::vector<std::int64_t>& c, int var, std::int64_t p) {
    MPoly acc(p);
    for (std::size_t i = 0; i < c.size(); ++i) {
        if (c[i] % p == 0) continue;
        MPoly term = MPoly::constant(p, c[i]);
        if (i > 0) term = term * MPoly::variable(p, var).pow(static_cast<int>(i));
        acc = acc + term;
    }
    return acc;
}

void dense_trim(std::vector<std::int64_t>& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

// Euclidean gcd of dense univariate polynomials over F_p, returned monic.
std::vector<std::int64_t> dense_gcd(std::vector<std::int64_t> a, std::vector<std::int64_t> b,
                                    std::int64_t p) {
    dense_trim(a);
    dense_trim(b);
    while (!b.empty()) {
        std::int64_t inv = mod_inverse(b.back(), p);
        while (a.size() >= b.size()) {
            std::int64_t q = a.back() * inv % p;
            std::size_t off = a.size() - b.size();
            for (std::size_t i = 0; i < b.size(); ++i)
                a[off + i] = mod_reduce(a[off + i] - q * b[i], p);
            dense_trim(a);
            if (a.empty()) break;
        }
        std::swap(a, b);
    }
    if (!a.empty()) {
        std::int64_t inv = mod_inverse(a.back(), p);
        for (auto& c : a) c = c * inv % p;
    }
    return a;
}

} // namespace

MPoly::MPoly(std::int64_t p) : p_(p) {
    if (p < 2) throw field_error("modulus must be at least 2");
}

MPoly MPoly::constant(std::int64_t p, std::int64_t c) {
    MPoly f(p);
    c = mod_reduce(c, p);
    if (c != 0) f.terms_.push_back({{0, 0}, c});
    return f;
}

MPoly MPoly::variable(std::int64_t p, int index) {
    if (index < 0 || index > 1) throw field_error("variable index out of range");
    MPoly f(p);
    Term t{{0, 0}, 1};
    t.e[static_cast<std::size_t>(index)] = 1;
    f.terms_.push_back(t);
    return f;
}

bool MPoly::is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && terms_[0].e[0] == 0 && terms_[0].e[1] == 0);
}

std::int64_t MPoly::constant_value() const {
    if (!is_constant()) throw field_error("polynomial is not constant");
    return terms_.empty() ? 0 : terms_[0].c;
}

int MPoly::degree(int var) const {
    int d = -1;
    for (const auto& t : terms_) d = std::max(d, t.e[static_cast<std::size_t>(var)]);
    return d;
}

int MPoly::total_degree() const {
    int d = -1;
    for (const auto& t : terms_) d = std::max(d, t.e[0] + t.e[1]);
    return d;
}

bool MPoly::term_less(const Term& a, const Term& b) {
    if (a.e[0] != b.e[0]) return a.e[0] > b.e[0];
    return a.e[1] > b.e[1];
}

void MPoly::normalize() {
    std::sort(terms_.begin(), terms_.end(), term_less);
    std::vector<Term> out;
    for (const auto& t : terms_) {
        std::int64_t c = mod_reduce(t.c, p_);
        if (!out.empty() && out.back().e == t.e) {
            out.back().c = mod_reduce(out.back().c + c, p_);
        } else {
            out.push_back({t.e, c});
        }
        if (!out.empty() && out.back().c == 0) out.pop_back();
    }
    terms_ = std::move(out);
}

MPoly MPoly::operator-() const {
    MPoly f(p_);
    for (const auto& t : terms_) f.terms_.push_back({t.e, p_ - t.c});
    return f;
}

MPoly MPoly::operator+(const MPoly& o) const {
    if (p_ != o.p_) throw field_error("mixed moduli");
    MPoly f(p_);
    f.terms_ = terms_;
    f.terms_.insert(f.terms_.end(), o.terms_.begin(), o.terms_.end());
    f.normalize();
    return f;
}

MPoly MPoly::operator-(const MPoly& o) const { return *this + (-o); }

MPoly MPoly::operator*(const MPoly& o) const {
    if (p_ != o.p_) throw field_error("mixed moduli");
    std::map<std::array<int, 2>, std::int64_t> acc;
    for (const auto& a : terms_)
        for (const auto& b : o.terms_) {
            std::array<int, 2> e{a.e[0] + b.e[0], a.e[1] + b.e[1]};
            acc[e] = mod_reduce(acc[e] + a.c * b.c, p_);
        }
    MPoly f(p_);
    for (const auto& [e, c] : acc)
        if (c != 0) f.terms_.push_back({e, c});
    std::sort(f.terms_.begin(), f.terms_.end(), term_less);
    return f;
}

MPoly MPoly::scaled(std::int64_t c) const {
    c = mod_reduce(c, p_);
    MPoly f(p_);
    if (c == 0) return f;
    for (const auto& t : terms_) f.terms_.push_back({t.e, t.c * c % p_});
    return f;
}

MPoly MPoly::pow(int n) const {
    if (n < 0) throw field_error("negative polynomial power");
    MPoly r = MPoly::constant(p_, 1);
    MPoly b = *this;
    while (n > 0) {
        if (n & 1) r = r * b;
        b = b * b;
        n >>= 1;
    }
    return r;
}

bool MPoly::operator==(const MPoly& o) const {
    if (p_ != o.p_) return false;
    if (terms_.size() != o.terms_.size()) return false;
    for (std::size_t i = 0; i < terms_.size(); ++i)
        if (terms_[i].e != o.terms_[i].e || terms_[i].c != o.terms_[i].c) return false;
    return true;
}

std::optional<MPoly> MPoly::divide_exact(const MPoly& d) const {
    if (p_ != d.p_) throw field_error("mixed moduli");
    if (d.is_zero()) throw field_error("division by zero polynomial");
    MPoly rem = *this;
    MPoly quot(p_);
    const Term& lead = d.terms_[0];
    std::int64_t lead_inv = mod_inverse(lead.c, p_);
    while (!rem.is_zero()) {
        const Term& top = rem.terms_[0];
        if (top.e[0] < lead.e[0] || top.e[1] < lead.e[1]) return std::nullopt;
        MPoly mono(p_);
        mono.terms_.push_back({{top.e[0] - lead.e[0], top.e[1] - lead.e[1]}, top.c * lead_inv % p_});
        quot = quot + mono;
        rem = rem - mono * d;
    }
    return quot;
}

MPoly MPoly::derivative(int var) const {
    MPoly f(p_);
    std::size_t v = static_cast<std::size_t>(var);
    for (const auto& t : terms_) {
        std::int64_t c = mod_reduce(t.c * (t.e[v] % p_), p_);
        if (t.e[v] == 0 || c == 0) continue;
        Term u = t;
        u.e[v] -= 1;
        u.c = c;
        f.terms_.push_back(u);
    }
    f.normalize();
    return f;
}

std::int64_t MPoly::leading_coefficient() const {
    if (is_zero()) throw field_error("zero polynomial has no leading coefficient");
    return terms_[0].c;
}

MPoly MPoly::monic() const { return scaled(mod_inverse(leading_coefficient(), p_)); }

namespace {

// Coefficient of x0^k when f is viewed as a polynomial in x0 over F_p[x1].
MPoly coeff_in_x0(const MPoly& f, int k) {
    MPoly out(f.modulus());
    MPoly x1 = MPoly::variable(f.modulus(), 1);
    for (const auto& t : f.terms())
        if (t.e[0] == k) out = out + MPoly::constant(f.modulus(), t.c) * x1.pow(t.e[1]);
    return out;
}

// gcd of all x1-only coefficient polynomials of f viewed in x0; monic.
MPoly content_in_x0(const MPoly& f) {
    MPoly c(f.modulus());
    for (int k = 0; k <= f.degree(0); ++k) {
        MPoly ck = coeff_in_x0(f, k);
        if (ck.is_zero()) continue;
        c = c.is_zero() ? ck.monic() : MPoly::gcd(c, ck);
        if (c.is_constant()) return MPoly::constant(f.modulus(), 1);
    }
    return c.is_zero() ? MPoly::constant(f.modulus(), 1) : c;
}

// Pseudo-remainder of a by b viewed in x0 (any nonzero associate works for gcd use).
MPoly pseudo_rem_x0(MPoly a, const MPoly& b) {
    int db = b.degree(0);
    MPoly lcb = coeff_in_x0(b, db);
    MPoly x0 = MPoly::variable(a.modulus(), 0);
    while (!a.is_zero() && a.degree(0) >= db) {
        int da = a.degree(0);
        MPoly lca = coeff_in_x0(a, da);
        a = a * lcb - b * lca * x0.pow(da - db);
    }
    return a;
}

MPoly bivariate_gcd(const MPoly& a, const MPoly& b) {
    std::int64_t p = a.modulus();
    MPoly ca = content_in_x0(a);
    MPoly cb = content_in_x0(b);
    MPoly c = MPoly::gcd(ca, cb);
    MPoly A = a.divide_exact(ca).value();
    MPoly B = b.divide_exact(cb).value();
    if (A.degree(0) < B.degree(0)) std::swap(A, B);
    MPoly G = MPoly::constant(p, 1);
    while (true) {
        if (B.degree(0) == 0) break; // primitive parts are coprime in x0
        MPoly R = pseudo_rem_x0(A, B);
        if (R.is_zero()) {
            G = B.divide_exact(content_in_x0(B)).value();
            break;
        }
        A = B;
        B = R.divide_exact(content_in_x0(R)).value();
    }
    return (c * G).monic();
}

} // namespace

MPoly MPoly::gcd(const MPoly& a, const MPoly& b) {
    if (a.p_ != b.p_) throw field_error("mixed moduli");
    if (a.is_zero()) return b.is_zero() ? b : b.monic();
    if (b.is_zero()) return a.monic();
    bool uses0 = a.degree(0) > 0 || b.degree(0) > 0;
    bool uses1 = a.degree(1) > 0 || b.degree(1) > 0;
    if (uses0 && uses1) return bivariate_gcd(a, b);
    int var = uses0 ? 0 : 1;
    return from_dense(dense_gcd(to_dense(a, var), to_dense(b, var), a.p_), var, a.p_);
}

MPoly MPoly::pth_root() const {
    MPoly f(p_);
    int p = static_cast<int>(p_);
    for (const auto& t : terms_) {
        if (t.e[0] % p != 0 || t.e[1] % p != 0)
            throw field_error("polynomial is not a p-th power");
        f.terms_.push_back({{t.e[0] / p, t.e[1] / p}, t.c});
    }
    return f;
}

SquareDecomposition MPoly::decompose_square() const {
    if (is_zero()) throw field_error("cannot square-decompose the zero polynomial");
    MPoly one = MPoly::constant(p_, 1);
    if (is_constant()) return {constant_value(), one, one};

    MPoly d0 = derivative(0);
    MPoly d1 = derivative(1);
    if (d0.is_zero() && d1.is_zero()) {
        // f = h^p exactly; fold the p-th power into the square part.
        MPoly h = pth_root();
        SquareDecomposition sub = h.decompose_square();
        if (p_ == 2) {
            return {sub.c * sub.c % p_, one, sub.s * sub.r * sub.r};
        }
        MPoly r = sub.s.pow(static_cast<int>((p_ - 1) / 2)) * sub.r.pow(static_cast<int>(p_));
        return {sub.c, sub.s, r};
    }

    MPoly g = *this;
    if (!d0.is_zero()) g = gcd(g, d0);
    if (!d1.is_zero()) g = gcd(g, d1);
    MPoly w = divide_exact(g).value(); // distinct factors of multiplicity not divisible by p
    SquareDecomposition sub = g.decompose_square();
    MPoly d = gcd(sub.s, w);
    MPoly s_raw = w.divide_exact(d).value() * sub.s.divide_exact(d).value();
    MPoly r = sub.r * d;
    std::int64_t c = sub.c * s_raw.leading_coefficient() % p_;
    MPoly s = s_raw.monic();
    if (MPoly::constant(p_, c) * s * r * r != *this)
        throw field_error("square decomposition failed internal verification");
    return {c, s, r};
}

std::int64_t MPoly::evaluate(std::int64_t x0, std::int64_t x1) const {
    std::int64_t acc = 0;
    for (const auto& t : terms_) {
        std::int64_t v = t.c * mod_pow(x0, t.e[0], p_) % p_;
        v = v * mod_pow(x1, t.e[1], p_) % p_;
        acc = mod_reduce(acc + v, p_);
    }
    return acc;
}

std::string MPoly::str(const std::vector<std::string>& names) const {
    if (terms_.empty()) return "0";
    std::ostringstream out;
    bool first = true;
    for (const auto& t : terms_) {
        if (!first) out << " + ";
        first = false;
        bool has_var = t.e[0] > 0 || t.e[1] > 0;
        bool printed = false;
        if (t.c != 1 || !has_var) {
            out << t.c;
            printed = true;
        }
        for (std::size_t v = 0; v < 2; ++v) {
            if (t.e[v] == 0) continue;
            if (printed) out << "*";
            out << names.at(v);
            if (t.e[v] > 1) out << "^" << t.e[v];
            printed = true;
        }
    }
    return out.str();
}

RatFunc RatFunc::make(MPoly n, MPoly d) {
    if (d.is_zero()) throw field_error("zero denominator");
    std::int64_t p = n.modulus();
    if (n.is_zero()) return {MPoly(p), MPoly::constant(p, 1)};
    if (d.is_constant()) {
        std::int64_t c = d.constant_value();
        if (c != 1) n = n.scaled(mod_inverse(c, p));
        return {std::move(n), MPoly::constant(p, 1)};
    }
    MPoly g = MPoly::gcd(n, d);
    n = n.divide_exact(g).value();
    d = d.divide_exact(g).value();
    std::int64_t lead = d.leading_coefficient();
    if (lead != 1) {
        d = d.monic();
        n = n.scaled(mod_inverse(lead, p));
    }
    return {std::move(n), std::move(d)};
}

} // namespace pfaff
