#include "pfaff/poly.hpp"

#include "pfaff/errors.hpp"

namespace pfaff {

namespace {

Poly trim(Poly p) {
    std::size_t lead = 0;
    while (lead < p.size() && p[lead].is_zero()) ++lead;
    p.erase(p.begin(), p.begin() + static_cast<std::ptrdiff_t>(lead));
    return p;
}

} // namespace

Poly poly_mul(const Poly& a, const Poly& b, const Field& F) {
    if (a.empty() || b.empty()) return {};
    Poly out(a.size() + b.size() - 1, F.zero());
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i].is_zero()) continue;
        for (std::size_t j = 0; j < b.size(); ++j) {
            if (b[j].is_zero()) continue;
            out[i + j] = out[i + j] + a[i] * b[j];
        }
    }
    return trim(out);
}

Poly poly_pow(const Poly& a, std::size_t e, const Field& F) {
    Poly out{F.one()};
    for (std::size_t k = 0; k < e; ++k) out = poly_mul(out, a, F);
    return out;
}

Poly poly_add(const Poly& a, const Poly& b, const Field& F) {
    Poly out(std::max(a.size(), b.size()), F.zero());
    for (std::size_t i = 0; i < a.size(); ++i) out[out.size() - a.size() + i] = a[i];
    for (std::size_t i = 0; i < b.size(); ++i) {
        std::size_t k = out.size() - b.size() + i;
        out[k] = out[k] + b[i];
    }
    return trim(out);
}

Poly poly_scale(const FieldElement& c, const Poly& a) {
    Poly out = a;
    for (auto& x : out) x = c * x;
    return c.is_zero() ? Poly{} : out;
}

FieldElement poly_eval(const Poly& p, const FieldElement& x) {
    FieldElement acc = x.field().zero();
    for (const auto& c : p) acc = acc * x + c;
    return acc;
}

bool poly_eq(const Poly& a, const Poly& b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] != b[i]) return false;
    return true;
}

std::string poly_str(const Poly& p, const std::string& var) {
    if (p.empty()) return "0";
    std::string out;
    std::size_t d = p.size() - 1;
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (p[i].is_zero()) continue;
        if (!out.empty()) out += " + ";
        std::size_t e = d - i;
        std::string c = p[i].str();
        if (e == 0) {
            out += c;
        } else {
            if (c != "1") out += "(" + c + ")*";
            out += var;
            if (e > 1) out += "^" + std::to_string(e);
        }
    }
    return out.empty() ? "0" : out;
}

Poly poly_monic_root(const Poly& p, std::size_t m, const Field& F) {
    if (m == 0) throw validation_error("poly_monic_root: m must be positive");
    if (p.empty() || !p.front().is_one())
        throw validation_error("poly_monic_root: polynomial is not monic");
    std::size_t dp = p.size() - 1;
    if (dp % m != 0) throw validation_error("poly_monic_root: degree is not divisible by m");
    std::size_t d = dp / m;
    Poly r(d + 1, F.zero());
    r[0] = F.one();
    if (F.characteristic() == 2) {
        // In characteristic 2 an m-th power (m = 2 or 4) has coefficients only
        // on exponents divisible by m, each an m-th power of the root's.
        if (m != 2 && m != 4) throw validation_error("poly_monic_root: unsupported m in characteristic 2");
        for (std::size_t k = 1; k <= d; ++k) {
            const FieldElement& c = p[m * k];
            auto root = (m == 2) ? c.sqrt() : c.fourth_root();
            if (!root) throw validation_error("poly_monic_root: coefficient is not an m-th power");
            r[k] = *root;
        }
    } else {
        FieldElement mm = F.integer(static_cast<std::int64_t>(m));
        if (mm.is_zero()) throw validation_error("poly_monic_root: characteristic divides m");
        for (std::size_t k = 1; k <= d; ++k) {
            // With r known above index k, the X^(m*d-k) coefficient of r^m is
            // m*r[k] plus terms in earlier coefficients only.
            Poly q = poly_pow(r, m, F);
            Poly qfull(dp + 1, F.zero());
            for (std::size_t i = 0; i < q.size(); ++i) qfull[dp + 1 - q.size() + i] = q[i];
            r[k] = (p[k] - qfull[k]) / mm;
        }
    }
    if (!poly_eq(poly_pow(r, m, F), p))
        throw validation_error("poly_monic_root: polynomial is not a perfect power");
    return r;
}

} // namespace pfaff
