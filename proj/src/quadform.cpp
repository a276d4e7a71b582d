#include "pfaff/quadform.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "pfaff/errors.hpp"

namespace pfaff {

namespace {

constexpr std::uint64_t kEnumerationBound = 1000000;
constexpr int kSearchBudget = 4000;
constexpr int kRationalHeightBound = 50;

void require_same_field(const Field& F, const std::vector<FieldElement>& coeffs) {
    for (const auto& c : coeffs)
        if (c.field() != F) throw field_error("coefficient from a different field");
}

} // namespace

DiagForm DiagForm::make(const Field& F, std::vector<FieldElement> coeffs) {
    require_same_field(F, coeffs);
    Singularity s;
    if (F.characteristic() == 2) {
        // Diagonal quadratic forms in characteristic 2 have identically zero polar form.
        s = Singularity::totally_singular;
    } else {
        bool unit = true;
        for (const auto& c : coeffs)
            if (c.is_zero()) unit = false;
        s = unit ? Singularity::nonsingular : Singularity::unknown;
    }
    return DiagForm{F, std::move(coeffs), s};
}

FieldElement DiagForm::evaluate(const Vec& x) const {
    if (x.size() != coeffs.size()) throw field_error("vector length mismatch");
    FieldElement acc = field.zero();
    for (std::size_t i = 0; i < coeffs.size(); ++i) acc += coeffs[i] * x[i] * x[i];
    return acc;
}

FieldElement DiagForm::polar(const Vec& x, const Vec& y) const {
    return evaluate(vec_add(x, y)) - evaluate(x) - evaluate(y);
}

DiagForm DiagForm::scaled(const FieldElement& c) const {
    std::vector<FieldElement> out = coeffs;
    for (auto& a : out) a *= c;
    return DiagForm::make(field, std::move(out));
}

DiagForm DiagForm::orthogonal_sum(const DiagForm& o) const {
    if (o.field != field) throw field_error("orthogonal sum across fields");
    std::vector<FieldElement> out = coeffs;
    out.insert(out.end(), o.coeffs.begin(), o.coeffs.end());
    return DiagForm::make(field, std::move(out));
}

std::string DiagForm::str() const {
    std::string s = "<";
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
        if (i) s += ",";
        s += coeffs[i].str();
    }
    return s + ">_q";
}

Mat f2_root_matrix(const Field& F, const std::vector<FieldElement>& coeffs) {
    if (F.characteristic() != 2) throw field_error("squares coordinates require characteristic 2");
    std::size_t rows = F.f2_basis().size();
    Mat m = mat_zero(F, rows, coeffs.size());
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
        std::vector<FieldElement> roots = coeffs[i].f2_coordinate_roots();
        for (std::size_t j = 0; j < rows; ++j) m[j][i] = roots[j];
    }
    return m;
}

bool f2_spans_equal(const Field& F, const std::vector<FieldElement>& a,
                    const std::vector<FieldElement>& b) {
    Mat ra = f2_root_matrix(F, a), rb = f2_root_matrix(F, b);
    Mat joint = ra;
    for (std::size_t j = 0; j < rb.size(); ++j)
        joint[j].insert(joint[j].end(), rb[j].begin(), rb[j].end());
    std::size_t r = rank(joint);
    return rank(ra) == r && rank(rb) == r;
}

std::optional<Vec> f2_span_solve(const Field& F, const std::vector<FieldElement>& coeffs,
                                 const FieldElement& c) {
    Mat m = f2_root_matrix(F, coeffs);
    return solve_linear(m, c.f2_coordinate_roots());
}

namespace {

IsotropyVerdict certified_isotropic(const DiagForm& f, Vec witness) {
    if (vec_is_zero(witness) || !f.evaluate(witness).is_zero())
        throw validation_error("isotropy witness failed verification");
    return {IsotropyStatus::isotropic, std::move(witness)};
}

// Lexicographic odometer over all coordinate vectors of an enumerable field.
bool next_vector(std::vector<std::size_t>& idx, std::size_t base) {
    for (std::size_t i = idx.size(); i-- > 0;) {
        if (++idx[i] < base) return true;
        idx[i] = 0;
    }
    return false;
}

std::optional<Vec> enumerate_isotropy_witness(const DiagForm& f) {
    std::vector<FieldElement> elems = f.field.enumerate();
    std::vector<std::size_t> idx(f.dim(), 0);
    Vec x(f.dim(), f.field.zero());
    while (next_vector(idx, elems.size())) {
        for (std::size_t i = 0; i < idx.size(); ++i) x[i] = elems[idx[i]];
        if (f.evaluate(x).is_zero()) return x;
    }
    return std::nullopt;
}

std::optional<Vec> random_isotropy_witness(const DiagForm& f, std::uint64_t seed, int budget) {
    std::mt19937_64 rng(seed);
    std::size_t n = f.dim();
    // Solve for the first unit coordinate against random tails.
    std::size_t lead = n;
    for (std::size_t i = 0; i < n; ++i)
        if (!f.coeffs[i].is_zero()) { lead = i; break; }
    if (lead == n) return std::nullopt;
    for (int trial = 0; trial < budget; ++trial) {
        Vec x(n, f.field.zero());
        for (std::size_t i = 0; i < n; ++i)
            if (i != lead) x[i] = f.field.sample(rng, true);
        FieldElement rest = f.field.zero();
        for (std::size_t i = 0; i < n; ++i)
            if (i != lead) rest += f.coeffs[i] * x[i] * x[i];
        auto root = (-rest / f.coeffs[lead]).sqrt();
        if (root && !(root->is_zero() && vec_is_zero(x))) {
            x[lead] = *root;
            if (!vec_is_zero(x)) return x;
        }
    }
    return std::nullopt;
}

// --- rational local-global machinery ---

void split_at_prime(const mpq_class& a, std::int64_t p, long& val, mpq_class& unit) {
    mpz_class num = a.get_num(), den = a.get_den(), pz(static_cast<long>(p));
    mpz_class nout, dout;
    long vn = static_cast<long>(mpz_remove(nout.get_mpz_t(), num.get_mpz_t(), pz.get_mpz_t()));
    long vd = static_cast<long>(mpz_remove(dout.get_mpz_t(), den.get_mpz_t(), pz.get_mpz_t()));
    val = vn - vd;
    unit = mpq_class(nout) / mpq_class(dout);
}

int legendre_unit(const mpq_class& u, std::int64_t p) {
    mpz_class pz(static_cast<long>(p));
    mpz_class num = u.get_num(), den = u.get_den(), inv;
    if (mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), pz.get_mpz_t()) == 0)
        throw field_error("denominator not a unit at p");
    mpz_class r = (num * inv) % pz;
    return mpz_legendre(r.get_mpz_t(), pz.get_mpz_t());
}

// Odd rational reduced modulo 8.
int mod8(const mpq_class& u) {
    mpz_class num = u.get_num(), den = u.get_den();
    long n = mpz_fdiv_ui(num.get_mpz_t(), 8);
    long d = mpz_fdiv_ui(den.get_mpz_t(), 8);
    return static_cast<int>((n * d) % 8); // odd d is its own inverse mod 8
}

int eps4(const mpq_class& u) { return mod8(u) % 4 == 1 ? 0 : 1; }
int omega8(const mpq_class& u) {
    int r = mod8(u);
    return (r == 1 || r == 7) ? 0 : 1;
}

int hilbert_mpq(const mpq_class& a, const mpq_class& b, std::int64_t place) {
    if (a == 0 || b == 0) throw field_error("hilbert symbol of zero");
    if (place == 0) return (a < 0 && b < 0) ? -1 : 1;
    long va, vb;
    mpq_class ua, ub;
    split_at_prime(a, place, va, ua);
    split_at_prime(b, place, vb, ub);
    if (place == 2) {
        int e = eps4(ua) * eps4(ub) + static_cast<int>(va & 1) * omega8(ub) +
                static_cast<int>(vb & 1) * omega8(ua);
        return (e & 1) ? -1 : 1;
    }
    int sign = 1;
    if ((va & 1) && (vb & 1) && place % 4 == 3) sign = -sign;
    if ((vb & 1) && legendre_unit(ua, place) < 0) sign = -sign;
    if ((va & 1) && legendre_unit(ub, place) < 0) sign = -sign;
    return sign;
}

bool is_local_square(const mpq_class& a, std::int64_t place) {
    if (place == 0) return a > 0;
    long v;
    mpq_class u;
    split_at_prime(a, place, v, u);
    if (v & 1) return false;
    if (place == 2) return mod8(u) == 1;
    return legendre_unit(u, place) > 0;
}

std::vector<std::int64_t> trial_factor_odd(mpz_class n) {
    std::vector<std::int64_t> primes;
    n = abs(n);
    while (n % 2 == 0) n /= 2;
    for (std::int64_t d = 3; d <= 2000000 && mpz_class(d) * d <= n; d += 2) {
        if (n % d == 0) {
            primes.push_back(d);
            while (n % d == 0) n /= d;
        }
    }
    if (n > 1) {
        if (!mpz_probab_prime_p(n.get_mpz_t(), 40))
            throw field_error("rational too large to factor for place analysis");
        if (!n.fits_slong_p())
            throw field_error("prime place does not fit in a machine word");
        primes.push_back(n.get_si());
    }
    return primes;
}

// Local isotropy over Q_place for a nondegenerate diagonal form, after Hasse-Minkowski.
bool locally_isotropic(const std::vector<mpq_class>& a, std::int64_t place) {
    std::size_t n = a.size();
    if (place == 0) {
        bool pos = false, neg = false;
        for (const auto& c : a) (c > 0 ? pos : neg) = true;
        return pos && neg;
    }
    if (n >= 5) return true;
    mpq_class d(1);
    for (const auto& c : a) d *= c;
    int eps = 1;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) eps *= hilbert_mpq(a[i], a[j], place);
    if (n == 2) return is_local_square(-d, place);
    if (n == 3) return hilbert_mpq(mpq_class(-1), -d, place) == eps;
    // n == 4
    if (!is_local_square(d, place)) return true;
    return eps == hilbert_mpq(mpq_class(-1), mpq_class(-1), place);
}

std::vector<std::int64_t> rational_places(const std::vector<mpq_class>& values) {
    std::vector<std::int64_t> places{0, 2};
    for (const auto& v : values) {
        for (std::int64_t p : trial_factor_odd(v.get_num()))
            places.push_back(p);
        for (std::int64_t p : trial_factor_odd(v.get_den()))
            places.push_back(p);
    }
    std::sort(places.begin(), places.end());
    places.erase(std::unique(places.begin(), places.end()), places.end());
    return places;
}

bool rational_isotropic(const std::vector<mpq_class>& a) {
    if (a.size() <= 1) return false;
    if (a.size() == 2) {
        mpq_class m = -a[0] * a[1];
        if (m < 0) return false;
        mpz_class num = m.get_num(), den = m.get_den();
        return mpz_perfect_square_p(num.get_mpz_t()) && mpz_perfect_square_p(den.get_mpz_t());
    }
    for (std::int64_t place : rational_places(a))
        if (!locally_isotropic(a, place)) return false;
    return true;
}

// Integer coordinate sweep by increasing sup-norm; deterministic first hit.
std::optional<Vec> shell_sweep(const DiagForm& f, int max_height) {
    std::size_t n = f.dim();
    std::vector<long> x(n, 0);
    for (int h = 1; h <= max_height; ++h) {
        std::fill(x.begin(), x.end(), -h);
        while (true) {
            bool on_shell = false;
            for (long c : x)
                if (c == h || c == -h) on_shell = true;
            if (on_shell) {
                Vec v(n, f.field.zero());
                for (std::size_t i = 0; i < n; ++i) v[i] = f.field.integer(x[i]);
                if (!vec_is_zero(v) && f.evaluate(v).is_zero()) return v;
            }
            std::size_t i = n;
            while (i-- > 0) {
                if (x[i] < h) {
                    ++x[i];
                    std::fill(x.begin() + static_cast<long>(i) + 1, x.end(), -h);
                    break;
                }
                if (i == 0) goto next_shell;
            }
        }
    next_shell:;
    }
    return std::nullopt;
}

std::optional<Vec> rational_height_search(const DiagForm& f, int max_height) {
    std::size_t n = f.dim();
    if (n <= 3) return shell_sweep(f, max_height);
    // Full sweep at whatever height keeps the cube near half a million points.
    int h = 1;
    while (std::pow(2.0 * (h + 1) + 1.0, static_cast<double>(n)) <= 700000.0) ++h;
    if (auto w = shell_sweep(f, h)) return w;
    // Deeper pass on isotropic coordinate triples; their witnesses embed.
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            for (std::size_t k = j + 1; k < n; ++k) {
                DiagForm sub = DiagForm::make(f.field, {f.coeffs[i], f.coeffs[j], f.coeffs[k]});
                std::vector<mpq_class> vals;
                bool zero = false;
                for (const auto& c : sub.coeffs) {
                    if (c.is_zero()) zero = true;
                    else vals.push_back(c.rational_value());
                }
                if (zero || !rational_isotropic(vals)) continue;
                auto w = shell_sweep(sub, max_height);
                if (!w) continue;
                Vec full(n, f.field.zero());
                full[i] = (*w)[0];
                full[j] = (*w)[1];
                full[k] = (*w)[2];
                return full;
            }
    return std::nullopt;
}

} // namespace

IsotropyVerdict isotropy(const DiagForm& f, std::uint64_t seed) {
    const Field& F = f.field;
    std::size_t n = f.dim();
    if (n == 0) return {IsotropyStatus::anisotropic, std::nullopt};
    for (std::size_t i = 0; i < n; ++i) {
        if (f.coeffs[i].is_zero()) {
            Vec w(n, F.zero());
            w[i] = F.one();
            return certified_isotropic(f, std::move(w));
        }
    }
    if (n == 1) return {IsotropyStatus::anisotropic, std::nullopt};

    if (F.characteristic() == 2) {
        // Totally singular: a zero value is an F-linear relation between the
        // coordinate roots of the coefficients.
        Mat m = f2_root_matrix(F, f.coeffs);
        auto ker = kernel_basis(m);
        if (ker.empty()) return {IsotropyStatus::anisotropic, std::nullopt};
        return certified_isotropic(f, ker[0]);
    }

    if (F.kind() == FieldKind::rationals) {
        std::vector<mpq_class> vals;
        for (const auto& c : f.coeffs) vals.push_back(c.rational_value());
        if (!rational_isotropic(vals)) return {IsotropyStatus::anisotropic, std::nullopt};
        if (n == 2) {
            auto r = (-f.coeffs[1] / f.coeffs[0]).sqrt();
            return certified_isotropic(f, Vec{*r, F.one()});
        }
        auto w = rational_height_search(f, kRationalHeightBound);
        if (w) return certified_isotropic(f, std::move(*w));
        return {IsotropyStatus::isotropic, std::nullopt};
    }

    if (F.kind() == FieldKind::prime) {
        if (n == 2) {
            auto r = (-f.coeffs[1] / f.coeffs[0]).sqrt();
            if (!r) return {IsotropyStatus::anisotropic, std::nullopt};
            return certified_isotropic(f, Vec{*r, F.one()});
        }
        // Dimension >= 3 over a finite field is always isotropic; find a witness.
        double cost = 1;
        for (std::size_t i = 0; i < n; ++i) cost *= static_cast<double>(F.enumerable_size());
        if (cost <= static_cast<double>(kEnumerationBound)) {
            auto w = enumerate_isotropy_witness(f);
            if (!w) throw validation_error("finite field form of dimension >= 3 had no zero");
            return certified_isotropic(f, std::move(*w));
        }
        auto w = random_isotropy_witness(f, seed, kSearchBudget);
        if (!w) throw validation_error("finite field form of dimension >= 3 had no zero");
        return certified_isotropic(f, std::move(*w));
    }

    // Function field of odd characteristic: bounded seeded search only.
    auto w = random_isotropy_witness(f, seed, kSearchBudget / 2);
    if (w) return certified_isotropic(f, std::move(*w));
    return {IsotropyStatus::unknown, std::nullopt};
}

namespace {

std::vector<FieldElement> nonzero_part(const DiagForm& f) {
    std::vector<FieldElement> out;
    for (const auto& c : f.coeffs)
        if (!c.is_zero()) out.push_back(c);
    return out;
}

bool square_matching(const std::vector<FieldElement>& a, const std::vector<FieldElement>& b,
                     std::vector<bool>& used, std::size_t i) {
    if (i == a.size()) return true;
    for (std::size_t j = 0; j < b.size(); ++j) {
        if (used[j]) continue;
        if ((a[i] * b[j]).is_square()) {
            used[j] = true;
            if (square_matching(a, b, used, i + 1)) return true;
            used[j] = false;
        }
    }
    return false;
}

} // namespace

Ternary isometric(const DiagForm& f, const DiagForm& g) {
    if (f.field != g.field) throw field_error("isometry across different fields");
    if (f.dim() != g.dim()) return Ternary::no;
    const Field& F = f.field;

    if (F.characteristic() == 2)
        return f2_spans_equal(F, f.coeffs, g.coeffs) ? Ternary::yes : Ternary::no;

    std::vector<FieldElement> a = nonzero_part(f), b = nonzero_part(g);
    if (a.size() != b.size()) return Ternary::no; // radicals of different dimension
    if (a.empty()) return Ternary::yes;
    FieldElement det_product = F.one();
    for (const auto& c : a) det_product *= c;
    for (const auto& c : b) det_product *= c;

    if (F.kind() == FieldKind::prime)
        return det_product.is_square() ? Ternary::yes : Ternary::no;

    if (F.kind() == FieldKind::rationals) {
        DiagForm fa = DiagForm::make(F, a), fb = DiagForm::make(F, b);
        if (signature(fa) != signature(fb)) return Ternary::no;
        if (!det_product.is_square()) return Ternary::no;
        std::vector<mpq_class> vals;
        for (const auto& c : a) vals.push_back(c.rational_value());
        for (const auto& c : b) vals.push_back(c.rational_value());
        for (std::int64_t place : rational_places(vals))
            if (hasse_invariant(fa, place) != hasse_invariant(fb, place)) return Ternary::no;
        return Ternary::yes;
    }

    // Odd-characteristic function field: decide structurally where possible.
    std::vector<bool> used(b.size(), false);
    if (square_matching(a, b, used, 0)) return Ternary::yes;
    if (!det_product.is_square()) return Ternary::no;
    return Ternary::unknown;
}

RepresentationVerdict represents(const DiagForm& f, const FieldElement& c, std::uint64_t seed) {
    if (c.is_zero()) throw field_error("representation of zero is the isotropy question");
    const Field& F = f.field;
    if (F.characteristic() == 2) {
        auto sol = f2_span_solve(F, f.coeffs, c);
        if (!sol) return {Ternary::no, std::nullopt};
        if (f.evaluate(*sol) != c) throw validation_error("representation witness failed");
        return {Ternary::yes, std::move(*sol)};
    }
    // The radical never contributes a value, so decide on the nondegenerate part.
    std::vector<std::size_t> support;
    std::vector<FieldElement> units;
    for (std::size_t i = 0; i < f.dim(); ++i) {
        if (!f.coeffs[i].is_zero()) {
            support.push_back(i);
            units.push_back(f.coeffs[i]);
        }
    }
    DiagForm fn = DiagForm::make(F, units);
    auto pad = [&](Vec x) {
        Vec full(f.dim(), F.zero());
        for (std::size_t i = 0; i < support.size(); ++i) full[support[i]] = x[i];
        if (f.evaluate(full) != c) throw validation_error("representation witness failed");
        return full;
    };
    DiagForm ext = fn.orthogonal_sum(DiagForm::make(F, {-c}));
    IsotropyVerdict iso = isotropy(ext, seed);
    if (iso.status == IsotropyStatus::anisotropic) return {Ternary::no, std::nullopt};
    if (iso.status == IsotropyStatus::unknown) return {Ternary::unknown, std::nullopt};
    if (!iso.witness) return {Ternary::yes, std::nullopt};
    Vec w = *iso.witness;
    FieldElement t = w.back();
    w.pop_back();
    if (!t.is_zero()) return {Ternary::yes, pad(vec_scale(t.inverse(), w))};
    // fn itself is isotropic, hence universal: boost its zero vector w along a
    // coordinate direction it is not orthogonal to.
    std::size_t k = 0;
    while (w[k].is_zero()) ++k;
    Vec y(w.size(), F.zero());
    y[k] = F.one();
    FieldElement tau = (c - fn.evaluate(y)) / fn.polar(w, y);
    return {Ternary::yes, pad(vec_add(y, vec_scale(tau, w)))};
}

BilinearPfisterForm BilinearPfisterForm::make(const Field& F, std::vector<FieldElement> slots) {
    require_same_field(F, slots);
    if (slots.empty() || slots.size() > 2) throw validation_error("pfister form needs 1 or 2 slots");
    for (const auto& s : slots)
        if (s.is_zero()) throw validation_error("pfister slot must be a unit");
    return BilinearPfisterForm{F, std::move(slots)};
}

std::vector<FieldElement> BilinearPfisterForm::pure_part() const {
    std::vector<FieldElement> out = slots;
    if (slots.size() == 2) out.push_back(slots[0] * slots[1]);
    return out;
}

std::vector<FieldElement> BilinearPfisterForm::full_diagonal() const {
    std::vector<FieldElement> out{field.one()};
    auto pure = pure_part();
    out.insert(out.end(), pure.begin(), pure.end());
    return out;
}

std::string BilinearPfisterForm::str() const {
    std::string s = "<<";
    for (std::size_t i = 0; i < slots.size(); ++i) {
        if (i) s += ",";
        s += slots[i].str();
    }
    return s + ">>";
}

bool pfister_isotropic(const BilinearPfisterForm& f) {
    if (f.field.characteristic() != 2) throw field_error("characteristic 2 required");
    Mat m = f2_root_matrix(f.field, f.full_diagonal());
    return !kernel_basis(m).empty();
}

bool pfister_isometric(const BilinearPfisterForm& f, const BilinearPfisterForm& g) {
    if (f.field != g.field) throw field_error("isometry across different fields");
    if (f.field.characteristic() != 2) throw field_error("characteristic 2 required");
    if (f.slots.size() != g.slots.size()) return false;
    return f2_spans_equal(f.field, f.pure_part(), g.pure_part());
}

BilinearPfisterForm pfister_replace(const BilinearPfisterForm& f, const FieldElement& lambda) {
    if (f.field.characteristic() != 2) throw field_error("characteristic 2 required");
    if (f.slots.size() != 2) throw validation_error("slot replacement needs two slots");
    if (!pfister_isotropic(f)) throw validation_error("slot replacement requires an isotropic form");
    FieldElement alpha = f.slots[0], beta = f.slots[1];
    FieldElement replaced = beta + lambda * lambda / alpha;
    if (replaced.is_zero())
        throw validation_error("slot replacement degenerates: lambda^2 equals the slot product");
    BilinearPfisterForm out = BilinearPfisterForm::make(f.field, {alpha, replaced});
    if (!pfister_isometric(f, out))
        throw validation_error("slot replacement failed isometry verification");
    return out;
}

int hilbert_symbol(const FieldElement& a, const FieldElement& b, std::int64_t place) {
    if (a.field().kind() != FieldKind::rationals || b.field().kind() != FieldKind::rationals)
        throw field_error("hilbert symbol is rational-only");
    return hilbert_mpq(a.rational_value(), b.rational_value(), place);
}

int hasse_invariant(const DiagForm& f, std::int64_t place) {
    std::vector<FieldElement> a = nonzero_part(f);
    int eps = 1;
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = i + 1; j < a.size(); ++j) eps *= hilbert_symbol(a[i], a[j], place);
    return eps;
}

std::pair<int, int> signature(const DiagForm& f) {
    if (f.field.kind() != FieldKind::rationals) throw field_error("signature is rational-only");
    int pos = 0, neg = 0;
    for (const auto& c : f.coeffs) {
        mpq_class v = c.rational_value();
        if (v > 0) ++pos;
        if (v < 0) ++neg;
    }
    return {pos, neg};
}

std::vector<std::int64_t> relevant_places(const std::vector<FieldElement>& coeffs) {
    std::vector<mpq_class> vals;
    for (const auto& c : coeffs)
        if (!c.is_zero()) vals.push_back(c.rational_value());
    return rational_places(vals);
}

std::string ternary_str(Ternary t) {
    switch (t) {
        case Ternary::yes: return "yes";
        case Ternary::no: return "no";
        default: return "unknown";
    }
}

} // namespace pfaff
