#include "pfaff/errors.hpp"
#include "pfaff/field.hpp"
#include "pfaff/mpoly.hpp"

#include <doctest.h>

#include <algorithm>
#include <set>

using namespace pfaff;

namespace {

std::vector<Field> all_fields() {
    return {Field::rationals(),
            Field::prime(2),
            Field::prime(5),
            Field::prime(7),
            Field::binary(2),
            Field::binary(4),
            Field::function_field(2, {"s", "t"}),
            Field::function_field(3, {"s"}),
            Field::function_field(2, {"t"})};
}

} // namespace

TEST_CASE("field construction and tokens") {
    for (const Field& f : all_fields()) {
        auto back = Field::from_token(f.token());
        REQUIRE(back.has_value());
        CHECK(*back == f);
    }
    CHECK(Field::prime(5).describe() == "F_5");
    CHECK(Field::binary(4).describe() == "F_16");
    CHECK(Field::function_field(2, {"s", "t"}).describe() == "F_2(s,t)");
    CHECK(Field::function_field(2, {"s", "t"}).token() == "Fpt:2:s,t");

    CHECK_THROWS_AS(Field::prime(4), field_error);
    CHECK_THROWS_AS(Field::prime(101), field_error);
    CHECK_THROWS_AS(Field::binary(5), field_error);
    CHECK_THROWS_AS(Field::function_field(2, {"s", "s"}), field_error);
    CHECK_THROWS_AS(Field::function_field(2, {"g"}), field_error);
    CHECK_THROWS_AS(Field::function_field(2, {}), field_error);
    CHECK(!Field::from_token("Fp:4").has_value());
    CHECK(!Field::from_token("nonsense").has_value());
}

TEST_CASE("field axioms hold on random samples") {
    std::mt19937_64 rng(12345);
    for (const Field& f : all_fields()) {
        for (int trial = 0; trial < 60; ++trial) {
            FieldElement a = f.sample(rng), b = f.sample(rng), c = f.sample(rng);
            CHECK((a + b) + c == a + (b + c));
            CHECK(a + b == b + a);
            CHECK((a * b) * c == a * (b * c));
            CHECK(a * b == b * a);
            CHECK(a * (b + c) == a * b + a * c);
            CHECK(a + f.zero() == a);
            CHECK(a * f.one() == a);
            CHECK(a - a == f.zero());
            if (!a.is_zero()) {
                CHECK(a * a.inverse() == f.one());
                CHECK(a / a == f.one());
            }
        }
    }
}

TEST_CASE("prime field arithmetic facts") {
    Field f5 = Field::prime(5);
    CHECK(f5.integer(2) + f5.integer(4) == f5.integer(1));
    CHECK(f5.integer(2) * f5.integer(4) == f5.integer(3));
    CHECK(f5.integer(2).inverse() == f5.integer(3));
    CHECK(f5.integer(4).inverse() == f5.integer(4));
    CHECK(f5.integer(-1) == f5.integer(4));
    CHECK(f5.integer(2).pow(-1) == f5.integer(3));
}

TEST_CASE("binary field arithmetic facts") {
    Field f16 = Field::binary(4);
    FieldElement g = f16.generator();
    // The generator satisfies g^4 = g + 1 and has multiplicative order 15.
    CHECK(g.pow(4) == g + f16.one());
    CHECK(g.pow(15) == f16.one());
    CHECK(g.pow(5) != f16.one());
    CHECK(g.pow(3) != f16.one());
    CHECK(g.inverse() == f16.parse("g^3 + 1"));
    CHECK(g + g == f16.zero());

    Field f4 = Field::binary(2);
    FieldElement h = f4.generator();
    CHECK(h.pow(2) == h + f4.one());
    CHECK(h.pow(3) == f4.one());
    CHECK(h.inverse() == h + f4.one());
}

TEST_CASE("function field arithmetic facts") {
    Field f = Field::function_field(2, {"s", "t"});
    FieldElement s = f.variable(0), t = f.variable(1);
    CHECK((s + t) * (s + t) == s * s + t * t);
    CHECK(s / t + f.one() == (s + t) / t);
    CHECK((s + f.one()).inverse() * (s + f.one()) == f.one());
    CHECK((s * t).pow(3) == s.pow(3) * t.pow(3));

    Field f3 = Field::function_field(3, {"s"});
    FieldElement u = f3.variable(0);
    CHECK((u + f3.one()).pow(3) == u.pow(3) + f3.one());
    CHECK(u - u == f3.zero());
}

TEST_CASE("rational arithmetic facts") {
    Field q = Field::rationals();
    CHECK(q.parse("2/3") + q.parse("1/6") == q.parse("5/6"));
    CHECK(q.parse("-3/4") * q.parse("-4/3") == q.one());
    CHECK(q.parse("2^10") == q.integer(1024));
}

TEST_CASE("square roots match enumeration over F_5") {
    Field f5 = Field::prime(5);
    // Squares mod 5 are exactly {0, 1, 4}.
    std::set<std::int64_t> squares;
    for (std::int64_t r = 0; r < 5; ++r) squares.insert(r * r % 5);
    for (std::int64_t x = 0; x < 5; ++x) {
        auto root = f5.integer(x).sqrt();
        CHECK(root.has_value() == (squares.count(x) > 0));
        if (root) CHECK(*root * *root == f5.integer(x));
    }
    // Canonical root is the smaller residue: sqrt(4) = 2, not 3.
    CHECK(*f5.integer(4).sqrt() == f5.integer(2));
    CHECK(*f5.integer(1).sqrt() == f5.integer(1));
}

TEST_CASE("square roots in characteristic-2 fields are unique and total") {
    for (Field f : {Field::binary(2), Field::binary(4), Field::prime(2)}) {
        std::set<std::string> roots;
        for (const FieldElement& x : f.enumerate()) {
            auto r = x.sqrt();
            REQUIRE(r.has_value());
            CHECK(*r * *r == x);
            roots.insert(r->str());
        }
        CHECK(roots.size() == f.enumerable_size());
    }
}

TEST_CASE("square roots over function fields") {
    Field f = Field::function_field(2, {"s", "t"});
    FieldElement s = f.variable(0), t = f.variable(1);
    CHECK(*(s * s).sqrt() == s);
    CHECK(*(s * s + t * t).sqrt() == s + t);
    CHECK(!s.sqrt().has_value());
    CHECK(!(s + t).sqrt().has_value());
    CHECK(*((s * s) / (t * t)).sqrt() == s / t);
    CHECK(*((s + t).pow(4)).fourth_root() == s + t);
    CHECK(*(s.pow(4) + t.pow(4)).fourth_root() == s + t);

    Field f3 = Field::function_field(3, {"s"});
    FieldElement u = f3.variable(0);
    // Both u and 2u square to u^2; the canonical root has the smaller lead coefficient.
    CHECK(*(u * u).sqrt() == u);
    CHECK(!(f3.integer(2) * u * u).sqrt().has_value());
    CHECK(*(u * u * (u + f3.one()) * (u + f3.one())).sqrt() == u * (u + f3.one()));
}

TEST_CASE("rational square roots") {
    Field q = Field::rationals();
    CHECK(*q.parse("9/4").sqrt() == q.parse("3/2"));
    CHECK(!q.integer(2).sqrt().has_value());
    CHECK(!q.integer(-4).sqrt().has_value());
    CHECK(*q.integer(0).sqrt() == q.zero());
    CHECK(*q.integer(16).fourth_root() == q.integer(2));
    CHECK(!q.integer(-16).fourth_root().has_value());
}

TEST_CASE("square classes") {
    Field q = Field::rationals();
    CHECK(q.integer(8).square_class() == q.integer(2));
    CHECK(q.integer(-12).square_class() == q.integer(-3));
    CHECK(q.integer(49).square_class() == q.one());
    CHECK(q.parse("5/3").square_class() == q.integer(15));
    CHECK(q.parse("-1/4").square_class() == q.integer(-1));
    CHECK_THROWS_AS(q.zero().square_class(), field_error);

    Field f5 = Field::prime(5);
    CHECK(f5.integer(2).square_class() == f5.integer(2));
    CHECK(f5.integer(3).square_class() == f5.integer(2));
    CHECK(f5.integer(4).square_class() == f5.one());
    Field f7 = Field::prime(7);
    // 2 = 3^2 mod 7 is a square; the least nonsquare mod 7 is 3.
    CHECK(f7.integer(2).square_class() == f7.one());
    CHECK(f7.integer(5).square_class() == f7.integer(3));

    Field f = Field::function_field(2, {"s", "t"});
    FieldElement s = f.variable(0), t = f.variable(1);
    CHECK((s * s * t).square_class() == t);
    CHECK((s * s).square_class() == f.one());
    CHECK(((s + f.one()) / t).square_class() == s * t + t);

    Field f3 = Field::function_field(3, {"s"});
    FieldElement u = f3.variable(0);
    CHECK((f3.integer(2) * u * u).square_class() == f3.integer(2));
    CHECK(u.pow(3).square_class() == u);
    CHECK((f3.integer(2) * u.pow(4) + f3.integer(2) * u * u).square_class() ==
          f3.integer(2) * u * u + f3.integer(2));

    std::mt19937_64 rng(777);
    for (const Field& k : all_fields()) {
        for (int trial = 0; trial < 40; ++trial) {
            FieldElement x = k.sample(rng);
            if (x.is_zero()) continue;
            FieldElement cls = x.square_class();
            CHECK((x * cls).is_square());
            FieldElement y = k.sample(rng);
            if (!y.is_zero()) CHECK((x * y * y).square_class() == cls);
        }
    }
}

TEST_CASE("coordinates over the subfield of squares") {
    Field f = Field::function_field(2, {"s", "t"});
    FieldElement s = f.variable(0), t = f.variable(1);
    FieldElement one = f.one();
    // x = 1 + s + s^2 t + t decomposes as 1^2*1 + 1^2*s + (s+1)^2*t + 0^2*st.
    FieldElement x = one + s + s * s * t + t;
    auto basis = f.f2_basis();
    REQUIRE(basis.size() == 4);
    CHECK(basis[0] == one);
    CHECK(basis[1] == s);
    CHECK(basis[2] == t);
    CHECK(basis[3] == s * t);
    auto roots = x.f2_coordinate_roots();
    REQUIRE(roots.size() == 4);
    CHECK(roots[0] == one);
    CHECK(roots[1] == one);
    CHECK(roots[2] == s + one);
    CHECK(roots[3] == f.zero());

    std::mt19937_64 rng(999);
    for (Field k : {Field::function_field(2, {"s", "t"}), Field::function_field(2, {"t"}),
                    Field::binary(4), Field::prime(2)}) {
        auto kbasis = k.f2_basis();
        for (int trial = 0; trial < 50; ++trial) {
            FieldElement y = k.sample(rng);
            auto r = y.f2_coordinate_roots();
            REQUIRE(r.size() == kbasis.size());
            FieldElement acc = k.zero();
            for (std::size_t i = 0; i < r.size(); ++i) acc += r[i] * r[i] * kbasis[i];
            CHECK(acc == y);
        }
    }
    CHECK_THROWS_AS(Field::prime(5).one().f2_coordinate_roots(), field_error);
}

TEST_CASE("parse and print round-trip") {
    std::mt19937_64 rng(4242);
    for (const Field& f : all_fields()) {
        for (int trial = 0; trial < 80; ++trial) {
            FieldElement x = f.sample(rng);
            CHECK(f.parse(x.str()) == x);
        }
    }
    Field q = Field::rationals();
    CHECK(q.parse(" (1 + 2) * 3 ") == q.integer(9));
    CHECK(q.parse("-3/4").str() == "-3/4");
    Field f5 = Field::prime(5);
    CHECK(f5.parse("7") == f5.integer(2));
    CHECK(f5.parse("2^-1") == f5.integer(3));
    Field f = Field::function_field(2, {"s", "t"});
    CHECK(f.parse("(s + 1)/(t)") == (f.variable(0) + f.one()) / f.variable(1));
    CHECK(f.parse("s*t + s^2").str() == "s^2 + s*t");
    Field f16 = Field::binary(4);
    CHECK(f16.parse("g^2 + 1").str() == "g^2 + 1");

    CHECK_THROWS_AS(q.parse("s + 1"), parse_error);
    CHECK_THROWS_AS(q.parse("1 +"), parse_error);
    CHECK_THROWS_AS(q.parse("(1"), parse_error);
    CHECK_THROWS_AS(q.parse("1/0"), parse_error);
    CHECK_THROWS_AS(f.parse("g"), parse_error);
    try {
        q.parse("1 + @");
    } catch (const parse_error& e) {
        CHECK(e.position() == 4);
    }
}

TEST_CASE("field enumeration") {
    CHECK(Field::prime(5).enumerate().size() == 5);
    CHECK(Field::binary(4).enumerate().size() == 16);
    CHECK(Field::rationals().enumerable_size() == 0);
    CHECK(Field::function_field(2, {"s"}).enumerable_size() == 0);
    std::set<std::string> seen;
    for (const FieldElement& x : Field::binary(4).enumerate()) seen.insert(x.str());
    CHECK(seen.size() == 16);
}

TEST_CASE("polynomial gcd") {
    // Over F_5: s^2 - t^2 = (s - t)(s + t), so gcd with s - t is s - t.
    MPoly s5 = MPoly::variable(5, 0), t5 = MPoly::variable(5, 1);
    MPoly a = s5 * s5 - t5 * t5;
    MPoly b = s5 - t5;
    CHECK(MPoly::gcd(a, b) == (s5 - t5).monic());

    MPoly s2 = MPoly::variable(2, 0), t2 = MPoly::variable(2, 1);
    MPoly one2 = MPoly::constant(2, 1);
    CHECK(MPoly::gcd((s2 + t2) * (s2 + one2), (s2 + t2) * (t2 + one2)) == s2 + t2);
    CHECK(MPoly::gcd(s2 + one2, t2 + one2) == one2);
    CHECK(MPoly::gcd(MPoly(2), s2) == s2);

    std::mt19937_64 rng(31337);
    // gcd(fg, fh) is divisible by f for random polynomials.
    auto rand_poly = [&](std::int64_t p) {
        MPoly f(p);
        for (int i = 0; i < 3; ++i) {
            MPoly term = MPoly::constant(p, static_cast<std::int64_t>(rng() % p));
            term = term * MPoly::variable(p, 0).pow(static_cast<int>(rng() % 3));
            term = term * MPoly::variable(p, 1).pow(static_cast<int>(rng() % 3));
            f = f + term;
        }
        return f;
    };
    for (std::int64_t p : {2, 3, 5}) {
        for (int trial = 0; trial < 25; ++trial) {
            MPoly f = rand_poly(p), g = rand_poly(p), h = rand_poly(p);
            if (f.is_zero() || g.is_zero() || h.is_zero()) continue;
            MPoly d = MPoly::gcd(f * g, f * h);
            CHECK(d.divide_exact(MPoly::gcd(d, f.monic())).has_value());
            CHECK((f * g).divide_exact(d).has_value());
            CHECK((f * h).divide_exact(d).has_value());
        }
    }
}

TEST_CASE("square decomposition of polynomials") {
    // f = s^2 t^3 (s+t)^5 over F_2: squarefree part t(s+t), square part s t (s+t)^2.
    MPoly s = MPoly::variable(2, 0), t = MPoly::variable(2, 1);
    MPoly f = s.pow(2) * t.pow(3) * (s + t).pow(5);
    auto dec = f.decompose_square();
    CHECK(dec.c == 1);
    CHECK(dec.s == t * (s + t));
    CHECK(dec.r == s * t * (s + t).pow(2));

    // f = (s+t)^2 = s^2 + t^2 has zero partials; the root is recovered exactly.
    auto dec2 = (s * s + t * t).decompose_square();
    CHECK(dec2.c == 1);
    CHECK(dec2.s == MPoly::constant(2, 1));
    CHECK(dec2.r == s + t);

    // f = 2 s^4 (s+1)^3 over F_3.
    MPoly u = MPoly::variable(3, 0);
    MPoly one3 = MPoly::constant(3, 1);
    MPoly g = MPoly::constant(3, 2) * u.pow(4) * (u + one3).pow(3);
    auto dec3 = g.decompose_square();
    CHECK(dec3.c == 2);
    CHECK(dec3.s == u + one3);
    CHECK(dec3.r == u.pow(2) * (u + one3));

    std::mt19937_64 rng(5150);
    auto rand_poly = [&](std::int64_t p) {
        MPoly fp(p);
        for (int i = 0; i < 3; ++i) {
            MPoly term = MPoly::constant(p, static_cast<std::int64_t>(rng() % p));
            term = term * MPoly::variable(p, 0).pow(static_cast<int>(rng() % 3));
            term = term * MPoly::variable(p, 1).pow(static_cast<int>(rng() % 2));
            fp = fp + term;
        }
        return fp;
    };
    for (std::int64_t p : {2, 3, 5}) {
        for (int trial = 0; trial < 30; ++trial) {
            MPoly fp = rand_poly(p);
            if (fp.is_zero()) continue;
            auto d = fp.decompose_square();
            CHECK(MPoly::constant(p, d.c) * d.s * d.r * d.r == fp);
            // The squarefree slot stays squarefree: repeating fixes it.
            auto dd = d.s.decompose_square();
            CHECK(dd.s == d.s.monic());
            CHECK(dd.r.is_constant());
        }
    }
}
