#include <cstdio>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "pfaff/cli.hpp"
#include "pfaff/errors.hpp"

using namespace pfaff;

namespace {

const char* transpose_spec = R"([field]
kind = rationals

[algebra]
kind = m4_transpose
)";

const char* sigma_spec = R"([field]
kind = function
p = 2
vars = s t

[algebra]
kind = tensor

[factor]
alg = matrix
alpha = s
involution = weighted_transpose

[factor]
alg = matrix
alpha = t
involution = weighted_transpose
)";

std::string write_temp(const std::string& name, const std::string& text) {
    std::ofstream out(name);
    out << text;
    return name;
}

std::string shipped(const std::string& name) { return std::string(SPEC_DIR) + "/" + name; }

} // namespace

TEST_CASE("spec files parse, print and reparse to the same instance") {
    InstanceSpec a = parse_instance_spec(sigma_spec);
    InstanceSpec b = parse_instance_spec(a.print());
    CHECK(a == b);
    CHECK(a.print() == b.print());
    CHECK(a.field_kind == "function");
    CHECK(a.p == 2);
    CHECK(a.vars == std::vector<std::string>{"s", "t"});
    REQUIRE(a.construction.factors.size() == 2);
    CHECK(a.construction.factors[0].alpha == "s");

    auto [A, sigma] = build_instance(a);
    CHECK(A.dimension == 16);
    CHECK(sigma.type == InvolutionType::orthogonal);

    InstanceSpec t = parse_instance_spec(transpose_spec);
    CHECK(parse_instance_spec(t.print()) == t);
    auto [M, tr] = build_instance(t);
    CHECK(M.label == "M4");

    const char* adjoint_spec = R"([field]
kind = prime
p = 5
[algebra]
kind = m4_adjoint
diag = 1; 2; 1 + 1; 4
)";
    InstanceSpec d = parse_instance_spec(adjoint_spec);
    CHECK(parse_instance_spec(d.print()) == d);
    CHECK(d.construction.adjoint_diag == std::vector<std::string>{"1", "2", "1 + 1", "4"});

    const char* twisted_spec = R"([field]
kind = prime
p = 5
[algebra]
kind = factor
[factor]
alg = symbol
a = 2
b = 3
involution = twisted
s = i
)";
    InstanceSpec w = parse_instance_spec(twisted_spec);
    CHECK(parse_instance_spec(w.print()) == w);
    CHECK(w.construction.factors[0].s == "i");
}

TEST_CASE("spec parsing reports positions for malformed input") {
    auto line_of = [](const char* text) {
        try {
            parse_instance_spec(text);
        } catch (const parse_error& e) {
            return e.position();
        }
        return std::size_t(0);
    };
    CHECK(line_of("[field]\nkind rationals\n") == 2);
    CHECK(line_of("[field]\nkind = rationals\nkind = prime\n") == 3);
    CHECK(line_of("[field]\nkind = sevenadic\n") == 2);
    CHECK(line_of("[what]\n") == 1);
    CHECK(line_of("kind = rationals\n") == 1);
    CHECK(line_of("[field]\nkind = prime\n\n[algebra]\nkind = tensor\n") == 1); // missing p
    CHECK_THROWS_AS(parse_instance_spec("[field]\nkind = rationals\n"), parse_error);
    CHECK_THROWS_AS(parse_instance_spec("[field]\np = 5x\nkind = prime\n[algebra]\nkind = tensor\n"),
                    parse_error);
}

TEST_CASE("invariant reports round-trip through their printed form") {
    InvariantReport r = invariant_report(parse_instance_spec(transpose_spec));
    CHECK(r.get("spec_field") == std::string("Q"));
    CHECK(r.get("involution_type") == std::string("orthogonal"));
    CHECK(r.get("discriminant_class") == std::string("1"));
    CHECK(r.get("decomposable") == std::string("yes"));
    CHECK(r.get("metabolic") == std::string("no"));
    CHECK(r.get("transpose_type") == std::string("yes"));
    CHECK(!r.get("pfister"));
    InvariantReport back = InvariantReport::parse(r.print());
    CHECK(back == r);
    CHECK(back.print() == r.print());

    InvariantReport s = invariant_report(parse_instance_spec(sigma_spec));
    CHECK(s.get("spec_field") == std::string("Fpt:2:s,t"));
    auto pf = s.get("pfister");
    CHECK((pf == std::string("s; t") || pf == std::string("t; s")));
    CHECK(s.get("metabolic") == std::string("no"));
    CHECK(s.get("transpose_type") == std::string("no"));
    CHECK(InvariantReport::parse(s.print()) == s);
}

TEST_CASE("invariants command handles the exit-code contract") {
    std::ostringstream out, err;
    std::string good = write_temp("tmp_good.spec", transpose_spec);
    CHECK(cmd_invariants(good, out, err) == 0);
    CHECK(out.str().find("transpose_type = yes") != std::string::npos);
    CHECK(out.str().find("metabolic: no") != std::string::npos);

    out.str("");
    std::string bad = write_temp("tmp_bad.spec", "[field]\nkind = prime\nwhat = 3\n");
    CHECK(cmd_invariants(bad, out, err) == 2);
    CHECK(err.str().find("parse error") != std::string::npos);

    err.str("");
    CHECK(cmd_invariants("no_such_file.spec", out, err) == 2);

    err.str("");
    std::string symplectic = write_temp("tmp_symplectic.spec", R"([field]
kind = prime
p = 5
[algebra]
kind = tensor
[factor]
alg = symbol
a = 2
b = 3
involution = conjugation
[factor]
alg = matrix
alpha = 1
involution = weighted_transpose
)");
    CHECK(cmd_invariants(symplectic, out, err) == 3);
    CHECK(err.str().find("orthogonal involution") != std::string::npos);

    err.str("");
    std::string badfield = write_temp("tmp_badfield.spec", R"([field]
kind = prime
p = 6
[algebra]
kind = m4_transpose
)");
    CHECK(cmd_invariants(badfield, out, err) == 3);
}

TEST_CASE("compare command reports verdict and evidence") {
    std::string sig = write_temp("tmp_sigma.spec", sigma_spec);
    std::string trq = write_temp("tmp_trq.spec", transpose_spec);
    std::string sigp = shipped("example-sigma-prime.spec");

    std::ostringstream out, err;
    CHECK(cmd_compare(sig, sig, std::nullopt, out, err) == 0);
    CHECK(out.str().find("verdict: isomorphic") != std::string::npos);
    CHECK(out.str().find("identical structure constants") != std::string::npos);

    out.str("");
    CHECK(cmd_compare(sig, sigp, std::nullopt, out, err) == 0);
    CHECK(out.str().find("verdict: not isomorphic") != std::string::npos);
    CHECK(out.str().find("verdict = no") != std::string::npos);

    out.str("");
    CHECK(cmd_compare(trq, trq, std::optional<std::string>("1 + e12"), out, err) == 0);
    CHECK(out.str().find("verdict: isomorphic") != std::string::npos);

    err.str("");
    CHECK(cmd_compare(trq, sig, std::nullopt, out, err) == 3);
    CHECK(err.str().find("common base field") != std::string::npos);

    err.str("");
    CHECK(cmd_compare(trq, trq, std::optional<std::string>("e12"), out, err) == 3);
}

TEST_CASE("shipped spec files parse and round-trip") {
    for (const char* name : {"transpose-M4-Q.spec", "example-sigma.spec",
                             "example-sigma-prime.spec"}) {
        std::ifstream in(shipped(name));
        REQUIRE(in.good());
        std::stringstream ss;
        ss << in.rdbuf();
        InstanceSpec spec = parse_instance_spec(ss.str());
        CHECK(parse_instance_spec(spec.print()) == spec);
        auto [A, sigma] = build_instance(spec);
        CHECK(A.dimension == 16);
    }
}

TEST_CASE("field descriptors cover tokens and shorthands") {
    CHECK(parse_field_argument("Q").kind() == FieldKind::rationals);
    CHECK(parse_field_argument("F5").p() == 5);
    CHECK(parse_field_argument("F2").p() == 2);
    CHECK(parse_field_argument("F4").k() == 2);
    CHECK(parse_field_argument("F16").k() == 4);
    CHECK(parse_field_argument("Fp:7").p() == 7);
    CHECK(parse_field_argument("F2k:3").k() == 3);
    Field fst = parse_field_argument("F2st");
    CHECK(fst.kind() == FieldKind::function);
    CHECK(fst.vars() == std::vector<std::string>{"s", "t"});
    CHECK(parse_field_argument("Fpt:3:u").vars() == std::vector<std::string>{"u"});
    CHECK_THROWS_AS(parse_field_argument("F6"), validation_error);
    CHECK_THROWS_AS(parse_field_argument("F9"), validation_error);
    CHECK_THROWS_AS(parse_field_argument("hello"), validation_error);
}

TEST_CASE("verify runs its suites and respects trial counts") {
    std::ostringstream out, err;
    CHECK(cmd_verify("F5", 0, 1, out, err) == 0);
    CHECK(out.str().find("0 trials") != std::string::npos);
    CHECK(out.str().find("verify: PASS") != std::string::npos);

    VerifySummary s5 = run_verify(Field::prime(5), 6, 11);
    CHECK(s5.ok());
    for (const auto& s : s5.suites) {
        if (s.label == "iso" || s.label == "rema" || s.label == "q" || s.label == "bas" ||
            s.label == "jay" || s.label == "hyp") {
            CHECK(s.passed > 0);
            CHECK(s.failed == 0);
        }
        if (s.label == "pfq" || s.label == "pfister" || s.label == "char" || s.label == "lem" ||
            s.label == "repl") {
            CHECK(s.passed == 0);
            CHECK(s.skipped == 6);
        }
    }

    VerifySummary s2 = run_verify(Field::function_field(2, {"s", "t"}), 4, 3);
    CHECK(s2.ok());
    for (const auto& s : s2.suites) {
        if (s.label == "pfq" || s.label == "pfister") CHECK(s.passed > 0);
        if (s.label == "x2") CHECK(s.skipped == 4);
    }

    VerifySummary sq = run_verify(Field::rationals(), 4, 5);
    CHECK(sq.ok());

    VerifySummary s3 = run_verify(Field::prime(3), 4, 9);
    CHECK(s3.ok());
    for (const auto& s : s3.suites)
        if (s.label == "x2") CHECK(s.passed == 2);

    std::ostringstream bad;
    err.str("");
    CHECK(cmd_verify("F6", 2, 1, bad, err) == 3);
    CHECK(err.str().find("field descriptor") != std::string::npos);
}

TEST_CASE("the worked example reproduces deterministically") {
    std::ostringstream a, b, err;
    CHECK(cmd_reproduce_example(a, err) == 0);
    CHECK(cmd_reproduce_example(b, err) == 0);
    CHECK(a.str() == b.str());
    CHECK(a.str().find("pfister form <<s, t>> anisotropic: yes") != std::string::npos);
    CHECK(a.str().find("bilinear invariants distinct: yes") != std::string::npos);
    CHECK(a.str().find("involutions not isomorphic: yes") != std::string::npos);
    CHECK(a.str().find("square-central subalgebras match under u -> u' + 1, v -> v': yes") !=
          std::string::npos);
    std::remove("tmp_good.spec");
    std::remove("tmp_bad.spec");
    std::remove("tmp_symplectic.spec");
    std::remove("tmp_badfield.spec");
    std::remove("tmp_sigma.spec");
    std::remove("tmp_trq.spec");
}
