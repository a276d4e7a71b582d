#include "pfaff/cli.hpp"

#include <cctype>
#include <fstream>
#include <ostream>
#include <sstream>

#include "pfaff/errors.hpp"
#include "pfaff/linalg.hpp"
#include "pfaff/quadform.hpp"

namespace pfaff {

namespace {

std::string trim(std::string_view s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return std::string(s.substr(b, e - b));
}

std::vector<std::string> split_list(std::string_view s, char sep) {
    std::vector<std::string> out;
    std::string item;
    std::stringstream ss{std::string(s)};
    while (std::getline(ss, item, sep)) {
        std::string t = trim(item);
        if (!t.empty()) out.push_back(t);
    }
    return out;
}

std::string join_list(const std::vector<std::string>& items, const std::string& sep) {
    std::string out;
    for (std::size_t i = 0; i < items.size(); ++i) {
        if (i) out += sep;
        out += items[i];
    }
    return out;
}

std::int64_t parse_int(const std::string& text, std::size_t line) {
    try {
        std::size_t used = 0;
        std::int64_t v = std::stoll(text, &used);
        if (used != text.size()) throw parse_error("trailing text after integer", line);
        return v;
    } catch (const parse_error&) {
        throw;
    } catch (const std::exception&) {
        throw parse_error("expected an integer, got '" + text + "'", line);
    }
}

const char* alg_word(FactorSpec::Alg a) {
    return a == FactorSpec::Alg::symbol ? "symbol" : "matrix";
}

const char* inv_word(FactorSpec::Inv i) {
    switch (i) {
        case FactorSpec::Inv::conjugation: return "conjugation";
        case FactorSpec::Inv::twisted: return "twisted";
        default: return "weighted_transpose";
    }
}

const char* kind_word(ConstructionSpec::Kind k) {
    switch (k) {
        case ConstructionSpec::Kind::factor: return "factor";
        case ConstructionSpec::Kind::tensor: return "tensor";
        case ConstructionSpec::Kind::m4_transpose: return "m4_transpose";
        default: return "m4_adjoint";
    }
}

} // namespace

InstanceSpec parse_instance_spec(std::string_view text) {
    InstanceSpec spec;
    std::string stanza;
    std::size_t field_line = 0, algebra_line = 0;
    std::vector<std::string> seen; // stanza-qualified keys, for duplicate detection

    std::stringstream ss{std::string(text)};
    std::string raw;
    std::size_t line = 0;
    while (std::getline(ss, raw)) {
        ++line;
        std::string s = trim(raw);
        if (s.empty() || s[0] == '#') continue;
        if (s.front() == '[') {
            if (s.back() != ']') throw parse_error("unterminated stanza header", line);
            stanza = trim(s.substr(1, s.size() - 2));
            if (stanza == "field") {
                if (field_line) throw parse_error("duplicate field stanza", line);
                field_line = line;
            } else if (stanza == "algebra") {
                if (algebra_line) throw parse_error("duplicate algebra stanza", line);
                algebra_line = line;
            } else if (stanza == "factor") {
                spec.construction.factors.emplace_back();
            } else {
                throw parse_error("unknown stanza '" + stanza + "'", line);
            }
            continue;
        }
        std::size_t eq = s.find('=');
        if (eq == std::string::npos) throw parse_error("expected 'key = value'", line);
        std::string key = trim(s.substr(0, eq));
        std::string value = trim(s.substr(eq + 1));
        if (key.empty()) throw parse_error("missing key before '='", line);
        if (value.empty()) throw parse_error("missing value for '" + key + "'", line);
        if (stanza.empty()) throw parse_error("key outside any stanza", line);

        std::string qual =
            stanza == "factor" ? "factor" + std::to_string(spec.construction.factors.size()) + "." + key
                               : stanza + "." + key;
        for (const auto& q : seen)
            if (q == qual) throw parse_error("duplicate key '" + key + "'", line);
        seen.push_back(qual);

        if (stanza == "field") {
            if (key == "kind") {
                if (value != "rationals" && value != "prime" && value != "binary" &&
                    value != "function")
                    throw parse_error("unknown field kind '" + value + "'", line);
                spec.field_kind = value;
            } else if (key == "p") {
                spec.p = parse_int(value, line);
            } else if (key == "k") {
                spec.k = static_cast<int>(parse_int(value, line));
            } else if (key == "vars") {
                spec.vars = split_list(value, ' ');
            } else {
                throw parse_error("unknown field key '" + key + "'", line);
            }
        } else if (stanza == "algebra") {
            if (key == "kind") {
                if (value == "factor") spec.construction.kind = ConstructionSpec::Kind::factor;
                else if (value == "tensor") spec.construction.kind = ConstructionSpec::Kind::tensor;
                else if (value == "m4_transpose")
                    spec.construction.kind = ConstructionSpec::Kind::m4_transpose;
                else if (value == "m4_adjoint")
                    spec.construction.kind = ConstructionSpec::Kind::m4_adjoint;
                else throw parse_error("unknown algebra kind '" + value + "'", line);
            } else if (key == "diag") {
                spec.construction.adjoint_diag = split_list(value, ';');
                if (spec.construction.adjoint_diag.size() != 4)
                    throw parse_error("diag needs four entries", line);
            } else {
                throw parse_error("unknown algebra key '" + key + "'", line);
            }
        } else { // factor
            FactorSpec& f = spec.construction.factors.back();
            if (key == "alg") {
                if (value == "symbol") f.alg = FactorSpec::Alg::symbol;
                else if (value == "matrix") f.alg = FactorSpec::Alg::matrix;
                else throw parse_error("unknown factor algebra '" + value + "'", line);
            } else if (key == "a") {
                f.a = value;
            } else if (key == "b") {
                f.b = value;
            } else if (key == "alpha") {
                f.alpha = value;
            } else if (key == "involution") {
                if (value == "conjugation") f.inv = FactorSpec::Inv::conjugation;
                else if (value == "twisted") f.inv = FactorSpec::Inv::twisted;
                else if (value == "weighted_transpose")
                    f.inv = FactorSpec::Inv::weighted_transpose;
                else throw parse_error("unknown involution '" + value + "'", line);
            } else if (key == "s") {
                f.s = value;
            } else {
                throw parse_error("unknown factor key '" + key + "'", line);
            }
        }
    }

    if (!field_line) throw parse_error("missing field stanza", line);
    if (spec.field_kind.empty()) throw parse_error("field stanza needs a kind", field_line);
    if (spec.field_kind == "prime" || spec.field_kind == "function") {
        if (spec.p == 0) throw parse_error("field stanza needs p", field_line);
    }
    if (spec.field_kind == "binary" && spec.k == 0)
        throw parse_error("field stanza needs k", field_line);
    if (spec.field_kind == "function" && spec.vars.empty())
        throw parse_error("field stanza needs vars", field_line);
    if (!algebra_line) throw parse_error("missing algebra stanza", line);
    return spec;
}

std::string InstanceSpec::print() const {
    std::string out = "[field]\nkind = " + field_kind + "\n";
    if (field_kind == "prime" || field_kind == "function")
        out += "p = " + std::to_string(p) + "\n";
    if (field_kind == "binary") out += "k = " + std::to_string(k) + "\n";
    if (field_kind == "function") out += "vars = " + join_list(vars, " ") + "\n";

    out += "\n[algebra]\nkind = " + std::string(kind_word(construction.kind)) + "\n";
    if (construction.kind == ConstructionSpec::Kind::m4_adjoint)
        out += "diag = " + join_list(construction.adjoint_diag, "; ") + "\n";

    for (const FactorSpec& f : construction.factors) {
        out += "\n[factor]\nalg = " + std::string(alg_word(f.alg)) + "\n";
        if (f.alg == FactorSpec::Alg::symbol) {
            out += "a = " + f.a + "\n";
            out += "b = " + f.b + "\n";
        } else {
            out += "alpha = " + f.alpha + "\n";
        }
        out += "involution = " + std::string(inv_word(f.inv)) + "\n";
        if (f.inv == FactorSpec::Inv::twisted) out += "s = " + f.s + "\n";
    }
    return out;
}

Field instance_field(const InstanceSpec& spec) {
    if (spec.field_kind == "rationals") return Field::rationals();
    if (spec.field_kind == "prime") return Field::prime(spec.p);
    if (spec.field_kind == "binary") return Field::binary(spec.k);
    if (spec.field_kind == "function") return Field::function_field(spec.p, spec.vars);
    throw validation_error("unknown field kind '" + spec.field_kind + "'");
}

std::pair<StructureAlgebra, Involution> build_instance(const InstanceSpec& spec) {
    return build_algebra(instance_field(spec), spec.construction);
}

std::optional<std::string> InvariantReport::get(std::string_view key) const {
    for (const auto& [k, v] : entries)
        if (k == key) return v;
    return std::nullopt;
}

std::string InvariantReport::print() const {
    std::string out;
    auto say = [&](std::string_view key, std::string_view label) {
        if (auto v = get(key)) out += std::string(label) + ": " + *v + "\n";
    };
    say("algebra", "algebra");
    say("involution", "involution");
    say("involution_type", "involution type");
    say("spec_field", "base field");
    say("discriminant_class", "discriminant class");
    say("decomposable", "decomposable");
    say("q_plus", "plus form");
    say("q_minus", "minus form");
    say("pfister", "bilinear invariant slots");
    say("metabolic", "metabolic");
    say("metabolic_evidence", "metabolic evidence");
    say("transpose_type", "transpose type");
    out += "\n";
    for (const auto& [k, v] : entries) out += k + " = " + v + "\n";
    return out;
}

InvariantReport InvariantReport::parse(std::string_view text) {
    InvariantReport r;
    std::stringstream ss{std::string(text)};
    std::string line;
    while (std::getline(ss, line)) {
        std::size_t eq = line.find(" = ");
        if (eq == std::string::npos) continue;
        r.entries.emplace_back(trim(line.substr(0, eq)), trim(line.substr(eq + 3)));
    }
    return r;
}

namespace {

std::string elements_joined(const Field& F, const std::vector<FieldElement>& xs) {
    std::vector<std::string> out;
    for (const auto& x : xs) out.push_back(x.str());
    return join_list(out, "; ");
}

std::string vectors_joined(const StructureAlgebra& A, const std::vector<Vec>& xs) {
    std::vector<std::string> out;
    for (const auto& x : xs) out.push_back(A.element_str(x));
    return join_list(out, "; ");
}

} // namespace

InvariantReport invariant_report(const InstanceSpec& spec, std::uint64_t seed) {
    auto [A, sigma] = build_instance(spec);
    const Field& F = A.field;
    PfaffianPackage pkg = compute_pfaffian(A, sigma, seed);

    InvariantReport r;
    auto put = [&](std::string key, std::string value) {
        r.entries.emplace_back(std::move(key), std::move(value));
    };
    put("spec_field", F.token());
    put("algebra", A.label);
    put("involution", sigma.label);
    put("involution_type", involution_type_str(sigma.type));
    put("discriminant_class", pkg.d.square_class().str());
    put("decomposable", pkg.decomposable ? "yes" : "no");
    put("alt_basis", vectors_joined(A, pkg.alt_basis));
    put("anchor_index", std::to_string(pkg.anchor_index));
    put("anchor_value", pkg.anchor_root.str());
    put("q_values", elements_joined(F, pkg.q_values));
    {
        std::vector<FieldElement> flat;
        for (const auto& row : pkg.polar_matrix)
            for (const auto& v : row) flat.push_back(v);
        put("polar_matrix", elements_joined(F, flat));
        flat.clear();
        for (const auto& row : pkg.p_matrix)
            for (const auto& v : row) flat.push_back(v);
        put("adjoint_matrix", elements_joined(F, flat));
    }

    if (pkg.decomposable) {
        split_plus_minus(pkg, seed);
        put("q_plus", elements_joined(F, pkg.q_plus_diag));
        put("q_minus", elements_joined(F, pkg.q_minus_diag));
        put("alt_plus", vectors_joined(A, pkg.alt_plus));
        put("alt_minus", vectors_joined(A, pkg.alt_minus));
        if (F.characteristic() == 2) {
            BilinearPfisterForm pf = pfister_invariant(pkg, seed);
            put("pfister", elements_joined(F, pf.slots));
        }
    }

    MetabolicCertificate cert = is_metabolic(pkg);
    put("metabolic", ternary_str(cert.verdict));
    {
        std::vector<std::string> cs;
        for (Ternary t : cert.criteria) cs.push_back(ternary_str(t));
        put("metabolic_criteria", join_list(cs, "; "));
    }
    put("metabolic_evidence", cert.evidence);
    if (cert.unit_witness) put("unit_witness", A.element_str(*cert.unit_witness));
    if (cert.idempotent_witness)
        put("idempotent_witness", A.element_str(*cert.idempotent_witness));
    if (cert.isotropy_witness) put("isotropy_witness", A.element_str(*cert.isotropy_witness));
    if (cert.zero_divisor_witness)
        put("zero_divisor_witness", A.element_str(*cert.zero_divisor_witness));

    if (!pkg.decomposable) {
        put("transpose_type", "no");
    } else {
        try {
            put("transpose_type", transpose_type_test(pkg) ? "yes" : "no");
        } catch (const validation_error& e) {
            if (std::string(e.what()).find("inconclusive") == std::string::npos) throw;
            put("transpose_type", "unknown");
        }
    }
    return r;
}

Field parse_field_argument(const std::string& text) {
    if (auto f = Field::from_token(text)) return *f;
    if (text.size() >= 2 && text[0] == 'F') {
        std::size_t i = 1;
        while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
        if (i > 1) {
            std::int64_t n = std::stoll(text.substr(1, i - 1));
            std::vector<std::string> vars;
            bool ok = true;
            for (std::size_t j = i; j < text.size(); ++j) {
                if (!std::isalpha(static_cast<unsigned char>(text[j]))) { ok = false; break; }
                vars.emplace_back(1, text[j]);
            }
            if (ok) {
                if (!vars.empty()) return Field::function_field(n, vars);
                auto is_prime = [](std::int64_t m) {
                    if (m < 2) return false;
                    for (std::int64_t d = 2; d * d <= m; ++d)
                        if (m % d == 0) return false;
                    return true;
                };
                if (is_prime(n)) return Field::prime(n);
                for (int k = 2; k <= 4; ++k)
                    if (n == (std::int64_t(1) << k)) return Field::binary(k);
            }
        }
    }
    throw validation_error("unrecognized field descriptor '" + text +
                           "' (expected Q, Fp:P, F2k:K, Fpt:P:VARS, or shorthand like F5, F4, F2st)");
}

bool VerifySummary::ok() const {
    for (const auto& s : suites)
        if (s.failed) return false;
    return true;
}

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw parse_error("cannot read '" + path + "'", 0);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

InstanceSpec load_spec(const std::string& path) {
    return parse_instance_spec(read_file(path));
}

const char* verdict_word(Ternary t) {
    switch (t) {
        case Ternary::yes: return "isomorphic";
        case Ternary::no: return "not isomorphic";
        default: return "undecided";
    }
}

} // namespace

int cmd_invariants(const std::string& path, std::ostream& out, std::ostream& err,
                   std::uint64_t seed) {
    try {
        InvariantReport r = invariant_report(load_spec(path), seed);
        out << r.print();
        return 0;
    } catch (const parse_error& e) {
        err << "parse error: " << e.what() << "\n";
        return 2;
    } catch (const field_error& e) {
        err << "validation error: " << e.what() << "\n";
        return 3;
    } catch (const validation_error& e) {
        err << "validation error: " << e.what() << "\n";
        return 3;
    }
}

int cmd_compare(const std::string& path_a, const std::string& path_b,
                const std::optional<std::string>& conjugate, std::ostream& out, std::ostream& err,
                std::uint64_t seed) {
    try {
        auto [A, sa] = build_instance(load_spec(path_a));
        auto [B, sb] = build_instance(load_spec(path_b));
        if (conjugate) {
            Vec a = B.parse_element(*conjugate);
            sb = conjugate_involution(B, sb, a);
        }
        PfaffianPackage pa = compute_pfaffian(A, sa, seed);
        PfaffianPackage pb = compute_pfaffian(B, sb, seed);
        CompareResult res = compare_involutions(pa, pb, seed);
        out << "left: " << sa.label << " on " << A.label << " over " << A.field.token() << "\n";
        out << "right: " << sb.label << " on " << B.label << " over " << B.field.token() << "\n";
        out << "verdict: " << verdict_word(res.verdict) << "\n";
        out << "evidence: " << res.evidence << "\n\n";
        out << "verdict = " << ternary_str(res.verdict) << "\n";
        out << "evidence = " << res.evidence << "\n";
        return 0;
    } catch (const parse_error& e) {
        err << "parse error: " << e.what() << "\n";
        return 2;
    } catch (const field_error& e) {
        err << "validation error: " << e.what() << "\n";
        return 3;
    } catch (const validation_error& e) {
        err << "validation error: " << e.what() << "\n";
        return 3;
    }
}

int cmd_verify(const std::string& field_arg, int trials, std::uint64_t seed, std::ostream& out,
               std::ostream& err) {
    Field F;
    try {
        F = parse_field_argument(field_arg);
    } catch (const validation_error& e) {
        err << "validation error: " << e.what() << "\n";
        return 3;
    } catch (const field_error& e) {
        err << "validation error: " << e.what() << "\n";
        return 3;
    }
    if (trials < 0) {
        err << "validation error: trials must be nonnegative\n";
        return 3;
    }
    VerifySummary summary = run_verify(F, trials, seed);
    out << "field " << F.token() << ", " << summary.trials << " trials, seed " << seed << "\n";
    for (const auto& s : summary.suites) {
        out << s.label;
        for (std::size_t i = s.label.size(); i < 10; ++i) out << ' ';
        out << "passed " << s.passed << "  failed " << s.failed << "  skipped " << s.skipped
            << "\n";
        if (s.failed && !s.first_failure.empty())
            out << "          first failure: " << s.first_failure << "\n";
    }
    out << (summary.ok() ? "verify: PASS\n" : "verify: FAIL\n");
    return summary.ok() ? 0 : 4;
}

int cmd_reproduce_example(std::ostream& out, std::ostream& err) {
    ExampleOutcome res = reproduce_example();
    for (const auto& line : res.lines) out << line << "\n";
    if (!res.ok) {
        err << "example reproduction failed\n";
        return 4;
    }
    return 0;
}

} // namespace pfaff
