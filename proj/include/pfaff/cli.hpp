#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pfaff/csalg.hpp"
#include "pfaff/field.hpp"
#include "pfaff/pfaffian.hpp"

namespace pfaff {

// One algebra-with-involution instance as described by a spec file: a base
// field stanza plus a construction stanza.
struct InstanceSpec {
    std::string field_kind; // rationals | prime | binary | function
    std::int64_t p = 0;     // prime and function kinds
    int k = 0;              // binary kind
    std::vector<std::string> vars;
    ConstructionSpec construction;

    std::string print() const; // canonical stanza form
    bool operator==(const InstanceSpec& other) const { return print() == other.print(); }
};

// Parses the line-oriented stanza format; throws parse_error with the line
// number on malformed input.
InstanceSpec parse_instance_spec(std::string_view text);

Field instance_field(const InstanceSpec& spec);
std::pair<StructureAlgebra, Involution> build_instance(const InstanceSpec& spec);

// Flat ordered key/value report; printing emits a human-readable summary
// followed by one "key = value" line per entry, and parsing recovers the
// entries from exactly that printed form.
struct InvariantReport {
    std::vector<std::pair<std::string, std::string>> entries;

    std::optional<std::string> get(std::string_view key) const;
    std::string print() const;
    static InvariantReport parse(std::string_view text);
    bool operator==(const InvariantReport& other) const { return entries == other.entries; }
};

// Computes every invariant of the instance: pfaffian data, restricted forms,
// the bilinear invariant in characteristic two, the metabolicity certificate,
// and the transpose-type flag.
InvariantReport invariant_report(const InstanceSpec& spec, std::uint64_t seed = 0);

// Field descriptor arguments: the token forms Q, Fp:P, F2k:K, Fpt:P:V,V and
// the shorthands F5, F4 (binary when not prime), F2st (function field with
// one-letter variables).  Throws validation_error on anything else.
Field parse_field_argument(const std::string& text);

struct SuiteResult {
    std::string label;
    int passed = 0;
    int failed = 0;
    int skipped = 0;
    std::string first_failure;
};

struct VerifySummary {
    std::vector<SuiteResult> suites;
    int trials = 0;
    bool ok() const;
};

// Runs every property suite over seeded random instances of the field.
// Suites that need characteristic two or an enumerable field skip elsewhere;
// undecided verdicts count as skipped, never as failures.
VerifySummary run_verify(const Field& F, int trials, std::uint64_t seed);

// The worked example: weighted-transpose tensors over F_2(s,t) whose
// involutions share the invariant subalgebra but differ in every bilinear
// invariant.  Returns the printable trail; ok is the conjunction of the five
// verdicts.
struct ExampleOutcome {
    std::vector<std::string> lines;
    bool ok = false;
};
ExampleOutcome reproduce_example();

// Command entry points; exit codes: 0 success, 2 parse error, 3 validation
// error, 4 failed property or example check.
int cmd_invariants(const std::string& path, std::ostream& out, std::ostream& err,
                   std::uint64_t seed = 0);
int cmd_compare(const std::string& path_a, const std::string& path_b,
                const std::optional<std::string>& conjugate, std::ostream& out, std::ostream& err,
                std::uint64_t seed = 0);
int cmd_verify(const std::string& field_arg, int trials, std::uint64_t seed, std::ostream& out,
               std::ostream& err);
int cmd_reproduce_example(std::ostream& out, std::ostream& err);

} // namespace pfaff
