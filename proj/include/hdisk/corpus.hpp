#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hdisk/expr.hpp"
#include "hdisk/harmonic.hpp"
#include "hdisk/quadrature.hpp"

namespace hdisk {

/// Where an expected fact comes from: a value stated by the source material,
/// a triviality, or a value frozen from an independent oracle (named in
/// ExpectedFact::oracle).
enum class Provenance { Paper, Trivial, Derived };

const char* provenance_name(Provenance p);

enum class FactKind {
    ValueAbs,        // |observed - v0| <= v1
    ValueRel,        // |observed - v0| <= v1 * |v0|
    Range,           // v0 <= observed <= v1
    Verdict,         // integral verdict equals `verdict`
    Decaying,        // trend probe must report decay
    NotDecaying,     // trend probe must NOT report decay
    BoundaryLimited  // sup-search argmax pinned at the radial cap
};

/// A replayable expectation: running `functional` with `params` on the entry
/// must reproduce the stored value/verdict/flag. Facts are data, enforced by
/// tests and `check_fact`.
struct ExpectedFact {
    std::string functional;
    std::map<std::string, double> params;  // keys match registry RunParams
    FactKind kind = FactKind::ValueAbs;
    double v0 = 0.0;
    double v1 = 0.0;
    IntegralVerdict verdict = IntegralVerdict::ConvergedFinite;
    Provenance provenance = Provenance::Derived;
    std::string oracle;  // Derived facts name the independent oracle
};

/// Named map or analytic function with its expectations. Harmonic entries
/// carry (h', w); analytic witnesses carry h directly; envelope
/// pseudo-entries carry only parameter defaults.
struct CorpusEntry {
    std::string name;
    std::string summary;
    bool has_map = false;
    HarmonicMap map;
    ExprPtr analytic;                              // h itself, when available
    std::function<double(cplx)> jacobian_oracle;   // closed-form J when known
    std::map<std::string, double> defaults;        // e.g. {"mu": …}
    std::vector<ExpectedFact> facts;
};

const std::vector<CorpusEntry>& corpus_list();

/// Throws ArgError for unknown names.
const CorpusEntry& corpus_lookup(const std::string& name);

/// Independent series oracle for ∫_D |Σ a_n z^n|^2 (1-|z|^2)^s dA with
/// integer s >= 0: pi * Σ |a_n|^2 * n! s! / (n+s+1)!. Sums until the term
/// falls below rel_tol of the running total (3 consecutive times);
/// converged=false when max_terms is exhausted first (slowly divergent
/// series such as a_n = 1). TailError when the terms grow — no tail bound.
struct ParsevalResult {
    double value = 0.0;
    bool converged = false;
    std::size_t terms = 0;
};

ParsevalResult parseval_oracle(const std::function<cplx(std::size_t)>& coeff, int weight,
                               double rel_tol = 1e-10, std::size_t max_terms = 1u << 20);

} // namespace hdisk
