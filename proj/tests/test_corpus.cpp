#include <doctest.h>

#include <cmath>
#include <set>
#include <string>

#include "hdisk/corpus.hpp"
#include "hdisk/errors.hpp"
#include "hdisk/registry.hpp"

using namespace hdisk;

TEST_CASE("corpus catalogue shape") {
    const auto& entries = corpus_list();
    CHECK(entries.size() == 16);

    std::size_t facts = 0;
    std::set<std::string> names;
    for (const auto& e : entries) {
        CHECK(!e.name.empty());
        CHECK(!e.summary.empty());
        CHECK(names.insert(e.name).second);  // names are unique lookup keys
        CHECK(!e.facts.empty());
        facts += e.facts.size();
        for (const auto& f : e.facts) {
            CHECK(!f.functional.empty());
            if (f.provenance == Provenance::Derived) {
                // derived values must say where they were frozen from
                CHECK(!f.oracle.empty());
            }
        }
    }
    CHECK(facts == 61);
}

TEST_CASE("corpus lookup") {
    CHECK(corpus_lookup("identity").name == "identity");
    CHECK(corpus_lookup("shear_rho:0.5").has_map);
    CHECK_THROWS_AS((void)corpus_lookup("nope"), ArgError);
}

TEST_CASE("every recorded fact replays") {
    for (const auto& e : corpus_list()) {
        for (std::size_t i = 0; i < e.facts.size(); ++i) {
            const auto& f = e.facts[i];
            CAPTURE(e.name);
            CAPTURE(i);
            CAPTURE(f.functional);
            auto outcome = check_fact(e, f);
            INFO(outcome.detail);
            CHECK(outcome.pass);
        }
    }
}

TEST_CASE("parseval oracle: constant term only") {
    // h(z) = a0: the integral is exactly pi * |a0|^2 * B(weight) with one term
    auto r = parseval_oracle([](std::size_t n) { return n == 0 ? 1.0 : 0.0; }, 0.0);
    CHECK(r.converged);
    CHECK(r.value == doctest::Approx(M_PI).epsilon(1e-12));
}

TEST_CASE("parseval oracle: geometric coefficients") {
    // h'(z) = 0.5/(1 - 0.5 z): integral of |h'|^2 over the disk is pi*ln(4/3)
    auto r = parseval_oracle([](std::size_t n) { return std::pow(0.5, double(n) + 1.0); }, 0.0);
    CHECK(r.converged);
    CHECK(std::abs(r.value - M_PI * std::log(4.0 / 3.0)) <= 1e-10 * r.value);
}

TEST_CASE("parseval oracle: slowly diverging series runs out of terms") {
    // a_n == 1 gives terms pi/(n+1): decreasing but the sum has no finite limit
    auto r = parseval_oracle([](std::size_t) { return 1.0; }, 0.0);
    CHECK(!r.converged);
}

TEST_CASE("parseval oracle: growing terms abort") {
    CHECK_THROWS_AS((void)parseval_oracle([](std::size_t n) { return std::pow(2.0, double(n)); }, 0.0),
                    TailError);
}

TEST_CASE("parseval oracle: rejects negative weight") {
    CHECK_THROWS_AS((void)parseval_oracle([](std::size_t) { return 1.0; }, -1.0), ArgError);
}
