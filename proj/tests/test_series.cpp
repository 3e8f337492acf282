#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include <catch_amalgamated.hpp>

#include <bw/series.hpp>
#include <bw/witnesses/brute_force.hpp>

#include "oracles.hpp"

using namespace bw;

TEST_CASE("catalog terms")
{
    REQUIRE(catalog_series("alt-harmonic").term(3) == finite_support_vector::scalar(-1. / 3.));
    REQUIRE(catalog_series("unit-basis-c0").term(5) == finite_support_vector::basis(5));
    REQUIRE(catalog_series("growing-real").term(4) == finite_support_vector::scalar(4.));
    REQUIRE(catalog_series("decaying-signed-c0").term(3) == finite_support_vector::basis(2, -0.5));
    REQUIRE(catalog_series("decaying-signed-c0").term(4) == finite_support_vector::basis(2, 0.5));
    REQUIRE_THROWS_AS(catalog_series("nope"), unknown_name);
    REQUIRE_THROWS_AS(catalog_series("alt-harmonic").term(0), precondition_violation);
}

TEST_CASE("catalog terms are deterministic and match the closed forms")
{
    const auto ah = catalog_series("alt-harmonic");
    const auto gr = catalog_series("growing-real");
    for (std::size_t n = 1; n <= 200; ++n) {
        REQUIRE(ah.term(n) == ah.term(n));
        REQUIRE(ah.term(n)[1] == oracle::alt_harmonic(n));
        REQUIRE(gr.term(n)[1] == oracle::growing_real(n));
    }
}

TEST_CASE("catalog metadata")
{
    REQUIRE(catalog_names().size() == 4u);
    REQUIRE(catalog_series("alt-harmonic").flags().liminf_norm_zero);
    REQUIRE(catalog_series("decaying-signed-c0").flags().liminf_norm_zero);
    REQUIRE(catalog_series("growing-real").flags().limsup_norm_infinite);
    REQUIRE(catalog_series("unit-basis-c0").space().is_sup());
}

TEST_CASE("stem validation")
{
    REQUIRE_THROWS_AS(subseq_stem({2, 2}), invalid_stem);
    REQUIRE_THROWS_AS(subseq_stem({3, 1}), invalid_stem);
    REQUIRE_THROWS_AS(subseq_stem({0, 1}), invalid_stem);
    REQUIRE_THROWS_AS(rearr_stem({4, 1, 4}), invalid_stem);
    REQUIRE_THROWS_AS(rearr_stem({0}), invalid_stem);
    REQUIRE_THROWS_AS(selection_stem::parse("0120"), invalid_stem);
    REQUIRE(selection_stem::parse("").size() == 0u);
    REQUIRE_NOTHROW(rearr_stem({5, 1, 3}));
}

TEST_CASE("partial sums examples")
{
    const auto ah = catalog_series("alt-harmonic");
    const auto t = partial_sums(ah, subseq_stem{{1, 2}}, 2);
    REQUIRE(t.checkpoints.size() == 2u);
    REQUIRE(t.checkpoints[0].l == 1u);
    REQUIRE(t.checkpoints[0].norm == 1.);
    REQUIRE(t.checkpoints[1].norm == 0.5);

    const auto c = partial_sums(catalog_series("unit-basis-c0"), selection_stem::parse("10110"), 5);
    for (const auto &cp : c.checkpoints) {
        REQUIRE(cp.norm == 1.);
    }
    const auto z = partial_sums(catalog_series("unit-basis-c0"), selection_stem::parse("00101"), 5);
    REQUIRE(z.checkpoints[0].norm == 0.);
    REQUIRE(z.checkpoints[1].norm == 0.);
    REQUIRE(z.checkpoints[2].norm == 1.);

    REQUIRE_THROWS_AS(partial_sums(ah, subseq_stem{{1, 2}}, 3), horizon_exceeds_stem);
}

TEST_CASE("odd-index partial sums match direct summation")
{
    const auto ah = catalog_series("alt-harmonic");
    for (std::size_t K : {1u, 2u, 10u, 500u}) {
        std::vector<std::size_t> odd;
        double expect = 0.;
        for (std::size_t k = 1; k <= K; ++k) {
            odd.push_back(2u * k - 1u);
            expect += 1. / static_cast<double>(2u * k - 1u);
        }
        const auto t = partial_sums(ah, subseq_stem{odd}, K);
        REQUIRE(std::abs(t.checkpoints.back().norm - expect) <= 1e-12);
        const auto ref = oracle::abs_prefix_sums(oracle::alt_harmonic, odd);
        for (std::size_t l = 0; l < K; ++l) {
            REQUIRE(std::abs(t.checkpoints[l].norm - ref[l]) <= 1e-12);
        }
    }
}

TEST_CASE("partial sums are prefix consistent")
{
    std::mt19937 rng(7);
    const auto ds = catalog_series("decaying-signed-c0");
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<std::size_t> vals(30);
        std::iota(vals.begin(), vals.end(), 1u);
        std::shuffle(vals.begin(), vals.end(), rng);
        const rearr_stem stem{vals};
        const auto full = partial_sums(ds, stem, 30);
        const auto h = std::uniform_int_distribution<std::size_t>(1, 30)(rng);
        const auto part = partial_sums(ds, stem, h);
        for (std::size_t l = 0; l < h; ++l) {
            REQUIRE(part.checkpoints[l].norm == full.checkpoints[l].norm);
        }
    }
}

TEST_CASE("selections of the c0 basis have norm at most one")
{
    std::mt19937 rng(11);
    const auto c0 = catalog_series("unit-basis-c0");
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<unsigned char> bits(40);
        for (auto &b : bits) {
            b = static_cast<unsigned char>(rng() & 1u);
        }
        const auto t = partial_sums(c0, selection_stem{bits}, 40);
        bool any = false;
        for (std::size_t l = 1; l <= 40; ++l) {
            any = any || bits[l - 1u] == 1u;
            REQUIRE(t.checkpoints[l - 1u].norm == (any ? 1. : 0.));
        }
    }
}

TEST_CASE("extend_to_prefix_bijection examples")
{
    using v = std::vector<std::size_t>;
    REQUIRE(extend_to_prefix_bijection(rearr_stem{{3, 1}}).values() == v{3, 1, 2});
    REQUIRE(extend_to_prefix_bijection(rearr_stem{{1, 2, 3}}).values() == v{1, 2, 3});
    REQUIRE(extend_to_prefix_bijection(rearr_stem{{5, 1}}).values() == v{5, 1, 2, 3, 4});
    REQUIRE(extend_to_prefix_bijection(rearr_stem{}).values().empty());
}

namespace
{

// Shortest permutation of {1..k}, over all k up to `limit`, starting with
// `stem`; ties broken lexicographically. Brute force over all permutations.
std::vector<std::size_t> brute_shortest_completion(const std::vector<std::size_t> &stem, std::size_t limit)
{
    for (std::size_t k = stem.size(); k <= limit; ++k) {
        std::vector<std::size_t> perm(k);
        std::iota(perm.begin(), perm.end(), 1u);
        do {
            if (std::equal(stem.begin(), stem.end(), perm.begin())) {
                return perm;
            }
        } while (std::next_permutation(perm.begin(), perm.end()));
    }
    return {};
}

} // namespace

TEST_CASE("extend_to_prefix_bijection agrees with brute-force shortest completion")
{
    REQUIRE(brute_shortest_completion({5, 1}, 5) == std::vector<std::size_t>{5, 1, 2, 3, 4});
    // Every injective stem of length <= 3 over {1..6}.
    std::size_t checked = 0;
    std::vector<std::size_t> stem;
    const auto visit = [&](auto &&self) -> void {
        const auto ext = extend_to_prefix_bijection(rearr_stem{stem});
        REQUIRE(ext.values() == brute_shortest_completion(stem, 6));
        REQUIRE(is_prefix_bijection(ext.values()));
        REQUIRE(extend_to_prefix_bijection(ext).values() == ext.values());
        ++checked;
        if (stem.size() == 3u) {
            return;
        }
        for (std::size_t v = 1; v <= 6; ++v) {
            if (std::find(stem.begin(), stem.end(), v) == stem.end()) {
                stem.push_back(v);
                self(self);
                stem.pop_back();
            }
        }
    };
    visit(visit);
    REQUIRE(checked == 1u + 6u + 30u + 120u);
}

TEST_CASE("is_prefix_bijection")
{
    using v = std::vector<std::size_t>;
    REQUIRE(is_prefix_bijection(v{}));
    REQUIRE(is_prefix_bijection(v{2, 3, 1}));
    REQUIRE_FALSE(is_prefix_bijection(v{2, 4, 1}));
    REQUIRE_FALSE(is_prefix_bijection(v{1, 1}));
}

TEST_CASE("selection maximum equals permutation-prefix maximum on small prefixes")
{
    for (const auto &name : {"alt-harmonic", "growing-real", "decaying-signed-c0", "unit-basis-c0"}) {
        const auto s = catalog_series(name);
        for (std::size_t n = 1; n <= 7; ++n) {
            REQUIRE(std::abs(max_selection_norm(s, n) - max_rearrangement_prefix_norm(s, n)) <= 1e-9);
        }
    }
}
