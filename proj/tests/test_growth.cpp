#include <algorithm>
#include <cmath>

#include <catch_amalgamated.hpp>

#include <bw/certificate.hpp>
#include <bw/witnesses/growth.hpp>

#include "oracles.hpp"

using namespace bw;

namespace
{

const std::vector<std::size_t> &stem_values(const witness_certificate &c)
{
    if (const auto *s = std::get_if<subseq_stem>(&c.stem)) {
        return s->values();
    }
    return std::get<rearr_stem>(c.stem).values();
}

void require_sound(const series_oracle &s, const witness_certificate &c)
{
    const auto fail = check_certificate(s, c);
    INFO((fail ? fail->reason : std::string{}));
    REQUIRE_FALSE(fail.has_value());
}

void require_bijective_stages(const witness_certificate &c)
{
    const auto &vals = stem_values(c);
    REQUIRE_FALSE(c.stage_boundaries.empty());
    REQUIRE(c.stage_boundaries.back() == vals.size());
    for (auto b : c.stage_boundaries) {
        const std::vector<std::size_t> prefix(vals.begin(), vals.begin() + static_cast<std::ptrdiff_t>(b));
        REQUIRE(is_prefix_bijection(prefix));
        REQUIRE(extend_to_prefix_bijection(rearr_stem{prefix}).values() == prefix);
    }
}

const growth_oracle positive{growth_strategy::greedy_positive};
const growth_oracle negative{growth_strategy::greedy_negative};

} // namespace

TEST_CASE("default horizons")
{
    REQUIRE(default_horizon(catalog_series("alt-harmonic")) == 1'000'000u);
    REQUIRE(default_horizon(catalog_series("unit-basis-c0")) == 10'000u);
}

TEST_CASE("strategy names round trip")
{
    for (auto s : {growth_strategy::greedy_positive, growth_strategy::greedy_negative, growth_strategy::per_coordinate,
                   growth_strategy::exhaustive}) {
        REQUIRE(parse_strategy(strategy_name(s)) == s);
    }
    REQUIRE_THROWS_AS(parse_strategy("sideways"), unknown_name);
    REQUIRE_THROWS_AS(growth_oracle(growth_strategy::exhaustive, 25), precondition_violation);
}

TEST_CASE("greedy strategies need a scalar space")
{
    REQUIRE_THROWS_AS(grow_unbounded_subseries(catalog_series("unit-basis-c0"), positive, 2., 100),
                      precondition_violation);
}

TEST_CASE("grow alt-harmonic past 3 with positive terms")
{
    const auto ah = catalog_series("alt-harmonic");
    const auto cert = grow_unbounded_subseries(ah, positive, 3., 1'000'000);
    const auto K = oracle::first_half_harmonic_above(3.);
    REQUIRE(K == 227u);
    REQUIRE(stem_values(cert) == oracle::evens(K));
    const auto &last = cert.checkpoints.back();
    REQUIRE(last.l == K);
    REQUIRE(last.rel == relation::gt);
    REQUIRE(last.norm > 3.);
    REQUIRE(std::abs(last.norm - oracle::abs_sum(oracle::alt_harmonic, oracle::evens(K))) <= 1e-12);
    require_sound(ah, cert);
}

TEST_CASE("grow growing-real past 10")
{
    const auto gr = catalog_series("growing-real");
    const auto cert = grow_unbounded_subseries(gr, positive, 10., 100);
    REQUIRE(stem_values(cert) == std::vector<std::size_t>{2, 4, 6});
    REQUIRE(cert.checkpoints.back().norm == 12.);
    require_sound(gr, cert);

    const auto neg = grow_unbounded_subseries(gr, negative, 10., 100);
    REQUIRE(stem_values(neg) == std::vector<std::size_t>{1, 3, 5, 7});
    REQUIRE(neg.checkpoints.back().norm == 16.);
}

TEST_CASE("grow on the c0 basis is exhausted")
{
    const auto c0 = catalog_series("unit-basis-c0");
    REQUIRE_THROWS_AS(grow_unbounded_subseries(c0, growth_oracle{growth_strategy::exhaustive}, 2., 10'000), exhausted);
    REQUIRE_THROWS_AS(grow_unbounded_subseries(c0, growth_oracle{growth_strategy::per_coordinate}, 2., 10'000),
                      exhausted);
}

TEST_CASE("grow within a horizon that is too small is exhausted")
{
    REQUIRE_THROWS_AS(grow_unbounded_subseries(catalog_series("alt-harmonic"), positive, 3., 400), exhausted);
}

TEST_CASE("growth checkpoints at least double")
{
    for (const auto &[name, target] : std::vector<std::pair<std::string, double>>{
             {"alt-harmonic", 3.}, {"alt-harmonic", 1.5}, {"growing-real", 10.}, {"growing-real", 1000.}}) {
        const auto s = catalog_series(name);
        for (const auto &o : {positive, negative}) {
            const auto cert = grow_unbounded_subseries(s, o, target, 1'000'000);
            require_sound(s, cert);
            REQUIRE(cert.checkpoints.size() >= 2u);
            for (std::size_t i = 1; i < cert.checkpoints.size(); ++i) {
                REQUIRE(cert.checkpoints[i].norm >= 2. * cert.checkpoints[i - 1u].norm - delta);
                REQUIRE(cert.checkpoints[i].l > cert.checkpoints[i - 1u].l);
            }
            REQUIRE(cert.checkpoints.back().norm > target);
        }
    }
}

TEST_CASE("exhaustive and per-coordinate strategies grow scalar and vector series")
{
    const auto gr = catalog_series("growing-real");
    const auto ex = grow_unbounded_subseries(gr, growth_oracle{growth_strategy::exhaustive}, 50., 1000);
    require_sound(gr, ex);
    REQUIRE(ex.checkpoints.back().norm > 50.);
    const auto ah = catalog_series("alt-harmonic");
    const auto pc = grow_unbounded_subseries(ah, growth_oracle{growth_strategy::per_coordinate}, 2., 1'000'000);
    require_sound(ah, pc);
    REQUIRE(pc.checkpoints.back().norm > 2.);
}

TEST_CASE("grown subseries streams and level checkpoints")
{
    const auto ah = catalog_series("alt-harmonic");
    const auto s = grown_subseries(ah, positive, 2, 1'000'000);
    REQUIRE(s.stem_kind == certified_stream::kind::subseq);
    REQUIRE(s.checkpoints.size() == 2u);
    REQUIRE(s.indices.prefix(5) == std::vector<std::size_t>{2, 4, 6, 8, 10});
    // Level 1 is first reached at K = 4: (1 + 1/2 + 1/3 + 1/4) / 2 > 1.
    REQUIRE(s.checkpoints[0].l == oracle::first_half_harmonic_above(1. - 1e-15));
    REQUIRE_NOTHROW(verify_source(ah, s));

    auto bad = s;
    bad.checkpoints[1].norm += 0.1;
    REQUIRE_THROWS_AS(verify_source(ah, bad), inconsistent_witness);
}

TEST_CASE("rearrangement of the odd-index subseries of alt-harmonic")
{
    const auto ah = catalog_series("alt-harmonic");
    const auto s = grown_subseries(ah, negative, 3, 1'000'000);
    const auto cert = subseries_to_rearrangement(ah, s, 3, 1'000'000);
    REQUIRE(cert.checkpoints.size() == 3u);
    for (std::size_t j = 1; j <= 3; ++j) {
        REQUIRE(cert.checkpoints[j - 1u].rel == relation::ge);
        REQUIRE(cert.checkpoints[j - 1u].bound == static_cast<double>(j));
    }
    REQUIRE(cert.stage_boundaries.size() == 3u);
    require_bijective_stages(cert);
    require_sound(ah, cert);
    // Independent recomputation of every checkpoint.
    const auto &vals = stem_values(cert);
    for (const auto &c : cert.checkpoints) {
        const std::vector<std::size_t> prefix(vals.begin(), vals.begin() + static_cast<std::ptrdiff_t>(c.l));
        const double direct = oracle::abs_sum(oracle::alt_harmonic, prefix);
        REQUIRE(std::abs(direct - c.norm) <= 1e-9);
        REQUIRE(direct >= c.bound - delta);
    }
}

TEST_CASE("rearrangement of growing-real even terms")
{
    const auto gr = catalog_series("growing-real");
    const auto s = grown_subseries(gr, positive, 2, 100);
    REQUIRE(s.indices.prefix(3) == std::vector<std::size_t>{2, 4, 6});
    const auto cert = subseries_to_rearrangement(gr, s, 2, 100);
    REQUIRE(stem_values(cert) == std::vector<std::size_t>{2, 1, 4, 3});
    REQUIRE(cert.stage_boundaries == std::vector<std::size_t>{2, 4});
    REQUIRE(cert.checkpoints.size() == 2u);
    REQUIRE(cert.checkpoints[0].l == 1u);
    REQUIRE(cert.checkpoints[0].norm == 2.);
    REQUIRE(cert.checkpoints[1].l == 3u);
    REQUIRE(cert.checkpoints[1].norm == 5.);
    require_sound(gr, cert);
}

TEST_CASE("rearrangement depth 0 is empty")
{
    const auto gr = catalog_series("growing-real");
    const auto s = grown_subseries(gr, positive, 1, 100);
    const auto cert = subseries_to_rearrangement(gr, s, 0, 100);
    REQUIRE(stem_size(cert.stem) == 0u);
    REQUIRE(cert.checkpoints.empty());
    REQUIRE(stem_kind_name(cert.stem) == "rearr");
}

TEST_CASE("rearrangement needs a source certified to the requested depth")
{
    const auto gr = catalog_series("growing-real");
    const auto s = grown_subseries(gr, positive, 1, 100);
    REQUIRE_THROWS_AS(subseries_to_rearrangement(gr, s, 50, 100), precondition_violation);
}

TEST_CASE("rearrangement streams continue past their certified stages")
{
    const auto gr = catalog_series("growing-real");
    const auto s = grown_subseries(gr, positive, 1, 1000);
    const auto p = rearrangement_stream(gr, s, 1, 1000);
    REQUIRE(p.stem_kind == certified_stream::kind::rearr);
    REQUIRE(p.checkpoints.size() == 1u);
    const auto long_prefix = p.indices.prefix(40);
    REQUIRE(long_prefix.size() == 40u);
    std::vector<std::size_t> sorted = long_prefix;
    std::sort(sorted.begin(), sorted.end());
    REQUIRE(std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end());
}

TEST_CASE("limsup subseries")
{
    const auto gr = catalog_series("growing-real");
    const auto cert = limsup_subseries(gr, 4, 1000);
    REQUIRE(stem_values(cert) == std::vector<std::size_t>{1, 3, 9, 27, 81});
    require_sound(gr, cert);
    const auto vals = stem_values(cert);
    const auto sums = oracle::abs_prefix_sums(oracle::growing_real, vals);
    for (std::size_t i = 1; i < vals.size(); ++i) {
        REQUIRE(std::abs(oracle::growing_real(vals[i])) > std::abs(oracle::growing_real(vals[i - 1u])));
        REQUIRE(std::abs(oracle::growing_real(vals[i])) > 2. * sums[i - 1u]);
        REQUIRE(sums[i] > sums[i - 1u]);
    }
    REQUIRE(stem_size(limsup_subseries(gr, 0, 1000).stem) == 0u);
    REQUIRE_THROWS_AS(limsup_subseries(catalog_series("alt-harmonic"), 1, 10'000), exhausted);
    REQUIRE_THROWS_AS(limsup_subseries(gr, 4, 50), exhausted);
}
