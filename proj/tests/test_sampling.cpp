#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "l1dist/estimation.hpp"
#include "l1dist/sampling.hpp"
#include "oracles.hpp"

using namespace l1dist;

TEST_CASE("philox block matches the Random123 known-answer vectors")
{
    using C = Philox4x32::Counter;
    using K = Philox4x32::Key;
    CHECK(Philox4x32::apply(C{0, 0, 0, 0}, K{0, 0}) == C{0x6627e8d5, 0xe169c58d, 0xbc57ac4c, 0x9b00dbd8});
    CHECK(Philox4x32::apply(C{0xffffffff, 0xffffffff, 0xffffffff, 0xffffffff}, K{0xffffffff, 0xffffffff})
          == C{0x408f276d, 0x41c83b0e, 0xa20bc7c6, 0x6d5451fd});
    CHECK(Philox4x32::apply(C{0x243f6a88, 0x85a308d3, 0x13198a2e, 0x03707344}, K{0xa4093822, 0x299f31d0})
          == C{0xd16cfe09, 0x94fdcceb, 0x5001e420, 0x24126ea1});
}

TEST_CASE("derive_stream is deterministic")
{
    auto a = derive_stream(42, 0);
    auto b = derive_stream(42, 0);
    bool same = true;
    for (int i = 0; i < 1000000; ++i) same = same && (a.next_u64() == b.next_u64());
    CHECK(same);
    CHECK(a.position() == 1000000);
}

TEST_CASE("distinct stream ids and seeds give distinct sequences")
{
    auto differs = [](RandomStream a, RandomStream b) {
        for (int i = 0; i < 16; ++i) {
            if (a.next_u64() != b.next_u64()) return true;
        }
        return false;
    };
    CHECK(differs(derive_stream(42, 0), derive_stream(42, 1)));
    CHECK(differs(derive_stream(42, 0), derive_stream(43, 0)));
    CHECK(differs(derive_stream(42, chunk_stream_id(1, 0)), derive_stream(42, 0)));
}

TEST_CASE("generate_point draws in range and advances by dim")
{
    auto s = derive_stream(1, 0);
    auto p = generate_point(s, 1);
    CHECK(p[0] >= 0.0);
    CHECK(p[0] < 1.0);
    CHECK(s.position() == 1);
    (void)generate_point(s, 7);
    CHECK(s.position() == 8);
    CHECK_THROWS_AS(generate_point(s, 0), std::invalid_argument);
}

TEST_CASE("single coordinates are uniform")
{
    auto s = derive_stream(2024, 0);
    const int n = 100000;
    std::vector<double> xs(n);
    for (auto& x : xs) x = generate_point(s, 1)[0];
    auto sum = summarize(xs);
    CHECK(std::fabs(sum.mean() - 0.5) <= 4.0 * std::sqrt(1.0 / 12.0) / std::sqrt(double(n)));
    CHECK(std::fabs(sum.variance_population() - 1.0 / 12.0) <= 0.05 / 12.0);
    double ks = ks_statistic(EmpiricalCdf(xs), [](double x) { return std::clamp(x, 0.0, 1.0); });
    CHECK(ks <= 1.628 / std::sqrt(double(n)));
}

TEST_CASE("sample_distances honours its contract")
{
    SampleSpec spec{1, 10000, 17};
    auto d = sample_distances(spec);
    REQUIRE(d.size() == 10000);
    CHECK(std::all_of(d.begin(), d.end(), [](double x) { return x >= 0.0 && x <= 1.0; }));
    auto sum = summarize(d);
    CHECK(std::fabs(sum.mean() - 1.0 / 3.0) <= 4.0 * std::sqrt(1.0 / 18.0 / 10000.0));

    SampleSpec spec10{10, 10000, 17};
    auto d10 = sample_distances(spec10);
    CHECK(std::fabs(summarize(d10).mean() - 10.0 / 3.0) <= 4.0 * std::sqrt(10.0 / 18.0 / 10000.0));
    CHECK(std::all_of(d10.begin(), d10.end(), [](double x) { return x >= 0.0 && x <= 10.0; }));

    CHECK(sample_distances(spec) == d);
    CHECK_THROWS_AS(sample_distances(SampleSpec{0, 10, 0}), std::invalid_argument);
    CHECK_THROWS_AS(sample_distances(SampleSpec{3, 0, 0}), std::invalid_argument);
}

TEST_CASE("sample_distances follows the canonical chunk layout")
{
    // Pair j of chunk c: P then Q from stream (family << 32) | c.
    SampleSpec spec{3, 2500, 99, 5};
    auto d = sample_distances(spec);
    for (std::size_t c = 0; c < 3; ++c) {
        auto s = derive_stream(99, (std::uint64_t{5} << 32) | c);
        auto p = generate_point(s, 3);
        auto q = generate_point(s, 3);
        CHECK(d[c * chunk_pairs] == manhattan_distance(p, q));
    }
}

TEST_CASE("sample_distances is invariant to worker count")
{
    SampleSpec spec{7, 20000, 5};
    auto one = sample_distances(spec, 1);
    CHECK(sample_distances(spec, 2) == one);
    CHECK(sample_distances(spec, 8) == one);
    CHECK(sample_distances(spec, 0) == one);
}
