#include <doctest.h>

#include <cmath>
#include <set>

#include "nbl/hyperspace.hpp"
#include "oracles.hpp"

using namespace nbl;

TEST_CASE("bit strings") {
    CHECK(BitString::parse("0110").to_string() == "0110");
    CHECK(BitString::from_integer(6, 4).to_string() == "0110");
    CHECK(BitString::parse("0110").to_integer() == 6);
    CHECK_THROWS_AS(BitString::parse("012"), Error);
    CHECK_THROWS_AS(BitString(std::vector<std::uint8_t>{0, 2}), Error);
}

TEST_CASE("encode_string") {
    CHECK(encode_string(ReferenceSystem(1, 1), BitString::parse("0")) == Product{0});
    CHECK(encode_string(ReferenceSystem(1, 3), BitString::parse("101")) == Product{1, 2, 5});
    CHECK_THROWS_AS(encode_string(ReferenceSystem(1, 3), BitString::parse("10")), Error);
}

TEST_CASE("encode_string is injective over N = 8") {
    const ReferenceSystem sys(1, 8);
    std::set<std::vector<std::uint64_t>> seen;
    for (std::uint64_t v = 0; v < 256; ++v) seen.insert(encode_integer(sys, v).terms());
    CHECK(seen.size() == 256);
}

TEST_CASE("encode_integer") {
    const ReferenceSystem sys(1, 6);
    CHECK(encode_integer(sys, 0) == encode_string(sys, BitString::parse("000000")));
    CHECK(encode_integer(sys, 63) == encode_string(sys, BitString::parse("111111")));
    CHECK_THROWS_AS(encode_integer(sys, 64), Error);
    for (std::uint64_t v = 0; v < 64; ++v) CHECK(decode_integer(sys, encode_integer(sys, v)) == v);
    CHECK_THROWS_AS(decode_integer(sys, Product{0, 1, 4, 6, 8, 10}), Error);
}

TEST_CASE("decode_product rejects non-strings") {
    const ReferenceSystem sys(1, 3);
    CHECK(decode_product(sys, Product{1, 2, 5}) == BitString::parse("101"));
    CHECK_FALSE(decode_product(sys, Product{2, 3, 5}));  // two terms on bit 2
    CHECK_FALSE(decode_product(sys, Product{0, 2, 6}));  // past the ladder
    CHECK_FALSE(decode_product(sys, Product{0, 2}));     // missing a bit
}

TEST_CASE("encode_set") {
    const ReferenceSystem sys(3, 10);
    CHECK(encode_set(sys, {}).as_superposition().size() == 0);
    const auto s = BitString::parse("0101010101");
    const auto single = encode_set(sys, {s});
    REQUIRE(single.as_superposition().size() == 1);
    CHECK(single.as_superposition().members().front() == encode_string(sys, s));
    CHECK_THROWS_AS(encode_set(sys, {s, s}), Error);

    CounterRng rng(3);
    const auto strings = random_string_set(sys, 5, rng);
    const Window w = materialize(sys.source(), encode_set(sys, strings), 0, 5000);
    for (std::uint64_t j = 0; j < 5000; ++j) CHECK(std::abs(window_value(w, j)) <= 5);
}

TEST_CASE("default window length policy") {
    CHECK(default_window_length(1) == 10000);
    CHECK(default_window_length(5) == 10000);
    CHECK(default_window_length(26) == 10000);
    CHECK(default_window_length(27) == 10400);
}

TEST_CASE("detection") {
    const ReferenceSystem sys(42, 10);
    const auto s = BitString::parse("1100101001");
    const Window single = materialize(sys.source(), encode_set(sys, {s}), 0, 40000);
    const auto hit = detect_string(single, sys, s);
    CHECK(hit.rho == 1.0);
    CHECK(hit.present);
    CHECK(hit.sigma_bound == 0.0);

    CounterRng rng(42, 1);
    const auto strings = random_string_set(sys, 5, rng);
    const Window signal = materialize(sys.source(), encode_set(sys, strings), 0, 40000);
    for (const auto& member : strings) {
        const auto d = detect_string(signal, sys, member);
        CHECK(std::abs(d.rho - 1.0) <= 0.05);
        CHECK(d.present);
        CHECK(d.sigma_bound == doctest::Approx(2.0 / 200.0));
    }
    const auto outsider = BitString::from_integer(strings.front().to_integer() ^ 1, 10);
    if (!std::binary_search(strings.begin(), strings.end(), outsider)) {
        const auto d = detect_string(signal, sys, outsider);
        CHECK(std::abs(d.rho) <= 0.05);
        CHECK_FALSE(d.present);
    }
    CHECK(detect_string(signal, sys, strings.front(), 1.5).present == false);
}

TEST_CASE("correlation is linear in the superposed set") {
    const ReferenceSystem sys(5, 6);
    CounterRng rng(8);
    const auto all = random_string_set(sys, 8, rng);
    const std::vector<BitString> a(all.begin(), all.begin() + 3);
    const std::vector<BitString> b(all.begin() + 3, all.end());
    const auto wa = materialize(sys.source(), encode_set(sys, a), 0, 3000);
    const auto wb = materialize(sys.source(), encode_set(sys, b), 0, 3000);
    const auto wab = materialize(sys.source(), encode_set(sys, all), 0, 3000);
    for (std::uint64_t v = 0; v < 64; ++v) {
        const Window c = materialize(sys.source(), encode_integer(sys, v), 0, 3000);
        CHECK(correlate(wab, c).sum == correlate(wa, c).sum + correlate(wb, c).sum);
    }
}

TEST_CASE("decode_superposition") {
    const ReferenceSystem sys(42, 6);
    const Window zero = materialize(sys.source(), encode_set(sys, {}), 0, 10000);
    CHECK(decode_superposition(zero, sys).detected.empty());

    const auto s = BitString::parse("011010");
    const Window single = materialize(sys.source(), encode_set(sys, {s}), 0, 10000);
    const auto r = decode_superposition(single, sys);
    CHECK(r.detected == std::vector<BitString>{s});
    CHECK(r.correlations.size() == 64);
    CHECK(r.correlations[s.to_integer()].estimate.rho == 1.0);

    // Gray-code candidate bank agrees with direct materialization.
    for (std::uint64_t v = 0; v < 64; ++v) {
        CHECK(r.correlations[v].candidate == BitString::from_integer(v, 6));
        CHECK(r.correlations[v].estimate.rho == detect_string(single, sys, r.correlations[v].candidate).rho);
    }

    CHECK_THROWS_WITH_AS(decode_superposition(single, sys, 0.5, 5), "capacity exceeded - raise max_n explicitly",
                         Error);
}

TEST_CASE("decode round-trip over seeds") {
    for (std::uint64_t seed = 100; seed < 105; ++seed) {
        const ReferenceSystem sys(seed, 8);
        CounterRng rng(seed, 1);
        const auto strings = random_string_set(sys, 5, rng);
        const Window w = materialize(sys.source(), encode_set(sys, strings), 0, default_window_length(5));
        CHECK(decode_superposition(w, sys).detected == strings);
    }
}

TEST_CASE("random_string_set") {
    const ReferenceSystem sys(1, 2);
    CounterRng rng(1);
    const auto all = random_string_set(sys, 4, rng);
    CHECK(all.size() == 4);
    CHECK(std::is_sorted(all.begin(), all.end()));
    CHECK_THROWS_AS(random_string_set(sys, 5, rng), Error);
}
