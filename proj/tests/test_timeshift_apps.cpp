#include <doctest.h>

#include <cmath>
#include <set>

#include "nbl/timeshift_apps.hpp"
#include "oracles.hpp"

using namespace nbl;

namespace {

std::vector<int> as_ints(const BitString& s) { return {s.bits().begin(), s.bits().end()}; }

}  // namespace

TEST_SUITE("holographic") {
    TEST_CASE("one-period images") {
        const auto zeros = holographic_map(BitString::parse("000"));
        CHECK(zeros.status == ImageStatus::InRange);
        CHECK(zeros.string == BitString::parse("111"));

        // {1,2,4} -> {2,3,5}: offsets 2 and 3 both belong to noise bit 2.
        CHECK(holographic_map(BitString::parse("100")).status == ImageStatus::Collision);

        // {1,3} -> {2,4}: offset 4 is past the top of a two-bit ladder.
        CHECK(holographic_map(BitString::parse("11")).status == ImageStatus::LadderOverflow);

        CHECK(holographic_map(BitString::parse("0101"), {0}).string == BitString::parse("0101"));
        CHECK(holographic_map(BitString::parse("10"), {2}).status == ImageStatus::LadderOverflow);
    }

    TEST_CASE("images agree with offset arithmetic for every string") {
        for (std::size_t n = 1; n <= 6; ++n) {
            for (std::uint64_t v = 0; v < (1ULL << n); ++v) {
                const auto s = BitString::from_integer(v, n);
                for (std::uint64_t d = 0; d <= 5; ++d) {
                    const auto expected = oracle::shifted_reading(as_ints(s), d);
                    const auto image = holographic_map(s, {d});
                    CAPTURE(s.to_string());
                    CAPTURE(d);
                    if (expected == "O") {
                        CHECK(image.status == ImageStatus::LadderOverflow);
                    } else if (expected == "C") {
                        CHECK(image.status == ImageStatus::Collision);
                    } else {
                        REQUIRE(image.string);
                        CHECK(image.string->to_string() == expected);
                    }
                }
            }
        }
    }

    TEST_CASE("image equals the shifted product string") {
        const ReferenceSystem sys(1, 5);
        for (std::uint64_t v = 0; v < 32; ++v) {
            const auto s = BitString::from_integer(v, 5);
            for (std::uint64_t d = 1; d <= 3; ++d) {
                const auto image = holographic_map(s, {d});
                const auto direct = decode_product(sys, shift(encode_string(sys, s), {d}));
                CHECK(image.string == direct);
            }
        }
    }

    TEST_CASE("demo with no shift decodes the original set") {
        const ReferenceSystem sys(42, 4);
        const std::vector<BitString> set{BitString::parse("0011"), BitString::parse("1010")};
        const auto r = holographic_demo(sys, set, {0}, 10000);
        CHECK(r.matches);
        CHECK(r.decoded.detected == set);
    }

    TEST_CASE("demo with one-period shift") {
        const ReferenceSystem sys(42, 4);
        const auto r = holographic_demo(sys, {BitString::parse("0000")}, {1}, 10000);
        CHECK(r.matches);
        CHECK(r.decoded.detected == std::vector<BitString>{BitString::parse("1111")});

        // 1111 overflows: nothing is decoded and every candidate stays near 0.
        const auto gone = holographic_demo(sys, {BitString::parse("1111")}, {1}, 10000);
        CHECK(gone.members.front().image.status == ImageStatus::LadderOverflow);
        CHECK(gone.decoded.detected.empty());
        for (const auto& c : gone.decoded.correlations) CHECK(std::abs(c.estimate.rho) <= 0.05);

        // Collision image behaves the same way.
        const auto hit = holographic_demo(sys, {BitString::parse("1000")}, {1}, 10000);
        CHECK(hit.members.front().image.status == ImageStatus::Collision);
        CHECK(hit.decoded.detected.empty());
        for (const auto& c : hit.decoded.correlations) CHECK(std::abs(c.estimate.rho) <= 0.05);
    }

    TEST_CASE("mixed set keeps only in-range images") {
        const ReferenceSystem sys(9, 4);
        const std::vector<BitString> set{BitString::parse("0000"), BitString::parse("0100"),
                                         BitString::parse("1111")};
        const auto r = holographic_demo(sys, set, {1}, 10000);
        CHECK(r.matches);
        CHECK(r.expected == r.decoded.detected);
    }
}

TEST_SUITE("non-commutation") {
    TEST_CASE("products commute with each other, shifts with each other") {
        const ReferenceSystem sys(1, 2);
        const Product x{0, 3};
        const Product a = sys.reference_noise({1, 1});
        const Product b = sys.reference_noise({2, 0});
        CHECK(multiply(a, multiply(b, x)) == multiply(b, multiply(a, x)));
        CHECK(shift(shift(x, {2}), {5}) == shift(shift(x, {5}), {2}));
    }

    TEST_CASE("multiply and shift do not commute") {
        const ReferenceSystem sys(42, 2);
        const auto r = noncommute_demo(sys, encode_integer(sys, 0), {1, 0}, {1}, 1000000);
        CHECK_FALSE(r.canonical_equal);
        CHECK(std::abs(r.cross.rho) <= 5e-3);
        CHECK(r.self_multiply_after_shift.rho == 1.0);
        CHECK(r.self_shift_after_multiply.rho == 1.0);
        CHECK_THROWS_AS(noncommute_demo(sys, Product{}, {1, 0}, {0}, 100), Error);
    }

    TEST_CASE("structural witness for random inputs") {
        const ReferenceSystem sys(1, 3, 1);
        CounterRng rng(21);
        for (int k = 0; k < 500; ++k) {
            std::vector<std::uint64_t> offsets(rng.below(6));
            for (auto& o : offsets) o = rng.below(40);
            const Product x(std::move(offsets));
            const auto ids = sys.references();
            const auto id = ids[rng.below(ids.size())];
            const ShiftOffset d{1 + rng.below(20)};
            const Product ref = sys.reference_noise(id);
            CHECK(multiply(ref, shift(x, d)) != shift(multiply(ref, x), d));
        }
    }
}

TEST_SUITE("random shifts") {
    TEST_CASE("assignments") {
        const ReferenceSystem sys(1, 3);
        const auto a = ShiftAssignment::random(sys, 5);
        CHECK(a.range() == 6);
        for (auto r : a.offsets()) CHECK((r >= 1 && r <= 6));
        const auto d = ShiftAssignment::random_distinct(sys, 5);
        CHECK(std::set<std::uint64_t>(d.offsets().begin(), d.offsets().end()).size() == 6);
        CHECK(ShiftAssignment::random_distinct(sys, 5).offsets() == d.offsets());
        CHECK_THROWS_AS(ShiftAssignment::random_distinct(sys, 5, 5), Error);
        CHECK_THROWS_AS(ShiftAssignment(sys, {1, 2}), Error);
        const auto wide = ShiftAssignment::random_distinct(sys, 5, 100);
        for (auto r : wide.offsets()) CHECK((r >= 1 && r <= 100));
    }

    TEST_CASE("zero shift leaves the reference unchanged") {
        const ReferenceSystem sys(42, 1);
        const ShiftAssignment a(sys, {0, 2});
        const auto r = random_shift_demo(sys, a, {1, 0}, 10000);
        CHECK(r.uncompensated.rho == 1.0);
        CHECK(r.compensated.rho == 1.0);
    }

    TEST_CASE("unknown shift hides the reference, known shift restores it") {
        const ReferenceSystem sys(42, 2);
        const ShiftAssignment a(sys, {3, 1, 2, 4});
        const auto r = random_shift_demo(sys, a, {1, 0}, 1000000);
        CHECK(r.assigned.periods == 3);
        CHECK(std::abs(r.uncompensated.rho) <= 5e-3);
        CHECK(r.compensated.rho == 1.0);
        CHECK(r.compensated_equal);
        REQUIRE(r.restored.size() == 1);
        CHECK(r.restored.front() == ReferenceId{1, 0});
    }

    TEST_CASE("a single global shift restores one reference of a distinct assignment") {
        const ReferenceSystem sys(42, 3);
        const auto a = ShiftAssignment::random_distinct(sys, 77);
        for (std::uint64_t d = 1; d <= a.range(); ++d) CHECK(restored_references(sys, a, {d}).size() == 1);
        CHECK(restored_references(sys, a, {0}).empty());
        CHECK(restored_references(sys, a, {a.range() + 1}).empty());
    }
}
