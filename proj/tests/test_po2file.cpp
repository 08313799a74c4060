#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <string>

#include "po2fact/po2file.hpp"
#include "po2fact/rng.hpp"
#include "test_util.hpp"

using namespace po2fact;
using test_util::random_factorization;

TEST_CASE("binary and text roundtrips are lossless and byte-stable") {
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        const Factorization fact = random_factorization(seed);
        for (FileMode mode : {FileMode::Binary, FileMode::Text}) {
            const std::string bytes = serialize(fact, mode);
            const Factorization back = deserialize(bytes);
            CHECK(back.rows == fact.rows);
            CHECK(back.cols == fact.cols);
            CHECK(back.factors == fact.factors);
            CHECK(back.config.rate == fact.config.rate);
            CHECK(back.config.seed == fact.config.seed);
            CHECK(serialize(back, mode) == bytes);
        }
        // both modes carry the same information
        CHECK(deserialize(serialize(fact, FileMode::Binary)).factors ==
              deserialize(serialize(fact, FileMode::Text)).factors);
    }
}

TEST_CASE("error kinds are distinguished") {
    const Factorization fact = random_factorization(42);
    const std::string good = serialize(fact, FileMode::Binary);

    SUBCASE("bad magic") {
        std::string bad = good;
        bad[0] = 'X';
        CHECK_THROWS_AS(deserialize(bad), BadMagicError);
    }

    SUBCASE("unknown mode byte") {
        std::string bad = good;
        bad[4] = 'Q';
        CHECK_THROWS_AS(deserialize(bad), FormatError);
    }

    SUBCASE("unsupported version") {
        std::string bad = good;
        bad[5] = 9;
        CHECK_THROWS_AS(deserialize(bad), VersionError);
    }

    SUBCASE("truncation at every prefix length") {
        for (std::size_t len : {0u, 3u, 4u, 8u, 20u, 40u}) {
            if (len >= good.size()) continue;
            CHECK_THROWS_AS(deserialize(good.substr(0, len)), FormatError);
        }
        CHECK_THROWS_AS(deserialize(good.substr(0, good.size() - 1)), TruncatedError);
    }

    SUBCASE("out-of-range column index") {
        Factorization single;
        single.rows = 2;
        single.cols = 2;
        single.config.q = 1;
        Po2Matrix f(2, 2);
        f.push(0, 1, {1, 0});
        single.factors.push_back(f);
        std::string bytes = serialize(single, FileMode::Text);
        const auto pos = bytes.find("0 1 1 0");
        REQUIRE(pos != std::string::npos);
        bytes.replace(pos, 7, "0 9 1 0");
        CHECK_THROWS_AS(deserialize(bytes), RangeError);
    }

    SUBCASE("invalid sign") {
        Factorization single;
        single.rows = 2;
        single.cols = 2;
        single.config.q = 1;
        Po2Matrix f(2, 2);
        f.push(0, 1, {1, 0});
        single.factors.push_back(f);
        std::string bytes = serialize(single, FileMode::Text);
        const auto pos = bytes.find("0 1 1 0");
        REQUIRE(pos != std::string::npos);
        bytes.replace(pos, 7, "0 1 3 0");
        CHECK_THROWS_AS(deserialize(bytes), RangeError);
    }

    SUBCASE("duplicate entry") {
        std::string text = "PO2FT 1\n1 2 1 1 1 0\n1 2 2\n0 1 1 0\n0 1 1 0\n";
        CHECK_THROWS_AS(deserialize(text), RangeError);
    }

    SUBCASE("factor shape breaking the chain") {
        std::string text = "PO2FT 1\n2 3 2 1 1 0\n2 3 0\n2 2 0\n";  // second factor must be 3x3
        CHECK_THROWS_AS(deserialize(text), RangeError);
    }
}
