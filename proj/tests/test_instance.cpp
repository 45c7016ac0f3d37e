#include <catch2/catch_amalgamated.hpp>

#include <cstdint>
#include <random>
#include <sstream>

#include "flowbb/instance.hpp"
#include "helpers.hpp"

using namespace flowbb;

namespace {

// Independent route for the Taillard LCG: direct 64-bit modular multiply,
// integer division for the draw. No Schrage decomposition, no doubles.
struct DirectLcg {
    std::int64_t state;
    int next() {
        state = (16807 * state) % 2147483647;
        return 1 + static_cast<int>(state * 99 / 2147483647);
    }
};

}  // namespace

TEST_CASE("simple format parses a job-major matrix") {
    Instance inst = parse_instance("3 2\n3 2\n1 4\n2 3", InstanceFormat::simple);
    REQUIRE(inst.jobs() == 3);
    REQUIRE(inst.machines() == 2);
    CHECK(inst.p(0, 0) == 3);
    CHECK(inst.p(0, 1) == 2);
    CHECK(inst.p(1, 0) == 1);
    CHECK(inst.p(2, 1) == 3);
}

TEST_CASE("simple format accepts arbitrary whitespace") {
    Instance inst = parse_instance("  3   2\n\n 3 2 1\t4\n2 3  \n", InstanceFormat::simple);
    CHECK(inst.p(1, 1) == 4);
}

TEST_CASE("parse errors carry line and column") {
    CHECK_THROWS_AS(parse_instance("2 2\n1 2\n3", InstanceFormat::simple), ParseError);
    CHECK_THROWS_AS(parse_instance("x 2\n1 2\n3 4", InstanceFormat::simple), ParseError);
    CHECK_THROWS_AS(parse_instance("2 2\n1 -2\n3 4", InstanceFormat::simple), ParseError);
    CHECK_THROWS_AS(parse_instance("2 2\n1 2\n3 4\n5", InstanceFormat::simple), ParseError);
    try {
        parse_instance("2 2\n1 2\n3 oops", InstanceFormat::simple);
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.line == 3);
        CHECK(e.column == 3);
    }
}

TEST_CASE("taillard format parses header prose and a machine-major matrix") {
    std::string text =
        "number of jobs, number of machines, initial seed, upper bound and lower bound :\n"
        "          3           2   873654221        99        90\n"
        "processing times :\n"
        " 3 1 2\n"
        " 2 4 3\n";
    Instance inst = parse_instance(text, InstanceFormat::taillard);
    REQUIRE(inst.jobs() == 3);
    REQUIRE(inst.machines() == 2);
    CHECK(inst == testutil::small_3x2());
}

TEST_CASE("generated ta001 matches the published benchmark") {
    Instance inst = generate_instance(20, 5, 873654221);
    REQUIRE(inst.jobs() == 20);
    REQUIRE(inst.machines() == 5);
    CHECK(inst.p(0, 0) == 54);
    // First machine row of the published ta001 file.
    const int machine0[20] = {54, 83, 15, 71, 77, 36, 53, 38, 27, 87,
                              76, 91, 14, 29, 12, 77, 32, 87, 68, 94};
    for (int j = 0; j < 20; ++j) CHECK(inst.p(j, 0) == machine0[j]);
}

TEST_CASE("generator agrees with an independent LCG evaluation") {
    DirectLcg lcg{873654221};
    Instance inst = generate_instance(20, 5, 873654221);
    for (int k = 0; k < 5; ++k)
        for (int j = 0; j < 20; ++j)
            REQUIRE(inst.p(j, k) == lcg.next());
}

TEST_CASE("generator is deterministic and in range") {
    Instance a = generate_instance(7, 4, 12345);
    Instance b = generate_instance(7, 4, 12345);
    CHECK(a == b);
    Instance single = generate_instance(1, 1, 1);
    CHECK(single.p(0, 0) >= 1);
    CHECK(single.p(0, 0) <= 99);
    for (int j = 0; j < 7; ++j)
        for (int k = 0; k < 4; ++k) {
            CHECK(a.p(j, k) >= 1);
            CHECK(a.p(j, k) <= 99);
        }
    CHECK_THROWS_AS(generate_instance(3, 3, 0), std::invalid_argument);
    CHECK_THROWS_AS(generate_instance(3, 3, 2147483647), std::invalid_argument);
}

TEST_CASE("generated instances round-trip through the simple format") {
    Instance inst = generate_instance(6, 3, 424242);
    Instance back = parse_instance(to_simple_format(inst), InstanceFormat::simple);
    CHECK(inst == back);
}

TEST_CASE("makespan matches the recurrence examples") {
    Instance inst = testutil::small_3x2();
    CHECK(makespan(inst, {1, 0, 2}) == 10);
    CHECK(makespan(inst, {0, 1, 2}) == 12);
    Instance one_job(1, 3, {4, 5, 6});
    CHECK(makespan(one_job, {0}) == 15);
}

TEST_CASE("child_heads is the incremental form of the recurrence") {
    Instance inst = testutil::small_3x2();
    Heads root(2, 0);
    Heads after0 = child_heads(inst, root, 0);
    CHECK(after0 == Heads{3, 5});
    CHECK(child_heads(inst, after0, 1) == Heads{4, 9});
}

TEST_CASE("folding child_heads over a permutation reproduces makespan") {
    std::mt19937 rng(7);
    for (int trial = 0; trial < 30; ++trial) {
        int n = 2 + trial % 6;
        int m = 1 + trial % 5;
        Instance inst = testutil::random_instance(rng, n, m);
        Permutation perm(n);
        std::iota(perm.begin(), perm.end(), 0);
        std::shuffle(perm.begin(), perm.end(), rng);
        Heads heads(m, 0);
        for (int job : perm) {
            heads = child_heads(inst, heads, job);
            for (int k = 1; k < m; ++k) CHECK(heads[k] >= heads[k - 1]);
        }
        CHECK(heads.back() == makespan(inst, perm));
    }
}

TEST_CASE("makespan dominates the trivial load bounds") {
    std::mt19937 rng(11);
    for (int trial = 0; trial < 30; ++trial) {
        Instance inst = testutil::random_instance(rng, 2 + trial % 5, 2 + trial % 4);
        Permutation perm(inst.jobs());
        std::iota(perm.begin(), perm.end(), 0);
        std::shuffle(perm.begin(), perm.end(), rng);
        int value = makespan(inst, perm);
        for (int j = 0; j < inst.jobs(); ++j) CHECK(value >= inst.job_load(j));
        for (int k = 0; k < inst.machines(); ++k) {
            int load = 0;
            for (int j = 0; j < inst.jobs(); ++j) load += inst.p(j, k);
            CHECK(value >= load);
        }
    }
}
