#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "detzeta/examples.hpp"
#include "detzeta/words.hpp"

using namespace detzeta;

TEST_CASE("admissible word counts") {
    SymbolicModel full_shift = make_example("two-symbol-affine");
    CHECK(admissible_words(full_shift, 2, false).size() == 4);

    SymbolicModel saddle = make_example("linear-saddle");
    const auto words = admissible_words(saddle, 3, false);
    REQUIRE(words.size() == 1);
    CHECK(words[0] == Word{0, 0, 0});
}

TEST_CASE("all-S0 words are excluded on demand") {
    SymbolicModel model = make_example("parabolic-Pa");  // S0 = {0}, S1 = {1}
    const auto with = admissible_words(model, 2, false);
    const auto without = admissible_words(model, 2, true);
    CHECK(with.size() == 4);
    CHECK(without.size() == 3);
    std::set<Word> seen(without.begin(), without.end());
    CHECK(seen.count(Word{0, 0}) == 0);
    CHECK(seen.count(Word{0, 1}) == 1);
    CHECK(seen.count(Word{1, 0}) == 1);
    CHECK(seen.count(Word{1, 1}) == 1);
}

TEST_CASE("cyclic words of the linear saddle") {
    SymbolicModel model = make_example("linear-saddle");
    const auto cycles = cyclic_words(model, 2);
    REQUIRE(cycles.size() == 1);
    CHECK(cycles[0] == Word{0, 0});
}

TEST_CASE("full shift cycles are fixed points of the shift power") {
    SymbolicModel model = make_example("two-symbol-affine");
    CHECK(cyclic_words(model, 2).size() == 4);
    // Every rotation is produced as its own word.
    const auto cycles = cyclic_words(model, 3);
    std::set<Word> seen(cycles.begin(), cycles.end());
    CHECK(seen.count(Word{0, 0, 1}) == 1);
    CHECK(seen.count(Word{0, 1, 0}) == 1);
    CHECK(seen.count(Word{1, 0, 0}) == 1);
}

TEST_CASE("parabolic self-cycle is excluded") {
    SymbolicModel model = make_example("parabolic-Pa");
    const auto cycles = cyclic_words(model, 2);
    std::set<Word> seen(cycles.begin(), cycles.end());
    CHECK(seen.size() == 3);
    CHECK(seen.count(Word{0, 0}) == 0);
}

TEST_CASE("cycle counts match the transition-matrix power trace") {
    // Without the S0 restriction the number of cyclic words of length m is
    // exactly tr(T^m); with it, the all-S0 words (one per parabolic symbol,
    // which all carry self-loops) drop out.
    for (const char* id : {"two-symbol-affine", "bipartite-affine", "parabolic-Pa"}) {
        SymbolicModel model = make_example(id);
        const long long s0 = static_cast<long long>(model.symbols().s0.size());
        for (int m = 1; m <= 8; ++m) {
            const long long expected = model.transitions().power_trace(m) - s0;
            CHECK(count_cyclic_words(model, m) == static_cast<std::uint64_t>(expected));
        }
    }
}

TEST_CASE("bipartite model has no odd cycles") {
    SymbolicModel model = make_example("bipartite-affine");
    CHECK(count_cyclic_words(model, 1) == 0);
    CHECK(count_cyclic_words(model, 2) == 2);
    CHECK(count_cyclic_words(model, 3) == 0);
    CHECK(count_cyclic_words(model, 4) == 2);
}

TEST_CASE("streaming enumeration matches the materialized list") {
    SymbolicModel model = make_example("two-symbol-affine");
    const auto list = cyclic_words(model, 5);
    std::vector<Word> streamed;
    visit_cyclic_words(model, 5, [&](std::uint64_t rank, const Word& w) {
        CHECK(rank == streamed.size());
        streamed.push_back(w);
    });
    CHECK(streamed == list);
}
