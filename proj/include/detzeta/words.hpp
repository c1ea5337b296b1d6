#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "detzeta/model.hpp"

namespace detzeta {

// All admissible words of length n (t_{i_k i_{k+1}} = 1 along the word),
// in lexicographic order. With exclude_all_s0, words lying entirely in S0
// are skipped.
std::vector<Word> admissible_words(const SymbolicModel& model, int n,
                                   bool exclude_all_s0);

// All cyclically admissible words of length m (closing edge included),
// excluding all-S0 words. Each rotation is produced as its own word, matching
// the fixed-point count of the m-th iterate.
std::vector<Word> cyclic_words(const SymbolicModel& model, int m);

// Streaming form of cyclic_words for long lengths; visits words in the same
// lexicographic order without materializing the list. The visitor receives
// the enumeration rank and the word.
void visit_cyclic_words(const SymbolicModel& model, int m,
                        const std::function<void(std::uint64_t, const Word&)>& visit);

std::uint64_t count_cyclic_words(const SymbolicModel& model, int m);

}  // namespace detzeta
