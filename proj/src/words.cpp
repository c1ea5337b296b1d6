#include "detzeta/words.hpp"

namespace detzeta {

namespace {

// Odometer enumeration over symbol tuples with early admissibility pruning.
template <typename Fn>
void enumerate(const SymbolicModel& model, int n, bool cyclic, bool exclude_all_s0,
               Fn&& emit) {
    if (n < 1) throw DomainError("word length must be >= 1");
    const int ns = model.num_symbols();
    Word word(n, 0);
    std::uint64_t rank = 0;
    int pos = 0;
    word[0] = -1;
    while (pos >= 0) {
        ++word[pos];
        if (word[pos] >= ns) {
            --pos;
            continue;
        }
        if (pos > 0 && !model.transitions().at(word[pos - 1], word[pos])) continue;
        if (pos + 1 < n) {
            ++pos;
            word[pos] = -1;
            continue;
        }
        if (cyclic && !model.transitions().at(word[n - 1], word[0])) continue;
        if (exclude_all_s0 && model.all_in_s0(word)) continue;
        emit(rank++, word);
    }
}

}  // namespace

std::vector<Word> admissible_words(const SymbolicModel& model, int n,
                                   bool exclude_all_s0) {
    std::vector<Word> out;
    enumerate(model, n, /*cyclic=*/false, exclude_all_s0,
              [&](std::uint64_t, const Word& w) { out.push_back(w); });
    return out;
}

std::vector<Word> cyclic_words(const SymbolicModel& model, int m) {
    std::vector<Word> out;
    enumerate(model, m, /*cyclic=*/true, /*exclude_all_s0=*/true,
              [&](std::uint64_t, const Word& w) { out.push_back(w); });
    return out;
}

void visit_cyclic_words(const SymbolicModel& model, int m,
                        const std::function<void(std::uint64_t, const Word&)>& visit) {
    enumerate(model, m, /*cyclic=*/true, /*exclude_all_s0=*/true, visit);
}

std::uint64_t count_cyclic_words(const SymbolicModel& model, int m) {
    std::uint64_t n = 0;
    enumerate(model, m, /*cyclic=*/true, /*exclude_all_s0=*/true,
              [&](std::uint64_t, const Word&) { ++n; });
    return n;
}

}  // namespace detzeta
