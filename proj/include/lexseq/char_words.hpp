#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "lexseq/trie.hpp"

namespace lexseq {

// A sentence as a char-words pair sequence: every position carries the ids
// of the lexicon words whose match span covers it, padded to m_max slots
// with the reserved PAD word id (mask 0).
struct CharWordsSeq {
  std::u32string chars;
  int m_max = 0;
  int pad_word_id = -1;
  std::vector<std::vector<int>> word_ids;        // n x m_max
  std::vector<std::vector<std::uint8_t>> mask;   // n x m_max, 1 = real word

  int length() const { return static_cast<int>(chars.size()); }
  int words_at(int i) const;  // number of real (unmasked) slots at position i
};

// Assign each matched word to every character its span covers. Slots are
// presented in (start, length) order; when a position exceeds m_max the kept
// words are chosen by ascending (start, -length), i.e. earlier and longer
// words survive truncation.
CharWordsSeq assign_to_chars(const std::vector<MatchedWord>& matches, std::u32string chars,
                             int m_max, int pad_word_id);

}  // namespace lexseq
