#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace lexseq {

// One lexicon word found inside a sentence; span indices are 0-based and
// end is inclusive.
struct MatchedWord {
  int word_id = -1;
  int start = 0;
  int end = 0;

  int length() const { return end - start + 1; }
  bool operator==(const MatchedWord&) const = default;
};

// Prefix tree over the word vocabulary, for exhaustive subsequence matching.
// Build once via insert(); treat as immutable afterwards (readers may share
// it freely across threads).
class LexiconTrie {
 public:
  void insert(std::u32string_view word, int word_id);
  bool contains(std::u32string_view word) const;
  int word_id(std::u32string_view word) const;  // -1 if absent
  std::size_t size() const { return words_; }

  // Every (start, end) span of length >= min_len whose substring is a
  // vocabulary word, found by walking the trie from each start position.
  // Ordered by (start, length).
  std::vector<MatchedWord> match(std::u32string_view chars, int min_len = 2) const;

 private:
  struct Node {
    std::map<char32_t, int> next;
    int word_id = -1;
  };
  std::vector<Node> nodes_{1};
  std::size_t words_ = 0;
};

// Trie over vocab where word i gets id i. Rejects empty and duplicate words.
LexiconTrie build_trie(const std::vector<std::u32string>& vocab);

std::vector<MatchedWord> match_words(const LexiconTrie& trie, std::u32string_view chars,
                                     int min_len = 2);

}  // namespace lexseq
