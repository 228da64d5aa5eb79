#include "lexseq/trie.hpp"

#include "lexseq/check.hpp"
#include "lexseq/utf8.hpp"

namespace lexseq {

void LexiconTrie::insert(std::u32string_view word, int word_id) {
  check(!word.empty(), "trie: empty word");
  check(word_id >= 0, "trie: word id must be non-negative");
  int cur = 0;
  for (char32_t c : word) {
    auto it = nodes_[cur].next.find(c);
    if (it == nodes_[cur].next.end()) {
      nodes_.push_back(Node{});
      it = nodes_[cur].next.emplace(c, static_cast<int>(nodes_.size()) - 1).first;
    }
    cur = it->second;
  }
  check(nodes_[cur].word_id == -1, "trie: duplicate word '" + utf8_encode(word) + "'");
  nodes_[cur].word_id = word_id;
  ++words_;
}

bool LexiconTrie::contains(std::u32string_view word) const {
  return word_id(word) != -1;
}

int LexiconTrie::word_id(std::u32string_view word) const {
  int cur = 0;
  for (char32_t c : word) {
    auto it = nodes_[cur].next.find(c);
    if (it == nodes_[cur].next.end()) return -1;
    cur = it->second;
  }
  return nodes_[cur].word_id;
}

std::vector<MatchedWord> LexiconTrie::match(std::u32string_view chars, int min_len) const {
  std::vector<MatchedWord> out;
  const int n = static_cast<int>(chars.size());
  for (int start = 0; start < n; ++start) {
    int cur = 0;
    for (int end = start; end < n; ++end) {
      auto it = nodes_[cur].next.find(chars[end]);
      if (it == nodes_[cur].next.end()) break;
      cur = it->second;
      if (nodes_[cur].word_id != -1 && end - start + 1 >= min_len)
        out.push_back(MatchedWord{nodes_[cur].word_id, start, end});
    }
  }
  // Walking starts in order and extends by length, so out is already
  // (start, length)-sorted.
  return out;
}

LexiconTrie build_trie(const std::vector<std::u32string>& vocab) {
  LexiconTrie trie;
  for (std::size_t i = 0; i < vocab.size(); ++i)
    trie.insert(vocab[i], static_cast<int>(i));
  return trie;
}

std::vector<MatchedWord> match_words(const LexiconTrie& trie, std::u32string_view chars,
                                     int min_len) {
  return trie.match(chars, min_len);
}

}  // namespace lexseq
