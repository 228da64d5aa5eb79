#include "lexseq/char_words.hpp"

#include <algorithm>

#include "lexseq/check.hpp"

namespace lexseq {

int CharWordsSeq::words_at(int i) const {
  int n = 0;
  for (std::uint8_t m : mask[i]) n += m;
  return n;
}

CharWordsSeq assign_to_chars(const std::vector<MatchedWord>& matches, std::u32string chars,
                             int m_max, int pad_word_id) {
  const int n = static_cast<int>(chars.size());
  check(m_max >= 1, "assign_to_chars: m_max must be >= 1");
  check(pad_word_id >= 0, "assign_to_chars: pad word id must be >= 0");

  CharWordsSeq seq;
  seq.chars = std::move(chars);
  seq.m_max = m_max;
  seq.pad_word_id = pad_word_id;
  seq.word_ids.assign(n, std::vector<int>(m_max, pad_word_id));
  seq.mask.assign(n, std::vector<std::uint8_t>(m_max, 0));

  std::vector<std::vector<MatchedWord>> per_char(n);
  for (const MatchedWord& w : matches) {
    check(w.start >= 0 && w.end >= w.start && w.end < n,
          "assign_to_chars: span out of range");
    for (int i = w.start; i <= w.end; ++i) per_char[i].push_back(w);
  }

  for (int i = 0; i < n; ++i) {
    std::vector<MatchedWord>& ws = per_char[i];
    if (static_cast<int>(ws.size()) > m_max) {
      std::stable_sort(ws.begin(), ws.end(), [](const MatchedWord& a, const MatchedWord& b) {
        if (a.start != b.start) return a.start < b.start;
        return a.length() > b.length();
      });
      ws.resize(m_max);
    }
    std::stable_sort(ws.begin(), ws.end(), [](const MatchedWord& a, const MatchedWord& b) {
      if (a.start != b.start) return a.start < b.start;
      return a.length() < b.length();
    });
    for (std::size_t k = 0; k < ws.size(); ++k) {
      seq.word_ids[i][k] = ws[k].word_id;
      seq.mask[i][k] = 1;
    }
  }
  return seq;
}

}  // namespace lexseq
