#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace smigan {

/// Byte-level BPE vocabulary. Ids are dense; the four specials are fixed
/// and never participate in merges.
struct Vocab {
  static constexpr int kPad = 0;
  static constexpr int kBos = 1;
  static constexpr int kEos = 2;
  static constexpr int kUnk = 3;
  static constexpr int kNumSpecials = 4;

  std::vector<std::string> id_to_token;          // specials hold display names
  std::unordered_map<std::string, int> token_to_id;  // content tokens only

  int size() const { return static_cast<int>(id_to_token.size()); }
  bool is_special(int id) const { return id < kNumSpecials; }
};

struct Merge {
  int left = 0;
  int right = 0;
  int result = 0;  // == initial vocab size + merge index
};

struct MergeTable {
  std::vector<Merge> merges;
};

/// Token ids of one sequence. Ids end with EOS; positions at or beyond
/// length() are implicitly PAD up to max_len.
struct TokenSequence {
  std::vector<int> ids;
  int max_len = 0;

  int length() const { return static_cast<int>(ids.size()); }
  int id_at(int t) const { return t < length() ? ids[t] : Vocab::kPad; }
  std::vector<int> padded() const;
};

/// Trains byte-level BPE: starts from the distinct bytes of the corpus
/// plus the specials, then repeatedly merges the most frequent adjacent
/// pair (ties: lexicographically smallest byte strings) until the
/// vocabulary reaches target_size or no pair occurs at least twice.
/// Throws std::invalid_argument if target_size is below the initial size.
std::pair<Vocab, MergeTable> train_bpe(const std::vector<std::string>& corpus,
                                       int target_size);

/// Splits into bytes, applies merges in training order, maps to ids
/// (unseen bytes -> UNK) and appends EOS.
TokenSequence encode(std::string_view text, const Vocab& vocab,
                     const MergeTable& merges, int max_len = 0);

/// Concatenates token byte strings, stopping at the first EOS and
/// skipping PAD/BOS (UNK decodes to nothing). Throws std::out_of_range
/// for ids outside the vocabulary.
std::string decode(const TokenSequence& seq, const Vocab& vocab);

void save_vocab(std::ostream& os, const Vocab& vocab, const MergeTable& merges);
void save_vocab_file(const std::string& path, const Vocab& vocab,
                     const MergeTable& merges);
std::pair<Vocab, MergeTable> load_vocab(std::istream& is);
std::pair<Vocab, MergeTable> load_vocab_file(const std::string& path);

}  // namespace smigan
