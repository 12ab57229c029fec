#include "smigan/bpe.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace smigan {

namespace {

const char* kSpecialNames[Vocab::kNumSpecials] = {"<pad>", "<bos>", "<eos>", "<unk>"};

std::string hex_escape(const std::string& bytes) {
  std::string out;
  for (unsigned char c : bytes) {
    if (c >= 0x20 && c < 0x7f && c != '\\') {
      out += static_cast<char>(c);
    } else {
      char buf[5];
      std::snprintf(buf, sizeof buf, "\\x%02x", c);
      out += buf;
    }
  }
  return out;
}

std::string hex_unescape(const std::string& text) {
  std::string out;
  for (std::size_t i = 0; i < text.size();) {
    if (text[i] == '\\' && i + 3 < text.size() && text[i + 1] == 'x') {
      out += static_cast<char>(std::stoi(text.substr(i + 2, 2), nullptr, 16));
      i += 4;
    } else {
      out += text[i++];
    }
  }
  return out;
}

}  // namespace

std::vector<int> TokenSequence::padded() const {
  std::vector<int> out = ids;
  if (max_len > static_cast<int>(out.size())) out.resize(max_len, Vocab::kPad);
  return out;
}

std::pair<Vocab, MergeTable> train_bpe(const std::vector<std::string>& corpus,
                                       int target_size) {
  if (corpus.empty()) throw std::invalid_argument("train_bpe: empty corpus");

  Vocab vocab;
  for (const char* name : kSpecialNames) vocab.id_to_token.emplace_back(name);

  // Initial vocabulary: bytes present in the corpus, in byte order.
  std::array<bool, 256> present{};
  for (const auto& line : corpus)
    for (unsigned char c : line) present[c] = true;
  std::array<int, 256> byte_id;
  byte_id.fill(Vocab::kUnk);
  for (int c = 0; c < 256; ++c) {
    if (!present[c]) continue;
    byte_id[c] = vocab.size();
    vocab.id_to_token.emplace_back(1, static_cast<char>(c));
  }
  if (target_size < vocab.size())
    throw std::invalid_argument("train_bpe: target size " + std::to_string(target_size) +
                                " below initial vocabulary " + std::to_string(vocab.size()));

  std::vector<std::vector<int>> lines;
  lines.reserve(corpus.size());
  for (const auto& line : corpus) {
    std::vector<int> toks;
    toks.reserve(line.size());
    for (unsigned char c : line) toks.push_back(byte_id[c]);
    lines.push_back(std::move(toks));
  }

  std::map<std::pair<int, int>, long> counts;
  for (const auto& toks : lines)
    for (std::size_t i = 0; i + 1 < toks.size(); ++i)
      ++counts[{toks[i], toks[i + 1]}];

  MergeTable table;
  while (vocab.size() < target_size) {
    // most frequent pair; ties by lexicographically smallest byte strings
    std::pair<int, int> best{-1, -1};
    long best_count = 0;
    for (const auto& [pair, count] : counts) {
      if (count < 2) continue;
      if (count > best_count) {
        best = pair;
        best_count = count;
      } else if (count == best_count && best.first >= 0) {
        auto key = std::pair(vocab.id_to_token[pair.first], vocab.id_to_token[pair.second]);
        auto best_key =
            std::pair(vocab.id_to_token[best.first], vocab.id_to_token[best.second]);
        if (key < best_key) best = pair;
      }
    }
    if (best.first < 0) break;  // nothing occurs twice

    int new_id = vocab.size();
    vocab.id_to_token.push_back(vocab.id_to_token[best.first] +
                                vocab.id_to_token[best.second]);
    table.merges.push_back(Merge{best.first, best.second, new_id});

    // Rewrite each affected line, recounting its pairs locally.
    for (auto& toks : lines) {
      bool hit = false;
      for (std::size_t i = 0; i + 1 < toks.size(); ++i)
        if (toks[i] == best.first && toks[i + 1] == best.second) {
          hit = true;
          break;
        }
      if (!hit) continue;
      for (std::size_t i = 0; i + 1 < toks.size(); ++i) {
        auto it = counts.find({toks[i], toks[i + 1]});
        if (it != counts.end() && --it->second == 0) counts.erase(it);
      }
      std::vector<int> next;
      next.reserve(toks.size());
      for (std::size_t i = 0; i < toks.size();) {
        if (i + 1 < toks.size() && toks[i] == best.first && toks[i + 1] == best.second) {
          next.push_back(new_id);
          i += 2;
        } else {
          next.push_back(toks[i]);
          ++i;
        }
      }
      toks = std::move(next);
      for (std::size_t i = 0; i + 1 < toks.size(); ++i)
        ++counts[{toks[i], toks[i + 1]}];
    }
  }

  for (int id = Vocab::kNumSpecials; id < vocab.size(); ++id)
    vocab.token_to_id.emplace(vocab.id_to_token[id], id);
  return {std::move(vocab), std::move(table)};
}

TokenSequence encode(std::string_view text, const Vocab& vocab,
                     const MergeTable& merges, int max_len) {
  std::vector<int> toks;
  toks.reserve(text.size() + 1);
  for (unsigned char c : text) {
    auto it = vocab.token_to_id.find(std::string(1, static_cast<char>(c)));
    toks.push_back(it == vocab.token_to_id.end() ? Vocab::kUnk : it->second);
  }
  for (const Merge& m : merges.merges) {
    std::size_t w = 0;
    for (std::size_t i = 0; i < toks.size();) {
      if (i + 1 < toks.size() && toks[i] == m.left && toks[i + 1] == m.right) {
        toks[w++] = m.result;
        i += 2;
      } else {
        toks[w++] = toks[i++];
      }
    }
    toks.resize(w);
  }
  toks.push_back(Vocab::kEos);
  TokenSequence seq;
  seq.ids = std::move(toks);
  seq.max_len = max_len > 0 ? max_len : seq.length();
  return seq;
}

std::string decode(const TokenSequence& seq, const Vocab& vocab) {
  std::string out;
  for (int id : seq.ids) {
    if (id < 0 || id >= vocab.size())
      throw std::out_of_range("decode: token id " + std::to_string(id) +
                              " outside vocabulary of " + std::to_string(vocab.size()));
    if (id == Vocab::kEos) break;
    if (id == Vocab::kPad || id == Vocab::kBos || id == Vocab::kUnk) continue;
    out += vocab.id_to_token[id];
  }
  return out;
}

void save_vocab(std::ostream& os, const Vocab& vocab, const MergeTable& merges) {
  nlohmann::ordered_json j;
  j["version"] = 1;
  j["specials"] = {{"pad", Vocab::kPad},
                   {"bos", Vocab::kBos},
                   {"eos", Vocab::kEos},
                   {"unk", Vocab::kUnk}};
  auto tokens = nlohmann::ordered_json::array();
  for (int id = 0; id < vocab.size(); ++id)
    tokens.push_back(vocab.is_special(id) ? vocab.id_to_token[id]
                                          : hex_escape(vocab.id_to_token[id]));
  j["tokens"] = std::move(tokens);
  auto merge_list = nlohmann::ordered_json::array();
  for (const Merge& m : merges.merges)
    merge_list.push_back({m.left, m.right});
  j["merges"] = std::move(merge_list);
  os << j.dump(1, '\t') << "\n";
}

void save_vocab_file(const std::string& path, const Vocab& vocab,
                     const MergeTable& merges) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot write vocabulary file: " + path);
  save_vocab(os, vocab, merges);
}

std::pair<Vocab, MergeTable> load_vocab(std::istream& is) {
  nlohmann::json j = nlohmann::json::parse(is);
  if (j.at("version").get<int>() != 1)
    throw std::runtime_error("unsupported vocabulary version");
  Vocab vocab;
  const auto& tokens = j.at("tokens");
  for (std::size_t id = 0; id < tokens.size(); ++id) {
    std::string text = tokens[id].get<std::string>();
    vocab.id_to_token.push_back(id < Vocab::kNumSpecials ? text : hex_unescape(text));
  }
  // merge result ids are the tail of the id space, in training order
  MergeTable table;
  int first_merge_id = vocab.size() - static_cast<int>(j.at("merges").size());
  for (const auto& m : j.at("merges"))
    table.merges.push_back(Merge{m[0].get<int>(), m[1].get<int>(),
                                 first_merge_id + static_cast<int>(table.merges.size())});
  for (int id = Vocab::kNumSpecials; id < vocab.size(); ++id)
    vocab.token_to_id.emplace(vocab.id_to_token[id], id);

  // soundness: every merge result must concatenate its parents
  for (const Merge& m : table.merges) {
    if (m.left >= m.result || m.right >= m.result || m.left < Vocab::kNumSpecials ||
        m.right < Vocab::kNumSpecials)
      throw std::runtime_error("corrupt vocabulary: merge references invalid ids");
    if (vocab.id_to_token[m.result] !=
        vocab.id_to_token[m.left] + vocab.id_to_token[m.right])
      throw std::runtime_error("corrupt vocabulary: merge byte strings inconsistent");
  }
  return {std::move(vocab), std::move(table)};
}

std::pair<Vocab, MergeTable> load_vocab_file(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw std::runtime_error("cannot read vocabulary file: " + path);
  return load_vocab(is);
}

}  // namespace smigan
