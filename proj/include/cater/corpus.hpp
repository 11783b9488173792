#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace cater {

struct Token {
  int index = 0;  // 1-based position within the sentence
  std::string surface;
  std::string pos;  // UPOS by default, XPOS when requested at parse time
  int head = 0;     // 0 = root
  std::string deprel;

  bool operator==(const Token&) const = default;
};

struct Sentence {
  std::vector<Token> tokens;
  std::vector<std::string> comments;  // text after the leading '#'

  bool operator==(const Sentence&) const = default;
};

struct Corpus {
  std::vector<Sentence> sentences;
  std::string source;

  bool operator==(const Corpus& other) const {
    return sentences == other.sentences;
  }
};

enum class PosColumn { Upos, Xpos };

struct ParseOptions {
  PosColumn pos_column = PosColumn::Upos;
  std::string source;
};

// Throws Error(CycleError / MultipleRoots / InvalidIndex) or MalformedLine
// when the sentence breaks the tree invariants.
void validate_sentence(const Sentence& sentence);

// Reads CoNLL-U. Multiword ranges ("3-4") and empty nodes ("3.1") are
// skipped. Line numbers in errors are 1-based.
Corpus parse_conllu(std::string_view text, const ParseOptions& options = {});

// Emits columns ID, FORM, POS (column 4), HEAD and DEPREL; the rest are "_".
std::string write_conllu(const Corpus& corpus);

// One sentence per line, tokens joined by single spaces, no trailing newline.
std::string render_plaintext(const Corpus& corpus);

}  // namespace cater
