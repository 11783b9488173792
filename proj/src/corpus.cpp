#include "cater/corpus.hpp"

#include <charconv>
#include <cstddef>

#include "cater/error.hpp"

namespace cater {

namespace {

std::vector<std::string_view> split_tabs(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const std::size_t tab = line.find('\t', start);
    if (tab == std::string_view::npos) {
      fields.push_back(line.substr(start));
      return fields;
    }
    fields.push_back(line.substr(start, tab - start));
    start = tab + 1;
  }
}

bool parse_int(std::string_view s, int& out) {
  if (s.empty()) return false;
  const char* first = s.data();
  const char* last = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(first, last, out);
  return ec == std::errc() && ptr == last;
}

bool is_multiword_or_empty_node(std::string_view id) {
  return id.find('-') != std::string_view::npos ||
         id.find('.') != std::string_view::npos;
}

}  // namespace

void validate_sentence(const Sentence& sentence) {
  const int n = static_cast<int>(sentence.tokens.size());
  int roots = 0;
  for (int i = 0; i < n; ++i) {
    const Token& t = sentence.tokens[i];
    if (t.index != i + 1) {
      throw Error(ErrorCode::InvalidIndex,
                  "token indices must be contiguous from 1; found " +
                      std::to_string(t.index) + " at position " +
                      std::to_string(i + 1));
    }
    if (t.surface.empty()) {
      throw Error(ErrorCode::InvalidIndex,
                  "empty surface form at token " + std::to_string(t.index));
    }
    if (t.head < 0 || t.head > n) {
      throw Error(ErrorCode::InvalidIndex,
                  "head " + std::to_string(t.head) + " of token " +
                      std::to_string(t.index) + " is out of range");
    }
    if (t.head == t.index) {
      throw Error(ErrorCode::CycleError,
                  "token " + std::to_string(t.index) + " is its own head");
    }
    if (t.head == 0) ++roots;
  }
  if (n > 0 && roots != 1) {
    throw Error(ErrorCode::MultipleRoots,
                "sentence has " + std::to_string(roots) + " roots");
  }
  // Walk each head chain; a chain longer than n revisits a token.
  for (int i = 0; i < n; ++i) {
    int cur = i + 1;
    for (int steps = 0; cur != 0; ++steps) {
      if (steps > n) {
        throw Error(ErrorCode::CycleError,
                    "head links from token " + std::to_string(i + 1) +
                        " form a cycle");
      }
      cur = sentence.tokens[cur - 1].head;
    }
  }
}

Corpus parse_conllu(std::string_view text, const ParseOptions& options) {
  Corpus corpus;
  corpus.source = options.source;
  Sentence current;
  std::size_t sentence_first_line = 0;

  auto flush = [&]() {
    if (!current.tokens.empty()) {
      try {
        validate_sentence(current);
      } catch (const MalformedLine&) {
        throw;
      } catch (const Error& e) {
        throw Error(e.code(), "sentence starting at line " +
                                  std::to_string(sentence_first_line) + ": " +
                                  e.what());
      }
      corpus.sentences.push_back(std::move(current));
    }
    current = Sentence{};
    sentence_first_line = 0;
  };

  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    std::string_view line = text.substr(pos, eol - pos);
    pos = eol + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);

    if (line.empty()) {
      flush();
      continue;
    }
    if (sentence_first_line == 0) sentence_first_line = line_no;
    if (line.front() == '#') {
      current.comments.emplace_back(line.substr(1));
      continue;
    }

    const auto fields = split_tabs(line);
    if (fields.size() < 8) {
      throw MalformedLine(line_no, "expected at least 8 tab-separated columns, got " +
                                       std::to_string(fields.size()));
    }
    if (is_multiword_or_empty_node(fields[0])) continue;

    Token token;
    if (!parse_int(fields[0], token.index)) {
      throw MalformedLine(line_no, "non-integer ID '" + std::string(fields[0]) + "'");
    }
    if (!parse_int(fields[6], token.head)) {
      throw MalformedLine(line_no, "non-integer HEAD '" + std::string(fields[6]) + "'");
    }
    if (fields[1].empty()) throw MalformedLine(line_no, "empty FORM");
    token.surface = fields[1];
    token.pos = options.pos_column == PosColumn::Xpos ? fields[4] : fields[3];
    token.deprel = fields[7];
    if (token.index != static_cast<int>(current.tokens.size()) + 1) {
      throw MalformedLine(line_no, "ID " + std::to_string(token.index) +
                                       " breaks the 1..n token sequence");
    }
    current.tokens.push_back(std::move(token));
  }
  flush();
  return corpus;
}

std::string write_conllu(const Corpus& corpus) {
  std::string out;
  for (const Sentence& s : corpus.sentences) {
    for (const std::string& c : s.comments) {
      out += '#';
      out += c;
      out += '\n';
    }
    for (const Token& t : s.tokens) {
      out += std::to_string(t.index);
      out += '\t';
      out += t.surface;
      out += "\t_\t";
      out += t.pos.empty() ? "_" : t.pos;
      out += "\t_\t_\t";
      out += std::to_string(t.head);
      out += '\t';
      out += t.deprel.empty() ? "_" : t.deprel;
      out += "\t_\t_\n";
    }
    out += '\n';
  }
  return out;
}

std::string render_plaintext(const Corpus& corpus) {
  std::string out;
  bool first_line = true;
  for (const Sentence& s : corpus.sentences) {
    if (!first_line) out += '\n';
    first_line = false;
    bool first_token = true;
    for (const Token& t : s.tokens) {
      if (!first_token) out += ' ';
      first_token = false;
      out += t.surface;
    }
  }
  return out;
}

}  // namespace cater
