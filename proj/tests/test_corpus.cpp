#include <doctest.h>

#include "cater/corpus.hpp"
#include "support.hpp"

using namespace cater;
using testing::error_of;

namespace {

const char* kWeSawIt =
    "# sent_id = 1\n"
    "# text = We saw it .\n"
    "1\tWe\twe\tPRON\tPRP\tCase=Nom\t2\tnsubj\t_\t_\n"
    "2\tsaw\tsee\tVERB\tVBD\tTense=Past\t0\troot\t_\t_\n"
    "3\tit\tit\tPRON\tPRP\t_\t2\tobj\t_\tSpaceAfter=No\n"
    "4\t.\t.\tPUNCT\t.\t_\t2\tpunct\t_\t_\n"
    "\n";

}  // namespace

TEST_CASE("parse a single UD sentence") {
  const Corpus c = parse_conllu(kWeSawIt);
  REQUIRE(c.sentences.size() == 1);
  const Sentence& s = c.sentences[0];
  REQUIRE(s.tokens.size() == 4);
  CHECK(s.comments == std::vector<std::string>{" sent_id = 1", " text = We saw it ."});
  CHECK(s.tokens[0] == Token{1, "We", "PRON", 2, "nsubj"});
  CHECK(s.tokens[1] == Token{2, "saw", "VERB", 0, "root"});
  CHECK(s.tokens[3] == Token{4, ".", "PUNCT", 2, "punct"});
}

TEST_CASE("XPOS column on request") {
  ParseOptions opt;
  opt.pos_column = PosColumn::Xpos;
  const Corpus c = parse_conllu(kWeSawIt, opt);
  CHECK(c.sentences[0].tokens[1].pos == "VBD");
}

TEST_CASE("empty input and trailing whitespace") {
  CHECK(parse_conllu("").sentences.empty());
  CHECK(parse_conllu("\n\n\n").sentences.empty());
  std::string no_trailing_blank = kWeSawIt;
  no_trailing_blank.pop_back();
  CHECK(parse_conllu(no_trailing_blank).sentences.size() == 1);
}

TEST_CASE("CRLF line endings") {
  std::string crlf;
  for (char ch : std::string(kWeSawIt)) {
    if (ch == '\n') crlf += '\r';
    crlf += ch;
  }
  CHECK(parse_conllu(crlf) == parse_conllu(kWeSawIt));
}

TEST_CASE("non-integer HEAD reports its line") {
  const std::string text =
      "1\tWe\t_\tPRON\t_\t_\t2\tnsubj\t_\t_\n"
      "2\tsaw\t_\tVERB\t_\t_\tx\troot\t_\t_\n";
  try {
    parse_conllu(text);
    FAIL("expected MalformedLine");
  } catch (const MalformedLine& e) {
    CHECK(e.code() == ErrorCode::MalformedLine);
    CHECK(e.line() == 2);
  }
}

TEST_CASE("too few columns and bad ID") {
  CHECK(error_of([] { parse_conllu("1\tWe\t_\tPRON\t_\t_\t0\n"); }) == ErrorCode::MalformedLine);
  CHECK(error_of([] { parse_conllu("one\tWe\t_\tPRON\t_\t_\t0\troot\t_\t_\n"); }) ==
        ErrorCode::MalformedLine);
}

TEST_CASE("tree invariants are enforced") {
  const std::string cycle =
      "1\ta\t_\tX\t_\t_\t2\tdep\t_\t_\n"
      "2\tb\t_\tX\t_\t_\t1\tdep\t_\t_\n"
      "3\tc\t_\tX\t_\t_\t0\troot\t_\t_\n";
  CHECK(error_of([&] { parse_conllu(cycle); }) == ErrorCode::CycleError);

  const std::string self_loop =
      "1\ta\t_\tX\t_\t_\t1\tdep\t_\t_\n"
      "2\tb\t_\tX\t_\t_\t0\troot\t_\t_\n";
  CHECK(error_of([&] { parse_conllu(self_loop); }) == ErrorCode::CycleError);

  const std::string two_roots =
      "1\ta\t_\tX\t_\t_\t0\troot\t_\t_\n"
      "2\tb\t_\tX\t_\t_\t0\troot\t_\t_\n";
  CHECK(error_of([&] { parse_conllu(two_roots); }) == ErrorCode::MultipleRoots);

  const std::string no_root =
      "1\ta\t_\tX\t_\t_\t2\tdep\t_\t_\n"
      "2\tb\t_\tX\t_\t_\t1\tdep\t_\t_\n";
  CHECK(error_of([&] { parse_conllu(no_root); }) != ErrorCode::InvalidArgument);

  const std::string head_out_of_range =
      "1\ta\t_\tX\t_\t_\t0\troot\t_\t_\n"
      "2\tb\t_\tX\t_\t_\t7\tdep\t_\t_\n";
  CHECK_THROWS_AS(parse_conllu(head_out_of_range), Error);

  const std::string gap =
      "1\ta\t_\tX\t_\t_\t0\troot\t_\t_\n"
      "3\tb\t_\tX\t_\t_\t1\tdep\t_\t_\n";
  CHECK_THROWS_AS(parse_conllu(gap), Error);
}

TEST_CASE("multiword ranges and empty nodes are skipped") {
  const std::string text =
      "1-2\tdel\t_\t_\t_\t_\t_\t_\t_\t_\n"
      "1\tde\t_\tADP\t_\t_\t2\tcase\t_\t_\n"
      "2\tel\t_\tDET\t_\t_\t0\troot\t_\t_\n"
      "2.1\tx\t_\tX\t_\t_\t_\t_\t_\t_\n";
  const Corpus c = parse_conllu(text);
  REQUIRE(c.sentences.size() == 1);
  CHECK(c.sentences[0].tokens.size() == 2);
}

TEST_CASE("write_conllu layout") {
  CHECK(write_conllu(Corpus{}) == "");
  const std::string out = write_conllu(parse_conllu(kWeSawIt));
  CHECK(out ==
        "# sent_id = 1\n"
        "# text = We saw it .\n"
        "1\tWe\t_\tPRON\t_\t_\t2\tnsubj\t_\t_\n"
        "2\tsaw\t_\tVERB\t_\t_\t0\troot\t_\t_\n"
        "3\tit\t_\tPRON\t_\t_\t2\tobj\t_\t_\n"
        "4\t.\t_\tPUNCT\t_\t_\t2\tpunct\t_\t_\n"
        "\n");
}

TEST_CASE("round trip preserves retained columns") {
  const Corpus once = parse_conllu(kWeSawIt);
  const std::string written = write_conllu(once);
  const Corpus twice = parse_conllu(written);
  CHECK(twice == once);
  CHECK(write_conllu(twice) == written);
}

TEST_CASE("parse . write . parse = parse on random corpora") {
  Rng rng(20240611);
  for (int trial = 0; trial < 200; ++trial) {
    Corpus c;
    const std::size_t ns = rng.below(4);
    for (std::size_t i = 0; i < ns; ++i) {
      Sentence s = testing::random_sentence(rng, 1 + rng.below(12));
      if (rng.below(2)) s.comments.push_back(" id " + std::to_string(i));
      c.sentences.push_back(std::move(s));
    }
    const Corpus parsed = parse_conllu(write_conllu(c));
    CHECK(parsed == c);
    CHECK(write_conllu(parse_conllu(write_conllu(parsed))) == write_conllu(parsed));
    for (const Sentence& s : parsed.sentences) CHECK_NOTHROW(validate_sentence(s));
  }
}

TEST_CASE("render_plaintext") {
  CHECK(render_plaintext(Corpus{}) == "");
  const Corpus one = parse_conllu(kWeSawIt);
  CHECK(render_plaintext(one) == "We saw it .");
  Corpus two = one;
  two.sentences.push_back(testing::flat({{"Hello", "INTJ"}, {"there", "ADV"}}));
  CHECK(render_plaintext(two) == "We saw it .\nHello there");
}
