#include <thread>

#include "doctest.h"
#include "support.h"
#include "text2anim/canonical_json.h"
#include "text2anim/dependency.h"
#include "text2anim/error.h"
#include "text2anim/lexicon.h"

using namespace text2anim;
using support::KindOf;

namespace {

std::vector<std::string> Surfaces(const std::vector<Token>& t) {
  std::vector<std::string> out;
  for (const Token& x : t) out.push_back(x.surface);
  return out;
}

const Lexicon& Lex() { return Lexicon::Default(); }

DepEdge E(int head, int dep, DepLabel l) { return {head, dep, l}; }

}  // namespace

TEST_CASE("tokenize strips punctuation and lowercases") {
  CHECK(Surfaces(Tokenize("A rocket ship accelerates in space.")) ==
        std::vector<std::string>{"a", "rocket", "ship", "accelerates", "in", "space"});
  CHECK(Surfaces(Tokenize("sky")) == std::vector<std::string>{"sky"});
  const auto t = Tokenize("  The   moon,  orbits!  ");
  CHECK(Surfaces(t) == std::vector<std::string>{"the", "moon", "orbits"});
  for (size_t i = 0; i < t.size(); ++i) CHECK(t[i].index == static_cast<int>(i));
}

TEST_CASE("tokenize rejects blank input") {
  CHECK(KindOf([] { Tokenize("   "); }) == ErrorKind::kEmptyInput);
  CHECK(KindOf([] { Tokenize(""); }) == ErrorKind::kEmptyInput);
  CHECK(KindOf([] { Tokenize(" . ! "); }) == ErrorKind::kEmptyInput);
}

TEST_CASE("tag fills lemma and part of speech") {
  auto t = Tag(Tokenize("accelerates"), Lex());
  CHECK(t[0].lemma == "accelerate");
  CHECK(t[0].pos == Pos::kVerb);
  t = Tag(Tokenize("blue"), Lex());
  CHECK(t[0].lemma == "blue");
  CHECK(t[0].pos == Pos::kAdj);

  try {
    Tag(Tokenize("zorgle"), Lex());
    FAIL("expected UnknownLexeme");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::kUnknownLexeme);
    CHECK(e.location() == 0);
  }
  try {
    Tag(Tokenize("the blue zorgle"), Lex());
    FAIL("expected UnknownLexeme");
  } catch (const Error& e) {
    CHECK(e.location() == 2);
  }
}

TEST_CASE("lemmatizer: irregular table then suffix rules") {
  CHECK(Lex().Lemmatize("flies")->lemma == "fly");
  CHECK(Lex().Lemmatize("flew")->lemma == "fly");
  CHECK(Lex().Lemmatize("crashes")->lemma == "crash");
  CHECK(Lex().Lemmatize("is")->lemma == "be");
  CHECK(Lex().Lemmatize("ejected")->lemma == "eject");
  CHECK(Lex().Lemmatize("cars")->lemma == "car");
  CHECK(Lex().Lemmatize("bus") == nullptr);
}

TEST_CASE("positional disambiguation of multi-tag lemmas") {
  // "light" is Noun or Adj; after a determiner it is a noun.
  auto t = Tag(Tokenize("a light bulb"), Lex());
  CHECK(t[1].pos == Pos::kNoun);
  // "fall" is Verb or Noun; after a noun with no verb yet it is the verb.
  t = Tag(Tokenize("an apple falls"), Lex());
  CHECK(t[2].pos == Pos::kVerb);
  // After an auxiliary the verb reading wins.
  t = Tag(Tokenize("the driver is ejected"), Lex());
  CHECK(t[3].pos == Pos::kVerb);
}

TEST_CASE("noun phrase parse of blue sky") {
  const DepTree tree = ParseSentence("blue sky", Lex(), true);
  REQUIRE(tree.edges.size() == 1);
  CHECK(tree.edges[0] == E(1, 0, DepLabel::kAmod));
  CHECK(tree.tokens[tree.root].lemma == "sky");
  CHECK(ValidateTree(tree).empty());

  const DepTree one = ParseSentence("sky", Lex(), true);
  CHECK(one.edges.empty());
  CHECK(one.root == 0);
  CHECK(ValidateTree(one).empty());
}

TEST_CASE("rocket sentence tree") {
  const DepTree tree = ParseSentence("A rocket ship accelerates in space.", Lex());
  const std::vector<DepEdge> expect{
      E(2, 0, DepLabel::kDet),   E(2, 1, DepLabel::kCompound), E(3, 2, DepLabel::kNsubj),
      E(3, 4, DepLabel::kPrep),  E(4, 5, DepLabel::kPobj)};
  CHECK(tree.edges == expect);
  CHECK(tree.root == 3);
  CHECK(ValidateTree(tree).empty());
}

TEST_CASE("passive clause and conjunction") {
  const DepTree tree =
      ParseSentence("A car crashes into a wall and the driver is ejected.", Lex());
  // 0 a 1 car 2 crashes 3 into 4 a 5 wall 6 and 7 the 8 driver 9 is 10 ejected
  const std::vector<DepEdge> expect{
      E(1, 0, DepLabel::kDet),      E(2, 1, DepLabel::kNsubj), E(2, 3, DepLabel::kPrep),
      E(5, 4, DepLabel::kDet),      E(3, 5, DepLabel::kPobj),  E(10, 6, DepLabel::kConj),
      E(8, 7, DepLabel::kDet),      E(10, 8, DepLabel::kNsubjpass), E(10, 9, DepLabel::kAux),
      E(2, 10, DepLabel::kConj)};
  CHECK(tree.edges == expect);
  CHECK(tree.root == 2);
}

TEST_CASE("transitive clause gets a direct object") {
  const DepTree tree = ParseSentence("The moon orbits the earth.", Lex());
  const std::vector<DepEdge> expect{E(1, 0, DepLabel::kDet), E(2, 1, DepLabel::kNsubj),
                                    E(4, 3, DepLabel::kDet), E(2, 4, DepLabel::kDobj)};
  CHECK(tree.edges == expect);
}

TEST_CASE("phrasal particle sits in the prep slot") {
  const DepTree tree = ParseSentence("Electricity turns on a light bulb.", Lex());
  // 0 electricity 1 turns 2 on 3 a 4 light 5 bulb
  const std::vector<DepEdge> expect{E(1, 0, DepLabel::kNsubj), E(1, 2, DepLabel::kPrep),
                                    E(5, 3, DepLabel::kDet), E(5, 4, DepLabel::kCompound),
                                    E(2, 5, DepLabel::kPobj)};
  CHECK(tree.edges == expect);
}

TEST_CASE("parse errors") {
  CHECK(KindOf([] { ParseSentence("the blue sky", Lex()); }) == ErrorKind::kNoPredicate);
  CHECK(KindOf([] { ParseSentence("A zorgle quuxes.", Lex()); }) == ErrorKind::kUnknownLexeme);
  CHECK(KindOf([] { ParseSentence("in on at", Lex()); }) != std::nullopt);
}

TEST_CASE("validate_tree reports each broken invariant") {
  DepTree good = ParseSentence("A rocket ship accelerates in space.", Lex());
  CHECK(ValidateTree(good).empty());

  DepTree self = good;
  self.edges[0] = E(0, 0, DepLabel::kDet);
  CHECK(support::HasRule(ValidateTree(self), "asymmetry"));

  DepTree two_roots = good;
  two_roots.edges.erase(two_roots.edges.begin());
  const auto v = ValidateTree(two_roots);
  CHECK(support::HasRule(v, "single root"));
  CHECK(support::HasRule(v, "edge count"));

  DepTree cycle = good;
  cycle.edges[2] = E(2, 3, DepLabel::kNsubj);  // ship -> accelerates while accelerates -> in
  cycle.edges.push_back(E(3, 2, DepLabel::kNsubj));
  CHECK_FALSE(ValidateTree(cycle).empty());

  DepTree range = good;
  range.edges[0].head = 99;
  CHECK(support::HasRule(ValidateTree(range), "index range"));
}

TEST_CASE("every caption parses into a valid tree, deterministically") {
  for (const auto& c : support::kCaptions) {
    CAPTURE(c.sentence);
    const DepTree t = ParseSentence(c.sentence, Lex());
    CHECK(ValidateTree(t).empty());
    CHECK(t.edges.size() + 1 == t.tokens.size());
    for (const DepEdge& e : t.edges) CHECK(e.head != e.dependent);
    CHECK(CanonicalDump(TreeToJson(t)) == CanonicalDump(TreeToJson(ParseSentence(c.sentence, Lex()))));
  }
}

TEST_CASE("parsing is thread safe") {
  const std::string expect =
      CanonicalDump(TreeToJson(ParseSentence(support::kCaptions[0].sentence, Lex())));
  std::vector<std::string> got(8);
  {
    std::vector<std::jthread> pool;
    for (int i = 0; i < 8; ++i)
      pool.emplace_back([&, i] {
        got[i] = CanonicalDump(TreeToJson(ParseSentence(support::kCaptions[0].sentence, Lex())));
      });
  }
  for (const auto& g : got) CHECK(g == expect);
}

TEST_CASE("tree JSON round trip") {
  const DepTree t = ParseSentence(support::kCaptions[4].sentence, Lex());
  const DepTree back = TreeFromJson(TreeToJson(t));
  CHECK(back.edges == t.edges);
  CHECK(back.root == t.root);
  CHECK(TreeToText(back) == TreeToText(t));
}

TEST_CASE("lexicon loading") {
  const Lexicon lex = Lexicon::FromJson(
      R"([{"lemma": "walk", "pos": ["Verb"], "category": "Action", "irregular_forms": {"walked": "walk"}},
          {"lemma": "dog", "pos": ["Noun"], "category": "PhysicalEntity", "irregular_forms": {}}])");
  CHECK(lex.size() == 2);
  CHECK(lex.Lemmatize("walked")->lemma == "walk");
  CHECK(lex.Lemmatize("dogs")->lemma == "dog");
  CHECK(KindOf([] { Lexicon::FromJson("[{"); }) == ErrorKind::kLexiconSyntax);
  CHECK(KindOf([] {
          Lexicon::FromJson(R"([{"lemma": "x", "pos": [], "category": "Action", "irregular_forms": {}}])");
        }) == ErrorKind::kLexiconSyntax);
  CHECK(KindOf([] {
          Lexicon::FromJson(R"([{"lemma": "x", "pos": ["Noun"], "category": "Mood", "irregular_forms": {}}])");
        }) == ErrorKind::kLexiconSyntax);
  CHECK(KindOf([] {
          Lexicon::FromJson(R"([{"lemma": "x", "pos": ["Noun"], "category": "Action", "irregular_forms": {}},
                                {"lemma": "x", "pos": ["Noun"], "category": "Action", "irregular_forms": {}}])");
        }) == ErrorKind::kLexiconSyntax);
  for (const LexiconEntry& e : Lexicon::Default().entries()) CHECK_FALSE(e.pos.empty());
}
