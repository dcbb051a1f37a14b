#ifndef TEXT2ANIM_DEPENDENCY_H_
#define TEXT2ANIM_DEPENDENCY_H_

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "text2anim/lexicon.h"

namespace text2anim {

struct Token {
  int index = 0;
  std::string surface;
  std::string lemma;          // empty until tagged
  std::optional<Pos> pos;     // unset until tagged
};

enum class DepLabel {
  kDet,
  kAmod,
  kCompound,
  kNsubj,
  kNsubjpass,
  kDobj,
  kAux,
  kPrep,
  kPobj,
  kConj,
};

std::string_view LabelName(DepLabel label);
std::optional<DepLabel> LabelFromName(std::string_view name);

// Head -> dependent relation between two words of one sentence.
struct DepEdge {
  int head = 0;
  int dependent = 0;
  DepLabel label = DepLabel::kDet;

  friend bool operator==(const DepEdge&, const DepEdge&) = default;
};

struct DepTree {
  std::vector<Token> tokens;
  std::vector<DepEdge> edges;  // sorted by dependent index
  int root = 0;

  // Incoming edge of `index`, or nullptr for the root.
  const DepEdge* HeadEdge(int index) const;
  std::vector<const DepEdge*> Dependents(int head) const;
};

struct TreeViolation {
  std::string rule;    // "asymmetry", "single root", "in-degree", ...
  std::string detail;
};

// Splits a sentence on whitespace, strips surrounding punctuation and
// lowercases. Throws kEmptyInput when no word remains.
std::vector<Token> Tokenize(std::string_view text);

// Fills lemma and part of speech. A lemma admitting several tags is
// disambiguated by position: after a determiner or adjective prefer Noun,
// after an auxiliary prefer Verb, after a noun in a clause with no verb yet
// prefer Verb, otherwise the lexicon's first tag. Throws kUnknownLexeme.
std::vector<Token> Tag(std::vector<Token> tokens, const Lexicon& lexicon);

// Deterministic rule-based parse of a full clause-level sentence. The root
// is the main verb of the first clause.
DepTree Parse(const std::vector<Token>& tagged);

// Parses a lone noun phrase ("blue sky"); the root is the phrase head.
DepTree ParseNounPhrase(const std::vector<Token>& tagged);

// Empty when `tree` satisfies every structural invariant.
std::vector<TreeViolation> ValidateTree(const DepTree& tree);

// Tokenize + Tag + Parse (or ParseNounPhrase when `noun_phrase`).
DepTree ParseSentence(std::string_view text, const Lexicon& lexicon,
                      bool noun_phrase = false);

// {"edges": [{"dependent", "head", "label"}], "root", "tokens": [...]}
nlohmann::json TreeToJson(const DepTree& tree);
DepTree TreeFromJson(const nlohmann::json& doc);

// Indented text rendering, one token per line under its head.
std::string TreeToText(const DepTree& tree);

}  // namespace text2anim

#endif  // TEXT2ANIM_DEPENDENCY_H_
