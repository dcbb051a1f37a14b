#ifndef TEXT2ANIM_LEXICON_H_
#define TEXT2ANIM_LEXICON_H_

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace text2anim {

enum class Pos { kDet, kAdj, kNoun, kVerb, kAux, kPrep, kConj };

std::string_view PosName(Pos pos);
std::optional<Pos> PosFromName(std::string_view name);

enum class Category { kPhysicalEntity, kLocation, kAction, kProperty };

std::string_view CategoryName(Category category);
std::optional<Category> CategoryFromName(std::string_view name);

struct LexiconEntry {
  std::string lemma;
  // Ordered by preference; the first entry is the fallback tag.
  std::vector<Pos> pos;
  // Closed-class words (determiners, prepositions, auxiliaries,
  // conjunctions) carry no semantic category.
  std::optional<Category> category;
  std::map<std::string, std::string> irregular_forms;

  bool Allows(Pos p) const;
};

// Closed-vocabulary dictionary. Immutable after construction.
class Lexicon {
 public:
  Lexicon() = default;
  explicit Lexicon(std::vector<LexiconEntry> entries);

  // Parses the JSON lexicon format: an array of
  // {"lemma", "pos": [...], "category", "irregular_forms": {surface: lemma}}.
  static Lexicon FromJson(std::string_view text);
  static Lexicon FromFile(const std::string& path);

  // The vocabulary shipped with the library (data/lexicon.json).
  static const Lexicon& Default();

  const LexiconEntry* Find(std::string_view lemma) const;

  // Resolves an inflected surface form: irregular table first, then the
  // surface itself, then the -ies, -es and -s suffix rules. Returns nullptr
  // when nothing matches.
  const LexiconEntry* Lemmatize(std::string_view surface) const;

  size_t size() const { return entries_.size(); }
  const std::vector<LexiconEntry>& entries() const { return entries_; }

 private:
  std::vector<LexiconEntry> entries_;
  std::map<std::string, size_t, std::less<>> by_lemma_;
  std::map<std::string, size_t, std::less<>> irregular_;
};

}  // namespace text2anim

#endif  // TEXT2ANIM_LEXICON_H_
