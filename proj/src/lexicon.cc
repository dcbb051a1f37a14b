#include "text2anim/lexicon.h"

#include <fstream>
#include <sstream>

#include "json.hpp"

#include "text2anim/error.h"

namespace text2anim {

// Generated from data/lexicon.json at configure time.
extern const char kDefaultLexiconJson[];

namespace {

constexpr std::pair<Pos, std::string_view> kPosNames[] = {
    {Pos::kDet, "Det"},   {Pos::kAdj, "Adj"},   {Pos::kNoun, "Noun"},
    {Pos::kVerb, "Verb"}, {Pos::kAux, "Aux"},   {Pos::kPrep, "Prep"},
    {Pos::kConj, "Conj"},
};

constexpr std::pair<Category, std::string_view> kCategoryNames[] = {
    {Category::kPhysicalEntity, "PhysicalEntity"},
    {Category::kLocation, "Location"},
    {Category::kAction, "Action"},
    {Category::kProperty, "Property"},
};

[[noreturn]] void Fail(const std::string& msg) {
  throw Error(ErrorKind::kLexiconSyntax, msg);
}

}  // namespace

std::string_view PosName(Pos pos) {
  for (const auto& [p, name] : kPosNames)
    if (p == pos) return name;
  return "?";
}

std::optional<Pos> PosFromName(std::string_view name) {
  for (const auto& [p, n] : kPosNames)
    if (n == name) return p;
  return std::nullopt;
}

std::string_view CategoryName(Category category) {
  for (const auto& [c, name] : kCategoryNames)
    if (c == category) return name;
  return "?";
}

std::optional<Category> CategoryFromName(std::string_view name) {
  for (const auto& [c, n] : kCategoryNames)
    if (n == name) return c;
  return std::nullopt;
}

bool LexiconEntry::Allows(Pos p) const {
  for (Pos q : pos)
    if (q == p) return true;
  return false;
}

Lexicon::Lexicon(std::vector<LexiconEntry> entries)
    : entries_(std::move(entries)) {
  for (size_t i = 0; i < entries_.size(); ++i) {
    const LexiconEntry& e = entries_[i];
    if (e.lemma.empty()) Fail("entry " + std::to_string(i) + " has no lemma");
    if (e.pos.empty()) Fail("entry '" + e.lemma + "' has no part of speech");
    if (!by_lemma_.emplace(e.lemma, i).second)
      Fail("duplicate lemma '" + e.lemma + "'");
  }
  for (size_t i = 0; i < entries_.size(); ++i) {
    for (const auto& [surface, lemma] : entries_[i].irregular_forms) {
      if (lemma != entries_[i].lemma)
        Fail("irregular form '" + surface + "' of '" + entries_[i].lemma +
             "' points at '" + lemma + "'");
      if (!irregular_.emplace(surface, i).second)
        Fail("irregular form '" + surface + "' listed twice");
    }
  }
}

Lexicon Lexicon::FromJson(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    Fail(e.what());
  }
  if (!doc.is_array()) Fail("lexicon must be a JSON array");

  std::vector<LexiconEntry> entries;
  for (const auto& item : doc) {
    if (!item.is_object()) Fail("lexicon entries must be objects");
    LexiconEntry e;
    try {
      e.lemma = item.at("lemma").get<std::string>();
      for (const auto& p : item.at("pos")) {
        auto pos = PosFromName(p.get<std::string>());
        if (!pos) Fail("unknown part of speech for '" + e.lemma + "'");
        e.pos.push_back(*pos);
      }
      if (auto it = item.find("category"); it != item.end() && !it->is_null()) {
        auto cat = CategoryFromName(it->get<std::string>());
        if (!cat) Fail("unknown category for '" + e.lemma + "'");
        e.category = cat;
      }
      if (auto it = item.find("irregular_forms"); it != item.end())
        e.irregular_forms = it->get<std::map<std::string, std::string>>();
    } catch (const nlohmann::json::exception& ex) {
      Fail(ex.what());
    }
    entries.push_back(std::move(e));
  }
  return Lexicon(std::move(entries));
}

Lexicon Lexicon::FromFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::kMissingFile, "cannot read lexicon " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return FromJson(buf.str());
}

const Lexicon& Lexicon::Default() {
  static const Lexicon lexicon = FromJson(kDefaultLexiconJson);
  return lexicon;
}

const LexiconEntry* Lexicon::Find(std::string_view lemma) const {
  auto it = by_lemma_.find(lemma);
  return it == by_lemma_.end() ? nullptr : &entries_[it->second];
}

const LexiconEntry* Lexicon::Lemmatize(std::string_view surface) const {
  if (auto it = irregular_.find(surface); it != irregular_.end())
    return &entries_[it->second];
  if (const LexiconEntry* e = Find(surface)) return e;

  auto ends_with = [&](std::string_view suffix) {
    return surface.size() > suffix.size() &&
           surface.substr(surface.size() - suffix.size()) == suffix;
  };
  auto stem = [&](size_t strip) {
    return std::string(surface.substr(0, surface.size() - strip));
  };
  if (ends_with("ies")) {
    if (const LexiconEntry* e = Find(stem(3) + "y")) return e;
  }
  if (ends_with("es")) {
    if (const LexiconEntry* e = Find(stem(2))) return e;
  }
  if (ends_with("s")) {
    if (const LexiconEntry* e = Find(stem(1))) return e;
  }
  return nullptr;
}

}  // namespace text2anim
