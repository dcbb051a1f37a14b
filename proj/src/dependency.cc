#include "text2anim/dependency.h"

#include <algorithm>
#include <cctype>
#include <functional>
#include <sstream>

#include "text2anim/error.h"

namespace text2anim {

namespace {

constexpr std::pair<DepLabel, std::string_view> kLabelNames[] = {
    {DepLabel::kDet, "det"},         {DepLabel::kAmod, "amod"},
    {DepLabel::kCompound, "compound"}, {DepLabel::kNsubj, "nsubj"},
    {DepLabel::kNsubjpass, "nsubjpass"}, {DepLabel::kDobj, "dobj"},
    {DepLabel::kAux, "aux"},         {DepLabel::kPrep, "prep"},
    {DepLabel::kPobj, "pobj"},       {DepLabel::kConj, "conj"},
};

bool IsEdgePunct(char c) {
  return std::ispunct(static_cast<unsigned char>(c)) && c != '-';
}

[[noreturn]] void Unsupported(int index, const std::string& why) {
  throw Error(ErrorKind::kUnsupportedConstruction,
              "token " + std::to_string(index) + ": " + why, index);
}

Pos PosOf(const Token& t) {
  if (!t.pos) Unsupported(t.index, "token is not tagged");
  return *t.pos;
}

// A chunk of the tagged sentence as seen by the attachment rules.
struct Unit {
  enum Kind { kNounPhrase, kVerbGroup, kPreposition } kind;
  int first = 0;  // first token
  int last = 0;   // last token (inclusive)
  int head = 0;   // NP head noun, main verb, or the preposition itself
  int aux = -1;   // auxiliary of a verb group
};

class EdgeSink {
 public:
  explicit EdgeSink(size_t n) : head_of_(n, -1) {}

  void Add(int head, int dependent, DepLabel label) {
    head_of_[dependent] = head;
    edges_.push_back({head, dependent, label});
  }

  bool Attached(int i) const { return head_of_[i] >= 0; }

  std::vector<DepEdge> Take() {
    std::sort(edges_.begin(), edges_.end(),
              [](const DepEdge& a, const DepEdge& b) {
                return a.dependent < b.dependent;
              });
    return std::move(edges_);
  }

 private:
  std::vector<int> head_of_;
  std::vector<DepEdge> edges_;
};

// Det? Adj* Noun+ starting at `i`. Emits det/amod/compound edges (G1-G3)
// and returns the unit, or nullopt when no noun phrase starts here.
std::optional<Unit> ChunkNounPhrase(const std::vector<Token>& tokens, int i,
                                    int end, EdgeSink& sink) {
  int j = i;
  int det = -1;
  std::vector<int> adjs;
  std::vector<int> nouns;
  if (j < end && PosOf(tokens[j]) == Pos::kDet) det = j++;
  while (j < end && PosOf(tokens[j]) == Pos::kAdj) adjs.push_back(j++);
  while (j < end && PosOf(tokens[j]) == Pos::kNoun) nouns.push_back(j++);
  if (nouns.empty()) {
    if (det >= 0 || !adjs.empty())
      Unsupported(j < end ? j : j - 1, "determiner or adjective without noun");
    return std::nullopt;
  }
  const int head = nouns.back();
  if (det >= 0) sink.Add(head, det, DepLabel::kDet);
  for (int a : adjs) sink.Add(head, a, DepLabel::kAmod);
  for (size_t k = 0; k + 1 < nouns.size(); ++k)
    sink.Add(head, nouns[k], DepLabel::kCompound);
  return Unit{Unit::kNounPhrase, i, j - 1, head};
}

std::vector<Unit> Chunk(const std::vector<Token>& tokens, int begin, int end,
                        EdgeSink& sink) {
  std::vector<Unit> units;
  int i = begin;
  while (i < end) {
    Pos pos = PosOf(tokens[i]);
    if (pos == Pos::kDet || pos == Pos::kAdj || pos == Pos::kNoun) {
      Unit np = *ChunkNounPhrase(tokens, i, end, sink);
      units.push_back(np);
      i = np.last + 1;
    } else if (pos == Pos::kAux) {
      if (i + 1 >= end || PosOf(tokens[i + 1]) != Pos::kVerb)
        Unsupported(i, "auxiliary without a participle");
      sink.Add(i + 1, i, DepLabel::kAux);  // G7
      units.push_back({Unit::kVerbGroup, i, i + 1, i + 1, i});
      i += 2;
    } else if (pos == Pos::kVerb) {
      units.push_back({Unit::kVerbGroup, i, i, i});
      ++i;
    } else if (pos == Pos::kPrep) {
      units.push_back({Unit::kPreposition, i, i, i});
      ++i;
    } else {
      Unsupported(i, "coordination inside a clause");
    }
  }
  return units;
}

// Applies G4-G7 to one clause and returns its main verb.
int ParseClause(const std::vector<Token>& tokens, int begin, int end,
                EdgeSink& sink) {
  std::vector<Unit> units = Chunk(tokens, begin, end, sink);

  int verb_unit = -1;
  for (size_t u = 0; u < units.size(); ++u) {
    if (units[u].kind != Unit::kVerbGroup) continue;
    if (verb_unit >= 0) Unsupported(units[u].head, "second verb in clause");
    verb_unit = static_cast<int>(u);
  }
  if (verb_unit < 0) Unsupported(begin, "clause has no verb");
  const Unit& vg = units[verb_unit];
  const int verb = vg.head;
  const bool passive = vg.aux >= 0;

  // G4: pre-verbal noun phrase is the subject.
  for (int u = 0; u < verb_unit; ++u) {
    if (units[u].kind != Unit::kNounPhrase || u != verb_unit - 1)
      Unsupported(units[u].first, "unexpected material before the verb");
    sink.Add(verb, units[u].head,
             passive ? DepLabel::kNsubjpass : DepLabel::kNsubj);
  }

  // G5/G6: post-verbal objects and prepositional phrases.
  bool have_object = false;
  for (size_t u = verb_unit + 1; u < units.size(); ++u) {
    const Unit& unit = units[u];
    if (unit.kind == Unit::kPreposition) {
      sink.Add(verb, unit.head, DepLabel::kPrep);
      if (u + 1 < units.size() && units[u + 1].kind == Unit::kNounPhrase) {
        sink.Add(unit.head, units[u + 1].head, DepLabel::kPobj);
        ++u;
      }
    } else if (unit.kind == Unit::kNounPhrase) {
      if (have_object) Unsupported(unit.first, "second direct object");
      sink.Add(verb, unit.head, DepLabel::kDobj);
      have_object = true;
    }
  }
  return verb;
}

void CheckTagged(const std::vector<Token>& tagged) {
  if (tagged.empty()) throw Error(ErrorKind::kEmptyInput, "no tokens");
  for (size_t i = 0; i < tagged.size(); ++i) {
    if (tagged[i].index != static_cast<int>(i))
      Unsupported(static_cast<int>(i), "token indices are not contiguous");
    PosOf(tagged[i]);
  }
}

DepTree Finish(const std::vector<Token>& tagged, EdgeSink& sink, int root) {
  for (const Token& t : tagged)
    if (t.index != root && !sink.Attached(t.index))
      Unsupported(t.index, "token '" + t.surface + "' left unattached");
  DepTree tree;
  tree.tokens = tagged;
  tree.edges = sink.Take();
  tree.root = root;
  return tree;
}

}  // namespace

std::string_view LabelName(DepLabel label) {
  for (const auto& [l, name] : kLabelNames)
    if (l == label) return name;
  return "?";
}

std::optional<DepLabel> LabelFromName(std::string_view name) {
  for (const auto& [l, n] : kLabelNames)
    if (n == name) return l;
  return std::nullopt;
}

const DepEdge* DepTree::HeadEdge(int index) const {
  for (const DepEdge& e : edges)
    if (e.dependent == index) return &e;
  return nullptr;
}

std::vector<const DepEdge*> DepTree::Dependents(int head) const {
  std::vector<const DepEdge*> out;
  for (const DepEdge& e : edges)
    if (e.head == head) out.push_back(&e);
  return out;
}

std::vector<Token> Tokenize(std::string_view text) {
  std::vector<Token> tokens;
  std::istringstream in{std::string(text)};
  std::string word;
  while (in >> word) {
    size_t b = 0, e = word.size();
    while (b < e && IsEdgePunct(word[b])) ++b;
    while (e > b && IsEdgePunct(word[e - 1])) --e;
    if (b == e) continue;
    std::string surface = word.substr(b, e - b);
    for (char& c : surface)
      c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    Token t;
    t.index = static_cast<int>(tokens.size());
    t.surface = std::move(surface);
    tokens.push_back(std::move(t));
  }
  if (tokens.empty()) throw Error(ErrorKind::kEmptyInput, "no words in input");
  return tokens;
}

std::vector<Token> Tag(std::vector<Token> tokens, const Lexicon& lexicon) {
  bool clause_has_verb = false;
  std::optional<Pos> prev;
  for (Token& t : tokens) {
    const LexiconEntry* entry = lexicon.Lemmatize(t.surface);
    if (!entry)
      throw Error(ErrorKind::kUnknownLexeme,
                  "token " + std::to_string(t.index) + ": '" + t.surface +
                      "' is not in the lexicon",
                  t.index);
    t.lemma = entry->lemma;

    std::vector<Pos> preference;
    if (prev == Pos::kDet || prev == Pos::kAdj) {
      preference = {Pos::kNoun, Pos::kAdj};
    } else if (prev == Pos::kAux) {
      preference = {Pos::kVerb};
    } else if (prev == Pos::kNoun && !clause_has_verb) {
      preference = {Pos::kVerb};
    }
    t.pos = entry->pos.front();
    for (Pos p : preference) {
      if (entry->Allows(p)) {
        t.pos = p;
        break;
      }
    }

    if (t.pos == Pos::kVerb) clause_has_verb = true;
    if (t.pos == Pos::kConj) clause_has_verb = false;
    prev = t.pos;
  }
  return tokens;
}

DepTree Parse(const std::vector<Token>& tagged) {
  CheckTagged(tagged);
  const int n = static_cast<int>(tagged.size());
  if (std::none_of(tagged.begin(), tagged.end(),
                   [](const Token& t) { return t.pos == Pos::kVerb; }))
    throw Error(ErrorKind::kNoPredicate, "sentence has no verb");

  EdgeSink sink(tagged.size());
  std::vector<int> conjunctions;
  for (int i = 0; i < n; ++i)
    if (tagged[i].pos == Pos::kConj) conjunctions.push_back(i);

  int begin = 0;
  int root = -1;
  std::vector<int> bounds = conjunctions;
  bounds.push_back(n);
  for (size_t c = 0; c < bounds.size(); ++c) {
    const int end = bounds[c];
    if (end == begin) Unsupported(std::min(begin, n - 1), "empty clause");
    int verb = ParseClause(tagged, begin, end, sink);
    if (root < 0) {
      root = verb;
    } else {
      // G8: later clauses hang off the main verb; the coordinator attaches
      // to the verb it introduces.
      sink.Add(root, verb, DepLabel::kConj);
      sink.Add(verb, bounds[c - 1], DepLabel::kConj);
    }
    begin = end + 1;
  }
  return Finish(tagged, sink, root);
}

DepTree ParseNounPhrase(const std::vector<Token>& tagged) {
  CheckTagged(tagged);
  const int n = static_cast<int>(tagged.size());
  EdgeSink sink(tagged.size());
  auto np = ChunkNounPhrase(tagged, 0, n, sink);
  if (!np) Unsupported(0, "input does not start with a noun phrase");
  if (np->last != n - 1) Unsupported(np->last + 1, "input is not a single noun phrase");
  return Finish(tagged, sink, np->head);
}

std::vector<TreeViolation> ValidateTree(const DepTree& tree) {
  std::vector<TreeViolation> out;
  const int n = static_cast<int>(tree.tokens.size());
  auto add = [&](std::string rule, std::string detail) {
    out.push_back({std::move(rule), std::move(detail)});
  };

  for (int i = 0; i < n; ++i) {
    const Token& t = tree.tokens[i];
    if (t.index != i) add("token order", "token " + std::to_string(i) + " has index " + std::to_string(t.index));
    if (t.surface.empty()) add("surface", "token " + std::to_string(i) + " has an empty surface");
    if (t.lemma.empty()) add("lemma", "token " + std::to_string(i) + " has an empty lemma");
  }

  std::vector<int> indegree(n, 0);
  std::vector<int> parent(n, -1);
  bool indices_ok = true;
  for (const DepEdge& e : tree.edges) {
    if (e.head < 0 || e.head >= n || e.dependent < 0 || e.dependent >= n) {
      add("index range", "edge " + std::to_string(e.head) + "->" + std::to_string(e.dependent));
      indices_ok = false;
      continue;
    }
    if (e.head == e.dependent)
      add("asymmetry", "token " + std::to_string(e.head) + " heads itself");
    ++indegree[e.dependent];
    parent[e.dependent] = e.head;
  }

  int roots = 0;
  for (int i = 0; i < n; ++i) {
    if (indegree[i] == 0) ++roots;
    if (indegree[i] > 1)
      add("in-degree", "token " + std::to_string(i) + " has " + std::to_string(indegree[i]) + " heads");
  }
  if (roots != 1) add("single root", std::to_string(roots) + " tokens have no head");
  if (tree.root < 0 || tree.root >= n) {
    add("root", "root index out of range");
  } else if (indegree[tree.root] != 0) {
    add("root", "declared root has an incoming edge");
  }
  if (static_cast<int>(tree.edges.size()) != n - 1)
    add("edge count", std::to_string(tree.edges.size()) + " edges for " + std::to_string(n) + " tokens");

  if (indices_ok) {
    // Every token must reach the root by following heads without looping.
    for (int i = 0; i < n; ++i) {
      int cur = i;
      int steps = 0;
      while (parent[cur] >= 0 && steps <= n) {
        cur = parent[cur];
        ++steps;
      }
      if (steps > n) {
        add("acyclic", "cycle through token " + std::to_string(i));
        break;
      }
      if (cur != tree.root && roots == 1)
        add("connected", "token " + std::to_string(i) + " does not reach the root");
    }
  }
  return out;
}

DepTree ParseSentence(std::string_view text, const Lexicon& lexicon,
                      bool noun_phrase) {
  std::vector<Token> tagged = Tag(Tokenize(text), lexicon);
  return noun_phrase ? ParseNounPhrase(tagged) : Parse(tagged);
}

std::string TreeToText(const DepTree& tree) {
  std::ostringstream out;
  std::function<void(int, int, std::optional<DepLabel>)> walk =
      [&](int node, int depth, std::optional<DepLabel> label) {
        const Token& t = tree.tokens[node];
        out << std::string(depth * 2, ' ') << t.surface << " ("
            << t.lemma << "/" << (t.pos ? PosName(*t.pos) : "?") << ") ["
            << (label ? LabelName(*label) : "root") << "]\n";
        for (const DepEdge* e : tree.Dependents(node))
          walk(e->dependent, depth + 1, e->label);
      };
  if (!tree.tokens.empty()) walk(tree.root, 0, std::nullopt);
  return out.str();
}

}  // namespace text2anim

namespace text2anim {

nlohmann::json TreeToJson(const DepTree& tree) {
  nlohmann::json tokens = nlohmann::json::array();
  for (const Token& t : tree.tokens) {
    tokens.push_back({{"index", t.index},
                      {"surface", t.surface},
                      {"lemma", t.lemma},
                      {"pos", t.pos ? nlohmann::json(std::string(PosName(*t.pos)))
                                    : nlohmann::json(nullptr)}});
  }
  nlohmann::json edges = nlohmann::json::array();
  for (const DepEdge& e : tree.edges) {
    edges.push_back({{"head", e.head},
                     {"dependent", e.dependent},
                     {"label", std::string(LabelName(e.label))}});
  }
  return {{"tokens", tokens}, {"edges", edges}, {"root", tree.root}};
}

DepTree TreeFromJson(const nlohmann::json& doc) {
  DepTree tree;
  try {
    for (const auto& t : doc.at("tokens")) {
      Token tok;
      tok.index = t.at("index").get<int>();
      tok.surface = t.at("surface").get<std::string>();
      tok.lemma = t.value("lemma", std::string());
      if (t.contains("pos") && !t["pos"].is_null())
        tok.pos = PosFromName(t["pos"].get<std::string>());
      tree.tokens.push_back(std::move(tok));
    }
    for (const auto& e : doc.at("edges")) {
      auto label = LabelFromName(e.at("label").get<std::string>());
      if (!label)
        throw Error(ErrorKind::kUnsupportedConstruction, "unknown label in tree JSON");
      tree.edges.push_back({e.at("head").get<int>(), e.at("dependent").get<int>(), *label});
    }
    tree.root = doc.at("root").get<int>();
  } catch (const nlohmann::json::exception& ex) {
    throw Error(ErrorKind::kUnsupportedConstruction, std::string("bad tree JSON: ") + ex.what());
  }
  return tree;
}

}  // namespace text2anim
