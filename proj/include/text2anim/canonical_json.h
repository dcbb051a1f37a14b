#ifndef TEXT2ANIM_CANONICAL_JSON_H_
#define TEXT2ANIM_CANONICAL_JSON_H_

#include <string>

#include "json.hpp"

namespace text2anim {

// Deterministic JSON text: keys sorted, two-space indentation, floating
// point numbers printed with six significant digits ("%.6g"). Integers are
// printed exactly. Identical values always produce identical bytes.
std::string CanonicalDump(const nlohmann::json& value);

// Rounds `v` to six significant digits, matching the printed form.
double RoundSignificant(double v);

}  // namespace text2anim

#endif  // TEXT2ANIM_CANONICAL_JSON_H_
