#include "text2anim/error.h"

namespace text2anim {

std::string_view ErrorKindName(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kUsage: return "Usage";
    case ErrorKind::kEmptyInput: return "EmptyInput";
    case ErrorKind::kUnknownLexeme: return "UnknownLexeme";
    case ErrorKind::kNoPredicate: return "NoPredicate";
    case ErrorKind::kUnsupportedConstruction: return "UnsupportedConstruction";
    case ErrorKind::kNotAnAction: return "NotAnAction";
    case ErrorKind::kMissingRole: return "MissingRole";
    case ErrorKind::kLexiconSyntax: return "LexiconSyntax";
    case ErrorKind::kManifestSyntax: return "ManifestSyntax";
    case ErrorKind::kMissingFile: return "MissingFile";
    case ErrorKind::kNoAsset: return "NoAsset";
    case ErrorKind::kDecodeError: return "DecodeError";
    case ErrorKind::kMissingParam: return "MissingParam";
    case ErrorKind::kTickOutOfRange: return "TickOutOfRange";
    case ErrorKind::kNeverCollides: return "NeverCollides";
    case ErrorKind::kEncodeError: return "EncodeError";
    case ErrorKind::kIoError: return "IoError";
  }
  return "Unknown";
}

int ExitCodeFor(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kUsage:
    case ErrorKind::kEmptyInput:
      return 1;
    case ErrorKind::kUnknownLexeme:
    case ErrorKind::kNoPredicate:
    case ErrorKind::kUnsupportedConstruction:
    case ErrorKind::kNotAnAction:
    case ErrorKind::kMissingRole:
    case ErrorKind::kLexiconSyntax:
      return 2;
    case ErrorKind::kManifestSyntax:
    case ErrorKind::kMissingFile:
    case ErrorKind::kNoAsset:
    case ErrorKind::kDecodeError:
      return 3;
    case ErrorKind::kMissingParam:
    case ErrorKind::kTickOutOfRange:
    case ErrorKind::kNeverCollides:
    case ErrorKind::kEncodeError:
    case ErrorKind::kIoError:
      return 4;
  }
  return 1;
}

Error::Error(ErrorKind kind, const std::string& message,
             std::optional<std::int64_t> location)
    : std::runtime_error(std::string(ErrorKindName(kind)) + ": " + message),
      kind_(kind),
      location_(location) {}

}  // namespace text2anim
