#ifndef TEXT2ANIM_ERROR_H_
#define TEXT2ANIM_ERROR_H_

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace text2anim {

// Every failure the pipeline can report. Each kind belongs to exactly one
// stage, and each stage maps to one process exit code (see ExitCodeFor).
enum class ErrorKind {
  // usage (exit 1)
  kUsage,
  kEmptyInput,
  // language front end (exit 2)
  kUnknownLexeme,
  kNoPredicate,
  kUnsupportedConstruction,
  kNotAnAction,
  kMissingRole,
  kLexiconSyntax,
  // assets (exit 3)
  kManifestSyntax,
  kMissingFile,
  kNoAsset,
  kDecodeError,
  // timeline / rendering (exit 4)
  kMissingParam,
  kTickOutOfRange,
  kNeverCollides,
  kEncodeError,
  kIoError,
};

std::string_view ErrorKindName(ErrorKind kind);

// Process exit code for a kind: 1 usage, 2 parse, 3 assets, 4 render.
int ExitCodeFor(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message,
        std::optional<std::int64_t> location = std::nullopt);

  ErrorKind kind() const { return kind_; }

  // Token index for parse errors, byte offset for decode errors.
  std::optional<std::int64_t> location() const { return location_; }

  int exit_code() const { return ExitCodeFor(kind_); }

 private:
  ErrorKind kind_;
  std::optional<std::int64_t> location_;
};

}  // namespace text2anim

#endif  // TEXT2ANIM_ERROR_H_
