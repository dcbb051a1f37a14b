#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cstring>
#include <optional>
#include <string>

#include "text2anim/canonical_json.h"
#include "text2anim/error.h"
#include "text2anim/pipeline.h"
#include "text2anim/render.h"

namespace py = pybind11;
using namespace text2anim;

namespace {

Lexicon LoadLexicon(const std::optional<std::string>& path) {
  return path ? Lexicon::FromFile(*path) : Lexicon::Default();
}

std::filesystem::path ManifestOr(const std::optional<std::string>& assets) {
  return assets ? std::filesystem::path(*assets) : DefaultManifestPath();
}

Animation Build(const std::string& sentence, int fps, int width, int height,
                const std::optional<std::string>& assets,
                const std::optional<std::string>& lexicon) {
  const Lexicon lex = LoadLexicon(lexicon);
  const AssetBase base = AssetBase::Load(ManifestOr(assets));
  return BuildAnimation(sentence, lex, base, {{width, height}, fps});
}

OutputFormat Format(const std::string& name) {
  const auto f = FormatFromName(name);
  if (!f) throw Error(ErrorKind::kUsage, "unknown format '" + name + "'");
  return *f;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Sentence to sprite animation compiler";

  static py::exception<Error> error_type(m, "Error", PyExc_RuntimeError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::object exc = py::reinterpret_borrow<py::object>(error_type.ptr())(e.what());
      exc.attr("kind") = std::string(ErrorKindName(e.kind()));
      exc.attr("exit_code") = e.exit_code();
      exc.attr("location") = e.location() ? py::cast(*e.location()) : py::none();
      PyErr_SetObject(error_type.ptr(), exc.ptr());
    }
  });

  m.def("parse",
        [](const std::string& sentence, bool noun_phrase, std::optional<std::string> lexicon) {
          return CanonicalDump(TreeToJson(ParseSentence(sentence, LoadLexicon(lexicon), noun_phrase)));
        },
        py::arg("sentence"), py::arg("noun_phrase") = false, py::arg("lexicon") = py::none());

  m.def("plan",
        [](const std::string& sentence, std::optional<std::string> lexicon) {
          return CanonicalDump(SceneToJson(PlanSentence(sentence, LoadLexicon(lexicon))));
        },
        py::arg("sentence"), py::arg("lexicon") = py::none());

  m.def("plan_ir",
        [](const std::string& sentence, int fps, int width, int height,
           std::optional<std::string> assets, std::optional<std::string> lexicon) {
          return CanonicalDump(TimelineToJson(Build(sentence, fps, width, height, assets, lexicon).ir));
        },
        py::arg("sentence"), py::arg("fps") = 30, py::arg("width") = 640, py::arg("height") = 480,
        py::arg("assets") = py::none(), py::arg("lexicon") = py::none());

  m.def("render",
        [](const std::string& sentence, const std::string& output, const std::string& format,
           int fps, int width, int height, int workers, bool dither,
           std::optional<std::string> assets, std::optional<std::string> lexicon) {
          const OutputFormat f = Format(format);
          if (workers < 1) throw Error(ErrorKind::kUsage, "workers must be positive");
          py::gil_scoped_release release;
          const Animation a = Build(sentence, fps, width, height, assets, lexicon);
          const auto frames = RenderFrames(a.ir, a.resolved, workers);
          EncoderConfig cfg;
          cfg.format = f;
          cfg.delay_ms = DelayForFps(fps, f);
          cfg.dither = dither;
          const auto files = Encode(frames, cfg);
          WriteOutput(output, f, files);
          py::gil_scoped_acquire acquire;
          py::dict out;
          out["frames"] = frames.size();
          out["duration_ticks"] = a.ir.duration;
          out["duration_ms"] = static_cast<long long>(frames.size()) * cfg.delay_ms;
          out["hash"] = ContentHash(files);
          return out;
        },
        py::arg("sentence"), py::arg("output"), py::arg("format") = "gif", py::arg("fps") = 30,
        py::arg("width") = 640, py::arg("height") = 480, py::arg("workers") = 1,
        py::arg("dither") = false, py::arg("assets") = py::none(), py::arg("lexicon") = py::none());

  m.def("render_frames",
        [](const std::string& sentence, int fps, int width, int height, int workers,
           std::optional<std::string> assets) {
          if (workers < 1) throw Error(ErrorKind::kUsage, "workers must be positive");
          std::vector<Frame> frames;
          {
            py::gil_scoped_release release;
            const Animation a = Build(sentence, fps, width, height, assets, std::nullopt);
            frames = RenderFrames(a.ir, a.resolved, workers);
          }
          const py::ssize_t n = frames.size();
          py::array_t<std::uint8_t> out({n, py::ssize_t(height), py::ssize_t(width), py::ssize_t(4)});
          std::uint8_t* dst = out.mutable_data();
          for (const Frame& f : frames) {
            std::memcpy(dst, f.pixels().data(), f.pixels().size());
            dst += f.pixels().size();
          }
          return out;
        },
        py::arg("sentence"), py::arg("fps") = 30, py::arg("width") = 640, py::arg("height") = 480,
        py::arg("workers") = 1, py::arg("assets") = py::none());

  m.def("validate_assets",
        [](std::optional<std::string> manifest) {
          const ManifestReport r = ValidateManifest(ManifestOr(manifest));
          py::dict out;
          out["errors"] = r.errors;
          out["missing_files"] = r.missing_files;
          out["bad_anchors"] = r.bad_anchors;
          out["duplicates"] = r.duplicates;
          out["decode_errors"] = r.decode_errors;
          out["clean"] = r.clean();
          return out;
        },
        py::arg("manifest") = py::none());

  m.def("default_manifest", [] { return DefaultManifestPath().string(); });
}
