#include "text2anim/cli.h"

#include <algorithm>
#include <cstdlib>
#include <optional>
#include <regex>

#include "CLI11.hpp"
#include "text2anim/canonical_json.h"
#include "text2anim/error.h"
#include "text2anim/pipeline.h"
#include "text2anim/render.h"

namespace text2anim {

namespace {

struct Options {
  std::string sentence;
  std::string assets;
  std::string lexicon;
  std::string output;
  std::string format = "gif";
  std::string size = "640x480";
  std::string manifest;
  int fps = 30;
  int workers = 1;
  bool np = false;
  bool ir = false;
  bool dither = false;
};

Size ParseSize(const std::string& text) {
  static const std::regex re(R"((\d{1,5})[xX](\d{1,5}))");
  std::smatch m;
  if (!std::regex_match(text, m, re))
    throw Error(ErrorKind::kUsage, "--size expects WxH, got '" + text + "'");
  Size s{std::stoi(m[1]), std::stoi(m[2])};
  if (s.width < 16 || s.height < 16)
    throw Error(ErrorKind::kUsage, "canvas must be at least 16x16");
  return s;
}

TimelineOptions MakeTimelineOptions(const Options& o) {
  if (o.fps < 1 || o.fps > 60) throw Error(ErrorKind::kUsage, "--fps must be in [1, 60]");
  return {ParseSize(o.size), o.fps};
}

Lexicon LoadLexicon(const Options& o) {
  return o.lexicon.empty() ? Lexicon::Default() : Lexicon::FromFile(o.lexicon);
}

std::filesystem::path ManifestPath(const Options& o) {
  if (!o.assets.empty()) return o.assets;
  if (const char* env = std::getenv("TEXT2ANIM_ASSETS"); env && *env) return env;
  return DefaultManifestPath();
}

int CmdParse(const Options& o, std::ostream& out) {
  const DepTree tree = ParseSentence(o.sentence, LoadLexicon(o), o.np);
  out << CanonicalDump(TreeToJson(tree)) << "\n" << TreeToText(tree);
  return 0;
}

int CmdPlan(const Options& o, std::ostream& out) {
  const Lexicon lexicon = LoadLexicon(o);
  if (!o.ir) {
    out << CanonicalDump(SceneToJson(PlanSentence(o.sentence, lexicon)));
    return 0;
  }
  const TimelineOptions topts = MakeTimelineOptions(o);
  const AssetBase assets = AssetBase::Load(ManifestPath(o));
  const Animation a = BuildAnimation(o.sentence, lexicon, assets, topts);
  out << CanonicalDump(TimelineToJson(a.ir));
  return 0;
}

int CmdRender(const Options& o, std::ostream& out) {
  const std::optional<OutputFormat> format = FormatFromName(o.format);
  if (!format) throw Error(ErrorKind::kUsage, "unknown --format '" + o.format + "'");
  if (o.workers < 1) throw Error(ErrorKind::kUsage, "--workers must be positive");
  const TimelineOptions topts = MakeTimelineOptions(o);
  const Lexicon lexicon = LoadLexicon(o);
  const AssetBase assets = AssetBase::Load(ManifestPath(o));
  const Animation a = BuildAnimation(o.sentence, lexicon, assets, topts);

  const std::vector<Frame> frames = RenderFrames(a.ir, a.resolved, o.workers);
  EncoderConfig cfg;
  cfg.format = *format;
  cfg.delay_ms = DelayForFps(o.fps, *format);
  cfg.dither = o.dither;
  const auto files = Encode(frames, cfg);
  WriteOutput(o.output, *format, files);

  out << "frames " << frames.size() << "\n"
      << "duration_ticks " << a.ir.duration << "\n"
      << "duration_ms " << static_cast<long long>(frames.size()) * cfg.delay_ms << "\n"
      << "hash " << ContentHash(files) << "\n";
  return 0;
}

int CmdValidate(const Options& o, std::ostream& out) {
  const std::filesystem::path path = o.manifest.empty() ? ManifestPath(o) : std::filesystem::path(o.manifest);
  const ManifestReport report = ValidateManifest(path);
  out << report.ToText();
  return report.clean() ? 0 : ExitCodeFor(ErrorKind::kMissingFile);
}

}  // namespace

int RunCli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Text to animation compiler", "text2anim"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--assets", o.assets, "Asset manifest (default: $TEXT2ANIM_ASSETS, then the bundled pack)");
  app.add_option("--lexicon", o.lexicon, "Lexicon JSON replacing the built-in one");

  auto* parse = app.add_subcommand("parse", "Print the dependency tree of a sentence");
  parse->add_flag("--np", o.np, "Parse a bare noun phrase");
  parse->add_option("sentence", o.sentence)->required();

  auto* plan = app.add_subcommand("plan", "Print the compiled scene");
  plan->add_flag("--ir", o.ir, "Print the timeline instead");
  plan->add_option("sentence", o.sentence)->required();

  auto* render = app.add_subcommand("render", "Render a sentence to an animation file");
  render->add_option("sentence", o.sentence)->required();
  render->add_option("-o,--output", o.output, "Output file, or directory for png-seq")->required();
  render->add_option("--format", o.format, "gif, apng or png-seq");
  render->add_flag("--dither", o.dither, "Ordered dithering when quantizing GIF colours");
  render->add_option("--workers", o.workers, "Render threads");

  for (CLI::App* sub : {plan, render}) {
    sub->add_option("--fps", o.fps, "Ticks per second (1-60)");
    sub->add_option("--size", o.size, "Canvas WxH");
  }

  auto* assets = app.add_subcommand("assets", "Asset pack tools");
  assets->require_subcommand(1);
  auto* validate = assets->add_subcommand("validate", "Check a manifest and its files");
  validate->add_option("manifest", o.manifest);

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }

  try {
    if (parse->parsed()) return CmdParse(o, out);
    if (plan->parsed()) return CmdPlan(o, out);
    if (render->parsed()) return CmdRender(o, out);
    if (validate->parsed()) return CmdValidate(o, out);
  } catch (const Error& e) {
    err << "error: " << ErrorKindName(e.kind()) << ": " << e.what() << "\n";
    return e.exit_code();
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 4;
  }
  return 1;
}

}  // namespace text2anim
