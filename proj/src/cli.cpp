#include "braille/cli.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "braille/brf.hpp"
#include "braille/codegen.hpp"
#include "braille/config.hpp"
#include "braille/consumables.hpp"
#include "braille/errors.hpp"
#include "braille/job_handle.hpp"
#include "braille/pipeline.hpp"
#include "braille/render.hpp"

namespace braille::cli {
namespace {

namespace fs = std::filesystem;

constexpr const char* kPagePrompt = "insert fresh page, press enter";

struct Options {
  std::string backend = "p1";
  bool backend_given = false;
  std::string input;
  std::string config;
  std::vector<std::string> overrides;
  bool reject_unknown = false;
  bool capital_sign = false;
  bool no_pause = false;
  std::string cmd_out;
  std::string brf_out;
  std::string pgm_out;
  std::string svg_out;
  std::string dots_out;
  std::string ledger_out;

  bool any_output() const {
    return !(cmd_out.empty() && brf_out.empty() && pgm_out.empty() && svg_out.empty() && dots_out.empty() &&
             ledger_out.empty());
  }
};

class IoError : public Error {
 public:
  using Error::Error;
};

Backend parse_backend(const std::string& s) { return s == "p2" ? Backend::P2 : Backend::P1; }

Settings load_settings(const Options& opt) {
  Settings s;
  std::string path = opt.config;
  if (path.empty())
    if (const char* env = std::getenv(kConfigEnvVar)) path = env;
  if (!path.empty()) load_config_file(s, path);
  for (const auto& kv : opt.overrides) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos) throw ConfigInvalid("--set expects key=value, got '" + kv + "'");
    apply_setting(s, std::string_view(kv).substr(0, eq), std::string_view(kv).substr(eq + 1));
  }
  if (opt.reject_unknown) s.policy.unknown_char = UnknownCharPolicy::Reject;
  if (opt.capital_sign) s.policy.uppercase = UppercasePolicy::CapitalSignPrefix;
  s.validate();
  return s;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const fs::path& path, const std::string& data) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path.string());
  out << data;
  if (!out) throw IoError("write failed for " + path.string());
}

/// `out.pgm` for a single page, `out-1.pgm`, `out-2.pgm`, ... otherwise.
fs::path page_path(const std::string& base, std::size_t page, std::size_t page_count) {
  if (page_count == 1) return base;
  fs::path p(base);
  fs::path name = p.stem();
  name += "-" + std::to_string(page + 1);
  name += p.extension();
  return p.parent_path() / name;
}

std::string brf_of_layout(const PageLayout& layout) {
  std::string out;
  for (const auto& page : layout.pages)
    for (const auto& line : page.lines)
      out += line.empty() ? std::string("\n") : to_brf(line, layout.cfg.cells_per_line);
  return out;
}

void write_page_previews(const Options& opt, const std::vector<EmbossedPage>& pages, const Settings& s) {
  const RenderConfig rc = s.render();
  for (std::size_t i = 0; i < pages.size(); ++i) {
    if (!opt.pgm_out.empty()) write_file(page_path(opt.pgm_out, i, pages.size()), render_pgm(pages[i], rc));
    if (!opt.svg_out.empty()) write_file(page_path(opt.svg_out, i, pages.size()), render_svg(pages[i], rc));
  }
}

void write_artifacts(const Options& opt, const Settings& s, const PageLayout& layout, const DeviceProgram& program,
                     const JobResult& result) {
  if (!opt.cmd_out.empty()) write_file(opt.cmd_out, serialize_program(program));
  if (!opt.brf_out.empty()) write_file(opt.brf_out, brf_of_layout(layout));
  if (!opt.dots_out.empty()) {
    std::ostringstream ss;
    write_pages_csv(ss, result.pages);
    write_file(opt.dots_out, ss.str());
  }
  if (!opt.ledger_out.empty()) {
    std::ostringstream ss;
    write_ledger_csv(ss, result);
    write_file(opt.ledger_out, ss.str());
  }
  write_page_previews(opt, result.pages, s);
}

void report_job(std::ostream& out, const JobResult& result) {
  out << "pages: " << result.pages.size() << '\n'
      << "dots: " << result.dot_count() << '\n'
      << "time_s: " << format_seconds(result.total_time) << '\n';
}

std::string describe(char32_t c) {
  char buf[32];
  if (c >= 0x20 && c < 0x7F)
    std::snprintf(buf, sizeof buf, "'%c'", static_cast<char>(c));
  else
    std::snprintf(buf, sizeof buf, "U+%04X", static_cast<unsigned>(c));
  return buf;
}

void warn_substitutions(std::ostream& err, const EncodedText& enc) {
  for (const auto& sub : enc.substitutions)
    err << "warning: unsupported character " << describe(sub.codepoint) << " at position " << sub.position
        << " printed as blank\n";
}

int cmd_print(const Options& opt, std::istream& in, std::ostream& out, std::ostream& err) {
  const Settings s = load_settings(opt);
  if (!opt.any_output()) throw ConfigInvalid("print needs at least one output (--cmd, --brf, --pgm, --svg, --dots, --ledger)");
  const std::string text = read_file(opt.input);
  const CompiledJob job = compile_text(text, parse_backend(opt.backend), s);
  warn_substitutions(err, job.encoded);

  PauseHandler pause;
  if (!opt.no_pause) {
    pause = [&in, &err](std::size_t page) {
      err << "page " << page + 1 << " done: " << kPagePrompt << std::endl;
      std::string ignored;
      std::getline(in, ignored);
    };
  }
  const JobResult result = simulate_job(job.program, s.machine, pause);
  write_artifacts(opt, s, job.layout, job.program, result);
  report_job(out, result);
  return kExitOk;
}

// Reads one UTF-8 encoded character; malformed input maps to U+FFFD.
std::optional<char32_t> read_codepoint(std::istream& in) {
  const int lead = in.get();
  if (lead == EOF) return std::nullopt;
  const auto b = static_cast<unsigned char>(lead);
  int extra = b < 0x80 ? 0 : (b & 0xE0) == 0xC0 ? 1 : (b & 0xF0) == 0xE0 ? 2 : (b & 0xF8) == 0xF0 ? 3 : -1;
  if (extra < 0) return 0xFFFD;
  char32_t cp = extra == 0 ? b : extra == 1 ? (b & 0x1F) : extra == 2 ? (b & 0x0F) : (b & 0x07);
  for (int k = 0; k < extra; ++k) {
    const int next = in.peek();
    if (next == EOF || (static_cast<unsigned char>(next) & 0xC0) != 0x80) return 0xFFFD;
    cp = (cp << 6) | (static_cast<unsigned char>(in.get()) & 0x3F);
  }
  return cp;
}

class TeeSink final : public LayoutSink {
 public:
  TeeSink(LayoutSink& a, LayoutSink& b) : a_(a), b_(b) {}
  void page_begin(std::size_t page) override {
    a_.page_begin(page);
    b_.page_begin(page);
  }
  void cell(std::size_t page, std::size_t line, std::size_t column, BrailleCell cell) override {
    a_.cell(page, line, column, cell);
    b_.cell(page, line, column, cell);
  }
  void line_end(std::size_t page, std::size_t line, const CellLine& cells) override {
    a_.line_end(page, line, cells);
    b_.line_end(page, line, cells);
  }

 private:
  LayoutSink& a_;
  LayoutSink& b_;
};

int cmd_typewriter(const Options& opt, std::istream& in, std::ostream& out, std::ostream& err) {
  const Settings s = load_settings(opt);
  const Backend backend = parse_backend(opt.backend);

  LayoutCollector collector(s.layout());
  StreamCompiler compiler(backend);
  TeeSink tee(collector, compiler);
  DeviceProgram program{backend, {}};

  JobHandle job(backend, s.machine, [&err](std::size_t page) {
    err << "page " << page + 1 << " full: " << kPagePrompt << std::endl;
  });
  auto flush = [&] {
    for (const Command& c : compiler.take()) {
      program.commands.push_back(c);
      job.submit(c);
    }
    job.sync();
  };

  LayoutBuilder builder(s.layout(), tee);
  flush();
  std::size_t position = 0;
  while (auto c = read_codepoint(in)) {
    const std::size_t pos = position++;
    if (*c == U'\r') continue;
    if (*c == 0x08 || *c == 0x7F) {
      err << "warning: backspace ignored at position " << pos << " (embossed dots cannot be removed)\n";
      continue;
    }
    if (*c == U'\n') {
      builder.push(LineBreak{});
    } else {
      std::vector<BrailleCell> cells;
      try {
        cells = encode_char(*c, s.policy, pos);
      } catch (const UnsupportedCharacter& e) {
        err << "error: " << e.what() << " (keystroke refused)\n";
        continue;
      }
      if (!is_supported(*c))
        err << "warning: unsupported character " << describe(*c) << " at position " << pos << " printed as blank\n";
      for (BrailleCell cell : cells) builder.push(cell);
    }
    flush();
  }
  builder.finish();
  flush();
  const JobResult result = job.finish();
  write_artifacts(opt, s, collector.layout(), program, result);
  report_job(out, result);
  return kExitOk;
}

int cmd_estimate(const Options& opt, std::ostream& out, std::ostream& err) {
  const Settings s = load_settings(opt);
  const std::string text = read_file(opt.input);
  std::vector<Backend> backends = {Backend::P1, Backend::P2};
  if (opt.backend_given) backends = {parse_backend(opt.backend)};

  const CompiledJob first = compile_text(text, backends.front(), s);
  warn_substitutions(err, first.encoded);
  out << "pages: " << first.layout.pages.size() << '\n' << "dots: " << first.layout.dot_count() << '\n';
  for (Backend b : backends) {
    const DeviceProgram program = b == backends.front() ? first.program : generate(first.layout, b);
    const std::string name(backend_name(b));
    out << name << ".time_s: " << format_seconds(estimate_time(program, s.machine)) << '\n';
    if (b == Backend::P1) {
      out << name << ".running_cost: none\n";
    } else {
      const ConsumablesEstimate c = estimate_consumables(first.layout.dot_count(), s.consumables);
      char buf[64];
      std::snprintf(buf, sizeof buf, "%.6f", c.sticks_fractional);
      out << name << ".sticks_fractional: " << buf << '\n' << name << ".sticks: " << c.sticks_to_buy << '\n';
      std::snprintf(buf, sizeof buf, "%.2f", c.cost);
      out << name << ".cost_inr: " << buf << '\n';
    }
  }
  return kExitOk;
}

int cmd_preview(const Options& opt, std::ostream& out) {
  const Settings s = load_settings(opt);
  if (opt.pgm_out.empty() && opt.svg_out.empty()) throw ConfigInvalid("preview needs --pgm and/or --svg");
  std::istringstream csv(read_file(opt.input));
  std::vector<EmbossedPage> pages = read_pages_csv(csv);
  if (pages.empty()) pages.push_back(EmbossedPage{});
  write_page_previews(opt, pages, s);
  std::size_t dots = 0;
  for (const auto& p : pages) dots += p.dots.size();
  out << "pages: " << pages.size() << '\n' << "dots: " << dots << '\n';
  return kExitOk;
}

void add_common(CLI::App* sub, Options& opt) {
  sub->add_option("--config", opt.config, std::string("key=value config file (default: $") + kConfigEnvVar + ")");
  sub->add_option("--set", opt.overrides, "Override one config key, key=value (repeatable)");
}

void add_job_options(CLI::App* sub, Options& opt) {
  sub->add_option("--backend", opt.backend, "Printer architecture: p1 (embosser) or p2 (extruder)")
      ->check(CLI::IsMember({"p1", "p2"}))
      ->each([&opt](const std::string&) { opt.backend_given = true; });
  sub->add_flag("--reject-unknown", opt.reject_unknown, "Fail on unsupported characters instead of printing blanks");
  sub->add_flag("--capital-sign", opt.capital_sign, "Mark capitals with the capital sign instead of folding");
}

void add_outputs(CLI::App* sub, Options& opt) {
  sub->add_option("--cmd", opt.cmd_out, "Write the command stream (.p1cmd / .p2cmd)");
  sub->add_option("--brf", opt.brf_out, "Write ASCII-Braille text");
  sub->add_option("--pgm", opt.pgm_out, "Write a PGM preview per page");
  sub->add_option("--svg", opt.svg_out, "Write an SVG preview per page");
  sub->add_option("--dots", opt.dots_out, "Write the simulated dot list CSV");
  sub->add_option("--ledger", opt.ledger_out, "Write the simulated time ledger CSV");
}

}  // namespace

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
  CLI::App app{"Text-to-Braille compiler and printer simulator", args.empty() ? "braillectl" : args[0]};
  app.require_subcommand(1);
  Options opt;

  auto* print = app.add_subcommand("print", "Compile a text file and run it on the simulated printer");
  add_common(print, opt);
  add_job_options(print, opt);
  add_outputs(print, opt);
  print->add_option("--in", opt.input, "Input .txt file")->required();
  print->add_flag("--no-pause", opt.no_pause, "Do not wait for a fresh page between pages");

  auto* typewriter = app.add_subcommand("typewriter", "Print characters as they arrive on standard input");
  add_common(typewriter, opt);
  add_job_options(typewriter, opt);
  add_outputs(typewriter, opt);

  auto* estimate = app.add_subcommand("estimate", "Report pages, dots, print time and running cost");
  add_common(estimate, opt);
  add_job_options(estimate, opt);
  estimate->add_option("--in", opt.input, "Input .txt file")->required();

  auto* preview = app.add_subcommand("preview", "Render an existing dot CSV");
  add_common(preview, opt);
  preview->add_option("--in", opt.input, "Dot CSV (page,x_mm,y_mm[,method])")->required();
  preview->add_option("--pgm", opt.pgm_out, "Write a PGM preview per page");
  preview->add_option("--svg", opt.svg_out, "Write an SVG preview per page");

  std::vector<std::string> rev(args.rbegin(), args.rend());
  if (!rev.empty()) rev.pop_back();
  try {
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  }

  try {
    if (*print) return cmd_print(opt, in, out, err);
    if (*typewriter) return cmd_typewriter(opt, in, out, err);
    if (*estimate) return cmd_estimate(opt, out, err);
    if (*preview) return cmd_preview(opt, out);
  } catch (const UnsupportedCharacter& e) {
    err << "error: " << e.what() << '\n';
    return kExitUnsupportedCharacter;
  } catch (const ConfigInvalid& e) {
    err << "error: " << e.what() << '\n';
    return kExitConfigInvalid;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  }
  return kExitFailure;
}

}  // namespace braille::cli
