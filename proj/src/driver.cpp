#include "gradex/driver.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "gradex/checker.hpp"
#include "gradex/parser.hpp"

namespace gradex {

namespace fs = std::filesystem;

Report check_sources(const std::vector<SourceFile>& files) {
  Report report;
  std::vector<Program> programs;
  std::vector<std::string> names;
  programs.reserve(files.size());
  for (const auto& f : files) {
    ParseOutcome parsed = parse_file(f);
    if (parsed.error) {
      report.syntax_errors = true;
      report.diagnostics.push_back(std::move(*parsed.error));
      continue;
    }
    programs.push_back(std::move(*parsed.program));
    names.push_back(f.name());
  }
  std::vector<ProgramUnit> units;
  for (std::size_t i = 0; i < programs.size(); ++i) units.push_back(ProgramUnit{names[i], &programs[i]});
  CheckResult checked = check_program(units);
  report.sigs = std::move(checked.sigs);
  report.diagnostics.insert(report.diagnostics.end(), std::make_move_iterator(checked.diagnostics.begin()),
                            std::make_move_iterator(checked.diagnostics.end()));
  sort_diagnostics(report.diagnostics);
  return report;
}

int exit_code(const Report& report, bool strict_warnings) {
  if (report.syntax_errors) return 2;
  Summary s = summarize(report.diagnostics);
  if (s.errors > 0 || (strict_warnings && s.warnings > 0)) return 1;
  return 0;
}

std::string render_report(const Report& report, const std::vector<SourceFile>& files, const OutputOptions& opts) {
  std::vector<std::string> sigs;
  if (opts.dump_sigs) {
    for (const auto& [key, sig] : report.sigs.entries()) sigs.push_back(format_signature(key, sig));
  }
  if (opts.json) return render_json(report.diagnostics, opts.dump_sigs ? &sigs : nullptr) + "\n";

  std::string out;
  for (const auto& line : sigs) out += line + "\n";
  for (const auto& d : report.diagnostics) {
    auto it = std::find_if(files.begin(), files.end(), [&](const SourceFile& f) { return f.name() == d.file; });
    out += render_text(d, it == files.end() ? nullptr : &*it, opts.color);
  }
  return out;
}

std::vector<fs::path> expand_paths(const std::vector<std::string>& paths) {
  std::vector<fs::path> out;
  for (const auto& raw : paths) {
    fs::path p(raw);
    if (fs::is_directory(p)) {
      std::vector<fs::path> found;
      for (const auto& entry : fs::recursive_directory_iterator(p)) {
        if (entry.is_regular_file() && entry.path().extension() == ".ex") found.push_back(entry.path());
      }
      std::sort(found.begin(), found.end());
      out.insert(out.end(), found.begin(), found.end());
    } else if (fs::is_regular_file(p)) {
      out.push_back(p);
    } else {
      throw std::runtime_error(fmt::format("no such file or directory: {}", raw));
    }
  }
  return out;
}

namespace {

SourceFile load(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error(fmt::format("cannot read {}", path.generic_string()));
  std::ostringstream buf;
  buf << in.rdbuf();
  return SourceFile(path.generic_string(), buf.str());
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err, bool tty) {
  CLI::App app{"Gradual type checker for a fragment of Elixir", "gradex"};
  app.require_subcommand(1);

  std::vector<std::string> check_paths;
  std::string format = "text";
  bool strict = false;
  bool dump_sigs = false;
  bool no_color = false;
  auto* check = app.add_subcommand("check", "Type-check files or directories of .ex files");
  check->add_option("paths", check_paths, "Files or directories")->required();
  check->add_option("--format", format, "Output format")->check(CLI::IsMember({"text", "json"}));
  check->add_flag("--strict-warnings", strict, "Exit with 1 when there are warnings");
  check->add_flag("--dump-sigs", dump_sigs, "Print the collected signatures");
  check->add_flag("--no-color", no_color, "Disable colored output");

  std::string parse_path;
  auto* parse = app.add_subcommand("parse", "Print the syntax tree of a file");
  parse->add_option("path", parse_path, "Source file")->required();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? 0 : 3;
  }

  try {
    if (parse->parsed()) {
      SourceFile file = load(parse_path);
      ParseOutcome parsed = parse_file(file);
      if (parsed.error) {
        out << render_text(*parsed.error, &file, false);
        return 2;
      }
      out << dump(*parsed.program);
      return 0;
    }

    std::vector<SourceFile> files;
    for (const auto& p : expand_paths(check_paths)) files.push_back(load(p));
    Report report = check_sources(files);
    OutputOptions opts{format == "json", dump_sigs, tty && !no_color && format == "text"};
    out << render_report(report, files, opts);
    Summary s = summarize(report.diagnostics);
    if (s.errors > 0 || s.warnings > 0) {
      err << fmt::format("{} error(s), {} warning(s) in {} file(s)\n", s.errors, s.warnings, files.size());
    }
    return exit_code(report, strict);
  } catch (const std::runtime_error& e) {
    err << "gradex: " << e.what() << "\n";
    return 3;
  }
}

}  // namespace gradex
