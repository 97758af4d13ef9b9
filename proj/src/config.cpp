#include "wgif/config.hpp"

#include <fstream>
#include <istream>

#include "wgif/errors.hpp"
#include "wgif/family.hpp"
#include "wgif/mesh_io.hpp"

namespace wgif {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double to_double(const std::string& key, const std::string& v) {
  std::size_t used = 0;
  double x = 0.0;
  try {
    x = std::stod(v, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != v.size()) throw DataError(key + ": expected a number, got '" + v + "'");
  return x;
}

int to_int(const std::string& key, const std::string& v) {
  std::size_t used = 0;
  int x = 0;
  try {
    x = std::stoi(v, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != v.size()) throw DataError(key + ": expected an integer, got '" + v + "'");
  return x;
}

}  // namespace

void set_config_value(RunConfig& c, const std::string& key, const std::string& value) {
  if (key == "problem") {
    c.problem = to_int(key, value);
  } else if (key == "b") {
    c.params.b = to_double(key, value);
  } else if (key == "kappa") {
    c.params.kappa = to_double(key, value);
  } else if (key == "level") {
    c.level = to_int(key, value);
  } else if (key == "levels") {
    c.levels = to_int(key, value);
  } else if (key == "mesh_dir") {
    c.mesh_dir = value;
  } else if (key == "out") {
    c.out_dir = value;
  } else if (key == "format") {
    c.formats.clear();
    std::size_t pos = 0;
    while (pos <= value.size()) {
      const std::size_t comma = value.find(',', pos);
      const std::string f = trim(value.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos));
      if (f == "csv")
        c.formats.push_back(TableFormat::Csv);
      else if (f == "markdown" || f == "md")
        c.formats.push_back(TableFormat::Markdown);
      else
        throw DataError("format: expected csv or markdown, got '" + f + "'");
      if (comma == std::string::npos) break;
      pos = comma + 1;
    }
  } else if (key == "forcing") {
    if (value == "analytic")
      c.forcing = ForcingMode::Analytic;
    else if (value == "fd")
      c.forcing = ForcingMode::FiniteDifference;
    else
      throw DataError("forcing: expected analytic or fd, got '" + value + "'");
  } else if (key == "hfd") {
    c.h_fd = to_double(key, value);
  } else {
    throw DataError("unknown configuration key '" + key + "'");
  }
}

void read_config(std::istream& in, RunConfig& config) {
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ParseError("expected key = value", lineno);
    try {
      set_config_value(config, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
    } catch (const ParseError&) {
      throw;
    } catch (const DataError& e) {
      throw ParseError(e.what(), lineno);
    }
  }
}

void read_config(const std::filesystem::path& file, RunConfig& config) {
  std::ifstream in(file);
  if (!in) throw DataError("cannot open configuration file " + file.string());
  read_config(in, config);
}

std::filesystem::path mesh_stem(const std::filesystem::path& dir, int level) {
  return dir / ("level" + std::to_string(level));
}

void validate(const RunConfig& c, bool need_all_levels) {
  if (c.problem < 1 || c.problem > 10) throw DataError("problem must be 1..10");
  if (c.levels < 1) throw DataError("levels must be at least 1");
  if (c.level < 1) throw DataError("level must be at least 1");
  if (!(c.h_fd > 0.0)) throw DataError("hfd must be positive");
  if (c.formats.empty()) throw DataError("at least one output format is needed");
  if (c.mesh_dir.empty()) return;
  const int first = need_all_levels ? 1 : c.level;
  const int last = need_all_levels ? c.levels : c.level;
  for (int l = first; l <= last; ++l)
    for (const char* ext : {".node", ".ele"}) {
      const std::filesystem::path p = mesh_stem(c.mesh_dir, l).string() + ext;
      if (!std::filesystem::exists(p)) throw DataError("missing mesh file " + p.string());
    }
}

ProblemSpec make_problem(const RunConfig& c) {
  ProblemSpec spec = builtin_problem(c.problem, c.params);
  spec.forcing_mode = c.forcing;
  spec.h_fd = c.h_fd;
  return spec;
}

TriMesh config_mesh(const RunConfig& c, const ProblemSpec& spec, int level) {
  if (c.mesh_dir.empty()) return level_mesh(spec, level);
  const std::filesystem::path stem = mesh_stem(c.mesh_dir, level);
  return ingest_mesh(stem.string() + ".node", stem.string() + ".ele", spec.region, spec.on_interface);
}

}  // namespace wgif
