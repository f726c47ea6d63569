#include "fracgrid/config_io.hpp"

#include <cerrno>
#include <cstdlib>
#include <fstream>
#include <set>

#include "fracgrid/csv_writer.hpp"
#include "fracgrid/errors.hpp"

namespace fracgrid {

using nlohmann::json;

namespace {

void reject_unknown(const json& object, const std::string& where,
                    const std::set<std::string>& allowed) {
  if (!object.is_object()) {
    throw ConfigError((where.empty() ? std::string("config") : where) + " must be an object",
                      where);
  }
  for (const auto& [key, value] : object.items()) {
    if (!allowed.count(key)) {
      const std::string full = where.empty() ? key : where + "." + key;
      throw ConfigError("unknown config key '" + full + "'", full);
    }
  }
}

const json* find(const json& object, const std::string& key) {
  if (!object.is_object()) return nullptr;
  const auto it = object.find(key);
  return it == object.end() ? nullptr : &*it;
}

double number_at(const json& value, const std::string& key) {
  if (!value.is_number()) throw ConfigError(key + " must be a number", key);
  return value.get<double>();
}

std::uint64_t count_at(const json& value, const std::string& key) {
  if (value.is_number_unsigned()) return value.get<std::uint64_t>();
  if (value.is_number_integer() && value.get<std::int64_t>() >= 0) {
    return static_cast<std::uint64_t>(value.get<std::int64_t>());
  }
  throw ConfigError(key + " must be a non-negative integer", key);
}

const json& required(const json& section, const std::string& section_name,
                     const std::string& key) {
  const json* v = find(section, key);
  if (!v) {
    throw ConfigError("missing required value '" + section_name + "." + key + "'",
                      section_name + "." + key);
  }
  return *v;
}

const json& section(const json& document, const std::string& name) {
  static const json empty = json::object();
  const json* s = find(document, name);
  return s ? *s : empty;
}

MemoryStrategy strategy_from_json(const json& memory) {
  if (memory.is_string()) return parse_strategy(memory.get<std::string>());
  reject_unknown(memory, "memory", {"strategy", "length", "base"});
  const json* name = find(memory, "strategy");
  if (!name || !name->is_string()) {
    throw ConfigError("memory.strategy must be one of full, short, adaptive", "memory.strategy");
  }
  const std::string tag = name->get<std::string>();
  MemoryStrategy strategy;
  if (tag == "full") {
    strategy = FullMemory{};
  } else if (tag == "short") {
    strategy = ShortMemory{number_at(required(memory, "memory", "length"), "memory.length")};
  } else if (tag == "adaptive") {
    strategy = AdaptiveMemory{count_at(required(memory, "memory", "base"), "memory.base")};
  } else {
    throw ConfigError("unknown memory.strategy '" + tag + "'", "memory.strategy");
  }
  validate(strategy);
  return strategy;
}

json strategy_to_json(const MemoryStrategy& strategy) {
  json out = {{"strategy", strategy_name(strategy)}};
  if (const auto* s = std::get_if<ShortMemory>(&strategy)) out["length"] = s->length;
  if (const auto* a = std::get_if<AdaptiveMemory>(&strategy)) out["base"] = a->base;
  return out;
}

double parse_number(const std::string& text, const std::string& key) {
  char* end = nullptr;
  errno = 0;
  const double v = std::strtod(text.c_str(), &end);
  if (text.empty() || *end != '\0' || errno == ERANGE) {
    throw ConfigError("bad number '" + text + "' for " + key, key);
  }
  return v;
}

std::size_t parse_index(const std::string& text, const std::string& key) {
  char* end = nullptr;
  errno = 0;
  if (text.empty() || text.front() == '-') throw ConfigError("bad index '" + text + "'", key);
  const unsigned long long v = std::strtoull(text.c_str(), &end, 10);
  if (*end != '\0' || errno == ERANGE) throw ConfigError("bad index '" + text + "'", key);
  return static_cast<std::size_t>(v);
}

}  // namespace

PointSource parse_source(const std::string& text) {
  const auto comma = text.find(',');
  const auto equals = text.find('=');
  if (comma == std::string::npos || equals == std::string::npos || equals < comma) {
    throw ConfigError("source '" + text + "' must look like j,l=value", "source");
  }
  return {parse_index(text.substr(0, comma), "source"),
          parse_index(text.substr(comma + 1, equals - comma - 1), "source"),
          parse_number(text.substr(equals + 1), "source")};
}

std::pair<std::size_t, std::size_t> parse_grid_dims(const std::string& text) {
  const auto x = text.find_first_of("xX");
  if (x == std::string::npos) throw ConfigError("grid '" + text + "' must look like NXxNY", "grid");
  return {parse_index(text.substr(0, x), "grid"), parse_index(text.substr(x + 1), "grid")};
}

SimulationConfig config_from_json(const json& document) {
  reject_unknown(document, "", {"physics", "time", "grid", "memory", "sources", "limits"});
  const json& physics = section(document, "physics");
  const json& time = section(document, "time");
  const json& grid = section(document, "grid");
  const json& limits = section(document, "limits");
  reject_unknown(physics, "physics", {"gamma", "alpha", "beta"});
  reject_unknown(time, "time", {"dt", "steps", "snapshot_every"});
  reject_unknown(grid, "grid", {"nx", "ny", "dx", "initial", "initial_csv"});
  reject_unknown(limits, "limits", {"memory_cap_bytes"});

  SimulationConfig c;
  c.gamma = number_at(required(physics, "physics", "gamma"), "physics.gamma");
  if (const json* v = find(physics, "alpha")) c.alpha = number_at(*v, "physics.alpha");
  if (const json* v = find(physics, "beta")) c.beta = number_at(*v, "physics.beta");
  c.dt = number_at(required(time, "time", "dt"), "time.dt");
  c.n_steps = count_at(required(time, "time", "steps"), "time.steps");
  if (const json* v = find(time, "snapshot_every")) c.snapshot_every = count_at(*v, "time.snapshot_every");
  c.nx = count_at(required(grid, "grid", "nx"), "grid.nx");
  c.ny = count_at(required(grid, "grid", "ny"), "grid.ny");
  c.dx = number_at(required(grid, "grid", "dx"), "grid.dx");

  if (const json* v = find(grid, "initial")) {
    if (!v->is_array() || v->size() != c.ny) {
      throw ConfigError("grid.initial must be an array of ny rows", "grid.initial");
    }
    Grid2D field(c.nx, c.ny, c.dx);
    for (std::size_t l = 0; l < c.ny; ++l) {
      const json& row = (*v)[l];
      if (!row.is_array() || row.size() != c.nx) {
        throw ConfigError("grid.initial row " + std::to_string(l) + " must hold nx values",
                          "grid.initial");
      }
      for (std::size_t j = 0; j < c.nx; ++j) field(j, l) = number_at(row[j], "grid.initial");
    }
    c.initial_field = std::move(field);
  } else if (const json* p = find(grid, "initial_csv")) {
    if (!p->is_string()) throw ConfigError("grid.initial_csv must be a path", "grid.initial_csv");
    c.initial_field = read_grid_csv(p->get<std::string>(), c.dx);
  }

  if (const json* m = find(document, "memory")) {
    try {
      c.strategy = strategy_from_json(*m);
    } catch (const ConfigError& e) {
      throw ConfigError(e.what(), e.key().rfind("memory", 0) == 0 ? e.key() : "memory");
    }
  }
  if (const json* s = find(document, "sources")) {
    if (!s->is_array()) throw ConfigError("sources must be an array", "sources");
    for (const json& entry : *s) {
      reject_unknown(entry, "sources[]", {"j", "l", "value"});
      c.sources.push_back({count_at(required(entry, "sources[]", "j"), "sources[].j"),
                           count_at(required(entry, "sources[]", "l"), "sources[].l"),
                           number_at(required(entry, "sources[]", "value"), "sources[].value")});
    }
  }
  if (const json* v = find(limits, "memory_cap_bytes")) {
    c.memory_cap_bytes = count_at(*v, "limits.memory_cap_bytes");
  }

  validate(c);
  return c;
}

json config_to_json(const SimulationConfig& c) {
  json sources = json::array();
  for (const auto& s : c.sources) sources.push_back({{"j", s.j}, {"l", s.l}, {"value", s.value}});
  json grid = {{"nx", c.nx}, {"ny", c.ny}, {"dx", c.dx}};
  if (c.initial_field) {
    json rows = json::array();
    for (std::size_t l = 0; l < c.initial_field->ny(); ++l) {
      json row = json::array();
      for (std::size_t j = 0; j < c.initial_field->nx(); ++j) row.push_back((*c.initial_field)(j, l));
      rows.push_back(std::move(row));
    }
    grid["initial"] = std::move(rows);
  }
  return {
      {"physics", {{"gamma", c.gamma}, {"alpha", c.alpha}, {"beta", c.beta}}},
      {"time", {{"dt", c.dt}, {"steps", c.n_steps}, {"snapshot_every", c.snapshot_every}}},
      {"grid", std::move(grid)},
      {"memory", strategy_to_json(c.strategy)},
      {"sources", std::move(sources)},
      {"limits", {{"memory_cap_bytes", c.memory_cap_bytes}}},
  };
}

json load_config_document(const std::string& path) {
  std::ifstream file(path);
  if (!file) throw IoError("cannot open config file '" + path + "'", path);
  try {
    return json::parse(file);
  } catch (const json::parse_error& e) {
    throw ConfigError("malformed config file '" + path + "': " + e.what(), "config");
  }
}

SimulationConfig resolve_config(const json& defaults, const json& file,
                                const ConfigOverrides& o) {
  json doc = defaults.is_object() ? defaults : json::object();
  if (!file.is_null()) {
    reject_unknown(file, "", {"physics", "time", "grid", "memory", "sources", "limits"});
    for (const auto& [key, value] : file.items()) {
      // Sources and memory are replaced wholesale; sections merge key by key.
      if (key == "sources" || key == "memory" || !value.is_object() || !doc[key].is_object()) {
        doc[key] = value;
      } else {
        for (const auto& [inner, v] : value.items()) doc[key][inner] = v;
      }
    }
  }
  if (o.gamma) doc["physics"]["gamma"] = *o.gamma;
  if (o.alpha) doc["physics"]["alpha"] = *o.alpha;
  if (o.beta) doc["physics"]["beta"] = *o.beta;
  if (o.dt) doc["time"]["dt"] = *o.dt;
  if (o.steps) doc["time"]["steps"] = *o.steps;
  if (o.snapshot_every) doc["time"]["snapshot_every"] = *o.snapshot_every;
  if (o.dx) doc["grid"]["dx"] = *o.dx;
  if (o.grid) {
    const auto [nx, ny] = parse_grid_dims(*o.grid);
    doc["grid"]["nx"] = nx;
    doc["grid"]["ny"] = ny;
  }
  if (o.initial_csv) {
    if (doc.contains("grid")) doc["grid"].erase("initial");
    doc["grid"]["initial_csv"] = *o.initial_csv;
  }
  if (o.memory) doc["memory"] = strategy_to_json(parse_strategy(*o.memory));
  if (!o.sources.empty()) {
    json sources = json::array();
    for (const auto& text : o.sources) {
      const PointSource s = parse_source(text);
      sources.push_back({{"j", s.j}, {"l", s.l}, {"value", s.value}});
    }
    doc["sources"] = std::move(sources);
  }
  if (o.memory_cap_bytes) doc["limits"]["memory_cap_bytes"] = *o.memory_cap_bytes;
  return config_from_json(doc);
}

}  // namespace fracgrid
