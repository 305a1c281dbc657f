#include "framelab/cli/spec_io.hpp"

#include <fstream>
#include <sstream>

#include "framelab/cli/config.hpp"
#include "framelab/cli/emit.hpp"
#include "json.hpp"

namespace framelab::cli {

namespace {

using nlohmann::json;

json parse_document(const std::string& text, const std::string& source) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    std::size_t line = 1;
    std::size_t column = 1;
    const std::size_t end = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
    for (std::size_t i = 0; i < end; ++i) {
      if (text[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    throw SpecParseError(source + ":" + std::to_string(line) + ":" + std::to_string(column) +
                         ": malformed JSON");
  }
}

[[noreturn]] void field_error(const std::string& source, const std::string& field,
                              const std::string& problem) {
  throw SpecParseError(source + ": field '" + field + "': " + problem);
}

const json& require(const json& object, const char* key, const std::string& source,
                    const std::string& path) {
  if (!object.is_object()) field_error(source, path, "expected an object");
  const auto it = object.find(key);
  if (it == object.end()) field_error(source, path + "." + key, "missing");
  return *it;
}

double number(const json& object, const char* key, const std::string& source,
              const std::string& path, std::optional<double> fallback = std::nullopt) {
  if (!object.is_object()) field_error(source, path, "expected an object");
  const auto it = object.find(key);
  if (it == object.end()) {
    if (fallback) return *fallback;
    field_error(source, path + "." + key, "missing");
  }
  if (!it->is_number()) field_error(source, path + "." + key, "expected a number");
  return it->get<double>();
}

const json& array_field(const json& root, const char* key, const std::string& source,
                        bool required) {
  static const json empty = json::array();
  if (!root.is_object()) field_error(source, "$", "expected an object");
  const auto it = root.find(key);
  if (it == root.end()) {
    if (required) field_error(source, key, "missing");
    return empty;
  }
  if (!it->is_array()) field_error(source, key, "expected an array");
  return *it;
}

template <typename Build>
auto validated(const std::string& source, Build&& build) {
  try {
    return build();
  } catch (const CliError&) {
    throw;
  } catch (const Error& e) {
    throw SpecParseError(source + ": " + e.what());
  }
}

std::string indexed(const char* key, std::size_t i) {
  return std::string(key) + "[" + std::to_string(i) + "]";
}

}  // namespace

CircleMeasure parse_measure(const std::string& text, const std::string& source) {
  const json root = parse_document(text, source);
  std::vector<Atom> atoms;
  const auto& atom_array = array_field(root, "atoms", source, false);
  for (std::size_t i = 0; i < atom_array.size(); ++i) {
    const auto path = indexed("atoms", i);
    atoms.push_back({number(atom_array[i], "x", source, path), number(atom_array[i], "w", source, path)});
  }
  std::vector<DensityPiece> pieces;
  const auto& piece_array = array_field(root, "pieces", source, false);
  for (std::size_t i = 0; i < piece_array.size(); ++i) {
    const auto path = indexed("pieces", i);
    pieces.push_back({number(piece_array[i], "a", source, path),
                      number(piece_array[i], "b", source, path),
                      number(piece_array[i], "h", source, path)});
  }
  const double cantor = number(root, "cantor", source, "$", 0.0);
  return validated(source, [&] { return CircleMeasure(atoms, pieces, cantor); });
}

FunctionSpec parse_function(const std::string& text, const std::string& source) {
  const json root = parse_document(text, source);
  std::vector<Term> terms;
  const auto& term_array = array_field(root, "terms", source, false);
  for (std::size_t i = 0; i < term_array.size(); ++i) {
    const auto path = indexed("terms", i);
    const json& m = require(term_array[i], "m", source, path);
    if (!m.is_number_integer()) field_error(source, path + ".m", "expected an integer");
    Term t;
    t.m = m.get<int>();
    t.u = number(term_array[i], "u", source, path, 0.0);
    t.v = number(term_array[i], "v", source, path, 1.0);
    t.coef = {number(term_array[i], "re", source, path, 1.0),
              number(term_array[i], "im", source, path, 0.0)};
    terms.push_back(t);
  }
  std::vector<AtomValue> values;
  const auto& value_array = array_field(root, "atomValues", source, false);
  for (std::size_t i = 0; i < value_array.size(); ++i) {
    const auto path = indexed("atomValues", i);
    values.push_back({number(value_array[i], "x", source, path),
                      {number(value_array[i], "re", source, path, 0.0),
                       number(value_array[i], "im", source, path, 0.0)}});
  }
  return validated(source, [&] { return FunctionSpec(terms, values); });
}

RealAtomicMeasure parse_real_measure(const std::string& text, const std::string& source) {
  const json root = parse_document(text, source);
  std::vector<RealAtom> atoms;
  const auto& atom_array = array_field(root, "atoms", source, true);
  for (std::size_t i = 0; i < atom_array.size(); ++i) {
    const auto path = indexed("atoms", i);
    atoms.push_back({number(atom_array[i], "y", source, path), number(atom_array[i], "w", source, path)});
  }
  return validated(source, [&] { return RealAtomicMeasure(atoms); });
}

std::vector<RealValue> parse_values(const std::string& text, const std::string& source) {
  const json root = parse_document(text, source);
  std::vector<RealValue> values;
  const auto& value_array = array_field(root, "values", source, true);
  for (std::size_t i = 0; i < value_array.size(); ++i) {
    const auto path = indexed("values", i);
    values.push_back({number(value_array[i], "y", source, path),
                      {number(value_array[i], "re", source, path, 0.0),
                       number(value_array[i], "im", source, path, 0.0)}});
  }
  return values;
}

std::string read_file(const std::string& path) {
  std::ifstream file(path, std::ios::binary);
  if (!file) throw FileNotFound("cannot open '" + path + "'");
  std::ostringstream buffer;
  buffer << file.rdbuf();
  return buffer.str();
}

CircleMeasure load_measure(const std::string& path) { return parse_measure(read_file(path), path); }
FunctionSpec load_function(const std::string& path) { return parse_function(read_file(path), path); }
RealAtomicMeasure load_real_measure(const std::string& path) {
  return parse_real_measure(read_file(path), path);
}
std::vector<RealValue> load_values(const std::string& path) {
  return parse_values(read_file(path), path);
}

std::string to_json(const CircleMeasure& measure) {
  std::string out = "{\"atoms\":[";
  for (std::size_t i = 0; i < measure.atoms().size(); ++i) {
    const auto& a = measure.atoms()[i];
    out += (i ? "," : "") + std::string("{\"x\":") + format_double(a.x) + ",\"w\":" + format_double(a.w) + "}";
  }
  out += "],\"pieces\":[";
  for (std::size_t i = 0; i < measure.pieces().size(); ++i) {
    const auto& p = measure.pieces()[i];
    out += (i ? "," : "") + std::string("{\"a\":") + format_double(p.a) + ",\"b\":" + format_double(p.b) +
           ",\"h\":" + format_double(p.h) + "}";
  }
  return out + "],\"cantor\":" + format_double(measure.cantor_weight()) + "}";
}

std::string to_json(const FunctionSpec& f) {
  std::string out = "{\"terms\":[";
  for (std::size_t i = 0; i < f.terms().size(); ++i) {
    const auto& t = f.terms()[i];
    out += (i ? "," : "") + std::string("{\"m\":") + std::to_string(t.m) + ",\"u\":" + format_double(t.u) +
           ",\"v\":" + format_double(t.v) + ",\"re\":" + format_double(t.coef.real()) +
           ",\"im\":" + format_double(t.coef.imag()) + "}";
  }
  out += "],\"atomValues\":[";
  for (std::size_t i = 0; i < f.atom_values().size(); ++i) {
    const auto& v = f.atom_values()[i];
    out += (i ? "," : "") + std::string("{\"x\":") + format_double(v.x) +
           ",\"re\":" + format_double(v.value.real()) + ",\"im\":" + format_double(v.value.imag()) + "}";
  }
  return out + "]}";
}

}  // namespace framelab::cli
