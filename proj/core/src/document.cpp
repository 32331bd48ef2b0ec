#include "rigidswap/document.hpp"

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <sstream>

#include <json.hpp>

#include "rigidswap/error.hpp"

namespace rigidswap {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& field, const std::string& what) {
  throw Error(ErrorCode::ParseError, field + ": " + what);
}

int line_of(const std::string& text, std::size_t byte) {
  byte = std::min(byte, text.size());
  return 1 + static_cast<int>(std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(byte), '\n'));
}

int as_index(const json& j, const std::string& field) {
  if (!j.is_number_integer()) fail(field, "expected an integer");
  const auto v = j.get<long long>();
  if (v < 0 || v > 1'000'000'000) fail(field, "index out of range");
  return static_cast<int>(v);
}

std::vector<int> as_index_list(const json& j, const std::string& field) {
  if (!j.is_array()) fail(field, "expected an array");
  std::vector<int> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(as_index(j[i], field + "[" + std::to_string(i) + "]"));
  return out;
}

bool is_flat(const json& j) {
  if (!j.is_array()) return false;
  for (const auto& x : j)
    if (x.is_structured()) return false;
  return true;
}

/// Like dump(2), but arrays of scalars stay on one line.
void write_json(std::ostream& out, const json& j, int indent) {
  const std::string pad(static_cast<std::size_t>(indent), ' ');
  const std::string inner(static_cast<std::size_t>(indent + 2), ' ');
  if (is_flat(j)) {
    out << '[';
    for (std::size_t i = 0; i < j.size(); ++i) out << (i ? ", " : "") << j[i].dump();
    out << ']';
  } else if (j.is_array()) {
    out << "[\n";
    for (std::size_t i = 0; i < j.size(); ++i) {
      out << inner;
      write_json(out, j[i], indent + 2);
      out << (i + 1 < j.size() ? ",\n" : "\n");
    }
    out << pad << ']';
  } else if (j.is_object()) {
    if (j.empty()) {
      out << "{}";
      return;
    }
    out << "{\n";
    std::size_t i = 0;
    for (const auto& [key, value] : j.items()) {
      out << inner << json(key).dump() << ": ";
      write_json(out, value, indent + 2);
      out << (++i < j.size() ? ",\n" : "\n");
    }
    out << pad << '}';
  } else {
    out << j.dump();
  }
}

/// Drops the "Code: " prefix an Error adds to its message.
std::string message_of(const Error& e) {
  const std::string what = e.what();
  const auto colon = what.find(": ");
  return colon == std::string::npos ? what : what.substr(colon + 2);
}

}  // namespace

PolyhedronDocument parse_document(const std::string& text) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::ParseError, "line " + std::to_string(line_of(text, e.byte)) + ": malformed document");
  }
  if (!root.is_object()) fail("document", "expected an object");
  static const std::vector<std::string> known{"format", "vertex_count", "coordinates", "faces",
                                              "blocks", "holes",        "fill",        "seed"};
  for (const auto& [key, value] : root.items())
    if (std::find(known.begin(), known.end(), key) == known.end()) fail(key, "unknown field");

  PolyhedronDocument doc;
  if (!root.contains("format")) fail("format", "missing");
  if (!root["format"].is_number_integer() || root["format"].get<int>() != kDocumentFormat)
    fail("format", "unsupported version, expected " + std::to_string(kDocumentFormat));
  if (!root.contains("vertex_count")) fail("vertex_count", "missing");
  doc.vertex_count = as_index(root["vertex_count"], "vertex_count");
  if (doc.vertex_count < 1) fail("vertex_count", "must be positive");

  if (!root.contains("faces") || !root["faces"].is_array()) fail("faces", "expected an array of vertex cycles");
  for (std::size_t f = 0; f < root["faces"].size(); ++f) {
    const std::string field = "faces[" + std::to_string(f) + "]";
    auto cycle = as_index_list(root["faces"][f], field);
    if (cycle.size() < 3) fail(field, "a face needs at least 3 vertices");
    for (int v : cycle)
      if (v >= doc.vertex_count) fail(field, "vertex " + std::to_string(v) + " out of range");
    doc.faces.push_back(std::move(cycle));
  }
  if (root.contains("blocks")) doc.blocks = as_index_list(root["blocks"], "blocks");
  if (root.contains("holes")) doc.holes = as_index_list(root["holes"], "holes");

  if (root.contains("coordinates")) {
    const json& c = root["coordinates"];
    if (!c.is_array() || static_cast<int>(c.size()) != doc.vertex_count)
      fail("coordinates", "expected one point per vertex");
    Configuration config;
    for (std::size_t i = 0; i < c.size(); ++i) {
      const std::string field = "coordinates[" + std::to_string(i) + "]";
      if (!c[i].is_array() || (c[i].size() != 3 && c[i].size() != 4)) fail(field, "expected 3 or 4 numbers");
      Point4 p{0, 0, 0, 1};
      for (std::size_t k = 0; k < c[i].size(); ++k) {
        if (!c[i][k].is_number()) fail(field, "expected numbers");
        p[k] = c[i][k].get<double>();
      }
      if (p[0] == 0 && p[1] == 0 && p[2] == 0 && p[3] == 0) fail(field, "zero vector is not a point");
      config.push_back(p);
    }
    doc.coordinates = std::move(config);
  }

  if (root.contains("fill")) {
    if (!root["fill"].is_object()) fail("fill", "expected an object from block face to strategy");
    for (const auto& [key, value] : root["fill"].items()) {
      const std::string field = "fill." + key;
      int face = -1;
      try {
        std::size_t used = 0;
        face = std::stoi(key, &used);
        if (used != key.size() || face < 0) face = -1;
      } catch (const std::exception&) {
        face = -1;
      }
      if (face < 0) fail(field, "key must be a face index");
      if (!value.is_string()) fail(field, "expected chords, cone or auto");
      const auto strategy = parse_fill_strategy(value.get<std::string>());
      if (!strategy) fail(field, "unknown strategy " + value.get<std::string>());
      doc.fill[face] = *strategy;
    }
  }

  if (root.contains("seed")) {
    if (!root["seed"].is_number_unsigned()) fail("seed", "expected a non-negative integer");
    doc.seed = root["seed"].get<std::uint64_t>();
  }
  return doc;
}

PolyhedronDocument load_document(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::ParseError, path.string() + ": cannot open");
  std::stringstream buffer;
  buffer << in.rdbuf();
  try {
    return parse_document(buffer.str());
  } catch (const Error& e) {
    throw Error(e.code(), path.string() + ": " + message_of(e));
  }
}

std::string serialize_document(const PolyhedronDocument& doc) {
  json root;
  root["format"] = doc.format;
  root["vertex_count"] = doc.vertex_count;
  root["faces"] = doc.faces;
  root["blocks"] = doc.blocks;
  root["holes"] = doc.holes;
  if (doc.coordinates) {
    json coords = json::array();
    for (const auto& p : *doc.coordinates) {
      if (p[3] == 1.0)
        coords.push_back({p[0], p[1], p[2]});
      else
        coords.push_back({p[0], p[1], p[2], p[3]});
    }
    root["coordinates"] = std::move(coords);
  }
  if (!doc.fill.empty()) {
    json fill = json::object();
    for (const auto& [face, strategy] : doc.fill) fill[std::to_string(face)] = to_string(strategy);
    root["fill"] = std::move(fill);
  }
  if (doc.seed) root["seed"] = *doc.seed;
  std::ostringstream out;
  write_json(out, root, 0);
  out << '\n';
  return out.str();
}

void save_document(const PolyhedronDocument& doc, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::ParseError, path.string() + ": cannot write");
  out << serialize_document(doc);
}

BlockHolePolyhedron to_polyhedron(const PolyhedronDocument& doc) {
  try {
    return label_faces(SphericalPolyhedron::build(doc.vertex_count, doc.faces), doc.blocks, doc.holes);
  } catch (const Error& e) {
    throw Error(e.code(), "document polyhedron: " + message_of(e));
  }
}

PolyhedronDocument make_document(const BlockHolePolyhedron& p, const std::optional<Configuration>& config,
                                 std::optional<std::uint64_t> seed) {
  PolyhedronDocument doc;
  doc.vertex_count = p.polyhedron().vertex_count();
  doc.faces = p.polyhedron().faces();
  doc.blocks = p.blocks();
  doc.holes = p.holes();
  doc.coordinates = config;
  doc.seed = seed;
  return doc;
}

std::string export_off(const BlockHolePolyhedron& p, const Configuration& config, const BarFramework* frame) {
  const auto& poly = p.polyhedron();
  std::ostringstream out;
  out << std::setprecision(17);
  auto write_point = [&](const Point4& q) {
    const auto a = affine_coordinates(q);
    if (!a) throw Error(ErrorCode::DegenerateConfiguration, "OFF cannot hold points at infinity");
    out << (*a)[0] << ' ' << (*a)[1] << ' ' << (*a)[2];
  };
  std::vector<FaceId> kept;
  for (FaceId f = 0; f < poly.face_count(); ++f)
    if (p.label(f) != FaceLabel::Hole) kept.push_back(f);
  out << "OFF\n" << poly.vertex_count() << ' ' << kept.size() << " 0\n";
  for (const auto& q : config) {
    write_point(q);
    out << '\n';
  }
  for (FaceId f : kept) {
    out << poly.face(f).size();
    for (VertexId v : poly.face(f)) out << ' ' << v;
    out << '\n';
  }
  if (frame) {
    for (const BlockFill& fill : frame->fills()) {
      const auto ids = frame->block_vertices(fill.block);
      for (std::size_t k = fill.boundary.size(); k < ids.size(); ++k) {
        out << "# fill " << fill.block << " vertex " << ids[k] << ' ';
        write_point(frame->positions()[ids[k]]);
        out << '\n';
      }
      const auto bars = frame->block_bars(fill.block);
      for (std::size_t k = fill.boundary.size(); k < bars.size(); ++k)
        out << "# fill " << fill.block << " edge " << frame->bars()[bars[k]].a << ' ' << frame->bars()[bars[k]].b
            << '\n';
    }
  }
  return out.str();
}

}  // namespace rigidswap
