#include "gammamod/document.hpp"

#include <nlohmann/json.hpp>

#include <fstream>
#include <set>
#include <sstream>

namespace gammamod {

using json = nlohmann::ordered_json;

std::string Document::type() const {
  static const char* names[] = {"cone", "arr-module", "gamma-module", "ray-sheaf", "morphism", "witness"};
  return names[payload.index()];
}

namespace {

[[noreturn]] void fail(const std::string& what) { throw ParseError(what); }

void check_keys(const json& j, const std::string& where, std::initializer_list<const char*> required,
                std::initializer_list<const char*> optional = {}) {
  if (!j.is_object()) fail(where + ": expected an object");
  std::set<std::string> known;
  for (const char* k : required) {
    known.insert(k);
    if (!j.contains(k)) fail(where + ": missing key \"" + k + "\"");
  }
  for (const char* k : optional) known.insert(k);
  for (const auto& [k, _] : j.items())
    if (!known.count(k)) fail(where + ": unknown key \"" + k + "\"");
}

const json& array_at(const json& j, const char* key, const std::string& where) {
  const json& a = j.at(key);
  if (!a.is_array()) fail(where + ": \"" + key + "\" must be an array");
  return a;
}

std::uint64_t to_uint(const json& j, const std::string& where) {
  if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<long long>() >= 0))
    fail(where + ": expected a non-negative integer");
  return j.get<std::uint64_t>();
}

Rat to_rat(const json& j, const std::string& where) {
  if (!j.is_string()) fail(where + ": rationals are strings \"p/q\"");
  return Rat::parse(j.get<std::string>());
}

RatVec to_ratvec(const json& j, std::size_t n, const std::string& where) {
  if (!j.is_array() || j.size() != n) fail(where + ": expected " + std::to_string(n) + " rationals");
  RatVec v;
  for (const auto& x : j) v.push_back(to_rat(x, where));
  return v;
}

RatMat to_ratmat(const json& j, std::size_t n, const std::string& where) {
  if (!j.is_array()) fail(where + ": expected an array of vectors");
  RatMat m;
  for (const auto& r : j) m.push_back(to_ratvec(r, n, where));
  return m;
}

json from_ratvec(const RatVec& v) {
  json a = json::array();
  for (const auto& x : v) a.push_back(x.str());
  return a;
}

json from_ratmat(const RatMat& m) {
  json a = json::array();
  for (const auto& r : m) a.push_back(from_ratvec(r));
  return a;
}

FieldMat to_fieldmat(const json& j, std::uint32_t p, std::size_t rows, std::size_t cols, const std::string& where) {
  if (!j.is_array() || j.size() != rows)
    fail(where + ": matrix needs " + std::to_string(rows) + " rows of " + std::to_string(cols));
  FieldMat m(p, rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    if (!j[r].is_array() || j[r].size() != cols)
      fail(where + ": matrix needs " + std::to_string(rows) + " rows of " + std::to_string(cols));
    for (std::size_t c = 0; c < cols; ++c) {
      std::uint64_t x = to_uint(j[r][c], where);
      if (x >= p) fail(where + ": entry " + std::to_string(x) + " is not a residue mod " + std::to_string(p));
      m.set(r, c, static_cast<long long>(x));
    }
  }
  return m;
}

json from_fieldmat(const FieldMat& m) {
  json a = json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    a.push_back(std::move(row));
  }
  return a;
}

std::uint32_t to_prime(const json& j) {
  std::uint64_t p = to_uint(j, "field");
  if (p >= 65536 || !is_prime(static_cast<std::uint32_t>(p))) fail("field: " + std::to_string(p) + " is not a prime below 65536");
  return static_cast<std::uint32_t>(p);
}

// ---- cones and frames

ConeSpec read_cone_body(const json& j, std::size_t n) {
  check_keys(j, "cone", {"normals", "generators"}, {"transform"});
  return ConeSpec(to_ratmat(j.at("normals"), n, "cone.normals"), to_ratmat(j.at("generators"), n, "cone.generators"));
}

FramePtr read_frame(const json& j, std::size_t n) {
  ConeSpec cone = read_cone_body(j, n);
  if (j.contains("transform")) {
    RatMat t = to_ratmat(j.at("transform"), n, "cone.transform");
    if (t.size() != n) fail("cone.transform must be square");
    return std::make_shared<const ConeFrame>(cone, t);
  }
  return make_frame(cone);
}

json write_cone_body(const ConeSpec& c) {
  json j;
  j["normals"] = from_ratmat(c.normals());
  j["generators"] = from_ratmat(c.generators());
  return j;
}

json write_frame(const ConeFrame& f) {
  json j = write_cone_body(f.cone());
  j["transform"] = from_ratmat(f.transform());
  return j;
}

// ---- modules

CellIndex read_index(const json& j, const CellComplex& cx, const std::string& where) {
  if (!j.is_array() || j.size() != cx.dim()) fail(where + ": index needs one entry per axis");
  CellIndex idx;
  for (std::size_t i = 0; i < cx.dim(); ++i) {
    std::uint64_t k = to_uint(j[i], where);
    if (k >= cx.axis(i).num_cells()) fail(where + ": index out of range on axis " + std::to_string(i));
    idx.push_back(k);
  }
  return idx;
}

std::string kind_string(const CellIndex& idx) {
  std::string s;
  for (auto k : idx) s += AxisGrid::is_point(k) ? 'p' : 'o';
  return s;
}

json write_index(const CellIndex& idx) {
  json a = json::array();
  for (auto k : idx) a.push_back(k);
  return a;
}

ArrModule read_module_body(const json& j, const std::string& what) {
  check_keys(j, what, {"version", "type", "field", "dimension", "cone", "axes", "cells"}, {"maps"});
  std::uint32_t p = to_prime(j.at("field"));
  std::size_t n = to_uint(j.at("dimension"), "dimension");
  if (n == 0) fail("dimension must be positive");
  FramePtr frame = read_frame(j.at("cone"), n);
  const json& ja = array_at(j, "axes", what);
  if (ja.size() != n) fail("axes: need one breakpoint list per dimension");
  std::vector<AxisGrid> axes;
  for (const auto& a : ja) {
    if (!a.is_array()) fail("axes: expected arrays of rationals");
    std::vector<Rat> b;
    for (const auto& x : a) b.push_back(to_rat(x, "axes"));
    for (std::size_t i = 1; i < b.size(); ++i)
      if (!(b[i - 1] < b[i])) fail("axes: breakpoints must be strictly increasing");
    axes.emplace_back(std::move(b));
  }
  CellComplex cx(frame, std::move(axes));
  std::vector<std::size_t> dims(cx.num_cells(), 0);
  std::vector<bool> seen(cx.num_cells(), false);
  for (const auto& c : array_at(j, "cells", what)) {
    check_keys(c, "cells[]", {"index", "kind", "dim"});
    CellIndex idx = read_index(c.at("index"), cx, "cells[]");
    if (!c.at("kind").is_string() || c.at("kind").get<std::string>() != kind_string(idx))
      fail("cells[]: kind must be \"" + kind_string(idx) + "\" for this index");
    CellId id = cx.id(idx);
    if (seen[id]) fail("cells[]: duplicate cell");
    seen[id] = true;
    dims[id] = to_uint(c.at("dim"), "cells[].dim");
  }
  std::vector<std::vector<FieldMat>> maps(cx.num_cells(), std::vector<FieldMat>(n));
  for (CellId c = 0; c < cx.num_cells(); ++c)
    for (std::size_t i = 0; i < n; ++i)
      if (auto lo = cx.down(c, i)) maps[c][i] = FieldMat(p, dims[*lo], dims[c]);
  std::set<std::pair<CellId, std::size_t>> given;
  if (j.contains("maps"))
    for (const auto& m : array_at(j, "maps", what)) {
      check_keys(m, "maps[]", {"from", "to", "matrix"});
      CellId from = cx.id(read_index(m.at("from"), cx, "maps[].from"));
      CellId to = cx.id(read_index(m.at("to"), cx, "maps[].to"));
      std::optional<std::size_t> axis;
      for (std::size_t i = 0; i < n; ++i)
        if (cx.down(from, i) == to) axis = i;
      if (!axis) fail("maps[]: \"to\" must be the cone-order neighbour just below \"from\"");
      if (!given.insert({from, *axis}).second) fail("maps[]: duplicate map");
      maps[from][*axis] = to_fieldmat(m.at("matrix"), p, dims[to], dims[from], "maps[].matrix");
    }
  return ArrModule(std::move(cx), p, std::move(dims), std::move(maps));
}

json write_module_body(const ArrModule& F, const char* type) {
  const auto& cx = F.complex();
  json j;
  j["version"] = kDocumentVersion;
  j["type"] = type;
  j["field"] = F.prime();
  j["dimension"] = cx.dim();
  j["cone"] = write_frame(cx.frame());
  json axes = json::array();
  for (const auto& a : cx.axes()) axes.push_back(from_ratvec(a.breakpoints()));
  j["axes"] = std::move(axes);
  json cells = json::array(), maps = json::array();
  for (CellId c = 0; c < cx.num_cells(); ++c) {
    if (F.dim(c) == 0) continue;
    CellIndex idx = cx.index(c);
    json e;
    e["index"] = write_index(idx);
    e["kind"] = kind_string(idx);
    e["dim"] = F.dim(c);
    cells.push_back(std::move(e));
  }
  for (CellId c = 0; c < cx.num_cells(); ++c)
    for (std::size_t i = 0; i < cx.dim(); ++i) {
      auto lo = cx.down(c, i);
      if (!lo || F.down_map(c, i).is_zero()) continue;
      json e;
      e["from"] = write_index(cx.index(c));
      e["to"] = write_index(cx.index(*lo));
      e["matrix"] = from_fieldmat(F.down_map(c, i));
      maps.push_back(std::move(e));
    }
  j["cells"] = std::move(cells);
  j["maps"] = std::move(maps);
  return j;
}

ArrModule read_checked_module(const json& j, const std::string& what) {
  ArrModule F = read_module_body(j, what);
  if (auto v = validate(F)) throw InvariantError(v->describe());
  return F;
}

std::string type_of(const json& j) {
  if (!j.is_object() || !j.contains("type") || !j.at("type").is_string()) fail("document needs a string \"type\"");
  if (!j.contains("version") || !j.at("version").is_number_integer() || j.at("version").get<long long>() != kDocumentVersion)
    fail("unsupported document version");
  return j.at("type").get<std::string>();
}

ArrModule read_nested_module(const json& j, const std::string& where) {
  std::string t = type_of(j);
  if (t == "arr-module") return read_checked_module(j, where);
  if (t == "gamma-module") return GammaModule(read_checked_module(j, where)).module();
  fail(where + ": expected a module document");
}

json write_nested_module(const ArrModule& F) { return write_module_body(F, "arr-module"); }

// Components indexed by cells of cx, shapes given by the callback; missing entries are zero.
template <class Shape>
std::vector<FieldMat> read_components(const json& a, const CellComplex& cx, std::uint32_t p, Shape shape,
                                      const std::string& where) {
  std::vector<FieldMat> comps;
  for (CellId c = 0; c < cx.num_cells(); ++c) {
    auto [r, k] = shape(c);
    comps.emplace_back(p, r, k);
  }
  if (!a.is_array()) fail(where + ": expected an array");
  std::vector<bool> seen(cx.num_cells(), false);
  for (const auto& e : a) {
    check_keys(e, where + "[]", {"index", "matrix"});
    CellId c = cx.id(read_index(e.at("index"), cx, where));
    if (seen[c]) fail(where + ": duplicate cell");
    seen[c] = true;
    comps[c] = to_fieldmat(e.at("matrix"), p, comps[c].rows(), comps[c].cols(), where);
  }
  return comps;
}

json write_components(const std::vector<FieldMat>& comps, const CellComplex& cx) {
  json a = json::array();
  for (CellId c = 0; c < cx.num_cells(); ++c) {
    if (comps[c].is_zero()) continue;
    json e;
    e["index"] = write_index(cx.index(c));
    e["matrix"] = from_fieldmat(comps[c]);
    a.push_back(std::move(e));
  }
  return a;
}

Document read_json(const json& j) {
  std::string t = type_of(j);
  if (t == "arr-module") return {read_checked_module(j, t)};
  if (t == "gamma-module") return {GammaModule(read_checked_module(j, t))};
  if (t == "cone") {
    check_keys(j, t, {"version", "type", "dimension", "cone"});
    std::size_t n = to_uint(j.at("dimension"), "dimension");
    if (n == 0) fail("dimension must be positive");
    return {read_cone_body(j.at("cone"), n)};
  }
  if (t == "ray-sheaf") {
    check_keys(j, t, {"version", "type", "births"});
    std::vector<Rat> b;
    for (const auto& x : array_at(j, "births", t)) b.push_back(to_rat(x, "births"));
    return {RaySheaf(std::move(b))};
  }
  if (t == "morphism") {
    check_keys(j, t, {"version", "type", "source", "target", "components"});
    ArrModule src = read_nested_module(j.at("source"), "source");
    ArrModule dst = read_nested_module(j.at("target"), "target");
    if (!(src.complex() == dst.complex())) fail("morphism: source and target must share one arrangement");
    if (src.prime() != dst.prime()) fail("morphism: field mismatch");
    auto comps = read_components(
        j.at("components"), src.complex(), src.prime(),
        [&](CellId c) { return std::pair{dst.dim(c), src.dim(c)}; }, "components");
    ModMorphism f(std::move(src), std::move(dst), std::move(comps));
    if (auto v = check_naturality(f)) throw InvariantError(*v);
    return {std::move(f)};
  }
  if (t == "witness") {
    check_keys(j, t, {"version", "type", "source", "target", "shift", "axes", "f", "g"});
    ArrModule F = read_nested_module(j.at("source"), "source");
    ArrModule G = read_nested_module(j.at("target"), "target");
    std::size_t n = F.complex().dim();
    RatVec v = to_ratvec(j.at("shift"), n, "shift");
    const json& ja = array_at(j, "axes", t);
    if (ja.size() != n) fail("axes: need one breakpoint list per dimension");
    std::vector<AxisGrid> axes;
    for (const auto& a : ja) {
      if (!a.is_array()) fail("axes: expected arrays of rationals");
      std::vector<Rat> b;
      for (const auto& x : a) b.push_back(to_rat(x, "axes"));
      for (std::size_t i = 1; i < b.size(); ++i)
        if (!(b[i - 1] < b[i])) fail("axes: breakpoints must be strictly increasing");
      axes.emplace_back(std::move(b));
    }
    CellComplex R(F.complex().frame_ptr(), std::move(axes));
    auto fshape = [&](CellId c) {
      RatVec x = R.representative(c);
      return std::pair{G.dim_at(x), F.dim_at(add(x, v))};
    };
    auto gshape = [&](CellId c) {
      RatVec x = R.representative(c);
      return std::pair{F.dim_at(x), G.dim_at(add(x, v))};
    };
    InterleavingWitness w{R, v, {}, {}};
    w.f = read_components(j.at("f"), R, F.prime(), fshape, "f");
    w.g = read_components(j.at("g"), R, F.prime(), gshape, "g");
    if (auto e = verify_witness(F, G, w)) throw InvariantError("witness: " + *e);
    return {WitnessDocument{std::move(F), std::move(G), std::move(w)}};
  }
  fail("unknown document type \"" + t + "\"");
}

json to_json(const Document& doc) {
  return std::visit(
      [&](const auto& x) -> json {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, ArrModule>) {
          return write_module_body(x, "arr-module");
        } else if constexpr (std::is_same_v<T, GammaModule>) {
          return write_module_body(x.module(), "gamma-module");
        } else if constexpr (std::is_same_v<T, ConeSpec>) {
          json j;
          j["version"] = kDocumentVersion;
          j["type"] = "cone";
          j["dimension"] = x.dim();
          j["cone"] = write_cone_body(x);
          return j;
        } else if constexpr (std::is_same_v<T, RaySheaf>) {
          json j;
          j["version"] = kDocumentVersion;
          j["type"] = "ray-sheaf";
          json b = json::array();
          for (const auto& t : x.births()) b.push_back(t.str());
          j["births"] = std::move(b);
          return j;
        } else if constexpr (std::is_same_v<T, ModMorphism>) {
          json j;
          j["version"] = kDocumentVersion;
          j["type"] = "morphism";
          j["source"] = write_nested_module(x.src());
          j["target"] = write_nested_module(x.dst());
          j["components"] = write_components(x.components(), x.src().complex());
          return j;
        } else {
          json j;
          j["version"] = kDocumentVersion;
          j["type"] = "witness";
          j["source"] = write_nested_module(x.source);
          j["target"] = write_nested_module(x.target);
          j["shift"] = from_ratvec(x.witness.shift);
          json axes = json::array();
          for (const auto& a : x.witness.grid.axes()) axes.push_back(from_ratvec(a.breakpoints()));
          j["axes"] = std::move(axes);
          j["f"] = write_components(x.witness.f, x.witness.grid);
          j["g"] = write_components(x.witness.g, x.witness.grid);
          return j;
        }
      },
      doc.payload);
}

}  // namespace

Document parse_document(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    fail(std::string("malformed JSON: ") + e.what());
  }
  try {
    return read_json(j);
  } catch (const json::exception& e) {
    fail(std::string("schema error: ") + e.what());
  }
}

Document read_document(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail("cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_document(ss.str());
}

std::string emit_document(const Document& doc) { return to_json(doc).dump(2) + "\n"; }

void write_document(const std::string& path, const Document& doc) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path);
  out << emit_document(doc);
  if (!out) throw Error("cannot write " + path);
}

bool documents_equal(const Document& a, const Document& b) {
  if (a.payload.index() != b.payload.index()) return false;
  return std::visit(
      [&](const auto& x) -> bool {
        using T = std::decay_t<decltype(x)>;
        const T& y = std::get<T>(b.payload);
        if constexpr (std::is_same_v<T, ConeSpec>) {
          return x.normals() == y.normals() && x.generators() == y.generators();
        } else if constexpr (std::is_same_v<T, ModMorphism>) {
          return x.src() == y.src() && x.dst() == y.dst() && x.components() == y.components();
        } else if constexpr (std::is_same_v<T, WitnessDocument>) {
          return x.source == y.source && x.target == y.target && x.witness.grid == y.witness.grid &&
                 x.witness.shift == y.witness.shift && x.witness.f == y.witness.f && x.witness.g == y.witness.g;
        } else {
          return x == y;
        }
      },
      a.payload);
}

}  // namespace gammamod
