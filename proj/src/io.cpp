#include "dff/io.hpp"

#include <fstream>
#include <sstream>

#include "dff/error.hpp"

namespace dff {

namespace {

Json rat(const Rational& r) { return r.str(); }

Json opt_rat(const std::optional<Rational>& r) { return r ? Json(r->str()) : Json(nullptr); }

Rational get_rat(const Json& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_string())
    throw Error(ErrorKind::kParse, std::string("expected rational string for \"") + key + "\"");
  return Rational::parse(j.at(key).get<std::string>());
}

std::optional<Rational> get_opt_rat(const Json& j, const char* key) {
  if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
  return get_rat(j, key);
}

const char* side_name(Side s) { return s == Side::kLeft ? "left" : (s == Side::kRight ? "right" : "at"); }

Json breakpoints_json(const PwlFunction& f) {
  Json arr = Json::array();
  for (const auto& b : f.breakpoints()) {
    Json e;
    e["x"] = rat(b.x);
    e["limit_left"] = opt_rat(b.limit_left);
    e["value"] = rat(b.value);
    e["limit_right"] = opt_rat(b.limit_right);
    arr.push_back(std::move(e));
  }
  return arr;
}

std::vector<Breakpoint> breakpoints_from(const Json& j) {
  if (!j.contains("breakpoints") || !j.at("breakpoints").is_array())
    throw Error(ErrorKind::kParse, "missing breakpoints array");
  std::vector<Breakpoint> bps;
  for (const auto& e : j.at("breakpoints")) {
    if (!e.is_object()) throw Error(ErrorKind::kParse, "breakpoint must be an object");
    bps.push_back({get_rat(e, "x"), get_opt_rat(e, "limit_left"), get_rat(e, "value"), get_opt_rat(e, "limit_right")});
  }
  return bps;
}

void expect_format(const Json& j, const char* fmt) {
  if (!j.is_object() || !j.contains("format") || j.at("format") != fmt)
    throw Error(ErrorKind::kParse, std::string("expected format ") + fmt);
}

}  // namespace

Json to_json(const PwlFunction& f) {
  Json j;
  j["format"] = kPwlFormat;
  j["breakpoints"] = breakpoints_json(f);
  return j;
}

Json to_json(const GdffFunction& psi) {
  Json j;
  j["format"] = kGdffFormat;
  j["breakpoints"] = breakpoints_json(psi.core());
  Json ext;
  if (const auto* q = std::get_if<Quasiperiodic>(&psi.extension())) {
    ext["kind"] = "quasiperiodic";
    ext["period"] = rat(q->period);
    ext["increment"] = rat(q->increment);
  } else {
    const auto& t = std::get<AffineTails>(psi.extension());
    ext["kind"] = "affine";
    ext["left_slope"] = rat(t.left_slope);
    ext["left_anchor"] = rat(t.left_anchor);
    ext["right_slope"] = rat(t.right_slope);
    ext["right_anchor"] = rat(t.right_anchor);
  }
  j["extension"] = std::move(ext);
  return j;
}

Json to_json(const Cover& c) {
  Json j;
  Json comps = Json::array();
  for (const auto& comp : c.components) {
    Json arr = Json::array();
    for (const auto& iv : comp) arr.push_back(Json::array({rat(iv.lo), rat(iv.hi)}));
    comps.push_back(std::move(arr));
  }
  j["components"] = std::move(comps);
  Json unc = Json::array();
  for (const auto& iv : c.uncovered) unc.push_back(Json::array({rat(iv.lo), rat(iv.hi)}));
  j["uncovered"] = std::move(unc);
  return j;
}

Json to_json(const MaximalityVerdict& v) {
  Json j;
  j["is_maximal"] = v.is_maximal;
  Json arr = Json::array();
  for (const auto& w : v.violations) {
    Json e;
    e["kind"] = to_string(w.kind);
    e["x"] = rat(w.x);
    if (w.kind == ViolationKind::kSuperadditivity) {
      e["y"] = rat(w.y);
      e["pattern"] = to_string(w.pattern);
    } else {
      e["side"] = side_name(w.side);
    }
    e["slack"] = rat(w.slack);
    arr.push_back(std::move(e));
  }
  j["violations"] = std::move(arr);
  return j;
}

Json to_json(const ExtremalityVerdict& v) {
  Json j;
  j["status"] = to_string(v.status);
  j["reason"] = v.reason;
  if (v.witness) {
    j["epsilon"] = rat(v.witness->epsilon);
    j["witness"] = to_json(v.witness->phi_tilde);
  }
  j["cover"] = to_json(v.cover);
  Json d;
  d["additive_vertices"] = v.diagnostics.additive_vertices;
  d["system_rows"] = v.diagnostics.system_rows;
  d["system_rank"] = v.diagnostics.system_rank;
  d["nullity"] = v.diagnostics.nullity;
  d["slope_vars"] = v.diagnostics.slope_vars;
  d["jump_vars"] = v.diagnostics.jump_vars;
  d["used_system"] = v.diagnostics.used_system;
  d["indirect_cover"] = v.diagnostics.indirect_cover;
  j["diagnostics"] = std::move(d);
  return j;
}

PwlFunction pwl_from_json(const Json& j) {
  expect_format(j, kPwlFormat);
  return make_pwl(breakpoints_from(j));
}

GdffFunction gdff_from_json(const Json& j) {
  expect_format(j, kGdffFormat);
  std::vector<Breakpoint> bps = breakpoints_from(j);
  if (bps.size() < 2) throw Error(ErrorKind::kParse, "core needs two breakpoints");
  Rational lo = bps.front().x, hi = bps.back().x;
  PwlFunction core = make_pwl_on(std::move(bps), lo, hi);
  if (!j.contains("extension") || !j.at("extension").is_object()) throw Error(ErrorKind::kParse, "missing extension");
  const Json& e = j.at("extension");
  std::string kind = e.value("kind", "");
  if (kind == "quasiperiodic") return GdffFunction(std::move(core), Quasiperiodic{get_rat(e, "period"), get_rat(e, "increment")});
  if (kind == "affine")
    return GdffFunction(std::move(core), AffineTails{get_rat(e, "left_slope"), get_rat(e, "left_anchor"),
                                                     get_rat(e, "right_slope"), get_rat(e, "right_anchor")});
  throw Error(ErrorKind::kParse, "unknown extension kind \"" + kind + "\"");
}

Json to_json(const SearchReport& r) {
  Json j;
  j["format"] = "dff-search-v1";
  j["q"] = r.q;
  j["mode"] = to_string(r.mode);
  j["dim"] = r.dim;
  j["inequalities"] = r.n_inequalities_original;
  if (r.n_inequalities_minimized) j["inequalities_minimized"] = *r.n_inequalities_minimized;
  else j["inequalities_minimized"] = nullptr;
  j["vertices"] = r.n_vertices;
  j["extreme"] = r.n_extreme;
  j["inconclusive"] = r.n_inconclusive;
  j["functions_dir"] = r.functions_dir;
  return j;
}

std::string dump(const Json& j) { return j.dump() + "\n"; }

Json parse_json(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::kParse, e.what());
  }
}

std::string read_text(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw Error(ErrorKind::kIo, "cannot read " + p.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text(const std::filesystem::path& p, const std::string& text) {
  std::ofstream out(p, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorKind::kIo, "cannot write " + p.string());
  out << text;
}

PwlFunction load_pwl(const std::filesystem::path& p) { return pwl_from_json(parse_json(read_text(p))); }

void save_pwl(const std::filesystem::path& p, const PwlFunction& f) { write_text(p, dump(to_json(f))); }

GdffFunction load_gdff(const std::filesystem::path& p) { return gdff_from_json(parse_json(read_text(p))); }

void save_gdff(const std::filesystem::path& p, const GdffFunction& psi) { write_text(p, dump(to_json(psi))); }

}  // namespace dff
