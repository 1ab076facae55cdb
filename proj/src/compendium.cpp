#include "dff/compendium.hpp"

#include <mutex>
#include <set>

#include "dff/error.hpp"
#include "dff/extremality.hpp"
#include "dff/gjlink.hpp"
#include "dff/io.hpp"
#include "dff/maximality.hpp"
#include "dff/search.hpp"

namespace dff {

PwlFunction identity() { return make_continuous({{Rational(0), Rational(0)}, {Rational(1), Rational(1)}}); }

PwlFunction phi_bj_1(const Rational& C) {
  if (!(C > 1) || C.is_integer()) throw Error(ErrorKind::kBadParameter, "phi_bj_1 needs C > 1, C not an integer, got " + C.str());
  Rational fc = C.frac(), n = C.floor();
  auto formula = [&](const Rational& x) {
    Rational cx = C * x;
    Rational t = (cx.frac() - fc) / (Rational(1) - fc);
    return (cx.floor() + max(Rational(0), t)) / n;
  };
  std::set<Rational> xs{Rational(0), Rational(1)};
  for (Rational k = 0; k <= C; k += 1) {
    Rational a = k / C, b = (k + fc) / C;
    if (a <= 1) xs.insert(a);
    if (b <= 1) xs.insert(b);
  }
  std::vector<Rational> pts(xs.begin(), xs.end());
  std::vector<Breakpoint> bps;
  for (std::size_t i = 0; i < pts.size(); ++i) bps.push_back({pts[i], std::nullopt, formula(pts[i]), std::nullopt});
  // one-sided limits from the affine formula on each open piece
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    Rational h = (pts[i + 1] - pts[i]) / 3;
    Rational v1 = formula(pts[i] + h), v2 = formula(pts[i] + h + h);
    Rational d = v2 - v1;
    bps[i].limit_right = v1 - d;
    bps[i + 1].limit_left = v2 + d;
  }
  return make_pwl(std::move(bps));
}

Registry::Registry() {
  register_entry({"identity", "none", "identity function", [](const Params&) { return identity(); }});
  register_entry({"phi_bj_1", "C: rational > 1, not an integer", "phi_BJ,1 family",
                  [](const Params& p) {
                    auto it = p.find("C");
                    if (it == p.end()) throw Error(ErrorKind::kBadParameter, "phi_bj_1 needs parameter C");
                    return phi_bj_1(it->second);
                  }});
}

std::vector<std::string> Registry::list() const {
  std::shared_lock lock(mu_);
  std::vector<std::string> names;
  for (const auto& [k, v] : entries_) names.push_back(k);
  return names;
}

FamilyEntry Registry::entry(const std::string& name) const {
  std::shared_lock lock(mu_);
  auto it = entries_.find(name);
  if (it == entries_.end()) throw Error(ErrorKind::kUnknownName, name);
  return it->second;
}

PwlFunction Registry::get(const std::string& name, const Params& params) const {
  return entry(name).constructor(params);
}

void Registry::register_entry(FamilyEntry e) {
  std::unique_lock lock(mu_);
  std::string key = e.name;
  entries_[key] = std::move(e);
}

void Registry::register_function(const std::string& name, const PwlFunction& f, const std::string& provenance) {
  register_entry({name, "none", provenance, [f](const Params&) { return f; }});
}

void write_compendium(const std::filesystem::path& dir, const std::vector<std::pair<ManifestEntry, PwlFunction>>& items) {
  std::filesystem::create_directories(dir);
  Json entries = Json::array();
  for (const auto& [m, f] : items) {
    save_pwl(dir / m.file, f);
    Json e;
    e["name"] = m.name;
    Json params = Json::object();
    for (const auto& [k, v] : m.parameters) params[k] = v.str();
    e["parameters"] = std::move(params);
    e["provenance"] = m.provenance;
    e["file"] = m.file;
    e["maximal"] = m.maximal;
    e["extremality"] = m.extremality;
    entries.push_back(std::move(e));
  }
  Json j;
  j["format"] = "dff-compendium-v1";
  j["entries"] = std::move(entries);
  write_text(dir / "manifest.json", j.dump(1) + "\n");
}

std::vector<ManifestEntry> load_compendium(const std::filesystem::path& dir, Registry& reg) {
  Json j = parse_json(read_text(dir / "manifest.json"));
  if (!j.contains("entries") || !j.at("entries").is_array()) throw Error(ErrorKind::kParse, "manifest without entries");
  std::vector<ManifestEntry> out;
  for (const auto& e : j.at("entries")) {
    ManifestEntry m;
    m.name = e.at("name").get<std::string>();
    for (const auto& [k, v] : e.at("parameters").items()) m.parameters[k] = Rational::parse(v.get<std::string>());
    m.provenance = e.at("provenance").get<std::string>();
    m.file = e.at("file").get<std::string>();
    m.maximal = e.at("maximal").get<bool>();
    m.extremality = e.at("extremality").get<std::string>();
    PwlFunction f = load_pwl(dir / m.file);
    if (m.extremality == "Extreme") {
      auto v = extremality_test(f);
      if (v.status != ExtremalityStatus::kExtreme)
        throw Error(ErrorKind::kIo, "compendium entry " + m.name + " no longer tests Extreme");
    }
    reg.register_function(m.name, f, m.provenance);
    out.push_back(std::move(m));
  }
  return out;
}

std::vector<std::pair<ManifestEntry, PwlFunction>> builtin_compendium() {
  std::vector<std::pair<ManifestEntry, PwlFunction>> items;
  auto add = [&](const std::string& name, Params params, const std::string& prov, const std::string& file, PwlFunction f) {
    ManifestEntry m{name, std::move(params), prov, file, false, "n/a"};
    m.maximal = maximality_test(f).is_maximal;
    if (m.maximal) m.extremality = to_string(extremality_test(f).status);
    items.emplace_back(std::move(m), std::move(f));
  };
  add("identity", {}, "identity function", "identity.json", identity());
  for (auto c : {Rational(3, 2), Rational(5, 2), Rational(7, 2), Rational(7, 3)}) {
    std::string tag = c.str();
    for (auto& ch : tag)
      if (ch == '/') ch = '_';
    add("phi_bj_1_C" + tag, {{"C", c}}, "phi_BJ,1 family", "phi_bj_1_C" + tag + ".json", phi_bj_1(c));
  }
  add("sawtooth_b7_2_restricted", {{"b", Rational(7, 2)}, {"lambda", Rational(1, 2)}},
      "restriction to [0,1] of the general DFF from the sawtooth with b=7/2, lambda=1/2", "sawtooth_b7_2_restricted.json",
      restrict_to_unit(gj_to_gdff(gmic(Rational(7, 2)), Rational(1, 2))));
  // extreme vertices found by the grid search
  auto add_search = [&](int q, SearchMode mode) {
    SearchOptions opt;
    opt.mode = mode;
    opt.minimize = false;
    SearchReport rep = search_extreme(q, opt);
    std::size_t e = 0;
    for (const auto& v : rep.verdicts) {
      if (v.status != "Extreme") continue;
      std::string tag = std::string(mode == SearchMode::kContinuous ? "c" : "d") + "_q" + std::to_string(q) + "_v" +
                        std::to_string(v.index);
      add("search_" + tag, {}, "search:q=" + std::to_string(q) + ",vertex=" + std::to_string(v.index), "search_" + tag + ".json",
          rep.extreme[e++].interpolate());
    }
  };
  for (int q = 2; q <= 9; ++q) add_search(q, SearchMode::kContinuous);
  for (int q = 2; q <= 4; ++q) add_search(q, SearchMode::kDiscontinuous);
  // continuous 2-slope extreme function with 3 covered components; values times 12 on the grid i/28
  const int twelfths[] = {0, 0, 0, 1, 1, 1, 2, 3, 3, 4, 4, 4, 5, 5, 6, 7, 7, 8, 8, 8, 9, 9, 10, 11, 11, 11, 12, 12, 12};
  std::vector<std::pair<Rational, Rational>> pts;
  for (int i = 0; i <= 28; ++i) pts.emplace_back(Rational(i, 28), Rational(twelfths[i], 12));
  add("search_c_q28_v4030", {}, "search:q=28,vertex=4030", "search_c_q28_v4030.json", make_continuous(pts));
  return items;
}

}  // namespace dff
